#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "susymorse/cli.hpp"

namespace susymorse::cli {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_real(const std::string& key, const std::string& text) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (trim(text.substr(used)).empty()) return v;
  } catch (const std::exception&) {
  }
  throw ConfigError("config: '" + key + "' expects a number, got '" + text + "'");
}

int parse_int(const std::string& key, const std::string& text) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(text, &used);
    if (trim(text.substr(used)).empty()) return v;
  } catch (const std::exception&) {
  }
  throw ConfigError("config: '" + key + "' expects an integer, got '" + text + "'");
}

OutputFormat parse_format(const std::string& text) {
  if (text == "csv") return OutputFormat::csv;
  if (text == "json") return OutputFormat::json;
  throw ConfigError("config: format must be csv or json, got '" + text + "'");
}

void apply(RunConfig& config, const std::string& key, const std::string& value) {
  if (key == "p") {
    config.p = parse_real(key, value);
  } else if (key == "box") {
    std::vector<double> parts;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) parts.push_back(parse_real(key, trim(item)));
    if (parts.size() != 4) throw ConfigError("config: box needs four comma-separated numbers");
    config.box = {parts[0], parts[1], parts[2], parts[3]};
  } else if (key == "nx") {
    config.nx = parse_int(key, value);
  } else if (key == "ny") {
    config.ny = parse_int(key, value);
  } else if (key == "panels") {
    config.panels = parse_int(key, value);
  } else if (key == "nodes") {
    config.nodes = parse_int(key, value);
  } else if (key == "output") {
    config.output = value;
  } else if (key == "format") {
    config.format = parse_format(value);
  } else if (key == "basis") {
    config.basis = value;
  } else if (key == "index") {
    config.index = parse_int(key, value);
  } else if (key == "phi") {
    config.phi = parse_real(key, value);
  } else {
    throw ConfigError("config: unknown key '" + key + "'");
  }
}

void load_manifest(const nlohmann::json& j, RunConfig& config) {
  try {
    if (j.contains("format_version") && j["format_version"].get<int>() != kManifestFormatVersion) {
      throw ConfigError("config: unsupported manifest format_version " + j["format_version"].dump());
    }
    if (j.contains("p")) config.p = j["p"].get<double>();
    if (j.contains("box")) {
      const auto b = j["box"].get<std::vector<double>>();
      if (b.size() != 4) throw ConfigError("config: box needs four numbers");
      config.box = {b[0], b[1], b[2], b[3]};
    }
    if (j.contains("nx")) config.nx = j["nx"].get<int>();
    if (j.contains("ny")) config.ny = j["ny"].get<int>();
    if (j.contains("panels")) config.panels = j["panels"].get<int>();
    if (j.contains("nodes")) config.nodes = j["nodes"].get<int>();
    if (j.contains("basis") && !j["basis"].is_null()) config.basis = j["basis"].get<std::string>();
    if (j.contains("index") && !j["index"].is_null()) config.index = j["index"].get<int>();
    if (j.contains("phi") && !j["phi"].is_null()) config.phi = j["phi"].get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config: malformed manifest: ") + e.what());
  }
}

}  // namespace

void load_config_file(const std::string& path, RunConfig& config) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();

  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw ConfigError(std::string("config: invalid JSON: ") + e.what());
    }
    load_manifest(j, config);
    return;
  }

  std::stringstream lines(text);
  std::string line;
  int lineno = 0;
  while (std::getline(lines, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config: line " + std::to_string(lineno) + " is not key=value");
    }
    apply(config, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
}

void validate(const RunConfig& config) {
  if (!(config.p > 0.0) || !std::isfinite(config.p)) throw ConfigError("config: p must be positive");
  if (config.nx < 2 || config.ny < 2) throw ConfigError("config: nx and ny must be at least 2");
  if (!(config.box.x_min < config.box.x_max) || !(config.box.y_min < config.box.y_max)) {
    throw ConfigError("config: box must satisfy x_min < x_max and y_min < y_max");
  }
  if (config.panels < 1 || config.nodes < 1) throw ConfigError("config: panels and nodes must be positive");
}

std::string format_real(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12e", value == 0.0 ? 0.0 : value);
  return buf;
}

}  // namespace susymorse::cli
