#pragma once

#include <iosfwd>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "susymorse/quadrature.hpp"

namespace susymorse::cli {

enum ExitCode : int {
  kOk = 0,
  kVerifyFailed = 1,
  kConfigError = 2,
  kIndexError = 3,
  kRuntimeError = 4,
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class OutputFormat { csv, json };

inline constexpr int kManifestFormatVersion = 1;

struct RunConfig {
  double p = 3.0 * std::numbers::pi;
  Box box{-4.0, 25.0, -4.0, 25.0};
  int nx = 400;
  int ny = 400;
  int panels = 24;
  int nodes = 16;
  std::string output = "-";
  OutputFormat format = OutputFormat::csv;

  // Filled from a density manifest used as --config.
  std::optional<std::string> basis;
  std::optional<int> index;
  std::optional<double> phi;
};

/// Reads a JSON manifest or a key=value file into config. Keys: p, box
/// (four comma-separated numbers), nx, ny, panels, nodes, output, format,
/// basis, index, phi. Throws ConfigError.
void load_config_file(const std::string& path, RunConfig& config);

/// Throws ConfigError unless p > 0, nx, ny >= 2, the box is ordered and
/// the quadrature counts are positive.
void validate(const RunConfig& config);

/// `%.12e`.
std::string format_real(double value);

/// Entry point shared by the executable and the tests. args excludes argv[0].
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace susymorse::cli
