import math

import numpy as np
import pytest

import susymorse as sm

P = 3 * math.pi


def test_params():
    p = sm.MorseParams.from_p(P)
    assert p.k == 9
    assert p.level_count == 10
    assert p.nu == pytest.approx(2 * P + 1)
    with pytest.raises(ValueError):
        sm.MorseParams.from_p(-1.0)


def test_counts_and_ordering():
    assert sm.counts(P) == {"mu": 55, "nu": 36, "missing": 19}
    pairs = sm.partner_pairs(P)
    assert pairs[:4] == [(2, 0), (3, 0), (4, 0), (3, 1)]
    assert pairs[-1] == (9, 7)
    rows = sm.mu_basis(P)
    assert [(n, m) for _, n, m, _ in rows[:4]] == [(0, 0), (1, 0), (2, 0), (1, 1)]
    assert sm.partner_pairs(1.7) == []


def test_special_functions():
    assert sm.log_gamma(0.5) == pytest.approx(0.5 * math.log(math.pi))
    assert sm.laguerre(2, 1.0, 0.5) == pytest.approx(0.5 * (0.25 - 3 + 2 * 3))
    assert sm.r_eigenvalue(P, 2, 0) == pytest.approx(424.3613021296)


def test_partner_state_vanishes_on_diagonal():
    x = np.linspace(-1.0, 3.0, 9)
    on = sm.partner_state(P, 0, x, x)
    assert np.max(np.abs(on)) < 1e-12
    off = sm.partner_state(P, 0, x, x[::-1])
    assert off.shape == x.shape
    assert np.allclose(off, sm.partner_state(P, 0, x[::-1], x))


def test_coherent():
    c = sm.coherent_coefficients(P, 0.0)
    assert c[0] == 1 and all(v == 0 for v in c[1:])
    measured, closed = sm.coherent_defect(P, 5.0)
    assert measured == pytest.approx(closed, rel=1e-10)


def test_uncertainty_rows():
    rows = sm.uncertainty(P, [0.0, 1.0, 3.0])
    assert rows.shape == (3, 4)
    assert np.all(rows[:, 3] > 0.25)
    assert np.any((rows[:, 1] < 0.5) & (rows[:, 2] > 0.5))


def test_density_grid():
    xs, ys, d = sm.density(P, "nu", 0, nx=60, ny=50)
    assert d.shape == (50, 60)
    assert len(xs) == 60 and len(ys) == 50
    xs, ys, d = sm.density(P, "nu", 0, nx=240, ny=240)
    cell = (xs[1] - xs[0]) * (ys[1] - ys[0])
    assert d.sum() * cell == pytest.approx(1.0, rel=1e-4)
    with pytest.raises(IndexError):
        sm.density(P, "nu", 36, nx=4, ny=4)


def test_cli_roundtrip():
    code, out, _ = sm.run_cli(["spectrum"])
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "basis,index,n,m,energy,scaled_energy"
    assert len(lines) == 1 + 55 + 36
    code, _, err = sm.run_cli(["density", "nu", "99"])
    assert code == 3 and "out of range" in err
