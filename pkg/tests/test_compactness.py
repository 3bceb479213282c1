"""Compactness-tool tests.

Closed forms used as oracles (all on exact FFT grid modes, so the spectral
results are good to roundoff):

* inverse divergence, 1D torus: A[cos x] = sin x, A[sin x] = -cos x.
* double Riesz on the 2pi-torus: R_12[cos x sin y] = (1/2) sin x cos y and
  R_12[sin y] = 0, hence the commutator [R_12, cos x](sin y) equals
  (1/2) sin x cos y.
* oscillation table: the constructed velocity leaves a flux ripple of
  amplitude (lam + 2 mu)/n, so the flux defect is exactly
  (lam + 2 mu) * A / (2 n), while the raw-pressure defect is the covariance
  cov(p(rho_bar + A sin s), rho_bar + A sin s), independent of n.
"""

import numpy as np
import pytest

from mhdlab.compactness import (
    OscillationTable,
    SpectralOperators,
    commutator_probe,
    effective_viscous_flux,
    oscillation_experiment,
    write_defect_table,
)
from mhdlab.constitutive import make_standard_law
from mhdlab.grid import Grid
from mhdlab.solver import SchemeParams

LAW = make_standard_law()
PARAMS = SchemeParams(epsilon=0.05, delta=0.1)

TWO_PI = 2.0 * np.pi


def _torus_1d(n=256):
    ops = SpectralOperators.torus((n, 1, 1), (TWO_PI, 1.0, 1.0))
    x = TWO_PI * np.arange(n) / n
    return ops, x.reshape(n, 1, 1)


def _torus_2d(n=64):
    ops = SpectralOperators.torus((n, n, 1), (TWO_PI, TWO_PI, 1.0))
    x = TWO_PI * np.arange(n) / n
    return ops, x.reshape(n, 1, 1), x.reshape(1, n, 1)


# ---------------------------------------------------------------------------
# inverse divergence
# ---------------------------------------------------------------------------


def test_inverse_divergence_cosine_oracle():
    ops, x = _torus_1d(256)
    a = ops.inverse_divergence_component(np.cos(x), 0)
    assert float(np.max(np.abs(a - np.sin(x)))) <= 1e-10


def test_inverse_divergence_sine_oracle():
    ops, x = _torus_1d(128)
    a = ops.inverse_divergence_component(np.sin(x), 0)
    assert float(np.max(np.abs(a + np.cos(x)))) <= 1e-12


def test_inverse_divergence_requires_mean_zero():
    ops, x = _torus_1d(64)
    with pytest.raises(ValueError, match="mean"):
        ops.inverse_divergence_component(1.0 + np.cos(x), 0)


def test_inverse_divergence_roundtrip_2d():
    # odd sample count: every mode has a conjugate partner
    ops, _, _ = _torus_2d(49)
    rng = np.random.default_rng(7)
    f = rng.standard_normal((49, 49, 1))
    f -= f.mean()
    recon = sum(
        ops.derivative(ops.inverse_divergence_component(f, ax), ax) for ax in (0, 1)
    )
    assert float(np.max(np.abs(recon - f))) <= 1e-12 * float(np.max(np.abs(f)))


# ---------------------------------------------------------------------------
# double Riesz transform
# ---------------------------------------------------------------------------


def test_riesz_trace_is_identity_on_mean_zero_2d():
    ops, _, _ = _torus_2d(48)
    rng = np.random.default_rng(8)
    f = rng.standard_normal((48, 48, 1))
    f -= f.mean()
    trace = ops.riesz(f, 0, 0) + ops.riesz(f, 1, 1)
    assert float(np.max(np.abs(trace - f))) <= 1e-12 * float(np.max(np.abs(f)))


def test_riesz_trace_is_identity_on_mean_zero_3d():
    n = 16
    ops = SpectralOperators.torus((n, n, n), (TWO_PI, TWO_PI, TWO_PI))
    rng = np.random.default_rng(9)
    f = rng.standard_normal((n, n, n))
    f -= f.mean()
    trace = sum(ops.riesz(f, ax, ax) for ax in range(3))
    assert float(np.max(np.abs(trace - f))) <= 1e-12 * float(np.max(np.abs(f)))


def test_riesz_is_symmetric():
    ops, _, _ = _torus_2d(32)
    rng = np.random.default_rng(10)
    f = rng.standard_normal((32, 32, 1))
    f -= f.mean()
    assert np.array_equal(ops.riesz(f, 0, 1), ops.riesz(f, 1, 0))


def test_riesz_off_diagonal_closed_form():
    ops, x, y = _torus_2d(64)
    out = ops.riesz(np.cos(x) * np.sin(y), 0, 1)
    expect = 0.5 * np.sin(x) * np.cos(y)
    assert float(np.max(np.abs(out - expect))) <= 1e-12


# ---------------------------------------------------------------------------
# reflected-box mode
# ---------------------------------------------------------------------------


def test_reflect_extension_roundtrip():
    grid = Grid(shape=(9, 5, 1), extents=(1.0, 1.0, 1.0))
    ops = SpectralOperators.reflect(grid, ("even", "even", "even"))
    rng = np.random.default_rng(11)
    f = rng.standard_normal(grid.shape)
    assert np.array_equal(ops.restrict(ops.extend(f)), f)


def test_reflect_extension_layout_1d():
    grid = Grid(shape=(4, 1, 1), extents=(1.0, 1.0, 1.0))
    f = np.arange(4.0).reshape(4, 1, 1)
    even = SpectralOperators.reflect(grid, ("even", "even", "even")).extend(f)
    assert list(even[:, 0, 0]) == [0.0, 1.0, 2.0, 3.0, 2.0, 1.0]
    g = f.copy()
    g[0] = g[-1] = 0.0
    odd = SpectralOperators.reflect(grid, ("odd", "even", "even")).extend(g)
    assert list(odd[:, 0, 0]) == [0.0, 1.0, 2.0, 0.0, -2.0, -1.0]


def test_reflect_inverse_divergence_even_oracle():
    # cos x on [0, pi] extends evenly to cos on the doubled torus
    grid = Grid(shape=(129, 1, 1), extents=(np.pi, 1.0, 1.0))
    ops = SpectralOperators.reflect(grid, ("even", "even", "even"))
    x = grid.mesh()[0]
    a = ops.inverse_divergence_component(np.cos(x), 0)
    assert float(np.max(np.abs(a - np.sin(x)))) <= 1e-10


def test_reflect_inverse_divergence_odd_oracle():
    grid = Grid(shape=(129, 1, 1), extents=(np.pi, 1.0, 1.0))
    ops = SpectralOperators.reflect(grid, ("odd", "even", "even"))
    x = grid.mesh()[0]
    a = ops.inverse_divergence_component(np.sin(x), 0)
    assert float(np.max(np.abs(a + np.cos(x)))) <= 1e-10


def test_reflect_riesz_trace_identity():
    grid = Grid(shape=(33, 17, 1), extents=(np.pi, np.pi, 1.0))
    ops = SpectralOperators.reflect(grid, ("even", "even", "even"))
    x, y, _ = grid.mesh()
    f = np.cos(x) * np.cos(2.0 * y)  # mean-free under even doubling
    trace = ops.riesz(f, 0, 0) + ops.riesz(f, 1, 1)
    assert float(np.max(np.abs(trace - f))) <= 1e-12


# ---------------------------------------------------------------------------
# commutator probe
# ---------------------------------------------------------------------------


def test_commutator_vanishes_for_constant_symbol():
    ops, _, y = _torus_2d(32)
    g = np.sin(y)
    out = commutator_probe(ops, np.full_like(g, 2.5), g, 0, 1)
    assert float(np.max(np.abs(out))) <= 1e-13


def test_commutator_one_mode_closed_form():
    ops, x, y = _torus_2d(64)
    out = commutator_probe(ops, np.cos(x) * np.ones_like(y), np.sin(y) * np.ones_like(x), 0, 1)
    expect = 0.5 * np.sin(x) * np.cos(y)
    assert float(np.max(np.abs(out - expect))) <= 1e-12


# ---------------------------------------------------------------------------
# effective viscous flux
# ---------------------------------------------------------------------------


def test_effective_flux_uniform_state():
    grid = Grid(shape=(9, 7, 1), extents=(1.0, 1.0, 1.0))
    rho = np.ones(grid.shape)
    theta = np.ones(grid.shape)
    u = grid.vector_field()
    F = effective_viscous_flux(grid, LAW, PARAMS, rho, u, theta)
    # p_e(1) + theta p_th(1) + delta = 1 + 1 + 0.1
    assert float(np.max(np.abs(F - 2.1))) <= 1e-14


def test_effective_flux_subtracts_dilatation():
    grid = Grid(shape=(257, 1, 1), extents=(np.pi, 1.0, 1.0))
    x = grid.mesh()[0]
    rho = np.ones(grid.shape)
    theta = np.ones(grid.shape)
    u = grid.vector_field()
    u[0] = np.sin(x)
    F = effective_viscous_flux(grid, LAW, PARAMS, rho, u, theta)
    lam2mu = LAW.lam(1.0) + 2.0 * LAW.mu(1.0)
    expect = 2.1 - lam2mu * np.cos(x)
    assert float(np.max(np.abs(F - expect))) <= 1e-4


# ---------------------------------------------------------------------------
# oscillation experiment
# ---------------------------------------------------------------------------


@pytest.fixture(scope="module")
def osc():
    return oscillation_experiment(LAW, PARAMS)


def test_oscillation_flux_defect_closed_form(osc):
    lam2mu = LAW.lam(1.0) + 2.0 * LAW.mu(1.0)
    for n, d1 in zip(osc.modes, osc.flux_defect):
        assert d1 == pytest.approx(lam2mu * 0.3 / (2.0 * n), rel=1e-8)


def test_oscillation_flux_defect_decays(osc):
    d = osc.flux_defect
    assert all(b < a for a, b in zip(d, d[1:]))
    assert d[-1] <= d[0] / 6.0


def test_oscillation_pressure_defect_persists(osc):
    d2 = osc.pressure_defect
    assert min(d2) > 0.05
    assert max(d2) / min(d2) <= 1.0 + 1e-8  # n-independent covariance
    assert min(d2) >= 10.0 * osc.flux_defect[-1]


def test_oscillation_clipping_paths():
    # no clipping at the default amplitude
    table = oscillation_experiment(LAW, PARAMS)
    assert all(c == 0.0 for c in table.clipped_fraction)
    # moderate clipping accepted and reported
    table = oscillation_experiment(LAW, PARAMS, amplitude=0.52, floor_fraction=0.5)
    assert all(0.05 < c <= 0.10 for c in table.clipped_fraction)
    # heavy clipping rejected
    with pytest.raises(ValueError, match="clip"):
        oscillation_experiment(LAW, PARAMS, amplitude=0.6, floor_fraction=0.5)


def test_oscillation_csv(tmp_path, osc):
    p1, p2 = tmp_path / "a.csv", tmp_path / "b.csv"
    write_defect_table(p1, osc)
    write_defect_table(p2, osc)
    assert p1.read_bytes() == p2.read_bytes()
    lines = p1.read_text().strip().splitlines()
    assert lines[0] == "mode,flux_defect,pressure_defect,clipped_fraction"
    assert len(lines) == 1 + len(osc.modes)


def test_oscillation_table_is_frozen(osc):
    assert isinstance(osc, OscillationTable)
    assert osc.modes == (4, 8, 16, 32)
    with pytest.raises(AttributeError):
        osc.modes = (1,)
