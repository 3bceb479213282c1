"""End-to-end acceptance suite.

One test per shipped guarantee, each with a wall-clock budget, so the
``pytest -v`` log doubles as the acceptance report: one PASSED/FAILED line
per guarantee.  Budget and thermal bound constants come from
tests/data/tolerances.json, frozen by scripts/calibrate_tolerances.py at a
3x margin over the measured discretization slopes.

The energy-budget shrink checks probe the two error channels on
configurations where each is visible.  Because the diffusive stability
limit ties dt to h^2, the dt and h^2 parts of the summed defect refine in
lockstep on any driven run, so dt halving there only shows a ratio near 1
no matter how accurate the stepper is.  A uniform cooling state has zero
spatial truncation and exposes the clean time-channel shrink (measured
ratio 4.0); the space channel is isolated by reusing one tiny dt across a
grid refinement (measured ratio 3.7).
"""

import json
import time
from dataclasses import replace
from pathlib import Path

import numpy as np
import pytest

from mhdlab.compactness import SpectralOperators
from mhdlab.constitutive import check_admissible, make_standard_law, validate_hypotheses
from mhdlab.diagnostics import (
    energy_budget_check,
    read_records_csv,
    record,
    thermal_weak_residual,
)
from mhdlab.fieldops import curl, divergence, gradient, identity_residual
from mhdlab.grid import Grid
from mhdlab.mms import spatial_convergence_study, temporal_convergence_study
from mhdlab.scenario import (
    initial_fields,
    load_scenario,
    run_scenario,
    sweep_scenarios,
)
from mhdlab.solver import SchemeParams, State, mollify_initial_data, run

ROOT = Path(__file__).resolve().parent.parent
TOLERANCES = json.loads((Path(__file__).parent / "data" / "tolerances.json").read_text())


def _report(name, elapsed, budget, detail):
    assert elapsed < budget, f"{name}: {elapsed:.1f}s exceeds {budget:.0f}s budget"
    print(f"{name}: PASS in {elapsed:.2f}s (budget {budget:.0f}s) -- {detail}")


def _uniform_state(grid, rho=1.0, theta=1.0):
    return State(
        grid,
        np.full(grid.shape, float(rho)),
        grid.vector_field(),
        np.full(grid.shape, float(theta)),
        grid.vector_field(),
        0.0,
    )


def _interior(g, f, margin=2):
    sl = [slice(None)] * f.ndim
    off = f.ndim - 3
    for ax in g.active_axes:
        sl[off + ax] = slice(margin, -margin)
    return f[tuple(sl)]


def test_01_constitutive_hypothesis_validator():
    t0 = time.perf_counter()
    rep = validate_hypotheses(make_standard_law())
    elapsed = time.perf_counter() - t0
    assert rep.ok, [c.name for c in rep.failures]
    _report(
        "acceptance 01 hypothesis validator",
        elapsed,
        1.0,
        f"{len(rep.checks)} checks ok on the standard law",
    )


def test_02_renormalizer_admissibility():
    t0 = time.perf_counter()
    good_omegas = (0.25, 0.5, 0.75, 1.0)
    for omega in good_omegas:
        rep = check_admissible(omega)
        assert rep.ok, rep.reasons
    for omega in (0.0, 1.5):
        assert not check_admissible(omega).ok
    # bare callables: the power weight passes, exp(-theta) fails convexity
    assert check_admissible(lambda t: (1.0 + t) ** -0.7).ok
    bad = check_admissible(lambda t: np.exp(-t))
    assert not bad.ok
    assert any("h''" in r or "convex" in r for r in bad.reasons)
    elapsed = time.perf_counter() - t0
    _report(
        "acceptance 02 weight admissibility",
        elapsed,
        1.0,
        f"omegas {good_omegas} admitted, 0.0/1.5/exp(-t) rejected",
    )


def test_03_operator_identities():
    t0 = time.perf_counter()
    rng = np.random.default_rng(7)

    # centered stencils: div o curl and curl o grad vanish to rounding
    worst = 0.0
    for shape, extents in (
        ((64, 64, 1), (np.pi, np.pi, 1.0)),
        ((24, 20, 28), (np.pi, 1.0, 2.0)),
    ):
        g = Grid(shape=shape, extents=extents)
        F = rng.standard_normal((3,) + g.shape)
        f = rng.standard_normal(g.shape)
        r1 = divergence(g, curl(g, F))
        s1 = np.max(np.abs(curl(g, F))) / min(g.spacing_active)
        r2 = curl(g, gradient(g, f))
        s2 = np.max(np.abs(gradient(g, f))) / min(g.spacing_active)
        worst = max(
            worst,
            np.max(np.abs(_interior(g, r1))) / s1,
            np.max(np.abs(_interior(g, r2))) / s2,
        )
    assert worst <= 1e-12

    # spectral inverse divergence at 256 modes: A[cos x] = sin x
    n = 256
    ops = SpectralOperators.torus((n, 1, 1), (2.0 * np.pi, 1.0, 1.0))
    x = (2.0 * np.pi * np.arange(n) / n).reshape(n, 1, 1)
    a_err = float(np.max(np.abs(ops.inverse_divergence_component(np.cos(x), 0) - np.sin(x))))
    assert a_err <= 1e-10

    # Riesz trace resolves the identity on band-limited data
    ops2 = SpectralOperators.torus((48, 48, 1), (2.0 * np.pi, 2.0 * np.pi, 1.0))
    xx = (2.0 * np.pi * np.arange(48) / 48).reshape(48, 1, 1)
    yy = (2.0 * np.pi * np.arange(48) / 48).reshape(1, 48, 1)
    f2 = np.cos(xx) * np.sin(2.0 * yy) + 0.5 * np.sin(3.0 * xx + yy)
    trace_err = float(np.max(np.abs(ops2.riesz(f2, 0, 0) + ops2.riesz(f2, 1, 1) - f2)))
    assert trace_err <= 1e-12

    elapsed = time.perf_counter() - t0
    _report(
        "acceptance 03 operator identities",
        elapsed,
        10.0,
        f"stencil rel {worst:.1e}, A1 err {a_err:.1e}, Riesz trace {trace_err:.1e}",
    )


def _quintic_bump(s):
    a = np.clip(np.abs(s), 0.0, 1.0)
    return 1.0 - 10.0 * a**3 + 15.0 * a**4 - 6.0 * a**5


def _compact_test_fields(n, L=np.pi):
    g = Grid(shape=(n, n, 1), extents=(L, L, 1.0))
    x, y = g.mesh()[:2]
    r = 2.6 / L
    bx = _quintic_bump((x - 0.52 * L) * r) * _quintic_bump((y - 0.47 * L) * r)
    u = np.stack(
        [
            bx * np.sin(2.0 * x + y),
            bx * np.cos(x - 2.0 * y),
            bx * np.sin(x + y),
        ]
    )
    H = np.stack(
        [
            bx * np.cos(2.0 * y),
            bx * np.sin(x + 0.5),
            bx * np.cos(x - y),
        ]
    )
    return g, u, H


def test_04_nonlinear_identity_second_order():
    t0 = time.perf_counter()
    res = []
    for n in (33, 65, 129):
        g, u, H = _compact_test_fields(n)
        res.append(identity_residual(g, u, H).l1)
    r1 = res[0] / res[1]
    r2 = res[1] / res[2]
    assert r1 == pytest.approx(4.0, abs=0.5)
    assert r2 == pytest.approx(4.0, abs=0.5)
    elapsed = time.perf_counter() - t0
    _report(
        "acceptance 04 transport identity refinement",
        elapsed,
        30.0,
        f"l1 ratios {r1:.2f}, {r2:.2f} in [3.5, 4.5] over 32->64->128 cells",
    )


def test_05_uniform_state_exact_cooling():
    t0 = time.perf_counter()
    grid = Grid(shape=(6, 5, 1), extents=(1.0, 1.0, 1.0))
    law = make_standard_law()
    params = SchemeParams(epsilon=0.05, delta=0.1, dt=1e-4, t_end=1.0)
    out = run(grid, law, params, _uniform_state(grid))
    fin = out.final_state
    # (1+delta) theta' = -delta theta^(alpha+1) from rest, theta(0)=1
    delta, alpha = params.delta, 3.0
    theta_exact = (1.0 + alpha * (delta / (1.0 + delta)) * fin.t) ** (-1.0 / alpha)
    theta_err = float(np.max(np.abs(fin.theta - theta_exact)))
    frozen = max(
        float(np.max(np.abs(fin.rho - 1.0))),
        float(np.max(np.abs(fin.u))),
        float(np.max(np.abs(fin.H))),
    )
    assert theta_err <= 1e-6
    assert frozen <= 1e-12
    elapsed = time.perf_counter() - t0
    _report(
        "acceptance 05 uniform cooling",
        elapsed,
        30.0,
        f"theta err {theta_err:.1e} at t=1, rho/u/H frozen to {frozen:.1e}",
    )


def test_06_shipped_scenario_invariants(tmp_path):
    t0 = time.perf_counter()
    sc = load_scenario(ROOT / "configs" / "vortex2d.ini")
    summary = run_scenario(sc, tmp_path)
    records = read_records_csv(tmp_path / "vortex2d-records.csv")
    mass0 = records[0].mass
    drift = max(abs(r.mass - mass0) for r in records)
    rho_min = min(r.rho_min for r in records)
    theta_min = min(r.theta_min for r in records)
    assert drift <= 1e-10
    assert rho_min > 0.0
    assert theta_min >= 0.0
    assert summary["div_H_rel"] <= 1e-10
    assert summary["t_final"] == pytest.approx(0.5)
    elapsed = time.perf_counter() - t0
    _report(
        "acceptance 06 shipped scenario",
        elapsed,
        300.0,
        f"mass drift {drift:.1e}, rho_min {rho_min:.3f}, "
        f"theta_min {theta_min:.3f}, div H rel {summary['div_H_rel']:.1e}",
    )


def _vortex_budget_sum(cells, dt, t_end=0.1):
    sc = load_scenario(
        ROOT / "configs" / "vortex2d.ini",
        overrides=(f"grid.shape={cells + 1} {cells + 1} 1",),
    )
    grid, law = sc.grid, sc.law
    params = replace(sc.params, dt=dt, t_end=t_end)
    rho0, u0, theta0, H0 = initial_fields(sc)
    state0, _ = mollify_initial_data(grid, law, params, rho0, u0, theta0, H0)
    records = []
    run(
        grid,
        law,
        params,
        state0,
        record_every=1,
        observer=lambda i, st, inc: records.append(record(grid, law, params, st, inc)),
    )
    rep = energy_budget_check(records, params)
    return float(sum(abs(w.full_residual) for w in rep.windows))


def _rest_budget_sum(dt, t_end=0.2):
    grid = Grid(shape=(6, 5, 1), extents=(1.0, 1.0, 1.0))
    law = make_standard_law()
    params = SchemeParams(epsilon=0.05, delta=0.1, dt=dt, t_end=t_end)
    records = []
    run(
        grid,
        law,
        params,
        _uniform_state(grid),
        record_every=1,
        observer=lambda i, st, inc: records.append(record(grid, law, params, st, inc)),
    )
    rep = energy_budget_check(records, params)
    return float(sum(abs(w.full_residual) for w in rep.windows))


def test_07_energy_budget_bound_and_shrink():
    t0 = time.perf_counter()
    bud = TOLERANCES["budget"]
    c1, c2 = bud["C1"], bud["C2"]
    dt0, dt_tiny = bud["dt_base"], bud["dt_tiny"]
    coarse, fine = bud["coarse_cells"], bud["fine_cells"]
    h_c, h_f = np.pi / coarse, np.pi / fine

    r_base = _vortex_budget_sum(coarse, dt0)
    r_half = _vortex_budget_sum(coarse, dt0 / 2.0)
    r_ct = _vortex_budget_sum(coarse, dt_tiny)
    r_ft = _vortex_budget_sum(fine, dt_tiny)

    # the calibrated bound C1 dt + C2 h^2 holds at every corner of the scan
    assert r_base <= c1 * dt0 + c2 * h_c**2
    assert r_half <= c1 * dt0 / 2.0 + c2 * h_c**2
    assert r_ct <= c1 * dt_tiny + c2 * h_c**2
    assert r_ft <= c1 * dt_tiny + c2 * h_f**2

    # space channel: same tiny dt, grid halved
    h_ratio = r_ct / r_ft
    assert h_ratio >= 1.7

    # time channel on the uniform cooling state (no spatial truncation)
    rest_dt = bud["rest_dt"]
    dt_ratio = _rest_budget_sum(rest_dt) / _rest_budget_sum(rest_dt / 2.0)
    assert dt_ratio >= 1.7

    elapsed = time.perf_counter() - t0
    _report(
        "acceptance 07 energy budget",
        elapsed,
        600.0,
        f"bound holds, h-halving shrink {h_ratio:.2f}, dt-halving shrink {dt_ratio:.2f}",
    )


def test_08_manufactured_convergence():
    t0 = time.perf_counter()
    law = make_standard_law(nu=0.1, mu0=0.1, kappa0=0.1)
    params = SchemeParams(epsilon=0.05, delta=0.1)
    spatial = spatial_convergence_study(law, params)
    temporal = temporal_convergence_study(law, params)
    worst_s = min(min(o) for o in spatial.orders.values())
    worst_t = min(min(o) for o in temporal.orders.values())
    assert worst_s >= 1.8
    assert worst_t >= 1.8
    elapsed = time.perf_counter() - t0
    _report(
        "acceptance 08 manufactured convergence",
        elapsed,
        300.0,
        f"spatial order >= {worst_s:.2f} over 64/128/256 cells, "
        f"temporal order >= {worst_t:.2f}",
    )


def test_09_artificial_pressure_sweep(tmp_path):
    t0 = time.perf_counter()
    rows = sweep_scenarios(ROOT / "configs" / "sweep_delta.ini", tmp_path)
    values = [row["value"] for row in rows]
    avgs = [row["artificial_pressure_avg"] for row in rows]
    assert values == [0.1, 0.01, 0.001]
    assert all(np.isfinite(a) for a in avgs)
    assert avgs[0] > avgs[1] > avgs[2]
    elapsed = time.perf_counter() - t0
    _report(
        "acceptance 09 vanishing artificial pressure",
        elapsed,
        900.0,
        "time-averaged artificial pressure "
        + " > ".join(f"{a:.2e}" for a in avgs)
        + " as delta shrinks",
    )


def test_10_thermal_weak_lower_bound():
    t0 = time.perf_counter()
    th = TOLERANCES["thermal"]
    cells = th["cells"]
    sc = load_scenario(
        ROOT / "configs" / "vortex2d.ini",
        overrides=(f"grid.shape={cells + 1} {cells + 1} 1",),
    )
    grid, law = sc.grid, sc.law
    params = replace(sc.params, t_end=th["t_end"])
    rho0, u0, theta0, H0 = initial_fields(sc)
    state0, _ = mollify_initial_data(grid, law, params, rho0, u0, theta0, H0)
    res = run(grid, law, params, state0, record_every=1, keep_states=True)
    bank = thermal_weak_residual(grid, law, params, res.recorded_states)
    h = np.pi / cells
    floor = -(th["C1"] * res.dt_max + th["C2"] * h * h)
    assert bank.min_residual >= floor
    elapsed = time.perf_counter() - t0
    _report(
        "acceptance 10 thermal one-sidedness",
        elapsed,
        300.0,
        f"bank min {bank.min_residual:.2e} >= discretization floor {floor:.2e}",
    )


def test_11_bitwise_determinism(tmp_path):
    t0 = time.perf_counter()
    files = (
        "vortex2d-records.csv",
        "vortex2d-summary.txt",
        "vortex2d-final-rho.field",
        "vortex2d-final-u.field",
        "vortex2d-final-theta.field",
        "vortex2d-final-H.field",
    )
    digests = []
    for tag in ("a", "b"):
        sc = load_scenario(ROOT / "configs" / "vortex2d.ini")
        outdir = tmp_path / tag
        run_scenario(sc, outdir)
        digests.append([(outdir / name).read_bytes() for name in files])
    assert digests[0] == digests[1]
    elapsed = time.perf_counter() - t0
    _report(
        "acceptance 11 determinism",
        elapsed,
        600.0,
        f"{len(files)} artifacts bit-identical across repeated runs",
    )
