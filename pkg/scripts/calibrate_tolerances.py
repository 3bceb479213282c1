#!/usr/bin/env python3
"""Measure discretization scalings of the energy budget and the weak thermal
defect on the shipped vortex scenario, then freeze bound constants for the
acceptance tests into tests/data/tolerances.json.

Three scans:

* time scan on the vortex: fixed coarse grid, fixed dt vs dt/2, records every
  step.  The difference isolates the dt slope of the summed budget defect; the
  ratio itself sits near 1 because the diffusive stability limit ties dt to h^2,
  so the spatial floor refines in lockstep and neither channel can dominate.
* rest scan: a uniform cooling state has zero spatial truncation, so the same
  dt halving shows the clean time-channel shrink there.
* space scan: one tiny dt reused on the coarse and the refined vortex grid, so
  the spatial truncation floor is isolated.

Constants are the measured slopes times a 3x margin.  Rerun this script and
commit the refreshed JSON whenever the stepper or the diagnostics change.
"""

import json
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from mhdlab.constitutive import make_standard_law
from mhdlab.diagnostics import energy_budget_check, record, thermal_weak_residual
from mhdlab.grid import Grid
from mhdlab.scenario import initial_fields, load_scenario
from mhdlab.solver import SchemeParams, State, mollify_initial_data, run, stable_dt

ROOT = Path(__file__).resolve().parent.parent
MARGIN = 3.0


def _scenario(cells):
    return load_scenario(
        ROOT / "configs" / "vortex2d.ini",
        overrides=(f"grid.shape={cells + 1} {cells + 1} 1",),
    )


def _integrate(cells, dt, t_end):
    sc = _scenario(cells)
    grid, law = sc.grid, sc.law
    params = replace(sc.params, dt=dt, t_end=t_end)
    rho0, u0, theta0, H0 = initial_fields(sc)
    state0, _ = mollify_initial_data(grid, law, params, rho0, u0, theta0, H0)
    records = []
    res = run(
        grid,
        law,
        params,
        state0,
        record_every=1,
        keep_states=True,
        observer=lambda i, st, inc: records.append(record(grid, law, params, st, inc)),
    )
    return grid, law, params, records, res


def _budget_sum(records, params):
    rep = energy_budget_check(records, params)
    return float(sum(abs(w.full_residual) for w in rep.windows))


def _bank_min(grid, law, params, states):
    return float(thermal_weak_residual(grid, law, params, states).min_residual)


def main():
    t_end = 0.1
    coarse, fine = 16, 32

    sc = _scenario(coarse)
    rho0, u0, theta0, H0 = initial_fields(sc)
    state0, _ = mollify_initial_data(sc.grid, sc.law, sc.params, rho0, u0, theta0, H0)
    dt0 = 0.8 * stable_dt(sc.grid, sc.law, sc.params, state0)

    sc_f = _scenario(fine)
    rho0, u0, theta0, H0 = initial_fields(sc_f)
    state0f, _ = mollify_initial_data(
        sc_f.grid, sc_f.law, sc_f.params, rho0, u0, theta0, H0
    )
    dt_tiny = 0.1 * stable_dt(sc_f.grid, sc_f.law, sc_f.params, state0f)
    h_coarse = np.pi / coarse
    h_fine = np.pi / fine

    print(f"dt0={dt0:.6e}  dt_tiny={dt_tiny:.6e}")

    out = {}

    # --- time scan on the coarse grid ---
    g1, l1, p1, rec_base, res_base = _integrate(coarse, dt0, t_end)
    g2, l2, p2, rec_half, res_half = _integrate(coarse, dt0 / 2.0, t_end)
    R_base = _budget_sum(rec_base, p1)
    R_half = _budget_sum(rec_half, p2)
    m_base = _bank_min(g1, l1, p1, res_base.recorded_states)
    m_half = _bank_min(g2, l2, p2, res_half.recorded_states)
    print(f"budget  R(dt0)={R_base:.6e}  R(dt0/2)={R_half:.6e}  ratio={R_base/R_half:.3f}")
    print(f"bank    m(dt0)={m_base:.6e}  m(dt0/2)={m_half:.6e}")

    # --- rest scan: uniform cooling state, pure time channel ---
    rest_dt = 1e-3
    rest_vals = []
    for dt in (rest_dt, rest_dt / 2.0):
        rg = Grid(shape=(6, 5, 1), extents=(1.0, 1.0, 1.0))
        rlaw = make_standard_law()
        rparams = SchemeParams(epsilon=0.05, delta=0.1, dt=dt, t_end=0.2)
        rstate = State(
            rg,
            np.ones(rg.shape),
            rg.vector_field(),
            np.ones(rg.shape),
            rg.vector_field(),
            0.0,
        )
        rrecs = []
        run(
            rg,
            rlaw,
            rparams,
            rstate,
            record_every=1,
            observer=lambda i, st, inc: rrecs.append(record(rg, rlaw, rparams, st, inc)),
        )
        rest_vals.append(_budget_sum(rrecs, rparams))
    R_rest, R_rest_half = rest_vals
    print(
        f"rest    R(dt)={R_rest:.6e}  R(dt/2)={R_rest_half:.6e}"
        f"  ratio={R_rest / R_rest_half:.3f}"
    )

    # --- space scan at the tiny dt ---
    g3, l3, p3, rec_ct, res_ct = _integrate(coarse, dt_tiny, t_end)
    g4, l4, p4, rec_ft, res_ft = _integrate(fine, dt_tiny, t_end)
    R_ct = _budget_sum(rec_ct, p3)
    R_ft = _budget_sum(rec_ft, p4)
    m_ft = _bank_min(g4, l4, p4, res_ft.recorded_states)
    print(f"budget  R(h)={R_ct:.6e}  R(h/2)={R_ft:.6e}  ratio={R_ct/R_ft:.3f}")
    print(f"bank    m(h/2, tiny dt)={m_ft:.6e}")

    C1 = MARGIN * max(2.0 * (R_base - R_half) / dt0, 0.0)
    C2 = MARGIN * R_ct / h_coarse**2
    out["budget"] = {
        "t_end": t_end,
        "coarse_cells": coarse,
        "fine_cells": fine,
        "dt_base": dt0,
        "dt_tiny": dt_tiny,
        "R_sum_base": R_base,
        "R_sum_half_dt": R_half,
        "R_sum_coarse_tiny": R_ct,
        "R_sum_fine_tiny": R_ft,
        "rest_dt": rest_dt,
        "rest_t_end": 0.2,
        "rest_R_sum_base": R_rest,
        "rest_R_sum_half_dt": R_rest_half,
        "C1": C1,
        "C2": C2,
    }

    C1_th = MARGIN * max(2.0 * (abs(m_base) - abs(m_half)) / dt0, 0.0)
    C2_th = MARGIN * abs(m_ft) / h_fine**2
    out["thermal"] = {
        "t_end": t_end,
        "cells": fine,
        "min_residual_coarse_dt0": m_base,
        "min_residual_coarse_half": m_half,
        "min_residual_fine_tiny": m_ft,
        "C1": C1_th,
        "C2": C2_th,
    }

    dest = ROOT / "tests" / "data" / "tolerances.json"
    dest.parent.mkdir(parents=True, exist_ok=True)
    with open(dest, "w") as fh:
        json.dump(out, fh, indent=2, sort_keys=True)
        fh.write("\n")
    print(f"wrote {dest}")


if __name__ == "__main__":
    main()
