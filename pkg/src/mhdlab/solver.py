"""Explicit time integration of the regularized viscous MHD system.

The integrator advances the conserved tuple

    (rho, rho*u, (rho + delta)*Q(theta), H)

with a two-stage Runge-Kutta step (Heun).  Every spatial term is assembled
from the parity-aware stencils in fieldops, so the no-slip / perfectly
conducting / insulating wall conditions are encoded in the ghost handling
and re-imposed exactly after each stage.  H is re-projected divergence-free
after every full step.

Regularization knobs: epsilon adds mass diffusion (with its compensating
velocity-gradient force in the momentum equation), delta carries the
artificial pressure delta*rho^beta, the thermal sink delta*theta^(alpha+1),
the (1-delta) damping of the heating terms, and the heat-capacity padding
(rho + delta).

Assembly is data-parallel over grid slabs (vectorized numpy); reductions use
fixed-shape pairwise summation, so results do not depend on thread count.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .constitutive import ConstitutiveLaw, heat_content, conductivity_potential, pressure, temperature_from_heat
from .errors import ConfigError, InvariantViolation, NumericalAbort
from .fieldops import (
    EVEN,
    ODD,
    _component_gradients,
    curl,
    d1,
    dissipation,
    divergence,
    double_curl,
    laplacian,
    stress_divergence,
)
from .grid import Grid
from .projection import DivFreeProjector

__all__ = [
    "SchemeParams",
    "IncidentLog",
    "State",
    "MollificationReport",
    "mollify_initial_data",
    "rhs",
    "stable_dt",
    "step",
    "run",
    "RunResult",
    "ensure_compatible",
]


@dataclass(frozen=True)
class SchemeParams:
    """Regularization weights and time-stepping policy.

    dt=None means adaptive stepping at the stability limit; a positive dt
    fixes the step (still checked against the limit every step).  omega is
    the renormalizing-weight exponent picked up by the diagnostics layer.
    """

    epsilon: float
    delta: float
    beta: float = 4.0
    omega: float = 0.5
    dt: float | None = None
    safety: float = 0.4
    t_end: float = 1.0

    def __post_init__(self):
        if not self.epsilon > 0.0:
            raise ValueError(f"epsilon must be positive, got {self.epsilon}")
        if not 0.0 < self.delta < 1.0:
            raise ValueError(f"delta must lie in (0,1), got {self.delta}")
        if not self.beta > 1.0:
            raise ValueError(f"beta must exceed 1, got {self.beta}")
        if not 0.0 < self.omega <= 1.0:
            raise ValueError(f"omega must lie in (0,1], got {self.omega}")
        if self.dt is not None and not self.dt > 0.0:
            raise ValueError(f"fixed dt must be positive, got {self.dt}")
        if not 0.0 < self.safety <= 1.0:
            raise ValueError(f"safety must lie in (0,1], got {self.safety}")
        if not self.t_end > 0.0:
            raise ValueError(f"t_end must be positive, got {self.t_end}")


def ensure_compatible(law: ConstitutiveLaw, params: SchemeParams) -> None:
    """Cross-check law/params: the artificial pressure must dominate p_e."""
    if not params.beta > law.gamma:
        raise ConfigError(
            f"beta={params.beta} must exceed gamma={law.gamma} "
            "(artificial pressure must dominate the elastic pressure)"
        )


@dataclass
class IncidentLog:
    """Counts of guarded recoveries; nonzero values flag marginal steps."""

    velocity_clamp_nodes: int = 0
    heat_floor_nodes: int = 0

    def total(self) -> int:
        return self.velocity_clamp_nodes + self.heat_floor_nodes


@dataclass
class State:
    """Primitive fields on grid nodes at one instant."""

    grid: Grid
    rho: np.ndarray
    u: np.ndarray
    theta: np.ndarray
    H: np.ndarray
    t: float = 0.0

    def copy(self) -> "State":
        return State(
            self.grid,
            self.rho.copy(),
            self.u.copy(),
            self.theta.copy(),
            self.H.copy(),
            self.t,
        )


def _zero_walls(grid: Grid, F: np.ndarray) -> None:
    """Zero the wall slabs of a (3, nx, ny, nz) field in place."""
    for a in grid.active_axes:
        lo = [slice(None)] * 4
        hi = [slice(None)] * 4
        lo[1 + a] = 0
        hi[1 + a] = grid.shape[a] - 1
        F[tuple(lo)] = 0.0
        F[tuple(hi)] = 0.0


def _wall_max(grid: Grid, F: np.ndarray) -> float:
    out = 0.0
    for a in grid.active_axes:
        lo = [slice(None)] * 4
        hi = [slice(None)] * 4
        lo[1 + a] = 0
        hi[1 + a] = grid.shape[a] - 1
        out = max(out, float(np.max(np.abs(F[tuple(lo)]))))
        out = max(out, float(np.max(np.abs(F[tuple(hi)]))))
    return out


# ---------------------------------------------------------------------------
# initial data mollification
# ---------------------------------------------------------------------------


@dataclass
class MollificationReport:
    """What the initial-data clamps actually touched."""

    rho_floor: float
    rho_cap: float
    rho_raised_nodes: int
    rho_lowered_nodes: int
    momentum_zeroed_nodes: int
    momentum_zero_mask: np.ndarray
    theta_raised_nodes: int
    theta_lowered_nodes: int
    wall_speed_cleaned: float
    wall_field_cleaned: float
    div_defect_before: float
    div_defect_after: float


def mollify_initial_data(
    grid: Grid,
    law: ConstitutiveLaw,
    params: SchemeParams,
    rho0,
    u0,
    theta0,
    H0,
    *,
    theta_lo: float = 1e-3,
    theta_hi: float | None = None,
    projector: DivFreeProjector | None = None,
):
    """Clamp and project raw initial fields into the scheme's admissible set.

    rho is clamped into [delta, delta^(-1/(2 beta))] and the velocity is
    zeroed wherever the clamp lowered rho (so no kinetic energy is invented
    at capped nodes); theta is clamped into [theta_lo, theta_hi]; u and H
    walls are zeroed; H is projected divergence-free.  Returns the admissible
    State at t=0 plus a report of everything that was altered.
    """
    ensure_compatible(law, params)
    rho0 = np.asarray(rho0, dtype=float)
    u0 = np.asarray(u0, dtype=float)
    theta0 = np.asarray(theta0, dtype=float)
    H0 = np.asarray(H0, dtype=float)
    if not float(np.min(theta0)) > 0.0:
        raise ConfigError(
            f"initial temperature must be strictly positive, min = {float(np.min(theta0)):.6g}"
        )
    if float(np.min(rho0)) < 0.0:
        raise ConfigError(
            f"initial density must be non-negative, min = {float(np.min(rho0)):.6g}"
        )
    if not theta_lo > 0.0:
        raise ConfigError(f"theta_lo must be positive, got {theta_lo}")
    if theta_hi is not None and not theta_hi >= theta_lo:
        raise ConfigError(f"theta_hi={theta_hi} must be >= theta_lo={theta_lo}")

    floor = params.delta
    cap = params.delta ** (-1.0 / (2.0 * params.beta))
    rho = np.clip(rho0, floor, cap)
    raised = rho > rho0
    lowered = rho < rho0

    u = u0.copy()
    wall_speed = _wall_max(grid, u)
    _zero_walls(grid, u)
    u[:, lowered] = 0.0

    theta = np.clip(theta0, theta_lo, np.inf if theta_hi is None else theta_hi)

    H = H0.copy()
    wall_field = _wall_max(grid, H)
    _zero_walls(grid, H)
    div_before = grid.norm_l2(divergence(grid, H))
    if projector is None:
        projector = DivFreeProjector(grid)
    H = projector.project(H)
    div_after = grid.norm_l2(divergence(grid, H))

    report = MollificationReport(
        rho_floor=floor,
        rho_cap=cap,
        rho_raised_nodes=int(np.count_nonzero(raised)),
        rho_lowered_nodes=int(np.count_nonzero(lowered)),
        momentum_zeroed_nodes=int(np.count_nonzero(lowered)),
        momentum_zero_mask=lowered,
        theta_raised_nodes=int(np.count_nonzero(theta > theta0)),
        theta_lowered_nodes=int(np.count_nonzero(theta < theta0)),
        wall_speed_cleaned=wall_speed,
        wall_field_cleaned=wall_field,
        div_defect_before=div_before,
        div_defect_after=div_after,
    )
    return State(grid, rho, u, theta, H, 0.0), report


# ---------------------------------------------------------------------------
# right-hand side
# ---------------------------------------------------------------------------


def rhs(
    grid: Grid,
    law: ConstitutiveLaw,
    params: SchemeParams,
    rho: np.ndarray,
    u: np.ndarray,
    theta: np.ndarray,
    H: np.ndarray,
    *,
    t: float = 0.0,
    sources=None,
):
    """Time derivatives of (rho, rho u, (rho+delta)Q(theta), H).

    sources, if given, is called with the stage time and must return a
    4-tuple of arrays (or None entries) added to the respective blocks;
    manufactured-solution runs use it.
    """
    eps = params.epsilon
    delta = params.delta

    du = _component_gradients(grid, u)
    divu = du[0][0] + du[1][1] + du[2][2]
    grad_rho = [d1(grid, rho, j, EVEN) for j in range(3)]
    curl_H = curl(grid, H, ODD)

    # mass: -div(rho u) + eps lap(rho)
    drho = -divergence(grid, rho * u) + eps * laplacian(grid, rho)

    # momentum: -div(rho u x u) - grad(p + delta rho^beta)
    #           - eps (grad u) grad rho + (curl H) x H + div psi
    ptot = pressure(law, rho, theta) + delta * np.power(rho, params.beta)
    div_psi = stress_divergence(grid, law, u, theta, du=du)
    lorentz = np.cross(curl_H, H, axis=0)
    dm = np.empty_like(u)
    for i in range(3):
        conv = d1(grid, rho * u[i] * u[0], 0, EVEN)
        conv += d1(grid, rho * u[i] * u[1], 1, EVEN)
        conv += d1(grid, rho * u[i] * u[2], 2, EVEN)
        eps_force = (
            du[i][0] * grad_rho[0] + du[i][1] * grad_rho[1] + du[i][2] * grad_rho[2]
        )
        dm[i] = (
            -conv - d1(grid, ptot, i, EVEN) - eps * eps_force + lorentz[i] + div_psi[i]
        )

    # thermal: -div(rho Q u) + lap K - delta theta^(alpha+1)
    #          + (1-delta)(nu |curl H|^2 + psi:grad u) - theta p_th div u
    q_heat = heat_content(law, theta)
    k_pot = conductivity_potential(law, theta)
    heating = law.nu * np.sum(curl_H * curl_H, axis=0) + dissipation(
        grid, law, u, theta, du=du
    )
    dw = (
        -divergence(grid, rho * q_heat * u)
        + laplacian(grid, k_pot)
        - delta * np.power(theta, law.alpha + 1.0)
        + (1.0 - delta) * heating
        - theta * law.p_th(rho) * divu
    )

    # magnetic: curl(u x H) - nu curl(curl H)
    dH = curl(grid, np.cross(u, H, axis=0), EVEN) - law.nu * double_curl(grid, H)

    if sources is not None:
        s_rho, s_m, s_w, s_H = sources(t)
        if s_rho is not None:
            drho = drho + s_rho
        if s_m is not None:
            dm = dm + s_m
        if s_w is not None:
            dw = dw + s_w
        if s_H is not None:
            dH = dH + s_H
    return drho, dm, dw, dH


# ---------------------------------------------------------------------------
# stability limit
# ---------------------------------------------------------------------------


def stable_dt(grid: Grid, law: ConstitutiveLaw, params: SchemeParams, state: State) -> float:
    """safety * min(advective, diffusive, sink) step limits.

    Diffusive coefficients considered: eps, nu, mu_hi/rho_min and
    kappa(theta_max)/((rho_min+delta) cv_lo); the sink limit keeps the
    explicit theta update in the contraction region of the delta-sink.
    """
    h = min(grid.spacing_active)
    d = grid.ndim_active
    speed = float(np.max(np.sum(state.u * state.u, axis=0))) ** 0.5
    rho_min = float(np.min(state.rho))
    theta_max = float(np.max(state.theta))
    if not rho_min > 0.0:
        raise InvariantViolation(f"density positivity lost: min rho = {rho_min:.6g}")
    cv_lo = law.bounds.cv_lo
    kappa_max = float(np.max(law.kappa(theta_max)))
    diff = max(
        params.epsilon,
        law.nu,
        law.bounds.mu_hi / rho_min,
        kappa_max / ((rho_min + params.delta) * cv_lo),
    )
    limits = [h * h / (2.0 * d * diff)]
    if speed > 0.0:
        limits.append(h / speed)
    if theta_max > 0.0:
        limits.append(
            ((rho_min + params.delta) * cv_lo)
            / (params.delta * (law.alpha + 1.0) * theta_max**law.alpha)
        )
    return params.safety * min(limits)


# ---------------------------------------------------------------------------
# stepping
# ---------------------------------------------------------------------------


def _recover(grid, law, params, rho, m, w, incidents: IncidentLog, stage: str, t: float):
    """Primitives from conserved blocks, with guarded division and floors."""
    rho_min = float(np.min(rho))
    if not rho_min > 0.0:
        raise InvariantViolation(
            f"density positivity lost ({stage}, t={t:.6g}): min rho = {rho_min:.6g}"
        )
    floor = 0.5 * params.delta
    hits = int(np.count_nonzero(rho < floor))
    if hits:
        incidents.velocity_clamp_nodes += hits
    u = m / np.maximum(rho, floor)

    q = w / (rho + params.delta)
    q_min = float(np.min(q))
    if q_min < 0.0:
        scale = max(float(np.max(np.abs(q))), 1e-300)
        if q_min < -1e-12 * scale:
            raise InvariantViolation(
                f"thermal content went negative ({stage}, t={t:.6g}): min = {q_min:.6g}"
            )
        incidents.heat_floor_nodes += int(np.count_nonzero(q < 0.0))
        q = np.maximum(q, 0.0)
    theta = temperature_from_heat(law, q)
    return u, theta


_BLOCKS = ("mass", "momentum", "thermal", "magnetic")


def _check_finite(arrays, t: float) -> None:
    for name, arr in zip(_BLOCKS, arrays):
        if not np.all(np.isfinite(arr)):
            bad = int(np.count_nonzero(~np.isfinite(arr)))
            raise NumericalAbort(
                f"non-finite values in the {name} block at t={t:.6g} ({bad} nodes)"
            )


def step(
    grid: Grid,
    law: ConstitutiveLaw,
    params: SchemeParams,
    state: State,
    dt: float,
    *,
    projector: DivFreeProjector,
    sources=None,
    incidents: IncidentLog | None = None,
    dt_limit: float | None = None,
) -> State:
    """One Heun step of the conserved tuple; walls re-imposed each stage."""
    if incidents is None:
        incidents = IncidentLog()
    if dt_limit is None:
        dt_limit = stable_dt(grid, law, params, state)
    if dt > dt_limit * (1.0 + 1e-12):
        raise InvariantViolation(
            f"dt={dt:.6g} exceeds the stability limit {dt_limit:.6g} at t={state.t:.6g}"
        )

    rho0, u0, th0, H0 = state.rho, state.u, state.theta, state.H
    m0 = rho0 * u0
    w0 = (rho0 + params.delta) * heat_content(law, th0)

    k1 = rhs(grid, law, params, rho0, u0, th0, H0, t=state.t, sources=sources)
    rho1 = rho0 + dt * k1[0]
    m1 = m0 + dt * k1[1]
    w1 = w0 + dt * k1[2]
    H1 = H0 + dt * k1[3]
    _zero_walls(grid, m1)
    _zero_walls(grid, H1)
    _check_finite((rho1, m1, w1, H1), state.t)
    u1, th1 = _recover(grid, law, params, rho1, m1, w1, incidents, "stage 1", state.t)

    k2 = rhs(grid, law, params, rho1, u1, th1, H1, t=state.t + dt, sources=sources)
    rho2 = rho0 + 0.5 * dt * (k1[0] + k2[0])
    m2 = m0 + 0.5 * dt * (k1[1] + k2[1])
    w2 = w0 + 0.5 * dt * (k1[2] + k2[2])
    H2 = H0 + 0.5 * dt * (k1[3] + k2[3])
    _zero_walls(grid, m2)
    _zero_walls(grid, H2)
    _check_finite((rho2, m2, w2, H2), state.t + dt)
    u2, th2 = _recover(grid, law, params, rho2, m2, w2, incidents, "stage 2", state.t)
    H2 = projector.project(H2)
    return State(grid, rho2, u2, th2, H2, state.t + dt)


# ---------------------------------------------------------------------------
# run driver
# ---------------------------------------------------------------------------


@dataclass
class RunResult:
    final_state: State
    steps: int
    incidents: IncidentLog
    record_steps: list = field(default_factory=list)
    record_times: list = field(default_factory=list)
    recorded_states: list = field(default_factory=list)
    snapshots: list = field(default_factory=list)
    dt_min: float = math.inf
    dt_max: float = 0.0


def run(
    grid: Grid,
    law: ConstitutiveLaw,
    params: SchemeParams,
    state0: State,
    *,
    t_end: float | None = None,
    record_every: int = 50,
    observer=None,
    keep_states: bool = False,
    sources=None,
    projector: DivFreeProjector | None = None,
    snapshot_times=(),
    max_steps: int = 2_000_000,
) -> RunResult:
    """Integrate to t_end, emitting records every record_every steps.

    observer(step_index, state, incidents) is called at each record point
    (including step 0 and the final step); keep_states additionally retains
    deep copies of the recorded states.  snapshot_times collects state
    copies at the first step crossing each requested time.
    """
    ensure_compatible(law, params)
    if record_every < 1:
        raise ValueError(f"record_every must be >= 1, got {record_every}")
    T = params.t_end if t_end is None else t_end
    if not T > state0.t:
        raise ValueError(f"t_end={T} must exceed the initial time {state0.t}")
    if projector is None:
        projector = DivFreeProjector(grid)

    incidents = IncidentLog()
    state = state0.copy()
    result = RunResult(final_state=state, steps=0, incidents=incidents)
    pending_snaps = sorted(float(s) for s in snapshot_times)

    def emit(step_idx: int) -> None:
        result.record_steps.append(step_idx)
        result.record_times.append(state.t)
        if keep_states:
            result.recorded_states.append(state.copy())
        if observer is not None:
            observer(step_idx, state, incidents)

    emit(0)
    last_emitted = 0
    steps = 0
    t_stop = T - 1e-12 * max(abs(T), 1.0)
    while state.t < t_stop:
        limit = stable_dt(grid, law, params, state)
        dt = limit if params.dt is None else params.dt
        dt = min(dt, T - state.t)
        state = step(
            grid,
            law,
            params,
            state,
            dt,
            projector=projector,
            sources=sources,
            incidents=incidents,
            dt_limit=limit,
        )
        steps += 1
        result.dt_min = min(result.dt_min, dt)
        result.dt_max = max(result.dt_max, dt)
        while pending_snaps and state.t >= pending_snaps[0] - 1e-12:
            result.snapshots.append(state.copy())
            pending_snaps.pop(0)
        if steps % record_every == 0 or state.t >= t_stop:
            emit(steps)
            last_emitted = steps
        if steps >= max_steps:
            raise NumericalAbort(
                f"step budget exhausted after {steps} steps at t={state.t:.6g} < {T}"
            )
    if last_emitted != steps:
        emit(steps)
    result.final_state = state
    result.steps = steps
    return result
