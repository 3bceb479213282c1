"""Constitutive closure for a compressible, heat-conducting, resistive fluid.

The material model is split into a cold (elastic) pressure p_e(rho), a thermal
pressure theta * p_th(rho), temperature-dependent transport coefficients
mu, lambda, kappa, a specific heat c_v, and a constant magnetic diffusivity nu.
From these the module derives the potentials that enter the energy and entropy
bookkeeping:

    P_e(rho)  = int_1^rho p_e(s)/s^2 ds        elastic potential
    P_th(rho) = int_1^rho p_th(s)/s^2 ds       thermal pressure potential
    Q(theta)  = int_0^theta c_v(s) ds          heat content
    K(theta)  = int_0^theta kappa(s) ds        conductivity potential

plus the renormalized variants Q_h, K_h obtained by weighting the integrand
with h(theta) = (1+theta)^-omega.

Laws are composed from a small catalog of primitive forms (constant, power,
affine, tabulated and sums thereof) so that potentials and derivatives have
closed forms wherever possible; anything else falls back to adaptive
quadrature at relative tolerance 1e-10.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy.integrate import cumulative_simpson, quad

__all__ = [
    "Const",
    "Power",
    "Affine",
    "Sum",
    "Tabulated",
    "HypothesisBounds",
    "ConstitutiveLaw",
    "Renormalizer",
    "AdmissibilityReport",
    "HypothesisReport",
    "make_standard_law",
    "pressure",
    "elastic_potential",
    "thermal_pressure_potential",
    "heat_content",
    "conductivity_potential",
    "renormalized_heat_content",
    "renormalized_conductivity_potential",
    "internal_energy",
    "entropy",
    "maxwell_residual",
    "temperature_from_heat",
    "cutoff",
    "check_admissible",
    "validate_hypotheses",
]

_QUAD_RTOL = 1e-10
# range over which sampled hypothesis checks and automatic bounds are taken
_SAMPLE_SPAN = (1e-6, 1e3)
_SAMPLE_COUNT = 256


# ---------------------------------------------------------------------------
# primitive catalog
# ---------------------------------------------------------------------------


class Const:
    """Constant coefficient c."""

    def __init__(self, c: float):
        self.c = float(c)

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        return np.full_like(x, self.c) if x.ndim else self.c

    def deriv(self, x):
        x = np.asarray(x, dtype=float)
        return np.zeros_like(x) if x.ndim else 0.0

    def __repr__(self):
        return f"Const({self.c})"


class Power:
    """Monomial coef * x**expo."""

    def __init__(self, coef: float, expo: float):
        self.coef = float(coef)
        self.expo = float(expo)

    def __call__(self, x):
        return self.coef * np.power(np.asarray(x, dtype=float), self.expo)

    def deriv(self, x):
        x = np.asarray(x, dtype=float)
        return self.coef * self.expo * np.power(x, self.expo - 1.0)

    def __repr__(self):
        return f"Power({self.coef}, {self.expo})"


class Affine:
    """a + b * x."""

    def __init__(self, a: float, b: float):
        self.a = float(a)
        self.b = float(b)

    def __call__(self, x):
        return self.a + self.b * np.asarray(x, dtype=float)

    def deriv(self, x):
        x = np.asarray(x, dtype=float)
        return np.full_like(x, self.b) if x.ndim else self.b

    def __repr__(self):
        return f"Affine({self.a}, {self.b})"


class Sum:
    """Sum of primitive terms."""

    def __init__(self, *terms):
        self.terms = terms

    def __call__(self, x):
        return sum(t(x) for t in self.terms)

    def deriv(self, x):
        return sum(t.deriv(x) for t in self.terms)

    def __repr__(self):
        return "Sum(" + ", ".join(repr(t) for t in self.terms) + ")"


class Tabulated:
    """Piecewise-linear table, extrapolated flat beyond the endpoints."""

    def __init__(self, xs, ys):
        self.xs = np.asarray(xs, dtype=float)
        self.ys = np.asarray(ys, dtype=float)
        if self.xs.ndim != 1 or self.xs.shape != self.ys.shape:
            raise ValueError("table abscissae and values must be equal-length 1d")
        if np.any(np.diff(self.xs) <= 0):
            raise ValueError("table abscissae must be strictly increasing")

    def __call__(self, x):
        return np.interp(np.asarray(x, dtype=float), self.xs, self.ys)

    def deriv(self, x):
        x = np.asarray(x, dtype=float)
        slopes = np.diff(self.ys) / np.diff(self.xs)
        idx = np.clip(np.searchsorted(self.xs, x, side="right") - 1, 0, len(slopes) - 1)
        out = slopes[idx]
        out = np.where((x < self.xs[0]) | (x > self.xs[-1]), 0.0, out)
        return out if x.ndim else float(out)

    def __repr__(self):
        return f"Tabulated(n={len(self.xs)})"


def _as_callable_with_deriv(f):
    """Wrap a bare callable so .deriv exists (central finite difference)."""
    if hasattr(f, "deriv"):
        return f

    class _Wrapped:
        def __init__(self, fn):
            self.fn = fn

        def __call__(self, x):
            return self.fn(x)

        def deriv(self, x):
            x = np.asarray(x, dtype=float)
            step = 1e-6 * np.maximum(1.0, np.abs(x))
            lo = np.maximum(x - step, 0.0)
            hi = x + step
            return (self.fn(hi) - self.fn(lo)) / (hi - lo)

    return _Wrapped(f)


# ---------------------------------------------------------------------------
# law container
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HypothesisBounds:
    """Growth/bound constants used by the sampled hypothesis checks."""

    a1: float
    a2: float
    a3: float
    kappa_lo: float
    kappa_hi: float
    mu_lo: float
    mu_hi: float
    lam_hi: float
    cv_lo: float
    cv_hi: float


@dataclass(frozen=True)
class ConstitutiveLaw:
    """Full material closure.

    gamma is the cold-pressure growth exponent, alpha the conductivity growth
    exponent, nu the (constant) magnetic diffusivity.  The structural
    constraints gamma > 3/2, alpha > 2, nu > 0 are enforced here; everything
    sampled lives in validate_hypotheses.
    """

    gamma: float
    alpha: float
    nu: float
    p_e: Callable
    p_th: Callable
    mu: Callable
    lam: Callable
    kappa: Callable
    c_v: Callable
    bounds: HypothesisBounds

    def __post_init__(self):
        if not self.gamma > 1.5:
            raise ValueError(
                f"gamma must exceed 3/2, got gamma={self.gamma}"
            )
        if not self.alpha > 2.0:
            raise ValueError(f"alpha must exceed 2, got alpha={self.alpha}")
        if not self.nu > 0.0:
            raise ValueError(f"nu must be positive, got nu={self.nu}")


def make_standard_law(
    gamma: float = 5.0 / 3.0,
    alpha: float = 3.0,
    nu: float = 1.0,
    *,
    pe0: float = 1.0,
    pth0: float = 1.0,
    mu0: float = 1.0,
    lam0: float = 0.0,
    kappa0: float = 1.0,
    cv0: float = 1.0,
    p_e=None,
    p_th=None,
    mu=None,
    lam=None,
    kappa=None,
    c_v=None,
    bounds: HypothesisBounds | None = None,
) -> ConstitutiveLaw:
    """Build the power-family law, optionally overriding individual pieces.

    Defaults: p_e = pe0 rho^gamma, p_th = pth0 rho^(gamma/3), mu = mu0,
    lambda = lam0, kappa = kappa0 (1 + theta^alpha), c_v = cv0.  Bound
    constants are derived from samples of the actual coefficients with a
    small relative margin, so self-consistent laws validate cleanly.
    """
    p_e = _as_callable_with_deriv(p_e if p_e is not None else Power(pe0, gamma))
    p_th = _as_callable_with_deriv(
        p_th if p_th is not None else Power(pth0, gamma / 3.0)
    )
    mu = _as_callable_with_deriv(mu if mu is not None else Const(mu0))
    lam = _as_callable_with_deriv(lam if lam is not None else Const(lam0))
    kappa = _as_callable_with_deriv(
        kappa if kappa is not None else Sum(Const(kappa0), Power(kappa0, alpha))
    )
    c_v = _as_callable_with_deriv(c_v if c_v is not None else Const(cv0))

    if bounds is None:
        # envelope of the declared standard family; custom callables are
        # judged against it unless explicit bounds are supplied
        slack = 1e-9
        bounds = HypothesisBounds(
            a1=pe0 * gamma * (1.0 - slack),
            a2=pe0 * (1.0 + slack),
            a3=pth0 * (1.0 + slack),
            kappa_lo=kappa0 * (1.0 - slack),
            kappa_hi=kappa0 * (1.0 + slack),
            mu_lo=mu0 * (1.0 - slack),
            mu_hi=mu0 * (1.0 + slack),
            lam_hi=max(lam0, 0.0) * (1.0 + slack),
            cv_lo=cv0 * (1.0 - slack),
            cv_hi=cv0 * (1.0 + slack),
        )

    return ConstitutiveLaw(
        gamma=float(gamma),
        alpha=float(alpha),
        nu=float(nu),
        p_e=p_e,
        p_th=p_th,
        mu=mu,
        lam=lam,
        kappa=kappa,
        c_v=c_v,
        bounds=bounds,
    )


# ---------------------------------------------------------------------------
# potentials (closed forms per primitive, quadrature fallback)
# ---------------------------------------------------------------------------


def _quad_vec(integrand, lo, x):
    """Adaptive quadrature of integrand from lo to each entry of x."""
    xs = np.asarray(x, dtype=float)
    flat = np.atleast_1d(xs).ravel()
    out = np.empty_like(flat)
    for i, xi in enumerate(flat):
        out[i] = quad(integrand, lo, xi, epsrel=_QUAD_RTOL, limit=200)[0]
    out = out.reshape(np.atleast_1d(xs).shape)
    return out if xs.ndim else float(out[0])


def _antideriv_over_sq(prim, rho):
    """int_1^rho prim(s)/s^2 ds with closed forms for catalog primitives."""
    rho = np.asarray(rho, dtype=float)
    if isinstance(prim, Const):
        return prim.c * (1.0 - 1.0 / rho)
    if isinstance(prim, Power):
        e = prim.expo - 1.0
        if abs(e) < 1e-14:
            return prim.coef * np.log(rho)
        return prim.coef * (np.power(rho, e) - 1.0) / e
    if isinstance(prim, Affine):
        return prim.a * (1.0 - 1.0 / rho) + prim.b * np.log(rho)
    if isinstance(prim, Sum):
        return sum(_antideriv_over_sq(t, rho) for t in prim.terms)
    return _quad_vec(lambda s: prim(s) / s**2, 1.0, rho)


def _antideriv_from_zero(prim, x):
    """int_0^x prim(s) ds with closed forms for catalog primitives."""
    x = np.asarray(x, dtype=float)
    if isinstance(prim, Const):
        return prim.c * x
    if isinstance(prim, Power):
        e = prim.expo + 1.0
        if e <= 0:
            raise ValueError(f"non-integrable power {prim.expo} at zero")
        return prim.coef * np.power(x, e) / e
    if isinstance(prim, Affine):
        return prim.a * x + 0.5 * prim.b * x**2
    if isinstance(prim, Sum):
        return sum(_antideriv_from_zero(t, x) for t in prim.terms)
    return _quad_vec(prim, 0.0, x)


def _antideriv_over_x(prim, x):
    """int_1^x prim(s)/s ds with closed forms for catalog primitives."""
    x = np.asarray(x, dtype=float)
    if isinstance(prim, Const):
        return prim.c * np.log(x)
    if isinstance(prim, Power):
        if abs(prim.expo) < 1e-14:
            return prim.coef * np.log(x)
        return prim.coef * (np.power(x, prim.expo) - 1.0) / prim.expo
    if isinstance(prim, Affine):
        return prim.a * np.log(x) + prim.b * (x - 1.0)
    if isinstance(prim, Sum):
        return sum(_antideriv_over_x(t, x) for t in prim.terms)
    return _quad_vec(lambda s: prim(s) / s, 1.0, x)


def elastic_potential(law: ConstitutiveLaw, rho):
    """P_e(rho) = int_1^rho p_e(s)/s^2 ds."""
    return _antideriv_over_sq(law.p_e, rho)


def thermal_pressure_potential(law: ConstitutiveLaw, rho):
    """P_th(rho) = int_1^rho p_th(s)/s^2 ds."""
    return _antideriv_over_sq(law.p_th, rho)


def heat_content(law: ConstitutiveLaw, theta):
    """Q(theta) = int_0^theta c_v(s) ds."""
    return _antideriv_from_zero(law.c_v, theta)


def conductivity_potential(law: ConstitutiveLaw, theta):
    """K(theta) = int_0^theta kappa(s) ds."""
    return _antideriv_from_zero(law.kappa, theta)


def pressure(law: ConstitutiveLaw, rho, theta):
    """p(rho,theta) = p_e(rho) + theta * p_th(rho)."""
    return law.p_e(rho) + np.asarray(theta, dtype=float) * law.p_th(rho)


def internal_energy(law: ConstitutiveLaw, rho, theta):
    """e(rho,theta) = P_e(rho) + Q(theta)."""
    return elastic_potential(law, rho) + heat_content(law, theta)


def entropy(law: ConstitutiveLaw, rho, theta):
    """s(rho,theta) = int_1^theta c_v(s)/s ds - P_th(rho)."""
    return _antideriv_over_x(law.c_v, theta) - thermal_pressure_potential(law, rho)


def maxwell_residual(law: ConstitutiveLaw, rho: float, theta: float, step: float = 1e-5):
    """Finite-difference check of the thermodynamic compatibility relation.

    Returns d e/d rho (central difference) minus (p - theta dp/dtheta)/rho^2;
    for the additive closure the second factor reduces to p_e(rho)/rho^2, so
    the residual is pure discretization error, O(step^2).
    """
    de = (
        internal_energy(law, rho + step, theta)
        - internal_energy(law, rho - step, theta)
    ) / (2.0 * step)
    return float(de - law.p_e(rho) / rho**2)


# ---------------------------------------------------------------------------
# renormalizing weight h(theta) = (1+theta)^-omega
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Renormalizer:
    """Decaying weight used to renormalize the thermal balance."""

    omega: float

    def __post_init__(self):
        if not 0.0 < self.omega <= 1.0:
            raise ValueError(
                f"omega must lie in (0, 1], got {self.omega}; "
                "omega <= 1 is required for h''h >= 2(h')^2"
            )

    def __call__(self, theta):
        return np.power(1.0 + np.asarray(theta, dtype=float), -self.omega)

    def deriv(self, theta):
        t = np.asarray(theta, dtype=float)
        return -self.omega * np.power(1.0 + t, -self.omega - 1.0)

    def deriv2(self, theta):
        t = np.asarray(theta, dtype=float)
        return self.omega * (self.omega + 1.0) * np.power(1.0 + t, -self.omega - 2.0)


def _cumulative_weighted(fn, queries, n=32769):
    """int_0^q fn(s) ds for each query via dense cumulative Simpson + interp."""
    q = np.asarray(queries, dtype=float)
    top = float(np.max(q)) if q.size else 1.0
    if top <= 0.0:
        return np.zeros_like(q) if q.ndim else 0.0
    grid = np.linspace(0.0, top, n)
    vals = fn(grid)
    table = cumulative_simpson(vals, x=grid, initial=0.0)
    out = np.interp(q, grid, table)
    return out if q.ndim else float(out)


def renormalized_heat_content(law: ConstitutiveLaw, ren: Renormalizer, theta):
    """Q_h(theta) = int_0^theta c_v(s) h(s) ds."""
    t = np.asarray(theta, dtype=float)
    if isinstance(law.c_v, Const):
        w = ren.omega
        if abs(w - 1.0) < 1e-14:
            return law.c_v.c * np.log1p(t)
        return law.c_v.c * (np.power(1.0 + t, 1.0 - w) - 1.0) / (1.0 - w)
    return _cumulative_weighted(lambda s: law.c_v(s) * ren(s), t)


def renormalized_conductivity_potential(law: ConstitutiveLaw, ren: Renormalizer, theta):
    """K_h(theta) = int_0^theta kappa(s) h(s) ds."""
    return _cumulative_weighted(lambda s: law.kappa(s) * ren(s), theta)


# ---------------------------------------------------------------------------
# admissibility of a renormalizing weight
# ---------------------------------------------------------------------------


@dataclass
class AdmissibilityReport:
    ok: bool
    reasons: list[str] = field(default_factory=list)


def check_admissible(candidate, theta_max: float = 1e4) -> AdmissibilityReport:
    """Decide whether a weight qualifies as a renormalizer.

    Required: h(0) > 0, h' <= 0, h(theta) -> 0 for large theta, and the
    convexity condition h''(theta) h(theta) >= 2 h'(theta)^2.  For the
    power family (passed as an omega value or a Renormalizer) the conditions
    reduce to 0 < omega <= 1 and are decided in closed form; a bare callable
    is checked on samples with finite-difference derivatives, using
    h(theta_max) < 1e-2 as the decay proxy.
    """
    reasons: list[str] = []

    if isinstance(candidate, Renormalizer):
        candidate = candidate.omega
    if isinstance(candidate, (int, float)):
        omega = float(candidate)
        if not omega > 0.0:
            reasons.append(
                f"omega = {omega} <= 0: h does not decay and h' <= 0 fails"
            )
        if omega > 1.0:
            reasons.append(
                f"omega = {omega} > 1: h''h >= 2(h')^2 needs omega(omega+1) >= "
                "2 omega^2, i.e. omega <= 1"
            )
        return AdmissibilityReport(ok=not reasons, reasons=reasons)

    h = candidate
    thetas = np.concatenate(([0.0], np.geomspace(1e-3, theta_max, 200)))
    hv = np.asarray([float(h(t)) for t in thetas])
    step = np.maximum(1e-6, 1e-6 * thetas)
    hp = np.asarray([(h(t + s) - h(max(t - s, 0.0))) / (s + min(t, s)) for t, s in zip(thetas, step)])
    hpp = np.asarray(
        [
            (h(t + s) - 2.0 * h(t) + h(t - s)) / s**2
            if t >= s
            else (h(t) - 2.0 * h(t + s) + h(t + 2.0 * s)) / s**2
            for t, s in zip(thetas, step)
        ]
    )

    if not hv[0] > 0.0:
        reasons.append(f"h(0) = {hv[0]:.3g} is not positive")
    slack = 1e-8 * (np.abs(hv) + 1.0)
    if np.any(hp > slack):
        i = int(np.argmax(hp - slack))
        reasons.append(f"h'({thetas[i]:.3g}) = {hp[i]:.3g} > 0, weight must be nonincreasing")
    if not hv[-1] < 1e-2:
        reasons.append(
            f"h({theta_max:.3g}) = {hv[-1]:.3g} >= 1e-2, weight does not decay"
        )
    convex = hpp * hv - 2.0 * hp**2
    tol = -1e-6 * (np.abs(hpp * hv) + hp**2 + 1e-30) - 1e-12
    if np.any(convex < tol):
        i = int(np.argmin(convex - tol))
        reasons.append(
            f"h''*h >= 2*(h')^2 violated at theta = {thetas[i]:.3g} "
            f"(convexity defect {convex[i]:.3g})"
        )
    return AdmissibilityReport(ok=not reasons, reasons=reasons)


# ---------------------------------------------------------------------------
# temperature recovery and truncation
# ---------------------------------------------------------------------------


def temperature_from_heat(law: ConstitutiveLaw, w, rtol: float = 1e-12):
    """Invert Q: find theta with Q(theta) = w, w >= 0 entrywise.

    Constant c_v inverts directly; otherwise bisection on the monotone Q,
    refined to relative tolerance rtol.
    """
    w = np.asarray(w, dtype=float)
    if np.any(w < 0.0):
        raise ValueError(
            f"heat content must be nonnegative, min = {float(np.min(w)):.6g}"
        )
    if isinstance(law.c_v, Const):
        out = w / law.c_v.c
        return out if w.ndim else float(out)

    hi = np.maximum(1.0, np.max(w) / max(float(law.c_v(0.0)), 1e-8))
    for _ in range(200):
        if np.all(_antideriv_from_zero(law.c_v, hi) >= np.max(w)):
            break
        hi *= 2.0
    else:
        raise ValueError("failed to bracket temperature recovery")
    lo = np.zeros_like(np.atleast_1d(w))
    hi = np.full_like(lo, hi)
    wf = np.atleast_1d(w)
    for _ in range(120):
        mid = 0.5 * (lo + hi)
        too_low = np.asarray(_antideriv_from_zero(law.c_v, mid)) < wf
        lo = np.where(too_low, mid, lo)
        hi = np.where(too_low, hi, mid)
        if np.all(hi - lo <= rtol * np.maximum(hi, 1.0)):
            break
    out = 0.5 * (lo + hi)
    out = np.where(wf == 0.0, 0.0, out)
    return out.reshape(w.shape) if w.ndim else float(out[0])


def cutoff(rho, k: float):
    """Truncation T_k(rho) = min(rho, k); requires level k >= 1."""
    if not k >= 1.0:
        raise ValueError(f"cutoff level must be >= 1, got {k}")
    return np.minimum(np.asarray(rho, dtype=float), k)


# ---------------------------------------------------------------------------
# sampled hypothesis validation
# ---------------------------------------------------------------------------


@dataclass
class CheckResult:
    name: str
    description: str
    passed: bool
    detail: str = ""


@dataclass
class HypothesisReport:
    checks: list[CheckResult]
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> list[str]:
        return [
            f"{c.name}: {c.description} -- {c.detail}" for c in self.checks if not c.passed
        ]

    def summary(self) -> str:
        lines = []
        for c in self.checks:
            mark = "ok " if c.passed else "FAIL"
            lines.append(f"[{mark}] {c.name}: {c.description}" + (f" ({c.detail})" if c.detail else ""))
        lines.extend(f"[note] {n}" for n in self.notes)
        return "\n".join(lines)


def _sampled_check(name, desc, xs, lhs, rhs, checks):
    """Record lhs <= rhs up to a tiny relative slack, with worst point."""
    lhs = np.asarray(lhs, dtype=float)
    rhs = np.asarray(rhs, dtype=float)
    slack = 1e-9 * (np.abs(lhs) + np.abs(rhs)) + 1e-300
    bad = lhs > rhs + slack
    if np.any(bad):
        i = int(np.argmax(lhs - rhs))
        detail = f"violated at x={xs[i]:.6g}: lhs={lhs[i]:.6g} > rhs={rhs[i]:.6g}"
        checks.append(CheckResult(name, desc, False, detail))
    else:
        checks.append(CheckResult(name, desc, True))


def validate_hypotheses(
    law: ConstitutiveLaw,
    span=_SAMPLE_SPAN,
    samples: int = _SAMPLE_COUNT,
) -> HypothesisReport:
    """Check the structural growth and bound hypotheses on sample grids.

    Scalar constraints (gamma > 3/2, alpha > 2, nu > 0, positivity of the
    bound constants) are re-checked here even though the constructor enforces
    the first three.  Pointwise inequalities are sampled on log-spaced grids
    over `span` with a 1e-9 relative slack so exact saturation passes.
    """
    b = law.bounds
    checks: list[CheckResult] = []
    notes: list[str] = []
    rho = np.geomspace(span[0], span[1], samples)
    theta = np.geomspace(span[0], span[1], samples)

    for name, desc, ok in [
        ("gamma", "gamma must exceed 3/2", law.gamma > 1.5),
        ("alpha", "alpha must exceed 2", law.alpha > 2.0),
        ("nu", "nu must be positive", law.nu > 0.0),
        ("a1", "a1 must be positive", b.a1 > 0.0),
        ("a2", "a2 must be positive", b.a2 > 0.0),
        ("a3", "a3 must be positive", b.a3 > 0.0),
        ("kappa_bounds", "0 < kappa_lo <= kappa_hi", 0.0 < b.kappa_lo <= b.kappa_hi),
        ("mu_bounds", "0 < mu_lo <= mu_hi", 0.0 < b.mu_lo <= b.mu_hi),
        ("cv_bounds", "0 < cv_lo <= cv_hi", 0.0 < b.cv_lo <= b.cv_hi),
    ]:
        checks.append(CheckResult(name, desc, bool(ok)))

    pe0 = float(law.p_e(0.0))
    checks.append(
        CheckResult(
            "p_e_zero", "p_e(0) = 0", abs(pe0) < 1e-12, f"p_e(0)={pe0:.3g}"
        )
    )
    pth0 = float(law.p_th(0.0))
    checks.append(
        CheckResult(
            "p_th_zero", "p_th(0) = 0", abs(pth0) < 1e-12, f"p_th(0)={pth0:.3g}"
        )
    )

    _sampled_check(
        "p_e_growth",
        "p_e'(rho) >= a1 * rho^(gamma-1)",
        rho,
        b.a1 * np.power(rho, law.gamma - 1.0),
        law.p_e.deriv(rho),
        checks,
    )
    _sampled_check(
        "p_e_upper",
        "p_e(rho) <= a2 * rho^gamma",
        rho,
        law.p_e(rho),
        b.a2 * np.power(rho, law.gamma),
        checks,
    )
    _sampled_check(
        "p_th_monotone",
        "p_th'(rho) >= 0",
        rho,
        np.zeros_like(rho),
        law.p_th.deriv(rho),
        checks,
    )
    _sampled_check(
        "p_th_growth",
        "p_th(rho) <= a3 * (1 + rho^(gamma/3))",
        rho,
        law.p_th(rho),
        b.a3 * (1.0 + np.power(rho, law.gamma / 3.0)),
        checks,
    )
    shape = 1.0 + np.power(theta, law.alpha)
    _sampled_check(
        "kappa_lower",
        "kappa_lo * (1 + theta^alpha) <= kappa(theta)",
        theta,
        b.kappa_lo * shape,
        law.kappa(theta),
        checks,
    )
    _sampled_check(
        "kappa_upper",
        "kappa(theta) <= kappa_hi * (1 + theta^alpha)",
        theta,
        law.kappa(theta),
        b.kappa_hi * shape,
        checks,
    )
    muv = np.asarray(law.mu(theta), dtype=float)
    _sampled_check("mu_lower", "mu_lo <= mu(theta)", theta, np.full_like(theta, b.mu_lo), muv, checks)
    _sampled_check("mu_upper", "mu(theta) <= mu_hi", theta, muv, np.full_like(theta, b.mu_hi), checks)
    lamv = np.asarray(law.lam(theta), dtype=float)
    _sampled_check(
        "lambda_lower", "0 <= lambda(theta)", theta, np.zeros_like(theta), lamv, checks
    )
    _sampled_check(
        "lambda_upper",
        "lambda(theta) <= lambda_hi",
        theta,
        lamv,
        np.full_like(theta, b.lam_hi),
        checks,
    )
    cvv = np.asarray(law.c_v(theta), dtype=float)
    _sampled_check("cv_lower", "cv_lo <= c_v(theta)", theta, np.full_like(theta, b.cv_lo), cvv, checks)
    _sampled_check("cv_upper", "c_v(theta) <= cv_hi", theta, cvv, np.full_like(theta, b.cv_hi), checks)

    combo = 2.0 * muv + 3.0 * lamv
    if np.all(combo > 0.0):
        notes.append("2 mu + 3 lambda > 0 on the sampled range")
    else:
        i = int(np.argmin(combo))
        notes.append(
            f"2 mu + 3 lambda <= 0 at theta={theta[i]:.3g} (informational only)"
        )

    return HypothesisReport(checks=checks, notes=notes)
