"""Running coupling, Callan-Symanzik beta functions, fixed points and RG flow.

t = ln|p| is the running scale and dg/dt = beta(g).  Zero field:
beta = (D-4)(g - A(D) g^2) for 2 < D < 4.  Magnetic (lowest Landau level):
beta = (D-6)(g - A_1(D) g^2) for 4 < D < 6.  In both cases the nontrivial zero
g* = 1/A is approached as t -> -infinity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp

from .bubble import _geometry, _momentum, a_coeff, pi_compactified, small_p_decomposition
from .epstein import DEFAULT_POLICY
from .errors import DomainError, FlowBlowUpError
from .magnetic import DEFAULT_CROSSOVER, FieldSpec, a1_coeff, lambda_magnetic

ZERO_FIELD = "zero-field"
MAGNETIC = "magnetic"
REGIMES = (ZERO_FIELD, MAGNETIC)
WINDOWS = {ZERO_FIELD: (2.0, 4.0), MAGNETIC: (4.0, 6.0)}


@dataclass(frozen=True)
class FlowState:
    t: float
    g: float
    scale: float
    beta: float
    regime: str


@dataclass(frozen=True)
class FixedPointReport:
    """Nontrivial fixed point; ir_stable iff d(beta)/dg > 0 at g* for dg/dt = beta."""

    g_star: float
    stability_slope: float
    ir_stable: bool
    dimension_window: tuple
    regime: str
    D: float


def _regime(regime):
    if regime not in REGIMES:
        raise DomainError(f"regime must be one of {REGIMES}")
    return regime


def _check_D(D, regime):
    lo, hi = WINDOWS[regime]
    D = float(D)
    if not lo < D < hi:
        raise DomainError(f"D={D} outside the valid window {lo:g}<D<{hi:g}", window=(lo, hi))
    return D


def _amplitude(D, regime):
    return a_coeff(D) if regime == ZERO_FIELD else a1_coeff(D)


def _exponent(D, regime):
    """k in beta = k (g - A g^2): D - 4 or D - 6."""
    return D - (4.0 if regime == ZERO_FIELD else 6.0)


def _check_g(g):
    g = float(g)
    if not g >= 0:
        raise DomainError("the dimensionless coupling must be nonnegative")
    return g


def lambda_running(pmag, D, geom, lambda0, policy=DEFAULT_POLICY, crossover=DEFAULT_CROSSOVER):
    """lambda / (1 + lambda Pi(p)); Pi in small-p form up to |p| min(L_i) = crossover."""
    if not float(lambda0) > 0:
        raise DomainError("lambda0 must be positive")
    geom = _geometry(geom)
    pm = _momentum(pmag)
    if pm * min(geom.lengths) <= crossover:
        pi = small_p_decomposition(D, geom, pm, policy).value
    else:
        pi = pi_compactified(pm, D, geom, policy).value
    lam = float(lambda0)
    if math.isinf(lam):
        return 1.0 / pi
    return lam / (1.0 + lam * pi)


def beta_zero_field(g, D):
    D = _check_D(D, ZERO_FIELD)
    g = _check_g(g)
    return (D - 4.0) * (g - a_coeff(D) * g * g)


def beta_magnetic(g, D):
    D = _check_D(D, MAGNETIC)
    g = _check_g(g)
    return (D - 6.0) * (g - a1_coeff(D) * g * g)


def beta(g, D, regime=ZERO_FIELD):
    return beta_zero_field(g, D) if _regime(regime) == ZERO_FIELD else beta_magnetic(g, D)


def _fixed_point(D, regime):
    D = _check_D(D, regime)
    g_star = 1.0 / _amplitude(D, regime)
    # d/dg [k (g - A g^2)] at g = 1/A is -k
    slope = -_exponent(D, regime)
    return FixedPointReport(g_star, slope, slope > 0, WINDOWS[regime], regime, D)


def fixed_point_zero_field(D):
    """g* = 1/A(D), slope 4 - D."""
    return _fixed_point(D, ZERO_FIELD)


def fixed_point_magnetic(D):
    """g*(1) = 1/A_1(D), slope 6 - D; independent of omega."""
    return _fixed_point(D, MAGNETIC)


def flow_closed_form(g0, D, regime, t, t0=0.0):
    """Exact solution g(t) = 1/(A + (1/g0 - A) exp(-k (t - t0))) of dg/dt = k(g - A g^2)."""
    regime = _regime(regime)
    D = _check_D(D, regime)
    A = _amplitude(D, regime)
    k = _exponent(D, regime)
    t = np.asarray(t, dtype=float)
    return 1.0 / (A + (1.0 / float(g0) - A) * np.exp(-k * (t - t0)))


def integrate_flow(g0, D, regime=ZERO_FIELD, t_span=(0.0, -20.0), steps=200,
                   rtol=1e-12, atol=1e-14, bound=None):
    """Integrate dg/dt = beta(g) with adaptive RK45, reporting `steps` equally spaced states.

    Raises FlowBlowUpError when g leaves [0, bound]; the default bound is
    1e6 g*.  Going toward the ultraviolet (t increasing) from g0 > g* the
    solution blows up in finite t.
    """
    regime = _regime(regime)
    D = _check_D(D, regime)
    g0 = float(g0)
    if not g0 > 0:
        raise DomainError("g0 must be positive")
    if int(steps) < 2:
        raise DomainError("steps must be at least 2")
    A = _amplitude(D, regime)
    k = _exponent(D, regime)
    if bound is None:
        bound = 1e6 / A
    t0, t1 = (float(v) for v in t_span)

    def rhs(_t, y):
        return [k * (y[0] - A * y[0] * y[0])]

    def escape(_t, y):
        return (bound - y[0]) * y[0]

    escape.terminal = True
    t_eval = np.linspace(t0, t1, int(steps))
    sol = solve_ivp(rhs, (t0, t1), [g0], method="RK45", t_eval=t_eval,
                    rtol=rtol, atol=atol, events=escape)
    if sol.status == 1:
        te = float(sol.t_events[0][0])
        ge = float(sol.y_events[0][0][0])
        raise FlowBlowUpError(f"coupling left [0, {bound:g}] at t={te:.6g}", t=te, g=ge)
    if not sol.success:
        raise FlowBlowUpError(f"integration failed: {sol.message}")
    out = []
    for t, g in zip(sol.t, sol.y[0]):
        b = k * (g - A * g * g)
        out.append(FlowState(float(t), float(g), math.exp(t), float(b), regime))
    return out


def dimensionless_coupling(pmag, D, geom, lambda0, regime=ZERO_FIELD, omega=1.0,
                           policy=DEFAULT_POLICY, crossover=DEFAULT_CROSSOVER):
    """g = lambda(p)|p|^(D-4), or g(1) = omega lambda(p1=p2=0, p)|p|^(D-6) in a field."""
    pm = _momentum(pmag)
    if _regime(regime) == ZERO_FIELD:
        return lambda_running(pm, D, geom, lambda0, policy, crossover) * pm ** (float(D) - 4.0)
    lam = lambda_magnetic(0.0, 0.0, pm, D, geom, lambda0, FieldSpec(omega), policy, crossover)
    return float(omega) * lam * pm ** (float(D) - 6.0)


def beta_numeric_check(D, geom, p_grid=None, regime=ZERO_FIELD, lambda0=1.0, omega=1.0,
                       policy=DEFAULT_POLICY):
    """Max relative deviation of the finite-difference |p| dg/d|p| from beta(g).

    Derivatives are second-order central differences in ln|p| over the grid
    (interior points only).
    """
    regime = _regime(regime)
    D = _check_D(D, regime)
    if p_grid is None:
        p_grid = np.logspace(-5, -3, 201)
    p = np.array([_momentum(v) for v in p_grid], dtype=float)
    if p.size < 3 or np.any(np.diff(p) <= 0):
        raise DomainError("p_grid must be strictly increasing with at least 3 points")
    g = np.array([dimensionless_coupling(v, D, geom, lambda0, regime, omega, policy) for v in p])
    fd = np.gradient(g, np.log(p), edge_order=2)[1:-1]
    exact = np.array([beta(v, D, regime) for v in g[1:-1]])
    return float(np.max(np.abs(fd - exact) / np.abs(exact)))
