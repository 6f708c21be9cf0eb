"""One-loop bubble with d periodically compactified dimensions (massless case).

The Feynman-parameter integrand of the bubble is, up to a constant, the
Epstein-Hurwitz function Z_d(nu'; 1/L_i^2, C(x)^2) with

    nu' = 2 - (D - d)/2,    C(x) = |p| sqrt(x(1-x)) / (4 pi^2).

Its n = 0 term (the zero mode) is integrated over x in closed form; the
remaining lattice sum is smooth in x and goes through tanh-sinh quadrature.
Near the endpoints, where C -> 0, the remainder is expanded in powers of C^2
with full-lattice Epstein coefficients; elsewhere the Bessel-function form is
used directly.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .epstein import (
    DEFAULT_POLICY,
    bessel_lattice_sum,
    full_lattice_epstein,
    gamma_e2,
    gamma_e3,
)
from .errors import DomainError, PoleError
from .quadrature import DEFAULT_LEVEL, integrate_unit_estimate
from .specialfn import feynman_b, gamma, rgamma, riemann_zeta

SERIES_RADIUS = 0.25  # series branch when C^2 <= SERIES_RADIUS * min(a_i)
_SERIES_MAX_TERMS = 80


@dataclass(frozen=True)
class Geometry:
    lengths: tuple

    def __post_init__(self):
        L = tuple(float(v) for v in np.atleast_1d(self.lengths))
        object.__setattr__(self, "lengths", L)
        if not 1 <= len(L) <= 3:
            raise DomainError("geometry needs 1 to 3 compactified lengths")
        if any(not (v > 0 and math.isfinite(v)) for v in L):
            raise DomainError("compactification lengths must be positive and finite")

    @property
    def d(self):
        return len(self.lengths)

    @property
    def name(self):
        return ("film", "wire", "grain")[self.d - 1]

    @classmethod
    def film(cls, L):
        return cls((L,))

    @classmethod
    def wire(cls, L1, L2):
        return cls((L1, L2))

    @classmethod
    def grain(cls, L1, L2, L3):
        return cls((L1, L2, L3))


@dataclass(frozen=True)
class Momentum:
    magnitude: float

    def __post_init__(self):
        m = float(self.magnitude)
        object.__setattr__(self, "magnitude", m)
        if not (m >= 0 and math.isfinite(m)):
            raise DomainError("momentum magnitude must be finite and nonnegative")


@dataclass(frozen=True)
class BubbleResult:
    """Bubble value in units length^(4-D).

    ``small-p-decomposition``: value = a_coeff |p|^(D-4) + b_coeff (value is
    None when no momentum was given).  ``full-sum``: value is the Feynman
    integral of the lattice sum; its |p| -> 0 behaviour is
    zero_mode_coeff |p|^zero_mode_exponent + b_coeff + O(p^2), which is
    reported alongside.
    """

    value: Optional[float]
    representation: str
    a_coeff: Optional[float] = None
    b_coeff: Optional[float] = None
    zero_mode_coeff: Optional[float] = None
    zero_mode_exponent: Optional[float] = None
    error_estimate: float = 0.0
    momentum: Optional[float] = None
    D: Optional[float] = None
    lengths: tuple = field(default_factory=tuple)


def _momentum(p):
    return p.magnitude if isinstance(p, Momentum) else Momentum(p).magnitude


def _geometry(geom):
    return geom if isinstance(geom, Geometry) else Geometry(tuple(geom))


def _check_window(D, lo=2.0, hi=4.0, what="D"):
    D = float(D)
    if not lo < D < hi:
        raise DomainError(f"{what}={D} outside the valid window {lo:g}<{what}<{hi:g}",
                          window=(lo, hi))
    return D


def _check_lengths(*L):
    for v in L:
        if not (float(v) > 0 and math.isfinite(float(v))):
            raise DomainError("compactification lengths must be positive and finite")


# -- small-momentum coefficients -------------------------------------------------

def a_coeff(D):
    """A(D) = (2 pi)^(4 - 3D/2) 2^(-D/2) b(D) Gamma(2 - D/2), 2 < D < 4."""
    D = _check_window(D)
    return (2.0 * math.pi) ** (4.0 - 1.5 * D) * 2.0 ** (-D / 2.0) * feynman_b(D) * gamma(2.0 - D / 2.0)


def _film_term(D, L):
    return (0.125 * math.pi ** ((D - 9.0) / 2.0) * L ** (4.0 - D)
            * gamma((5.0 - D) / 2.0) * riemann_zeta(5.0 - D))


def b_film(D, L):
    """B_1(D, L) = 2^-3 pi^((D-9)/2) L^(4-D) Gamma((5-D)/2) zeta(5-D); L/(48 pi) at D = 3."""
    D = _check_window(D)
    _check_lengths(L)
    return _film_term(D, float(L))


def _pair_term(D, L1, L2, policy):
    # Gamma(D/2-2) E_2(D/2-2) is regular at D = 3 (a Gamma pole meets a trivial zeta zero)
    return 0.25 * math.pi ** (-D / 2.0) * gamma_e2(D / 2.0 - 2.0, L1, L2, policy)


def b_wire(D, L1, L2, policy=DEFAULT_POLICY):
    """B_2(D; L1, L2) = film(L1) + film(L2) + (1/4) pi^(-D/2) Gamma(D/2-2) E_2(D/2-2; L1, L2)."""
    D = _check_window(D)
    _check_lengths(L1, L2)
    L1, L2 = float(L1), float(L2)
    return _film_term(D, L1) + _film_term(D, L2) + _pair_term(D, L1, L2, policy)


def b_grain(D, L1, L2, L3, policy=DEFAULT_POLICY):
    """B_3(D; L1, L2, L3): three film terms, three pair terms and (1/2) pi^(-D/2) Gamma E_3."""
    D = _check_window(D)
    _check_lengths(L1, L2, L3)
    L = (float(L1), float(L2), float(L3))
    total = sum(_film_term(D, v) for v in L)
    for i, j in itertools.combinations(range(3), 2):
        total += _pair_term(D, L[i], L[j], policy)
    total += 0.5 * math.pi ** (-D / 2.0) * gamma_e3(D / 2.0 - 2.0, *L, policy=policy)
    return total


def b_coeff(D, geom, policy=DEFAULT_POLICY):
    geom = _geometry(geom)
    fn = (b_film, b_wire, b_grain)[geom.d - 1]
    if geom.d == 1:
        return fn(D, *geom.lengths)
    return fn(D, *geom.lengths, policy=policy)


def small_p_decomposition(D, geom, p=None, policy=DEFAULT_POLICY):
    """A(D) |p|^(D-4) + B_d(D, {L_i}); A is the same for every geometry."""
    geom = _geometry(geom)
    a = a_coeff(D)
    b = b_coeff(D, geom, policy)
    value = None
    pm = None
    if p is not None:
        pm = _momentum(p)
        if not pm > 0:
            raise DomainError("|p| must be positive")
        value = a * pm ** (D - 4.0) + b
    return BubbleResult(value, "small-p-decomposition", a_coeff=a, b_coeff=b,
                        momentum=pm, D=float(D), lengths=geom.lengths)


# -- full lattice-sum bubble --------------------------------------------------------

def _binom_neg(nu, k):
    """binom(-nu, k)."""
    out = 1.0
    for j in range(k):
        out *= (-nu - j) / (j + 1)
    return out


def _series_coefficients(nu_p, sigmas, c2_max, policy):
    """Coefficients of sum_k binom(-nu', k) EZ(nu'+k) C^(2k), truncated for C^2 <= c2_max."""
    coefs = []
    for k in range(_SERIES_MAX_TERMS):
        ck = _binom_neg(nu_p, k) * full_lattice_epstein(nu_p + k, sigmas, policy)
        coefs.append(ck)
        if k >= 2 and abs(ck) * c2_max ** k <= 1e-17 * abs(coefs[0]):
            break
    return np.array(coefs)


def zero_mode_coeff(D, geom):
    """Z_0 in the n = 0 contribution Z_0 |p|^(D-d-4), continued dimensionally in D.

    Raises PoleError at D = d + 2, d, ... where the x integral of
    [x(1-x)]^(-nu') has a pole.
    """
    geom = _geometry(geom)
    D = float(D)
    d = geom.d
    mu = 2.0 - D / 2.0
    nu_p = mu + d / 2.0
    kappa = _kappa(D, geom)
    try:
        xint = gamma(1.0 - nu_p) ** 2 * rgamma(2.0 - 2.0 * nu_p)
    except PoleError as exc:
        raise PoleError("zero_mode_coeff", D,
                        f"the n=0 term of the d={d} full sum diverges at D={D:g} "
                        f"(poles at D = d+2, d, ...; use the small-p decomposition "
                        f"or regular_part)") from exc
    return (2.0 * math.pi) ** (-D / 2.0) * kappa * (4.0 * math.pi ** 2) ** (2.0 * nu_p) * xint


def _kappa(D, geom):
    d = geom.d
    mu = 2.0 - D / 2.0
    nu_p = mu + d / 2.0
    sqrt_a = 1.0 / math.prod(geom.lengths)
    return sqrt_a * gamma(nu_p) / (2.0 ** (mu + 2.0) * math.pi ** (2.0 * mu + d / 2.0))


def _full_sum_parts(p, D, geom, policy, level, allow_pole=False):
    """(|p|, D, geom, Z_0, zero-mode exponent, remainder integral, its error)."""
    pm = _momentum(p)
    if not pm > 0:
        raise DomainError("|p| must be positive")
    D = _check_window(D)
    geom = _geometry(geom)
    d = geom.d
    L = geom.lengths
    mu = 2.0 - D / 2.0
    nu_p = mu + d / 2.0
    sigmas = tuple(1.0 / v for v in L)
    a_min = min(s * s for s in sigmas)
    kappa = _kappa(D, geom)
    try:
        z0 = zero_mode_coeff(D, geom)
    except PoleError:
        if not allow_pole:
            raise
        z0 = math.nan
    c_scale = pm / (4.0 * math.pi ** 2)
    c2_switch = SERIES_RADIUS * a_min
    coefs = _series_coefficients(nu_p, sigmas, min(c2_switch, 0.25 * c_scale ** 2), policy)
    g_mu = gamma(mu)
    subsets = [tuple(L[i] for i in s) for size in range(1, d + 1)
               for s in itertools.combinations(range(d), size)]

    def remainder(x, xc):
        C2 = c_scale ** 2 * x * xc
        out = np.empty_like(C2)
        small = C2 <= c2_switch
        out[small] = kappa * np.polynomial.polynomial.polyval(C2[small], coefs)
        for idx in np.flatnonzero(~small):
            cb = 2.0 * math.pi * math.sqrt(C2[idx])
            bracket = 2.0 ** (-D / 2.0) * cb ** (-2.0 * mu) * g_mu
            for sub in subsets:
                bracket += 2.0 ** (len(sub) - 1) * bessel_lattice_sum(mu, cb, sub, policy)
            out[idx] = bracket - kappa * C2[idx] ** (-nu_p)
        return out

    rest, err = integrate_unit_estimate(remainder, level)
    pref = (2.0 * math.pi) ** (-D / 2.0)
    return pm, D, geom, z0, D - d - 4.0, pref * rest, pref * err


def pi_compactified(p, D, geom, policy=DEFAULT_POLICY, level=DEFAULT_LEVEL):
    """Full bubble Pi(p, D, {L_i}) = (2 pi)^(-D/2) int_0^1 dx [bulk + Bessel subset sums].

    The bracket is evaluated as kappa * Z_d(nu'; 1/L_i^2, C^2); its n = 0
    term is integrated analytically and the rest by tanh-sinh quadrature.
    """
    pm, D, geom, z0, zero_exp, rest, err = _full_sum_parts(p, D, geom, policy, level)
    value = z0 * pm ** zero_exp + rest
    return BubbleResult(value, "full-sum", zero_mode_coeff=z0, zero_mode_exponent=zero_exp,
                        error_estimate=err + 1e-15 * abs(value),
                        momentum=pm, D=D, lengths=geom.lengths)


def regular_part(p, D, geom, policy=DEFAULT_POLICY, level=DEFAULT_LEVEL):
    """pi_compactified without its zero-mode power; tends to B_d(D, {L_i}) as |p| -> 0.

    Computed directly from the remainder integral, so it stays accurate where
    the zero-mode power dominates the full value.  Defined also at the
    zero-mode poles D = d + 2, d, ...
    """
    return _full_sum_parts(p, D, geom, policy, level, allow_pole=True)[5]
