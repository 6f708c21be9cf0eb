"""Lowest-Landau-level bubble and coupling in an external magnetic field.

With only the l = 0 level kept the bubble is the zero-field one with D -> D-2
(and |p| a (D-2)-dimensional momentum), except that the bulk term carries
A_1(D) instead of A(D-2).  The two differ by A(D-2)/A_1(D) = (2 pi)^(8-D).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .bubble import (
    _full_sum_parts,
    _geometry,
    _momentum,
    a_coeff,
    b_coeff,
)
from .epstein import DEFAULT_POLICY
from .errors import DomainError
from .quadrature import DEFAULT_LEVEL
from .specialfn import feynman_c, gamma

MAGNETIC_WINDOW = (4.0, 6.0)
DEFAULT_CROSSOVER = 1e-3


@dataclass(frozen=True)
class FieldSpec:
    """Cyclotron frequency omega = eH (1/length^2) and transverse momenta (p1, p2)."""

    omega: float
    p_transverse: tuple = (0.0, 0.0)

    def __post_init__(self):
        if not (float(self.omega) > 0 and math.isfinite(float(self.omega))):
            raise DomainError("omega must be positive and finite")
        pt = tuple(float(v) for v in self.p_transverse)
        if len(pt) != 2:
            raise DomainError("p_transverse must be a pair (p1, p2)")
        object.__setattr__(self, "omega", float(self.omega))
        object.__setattr__(self, "p_transverse", pt)


@dataclass(frozen=True)
class MagneticBubbleResult:
    """Value in units length^(6-D); small-p form a1_coeff |p|^(D-6) + c_coeff."""

    value: Optional[float]
    a1_coeff: float
    c_coeff: Optional[float]
    representation: str
    zero_mode_coeff: Optional[float] = None
    zero_mode_exponent: Optional[float] = None
    error_estimate: float = 0.0


def _check_magnetic(D):
    D = float(D)
    lo, hi = MAGNETIC_WINDOW
    if not lo < D < hi:
        raise DomainError(f"D={D} outside the valid window 4<D<6", window=MAGNETIC_WINDOW)
    return D


def a1_coeff(D):
    """A_1(D) = (2 pi)^(-D/2-1) 2^(1-D/2) c(D) Gamma(3 - D/2), 4 < D < 6."""
    D = _check_magnetic(D)
    return (2.0 * math.pi) ** (-D / 2.0 - 1.0) * 2.0 ** (1.0 - D / 2.0) * feynman_c(D) * gamma(3.0 - D / 2.0)


def c_coeff(D, geom, policy=DEFAULT_POLICY):
    """C_d(D, {L_i}) = B_d(D-2, {L_i})."""
    D = _check_magnetic(D)
    return b_coeff(D - 2.0, geom, policy)


def pi_magnetic(p, D, geom, policy=DEFAULT_POLICY, level=DEFAULT_LEVEL, field=None):
    """Full lowest-Landau-level bubble at dimension D (field enters only the coupling)."""
    D = _check_magnetic(D)
    geom = _geometry(geom)
    pm, _, _, z0, zero_exp, rest, err = _full_sum_parts(p, D - 2.0, geom, policy, level)
    a1 = a1_coeff(D)
    shift = (a1 - a_coeff(D - 2.0)) * pm ** (D - 6.0)
    value = z0 * pm ** zero_exp + rest + shift
    return MagneticBubbleResult(value, a1, None, "full-sum", zero_mode_coeff=z0,
                                zero_mode_exponent=zero_exp,
                                error_estimate=err + 1e-15 * (abs(value) + abs(shift)))


def pi_magnetic_decomposition(D, geom, p=None, policy=DEFAULT_POLICY):
    """A_1(D) |p|^(D-6) + C_d(D, {L_i})."""
    a1 = a1_coeff(D)
    c = c_coeff(D, geom, policy)
    value = None
    if p is not None:
        pm = _momentum(p)
        if not pm > 0:
            raise DomainError("|p| must be positive")
        value = a1 * pm ** (float(D) - 6.0) + c
    return MagneticBubbleResult(value, a1, c, "small-p-decomposition")


def lambda_magnetic(p1, p2, pmag, D, geom, lambda0, field, policy=DEFAULT_POLICY,
                    crossover=DEFAULT_CROSSOVER):
    """lambda / (1 + lambda omega exp(-(p1^2 + p2^2)/(2 omega)) Pi).

    Pi comes from the small-p form when |p| min(L_i) <= crossover and from the
    full sum otherwise.  lambda0 = inf gives the strong-coupling limit.
    """
    if not float(lambda0) > 0:
        raise DomainError("lambda0 must be positive")
    if not isinstance(field, FieldSpec):
        field = FieldSpec(field)
    geom = _geometry(geom)
    pm = _momentum(pmag)
    if pm * min(geom.lengths) <= crossover:
        pi = pi_magnetic_decomposition(D, geom, pm, policy).value
    else:
        pi = pi_magnetic(pm, D, geom, policy).value
    weight = field.omega * math.exp(-(float(p1) ** 2 + float(p2) ** 2) / (2.0 * field.omega))
    lam = float(lambda0)
    if math.isinf(lam):
        return 1.0 / (weight * pi)
    return lam / (1.0 + lam * weight * pi)
