"""Epstein-Hurwitz and multidimensional Epstein zeta functions.

Three independent evaluation routes are provided so that each can check the
others:

* brute-force shell summation (``hurwitz_direct``, ``epstein_direct``),
* the Bessel-function (Poisson-resummed) representation (``hurwitz_bessel``),
* the symmetrized recurrence in the dimension (``epstein_recurrence``).

Notation: ``Z_d(nu; a, c2) = sum_{n in Z^d} (sum_i a_i n_i^2 + c2)^-nu`` and
``E_p(nu; s) = sum_{n_i >= 1} (sum_i s_i^2 n_i^2)^-nu``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from .errors import BudgetExceededError, ConvergenceError, DomainError, PoleError
from .specialfn import (
    EULER_GAMMA,
    bessel_k_scaled_array,
    gamma,
    gamma_zeta_even,
    rgamma,
    riemann_zeta,
    zeta_tail,
)

SQRT_PI = math.sqrt(math.pi)
PSI_HALF = -EULER_GAMMA - 2.0 * math.log(2.0)


@dataclass(frozen=True)
class TruncationPolicy:
    rel_tol: float = 1e-12
    max_terms_per_axis: int = 10**6
    min_terms: int = 8

    def __post_init__(self):
        if not self.rel_tol > 0:
            raise DomainError("rel_tol must be positive")
        if self.max_terms_per_axis < self.min_terms:
            raise DomainError("max_terms_per_axis must be >= min_terms")


DEFAULT_POLICY = TruncationPolicy()


@dataclass(frozen=True)
class HurwitzSpec:
    """Parameters of Z_d^{c2}(nu; a_1..a_d); a_i = 1/L_i^2."""

    nu: float
    a: tuple
    c2: float

    def __post_init__(self):
        a = tuple(float(v) for v in np.atleast_1d(self.a))
        object.__setattr__(self, "a", a)
        if not 1 <= len(a) <= 3:
            raise DomainError("only 1 <= d <= 3 summed indices are supported")
        if any(not v > 0 for v in a):
            raise DomainError("all coefficients a_i must be positive")
        if not self.c2 >= 0:
            raise DomainError("c2 must be nonnegative")

    @property
    def d(self):
        return len(self.a)

    @classmethod
    def from_lengths(cls, nu, lengths, c2):
        return cls(nu, tuple(1.0 / float(L) ** 2 for L in lengths), c2)


@dataclass(frozen=True)
class EpsteinSpec:
    """Parameters of E_p(nu; sigma_1..sigma_p)."""

    nu: float
    sigmas: tuple

    def __post_init__(self):
        s = tuple(float(v) for v in np.atleast_1d(self.sigmas))
        object.__setattr__(self, "sigmas", s)
        if not 1 <= len(s) <= 3:
            raise DomainError("only 1 <= p <= 3 is supported")
        if any(not v > 0 for v in s):
            raise DomainError("all sigma_i must be positive")

    @property
    def p(self):
        return len(self.sigmas)


class LatticeSum(NamedTuple):
    value: float
    error: float
    shells: int


# -- shell enumeration ---------------------------------------------------------

def _shell_axes(k, positive):
    if positive:
        return np.arange(1, k), np.array([k]), np.arange(1, k + 1)
    return np.arange(-k + 1, k), np.array([-k, k]), np.arange(-k, k + 1)


def _shell_points(dim, k, positive):
    """Integer points with max-norm exactly k (in N^dim or Z^dim)."""
    if k == 0:
        return np.zeros((0 if positive else 1, dim), dtype=np.int64)
    before, fixed, after = _shell_axes(k, positive)
    blocks = []
    for j in range(dim):
        axes = [before] * j + [fixed] + [after] * (dim - j - 1)
        if any(len(ax) == 0 for ax in axes):
            continue
        grids = np.meshgrid(*axes, indexing="ij")
        blocks.append(np.stack([g.ravel() for g in grids], axis=1))
    return np.concatenate(blocks).astype(np.int64)


def _shell_quadratic(coeffs, k, positive):
    """sum_i coeffs_i n_i^2 over the max-norm-k shell, without building points."""
    dim = len(coeffs)
    if k == 0:
        return np.zeros(0 if positive else 1)
    before, fixed, after = _shell_axes(k, positive)
    out = []
    for j in range(dim):
        axes = [before] * j + [fixed] + [after] * (dim - j - 1)
        if any(len(ax) == 0 for ax in axes):
            continue
        q = np.zeros([1] * dim)
        for i, ax in enumerate(axes):
            shape = [1] * dim
            shape[i] = len(ax)
            q = q + coeffs[i] * (ax.astype(float) ** 2).reshape(shape)
        out.append(q.ravel())
    return np.concatenate(out)


def _power_tail(shells, k, q, order):
    """Tail sum_{j > k} s_j from s_j ~ j^-q (c_0 + c_1/j + ... ) fitted to `order` shells.

    The fitted shells are spread over [k/2, k] so the polynomial fit in 1/j
    stays well conditioned.
    """
    ks = sorted({int(round(k * (1.0 - 0.5 * i / (order - 1)))) for i in range(order)})
    if len(ks) < order:
        return None
    rows = np.array([[float(j) ** -m for m in range(order)] for j in ks])
    rhs = np.array([shells[j] * float(j) ** q for j in ks])
    try:
        coef = np.linalg.solve(rows, rhs)
    except np.linalg.LinAlgError:
        return None
    return sum(c * zeta_tail(q + m, k + 1) for m, c in enumerate(coef))


_TAIL_ORDER = 6
_ROUNDOFF = 8.0 * np.finfo(float).eps


def _power_law_sum(coeffs, shift, nu, positive, policy):
    """sum over Z^d (or N^d) of (Q(n) + shift)^-nu with a fitted power-law tail.

    The error estimate is the spread between tails fitted with one more and
    one fewer term, which tracks the model error rather than just the change
    from shell to shell, floored at a few ulps of the total.
    """
    dim = len(coeffs)
    q = 2.0 * nu - dim + 1.0
    k_asym = max(policy.min_terms, 2 * _TAIL_ORDER,
                 int(math.ceil(4.0 * math.sqrt(shift / min(coeffs)))))
    shells = {}
    partials = []
    k = 0 if not positive else 1
    while True:
        if k > policy.max_terms_per_axis:
            raise BudgetExceededError(
                f"lattice sum needs more than {policy.max_terms_per_axis} shells "
                f"for rel_tol={policy.rel_tol}")
        quad = _shell_quadratic(coeffs, k, positive) + shift
        s_k = float(np.sum(quad ** -nu)) if quad.size else 0.0
        shells[k] = s_k
        partials.append(s_k)
        if k >= k_asym:
            total = math.fsum(partials)
            tail = _power_tail(shells, k, q, _TAIL_ORDER)
            lower = _power_tail(shells, k, q, _TAIL_ORDER - 1)
            if tail is not None and lower is not None:
                err = max(abs(tail - lower), _ROUNDOFF * abs(total + tail))
                if err <= policy.rel_tol * abs(total + tail):
                    return LatticeSum(total + tail, err, k)
        k += 1


def hurwitz_direct(spec, policy=DEFAULT_POLICY, *, full_output=False):
    """Z_d^{c2}(nu; a) by shell summation over Z^d; needs nu > d/2 and c2 > 0."""
    if not spec.nu > spec.d / 2:
        raise ConvergenceError(f"direct sum diverges for nu={spec.nu} <= d/2={spec.d / 2}")
    if not spec.c2 > 0:
        raise DomainError("hurwitz_direct needs c2 > 0 (the n = 0 term is singular)")
    res = _power_law_sum(spec.a, spec.c2, spec.nu, False, policy)
    return res if full_output else res.value


def epstein_direct(spec, policy=DEFAULT_POLICY, *, full_output=False):
    """E_p(nu; sigma) by shell summation over N^p; needs nu > p/2."""
    if not spec.nu > spec.p / 2:
        raise ConvergenceError(f"direct sum diverges for nu={spec.nu} <= p/2={spec.p / 2}")
    coeffs = tuple(s * s for s in spec.sigmas)
    res = _power_law_sum(coeffs, 0.0, spec.nu, True, policy)
    return res if full_output else res.value


# -- Bessel-type sums ----------------------------------------------------------

def _exp_decay_sum(term_fn, dim, policy, what):
    """Sum term_fn(points) over N^dim shells until a shell is negligible."""
    partials = []
    k = 1
    quiet = 0
    while True:
        if k > policy.max_terms_per_axis:
            raise BudgetExceededError(f"{what}: shell budget exhausted")
        s_k = float(np.sum(term_fn(_shell_points(dim, k, True))))
        partials.append(s_k)
        total = math.fsum(partials)
        if abs(s_k) <= 0.01 * policy.rel_tol * abs(total) or s_k == 0.0:
            quiet += 1
            if quiet >= 2 and k >= 2:
                return total
        else:
            quiet = 0
        k += 1


def bessel_lattice_sum(order, c, lengths, policy=DEFAULT_POLICY):
    """sum_{n in N^m} (R/c)^order K_order(c R), R = sqrt(sum_i L_i^2 n_i^2)."""
    lengths = np.asarray(lengths, dtype=float)
    order = float(order)

    def terms(pts):
        R = np.sqrt(((pts * lengths) ** 2).sum(axis=1))
        x = c * R
        with np.errstate(under="ignore"):
            return (R / c) ** order * bessel_k_scaled_array(order, x) * np.exp(-x)

    return _exp_decay_sum(terms, len(lengths), policy, "Bessel lattice sum")


def hurwitz_bessel(spec, policy=DEFAULT_POLICY):
    """Z_d^{c2}(nu; a) from its Bessel-function representation.

    Written in the form prefactor * [analytic term + subset Bessel sums] with
    the subset sums running over every nonempty S of {1..d} with weight 2^|S|.
    The Bessel argument is c * R with c = 2 pi sqrt(c2).
    """
    d, nu = spec.d, float(spec.nu)
    if not spec.c2 > 0:
        raise DomainError("hurwitz_bessel needs c2 > 0")
    mu = nu - d / 2.0
    g_mu = gamma(mu)
    c = 2.0 * math.pi * math.sqrt(spec.c2)
    lengths = [1.0 / math.sqrt(a) for a in spec.a]
    pref = (2.0 ** (mu + 1.0) * math.pi ** (2.0 * nu - d / 2.0)
            / math.sqrt(math.prod(spec.a)) * rgamma(nu))
    bracket = 2.0 ** (mu - 1.0) * c ** (-2.0 * mu) * g_mu
    for size in range(1, d + 1):
        for subset in itertools.combinations(range(d), size):
            sub = [lengths[i] for i in subset]
            bracket += 2.0 ** size * bessel_lattice_sum(mu, c, sub, policy)
    return pref * bracket


def w_sum(nu, lengths, policy=DEFAULT_POLICY):
    """W_p(nu; L) = sum_i (1/L_i) sum_{n in N^p} (pi n_i/(L_i M_i))^nu K_nu(2 pi n_i M_i/L_i).

    M_i^2 = sum_{j != i} L_j^2 n_j^2.  Shells are ordered by max n, so the
    Bessel arguments increase from shell to shell.
    """
    L = np.asarray(lengths, dtype=float)
    p = len(L)
    if p < 2:
        raise DomainError("W_p needs p >= 2")
    nu = float(nu)

    def terms(pts):
        sq = (pts * L) ** 2
        full = sq.sum(axis=1)
        out = np.zeros(len(pts))
        for i in range(p):
            M = np.sqrt(full - sq[:, i])
            ni = pts[:, i]
            x = 2.0 * math.pi * ni * M / L[i]
            base = math.pi * ni / (L[i] * M)
            with np.errstate(under="ignore"):
                out += base ** nu * bessel_k_scaled_array(nu, x) * np.exp(-x) / L[i]
        return out

    return _exp_decay_sum(terms, p, policy, "W_p sum")


# -- recurrence in the dimension -----------------------------------------------

def _epstein_rec(nu, sig, policy):
    p = len(sig)
    if p == 1:
        return sig[0] ** (-2.0 * nu) * riemann_zeta(2.0 * nu)
    g_nu = gamma(nu)
    g_half = gamma(nu - 0.5)
    t1 = t2 = 0.0
    for i in range(p):
        rest = sig[:i] + sig[i + 1:]
        t1 += _epstein_rec(nu, rest, policy)
        t2 += _epstein_rec(nu - 0.5, rest, policy) / sig[i]
    return (-t1 / (2 * p)
            + SQRT_PI * g_half / (2 * p * g_nu) * t2
            + 2.0 * SQRT_PI / (p * g_nu) * w_sum(nu - 0.5, sig, policy))


def epstein_recurrence(spec, policy=DEFAULT_POLICY):
    """E_p(nu; sigma) through the recurrence p -> p-1 plus a W_p Bessel sum.

    E_1(nu; L) = L^(-2 nu) zeta(2 nu) closes the recursion.  The middle term
    carries sqrt(pi) Gamma(nu - 1/2) / (2 p Gamma(nu)).
    """
    return _epstein_rec(float(spec.nu), tuple(spec.sigmas), policy)


def gamma_e2(nu, L1, L2, policy=DEFAULT_POLICY):
    """Gamma(nu) * E_2(nu; L1, L2), analytic at the Gamma poles nu = -1, -2, ...

    Each Gamma * zeta pairing goes through ``gamma_zeta_even`` so the
    pole/trivial-zero products are finite by construction.
    """
    nu = float(nu)
    L = (float(L1), float(L2))
    t1 = -0.25 * sum(Lj ** (-2.0 * nu) for Lj in L) * gamma_zeta_even(nu)
    cross = L[1] ** (1.0 - 2.0 * nu) / L[0] + L[0] ** (1.0 - 2.0 * nu) / L[1]
    t2 = 0.25 * SQRT_PI * cross * gamma_zeta_even(nu - 0.5)
    return t1 + t2 + SQRT_PI * w_sum(nu - 0.5, L, policy)


def gamma_e3(nu, L1, L2, L3, policy=DEFAULT_POLICY):
    """Gamma(nu) * E_3(nu; L1, L2, L3) assembled from regularized E_2 pieces."""
    nu = float(nu)
    L = (float(L1), float(L2), float(L3))
    t1 = t2 = 0.0
    for i in range(3):
        rest = L[:i] + L[i + 1:]
        t1 += gamma_e2(nu, *rest, policy=policy)
        t2 += gamma_e2(nu - 0.5, *rest, policy=policy) / L[i]
    return -t1 / 6.0 + SQRT_PI / 6.0 * t2 + 2.0 * SQRT_PI / 3.0 * w_sum(nu - 0.5, L, policy)


# -- the D -> 3 point of E_2((D-2)/2) and E_3((D-2)/2) ----------------------------

class Laurent(NamedTuple):
    """f(D) = residue/(D - 3) + finite + O(D - 3)."""

    residue: float
    finite: float


def _check_lengths(*L):
    if any(not float(v) > 0 for v in L):
        raise DomainError("lengths must be positive")


def e2_laurent_at_3(L1, L2, policy=DEFAULT_POLICY):
    """Laurent data of E_2((D-2)/2; L1, L2) at D = 3.

    zeta(D-2) = 1/(D-3) + gamma_E + ..., Gamma((D-3)/2) = 2/(D-3) + Gamma'(1) + ...
    and zeta(0) = -1/2 are substituted symbolically; the simple poles of the
    first two terms carry the same sign and leave residue -(1/L1 + 1/L2)/2.
    """
    _check_lengths(L1, L2)
    L = (float(L1), float(L2))
    inv = [1.0 / v for v in L]
    residue = -0.5 * sum(inv)
    log4pi = math.log(4.0 * math.pi)
    finite = 0.25 * sum(inv[i] * (math.log(L[i]) - EULER_GAMMA) for i in range(2))
    finite += 0.25 * (inv[0] * (math.log(L[1]) - log4pi) + inv[1] * (math.log(L[0]) - log4pi))
    finite += w_sum(0.0, L, policy)
    return Laurent(residue, finite)


def e2_renormalized_at_3(L1, L2, policy=DEFAULT_POLICY):
    """Finite part of E_2((D-2)/2; L1, L2) at D = 3 (pole removed analytically)."""
    return e2_laurent_at_3(L1, L2, policy).finite


def _gamma_e2_near_zero(L, policy):
    """Finite part of Gamma(delta) E_2(delta; L) as delta -> 0 (pole 1/(4 delta))."""
    g0 = 0.5 * EULER_GAMMA - math.log(2.0 * math.pi)
    finite = -0.25 * sum(g0 + math.log(v) for v in L)
    finite += math.pi / 24.0 * (L[1] / L[0] + L[0] / L[1])
    finite += SQRT_PI * w_sum(-0.5, L, policy)
    return finite


def e3_laurent_at_3(L1, L2, L3, policy=DEFAULT_POLICY):
    """Laurent data of E_3((D-2)/2; L1, L2, L3) at D = 3."""
    _check_lengths(L1, L2, L3)
    L = (float(L1), float(L2), float(L3))
    residue = 0.25 * sum(1.0 / v for v in L)
    finite = 0.0
    for i in range(3):
        rest = L[:i] + L[i + 1:]
        finite -= e2_laurent_at_3(*rest, policy=policy).finite / 6.0
        finite += (_gamma_e2_near_zero(rest, policy) - PSI_HALF / 4.0) / (6.0 * L[i])
    finite += 2.0 / 3.0 * w_sum(0.0, L, policy)
    return Laurent(residue, finite)


def e3_renormalized_at_3(L1, L2, L3, policy=DEFAULT_POLICY):
    """Finite part of E_3((D-2)/2; L1, L2, L3) at D = 3."""
    return e3_laurent_at_3(L1, L2, L3, policy).finite


# -- full-lattice Epstein zeta (used by the bubble's small-momentum branch) -------

@lru_cache(maxsize=4096)
def full_lattice_epstein(s, sigmas, policy=DEFAULT_POLICY):
    """sum_{n in Z^d, n != 0} (sum_i sigma_i^2 n_i^2)^-s, s > d/2.

    Split by support: sum over nonempty S of 2^|S| E_|S|(s; sigma_S).  Near
    the convergence edge the recurrence is used; far from it the direct sum
    converges quickly and avoids the cancellation the recurrence suffers
    at large s.
    """
    total = 0.0
    for size in range(1, len(sigmas) + 1):
        for subset in itertools.combinations(range(len(sigmas)), size):
            sub = tuple(sigmas[i] for i in subset)
            spec = EpsteinSpec(s, sub)
            value = None
            if size == 1 or s < size / 2.0 + 2.5:
                try:
                    value = epstein_recurrence(spec, policy)
                except PoleError:
                    # an intermediate term sits on a pole; the sum itself is regular
                    value = None
            if value is None:
                value = epstein_direct(spec, policy)
            total += 2.0 ** size * value
    return total
