"""Truncated Euler products for the Hasse-Weil zeta function and L(E, s) of an elliptic curve.

Bad primes (p | discriminant, and p = 2) are skipped.  Products are accumulated
as compensated sums of logarithms in ascending prime order, so repeated runs
are bit-identical.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Mapping

from .errors import ConvergenceDomain, DomainError
from .exact_arith import IntPolynomial
from .finite_field import CurveSpec, count_points_naive, primes_up_to, trace_of_frobenius
from .local_zeta import LocalZetaFunction, local_zeta_curve

MAX_BOUND = 10**6


@dataclass(frozen=True)
class EulerProductResult:
    s: complex
    bound: int
    primes_used: tuple[int, ...]
    bad_primes: tuple[int, ...]
    value: complex
    tail_estimate: float

    def __post_init__(self):
        if set(self.primes_used) & set(self.bad_primes):
            raise ValueError("a prime cannot be both good and bad")
        if any(p > self.bound for p in self.primes_used + self.bad_primes):
            raise ValueError("listed prime exceeds the bound")


def good_primes(curve: CurveSpec, bound: int) -> tuple[list[int], list[int]]:
    """Split the primes <= ``bound`` into good and bad reduction for ``curve``."""
    if bound < 2:
        raise DomainError("bound must be >= 2")
    good, bad = [], []
    for p in primes_up_to(bound):
        (good if curve.has_good_reduction(p) else bad).append(p)
    return good, bad


def _check_bound(bound: int) -> None:
    if not 2 <= bound <= MAX_BOUND:
        raise DomainError(f"bound must lie in [2, {MAX_BOUND}]")


def _exp_of_sum(logs: list[complex]) -> complex:
    return cmath.exp(complex(math.fsum(z.real for z in logs), math.fsum(z.imag for z in logs)))


def _tail(value: complex, log_tail: float) -> float:
    return abs(value) * math.expm1(log_tail) if math.isfinite(log_tail) else math.inf


def zeta_tail_log_bound(bound: int, sigma: float) -> float:
    """Upper bound for sum_{p > bound} |log Z_p(p^{-s})| when Re s = sigma > 2.

    Uses |N_m| <= (sqrt p + 1)^{2m}, -log(1 - x) <= x / (1 - x) and
    sum_{n > B} n^{1 - sigma} <= B^{2 - sigma} / (sigma - 2).
    """
    x_b = (math.sqrt(bound) + 1) ** 2 * bound ** -sigma
    if x_b >= 1:
        return math.inf
    c = (1 + bound ** -0.5) ** 2
    return c * bound ** (2 - sigma) / ((sigma - 2) * (1 - x_b))


def l_tail_log_bound(bound: int, sigma: float) -> float:
    """Upper bound for sum_{p > bound} |log L_p(s)| when sigma > 3/2, from |a_p| <= 2 sqrt p."""
    y_b = bound ** (0.5 - sigma)
    if y_b >= 1:
        return math.inf
    return 2 * bound ** (1.5 - sigma) / ((sigma - 1.5) * (1 - y_b))


def hasse_weil_truncated(curve: CurveSpec, s: complex, bound: int) -> EulerProductResult:
    """prod_{good p <= bound} Z_p(p^{-s}) for Re s > 2."""
    s = complex(s)
    if s.real <= 2:
        raise ConvergenceDomain(f"Re s = {s.real:g} is outside the region Re s > 2")
    _check_bound(bound)
    good, bad = good_primes(curve, bound)
    logs = []
    for p in good:
        u = cmath.exp(-s * math.log(p))
        a_p = trace_of_frobenius(curve, p)
        logs.append(cmath.log(1 - a_p * u + p * u * u) - cmath.log(1 - u) - cmath.log(1 - p * u))
    value = _exp_of_sum(logs)
    return EulerProductResult(s, bound, tuple(good), tuple(bad), value,
                              _tail(value, zeta_tail_log_bound(bound, s.real)))


def l_function_truncated(curve: CurveSpec, s: complex, bound: int) -> EulerProductResult:
    """prod_{good p <= bound} (1 - a_p p^{-s} + p^{1-2s})^{-1} for Re s > 3/2."""
    s = complex(s)
    if s.real <= 1.5:
        raise ConvergenceDomain(f"Re s = {s.real:g} is outside the region Re s > 3/2")
    _check_bound(bound)
    good, bad = good_primes(curve, bound)
    logs = []
    for p in good:
        u = cmath.exp(-s * math.log(p))
        logs.append(-cmath.log(1 - trace_of_frobenius(curve, p) * u + p * u * u))
    value = _exp_of_sum(logs)
    return EulerProductResult(s, bound, tuple(good), tuple(bad), value,
                              _tail(value, l_tail_log_bound(bound, s.real)))


@dataclass(frozen=True)
class LocalIdentity:
    p: int
    exact: bool
    rel_err: float


def local_identity(zeta: LocalZetaFunction, a_p: int, s: complex) -> LocalIdentity:
    """Compare Z_p(u) with the p-factors of zeta(s) zeta(s-1) / L(E, s), u = p^{-s}.

    The right-hand side is built from ``a_p`` alone: 1/(1-u) * 1/(1-pu) *
    (1 - a_p u + p u^2).  Equality is checked exactly by cross-multiplying
    numerators and denominators, then numerically at u = p^{-s}.
    """
    p = zeta.q
    lhs_num, lhs_den = zeta.numerator(), zeta.denominator()
    zeta_factor = IntPolynomial((1, -1))
    shifted_factor = IntPolynomial((1, -p))
    l_inverse = IntPolynomial((1, -a_p, p))
    rhs_num, rhs_den = l_inverse, zeta_factor * shifted_factor
    exact = lhs_num * rhs_den == rhs_num * lhs_den

    u = cmath.exp(-complex(s) * math.log(p))
    lhs = lhs_num(u) / lhs_den(u)
    rhs = (1 / zeta_factor(u)) * (1 / shifted_factor(u)) * l_inverse(u)
    return LocalIdentity(p, exact, abs(lhs - rhs) / abs(rhs))


@dataclass(frozen=True)
class IdentityCheck:
    ok: bool
    s: complex
    bound: int
    primes_checked: tuple[int, ...]
    exact_ok: bool
    max_rel_err: float
    failures: tuple[int, ...]

    def __bool__(self) -> bool:
        return self.ok


def zeta_identity_check(curve: CurveSpec, s: complex, bound: int, rtol: float = 1e-10,
                        l_traces: Mapping[int, int] | None = None) -> IdentityCheck:
    """Per-prime check of Z_E(s) = zeta(s) zeta(s-1) / L(E, s) for good p <= bound.

    The zeta side comes from :func:`local_zeta_curve` (character-sum traces);
    the L side takes a_p from fibre enumeration unless ``l_traces`` overrides
    individual primes, which is how tests inject faults.
    """
    s = complex(s)
    if s.real <= 2:
        raise ConvergenceDomain(f"Re s = {s.real:g} is outside the region Re s > 2")
    _check_bound(bound)
    good, _ = good_primes(curve, bound)
    overrides = dict(l_traces or {})
    failures = []
    worst = 0.0
    exact_all = True
    for p in good:
        a_p = overrides.get(p, count_points_naive(curve, p).a_p)
        res = local_identity(local_zeta_curve(curve, p), a_p, s)
        worst = max(worst, res.rel_err)
        exact_all &= res.exact
        if not res.exact or res.rel_err > rtol:
            failures.append(p)
    return IdentityCheck(not failures, s, bound, tuple(good), exact_all, worst, tuple(failures))
