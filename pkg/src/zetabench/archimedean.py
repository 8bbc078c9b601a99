"""Archimedean local factors and the completed Riemann zeta function.

All evaluations are double-precision complex.  The Gamma function uses a
Lanczos approximation, zeta and Hurwitz zeta use Euler-Maclaurin summation.
Characteristic "polynomials" of the archimedean Frobenius for a curve:

    char_0(s) = s / 2pi,   char_2(s) = (s - 1) / 2pi,
    char_1(s) = 2^{-5/2} pi^{-(s+4)/2} Gamma(s/2) s (s - 1) zeta(s),

and the completed zeta  Z(s) = 2^{-1/2} pi^{-s/2} Gamma(s/2) zeta(s)
equals char_1 / (char_0 char_2).
"""

from __future__ import annotations

import cmath
import math
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Mapping

from .errors import DomainError, NonFiniteResult, PoleAtOne, PoleError

TWO_PI = 2.0 * math.pi
ZETA_TERMS = 50
ZETA_BERNOULLI_ORDER = 14
MAX_IMAG = 50.0

_LANCZOS_G = 7
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


def _finite(z: complex, what: str) -> complex:
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise NonFiniteResult(f"{what} produced a non-finite value")
    return z


def _is_nonpositive_integer(z: complex) -> bool:
    return z.imag == 0 and z.real <= 0 and z.real == math.floor(z.real)


def gamma(z: complex) -> complex:
    """Complex Gamma via Lanczos (g = 7, 9 terms) with reflection for Re z < 1/2."""
    z = complex(z)
    if _is_nonpositive_integer(z):
        raise PoleError(f"Gamma has a pole at {z.real:g}")
    if z.real < 0.5:
        return _finite(math.pi / (cmath.sin(math.pi * z) * gamma(1 - z)), "Gamma")
    z -= 1
    x = _LANCZOS[0]
    for i in range(1, len(_LANCZOS)):
        x += _LANCZOS[i] / (z + i)
    t = z + _LANCZOS_G + 0.5
    return _finite(math.sqrt(TWO_PI) * cmath.exp((z + 0.5) * cmath.log(t) - t) * x, "Gamma")


def gamma_r(s: complex) -> complex:
    """pi^{-s/2} Gamma(s/2)."""
    s = complex(s)
    if _is_nonpositive_integer(s / 2):
        raise PoleError(f"Gamma_R has a pole at s = {s.real:g}")
    return _finite(cmath.exp(-s / 2 * math.log(math.pi)) * gamma(s / 2), "Gamma_R")


def gamma_c(s: complex) -> complex:
    """2 (2 pi)^{-s} Gamma(s)."""
    s = complex(s)
    if _is_nonpositive_integer(s):
        raise PoleError(f"Gamma_C has a pole at s = {s.real:g}")
    return _finite(2 * cmath.exp(-s * math.log(TWO_PI)) * gamma(s), "Gamma_C")


# ---------------------------------------------------------------------------
# Hodge data and Serre's Gamma factors
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HodgeNumbers:
    """Hodge numbers h^{p,q} (p + q = weight) of one cohomology group.

    ``real_split`` maps p (only when weight = 2p) to (h^{p,+}, h^{p,-}), the
    dimensions of the +(-1)^p and -(-1)^p eigenspaces of complex conjugation
    on H^{p,p}.  Missing entries default to all-plus.
    """

    weight: int
    table: Mapping[tuple[int, int], int]
    real_split: Mapping[int, tuple[int, int]] = field(default_factory=dict)

    def __post_init__(self):
        table = {(int(p), int(q)): int(h) for (p, q), h in self.table.items() if h}
        for (p, q), h in table.items():
            if p + q != self.weight or p < 0 or q < 0:
                raise DomainError(f"h^{{{p},{q}}} does not have weight {self.weight}")
            if h < 0:
                raise DomainError("Hodge numbers must be nonnegative")
            if table.get((q, p), 0) != h:
                raise DomainError(f"Hodge symmetry fails: h^{{{p},{q}}} != h^{{{q},{p}}}")
        object.__setattr__(self, "table", table)
        split = {int(p): (int(a), int(b)) for p, a_b in self.real_split.items() for a, b in [a_b]}
        for p, (plus, minus) in split.items():
            if 2 * p != self.weight or plus + minus != table.get((p, p), 0) or min(plus, minus) < 0:
                raise DomainError(f"invalid conjugation split for h^{{{p},{p}}}")
        object.__setattr__(self, "real_split", split)

    @property
    def betti(self) -> int:
        return sum(self.table.values())


def serre_local_factor(h: HodgeNumbers, s: complex) -> complex:
    """prod_{p<q} Gamma_C(s-p)^{h^{p,q}} * Gamma_R(s-p)^{h^{p,+}} Gamma_R(s-p+1)^{h^{p,-}}."""
    s = complex(s)
    value = 1 + 0j
    for (p, q), hpq in sorted(h.table.items()):
        if p < q:
            value *= gamma_c(s - p) ** hpq
        elif p == q:
            plus, minus = h.real_split.get(p, (hpq, 0))
            if plus:
                value *= gamma_r(s - p) ** plus
            if minus:
                value *= gamma_r(s - p + 1) ** minus
    return _finite(value, "Serre local factor")


# ---------------------------------------------------------------------------
# Euler-Maclaurin zeta and Hurwitz zeta
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def bernoulli(n: int) -> Fraction:
    """B_n with the convention B_1 = -1/2."""
    a = [Fraction(0)] * (n + 1)
    for m in range(n + 1):
        a[m] = Fraction(1, m + 1)
        for j in range(m, 0, -1):
            a[j - 1] = j * (a[j - 1] - a[j])
    return a[0] if n != 1 else Fraction(-1, 2)


@lru_cache(maxsize=None)
def _em_weights(order: int) -> tuple[float, ...]:
    """B_{2k} / (2k)! for k = 1..order/2+1 (the last one sizes the error estimate)."""
    return tuple(float(bernoulli(2 * k) / math.factorial(2 * k)) for k in range(1, order // 2 + 2))


def hurwitz_zeta_with_error(z: complex, a: complex, terms: int = ZETA_TERMS,
                            order: int = ZETA_BERNOULLI_ORDER) -> tuple[complex, float]:
    """sum_{n>=0} (n + a)^{-z} continued by Euler-Maclaurin, plus an error estimate.

    Uses ``terms`` explicit summands and Bernoulli corrections through B_order.
    The estimate is the modulus of the first omitted correction plus a
    rounding term: each summand exp(-z log(n + a)) carries a relative error of
    a few ulps times |z log(n + a)|.
    """
    z, a = complex(z), complex(a)
    if z == 1:
        raise PoleAtOne("Hurwitz zeta has a pole at z = 1")
    partial_re, partial_im = [], []
    rounding = 0.0
    for n in range(terms):
        log_n = cmath.log(n + a)
        v = cmath.exp(-z * log_n)
        partial_re.append(v.real)
        partial_im.append(v.imag)
        rounding += abs(v) * (1 + abs(z * log_n))
    rounding *= 4 * sys.float_info.epsilon
    total = complex(math.fsum(partial_re), math.fsum(partial_im))
    w = terms + a
    log_w = cmath.log(w)
    w_mz = cmath.exp(-z * log_w)
    total += w * w_mz / (z - 1) + w_mz / 2
    weights = _em_weights(order)
    rising = z  # z (z+1) ... (z + 2k - 2)
    w_pow = w_mz / w  # w^{-z-1}
    err = 0.0
    for k, bk in enumerate(weights, start=1):
        term = bk * rising * w_pow
        if k == len(weights):
            err = abs(term) + rounding
            break
        total += term
        rising *= (z + 2 * k - 1) * (z + 2 * k)
        w_pow /= w * w
    return _finite(total, "Hurwitz zeta"), err


def hurwitz_zeta(z: complex, a: complex) -> complex:
    return hurwitz_zeta_with_error(z, a)[0]


def riemann_zeta_with_error(s: complex) -> tuple[complex, float]:
    s = complex(s)
    if s == 1:
        raise PoleAtOne("zeta has a pole at s = 1")
    if abs(s.imag) > MAX_IMAG:
        raise DomainError(f"|Im s| = {abs(s.imag):g} exceeds the supported range {MAX_IMAG:g}")
    if s.real <= -1:
        raise DomainError("riemann_zeta is supported for Re s > -1")
    return hurwitz_zeta_with_error(s, 1.0)


def riemann_zeta(s: complex) -> complex:
    """Riemann zeta for Re s > -1, |Im s| <= 50, via Euler-Maclaurin (N = 50, through B_14)."""
    return riemann_zeta_with_error(s)[0]


# ---------------------------------------------------------------------------
# completed zeta and archimedean characteristic functions
# ---------------------------------------------------------------------------


def completed_zeta(s: complex) -> complex:
    """2^{-1/2} pi^{-s/2} Gamma(s/2) zeta(s), evaluated literally."""
    s = complex(s)
    if s == 1:
        raise PoleAtOne("completed zeta has a pole at s = 1")
    if _is_nonpositive_integer(s / 2):
        raise PoleError(f"Gamma(s/2) has a pole at s = {s.real:g}")
    return _finite(2 ** -0.5 * gamma_r(s) * riemann_zeta(s), "completed zeta")


def _s_sm1_zeta(s: complex) -> complex:
    # s (s-1) zeta(s); removable singularity at s = 1 where (s-1) zeta(s) -> 1
    if s == 1:
        return 1 + 0j
    return s * (s - 1) * riemann_zeta(s)


def char_a_infinity(i: int, s: complex) -> complex:
    """Archimedean characteristic function for weight ``i`` in {0, 1, 2}."""
    s = complex(s)
    if i == 0:
        return s / TWO_PI
    if i == 2:
        return (s - 1) / TWO_PI
    if i != 1:
        raise DomainError("weight must be 0, 1 or 2 for a curve")
    if _is_nonpositive_integer(s / 2):
        raise PoleError(f"Gamma(s/2) has a pole at s = {s.real:g}")
    value = 2 ** -2.5 * cmath.exp(-(s + 4) / 2 * math.log(math.pi)) * gamma(s / 2) * _s_sm1_zeta(s)
    return _finite(value, "char A^1")


def char_a1_via_completed(s: complex) -> complex:
    """(2 pi)^{-2} s (s - 1) Z(s)."""
    s = complex(s)
    return TWO_PI ** -2 * s * (s - 1) * completed_zeta(s)


def char_a1_via_ratio(s: complex) -> complex:
    """Z(s) char_0(s) char_2(s), the ratio identity solved for char_1."""
    s = complex(s)
    return completed_zeta(s) * char_a_infinity(0, s) * char_a_infinity(2, s)


@dataclass(frozen=True)
class RatioCheck:
    ok: bool
    s: complex
    ratio: complex | None = None
    completed: complex | None = None
    rel_err: float | None = None
    diagnostic: str = ""

    def __bool__(self) -> bool:
        return self.ok


def char_ratio_consistency(s: complex, rtol: float = 1e-8, guard: float = 1e-6) -> RatioCheck:
    """char_1 / (char_0 char_2) == Z(s) within ``rtol``.

    Points within ``guard`` of s = 0, s = 1 or a Gamma(s/2) pole are excluded
    and reported as a failed check with a diagnostic.
    """
    s = complex(s)
    near = [p for p in (0.0, 1.0) if abs(s - p) < guard]
    if s.real <= 0 and abs(s.imag) < guard and abs(s.real / 2 - round(s.real / 2)) * 2 < guard:
        near.append(round(s.real))
    if near:
        return RatioCheck(False, s, diagnostic=f"too close to a pole or denominator zero at {near[0]:g}")
    try:
        ratio = char_a_infinity(1, s) / (char_a_infinity(0, s) * char_a_infinity(2, s))
        completed = completed_zeta(s)
    except (PoleError, DomainError) as exc:
        return RatioCheck(False, s, diagnostic=str(exc))
    rel = abs(ratio - completed) / max(abs(completed), 1e-300)
    return RatioCheck(rel <= rtol, s, ratio, completed, rel)


# ---------------------------------------------------------------------------
# zeta-regularized determinants of arithmetic progressions
# ---------------------------------------------------------------------------


def regularized_det_arith_progression(a: complex, scale: float = TWO_PI, h: float = 1e-3) -> complex:
    """Zeta-regularized prod_{n>=0} (a + n) / scale.

    The spectral zeta is scale^z zeta_H(z, a); its derivative at z = 0 is
    taken by a five-point central difference of step ``h``, giving
    exp(-zeta_H'(0, a)) * scale^{-zeta_H(0, a)}.
    """
    a = complex(a)
    if a.real <= 0:
        raise DomainError("the progression must start in Re(a) > 0")
    if scale <= 0:
        raise DomainError("scale must be positive")
    f = lambda z: hurwitz_zeta(z, a)  # noqa: E731
    d0 = (f(-2 * h) - 8 * f(-h) + 8 * f(h) - f(2 * h)) / (12 * h)
    z0 = f(0.0)
    return _finite(cmath.exp(-d0 - z0 * math.log(scale)), "regularized determinant")


def lerch_closed_form(a: complex, scale: float = TWO_PI) -> complex:
    """sqrt(2 pi) / Gamma(a) * scale^{a - 1/2}."""
    a = complex(a)
    return math.sqrt(TWO_PI) / gamma(a) * cmath.exp((a - 0.5) * math.log(scale))


# ---------------------------------------------------------------------------
# zeros on the critical line
# ---------------------------------------------------------------------------


def critical_line_value(t: float) -> float:
    """Real part of char_1(1/2 + it); the imaginary part vanishes on that line."""
    return char_a_infinity(1, complex(0.5, t)).real


def find_critical_zeros(t_lo: float, t_hi: float, step: float = 0.05, tol: float = 1e-6) -> list[float]:
    """Ordinates of sign changes of char_1(1/2 + it) on [t_lo, t_hi].

    Scans a grid of spacing ``step`` and bisects every bracket to width
    ``tol``.  Zeros closer together than the grid can be missed.
    """
    if not 0 < t_lo < t_hi <= MAX_IMAG:
        raise DomainError(f"need 0 < t_lo < t_hi <= {MAX_IMAG:g}")
    n = int(math.floor((t_hi - t_lo) / step + 1e-9))
    grid = [t_lo + k * step for k in range(n + 1)]
    if grid[-1] < t_hi:
        grid.append(t_hi)
    values = [critical_line_value(t) for t in grid]
    zeros = []
    for (t0, f0), (t1, f1) in zip(zip(grid, values), zip(grid[1:], values[1:])):
        if f0 == 0.0:
            zeros.append(t0)
        elif f0 * f1 < 0:
            lo, hi, flo = t0, t1, f0
            while hi - lo > tol:
                mid = 0.5 * (lo + hi)
                fm = critical_line_value(mid)
                if fm == 0.0:
                    lo = hi = mid
                    break
                if (fm < 0) == (flo < 0):
                    lo, flo = mid, fm
                else:
                    hi = mid
            zeros.append(0.5 * (lo + hi))
    if values[-1] == 0.0:
        zeros.append(grid[-1])
    return sorted(zeros)
