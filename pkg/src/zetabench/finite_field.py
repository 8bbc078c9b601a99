"""Point counting on short Weierstrass curves over F_p and F_{p^r}.

Two independent counters over the prime field (fibre enumeration and the
quadratic character sum), a direct enumerator over F_{p^2}, and the trace
recurrence for arbitrary extension degree.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass
from functools import lru_cache

from .errors import (
    BadReduction,
    EnumerationBoundExceeded,
    EvenOrCompositeModulus,
    EvenPrime,
)

ENUMERATION_LIMIT = 10**6


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for small in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % small == 0:
            return n == small
    # deterministic Miller-Rabin for n < 3.3e24
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41):
        if a % n == 0:
            continue
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primes_up_to(bound: int) -> list[int]:
    if bound < 2:
        return []
    sieve = bytearray([1]) * (bound + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, math.isqrt(bound) + 1):
        if sieve[i]:
            sieve[i * i::i] = bytearray(len(range(i * i, bound + 1, i)))
    return [i for i in range(bound + 1) if sieve[i]]


@dataclass(frozen=True)
class CurveSpec:
    """y^2 = x^3 + a x + b over Q."""

    a: int
    b: int

    def __post_init__(self):
        if self.discriminant == 0:
            raise BadReduction(f"curve a={self.a}, b={self.b} is singular (discriminant 0)")

    @property
    def discriminant(self) -> int:
        return -16 * (4 * self.a**3 + 27 * self.b**2)

    def has_good_reduction(self, p: int) -> bool:
        return p != 2 and self.discriminant % p != 0

    def rhs(self, x: int, p: int) -> int:
        return (x * x * x + self.a * x + self.b) % p

    def __str__(self) -> str:
        return f"a={self.a},b={self.b}"


_CURVE_TEXT = re.compile(r"^\s*a\s*=\s*(-?\d+)\s*,\s*b\s*=\s*(-?\d+)\s*$")


def parse_curve(text: str) -> CurveSpec:
    """Accepts ``a=<int>,b=<int>`` or JSON ``{"a": int, "b": int}``."""
    m = _CURVE_TEXT.match(text)
    if m:
        return CurveSpec(int(m.group(1)), int(m.group(2)))
    try:
        data = json.loads(text)
    except json.JSONDecodeError:
        raise ValueError(f"unrecognised curve specification {text!r}") from None
    if not isinstance(data, dict) or set(data) != {"a", "b"}:
        raise ValueError('curve JSON must be an object with exactly the keys "a" and "b"')
    return CurveSpec(int(data["a"]), int(data["b"]))


@dataclass(frozen=True)
class PointCountRecord:
    p: int
    r: int
    count: int
    a_p: int

    def __post_init__(self):
        if self.r < 1 or self.count < 0:
            raise ValueError("invalid point count record")
        if self.a_p * self.a_p > 4 * self.p:
            raise ValueError(f"Hasse bound violated: a_p={self.a_p}, p={self.p}")

    @property
    def q(self) -> int:
        return self.p**self.r

    @property
    def trace(self) -> int:
        """Trace t_r of the q-power Frobenius, ``q + 1 - count``."""
        return self.q + 1 - self.count


def quadratic_character(x: int, p: int) -> int:
    """Legendre symbol (x/p) via Euler's criterion."""
    if p % 2 == 0 or not is_prime(p):
        raise EvenOrCompositeModulus(f"{p} is not an odd prime")
    x %= p
    if x == 0:
        return 0
    return 1 if pow(x, (p - 1) // 2, p) == 1 else -1


def _check_prime(curve: CurveSpec, p: int, limit: int | None = ENUMERATION_LIMIT) -> None:
    if p == 2:
        raise EvenPrime("p = 2 is not supported for short Weierstrass models")
    if not is_prime(p):
        raise EvenOrCompositeModulus(f"{p} is not prime")
    if curve.discriminant % p == 0:
        raise BadReduction(f"{curve} has bad reduction at p={p}")
    if limit is not None and p > limit:
        raise EnumerationBoundExceeded(f"p={p} exceeds the enumeration limit {limit}")


def count_points_naive(curve: CurveSpec, p: int) -> PointCountRecord:
    """Count affine solutions by enumerating every y, plus the point at infinity.

    Each y in F_p is tallied against its square; each x then contributes the
    number of y with y^2 = x^3 + ax + b.  This is a reorganised exhaustive
    enumeration of F_p x F_p and uses no character theory.
    """
    _check_prime(curve, p)
    roots_of = [0] * p
    for y in range(p):
        roots_of[y * y % p] += 1
    count = 1 + sum(roots_of[curve.rhs(x, p)] for x in range(p))
    return PointCountRecord(p, 1, count, p + 1 - count)


def count_points_charsum(curve: CurveSpec, p: int) -> PointCountRecord:
    """``p + 1 + sum_x chi(x^3 + ax + b)`` with chi the quadratic character."""
    _check_prime(curve, p)
    half = (p - 1) // 2
    s = 0
    for x in range(p):
        v = curve.rhs(x, p)
        if v:
            s += 1 if pow(v, half, p) == 1 else -1
    count = p + 1 + s
    return PointCountRecord(p, 1, count, p + 1 - count)


@lru_cache(maxsize=1 << 16)
def _trace_cached(a: int, b: int, p: int) -> int:
    return count_points_charsum(CurveSpec(a, b), p).a_p


def trace_of_frobenius(curve: CurveSpec, p: int) -> int:
    """a_p = p + 1 - |E(F_p)|; memoised per (curve, p)."""
    _check_prime(curve, p)
    return _trace_cached(curve.a, curve.b, p)


def extension_traces(a_p: int, p: int, r: int) -> list[int]:
    """Traces t_1..t_r of Frobenius powers from t_m = a_p t_{m-1} - p t_{m-2}."""
    traces = [2, a_p]
    for _ in range(2, r + 1):
        traces.append(a_p * traces[-1] - p * traces[-2])
    return traces[1:r + 1]


def count_points_extension(curve: CurveSpec, p: int, r: int) -> PointCountRecord:
    if r < 1:
        raise ValueError("extension degree must be >= 1")
    a_p = trace_of_frobenius(curve, p)
    t_r = extension_traces(a_p, p, r)[-1]
    return PointCountRecord(p, r, p**r + 1 - t_r, a_p)


def counts_over_extensions(curve: CurveSpec, p: int, m: int) -> list[int]:
    """N_1..N_m, the point counts over F_{p^1}..F_{p^m}."""
    a_p = trace_of_frobenius(curve, p)
    return [p**k + 1 - t for k, t in enumerate(extension_traces(a_p, p, m), start=1)]


# ---------------------------------------------------------------------------
# F_{p^2} = F_p[t]/(t^2 - d), d the least positive nonresidue
# ---------------------------------------------------------------------------


def smallest_nonresidue(p: int) -> int:
    for d in range(2, p):
        if quadratic_character(d, p) == -1:
            return d
    raise EvenOrCompositeModulus(f"no nonresidue mod {p}")


@dataclass(frozen=True)
class QuadraticExtension:
    """Elements are pairs (u, v) meaning u + v t with t^2 = d."""

    p: int
    d: int

    @classmethod
    def of(cls, p: int) -> "QuadraticExtension":
        return cls(p, smallest_nonresidue(p))

    def elements(self):
        return ((u, v) for u in range(self.p) for v in range(self.p))

    def add(self, x, y):
        return ((x[0] + y[0]) % self.p, (x[1] + y[1]) % self.p)

    def mul(self, x, y):
        p, d = self.p, self.d
        return ((x[0] * y[0] + d * x[1] * y[1]) % p, (x[0] * y[1] + x[1] * y[0]) % p)

    def embed(self, c: int):
        return (c % self.p, 0)


def count_points_fp2_direct(curve: CurveSpec, p: int) -> int:
    """|E(F_{p^2})| by enumeration over the explicit quadratic extension."""
    _check_prime(curve, p, limit=10**4)
    F = QuadraticExtension.of(p)
    roots_of: dict[tuple[int, int], int] = {}
    for y in F.elements():
        sq = F.mul(y, y)
        roots_of[sq] = roots_of.get(sq, 0) + 1
    a, b = F.embed(curve.a), F.embed(curve.b)
    count = 1
    for x in F.elements():
        x3 = F.mul(F.mul(x, x), x)
        rhs = F.add(F.add(x3, F.mul(a, x)), b)
        count += roots_of.get(rhs, 0)
    return count
