"""Local zeta functions Z_q(u) as alternating products of integer polynomials.

For a variety of dimension n over F_q, Z_q(u) = prod_i P_i(u)^{(-1)^{i+1}},
i = 0..2n, with P_0 = 1 - u and P_{2n} = 1 - q^n u.  Curves are built from
point counts; higher-dimensional data enters only as user-supplied traces.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .exact_arith import IntPolynomial
from .finite_field import CurveSpec, trace_of_frobenius


@dataclass(frozen=True)
class LocalZetaFunction:
    q: int
    polys: tuple[IntPolynomial, ...]

    def __post_init__(self):
        polys = tuple(p if isinstance(p, IntPolynomial) else IntPolynomial(tuple(p)) for p in self.polys)
        object.__setattr__(self, "polys", polys)
        if len(polys) % 2 == 0:
            raise ValueError("need an odd number 2n+1 of polynomials")
        n = self.dimension
        if polys[0] != IntPolynomial((1, -1)):
            raise ValueError("P_0 must be 1 - u")
        if polys[-1] != IntPolynomial((1, -self.q**n)):
            raise ValueError(f"P_{2 * n} must be 1 - q^{n} u")
        if any(p(0) != 1 for p in polys):
            raise ValueError("every P_i must satisfy P_i(0) = 1")

    @property
    def dimension(self) -> int:
        return (len(self.polys) - 1) // 2

    @property
    def betti(self) -> tuple[int, ...]:
        return tuple(p.degree for p in self.polys)

    def numerator(self) -> IntPolynomial:
        out = IntPolynomial((1,))
        for p in self.polys[1::2]:
            out = out * p
        return out

    def denominator(self) -> IntPolynomial:
        out = IntPolynomial((1,))
        for p in self.polys[0::2]:
            out = out * p
        return out

    def __call__(self, u):
        return self.numerator()(u) / self.denominator()(u)

    def log_derivative_series(self, order: int) -> list[Fraction]:
        """Coefficients c_1..c_order of u d/du log Z_q(u); c_m should equal N_m."""
        total = [Fraction(0)] * (order + 1)
        for i, p in enumerate(self.polys):
            sign = 1 if i % 2 else -1
            s = _u_dlog_series(p, order)
            for m in range(order + 1):
                total[m] += sign * s[m]
        return total[1:]


def _u_dlog_series(p: IntPolynomial, order: int) -> list[Fraction]:
    """Power series of u P'(u)/P(u) through u^order, exact."""
    num = [Fraction(k * c) for k, c in enumerate(p.coeffs)]
    num += [Fraction(0)] * (order + 1 - len(num))
    den = p.coeffs
    out = [Fraction(0)] * (order + 1)
    c0 = Fraction(den[0])
    for m in range(order + 1):
        acc = num[m] - sum(den[k] * out[m - k] for k in range(1, min(m, len(den) - 1) + 1))
        out[m] = acc / c0
    return out


def local_zeta_curve(curve: CurveSpec, p: int) -> LocalZetaFunction:
    a_p = trace_of_frobenius(curve, p)
    return LocalZetaFunction(p, (
        IntPolynomial((1, -1)),
        IntPolynomial((1, -a_p, p)),
        IntPolynomial((1, -p)),
    ))


def rationality_check(zeta: LocalZetaFunction, counts: Sequence[int]) -> bool:
    """True iff the log-derivative series of ``zeta`` reproduces N_1..N_M exactly."""
    if not counts:
        raise ValueError("need at least one point count")
    series = zeta.log_derivative_series(len(counts))
    return all(c == Fraction(n) for c, n in zip(series, counts))


@dataclass(frozen=True)
class FrobeniusData:
    q: int
    traces: tuple[int, ...]
    betti: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "traces", tuple(int(t) for t in self.traces))
        object.__setattr__(self, "betti", tuple(int(b) for b in self.betti))
        if len(self.traces) % 2 == 0 or len(self.traces) != len(self.betti):
            raise ValueError("traces and Betti numbers must both have length 2n+1")

    @classmethod
    def from_zeta(cls, zeta: LocalZetaFunction) -> "FrobeniusData":
        # P_i(u) = det(1 - F u) = 1 - tr(F) u + ...
        return cls(zeta.q, tuple(-p.coeff(1) for p in zeta.polys), zeta.betti)


def lefschetz_sum(frob: FrobeniusData) -> int:
    return sum((-1) ** i * t for i, t in enumerate(frob.traces))


def _inverse_roots(P: IntPolynomial) -> np.ndarray:
    # inverse roots of P are the roots of u^d P(1/u); numpy wants highest degree first
    return np.roots([float(c) for c in P.coeffs])


def weil_rh_check(P: IntPolynomial, q: int, i: int, rtol: float = 1e-9) -> bool:
    """Every inverse root alpha of P has |alpha|^2 = q^i.

    Exact for degree <= 2 (norm and discriminant conditions); numerical with
    relative tolerance ``rtol`` above that.
    """
    if P(0) != 1:
        raise ValueError("P(0) must be 1")
    target = q**i
    d = P.degree
    if d == 0:
        return True
    if d == 1:
        return P.coeff(1) ** 2 == target
    if d == 2:
        c1, c2 = P.coeff(1), P.coeff(2)
        disc = c1 * c1 - 4 * c2
        if disc < 0:
            return c2 == target
        if disc == 0:
            return c1 * c1 == 4 * target
        return c1 == 0 and -c2 == target
    alphas = _inverse_roots(P)
    return bool(np.all(np.abs(np.abs(alphas) ** 2 - target) <= rtol * target))


def functional_eq_check(P: IntPolynomial, q: int, i: int) -> bool:
    """``u^d q^{i d/2} P(1/(q^i u)) == +-P(u)`` as exact polynomials, d = deg P."""
    d = P.degree
    if (i * d) % 2:
        raise ValueError("i * deg P must be even")
    half = i * d // 2
    # coefficient of u^{d-k} is c_k q^{half - i k}
    flipped = [Fraction(0)] * (d + 1)
    for k, c in enumerate(P.coeffs):
        e = half - i * k
        flipped[d - k] = Fraction(c) * (Fraction(q) ** e)
    own = [Fraction(c) for c in P.coeffs]
    return flipped == own or flipped == [-c for c in own]
