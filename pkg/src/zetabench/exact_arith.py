"""Exact arithmetic substrate.

Integer polynomials in one indeterminate, multivariate Laurent polynomials,
reduced rational functions, and dense integer matrices.  Everything here is
immutable and uses Python's arbitrary-precision ``int``; nothing ever touches
floating point except the explicit ``evaluate`` helpers.

Multivariate polynomials are handled internally as ``dict`` objects mapping
exponent tuples to nonzero integer coefficients.  The public classes wrap those
dicts in canonical, hashable form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import zip_longest
from operator import add
from typing import Iterable, Mapping, Sequence, Union

from .errors import DimensionMismatch, NonSquare, ZeroDenominator

Exps = tuple[int, ...]
_Poly = dict  # dict[Exps, int]


# ---------------------------------------------------------------------------
# univariate integer polynomials
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IntPolynomial:
    """Polynomial with integer coefficients; ``coeffs[k]`` multiplies ``u**k``."""

    coeffs: tuple[int, ...] = ()

    def __post_init__(self):
        c = [int(x) for x in self.coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def from_roots(cls, roots: Iterable[int]) -> "IntPolynomial":
        """Monic polynomial prod (s - r)."""
        p = cls((1,))
        for r in roots:
            p = p * cls((-r, 1))
        return p

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        if isinstance(other, int):
            other = IntPolynomial((other,))
        return IntPolynomial(tuple(a + b for a, b in zip_longest(self.coeffs, other.coeffs, fillvalue=0)))

    __radd__ = __add__

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial(tuple(-a for a in self.coeffs))

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        if isinstance(other, int):
            other = IntPolynomial((other,))
        return self + (-other)

    def __mul__(self, other: Union["IntPolynomial", int]) -> "IntPolynomial":
        if isinstance(other, int):
            return IntPolynomial(tuple(a * other for a in self.coeffs))
        if not self.coeffs or not other.coeffs:
            return IntPolynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPolynomial(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "IntPolynomial":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = IntPolynomial((1,))
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def derivative(self) -> "IntPolynomial":
        return IntPolynomial(tuple(k * c for k, c in enumerate(self.coeffs) if k))

    def reversed(self, degree: int | None = None) -> "IntPolynomial":
        """``u**degree * P(1/u)``; ``degree`` defaults to ``self.degree``."""
        d = self.degree if degree is None else degree
        if d < self.degree:
            raise ValueError("reversal degree below polynomial degree")
        padded = list(self.coeffs) + [0] * (d + 1 - len(self.coeffs))
        return IntPolynomial(tuple(reversed(padded)))

    def content(self) -> int:
        return math.gcd(*self.coeffs) if self.coeffs else 0

    def format(self, var: str = "u") -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c:
                parts.append(_format_term(c, _power(var, k)))
        return _join_terms(parts)

    def __str__(self) -> str:
        return self.format()


def poly_gcd(f: IntPolynomial, g: IntPolynomial) -> IntPolynomial:
    """Greatest common divisor in Z[u], positive leading coefficient."""
    fd = {(k,): c for k, c in enumerate(f.coeffs) if c}
    gd = {(k,): c for k, c in enumerate(g.coeffs) if c}
    h = _mp_gcd(fd, gd)
    if not h:
        return IntPolynomial()
    out = [0] * (max(e[0] for e in h) + 1)
    for (k,), c in h.items():
        out[k] = c
    return IntPolynomial(tuple(out))


def poly_divexact(f: IntPolynomial, g: IntPolynomial) -> IntPolynomial | None:
    """``f / g`` if the division is exact in Z[u], else ``None``."""
    q = _mp_divexact({(k,): c for k, c in enumerate(f.coeffs) if c},
                     {(k,): c for k, c in enumerate(g.coeffs) if c})
    if q is None:
        return None
    if not q:
        return IntPolynomial()
    out = [0] * (max(e[0] for e in q) + 1)
    for (k,), c in q.items():
        out[k] = c
    return IntPolynomial(tuple(out))


# ---------------------------------------------------------------------------
# multivariate polynomial engine (dict-based, nonnegative exponents)
# ---------------------------------------------------------------------------


def _add_exps(a: Exps, b: Exps) -> Exps:
    return tuple(map(add, a, b))


def _mp_add(f: _Poly, g: _Poly, sign: int = 1) -> _Poly:
    out = dict(f)
    for e, c in g.items():
        v = out.get(e, 0) + sign * c
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return out


def _mp_mul(f: _Poly, g: _Poly) -> _Poly:
    if len(f) > len(g):
        f, g = g, f
    out: _Poly = {}
    get = out.get
    g_items = list(g.items())
    for e1, c1 in f.items():
        for e2, c2 in g_items:
            e = tuple(map(add, e1, e2))
            out[e] = get(e, 0) + c1 * c2
    return {e: c for e, c in out.items() if c}


def _mp_scale(f: _Poly, c: int) -> _Poly:
    return {e: v * c for e, v in f.items()} if c else {}


def _mp_divexact(f: _Poly, g: _Poly) -> _Poly | None:
    """Exact quotient ``f / g`` by lex-leading-term division, or ``None``."""
    if not g:
        raise ZeroDenominator("division by the zero polynomial")
    lt_g = max(g)
    c_g = g[lt_g]
    rem = dict(f)
    q: _Poly = {}
    while rem:
        lt = max(rem)
        c = rem[lt]
        e = tuple(a - b for a, b in zip(lt, lt_g))
        if min(e, default=0) < 0 or c % c_g:
            return None
        qc = c // c_g
        q[e] = qc
        for eg, cg in g.items():
            key = _add_exps(eg, e)
            v = rem.get(key, 0) - qc * cg
            if v:
                rem[key] = v
            else:
                rem.pop(key, None)
    return q


def _mp_int_content(f: _Poly) -> int:
    return math.gcd(*f.values()) if f else 0


def _mp_normalize_sign(f: _Poly) -> _Poly:
    if f and f[max(f)] < 0:
        return _mp_scale(f, -1)
    return f


def _deg_in(f: _Poly, var: int) -> int:
    return max((e[var] for e in f), default=-1)


def _coeffs_in(f: _Poly, var: int) -> dict[int, _Poly]:
    out: dict[int, _Poly] = {}
    for e, c in f.items():
        k = e[var]
        rest = e[:var] + (0,) + e[var + 1:]
        out.setdefault(k, {})[rest] = c
    return out


def _main_var(f: _Poly, g: _Poly) -> int | None:
    best = None
    for poly in (f, g):
        for e in poly:
            for i in range(len(e) - 1, -1, -1):
                if e[i]:
                    if best is None or i > best:
                        best = i
                    break
    return best


def _is_unit(f: _Poly) -> bool:
    return len(f) == 1 and not any(next(iter(f))) and abs(next(iter(f.values()))) == 1


def _content_in(f: _Poly, var: int) -> _Poly:
    acc: _Poly = {}
    for coeff in _coeffs_in(f, var).values():
        acc = _mp_gcd(acc, coeff)
        if _is_unit(acc):
            break
    return acc


def _prem(a: _Poly, b: _Poly, var: int) -> _Poly:
    db = _deg_in(b, var)
    lcb = _coeffs_in(b, var)[db]
    r = a
    while r:
        dr = _deg_in(r, var)
        if dr < db:
            break
        lcr = _coeffs_in(r, var)[dr]
        shift = tuple(dr - db if i == var else 0 for i in range(len(next(iter(b)))))
        lcr_shifted = {_add_exps(e, shift): c for e, c in lcr.items()}
        r = _mp_add(_mp_mul(lcb, r), _mp_mul(lcr_shifted, b), sign=-1)
    return r


def _mp_gcd(f: _Poly, g: _Poly) -> _Poly:
    """Multivariate gcd by recursive content / primitive remainder sequences."""
    if not f:
        return _mp_normalize_sign(dict(g))
    if not g:
        return _mp_normalize_sign(dict(f))
    var = _main_var(f, g)
    if var is None:
        zero = next(iter(f))
        return {zero: math.gcd(f[zero], g[zero])}
    cf = _content_in(f, var)
    cg = _content_in(g, var)
    c = _mp_gcd(cf, cg)
    a = _mp_divexact(f, cf)
    b = _mp_divexact(g, cg)
    if _deg_in(a, var) < _deg_in(b, var):
        a, b = b, a
    while b and _deg_in(b, var) > 0:
        r = _prem(a, b, var)
        if r:
            r = _mp_normalize_sign(_mp_divexact(r, _content_in(r, var)))
        a, b = b, r
    if b:
        # b is primitive and free of var, hence a unit
        prim = {tuple(0 for _ in next(iter(f))): 1}
    else:
        prim = _mp_normalize_sign(a)
    return _mp_normalize_sign(_mp_mul(c, prim))


# ---------------------------------------------------------------------------
# Laurent polynomials
# ---------------------------------------------------------------------------

RawTerms = Union[Mapping[Sequence[int], int], Iterable[tuple[Sequence[int], int]]]


@dataclass(frozen=True)
class LaurentPolynomial:
    """Element of Z[x_1^{+-1}, ..., x_n^{+-1}] in canonical form.

    ``terms`` is sorted lexicographically by exponent vector and never stores
    a zero coefficient, so dataclass equality and hashing are structural.
    """

    nvars: int
    terms: tuple[tuple[Exps, int], ...] = ()

    def __post_init__(self):
        merged: dict[Exps, int] = {}
        for exps, c in self.terms:
            exps = tuple(int(e) for e in exps)
            if len(exps) != self.nvars:
                raise DimensionMismatch(f"exponent vector {exps} does not have {self.nvars} entries")
            merged[exps] = merged.get(exps, 0) + int(c)
        object.__setattr__(self, "terms", tuple(sorted((e, c) for e, c in merged.items() if c)))

    # construction -------------------------------------------------------

    @classmethod
    def _from_dict(cls, nvars: int, d: Mapping[Exps, int]) -> "LaurentPolynomial":
        obj = object.__new__(cls)
        object.__setattr__(obj, "nvars", nvars)
        object.__setattr__(obj, "terms", tuple(sorted((e, c) for e, c in d.items() if c)))
        return obj

    @classmethod
    def constant(cls, c: int, nvars: int) -> "LaurentPolynomial":
        return cls._from_dict(nvars, {(0,) * nvars: c})

    @classmethod
    def monomial(cls, exps: Sequence[int], c: int = 1) -> "LaurentPolynomial":
        exps = tuple(exps)
        return cls._from_dict(len(exps), {exps: c})

    @classmethod
    def variable(cls, i: int, nvars: int) -> "LaurentPolynomial":
        """The ``i``-th indeterminate, 0-based."""
        return cls.monomial(tuple(1 if j == i else 0 for j in range(nvars)))

    # structure ----------------------------------------------------------

    def as_dict(self) -> dict[Exps, int]:
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def is_constant(self) -> bool:
        return self.is_zero() or (len(self.terms) == 1 and not any(self.terms[0][0]))

    def is_polynomial(self) -> bool:
        return all(min(e, default=0) >= 0 for e, _ in self.terms)

    @property
    def leading(self) -> tuple[Exps, int]:
        return self.terms[-1]

    def min_exponents(self) -> Exps:
        if not self.terms:
            return (0,) * self.nvars
        return tuple(min(e[i] for e, _ in self.terms) for i in range(self.nvars))

    def max_exponents(self) -> Exps:
        if not self.terms:
            return (0,) * self.nvars
        return tuple(max(e[i] for e, _ in self.terms) for i in range(self.nvars))

    def content(self) -> int:
        return math.gcd(*(c for _, c in self.terms)) if self.terms else 0

    def shift(self, exps: Sequence[int]) -> "LaurentPolynomial":
        """Multiply by the monomial ``x**exps``."""
        return LaurentPolynomial._from_dict(self.nvars, {_add_exps(e, exps): c for e, c in self.terms})

    # arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> "LaurentPolynomial":
        if isinstance(other, int):
            return LaurentPolynomial.constant(other, self.nvars)
        if other.nvars != self.nvars:
            raise DimensionMismatch("Laurent polynomials in different numbers of variables")
        return other

    def __add__(self, other) -> "LaurentPolynomial":
        other = self._coerce(other)
        return LaurentPolynomial._from_dict(self.nvars, _mp_add(self.as_dict(), other.as_dict()))

    __radd__ = __add__

    def __neg__(self) -> "LaurentPolynomial":
        return LaurentPolynomial._from_dict(self.nvars, {e: -c for e, c in self.terms})

    def __sub__(self, other) -> "LaurentPolynomial":
        other = self._coerce(other)
        return LaurentPolynomial._from_dict(self.nvars, _mp_add(self.as_dict(), other.as_dict(), sign=-1))

    def __rsub__(self, other) -> "LaurentPolynomial":
        return self._coerce(other) - self

    def __mul__(self, other) -> "LaurentPolynomial":
        other = self._coerce(other)
        return LaurentPolynomial._from_dict(self.nvars, _mp_mul(self.as_dict(), other.as_dict()))

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPolynomial":
        if n < 0:
            if not self.is_monomial() or abs(self.terms[0][1]) != 1:
                raise ValueError("only unit monomials have Laurent inverses")
            e, c = self.terms[0]
            return LaurentPolynomial._from_dict(self.nvars, {tuple(n * x for x in e): c ** (-n)})
        result = LaurentPolynomial.constant(1, self.nvars)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def evaluate(self, point: Sequence):
        total = 0
        for e, c in self.terms:
            term = c
            for x, k in zip(point, e):
                if k > 0:
                    term = term * x ** k
                elif k < 0:
                    term = term / (Fraction(x) if isinstance(x, int) else x) ** -k
            total = total + term
        return total

    def format(self, names: Sequence[str] | None = None) -> str:
        if names is None:
            names = [f"x{i + 1}" for i in range(self.nvars)]
        if not self.terms:
            return "0"
        parts = []
        for e, c in reversed(self.terms):
            mono = "*".join(_power(names[i], k) for i, k in enumerate(e) if k)
            parts.append(_format_term(c, mono))
        return _join_terms(parts)

    def __str__(self) -> str:
        return self.format()


def laurent_normalize(raw: RawTerms, nvars: int | None = None) -> LaurentPolynomial:
    """Canonical Laurent polynomial from a raw term list.

    Duplicate exponent vectors are merged and zero coefficients dropped.
    ``raw`` may be a mapping or an iterable of ``(exponents, coefficient)``.
    """
    items = list(raw.items()) if isinstance(raw, Mapping) else list(raw)
    if nvars is None:
        if not items:
            raise ValueError("cannot infer the number of variables from an empty term list")
        nvars = len(items[0][0])
    return LaurentPolynomial(nvars, tuple((tuple(e), c) for e, c in items))


# ---------------------------------------------------------------------------
# rational functions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RationalFunction:
    """Reduced quotient of integer polynomials.

    ``num`` and ``den`` are polynomials (no negative exponents), coprime, and
    the lex-leading coefficient of ``den`` is positive.  Construction always
    reduces, so equality is structural.
    """

    num: LaurentPolynomial
    den: LaurentPolynomial

    def __post_init__(self):
        reduced = _reduce(self.num, self.den)
        object.__setattr__(self, "num", reduced[0])
        object.__setattr__(self, "den", reduced[1])

    @classmethod
    def _trusted(cls, num: LaurentPolynomial, den: LaurentPolynomial) -> "RationalFunction":
        obj = object.__new__(cls)
        object.__setattr__(obj, "num", num)
        object.__setattr__(obj, "den", den)
        return obj

    @classmethod
    def from_laurent(cls, p: LaurentPolynomial) -> "RationalFunction":
        return cls(p, LaurentPolynomial.constant(1, p.nvars))

    @classmethod
    def variable(cls, i: int, nvars: int) -> "RationalFunction":
        return cls._trusted(LaurentPolynomial.variable(i, nvars), LaurentPolynomial.constant(1, nvars))

    @classmethod
    def constant(cls, c: int, nvars: int) -> "RationalFunction":
        return cls._trusted(LaurentPolynomial.constant(c, nvars), LaurentPolynomial.constant(1, nvars))

    @property
    def nvars(self) -> int:
        return self.num.nvars

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_laurent(self) -> bool:
        return self.den.is_monomial()

    def as_laurent(self) -> LaurentPolynomial:
        """The same element written in Z[x^{+-1}]; requires a monomial denominator."""
        if not self.is_laurent():
            raise ValueError("denominator is not a monomial")
        e, c = self.den.terms[0]
        if c != 1:
            raise ValueError("denominator has a non-unit coefficient")
        return self.num.shift(tuple(-k for k in e))

    def _coerce(self, other) -> "RationalFunction":
        if isinstance(other, int):
            return RationalFunction.constant(other, self.nvars)
        if isinstance(other, LaurentPolynomial):
            return RationalFunction.from_laurent(other)
        return other

    def __add__(self, other) -> "RationalFunction":
        other = self._coerce(other)
        if self.den == other.den:
            return RationalFunction(self.num + other.num, self.den)
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "RationalFunction":
        return RationalFunction._trusted(-self.num, self.den)

    def __sub__(self, other) -> "RationalFunction":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "RationalFunction":
        return self._coerce(other) - self

    def __mul__(self, other) -> "RationalFunction":
        other = self._coerce(other)
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RationalFunction":
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDenominator("division by the zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other) -> "RationalFunction":
        return self._coerce(other) / self

    def __pow__(self, n: int) -> "RationalFunction":
        if n >= 0:
            return RationalFunction._trusted(self.num ** n, self.den ** n) if n else RationalFunction.constant(1, self.nvars)
        return RationalFunction.constant(1, self.nvars) / (self ** (-n))

    def evaluate(self, point: Sequence):
        n = self.num.evaluate(point)
        d = self.den.evaluate(point)
        if isinstance(n, int) and isinstance(d, int):
            return Fraction(n, d)
        return n / d

    def format(self, names: Sequence[str] | None = None) -> str:
        num = self.num.format(names)
        if self.den.is_constant() and self.den.terms[0][1] == 1:
            return num
        den = self.den.format(names)
        if len(self.num.terms) > 1:
            num = f"({num})"
        if len(self.den.terms) > 1 or "*" in den:
            den = f"({den})"
        return f"{num}/{den}"

    def __str__(self) -> str:
        return self.format()


def _reduce(num: LaurentPolynomial, den: LaurentPolynomial) -> tuple[LaurentPolynomial, LaurentPolynomial]:
    if num.nvars != den.nvars:
        raise DimensionMismatch("numerator and denominator live in different rings")
    n = num.nvars
    if den.is_zero():
        raise ZeroDenominator("zero denominator")
    one = LaurentPolynomial.constant(1, n)
    if num.is_zero():
        return LaurentPolynomial(n), one

    alpha = num.min_exponents()
    beta = den.min_exponents()
    N = {tuple(a - b for a, b in zip(e, alpha)): c for e, c in num.terms}
    D = {tuple(a - b for a, b in zip(e, beta)): c for e, c in den.terms}
    shift = [a - b for a, b in zip(alpha, beta)]
    up = tuple(max(k, 0) for k in shift)
    down = tuple(max(-k, 0) for k in shift)

    if len(D) == 1:
        # D is a nonzero constant after monomial extraction
        c = next(iter(D.values()))
        g = math.gcd(_mp_int_content(N), c)
        N = {e: v // g for e, v in N.items()}
        D = {e: v // g for e, v in D.items()}
    else:
        q = _mp_divexact(N, D)
        if q is not None:
            N, D = q, {(0,) * n: 1}
        else:
            g = _mp_gcd(N, D)
            if not _is_unit(g):
                N = _mp_divexact(N, g)
                D = _mp_divexact(D, g)
    if D[max(D)] < 0:
        N = _mp_scale(N, -1)
        D = _mp_scale(D, -1)
    return (LaurentPolynomial._from_dict(n, N).shift(up),
            LaurentPolynomial._from_dict(n, D).shift(down))


def ratfun_reduce(num: LaurentPolynomial, den: LaurentPolynomial) -> RationalFunction:
    """Coprime, sign-normalized representative of ``num / den``.

    Negative exponents in either argument are cleared by a monomial factor
    first.  Raises :class:`ZeroDenominator` when ``den`` is zero.
    """
    return RationalFunction(num, den)


# ---------------------------------------------------------------------------
# integer matrices
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IntegerMatrix:
    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative matrix dimension")
        entries = tuple(int(x) for x in self.entries)
        if len(entries) != self.rows * self.cols:
            raise DimensionMismatch(f"{len(entries)} entries for a {self.rows}x{self.cols} matrix")
        object.__setattr__(self, "entries", entries)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "IntegerMatrix":
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise DimensionMismatch("ragged rows")
        return cls(len(rows), ncols, tuple(x for r in rows for x in r))

    @classmethod
    def identity(cls, n: int) -> "IntegerMatrix":
        return cls(n, n, tuple(int(i == j) for i in range(n) for j in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> "IntegerMatrix":
        cols = rows if cols is None else cols
        return cls(rows, cols, (0,) * (rows * cols))

    def to_rows(self) -> list[list[int]]:
        return [list(self.entries[i * self.cols:(i + 1) * self.cols]) for i in range(self.rows)]

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def transpose(self) -> "IntegerMatrix":
        return IntegerMatrix(self.cols, self.rows, tuple(self[i, j] for j in range(self.cols) for i in range(self.rows)))

    @property
    def T(self) -> "IntegerMatrix":
        return self.transpose()

    def _same_shape(self, other: "IntegerMatrix"):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatch("matrix shapes differ")

    def __add__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        self._same_shape(other)
        return IntegerMatrix(self.rows, self.cols, tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        self._same_shape(other)
        return IntegerMatrix(self.rows, self.cols, tuple(a - b for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> "IntegerMatrix":
        return IntegerMatrix(self.rows, self.cols, tuple(-a for a in self.entries))

    def __matmul__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.cols != other.rows:
            raise DimensionMismatch(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        a, b = self.to_rows(), other.to_rows()
        bt = list(zip(*b)) if b else []
        out = [sum(x * y for x, y in zip(row, col)) for row in a for col in bt]
        return IntegerMatrix(self.rows, other.cols, tuple(out))

    def __mul__(self, k: int) -> "IntegerMatrix":
        return IntegerMatrix(self.rows, self.cols, tuple(a * k for a in self.entries))

    __rmul__ = __mul__

    def trace(self) -> int:
        if not self.is_square:
            raise NonSquare("trace of a non-square matrix")
        return sum(self[i, i] for i in range(self.rows))

    def is_nonnegative(self) -> bool:
        return all(a >= 0 for a in self.entries)

    def det(self) -> int:
        return determinant(self)

    def __str__(self) -> str:
        return str(self.to_rows())


def determinant(A: IntegerMatrix) -> int:
    """Bareiss fraction-free elimination; exact."""
    if not A.is_square:
        raise NonSquare("determinant of a non-square matrix")
    n = A.rows
    if n == 0:
        return 1
    M = A.to_rows()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k] != 0), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def charpoly(A: IntegerMatrix) -> IntPolynomial:
    """``det(sI - A)`` by the Faddeev-LeVerrier recursion in exact integers.

    Each division ``tr(A M_k) / k`` is exact over Z, so no rationals appear.
    """
    if not A.is_square:
        raise NonSquare(f"charpoly needs a square matrix, got {A.rows}x{A.cols}")
    n = A.rows
    a = A.to_rows()
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    M = [[0] * n for _ in range(n)]
    for k in range(1, n + 1):
        # M <- A @ M + c_{n-k+1} I
        AM = [[sum(a[i][t] * M[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
        c_prev = coeffs[n - k + 1]
        for i in range(n):
            AM[i][i] += c_prev
        M = AM
        tr = sum(sum(a[i][t] * M[t][i] for t in range(n)) for i in range(n))
        q, r = divmod(-tr, k)
        assert r == 0, "Faddeev-LeVerrier division must be exact over Z"
        coeffs[n - k] = q
    return IntPolynomial(tuple(coeffs))


# ---------------------------------------------------------------------------
# formatting helpers
# ---------------------------------------------------------------------------


def _power(var: str, k: int) -> str:
    if k == 0:
        return ""
    if k == 1:
        return var
    return f"{var}^{k}" if k > 0 else f"{var}^({k})"


def _format_term(c: int, mono: str) -> str:
    if not mono:
        return str(c)
    if c == 1:
        return mono
    if c == -1:
        return "-" + mono
    return f"{c}*{mono}"


def _join_terms(parts: list[str]) -> str:
    out = parts[0]
    for p in parts[1:]:
        out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
    return out
