"""Integer-matrix invariants of Cuntz-Krieger and truncated Cuntz-Pimsner algebras.

K_0(O_A) = coker(1 - A^t) and K_1(O_A) = ker(1 - A^t); both are read off a
Smith normal form.  Infinite row-finite matrices are handled through
:class:`BandedOperatorSpec` and studied by principal truncation only.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Mapping, NamedTuple, Sequence

from .errors import BandViolation, DimensionMismatch, NegativeEntry, NonSquare, NonUnitConstantTerm
from .exact_arith import IntegerMatrix, IntPolynomial, charpoly, determinant, poly_divexact, poly_gcd


# ---------------------------------------------------------------------------
# Smith normal form
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SNFResult:
    U: IntegerMatrix
    D: IntegerMatrix
    V: IntegerMatrix

    @property
    def diagonal(self) -> list[int]:
        return [self.D[i, i] for i in range(min(self.D.rows, self.D.cols))]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)


def smith_normal_form(A: IntegerMatrix) -> SNFResult:
    """Unimodular U, V with U @ A @ V = D diagonal, d_1 | d_2 | ..., d_i >= 0.

    Pivots on the smallest nonzero absolute value in the remaining block.
    """
    m, n = A.rows, A.cols
    M = A.to_rows()
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        M[i], M[j] = M[j], M[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in M:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, k):  # row_dst += k * row_src
        M[dst] = [a + k * b for a, b in zip(M[dst], M[src])]
        U[dst] = [a + k * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, k):  # col_dst += k * col_src
        for row in M:
            row[dst] += k * row[src]
        for row in V:
            row[dst] += k * row[src]

    for t in range(min(m, n)):
        while True:
            pivot = None
            for i in range(t, m):
                for j in range(t, n):
                    if M[i][j] and (pivot is None or abs(M[i][j]) < abs(M[pivot[0]][pivot[1]])):
                        pivot = (i, j)
            if pivot is None:
                break
            swap_rows(t, pivot[0])
            swap_cols(t, pivot[1])
            p = M[t][t]
            dirty = False
            for i in range(t + 1, m):
                if M[i][t]:
                    add_row(i, t, -(M[i][t] // p))
                    dirty = dirty or M[i][t] != 0
            for j in range(t + 1, n):
                if M[t][j]:
                    add_col(j, t, -(M[t][j] // p))
                    dirty = dirty or M[t][j] != 0
            if dirty:
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if M[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if pivot is None:
            break
        if M[t][t] < 0:
            M[t] = [-a for a in M[t]]
            U[t] = [-a for a in U[t]]

    return SNFResult(IntegerMatrix.from_rows(U), IntegerMatrix.from_rows(M), IntegerMatrix.from_rows(V))


def cokernel_invariants(M: IntegerMatrix) -> tuple[list[int], int]:
    """Invariant factors > 1 and free rank of Z^rows / M Z^cols."""
    snf = smith_normal_form(M)
    diag = snf.diagonal
    torsion = [d for d in diag if d > 1]
    free_rank = M.rows - snf.rank
    return torsion, free_rank


# ---------------------------------------------------------------------------
# K-theory of O_A
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class KTheoryResult:
    k0_torsion: tuple[int, ...]
    k0_free_rank: int
    k1_rank: int

    def __post_init__(self):
        object.__setattr__(self, "k0_torsion", tuple(self.k0_torsion))
        if self.k0_free_rank != self.k1_rank:
            raise ValueError("K_0 free rank and K_1 rank must agree for a square matrix")

    def describe(self) -> tuple[str, str]:
        parts = [f"Z/{d}" for d in self.k0_torsion]
        if self.k0_free_rank:
            parts.insert(0, "Z" if self.k0_free_rank == 1 else f"Z^{self.k0_free_rank}")
        k0 = " + ".join(parts) or "0"
        k1 = "0" if not self.k1_rank else ("Z" if self.k1_rank == 1 else f"Z^{self.k1_rank}")
        return k0, k1


def _require_square_nonnegative(A: IntegerMatrix) -> None:
    if not A.is_square:
        raise NonSquare(f"expected a square matrix, got {A.rows}x{A.cols}")
    if not A.is_nonnegative():
        raise NegativeEntry("matrix has a negative entry")


def ck_k_theory(A: IntegerMatrix, *, require_nonnegative: bool = True) -> KTheoryResult:
    """K_0 and K_1 of the Cuntz-Krieger algebra of ``A`` via the SNF of 1 - A^t.

    ``require_nonnegative=False`` evaluates the same cokernel/kernel invariants
    for an arbitrary square integer matrix (e.g. a GL(Z)-conjugate of a
    nonnegative one), which no longer defines an algebra by itself.
    """
    if require_nonnegative:
        _require_square_nonnegative(A)
    elif not A.is_square:
        raise NonSquare(f"expected a square matrix, got {A.rows}x{A.cols}")
    torsion, free = cokernel_invariants(IntegerMatrix.identity(A.rows) - A.T)
    return KTheoryResult(tuple(torsion), free, free)


# ---------------------------------------------------------------------------
# irreducibility and row-finiteness
# ---------------------------------------------------------------------------


def is_permutation_pattern(A: IntegerMatrix) -> bool:
    n = A.rows
    support = [[A[i, j] != 0 for j in range(n)] for i in range(n)]
    return all(sum(r) == 1 for r in support) and all(sum(c) == 1 for c in zip(*support))


def is_irreducible(A: IntegerMatrix) -> bool:
    """Some power A^k (k <= n^2) is entrywise positive and A is not a permutation."""
    _require_square_nonnegative(A)
    n = A.rows
    if n == 0 or is_permutation_pattern(A):
        return False
    full = (1 << n) - 1
    rows = [sum(1 << j for j in range(n) if A[i, j]) for i in range(n)]
    power = rows[:]
    for _ in range(n * n):
        if all(r == full for r in power):
            return True
        # boolean product power @ A on row bitmasks
        power = [_row_times(r, rows) for r in power]
    return all(r == full for r in power)


def _row_times(mask: int, rows: list[int]) -> int:
    out = 0
    j = 0
    while mask:
        if mask & 1:
            out |= rows[j]
        mask >>= 1
        j += 1
    return out


RowGenerator = Callable[[int], Mapping[int, int]]


@dataclass(frozen=True)
class BandedOperatorSpec:
    """A row-finite N x N matrix, 1-based, given row by row.

    ``row_generator(i)`` returns ``{j: a_ij}`` for the nonzero entries of
    row ``i``; every ``j`` must satisfy ``|i - j| <= bandwidth``.
    """

    row_generator: RowGenerator
    bandwidth: int
    description: str = field(default="custom", compare=False)

    def row(self, i: int) -> dict[int, int]:
        entries = {int(j): int(v) for j, v in self.row_generator(i).items() if v}
        for j in entries:
            if j < 1 or abs(i - j) > self.bandwidth:
                raise BandViolation(f"entry ({i}, {j}) lies outside bandwidth {self.bandwidth}")
        return entries

    def truncate(self, N: int) -> IntegerMatrix:
        """Leading principal N x N block."""
        out = [[0] * N for _ in range(N)]
        for i in range(1, N + 1):
            for j, v in self.row(i).items():
                if j <= N:
                    out[i - 1][j - 1] = v
        return IntegerMatrix.from_rows(out)

    @classmethod
    def diagonal(cls, value: int = 1) -> "BandedOperatorSpec":
        return cls(lambda i: {i: value}, 0, f"diagonal({value})")

    @classmethod
    def tridiagonal(cls, sub: int = 1, diag: int = 0, sup: int = 1) -> "BandedOperatorSpec":
        def gen(i):
            row = {i: diag, i + 1: sup}
            if i > 1:
                row[i - 1] = sub
            return row
        return cls(gen, 1, f"tridiagonal({sub},{diag},{sup})")

    @classmethod
    def windowed(cls, bandwidth: int, window: Sequence[int] | None = None,
                 entries: Mapping[tuple[int, int], int] | None = None) -> "BandedOperatorSpec":
        """Toeplitz band ``window`` (offsets -bandwidth..bandwidth) plus explicit overrides."""
        window = list(window) if window is not None else [0] * (2 * bandwidth + 1)
        if len(window) != 2 * bandwidth + 1:
            raise ValueError("window must have 2*bandwidth+1 entries")
        overrides: dict[int, dict[int, int]] = {}
        for (i, j), v in (entries or {}).items():
            overrides.setdefault(int(i), {})[int(j)] = int(v)

        def gen(i):
            row = {i + off: window[off + bandwidth] for off in range(-bandwidth, bandwidth + 1) if i + off >= 1}
            row.update(overrides.get(i, {}))
            return row
        return cls(gen, bandwidth, "windowed")


def is_row_finite(spec: BandedOperatorSpec, N: int) -> bool:
    """Rows 1..N each have finite support inside the declared band.

    The certificate covers only the examined window of N rows; a violation
    raises :class:`BandViolation`.
    """
    if N < 1:
        raise ValueError("window size must be >= 1")
    for i in range(1, N + 1):
        spec.row(i)
    return True


# ---------------------------------------------------------------------------
# Frobenius companions and conjugacy invariants
# ---------------------------------------------------------------------------


class MarkovCompanion(NamedTuple):
    matrix: IntegerMatrix
    positive: bool


def markov_companion(P: IntPolynomial) -> MarkovCompanion:
    """Companion matrix of ``u^d P(1/u)``, so its trace is minus the u-coefficient of P.

    Positivity of the result is reported, not enforced.
    """
    if P(0) != 1:
        raise NonUnitConstantTerm(f"P(0) = {P(0)}, expected 1")
    d = P.degree
    # characteristic polynomial lambda^d + c_1 lambda^{d-1} + ... + c_d
    c = [P.coeff(k) for k in range(d + 1)]
    rows = [[0] * d for _ in range(d)]
    for i in range(1, d):
        rows[i][i - 1] = 1
    for i in range(d):
        rows[i][d - 1] = -c[d - i]
    M = IntegerMatrix.from_rows(rows) if d else IntegerMatrix.zeros(0)
    return MarkovCompanion(M, M.is_nonnegative())


@dataclass(frozen=True)
class ConjugacyReport:
    charpoly_equal: bool
    det_equal: bool
    trace_equal: bool
    cokernel_equal: bool
    charpoly_a: IntPolynomial
    charpoly_b: IntPolynomial
    # passing every check is necessary for GL(Z)-conjugacy, never sufficient
    necessary_only: bool = True

    @property
    def all_pass(self) -> bool:
        return self.charpoly_equal and self.det_equal and self.trace_equal and self.cokernel_equal


def conjugacy_invariant_check(A: IntegerMatrix, B: IntegerMatrix) -> ConjugacyReport:
    if not (A.is_square and B.is_square):
        raise NonSquare("conjugacy check needs square matrices")
    if A.rows != B.rows:
        raise DimensionMismatch(f"dimensions differ: {A.rows} vs {B.rows}")
    n = A.rows
    ca, cb = charpoly(A), charpoly(B)
    I = IntegerMatrix.identity(n)
    return ConjugacyReport(
        charpoly_equal=ca == cb,
        det_equal=determinant(A) == determinant(B),
        trace_equal=A.trace() == B.trace(),
        cokernel_equal=cokernel_invariants(I - A.T) == cokernel_invariants(I - B.T),
        charpoly_a=ca,
        charpoly_b=cb,
    )


def random_unimodular(n: int, rng: random.Random, steps: int = 6, max_multiplier: int = 2) -> tuple[IntegerMatrix, IntegerMatrix]:
    """A random U in GL_n(Z) and its inverse, built from elementary row operations."""
    U = [[int(i == j) for j in range(n)] for i in range(n)]
    Uinv = [row[:] for row in U]
    for _ in range(steps):
        if n < 2:
            break
        i, j = rng.sample(range(n), 2)
        k = rng.choice([m for m in range(-max_multiplier, max_multiplier + 1) if m])
        # U <- E U with E = 1 + k e_ij;  U^{-1} <- U^{-1} E^{-1}
        U[i] = [a + k * b for a, b in zip(U[i], U[j])]
        for row in Uinv:
            row[j] -= k * row[i]
    if n and rng.random() < 0.5:
        U[0] = [-a for a in U[0]]
        for row in Uinv:
            row[0] = -row[0]
    return IntegerMatrix.from_rows(U), IntegerMatrix.from_rows(Uinv)


# ---------------------------------------------------------------------------
# truncation analysis
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class WindowStatus:
    start: int  # lowest power of s in the window
    width: int
    values: tuple[tuple[int, ...], ...]  # one tuple per examined size
    stabilizes: bool


@dataclass(frozen=True)
class TruncationReport:
    sizes: tuple[int, ...]
    polynomials: tuple[IntPolynomial, ...]
    windows: tuple[WindowStatus, ...]
    persistent_factor: IntPolynomial
    heuristic: bool = True

    @property
    def stabilizing(self) -> bool:
        return any(w.stabilizes for w in self.windows)

    @property
    def has_persistent_factor(self) -> bool:
        return self.persistent_factor.degree > 0


def _strip_zero_roots(p: IntPolynomial) -> IntPolynomial:
    k = 0
    while k < len(p.coeffs) and p.coeffs[k] == 0:
        k += 1
    return IntPolynomial(p.coeffs[k:])


def truncated_charpoly_sequence(spec: BandedOperatorSpec, sizes: Sequence[int], width: int = 3,
                                tail: int = 3) -> TruncationReport:
    """Characteristic polynomials of the leading N x N blocks, N in ``sizes``.

    Coefficients are grouped into windows of ``width`` consecutive powers
    starting from s^0.  A window stabilizes when it is identical over the last
    ``tail`` sizes and not identically zero.  The persistent factor is the gcd
    of all polynomials after removing their roots at s = 0.  Both criteria are
    heuristics about the infinite operator, not proofs.
    """
    sizes = tuple(int(n) for n in sizes)
    if not sizes or any(b <= a for a, b in zip(sizes, sizes[1:])) or sizes[0] < 1:
        raise ValueError("sizes must be a strictly ascending list of positive integers")
    polys = tuple(charpoly(spec.truncate(n)) for n in sizes)

    windows = []
    top = min(p.degree for p in polys)
    for start in range(0, top + 1, width):
        values = tuple(tuple(p.coeff(k) for k in range(start, start + width)) for p in polys)
        last = values[-tail:]
        stable = len(values) >= tail and len(set(last)) == 1 and any(last[0])
        windows.append(WindowStatus(start, width, values, stable))

    g = IntPolynomial()
    for p in polys:
        g = poly_gcd(g, _strip_zero_roots(p))
    return TruncationReport(sizes, polys, tuple(windows), g)


def persistent_factor_multiplicity(report: TruncationReport, factor: IntPolynomial) -> int:
    """How many times ``factor`` divides the persistent factor."""
    k, g = 0, report.persistent_factor
    while g.degree > 0:
        q = poly_divexact(g, factor)
        if q is None:
            break
        g, k = q, k + 1
    return k
