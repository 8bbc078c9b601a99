"""Seeds, mutation and exhaustive mutation closure for skew-symmetric cluster algebras."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

from .errors import BudgetExceeded, DirectionOutOfRange
from .exact_arith import IntegerMatrix, LaurentPolynomial, RationalFunction

DEFAULT_BUDGET = 10_000


def is_skew_symmetric(B: IntegerMatrix) -> bool:
    return B.is_square and all(B[i, j] == -B[j, i] for i in range(B.rows) for j in range(B.rows))


@dataclass(frozen=True)
class Seed:
    variables: tuple[RationalFunction, ...]
    exchange: IntegerMatrix

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        if not is_skew_symmetric(self.exchange):
            raise ValueError("exchange matrix must be square and skew-symmetric")
        if len(self.variables) != self.exchange.rows:
            raise ValueError(f"{len(self.variables)} variables for a rank-{self.exchange.rows} exchange matrix")

    @classmethod
    def initial(cls, B: IntegerMatrix | Sequence[Sequence[int]]) -> "Seed":
        if not isinstance(B, IntegerMatrix):
            B = IntegerMatrix.from_rows(B)
        n = B.rows
        return cls(tuple(RationalFunction.variable(i, n) for i in range(n)), B)

    @property
    def rank(self) -> int:
        return self.exchange.rows

    @property
    def cluster(self) -> frozenset[RationalFunction]:
        """The seed's cluster as an unordered set; positions are only labels."""
        return frozenset(self.variables)


def _exchange_monomial(variables: Sequence[RationalFunction], column: Sequence[int], sign: int):
    """Numerator and denominator of prod_i x_i^{max(sign * b_ik, 0)}."""
    n = variables[0].nvars
    num = LaurentPolynomial.constant(1, n)
    den = LaurentPolynomial.constant(1, n)
    for x, b in zip(variables, column):
        e = max(sign * b, 0)
        if e:
            num = num * x.num ** e
            den = den * x.den ** e
    return num, den


def mutate(seed: Seed, k: int) -> Seed:
    """Mutation in direction ``k`` (1-based).

    x_k x_k' = prod x_i^{[b_ik]_+} + prod x_i^{[-b_ik]_+}, and B' flips the sign of
    row and column k and adds (|b_ik| b_kj + b_ik |b_kj|) / 2 elsewhere.
    """
    n = seed.rank
    if not 1 <= k <= n:
        raise DirectionOutOfRange(f"direction {k} outside 1..{n}")
    c = k - 1
    B = seed.exchange.to_rows()
    column = [B[i][c] for i in range(n)]
    xs = seed.variables

    pn, pd = _exchange_monomial(xs, column, +1)
    qn, qd = _exchange_monomial(xs, column, -1)
    xk = xs[c]
    # ((pn/pd) + (qn/qd)) / (xk.num/xk.den), reduced once
    new_var = RationalFunction((pn * qd + qn * pd) * xk.den, pd * qd * xk.num)

    B2 = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if i == c or j == c:
                B2[i][j] = -B[i][j]
            else:
                B2[i][j] = B[i][j] + (abs(B[i][c]) * B[c][j] + B[i][c] * abs(B[c][j])) // 2
    variables = xs[:c] + (new_var,) + xs[c + 1:]
    return Seed(variables, IntegerMatrix.from_rows(B2))


def is_laurent(v: RationalFunction) -> bool:
    """``v`` lies in Z[x^{+-1}]: its reduced denominator is a single term."""
    return v.is_laurent() and v.den.terms[0][1] == 1


@dataclass
class MutationReport:
    visited: list[frozenset[RationalFunction]]
    variables: list[RationalFunction]
    laurent_ok: bool
    depth_reached: int
    truncated: bool
    non_laurent: list[RationalFunction] = field(default_factory=list)

    @property
    def n_clusters(self) -> int:
        return len(self.visited)

    @property
    def n_variables(self) -> int:
        return len(self.variables)


def mutation_closure(seed: Seed, max_seeds: int = DEFAULT_BUDGET, *, raise_on_budget: bool = False) -> MutationReport:
    """Breadth-first closure of ``seed`` under mutation in every direction.

    Clusters are deduplicated as unordered sets of variables.  Exploration
    stops once ``max_seeds`` clusters are known and a further new one turns
    up; the report is then flagged ``truncated`` (or :class:`BudgetExceeded`
    is raised carrying it, if ``raise_on_budget``).
    """
    if max_seeds < 1:
        raise ValueError("max_seeds must be >= 1")
    seen = {seed.cluster}
    visited = [seed.cluster]
    variables: dict[RationalFunction, None] = dict.fromkeys(seed.variables)
    bad: list[RationalFunction] = [v for v in seed.variables if not is_laurent(v)]
    queue = deque([(seed, 0)])
    depth = 0
    truncated = False

    while queue and not truncated:
        current, d = queue.popleft()
        for k in range(1, current.rank + 1):
            nxt = mutate(current, k)
            key = nxt.cluster
            if key in seen:
                continue
            if len(visited) >= max_seeds:
                truncated = True
                break
            seen.add(key)
            visited.append(key)
            depth = max(depth, d + 1)
            new_var = nxt.variables[k - 1]
            if new_var not in variables:
                variables[new_var] = None
                if not is_laurent(new_var):
                    bad.append(new_var)
            queue.append((nxt, d + 1))

    report = MutationReport(visited, list(variables), not bad, depth, truncated, bad)
    if truncated and raise_on_budget:
        raise BudgetExceeded(f"mutation closure exceeded {max_seeds} clusters", report)
    return report
