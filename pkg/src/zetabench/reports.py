"""JSON and table rendering of results, and parsing JSON reports back.

Integers beyond 2**53 are written as decimal strings so that consumers with
double-precision numbers do not lose digits; readers accept either form.
Complex numbers are ``[re, im]`` pairs.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Any

from .archimedean import RatioCheck
from .cluster import MutationReport, Seed
from .exact_arith import IntegerMatrix, IntPolynomial, LaurentPolynomial, RationalFunction
from .euler_product import EulerProductResult, IdentityCheck
from .finite_field import PointCountRecord
from .local_zeta import LocalZetaFunction
from .operator_k import (
    ConjugacyReport,
    KTheoryResult,
    MarkovCompanion,
    SNFResult,
    TruncationReport,
    WindowStatus,
)

_SAFE_INT = 2**53


@dataclass(frozen=True)
class NumericValue:
    """A complex evaluation with an absolute error estimate."""

    s: complex
    value: complex
    abs_err_est: float


def big(n: int) -> int | str:
    return n if -_SAFE_INT <= n <= _SAFE_INT else str(n)


def unbig(v: int | str) -> int:
    return int(v)


def cpair(z: complex) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


def uncpair(v) -> complex:
    return complex(float(v[0]), float(v[1]))


def _real(x: float) -> float | str:
    return x if math.isfinite(x) else ("inf" if x > 0 else "-inf" if x < 0 else "nan")


def _unreal(x) -> float:
    return float(x)


def _matrix(M: IntegerMatrix) -> list[list[int | str]]:
    return [[big(v) for v in row] for row in M.to_rows()]


def _unmatrix(rows) -> IntegerMatrix:
    return IntegerMatrix.from_rows([[unbig(v) for v in r] for r in rows])


def _poly(P: IntPolynomial) -> list[int | str]:
    return [big(c) for c in P.coeffs]


def _laurent(p: LaurentPolynomial) -> list:
    return [[list(e), big(c)] for e, c in p.terms]


def _unlaurent(terms, nvars: int) -> LaurentPolynomial:
    return LaurentPolynomial(nvars, tuple((tuple(e), unbig(c)) for e, c in terms))


def _ratfun(v: RationalFunction) -> dict:
    return {"text": str(v), "num": _laurent(v.num), "den": _laurent(v.den), "laurent": v.is_laurent()}


def _unratfun(d: dict, nvars: int | None = None) -> RationalFunction:
    if nvars is None:
        nvars = len(d["den"][0][0])  # the denominator is never zero
    return RationalFunction(_unlaurent(d["num"], nvars), _unlaurent(d["den"], nvars))


def _unpoly(coeffs) -> IntPolynomial:
    return IntPolynomial(tuple(unbig(c) for c in coeffs))


def _maybe_c(v) -> complex | None:
    return None if v is None else uncpair(v)


def to_dict(result: Any) -> Any:
    """JSON-ready structure for any result type produced by the package."""
    if isinstance(result, PointCountRecord):
        return {"p": big(result.p), "r": result.r, "count": big(result.count), "a_p": big(result.a_p)}
    if isinstance(result, LocalZetaFunction):
        return {"q": big(result.q), "polys": [_poly(p) for p in result.polys]}
    if isinstance(result, KTheoryResult):
        return {"k0_torsion": [big(d) for d in result.k0_torsion], "k0_free_rank": result.k0_free_rank,
                "k1_rank": result.k1_rank}
    if isinstance(result, SNFResult):
        return {"U": _matrix(result.U), "D": _matrix(result.D), "V": _matrix(result.V),
                "diagonal": [big(d) for d in result.diagonal]}
    if isinstance(result, MarkovCompanion):
        return {"matrix": _matrix(result.matrix), "positive": result.positive,
                "trace": big(result.matrix.trace()) if result.matrix.rows else 0}
    if isinstance(result, ConjugacyReport):
        return {"charpoly_equal": result.charpoly_equal, "det_equal": result.det_equal,
                "trace_equal": result.trace_equal, "cokernel_equal": result.cokernel_equal,
                "all_pass": result.all_pass, "necessary_only": result.necessary_only,
                "charpoly_a": _poly(result.charpoly_a), "charpoly_b": _poly(result.charpoly_b)}
    if isinstance(result, TruncationReport):
        return {
            "sizes": list(result.sizes),
            "charpolys": [_poly(p) for p in result.polynomials],
            "windows": [{"start": w.start, "width": w.width, "stabilizes": w.stabilizes,
                         "values": [[big(v) for v in vals] for vals in w.values]} for w in result.windows],
            "stabilizing": result.stabilizing,
            "persistent_factor": _poly(result.persistent_factor),
            "heuristic": result.heuristic,
        }
    if isinstance(result, IntegerMatrix):
        return _matrix(result)
    if isinstance(result, IntPolynomial):
        return _poly(result)
    if isinstance(result, RationalFunction):
        return _ratfun(result)
    if isinstance(result, Seed):
        return {"n": result.rank, "B": _matrix(result.exchange),
                "variables": [_ratfun(v) for v in result.variables]}
    if isinstance(result, MutationReport):
        nvars = result.variables[0].nvars if result.variables else 0
        order = {v: i for i, v in enumerate(result.variables)}
        return {
            "n": nvars,
            "n_clusters": result.n_clusters,
            "n_variables": result.n_variables,
            "laurent_ok": result.laurent_ok,
            "depth_reached": result.depth_reached,
            "truncated": result.truncated,
            "variables": [_ratfun(v) for v in result.variables],
            "clusters": [sorted(order[v] for v in c) for c in result.visited],
        }
    if isinstance(result, NumericValue):
        return {"s": cpair(result.s), "value": cpair(result.value), "abs_err_est": _real(result.abs_err_est)}
    if isinstance(result, RatioCheck):
        return {"ok": result.ok, "s": cpair(result.s),
                "ratio": None if result.ratio is None else cpair(result.ratio),
                "completed": None if result.completed is None else cpair(result.completed),
                "rel_err": result.rel_err, "diagnostic": result.diagnostic}
    if isinstance(result, EulerProductResult):
        return {"s": cpair(result.s), "bound": result.bound, "primes_used_count": len(result.primes_used),
                "primes_used": list(result.primes_used), "bad_primes": list(result.bad_primes),
                "value": cpair(result.value), "tail_estimate": _real(result.tail_estimate)}
    if isinstance(result, IdentityCheck):
        return {"ok": result.ok, "s": cpair(result.s), "bound": result.bound,
                "primes_checked_count": len(result.primes_checked),
                "primes_checked": list(result.primes_checked), "exact_ok": result.exact_ok,
                "max_rel_err": _real(result.max_rel_err), "failures": list(result.failures)}
    if isinstance(result, (list, tuple)):
        return [to_dict(r) for r in result]
    if isinstance(result, dict):
        return {k: to_dict(v) for k, v in result.items()}
    if isinstance(result, bool) or result is None or isinstance(result, str):
        return result
    if isinstance(result, int):
        return big(result)
    if isinstance(result, float):
        return _real(result)
    if isinstance(result, complex):
        return cpair(result)
    raise TypeError(f"no JSON form for {type(result).__name__}")


def from_dict(kind: type, data: Any) -> Any:
    """Inverse of :func:`to_dict` for the report types."""
    if kind is PointCountRecord:
        return PointCountRecord(unbig(data["p"]), int(data["r"]), unbig(data["count"]), unbig(data["a_p"]))
    if kind is LocalZetaFunction:
        return LocalZetaFunction(unbig(data["q"]), tuple(IntPolynomial(tuple(unbig(c) for c in p))
                                                         for p in data["polys"]))
    if kind is KTheoryResult:
        return KTheoryResult(tuple(unbig(d) for d in data["k0_torsion"]), int(data["k0_free_rank"]),
                             int(data["k1_rank"]))
    if kind is SNFResult:
        return SNFResult(_unmatrix(data["U"]), _unmatrix(data["D"]), _unmatrix(data["V"]))
    if kind is MarkovCompanion:
        return MarkovCompanion(_unmatrix(data["matrix"]) if data["matrix"] else IntegerMatrix.zeros(0),
                               bool(data["positive"]))
    if kind is IntegerMatrix:
        return _unmatrix(data)
    if kind is IntPolynomial:
        return _unpoly(data)
    if kind is RationalFunction:
        return _unratfun(data)
    if kind is ConjugacyReport:
        return ConjugacyReport(bool(data["charpoly_equal"]), bool(data["det_equal"]), bool(data["trace_equal"]),
                               bool(data["cokernel_equal"]), _unpoly(data["charpoly_a"]),
                               _unpoly(data["charpoly_b"]), bool(data["necessary_only"]))
    if kind is TruncationReport:
        windows = tuple(WindowStatus(int(w["start"]), int(w["width"]),
                                     tuple(tuple(unbig(v) for v in vals) for vals in w["values"]),
                                     bool(w["stabilizes"])) for w in data["windows"])
        return TruncationReport(tuple(data["sizes"]), tuple(_unpoly(p) for p in data["charpolys"]), windows,
                                _unpoly(data["persistent_factor"]), bool(data["heuristic"]))
    if kind is Seed:
        n = int(data["n"])
        return Seed(tuple(_unratfun(v, n) for v in data["variables"]), _unmatrix(data["B"]))
    if kind is MutationReport:
        n = int(data["n"])
        variables = [_unratfun(v, n) for v in data["variables"]]
        visited = [frozenset(variables[i] for i in c) for c in data["clusters"]]
        bad = [v for v in variables if not v.is_laurent()]
        return MutationReport(visited, variables, bool(data["laurent_ok"]), int(data["depth_reached"]),
                              bool(data["truncated"]), bad)
    if kind is NumericValue:
        return NumericValue(uncpair(data["s"]), uncpair(data["value"]), _unreal(data["abs_err_est"]))
    if kind is RatioCheck:
        return RatioCheck(bool(data["ok"]), uncpair(data["s"]), _maybe_c(data["ratio"]),
                          _maybe_c(data["completed"]), data["rel_err"], data["diagnostic"])
    if kind is IdentityCheck:
        return IdentityCheck(bool(data["ok"]), uncpair(data["s"]), int(data["bound"]),
                             tuple(data["primes_checked"]), bool(data["exact_ok"]),
                             _unreal(data["max_rel_err"]), tuple(data["failures"]))
    if kind is EulerProductResult:
        return EulerProductResult(uncpair(data["s"]), int(data["bound"]), tuple(data["primes_used"]),
                                  tuple(data["bad_primes"]), uncpair(data["value"]),
                                  _unreal(data["tail_estimate"]))
    raise TypeError(f"cannot parse a {kind.__name__} report")


def report_from_json(kind: type, text: str) -> Any:
    return from_dict(kind, json.loads(text))


def emit_report(result: Any, format: str = "json") -> str:
    """Render ``result`` deterministically as JSON or as a plain-text table."""
    data = to_dict(result)
    if format == "json":
        return json.dumps(data)
    if format == "table":
        return _table(data)
    raise ValueError(f"unknown format {format!r}")


def _is_matrix(v) -> bool:
    return isinstance(v, list) and bool(v) and all(isinstance(r, list) for r in v) \
        and all(not isinstance(x, (list, dict)) for r in v for x in r)


def _matrix_lines(rows, indent: str = "") -> list[str]:
    if not rows or not rows[0]:
        return [indent + "[]"]
    cells = [[str(x) for x in r] for r in rows]
    width = max(len(c) for r in cells for c in r)
    return [indent + " ".join(c.rjust(width) for c in r) for r in cells]


def _table(data: Any) -> str:
    if isinstance(data, list):
        if _is_matrix(data):
            return "\n".join(_matrix_lines(data))
        if not data:
            return "(none)"
        return "\n".join(_table(v) if isinstance(v, (dict, list)) else str(v) for v in data)
    if not isinstance(data, dict):
        return str(data)
    width = max((len(k) for k in data), default=0)
    lines = []
    for key, value in data.items():
        if _is_matrix(value):
            lines.append(f"{key}:")
            lines.extend(_matrix_lines(value, "  "))
        elif isinstance(value, list) and value and all(isinstance(v, dict) for v in value):
            lines.append(f"{key}:")
            for v in value:
                shown = {k: v[k] for k in ("text", "laurent", "start", "width", "stabilizes") if k in v}
                lines.append("  " + ", ".join(f"{k}={x}" for k, x in (shown or v).items()))
        else:
            lines.append(f"{key.ljust(width)}  {value}")
    return "\n".join(lines)
