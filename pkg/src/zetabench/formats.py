"""Parsers for the textual input formats accepted by the CLI.

Matrices come as a JSON 2-D array or CSV, banded operators and seeds as JSON
objects, rational functions as arithmetic expressions in x1..xn.
"""

from __future__ import annotations

import ast
import csv
import io
import json
import math

from .cluster import Seed
from .exact_arith import IntegerMatrix, IntPolynomial, RationalFunction
from .operator_k import BandedOperatorSpec


def parse_matrix(text: str) -> IntegerMatrix:
    text = text.strip()
    if text.startswith("["):
        rows = json.loads(text)
    else:
        rows = [[int(v) for v in row if v.strip()] for row in csv.reader(io.StringIO(text)) if row]
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise ValueError("matrix must be a 2-D array")
    if len({len(r) for r in rows}) > 1:
        raise ValueError("matrix rows have different lengths")
    for r in rows:
        for v in r:
            if isinstance(v, bool) or not isinstance(v, (int, str)):
                raise ValueError(f"matrix entry {v!r} is not an integer")
    return IntegerMatrix.from_rows([[int(v) for v in r] for r in rows])


def parse_int_list(text: str) -> list[int]:
    text = text.strip()
    if text.startswith("["):
        return [int(v) for v in json.loads(text)]
    return [int(v) for v in text.split(",") if v.strip()]


def parse_polynomial(text: str) -> IntPolynomial:
    """Coefficient list, constant term first: ``1,3,5`` or ``[1, 3, 5]``."""
    return IntPolynomial(tuple(parse_int_list(text)))


def parse_complex(text: str) -> complex:
    """``3``, ``2+3j``, ``0.5+14.1i``, ``2,3`` or ``[2, 3]``."""
    text = text.strip()
    if text.startswith("["):
        re_, im = json.loads(text)
        return complex(float(re_), float(im))
    if "," in text:
        re_, im = text.split(",")
        return complex(float(re_), float(im))
    return complex(text.replace(" ", "").replace("i", "j"))


def parse_positive_real(text: str) -> float:
    """A float, or ``2pi`` / ``2*pi`` / ``tau``."""
    key = text.strip().lower().replace("*", "")
    if key in ("2pi", "tau"):
        return 2 * math.pi
    if key == "pi":
        return math.pi
    return float(text)


def parse_operator(text: str) -> BandedOperatorSpec:
    """Banded operator JSON.

    ``{"rule": "diagonal", "value": 1}``,
    ``{"rule": "tridiagonal", "sub": 1, "diag": 0, "super": 1}``, or
    ``{"rule": "windows", "bandwidth": w, "window": [...2w+1 values...],
    "entries": [[i, j, v], ...]}`` (1-based explicit overrides).
    """
    data = json.loads(text)
    rule = data.get("rule")
    if rule == "diagonal":
        spec = BandedOperatorSpec.diagonal(int(data.get("value", 1)))
    elif rule == "tridiagonal":
        spec = BandedOperatorSpec.tridiagonal(int(data.get("sub", 1)), int(data.get("diag", 0)),
                                              int(data.get("super", 1)))
    elif rule == "windows":
        entries = {(int(i), int(j)): int(v) for i, j, v in data.get("entries", [])}
        spec = BandedOperatorSpec.windowed(int(data["bandwidth"]), data.get("window"), entries)
    else:
        raise ValueError(f"unknown operator rule {rule!r}")
    if "bandwidth" in data and int(data["bandwidth"]) != spec.bandwidth:
        spec = BandedOperatorSpec(spec.row_generator, int(data["bandwidth"]), spec.description)
    return spec


def parse_seed(text: str) -> Seed:
    """``{"n": int, "B": [[int]]}``; ``n`` is optional when ``B`` is given."""
    data = json.loads(text)
    if isinstance(data, list):
        data = {"B": data}
    B = IntegerMatrix.from_rows(data["B"])
    if "n" in data and int(data["n"]) != B.rows:
        raise ValueError(f"n = {data['n']} but B is {B.rows}x{B.cols}")
    return Seed.initial(B)


_BINOPS = (ast.Add, ast.Sub, ast.Mult, ast.Div, ast.Pow)


def parse_rational_function(text: str, nvars: int | None = None) -> RationalFunction:
    """Arithmetic expression over integers and x1..xn (``^`` means power)."""
    tree = ast.parse(text.replace("^", "**"), mode="eval")
    names = {node.id for node in ast.walk(tree) if isinstance(node, ast.Name)}
    indices = []
    for name in names:
        if not (name.startswith("x") and name[1:].isdigit() and int(name[1:]) >= 1):
            raise ValueError(f"unknown variable {name!r}; use x1, x2, ...")
        indices.append(int(name[1:]))
    n = nvars if nvars is not None else max(indices, default=1)
    if indices and max(indices) > n:
        raise ValueError(f"variable x{max(indices)} exceeds n = {n}")

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
            return RationalFunction.constant(node.value, n)
        if isinstance(node, ast.Name):
            return RationalFunction.variable(int(node.id[1:]) - 1, n)
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp) and isinstance(node.op, _BINOPS):
            if isinstance(node.op, ast.Pow):
                exp = node.right
                sign = 1
                if isinstance(exp, ast.UnaryOp) and isinstance(exp.op, ast.USub):
                    exp, sign = exp.operand, -1
                if not (isinstance(exp, ast.Constant) and isinstance(exp.value, int)):
                    raise ValueError("exponents must be integer literals")
                return ev(node.left) ** (sign * exp.value)
            a, b = ev(node.left), ev(node.right)
            op = node.op
            if isinstance(op, ast.Add):
                return a + b
            if isinstance(op, ast.Sub):
                return a - b
            if isinstance(op, ast.Mult):
                return a * b
            return a / b
        raise ValueError(f"unsupported syntax in {text!r}")

    return ev(tree)
