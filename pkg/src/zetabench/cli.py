"""Command-line front end.

Each verb parses its inputs, calls one library routine and prints a report.
Exit status is 0 on success, 2 on a usage error and 1 when the input is
well formed but outside the routine's domain (bad reduction, a pole, ...);
in that last case a JSON ``{"error": {...}}`` object goes to stdout and a
one-line diagnostic to stderr.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from typing import Callable, Sequence

from . import archimedean as arch
from .cluster import Seed, mutate, mutation_closure
from .errors import BudgetExceeded, DomainError
from .euler_product import hasse_weil_truncated, l_function_truncated, zeta_identity_check
from .exact_arith import IntegerMatrix
from .finite_field import (
    count_points_charsum,
    count_points_extension,
    count_points_naive,
    counts_over_extensions,
    parse_curve,
)
from .formats import (
    parse_complex,
    parse_int_list,
    parse_matrix,
    parse_operator,
    parse_polynomial,
    parse_positive_real,
    parse_rational_function,
    parse_seed,
)
from .local_zeta import functional_eq_check, local_zeta_curve, rationality_check, weil_rh_check
from .operator_k import (
    ck_k_theory,
    is_irreducible,
    is_permutation_pattern,
    markov_companion,
    random_unimodular,
    smith_normal_form,
    truncated_charpoly_sequence,
)
from .reports import NumericValue, emit_report, to_dict

DEFAULT_BUDGET = 10_000
# Lanczos (g = 7, n = 9) relative accuracy observed against mpmath
GAMMA_REL_ERR = 2e-13


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def __init__(self, *args, **kwargs):
        kwargs.setdefault("allow_abbrev", False)
        super().__init__(*args, **kwargs)

    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _read_input(args, name: str) -> str:
    value = getattr(args, name, None)
    if value is not None:
        return value
    if getattr(args, "stdin", False):
        return sys.stdin.read()
    raise UsageError(f"--{name.replace('_', '-')} is required (or pass --stdin)")


def _matrix(args) -> IntegerMatrix:
    return parse_matrix(_read_input(args, "matrix"))


# ---------------------------------------------------------------------------
# verbs
# ---------------------------------------------------------------------------


def cmd_count(args):
    curve = parse_curve(args.curve)
    if args.r > 1:
        return count_points_extension(curve, args.prime, args.r)
    naive = count_points_naive(curve, args.prime)
    if args.method == "naive":
        return naive
    fast = count_points_charsum(curve, args.prime)
    if args.method == "both" and fast != naive:
        raise DomainError(f"counters disagree at p={args.prime}: {naive.count} vs {fast.count}")
    return fast


def cmd_local_zeta(args):
    curve = parse_curve(args.curve)
    zeta = local_zeta_curve(curve, args.prime)
    counts = counts_over_extensions(curve, args.prime, args.m)
    P1 = zeta.polys[1]
    return {
        **to_dict(zeta),
        "numerator": zeta.numerator().format(),
        "denominator": zeta.denominator().format(),
        "counts": counts,
        "rationality": rationality_check(zeta, counts),
        "weil_rh": weil_rh_check(P1, zeta.q, 1),
        "functional_equation": functional_eq_check(P1, zeta.q, 1),
    }


def cmd_k_theory(args):
    A = _matrix(args)
    result = ck_k_theory(A)
    if not args.conjugates:
        return result
    rng = random.Random(args.seed)
    mismatches = 0
    for _ in range(args.conjugates):
        U, Uinv = random_unimodular(A.rows, rng)
        if ck_k_theory(U @ A @ Uinv, require_nonnegative=False) != result:
            mismatches += 1
    return {**to_dict(result), "conjugates_tested": args.conjugates, "conjugate_mismatches": mismatches,
            "seed": args.seed}


def cmd_snf(args):
    return smith_normal_form(_matrix(args))


def cmd_irreducible(args):
    A = _matrix(args)
    return {"irreducible": is_irreducible(A), "permutation": is_permutation_pattern(A)}


def cmd_markov(args):
    comp = markov_companion(parse_polynomial(args.poly))
    out = to_dict(comp)
    if comp.matrix.rows and comp.positive:
        out["k_theory"] = to_dict(ck_k_theory(comp.matrix))
    return out


def cmd_truncate(args):
    spec = parse_operator(_read_input(args, "operator"))
    return truncated_charpoly_sequence(spec, parse_int_list(args.sizes), width=args.width)


def _seed(args) -> Seed:
    return parse_seed(_read_input(args, "B"))


def cmd_mutate(args):
    seed = _seed(args)
    for k in args.k:
        seed = mutate(seed, k)
    return seed


def cmd_closure(args):
    budget = args.budget if args.budget is not None else DEFAULT_BUDGET
    return mutation_closure(_seed(args), max_seeds=budget)


def cmd_laurent(args):
    return parse_rational_function(args.expr, args.n)


def _numeric(s: complex, value: complex, err: float) -> NumericValue:
    return NumericValue(s, value, err)


def cmd_gamma(args):
    s = parse_complex(args.s)
    v = arch.gamma(s)
    return _numeric(s, v, GAMMA_REL_ERR * abs(v))


def cmd_zeta(args):
    s = parse_complex(args.s)
    v, err = arch.riemann_zeta_with_error(s)
    return _numeric(s, v, err)


def cmd_completed(args):
    s = parse_complex(args.s)
    v = arch.completed_zeta(s)
    _, err = arch.riemann_zeta_with_error(s)
    prefactor = 2 ** -0.5 * arch.gamma_r(s)
    return _numeric(s, v, abs(prefactor) * err + GAMMA_REL_ERR * abs(v))


def cmd_char_inf(args):
    s = parse_complex(args.s)
    v = arch.char_a_infinity(args.i, s)
    if args.i != 1:
        return _numeric(s, v, 0.0)
    if s == 1:
        # removable singularity; value is 2^{-5/2} pi^{-5/2} Gamma(1/2) exactly
        return _numeric(s, v, GAMMA_REL_ERR * abs(v))
    # char_1 = (2 pi)^{-2} s (s - 1) Z(s)
    _, err = arch.riemann_zeta_with_error(s)
    prefactor = arch.TWO_PI ** -2 * s * (s - 1) * 2 ** -0.5 * arch.gamma_r(s)
    return _numeric(s, v, abs(prefactor) * err + GAMMA_REL_ERR * abs(v))


def cmd_zeros(args):
    return arch.find_critical_zeros(args.t_from, args.t_to, step=args.step, tol=args.tol)


def cmd_regdet(args):
    a = parse_complex(args.a)
    scale = parse_positive_real(args.scale)
    v = arch.regularized_det_arith_progression(a, scale)
    closed = arch.lerch_closed_form(a, scale)
    return {**to_dict(NumericValue(a, v, abs(v - closed))), "closed_form": [closed.real, closed.imag],
            "scale": scale}


def cmd_euler(args):
    return hasse_weil_truncated(parse_curve(args.curve), parse_complex(args.s), args.bound)


def cmd_l_function(args):
    return l_function_truncated(parse_curve(args.curve), parse_complex(args.s), args.bound)


def cmd_identity_check(args):
    return zeta_identity_check(parse_curve(args.curve), parse_complex(args.s), args.bound, rtol=args.rtol)


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def _global_flags(parser: argparse.ArgumentParser, suppress: bool) -> None:
    default = argparse.SUPPRESS if suppress else None
    parser.add_argument("--format", choices=("json", "table"), default=argparse.SUPPRESS if suppress else "json")
    parser.add_argument("--seed", type=int, default=argparse.SUPPRESS if suppress else 0,
                        help="RNG seed for randomized checks")
    parser.add_argument("--budget", type=int, default=default, help="seed budget for closure")
    parser.add_argument("--stdin", action="store_true", default=argparse.SUPPRESS if suppress else False,
                        help="read the matrix / seed / operator JSON from stdin")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="zetabench", description=__doc__.splitlines()[0])
    _global_flags(parser, suppress=False)
    common = _Parser(add_help=False)
    _global_flags(common, suppress=True)
    sub = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    def verb(name: str, fn: Callable, help: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, parents=[common], help=help)
        p.set_defaults(fn=fn)
        return p

    p = verb("count", cmd_count, "points on y^2 = x^3 + ax + b over F_p or F_{p^r}")
    p.add_argument("--curve", required=True, help="a=<int>,b=<int> or JSON")
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--r", type=int, default=1, help="extension degree")
    p.add_argument("--method", choices=("charsum", "naive", "both"), default="both")

    p = verb("local-zeta", cmd_local_zeta, "local zeta function of a curve at p")
    p.add_argument("--curve", required=True)
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--m", type=int, default=6, help="number of extension counts to check")

    p = verb("k-theory", cmd_k_theory, "K_0 and K_1 of the Cuntz-Krieger algebra of A")
    p.add_argument("--matrix")
    p.add_argument("--conjugates", type=int, default=0, help="also test N random GL_n(Z) conjugates")

    p = verb("snf", cmd_snf, "Smith normal form U A V = D")
    p.add_argument("--matrix")

    p = verb("irreducible", cmd_irreducible, "irreducibility of a nonnegative matrix")
    p.add_argument("--matrix")

    p = verb("markov", cmd_markov, "companion matrix of a reciprocal characteristic polynomial")
    p.add_argument("--poly", required=True, help="coefficients, constant term first")

    p = verb("truncate", cmd_truncate, "charpolys of principal truncations of a banded operator")
    p.add_argument("--operator")
    p.add_argument("--sizes", required=True, help="e.g. 4,5,6,7")
    p.add_argument("--width", type=int, default=3)

    p = verb("mutate", cmd_mutate, "mutate the initial seed of B in directions k (1-based)")
    p.add_argument("--B", dest="B")
    p.add_argument("--k", type=int, nargs="+", required=True)

    p = verb("closure", cmd_closure, "breadth-first mutation closure")
    p.add_argument("--B", dest="B")

    p = verb("laurent", cmd_laurent, "reduce a rational function and test the Laurent property")
    p.add_argument("--expr", required=True)
    p.add_argument("--n", type=int, default=None, help="number of variables")

    for name, fn, help in (("gamma", cmd_gamma, "Gamma(s)"), ("zeta", cmd_zeta, "Riemann zeta(s)"),
                           ("completed", cmd_completed, "completed zeta Z(s)")):
        verb(name, fn, help).add_argument("--s", required=True)

    p = verb("char-inf", cmd_char_inf, "archimedean characteristic function of weight i")
    p.add_argument("--i", type=int, required=True, choices=(0, 1, 2))
    p.add_argument("--s", required=True)

    p = verb("zeros", cmd_zeros, "zeros of char_1 on the critical line")
    p.add_argument("--from", dest="t_from", type=float, required=True)
    p.add_argument("--to", dest="t_to", type=float, required=True)
    p.add_argument("--step", type=float, default=0.05)
    p.add_argument("--tol", type=float, default=1e-6)

    p = verb("regdet", cmd_regdet, "zeta-regularized product of (a + n)/scale")
    p.add_argument("--a", required=True)
    p.add_argument("--scale", default="2pi")

    for name, fn, help in (("euler", cmd_euler, "truncated Hasse-Weil zeta product"),
                           ("l-function", cmd_l_function, "truncated L(E, s) product"),
                           ("identity-check", cmd_identity_check, "per-prime zeta factorization check")):
        p = verb(name, fn, help)
        p.add_argument("--curve", required=True)
        p.add_argument("--s", required=True)
        p.add_argument("--bound", type=int, default=500)
        if name == "identity-check":
            p.add_argument("--rtol", type=float, default=1e-10)
    return parser


def _error_report(exc: BaseException) -> str:
    return json.dumps({"error": {"type": type(exc).__name__, "message": str(exc)}})


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv) if argv is not None else None)
    except UsageError as exc:
        print(exc, file=stderr)
        return 2
    except SystemExit as exc:  # --help
        return 0 if not exc.code else 2
    try:
        result = args.fn(args)
    except UsageError as exc:
        print(f"zetabench {args.verb}: {exc}", file=stderr)
        return 2
    except BudgetExceeded as exc:
        print(f"zetabench {args.verb}: {exc}", file=stderr)
        print(_error_report(exc), file=stdout)
        return 1
    except DomainError as exc:
        print(f"zetabench {args.verb}: {type(exc).__name__}: {exc}", file=stderr)
        print(_error_report(exc), file=stdout)
        return 1
    except (ValueError, KeyError, TypeError) as exc:
        # malformed input text (bad JSON, wrong shapes, non-integers)
        print(f"zetabench {args.verb}: invalid input: {exc}", file=stderr)
        return 2
    print(emit_report(result, args.format), file=stdout)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
