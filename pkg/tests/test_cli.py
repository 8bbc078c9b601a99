import io
import json
import math
import subprocess
import sys

import pytest
from hypothesis import given, strategies as st

from zetabench.archimedean import char_ratio_consistency
from zetabench.cli import run
from zetabench.cluster import MutationReport, Seed, mutate, mutation_closure
from zetabench.euler_product import EulerProductResult, IdentityCheck, hasse_weil_truncated, zeta_identity_check
from zetabench.exact_arith import IntegerMatrix, IntPolynomial, RationalFunction
from zetabench.finite_field import CurveSpec, PointCountRecord, count_points_naive
from zetabench.formats import parse_complex, parse_matrix, parse_operator, parse_rational_function, parse_seed
from zetabench.local_zeta import LocalZetaFunction, local_zeta_curve
from zetabench.operator_k import (
    BandedOperatorSpec,
    ConjugacyReport,
    KTheoryResult,
    MarkovCompanion,
    SNFResult,
    TruncationReport,
    ck_k_theory,
    conjugacy_invariant_check,
    markov_companion,
    smith_normal_form,
    truncated_charpoly_sequence,
)
from zetabench.reports import NumericValue, emit_report, from_dict, report_from_json, to_dict
from zetabench.archimedean import RatioCheck


def cli(*argv, stdin=None):
    out, err = io.StringIO(), io.StringIO()
    if stdin is not None:
        old = sys.stdin
        sys.stdin = io.StringIO(stdin)
    try:
        code = run(list(argv), stdout=out, stderr=err)
    finally:
        if stdin is not None:
            sys.stdin = old
    return code, out.getvalue(), err.getvalue()


def cli_json(*argv, **kw):
    code, out, err = cli(*argv, **kw)
    assert code == 0, err
    return json.loads(out)


# --- examples ---------------------------------------------------------------------


def test_count_example():
    data = cli_json("count", "--curve", "a=1,b=1", "--prime", "5")
    assert data["count"] == 9 and data["a_p"] == -3


def test_zeros_example():
    zeros = cli_json("zeros", "--from", "10", "--to", "30")
    assert len(zeros) == 3
    assert [round(t, 4) for t in zeros] == [14.1347, 21.022, 25.0109]


def test_empty_zero_list_is_bracket_pair():
    code, out, _ = cli("zeros", "--from", "1", "--to", "10")
    assert code == 0 and out.strip() == "[]"
    assert emit_report([]) == "[]"


def test_mutate_example():
    data = cli_json("mutate", "--B", "[[0,1],[-1,0]]", "--k", "1")
    assert data["variables"][0]["text"] == "(x2 + 1)/x1"
    assert data["B"] == [[0, -1], [1, 0]]
    seed = from_dict(Seed, data)
    assert seed.variables[0] == parse_rational_function("(1 + x2)/x1")


def test_k_theory_report_example():
    assert json.loads(emit_report(ck_k_theory(IntegerMatrix.from_rows([[4]])))) == {
        "k0_torsion": [3], "k0_free_rank": 0, "k1_rank": 0}
    assert cli_json("k-theory", "--matrix", "[[4]]") == {"k0_torsion": [3], "k0_free_rank": 0, "k1_rank": 0}


def test_snf_table_shows_diagonal():
    code, out, _ = cli("snf", "--matrix", "[[2,4],[6,8]]", "--format", "table")
    assert code == 0
    assert "diagonal" in out and "[2, 4]" in out
    assert "D:" in out


# --- verbs ---------------------------------------------------------------------------


@pytest.mark.parametrize("argv", [
    ["count", "--curve", "a=2,b=3", "--prime", "101", "--method", "naive"],
    ["count", "--curve", "a=1,b=1", "--prime", "5", "--r", "2"],
    ["local-zeta", "--curve", "a=1,b=1", "--prime", "7"],
    ["k-theory", "--matrix", "[[1,1],[1,0]]", "--conjugates", "10", "--seed", "4"],
    ["snf", "--matrix", "1,2\n3,4"],
    ["irreducible", "--matrix", "[[1,1],[1,0]]"],
    ["markov", "--poly", "1,-5"],
    ["truncate", "--operator", '{"rule": "tridiagonal"}', "--sizes", "3,4,5,6"],
    ["closure", "--B", "[[0,1],[-1,0]]"],
    ["laurent", "--expr", "(x1^2 - 1)/(x1 - 1)"],
    ["gamma", "--s", "2.5"],
    ["zeta", "--s", "2+3j"],
    ["completed", "--s", "2"],
    ["char-inf", "--i", "1", "--s", "0.5+14i"],
    ["regdet", "--a", "1", "--scale", "1"],
    ["euler", "--curve", "a=1,b=1", "--s", "3", "--bound", "100"],
    ["l-function", "--curve", "a=1,b=1", "--s", "2", "--bound", "100"],
    ["identity-check", "--curve", "a=1,b=1", "--s", "3", "--bound", "50"],
])
def test_every_verb_succeeds_in_both_formats(argv):
    code, out, _ = cli(*argv)
    assert code == 0
    json.loads(out)
    code, table, _ = cli(*argv, "--format", "table")
    assert code == 0 and table.strip()


def test_local_zeta_report():
    data = cli_json("local-zeta", "--curve", "a=1,b=1", "--prime", "5")
    assert data["polys"][1] == [1, 3, 5]
    assert data["counts"][:2] == [9, 27]
    assert data["rationality"] and data["weil_rh"] and data["functional_equation"]


def test_k_theory_conjugates_are_seeded():
    a = cli("k-theory", "--matrix", "[[2,1],[1,1]]", "--conjugates", "20", "--seed", "11")
    b = cli("--seed", "11", "k-theory", "--matrix", "[[2,1],[1,1]]", "--conjugates", "20")
    assert a == b
    assert json.loads(a[1])["conjugate_mismatches"] == 0


def test_closure_budget_flag():
    data = cli_json("closure", "--B", "[[0,2],[-2,0]]", "--budget", "7")
    assert data["truncated"] and data["n_clusters"] == 7


def test_stdin_input():
    assert cli_json("snf", "--stdin", stdin="[[2,4],[6,8]]")["diagonal"] == [2, 4]
    assert cli_json("closure", "--stdin", stdin='{"n": 2, "B": [[0,1],[-1,0]]}')["n_clusters"] == 5


def test_euler_report_fields():
    data = cli_json("euler", "--curve", "a=1,b=1", "--s", "3", "--bound", "40")
    assert data["bad_primes"] == [2, 31]
    assert data["primes_used_count"] == len(data["primes_used"]) == 10
    assert data["tail_estimate"] > 0


def test_global_flags_before_or_after_verb():
    a = cli("--format", "table", "gamma", "--s", "3")
    b = cli("gamma", "--s", "3", "--format", "table")
    assert a == b and a[0] == 0


# --- errors ---------------------------------------------------------------------------


@pytest.mark.parametrize("argv,kind", [
    (["count", "--curve", "a=1,b=1", "--prime", "31"], "BadReduction"),
    (["count", "--curve", "a=0,b=0", "--prime", "5"], "BadReduction"),
    (["count", "--curve", "a=1,b=1", "--prime", "2"], "EvenPrime"),
    (["zeta", "--s", "1"], "PoleAtOne"),
    (["gamma", "--s", "-3"], "PoleError"),
    (["euler", "--curve", "a=1,b=1", "--s", "1.5"], "ConvergenceDomain"),
    (["k-theory", "--matrix", "[[1,-1],[0,1]]"], "NegativeEntry"),
    (["mutate", "--B", "[[0,1],[-1,0]]", "--k", "3"], "DirectionOutOfRange"),
    (["laurent", "--expr", "x1/(x1 - x1)"], "ZeroDenominator"),
])
def test_domain_errors_exit_one_with_structured_error(argv, kind):
    code, out, err = cli(*argv)
    assert code == 1
    assert json.loads(out)["error"]["type"] == kind
    assert err.strip()


@pytest.mark.parametrize("argv", [
    [],
    ["frobnicate"],
    ["count", "--curve", "a=1,b=1"],
    ["count", "--curve", "a=1,b=1", "--prime", "5", "--bogus", "1"],
    ["count", "--curve", "a=1", "--prime", "5"],
    ["snf", "--matrix", "[[1, 2], [3]]"],
    ["snf"],
    ["zeros", "--from", "x", "--to", "3"],
    ["laurent", "--expr", "y1 + 1"],
    ["gamma", "--s", "1", "--format", "xml"],
])
def test_usage_errors_exit_two(argv):
    code, out, err = cli(*argv)
    assert code == 2
    assert out == "" and err.strip()


def test_identical_argv_gives_identical_bytes():
    argv = ["euler", "--curve", "a=2,b=3", "--s", "2.5+1j", "--bound", "3000"]
    assert cli(*argv) == cli(*argv)


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "zetabench", "count", "--curve", "a=1,b=1", "--prime", "5"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and json.loads(proc.stdout)["count"] == 9


# --- report round trips ------------------------------------------------------------------


def roundtrip(obj):
    kind = type(obj)
    text = emit_report(obj)
    again = report_from_json(kind, text)
    assert emit_report(again) == text
    return again


def test_round_trip_every_report_type():
    e = CurveSpec(1, 1)
    A = IntegerMatrix.from_rows([[2, 1], [1, 1]])
    assert roundtrip(count_points_naive(e, 7)) == count_points_naive(e, 7)
    assert roundtrip(local_zeta_curve(e, 7)) == local_zeta_curve(e, 7)
    assert roundtrip(ck_k_theory(IntegerMatrix.from_rows([[4]]))) == KTheoryResult((3,), 0, 0)
    snf = smith_normal_form(IntegerMatrix.from_rows([[2, 4], [6, 8]]))
    assert roundtrip(snf) == snf
    assert roundtrip(markov_companion(IntPolynomial((1, 3, 5)))) == markov_companion(IntPolynomial((1, 3, 5)))
    rep = conjugacy_invariant_check(A, A)
    assert roundtrip(rep) == rep
    tr = truncated_charpoly_sequence(BandedOperatorSpec.tridiagonal(), [3, 4, 5])
    assert roundtrip(tr) == tr
    seed = mutate(mutate(Seed.initial([[0, 1], [-1, 0]]), 1), 2)
    assert roundtrip(seed) == seed
    closure = mutation_closure(Seed.initial([[0, 1, 0], [-1, 0, 1], [0, -1, 0]]))
    again = roundtrip(closure)
    assert again.visited == closure.visited and again.variables == closure.variables
    assert roundtrip(NumericValue(2 + 1j, 0.5 - 3j, 1e-12)) == NumericValue(2 + 1j, 0.5 - 3j, 1e-12)
    ratio = char_ratio_consistency(2 + 2j)
    assert roundtrip(ratio) == ratio
    ep = hasse_weil_truncated(e, 3, 100)
    assert roundtrip(ep) == ep
    ic = zeta_identity_check(e, 3, 50)
    assert roundtrip(ic) == ic
    r = parse_rational_function("(1 + x1 + x2)/(x1*x2)")
    assert roundtrip(r) == r
    assert roundtrip(IntegerMatrix.from_rows([[1, -2]])) == IntegerMatrix.from_rows([[1, -2]])


def test_big_integers_become_strings():
    big = 3**60
    M = IntegerMatrix.from_rows([[big, 1], [0, 1]])
    data = json.loads(emit_report(M))
    assert data == [[str(big), 1], [0, 1]]
    assert from_dict(IntegerMatrix, data) == M
    snf = smith_normal_form(IntegerMatrix.from_rows([[2**60, 0], [0, 3]]))
    assert roundtrip(snf) == snf


def test_infinite_tail_is_a_string():
    ep = EulerProductResult(2.01 + 0j, 2, (), (2,), 1 + 0j, math.inf)
    data = json.loads(emit_report(ep))
    assert data["tail_estimate"] == "inf"
    assert from_dict(EulerProductResult, data).tail_estimate == math.inf


@given(st.lists(st.lists(st.integers(-2**70, 2**70), min_size=3, max_size=3), min_size=1, max_size=3))
def test_matrix_round_trip_property(rows):
    M = IntegerMatrix.from_rows(rows)
    assert report_from_json(IntegerMatrix, emit_report(M)) == M


# --- input formats ------------------------------------------------------------------


def test_input_formats():
    assert parse_matrix("[[1,2],[3,4]]") == parse_matrix("1,2\n3,4")
    assert parse_complex("0.5+14i") == 0.5 + 14j
    assert parse_complex("[2, 3]") == parse_complex("2,3") == 2 + 3j
    assert parse_seed('{"n": 2, "B": [[0,1],[-1,0]]}') == Seed.initial([[0, 1], [-1, 0]])
    with pytest.raises(ValueError):
        parse_seed('{"n": 3, "B": [[0,1],[-1,0]]}')
    op = parse_operator('{"rule": "windows", "bandwidth": 1, "window": [1, 2, 3]}')
    assert op.truncate(3) == IntegerMatrix.from_rows([[2, 3, 0], [1, 2, 3], [0, 1, 2]])
    with pytest.raises(ValueError):
        parse_matrix("[[1.5]]")
    with pytest.raises(ValueError):
        parse_rational_function("__import__('os')")
