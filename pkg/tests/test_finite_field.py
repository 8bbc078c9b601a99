import math

import pytest
from hypothesis import given, strategies as st

from oracles import brute_force_count
from zetabench.errors import BadReduction, EnumerationBoundExceeded, EvenOrCompositeModulus, EvenPrime
from zetabench.finite_field import (
    CurveSpec,
    PointCountRecord,
    count_points_charsum,
    count_points_extension,
    count_points_fp2_direct,
    count_points_naive,
    counts_over_extensions,
    extension_traces,
    is_prime,
    parse_curve,
    primes_up_to,
    quadratic_character,
    trace_of_frobenius,
)

TEST_CURVES = [CurveSpec(1, 1), CurveSpec(-1, 0), CurveSpec(0, -4), CurveSpec(2, 3)]


def good(curve, bound):
    return [p for p in primes_up_to(bound) if curve.has_good_reduction(p)]


def test_primality_agrees_with_sieve():
    sieve = set(primes_up_to(20000))
    assert all(is_prime(n) == (n in sieve) for n in range(20001))
    assert is_prime(2**61 - 1) and not is_prime(2**61 + 1)


def test_quadratic_character_examples():
    assert quadratic_character(0, 5) == 0
    assert quadratic_character(4, 5) == 1
    assert quadratic_character(2, 5) == -1
    with pytest.raises(EvenOrCompositeModulus):
        quadratic_character(1, 9)


@given(st.sampled_from(primes_up_to(200)[1:]), st.integers(-10**6, 10**6))
def test_quadratic_character_matches_squares(p, x):
    squares = {y * y % p for y in range(1, p)}
    expected = 0 if x % p == 0 else (1 if x % p in squares else -1)
    assert quadratic_character(x, p) == expected


def test_point_count_examples():
    assert count_points_naive(CurveSpec(1, 1), 5) == PointCountRecord(5, 1, 9, -3)
    assert count_points_naive(CurveSpec(-1, 0), 5).count == 8
    assert count_points_charsum(CurveSpec(1, 1), 5).count == 9
    assert count_points_charsum(CurveSpec(-1, 0), 5).count == 8
    assert count_points_charsum(CurveSpec(1, 1), 7) == count_points_naive(CurveSpec(1, 1), 7)
    assert trace_of_frobenius(CurveSpec(1, 1), 5) == -3
    assert trace_of_frobenius(CurveSpec(-1, 0), 5) == -2


def test_singular_and_bad_inputs():
    with pytest.raises(BadReduction):
        CurveSpec(0, 0)
    with pytest.raises(BadReduction):
        count_points_naive(CurveSpec(1, 1), 31)
    with pytest.raises(EvenPrime):
        count_points_naive(CurveSpec(1, 1), 2)
    with pytest.raises(EvenOrCompositeModulus):
        count_points_charsum(CurveSpec(1, 1), 15)
    with pytest.raises(EnumerationBoundExceeded):
        count_points_naive(CurveSpec(1, 1), 1000003)


def test_parse_curve():
    assert parse_curve("a=1,b=1") == CurveSpec(1, 1)
    assert parse_curve(" a = -1 , b = 0 ") == CurveSpec(-1, 0)
    assert parse_curve('{"a": 2, "b": 3}') == CurveSpec(2, 3)
    with pytest.raises(ValueError):
        parse_curve("a=1")


def test_hasse_bound_rejects_impossible_record():
    with pytest.raises(ValueError):
        PointCountRecord(5, 1, 1, 5)


@pytest.mark.parametrize("curve", TEST_CURVES, ids=str)
def test_naive_equals_brute_force_small_primes(curve):
    for p in good(curve, 60):
        assert count_points_naive(curve, p).count == brute_force_count(curve.a, curve.b, p)


@pytest.mark.parametrize("curve", TEST_CURVES, ids=str)
def test_two_counters_agree_up_to_1000(curve):
    for p in good(curve, 1000):
        naive = count_points_naive(curve, p)
        assert naive == count_points_charsum(curve, p)
        assert naive.a_p**2 <= 4 * p


@given(st.integers(-50, 50), st.integers(-50, 50), st.sampled_from(primes_up_to(300)[1:]))
def test_counters_agree_on_random_curves(a, b, p):
    if 4 * a**3 + 27 * b**2 == 0:
        return
    curve = CurveSpec(a, b)
    if not curve.has_good_reduction(p):
        with pytest.raises(BadReduction):
            count_points_naive(curve, p)
        return
    assert count_points_naive(curve, p) == count_points_charsum(curve, p)


def test_extension_examples():
    e = CurveSpec(1, 1)
    assert count_points_extension(e, 5, 1).count == 9
    assert count_points_extension(e, 5, 2).count == 27
    assert extension_traces(-3, 5, 2) == [-3, -1]
    assert count_points_extension(e, 7, 1).count == count_points_naive(e, 7).count


@pytest.mark.parametrize("curve,p", [(c, p) for c in TEST_CURVES for p in (3, 5, 7, 11, 13)
                                     if c.has_good_reduction(p)], ids=str)
def test_recurrence_matches_direct_fp2_enumeration(curve, p):
    assert count_points_extension(curve, p, 2).count == count_points_fp2_direct(curve, p)


def test_extension_counts_obey_weil_bound():
    for curve in TEST_CURVES:
        for p in good(curve, 50):
            for r, n in enumerate(counts_over_extensions(curve, p, 6), start=1):
                q = p**r
                assert (n - q - 1) ** 2 <= 4 * q
                assert n > 0


def test_trace_is_memoised_but_pure():
    e = CurveSpec(2, 3)
    assert trace_of_frobenius(e, 101) == trace_of_frobenius(e, 101) == count_points_naive(e, 101).a_p
    assert math.isqrt(4 * 101) >= abs(trace_of_frobenius(e, 101))
