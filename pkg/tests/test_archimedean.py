import cmath
import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, strategies as st

from zetabench.archimedean import (
    HodgeNumbers,
    bernoulli,
    char_a1_via_completed,
    char_a1_via_ratio,
    char_a_infinity,
    char_ratio_consistency,
    completed_zeta,
    find_critical_zeros,
    gamma,
    gamma_c,
    gamma_r,
    hurwitz_zeta,
    lerch_closed_form,
    regularized_det_arith_progression,
    riemann_zeta,
    riemann_zeta_with_error,
    serre_local_factor,
)
from zetabench.errors import DomainError, PoleAtOne, PoleError

mpmath.mp.dps = 30


def rel(a, b):
    return abs(a - b) / abs(b)


def strip(lo_re, hi_re, im):
    return st.builds(complex, st.floats(lo_re, hi_re), st.floats(-im, im))


def test_bernoulli_numbers():
    expected = {0: Fraction(1), 1: Fraction(-1, 2), 2: Fraction(1, 6), 3: Fraction(0), 4: Fraction(-1, 30),
                6: Fraction(1, 42), 12: Fraction(-691, 2730), 14: Fraction(7, 6)}
    assert {n: bernoulli(n) for n in expected} == expected


def test_gamma_examples():
    assert abs(gamma_r(1) - 1) < 1e-14
    assert abs(gamma_c(1) - 1 / math.pi) < 1e-14
    assert rel(gamma(3.5), 2.5 * gamma(2.5)) < 1e-10
    assert abs(gamma(0.5) - math.sqrt(math.pi)) < 1e-14
    for bad in (0, -1, -7):
        with pytest.raises(PoleError):
            gamma(bad)
    with pytest.raises(PoleError):
        gamma_r(-2)


@given(strip(-20, 40, 60).filter(lambda z: abs(z - round(z.real)) > 1e-3 or z.real > 0.5))
def test_gamma_against_mpmath(z):
    assert rel(gamma(z), complex(mpmath.gamma(z))) < 1e-11


def test_serre_factor_examples():
    assert abs(serre_local_factor(HodgeNumbers(0, {(0, 0): 1}), 1) - 1) < 1e-14
    curve = HodgeNumbers(1, {(1, 0): 1, (0, 1): 1})
    assert abs(serre_local_factor(curve, 1) - 1 / math.pi) < 1e-14
    assert serre_local_factor(HodgeNumbers(0, {}), 3 + 2j) == 1
    split = HodgeNumbers(2, {(1, 1): 2}, {1: (1, 1)})
    s = 2.5
    assert abs(serre_local_factor(split, s) - gamma_r(s - 1) * gamma_r(s)) < 1e-14


def test_hodge_validation():
    with pytest.raises(DomainError):
        HodgeNumbers(1, {(1, 0): 1})
    with pytest.raises(DomainError):
        HodgeNumbers(2, {(1, 0): 1, (0, 1): 1})
    with pytest.raises(DomainError):
        HodgeNumbers(2, {(1, 1): 2}, {1: (2, 1)})


def test_zeta_examples():
    assert abs(riemann_zeta(2) - math.pi**2 / 6) < 1e-9
    assert abs(riemann_zeta(0) + 0.5) < 1e-9
    s = 2 + 3j
    assert abs(riemann_zeta(s.conjugate()) - riemann_zeta(s).conjugate()) < 1e-14
    with pytest.raises(PoleAtOne):
        riemann_zeta(1)
    with pytest.raises(DomainError):
        riemann_zeta(0.5 + 60j)
    with pytest.raises(DomainError):
        riemann_zeta(-1.5)


@given(strip(-0.99, 4, 50).filter(lambda s: abs(s - 1) > 1e-3))
def test_zeta_against_mpmath_and_error_estimate(s):
    v, err = riemann_zeta_with_error(s)
    truth = complex(mpmath.zeta(s))
    assert abs(v - truth) <= max(1e-9 * abs(truth), err)
    assert abs(v - truth) <= err


@given(st.floats(-2, 0.9), st.floats(0.2, 5))
def test_hurwitz_against_mpmath(z, a):
    assert abs(hurwitz_zeta(z, a) - complex(mpmath.zeta(z, a))) < 1e-9 * max(1, abs(complex(mpmath.zeta(z, a))))


def test_completed_zeta_examples():
    assert abs(completed_zeta(2) - math.pi / (6 * math.sqrt(2))) < 1e-12
    assert abs(completed_zeta(4) - math.pi**2 * math.sqrt(2) / 180) < 1e-12
    s = 3 + 1j
    assert abs(completed_zeta(s.conjugate()) - completed_zeta(s).conjugate()) < 1e-14
    with pytest.raises(PoleAtOne):
        completed_zeta(1)


def test_char_examples():
    assert abs(char_a_infinity(0, 2 * math.pi) - 1) < 1e-15
    assert char_a_infinity(2, 1) == 0
    assert abs(char_a_infinity(1, 0.5 + 14.134725j)) < 1e-6
    # removable singularity at s = 1
    assert abs(char_a_infinity(1, 1) - 2**-2.5 * math.pi**-2.5 * math.sqrt(math.pi)) < 1e-15


def test_ratio_consistency_examples():
    assert char_ratio_consistency(3)
    assert char_ratio_consistency(2 + 2j)
    near = char_ratio_consistency(1e-9)
    assert not near and "pole" in near.diagnostic


@given(strip(0.2, 4, 30).filter(lambda s: abs(s - 1) > 1e-3))
def test_three_char_expressions_agree(s):
    direct = char_a_infinity(1, s)
    assert rel(char_a1_via_completed(s), direct) < 1e-8
    assert rel(char_a1_via_ratio(s), direct) < 1e-8
    assert char_ratio_consistency(s)


@given(st.floats(0.5, 49))
def test_char_real_on_critical_line(t):
    v = char_a_infinity(1, complex(0.5, t))
    assert abs(v.imag) <= 1e-9 * abs(v)


def xi(s):
    return s * (s - 1) * gamma_r(s) * riemann_zeta(s)


@given(strip(0.05, 0.95, 30).filter(lambda s: abs(s.imag) > 1e-3 or 0.1 < s.real < 0.9))
def test_xi_functional_equation(s):
    assert abs(abs(xi(s)) - abs(xi(1 - s))) <= 1e-7 * max(1.0, abs(xi(s)))


@pytest.mark.parametrize("a", [0.5, 1, 1.5, 2, 3])
@pytest.mark.parametrize("scale", [1.0, 2 * math.pi])
def test_regularized_determinant_matches_lerch(a, scale):
    assert rel(regularized_det_arith_progression(a, scale), lerch_closed_form(a, scale)) < 1e-7


def test_regularized_determinant_examples():
    assert rel(regularized_det_arith_progression(1), 2 * math.pi) < 1e-7
    assert rel(regularized_det_arith_progression(2), 4 * math.pi**2) < 1e-7
    assert rel(regularized_det_arith_progression(1, 1.0), math.sqrt(2 * math.pi)) < 1e-7
    # independent oracle: Hurwitz zeta derivative from mpmath
    a = 0.7
    truth = mpmath.exp(-mpmath.zeta(0, a, 1))
    assert rel(regularized_det_arith_progression(a, 1.0), complex(truth)) < 1e-7
    with pytest.raises(DomainError):
        regularized_det_arith_progression(-1)


def test_critical_zeros_examples():
    zeros = find_critical_zeros(10, 30)
    assert len(zeros) == 3
    for t, ref in zip(zeros, (14.134725, 21.022040, 25.010858)):
        assert abs(t - ref) < 1e-4
        assert abs(t - float(mpmath.zetazero(zeros.index(t) + 1).imag)) < 1e-5
        assert abs(char_a_infinity(1, complex(0.5, t))) < 1e-6
    assert find_critical_zeros(1, 10) == []


def test_critical_zeros_up_to_fifty():
    zeros = find_critical_zeros(1, 50)
    truth = [float(mpmath.zetazero(k).imag) for k in range(1, 11)]
    assert len(zeros) == 10
    assert max(abs(a - b) for a, b in zip(zeros, truth)) < 1e-5


def test_critical_zero_range_guard():
    with pytest.raises(DomainError):
        find_critical_zeros(10, 60)
    assert cmath.isfinite(char_a_infinity(1, 0.5 + 49.9j))
