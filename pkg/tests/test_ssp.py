from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from supersingular.arith import Fp2Elem, char_exponents, legendre, primes_between
from supersingular.fppoly import FpPoly, count_linear_factors, format_factored, split_factors, squarefree_part
from supersingular.ssp import (
    HeunParams,
    apery,
    apery_sum,
    expected_degree,
    first_difference,
    heun_exponents,
    heun_identity_sides,
    heun_series,
    legendre_poly,
    parse_label,
    shifted_square_3c,
    ss_binomial,
    ss_fricke_hg,
    ss_gamma0,
    ss_heun,
    ss_level1,
    ss_resultant,
    ss_square_apery,
    ss_square_closed,
    truncated_hypergeometric,
    truncation_shift,
)

SMALL = primes_between(5, 14)


def desc(coeffs, p):
    return FpPoly.from_descending(coeffs, p)


# worked examples

def test_level1_examples():
    assert format_factored(split_factors(ss_level1(37).poly)) == "(X + 29)(X^2 + 31*X + 31)"
    assert ss_level1(2).poly == FpPoly.x(2)
    assert ss_level1(3).poly == FpPoly.x(3)
    assert ss_level1(7).poly == desc([1, -6], 7)
    assert ss_level1(7).route == "hypergeometric"


def test_fricke_examples():
    f = ss_fricke_hg(2, 37).poly
    assert format_factored(split_factors(f), "Y") == "(Y + 3)(Y + 25)(Y + 27)(Y^2 + 14*Y + 34)"
    assert ss_fricke_hg(2, 5).degree == 1
    assert ss_fricke_hg(3, 5).degree == 2
    with pytest.raises(ValueError):
        ss_fricke_hg(5, 11)


def test_gamma0_and_binomial_examples():
    assert ss_gamma0(2, 5).degree == 1
    assert ss_gamma0(3, 7).degree == 2
    assert ss_binomial(2, 5).poly == desc([1, 2], 5)
    assert ss_binomial(2, 13).poly == ss_gamma0(2, 13).poly
    assert ss_binomial(3, 13).poly.leading() == 1


def test_square_closed_examples():
    assert ss_square_closed("level1", 37) == ss_level1(37).poly ** 2
    assert ss_square_closed("2*", 37) == ss_fricke_hg(2, 37).poly ** 2
    assert ss_square_closed("3*", 5) == ss_fricke_hg(3, 5).poly ** 2
    with pytest.raises(ValueError):
        ss_square_closed("5*", 11)


def test_resultant_example():
    V, ss = ss_resultant("2*", 37)
    assert format_factored(split_factors(V), "Y") == "(Y + 3)(Y + 25)^2(Y + 27)^2(Y^2 + 14*Y + 34)^2"
    assert ss.poly == ss_fricke_hg(2, 37).poly
    assert ss.route == "resultant_radical"


def test_resultant_small_primes():
    with pytest.raises(ValueError):
        ss_resultant("2*", 2)
    _, ss = ss_resultant("2*", 2, allow_ramified=True)
    assert ss.poly == FpPoly.x(2)
    _, ss = ss_resultant("3*", 2)
    assert ss.poly == FpPoly.x(2) and not ss.notes["ramified"]
    _, ss = ss_resultant("3*", 3, allow_ramified=True)
    assert ss.poly == FpPoly.x(3) and ss.notes["ramified"]
    # 3C at p = 5: radical of Y^3 (Y^3 + 12288000)^3 mod 5
    _, ss = ss_resultant("3C", 5)
    Y = FpPoly.x(5)
    assert ss.poly == squarefree_part(Y ** 3 * (Y ** 3 + 12288000) ** 3)


def test_resultant_rejects_p_equal_level():
    with pytest.raises(ValueError):
        ss_resultant("5*", 5)
    with pytest.raises(ValueError):
        parse_label("5")


def test_legendre_examples():
    assert legendre_poly("W", 2, 11) == FpPoly([1, 4, 1], 11)
    w1 = legendre_poly("W", 1, 5)
    assert w1 == FpPoly([1, 1], 5) and count_linear_factors(w1) == 1
    p3 = legendre_poly("P", 3, 7)
    assert p3.compose(FpPoly([0, -1], 7)) == -p3
    # P_2 = (3x^2 - 1)/2
    assert legendre_poly("P", 2, 11) == FpPoly([-1, 0, 3], 11) * pow(2, -1, 11)
    with pytest.raises(ValueError):
        legendre_poly("W", 7, 7)
    with pytest.raises(ValueError):
        legendre_poly("Q", 1, 7)


def test_truncated_hypergeometric_degree_zero():
    assert truncated_hypergeometric(0, 3, 5, 7) == FpPoly.one(7)


# Apery-like numbers

def test_apery_values():
    assert apery("u5", 0) == 1
    assert apery("u5", 1) == 6 and apery("u5", 2) == 114
    assert apery("c3C", 1) == -6
    assert apery("u7", 2) == 48
    with pytest.raises(ValueError):
        apery("u11", 1)


def test_apery_square_examples():
    # level 5 at p = 7: (-5/7) = 1 so no prefactor
    assert heun_exponents(5, 7)[1] == 0
    assert ss_square_apery("5*", 7) == apery_sum("5*", 7)
    X = FpPoly.x(7)
    assert ss_square_apery("3C", 7) == (X - 12) * (X * X + X * 12 + 144) * apery_sum("3C", 7)
    assert ss_square_apery("7*", 11) == ss_resultant("7*", 11)[1].poly ** 2
    with pytest.raises(ValueError):
        ss_square_apery("5*", 5)


def test_3c_square_in_shifted_variable():
    for p in primes_between(5, 60):
        _, ss = ss_resultant("3C", p)
        lhs, rhs = shifted_square_3c(ss.poly)
        assert lhs == rhs, p


# Heun series

def test_heun_recursion_start():
    params = HeunParams(Fraction(-27), Fraction(-2), Fraction(3), Fraction(5, 2), Fraction(1), Fraction(1, 2))
    c = heun_series(params, 3)
    assert c[0] == 1
    assert c[1] == Fraction(2, 27)


def test_heun_terminates_when_alpha_is_negative_integer():
    # a=2, alpha=-1, beta=2, gamma=delta=1: c_2 = 0 needs w^2 + 5w + 4 = 0
    for w in (-1, -4):
        params = HeunParams(Fraction(2), Fraction(w), Fraction(-1), Fraction(2), Fraction(1), Fraction(1))
        c = heun_series(params, 6)
        assert c[1] == Fraction(w, 2)
        assert all(x == 0 for x in c[2:])
    params = HeunParams(Fraction(2), Fraction(1), Fraction(-1), Fraction(2), Fraction(1), Fraction(1))
    assert heun_series(params, 6)[2] != 0


def test_heun_zero_denominator():
    params = HeunParams(Fraction(2), Fraction(1), Fraction(1), Fraction(1), Fraction(-1), Fraction(1))
    with pytest.raises(ZeroDivisionError, match="n=1"):
        heun_series(params, 4)


@settings(max_examples=20, deadline=None)
@given(
    st.fractions(-5, 5, max_denominator=7).filter(lambda a: a not in (0, 1)),
    st.fractions(-5, 5, max_denominator=7),
    st.fractions(-5, 5, max_denominator=7),
    st.fractions(-5, 5, max_denominator=7),
    st.fractions(Fraction(1, 3), 5, max_denominator=7),
    st.fractions(-5, 5, max_denominator=7),
)
def test_heun_transformation_identity(a, w, al, be, ga, de):
    lhs, rhs = heun_identity_sides(HeunParams(a, w, al, be, ga, de), 8)
    assert lhs == rhs


def test_heun_degrees():
    assert ss_heun(7, 11).degree == 4
    # (-1/11) = -1 and (-5/11) = (6/11) = -1
    m, mu = heun_exponents(5, 11)
    assert (m, mu) == (2, 1)
    assert ss_heun(5, 11, shifted=True).degree == m + 2 * mu == 4
    assert ss_resultant("5*", 11)[1].degree == 4
    with pytest.raises(ValueError):
        ss_heun(5, 5)
    with pytest.raises(ValueError):
        ss_heun(7, 7)


def test_heun_matches_resultant_when_unshifted():
    # (-1/p) = 1: the printed truncation length terminates
    for p in (13, 17, 29, 37):
        assert truncation_shift(5, p) == 0
        h = ss_heun(5, p)
        assert h.notes["descends"] and h.notes["root_independent"] and h.notes["tail_vanishes"]
        assert h.poly == ss_resultant("5*", p)[1].poly


def test_heun_shifted_form_matches_resultant():
    for p in primes_between(7, 120):
        h5 = ss_heun(5, p, shifted=True)
        assert h5.notes["tail_vanishes"], p
        assert h5.poly == ss_resultant("5*", p)[1].poly, p
        if p >= 11:
            h7 = ss_heun(7, p, shifted=True)
            assert h7.poly == ss_resultant("7*", p)[1].poly, p


# degrees

@pytest.mark.parametrize("p", primes_between(5, 200))
def test_degree_displays(p):
    assert ss_level1(p).degree == expected_degree("level1", p)
    assert ss_fricke_hg(2, p).degree == expected_degree("2*", p)
    assert ss_fricke_hg(3, p).degree == expected_degree("3*", p)
    assert ss_gamma0(2, p).degree == expected_degree("G0(2)", p)
    assert ss_gamma0(3, p).degree == expected_degree("G0(3)", p)


def test_first_difference():
    f = FpPoly([1, 2, 3], 7)
    assert first_difference(f, f) is None
    assert first_difference(f, FpPoly([1, 2, 4], 7)) == 2


# independent oracles for small p

def count_points(j, p):
    """#E(F_p) for a curve with j-invariant j (p >= 5)."""
    if j == 0:
        a, b = 0, 1
    elif j == 1728 % p:
        a, b = 1, 0
    else:
        k = j * pow(1728 - j, -1, p) % p
        a, b = 3 * k % p, 2 * k % p
    total = 1
    for x in range(p):
        total += 1 + legendre(x ** 3 + a * x + b, p)
    return total


@pytest.mark.parametrize("p", SMALL)
def test_rational_roots_match_point_counts(p):
    ss = ss_level1(p).poly
    roots = {j for j in range(p) if ss(j) == 0}
    assert roots == {j for j in range(p) if count_points(j, p) == p + 1}


def fp2_field(p):
    r = next(a for a in range(2, p) if legendre(a, p) == -1)
    return [Fp2Elem(a, b, p, r) for a in range(p) for b in range(p)]


def hasse_invariant(lam, p):
    """Coefficient of x^{p-1} in (x (x-1) (x-lam))^{(p-1)/2}."""
    cubic = [0 * lam, lam, -(lam + 1), lam ** 0]  # x^3 - (1+lam) x^2 + lam x, low first
    power = [lam ** 0]
    for _ in range((p - 1) // 2):
        out = [0 * lam] * (len(power) + 3)
        for i, u in enumerate(power):
            for k, v in enumerate(cubic):
                out[i + k] = out[i + k] + u * v
        power = out
    return power[p - 1]


@pytest.mark.parametrize("p", SMALL)
def test_all_roots_match_legendre_family(p):
    supersingular = set()
    for lam in fp2_field(p):
        if lam == 0 or lam == 1:
            continue
        if hasse_invariant(lam, p) == 0:
            num = (lam * lam - lam + 1) ** 3 * 256
            supersingular.add(num / (lam * lam * (lam - 1) ** 2))
    ss = ss_level1(p).poly
    assert ss.degree == len(supersingular)
    for j in supersingular:
        acc = j * 0
        for c in reversed(ss.coeffs()):
            acc = acc * j + c
        assert acc == 0


def test_char_exponents_feed_degrees():
    ce = char_exponents(37)
    assert ss_level1(37).degree == 37 // 12 + ce.delta + ce.eps
