import math

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from galrep.arith import ZETA, EisInt, factorize, primes_below
from galrep.lseries import (
    LocalFactor,
    LSeriesTable,
    check_bad_factor,
    conductor,
    dirichlet_coeffs,
    eval_F,
    eval_F_bessel,
    eval_F_quadrature,
    fe_solve_w,
    good_local_factor,
    l_at_2,
    nearest_unit,
    pairwise_sum,
    parse_bad_factor,
    truncation_estimate,
    two_sums,
    w_from_value,
)

from published import L2

EIS = st.builds(EisInt, st.integers(-30, 30), st.integers(-30, 30))


def test_parse_bad_factor():
    lf = parse_bad_factor("1 - 3X + 9X^2", 3)
    assert lf.coeffs == (EisInt(-3), EisInt(9), EisInt(0), EisInt(0))
    assert parse_bad_factor("1", 2).coeffs == (EisInt(0),) * 4
    assert parse_bad_factor("1+2X", 2).coeffs[0] == EisInt(2)
    assert parse_bad_factor("X^2+1", 2).coeffs[1] == EisInt(1)


@pytest.mark.parametrize("text", ["", "2+X", "1+X^5", "1+Y", "1++X"])
def test_parse_bad_factor_rejects(text):
    with pytest.raises(ValueError):
        parse_bad_factor(text, 2)


def test_bad_factor_roots_must_respect_the_weight():
    check_bad_factor(LocalFactor(2, (EisInt(2),), "bad-guess"))
    with pytest.raises(ValueError):
        check_bad_factor(LocalFactor(2, (EisInt(-3),), "bad-guess"))


def _random_locals(B, seed_a):
    locs = {2: parse_bad_factor("1", 2), 3: parse_bad_factor("1+3X", 3)}
    for p in primes_below(B):
        if p > 3:
            a = seed_a(p)
            locs[p] = LocalFactor(p, (a, EisInt(p), a.conj() * p, EisInt(p * p)))
    return locs


@settings(max_examples=20)
@given(st.data())
def test_dirichlet_coefficients_are_multiplicative(data):
    vals = {}

    def seed(p):
        if p not in vals:
            vals[p] = data.draw(EIS)
        return vals[p]

    B = 200
    tab = dirichlet_coeffs(_random_locals(B, seed), B)
    assert tab.coeff(1) == EisInt(1)
    assert all(tab.coeff(2**k) == EisInt(0) for k in range(1, 8))
    for m in range(1, B):
        for n in range(1, B // m):
            if math.gcd(m, n) == 1 and m * n < B:
                assert tab.coeff(m * n) == tab.coeff(m) * tab.coeff(n)


@given(EIS, EIS)
def test_prime_power_recurrence_inverts_the_factor(d3, d2):
    p = 5
    lf = LocalFactor(p, (d3, d2, EisInt(7), EisInt(-2)))
    locs = {q: LocalFactor.trivial(q) for q in primes_below(p**4 + 1)}
    locs[p] = lf
    tab = dirichlet_coeffs(locs, p**4 + 1)
    series = [tab.coeff(p**k) for k in range(5)]
    # (1 + d3 X + d2 X^2 + 7 X^3 - 2 X^4) * sum a_{p^k} X^k = 1 up to X^4
    d = [EisInt(1), d3, d2, EisInt(7), EisInt(-2)]
    for k in range(5):
        acc = EisInt(0)
        for j in range(k + 1):
            acc = acc + d[j] * series[k - j]
        assert acc == (EisInt(1) if k == 0 else EisInt(0))


def test_truncated_local_factor_cannot_reach_high_powers():
    lf = LocalFactor(101, (EisInt(5),))
    locs = {p: LocalFactor.trivial(p) for p in primes_below(101**2 + 1)}
    locs[101] = lf
    with pytest.raises(ValueError):
        dirichlet_coeffs(locs, 101**2 + 1)


def test_good_local_factor_from_the_twisted_polynomial():
    # a_17 with trivial twist at 17 = -1 mod 9
    lf = good_local_factor(17, EisInt(-24, 63))
    assert lf.coeffs == (EisInt(24, -63),)


def test_conjugate_table():
    tab = LSeriesTable(4, [0, 1, 2, -3], [0, 0, 5, 1])
    c = tab.conj()
    assert all(c.coeff(n) == tab.coeff(n).conj() for n in range(1, 4))


@pytest.mark.parametrize("x", ["0.1", "1", "10", "100"])
def test_F_against_the_mellin_integral(x):
    with mpmath.workdps(45):
        a = eval_F(x, 45)
        b = eval_F_quadrature(x, 45)
        assert abs(a - b) <= abs(b) * mpmath.mpf(10) ** -40


@settings(max_examples=30)
@given(st.floats(1e-4, 400))
def test_F_against_besselk(x):
    with mpmath.workdps(40):
        a = eval_F(x, 40)
        b = eval_F_bessel(x, 40)
        assert a > 0
        assert abs(a - b) <= abs(b) * mpmath.mpf(10) ** -36


def test_F_limits():
    with mpmath.workdps(30):
        assert abs(eval_F("1e-12", 30) - 1) < mpmath.mpf(10) ** -10
        # F(x) ~ sqrt(pi) x^{3/4} e^{-2 sqrt x}
        x = mpmath.mpf(10) ** 6
        ratio = eval_F(x, 30) / (mpmath.sqrt(mpmath.pi) * x**0.75 * mpmath.exp(-2 * mpmath.sqrt(x)))
        assert abs(ratio - 1) < 1e-2


def test_F_rejects_non_positive_arguments():
    with pytest.raises(ValueError):
        eval_F(0)


def test_pairwise_sum_is_deterministic():
    vals = [mpmath.mpf(1) / k for k in range(1, 100)]
    assert pairwise_sum(vals) == pairwise_sum(list(vals))
    assert pairwise_sum([]) == 0
    with mpmath.workdps(30):
        assert abs(pairwise_sum(vals) - mpmath.fsum(vals)) < 1e-25


def _table(B):
    return LSeriesTable(B, [0] + [((7 * n) % 11) - 5 for n in range(1, B)], [0] + [((3 * n) % 7) - 3 for n in range(1, B)])


@given(st.floats(0.5, 2.0))
@settings(max_examples=5)
def test_second_sum_is_the_conjugate_of_the_first_at_the_inverse(t):
    tab = _table(60)
    N = 5000
    with mpmath.workdps(40):
        t = mpmath.mpf(t)
        A, _ = two_sums(tab, N, t, 30)
        _, Bt = two_sums(tab, N, 1 / t, 30)
        assert abs(Bt - mpmath.conj(A)) < 1e-25


def test_published_value_fixes_the_root_number():
    with mpmath.workdps(40):
        w = w_from_value(L2)
        assert nearest_unit(w) == EisInt(1) + ZETA
        assert abs(w - mpmath.exp(1j * mpmath.pi / 3)) < mpmath.mpf(10) ** -20


def test_fe_rejects_bad_grids():
    tab = _table(20)
    with pytest.raises(ValueError):
        fe_solve_w(tab, 100, [1.0])
    with pytest.raises(ValueError):
        fe_solve_w(tab, 100, [1.0, -1.0])


def test_l_at_2_requires_a_unit():
    with pytest.raises(ValueError):
        l_at_2(_table(20), 100, 2, 1.0)


def test_fe_flags_coincident_grid_points():
    tab = LSeriesTable(2, [0, 1], [0, 1])
    rep = fe_solve_w(tab, 10**6, [1.0, 1.0 + 1e-30], 30)
    assert rep.ill_conditioned


def test_conductor():
    assert conductor(9, 9) == 10077696
    assert factorize(conductor(9, 8)) == {2: 9, 3: 8}


def test_truncation_estimate_decreases_with_B():
    N = conductor(9, 9)
    assert truncation_estimate(N, 16000, 1.5, 500) < truncation_estimate(N, 8000, 1.5, 500)
