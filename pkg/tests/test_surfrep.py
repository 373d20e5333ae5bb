import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from galrep.arith import UNITS, ZETA, ZETA2, EisInt, NonIntegralError, fq_make
from galrep.oracles import brute_fix_surface
from galrep.surfrep import (
    SURFACE_EIGEN_INDEX,
    AmbiguousCharPoly,
    CharPoly,
    CharPolyError,
    charpoly_from_powersums,
    eigen_traces,
    fix_surface,
    format_charpoly,
    powersums_of,
    ram_fibre_fix,
    surface_charpoly,
    surface_counts,
    surface_dimensions,
    surface_powersums,
    trace_packet,
)
from galrep.weierstrass import INF, SURFACE_EXAMPLES, X_PAIR, XPRIME_PAIR, count_fibre

from published import SURFACE_POLYS

EIS = st.builds(EisInt, st.integers(-50, 50), st.integers(-50, 50))


def test_eigen_traces_of_a_trivial_action():
    assert eigen_traces(7, 7, 7) == (7, EisInt(0), EisInt(0))


def test_eigen_traces_of_a_regular_action():
    # sigma permuting three basis vectors: trace 3 for i = 0, zero otherwise
    assert eigen_traces(3, 0, 0) == (1, EisInt(1), EisInt(1))


def test_eigen_traces_reject_non_integral_input():
    with pytest.raises(NonIntegralError):
        eigen_traces(1, 0, 0)


@given(st.integers(-100, 100), EIS)
def test_eigen_traces_invert_the_character_sum(a, b):
    # a vector space with tr_1 = a and tr_zeta = b, tr_zeta2 = conj(b) has these traces
    tr = [a + 2 * (b * z).u - (b * z).v for z in (EisInt(1), ZETA, ZETA2)]
    assert eigen_traces(*tr) == (a, b, b.conj())


@pytest.mark.parametrize("q", [5, 7, 11, 13])
@pytest.mark.parametrize("i", [0, 1, 2])
@pytest.mark.parametrize("model", [X_PAIR, XPRIME_PAIR], ids=["X", "Xp"])
def test_fix_surface_matches_enumeration(model, q, i):
    assert fix_surface(model, fq_make(q), i) == brute_fix_surface(model, q, i)


@pytest.mark.parametrize("q", [5, 11, 17, 23])
@pytest.mark.parametrize("i", [0, 1, 2])
def test_no_ramified_contribution_when_q_is_2_mod_3(q, i):
    assert ram_fibre_fix(X_PAIR, fq_make(q), i) == 0


@pytest.mark.parametrize("q", [7, 13, 19])
def test_ramified_fibres_of_xprime_are_plain_for_i_zero(q):
    from galrep.cubiccover import ram_points

    F = fq_make(q)
    expected = sum(count_fibre(XPRIME_PAIR, t0, F) for _, t0 in ram_points(F))
    assert ram_fibre_fix(XPRIME_PAIR, F, 0) == expected


def test_surface_counts_are_read_only():
    counts, inf = surface_counts(X_PAIR, 7)
    assert inf == count_fibre(X_PAIR, INF, fq_make(7))
    with pytest.raises(ValueError):
        counts[0] = 0


def _poly(entry):
    p, coeffs = entry
    return p, tuple(EisInt(u, v) for u, v in coeffs)


@pytest.mark.parametrize("n", sorted(SURFACE_POLYS))
def test_published_surface_polynomials(n):
    p, coeffs = _poly(SURFACE_POLYS[n])
    cp = surface_charpoly(n)
    assert cp.q == p and cp.d == n
    assert cp.coeffs == coeffs
    assert cp.reflection_holds()
    assert cp.root_magnitude_error() < 1e-30


def test_n4_polynomial_text():
    assert format_charpoly(surface_charpoly(4)) == "T^4 + (1 + 2ζ)T^3 - 20T^2 - (25 + 50ζ)T + 625"


def test_n8_needs_more_than_half_the_power_sums():
    model, p = SURFACE_EXAMPLES[8]
    sums = surface_powersums(model, p, 4)
    with pytest.raises(AmbiguousCharPoly):
        charpoly_from_powersums(sums, 8, 2, p)


@pytest.mark.parametrize("n", [4, 6, 9])
def test_higher_power_sums_follow_from_the_polynomial(n):
    model, p = SURFACE_EXAMPLES[n]
    cp = surface_charpoly(n)
    kmax = (n + 1) // 2 + 1
    assert powersums_of(cp, kmax) == surface_powersums(model, p, kmax)


def test_zeta2_part_is_the_conjugate_of_the_zeta_part():
    model, p = SURFACE_EXAMPLES[5]
    pk = trace_packet(model, fq_make(p))
    assert pk.eigen[2] == pk.eigen[1].conj()
    assert SURFACE_EIGEN_INDEX in (1, 2)


@given(st.sampled_from(sorted(SURFACE_POLYS)))
def test_emitted_polynomials_reflect(n):
    cp = surface_charpoly(n)
    assert cp.xi in UNITS
    assert cp.reflection_holds()


def test_reflection_detects_a_broken_coefficient():
    cp = surface_charpoly(4)
    bad = CharPoly(cp.d, cp.weight, cp.q, (cp.coeffs[0] + 1,) + cp.coeffs[1:], cp.xi)
    assert not bad.reflection_holds()


def test_no_unit_fits_inconsistent_power_sums():
    with pytest.raises(CharPolyError):
        charpoly_from_powersums([EisInt(1000)], 2, 2, 5)


def test_too_few_power_sums():
    with pytest.raises(ValueError):
        charpoly_from_powersums([EisInt(1)], 4, 2, 5)


@given(st.sampled_from(UNITS), st.sampled_from([2, 3, 5, 7]))
def test_powersums_of_a_root_of_unity_polynomial(u, q):
    # T - u q: the k-th power sum is (u q)^k
    cp = CharPoly(1, 2, q, (-(u * q),), u * u)
    assert powersums_of(cp, 3) == [(u * q) ** k for k in (1, 2, 3)]


def test_roots_have_the_right_size():
    cp = surface_charpoly(5)
    with mpmath.workdps(30):
        for r in cp.roots(30):
            assert abs(abs(r) - 7) < mpmath.mpf(10) ** -20


@pytest.mark.parametrize("n", range(4, 13))
def test_surface_dimensions_are_consistent(n):
    d = surface_dimensions(n)
    assert d["h2"] == d["dimA"] + d["dimB"]
    assert d["dimB_zeta"] == n
