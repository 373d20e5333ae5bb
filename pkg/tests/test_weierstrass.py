import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from galrep.arith import fq_make, primes_below
from galrep.oracles import cycle_fixed_points, fibre_shape
from galrep.weierstrass import (
    INF,
    SURFACE_EXAMPLES,
    X_PAIR,
    XPRIME_PAIR,
    FibreClass,
    classify_fibre,
    count_fibre,
    family_specialize,
    fibre_counts,
    multiplicative_degree_sum,
    padd,
    pmul,
    poly,
    pscale,
)


def enumerate_points(coeffs, F):
    """Projective points of y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6, one x at a time."""
    a1, a2, a3, a4, a6 = (int(c) for c in coeffs)
    ys = F.elements()
    n = 1
    for x in range(F.q):
        rhs = F.add(F.add(F.mul(F.mul(x, x), x), F.mul(a2, F.mul(x, x))), F.add(F.mul(a4, x), a6))
        lhs = F.add(F.mul(ys, ys), F.mul(F.add(F.mul(a1, x), a3), ys))
        n += int(np.count_nonzero(lhs == rhs))
    return n


def test_n6_surface_fibre_at_zero_over_f2():
    model = SURFACE_EXAMPLES[6][0]
    F = fq_make(2)
    assert enumerate_points(model.fibre_coeffs(0, F), F) == 3
    assert count_fibre(model, 0, F) == 3


@pytest.mark.parametrize("p,k", [(5, 1), (7, 1), (13, 1), (5, 2), (7, 2)])
@pytest.mark.parametrize("model", [X_PAIR, XPRIME_PAIR], ids=lambda m: m.label)
def test_fibre_counts_match_enumeration(model, p, k):
    F = fq_make(p, k)
    counts = fibre_counts(model, F, "sums")
    for t in range(F.q):
        assert counts[t] == enumerate_points(model.fibre_coeffs(t, F), F), t
    assert count_fibre(model, INF, F) == enumerate_points(model.fibre_coeffs(INF, F), F)


EXAMPLE_FIELDS = [(n, k) for n, (_, p) in sorted(SURFACE_EXAMPLES.items()) for k in (1, 2, 3) if p == 2 or k < 3]


@pytest.mark.parametrize("n,k", EXAMPLE_FIELDS)
def test_example_surface_counts(n, k):
    model, p = SURFACE_EXAMPLES[n]
    F = fq_make(p, k)
    counts = fibre_counts(model, F)
    for t in range(F.q):
        assert counts[t] == enumerate_points(model.fibre_coeffs(t, F), F)


@pytest.mark.parametrize("p", [41, 43, 47, 53])
@pytest.mark.parametrize("model", [X_PAIR, XPRIME_PAIR], ids=lambda m: m.label)
def test_group_orders_agree_with_character_sums(model, p):
    F = fq_make(p, 2)
    assert np.array_equal(fibre_counts(model, F, "orders"), fibre_counts(model, F, "sums"))


@given(st.sampled_from([p for p in primes_below(400) if p > 3]))
def test_hasse_bound_on_smooth_fibres(p):
    F = fq_make(p)
    for model in (X_PAIR, XPRIME_PAIR):
        counts = fibre_counts(model, F)
        disc = F.poly_eval(model.reduced_discriminant(p), F.elements())
        smooth = counts[disc != 0]
        assert np.all(np.abs(smooth - (p + 1)) <= 2 * math.sqrt(p))


@pytest.mark.parametrize("p", [5, 7, 11, 13])
def test_singular_counts_decide_splitness(p):
    # a nodal cubic has q points when split and q + 2 when not
    F = fq_make(p)
    for model in (X_PAIR, XPRIME_PAIR):
        for t in [INF] + list(range(p)):
            fc = classify_fibre(model, t, F)
            shape = fibre_shape(model, t, F)
            if fc.is_multiplicative:
                assert shape.kind == ("split" if fc.split else "nonsplit")
                assert fc.n == shape.n
                assert count_fibre(model, t, F) == fc.weierstrass_count(p)
            elif fc.kind == "smooth":
                assert shape.kind == "smooth"
            else:
                assert shape.kind == "additive"


def test_xprime_at_infinity_mod_5():
    F = fq_make(5)
    fc = classify_fibre(XPRIME_PAIR, INF, F)
    assert fc.is_multiplicative and fc.n == 9
    assert fc.split == (fibre_shape(XPRIME_PAIR, INF, F).kind == "split")


def test_x_smooth_away_from_discriminant_mod_7():
    F = fq_make(7)
    disc = X_PAIR.reduced_discriminant(7)
    for t in range(7):
        if F.poly_eval(disc, t) != 0:
            assert classify_fibre(X_PAIR, t, F).kind == "smooth"


@pytest.mark.parametrize("n", range(1, 10))
@pytest.mark.parametrize("split", [True, False])
@pytest.mark.parametrize("q", [5, 7, 11])
def test_neron_bookkeeping_matches_component_simulation(n, split, q):
    fc = FibreClass("multiplicative", n, split)
    count, nodes = cycle_fixed_points(n, split, q)
    assert fc.neron_count(q) == count
    assert fc.rational_nodes() == len(nodes)
    fixed_comps = n if split else (2 if n % 2 == 0 else 1)
    assert fc.fixed_components() == fixed_comps - 1


def test_family_specialisation_recovers_the_pair():
    X, Xp, bad = family_specialize(3, 1)
    assert X == X_PAIR and Xp == XPRIME_PAIR
    assert bad == {2, 3}


def test_family_rejects_degenerate_parameters():
    with pytest.raises(ValueError):
        family_specialize(2, 2)
    with pytest.raises(ValueError):
        family_specialize(0, 1)


def test_family_discriminant_identity():
    # the cover's resolvent has discriminant 81 (t^2 + t + 1)^2: a = 1, b = -3(t+1), c = 3t, d = 1
    a, b, c, d = poly(1), poly(-3, -3), poly(0, 3), poly(1)
    terms = [
        pscale(pmul(pmul(a, b), pmul(c, d)), 18),
        pscale(pmul(pmul(b, pmul(b, b)), d), -4),
        pmul(pmul(b, b), pmul(c, c)),
        pscale(pmul(a, pmul(c, pmul(c, c))), -4),
        pscale(pmul(pmul(a, a), pmul(d, d)), -27),
    ]
    disc = ()
    for term in terms:
        disc = padd(disc, term)
    tt1 = poly(1, 1, 1)
    assert disc == pscale(pmul(tt1, tt1), 81)


@pytest.mark.parametrize("model", [X_PAIR, XPRIME_PAIR], ids=lambda m: m.label)
def test_multiplicative_degree_is_stable(model):
    # over primes where 3t^2 + 3t + 1 splits the count is complete; elsewhere two I_1 are missing
    seen = {}
    for p in [p for p in primes_below(200) if p > 3]:
        F = fq_make(p)
        splits = F.chi((9 - 12) % p) == 1  # discriminant of 3t^2 + 3t + 1
        seen.setdefault(splits, set()).add(multiplicative_degree_sum(model, F))
    assert all(len(v) == 1 for v in seen.values())
    assert seen[True].pop() - seen[False].pop() == 2
