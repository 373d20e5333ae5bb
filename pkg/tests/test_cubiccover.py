import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from galrep.arith import fq_make, fq_of_size, primes_below
from galrep.cubiccover import partition, phi, ram_points, sigma, sigma_derivative_at_fixed_point
from galrep.weierstrass import INF

PRIME_POWERS = [p for p in primes_below(2000) if p > 3] + [25, 49, 121, 169, 289, 125, 343]


def cover_cubic(F, t, s):
    """s^3 - 3(t + 1) s^2 + 3 t s + 1, the numerator of phi(s) - t."""
    s2 = F.mul(s, s)
    return F.add(F.sub(F.mul(s2, s), F.mul(F.mul(3, F.add(t, 1)), s2)), F.add(F.mul(F.mul(3, t), s), 1))


@given(st.sampled_from(PRIME_POWERS))
def test_partition_sanity(q):
    part = partition(q)
    sizes = part.sizes()
    assert sum(sizes) + len(part.ram) == q
    assert (len(part.ram) == 0) == (q % 3 != 1)
    assert len(part.ram) in (0, 2)
    # K1 and K2 are swapped by conjugation, so they have the same size
    assert sizes[1] == sizes[2]


@pytest.mark.parametrize("q", [5, 7, 11, 13, 25])
def test_k0_splits_and_the_rest_is_irreducible(q):
    F = fq_of_size(q)
    part = partition(q)
    ss = F.elements()
    for t in range(q):
        roots = np.count_nonzero(cover_cubic(F, t, ss) == 0)
        label = part.label_of(t)
        if label == 0:
            # three distinct roots, counting the pole s in {0, 1} never happens for finite t
            assert roots == 3
        elif label in (1, 2):
            assert roots == 0


@pytest.mark.parametrize("q", [5, 7, 11, 13])
def test_frobenius_acts_as_sigma_or_its_square(q):
    F3 = fq_make(q, 3)
    part = partition(q)
    ss = F3.elements()
    for t in range(q):
        label = part.label_of(t)
        if label not in (1, 2):
            continue
        roots = [int(s) for s in ss[cover_cubic(F3, t, ss) == 0]]
        assert len(roots) == 3
        for s in roots:
            image = sigma(F3, s) if label == 2 else sigma(F3, sigma(F3, s))
            assert F3.pow(s, q) == image


def test_ramification_points_mod_7():
    F = fq_make(7)
    pts = ram_points(F)
    assert len(pts) == 2
    for s0, t0 in pts:
        assert F.add(F.add(F.mul(t0, t0), t0), 1) == 0
        assert F.pow(s0, 3) == F.neg(1)
        assert s0 == F.add(t0, 1)
        # the fibre over t0 is the single point s0 with multiplicity three
        for s in range(7):
            diff = F.sub(s, s0)
            assert cover_cubic(F, t0, s) == F.mul(F.mul(diff, diff), diff)
        assert sigma(F, s0) == s0


@pytest.mark.parametrize("q", [5, 11, 17, 23, 29])
def test_no_ramification_when_q_is_2_mod_3(q):
    assert ram_points(q) == []


@given(st.sampled_from([5, 7, 11, 13, 25, 49]), st.data())
def test_phi_is_sigma_invariant(q, data):
    F = fq_of_size(q)
    s = data.draw(st.sampled_from([INF] + list(range(q))))
    assert phi(F, sigma(F, s)) == phi(F, s)
    assert sigma(F, sigma(F, sigma(F, s))) == s


def test_sigma_cycles_the_poles():
    F = fq_make(7)
    assert sigma(F, INF) == 1 and sigma(F, 1) == 0 and sigma(F, 0) is INF
    assert all(phi(F, s) is INF for s in (0, 1, INF))


def test_sigma_derivative_is_a_cube_root_of_unity():
    F = fq_make(13)
    for s0, _ in ram_points(F):
        lam = sigma_derivative_at_fixed_point(F, s0)
        assert lam != 1 and F.pow(lam, 3) == 1


def test_partition_labels_are_read_only():
    part = partition(7)
    with pytest.raises(ValueError):
        part.labels[0] = 2


def test_characteristic_three_is_rejected():
    with pytest.raises(ValueError):
        partition(9)
