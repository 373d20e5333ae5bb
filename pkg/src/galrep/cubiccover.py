"""The cyclic cubic cover t = (s^3 - 3s^2 + 1)/(3s^2 - 3s) with deck map s -> (s-1)/s."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .arith import FiniteField, fq_make, fq_of_size
from .weierstrass import INF


def _field(q_or_field) -> FiniteField:
    return q_or_field if isinstance(q_or_field, FiniteField) else fq_of_size(int(q_or_field))


@dataclass(frozen=True)
class Partition:
    """Labels of t in F_q: 0, 1, 2 for K0, K1, K2 and -1 for ramified t.  INF is in K0."""

    q: int
    labels: np.ndarray
    ram: tuple[int, ...]

    def K(self, i: int) -> np.ndarray:
        return np.flatnonzero(self.labels == i)

    def sizes(self) -> tuple[int, int, int]:
        return tuple(int(np.count_nonzero(self.labels == i)) for i in range(3))

    def label_of(self, t) -> int:
        return 0 if t is INF else int(self.labels[t])

    def members(self, i: int) -> list:
        out = [int(t) for t in self.K(i)]
        return out + [INF] if i == 0 else out


def _resolvent_coeffs(F: FiniteField, t):
    """x^3 = e2 x^2 + e1 x + e0 modulo the cubic x^3 - 3(t+1)x^2 + 3tx + 1."""
    three = 3 % F.p
    e2 = F.mul(three, F.add(t, 1))
    e1 = F.neg(F.mul(three, t))
    e0 = F.neg(np.ones_like(t)) if np.ndim(t) else F.neg(1)
    return e2, e1, e0


def _mulmod(F: FiniteField, a, b, e):
    a0, a1, a2 = a
    b0, b1, b2 = b
    e2, e1, e0 = e
    m, ad = F.mul, F.add
    p0 = m(a0, b0)
    p1 = ad(m(a0, b1), m(a1, b0))
    p2 = ad(ad(m(a0, b2), m(a1, b1)), m(a2, b0))
    p3 = ad(m(a1, b2), m(a2, b1))
    p4 = m(a2, b2)
    # x^4 = (e2^2 + e1) x^2 + (e2 e1 + e0) x + e2 e0
    f2 = ad(m(e2, e2), e1)
    f1 = ad(m(e2, e1), e0)
    f0 = m(e2, e0)
    r0 = ad(ad(p0, m(p3, e0)), m(p4, f0))
    r1 = ad(ad(p1, m(p3, e1)), m(p4, f1))
    r2 = ad(ad(p2, m(p3, e2)), m(p4, f2))
    return r0, r1, r2


def x_power_mod_resolvent(F: FiniteField, t, e: int):
    """Coefficients (r0, r1, r2) of x^e modulo the resolvent cubic at ``t`` (vectorised)."""
    t = np.asarray(t, dtype=np.int64)
    coeffs = _resolvent_coeffs(F, t)
    zero, one = np.zeros_like(t), np.ones_like(t)
    result = (one, zero, zero)
    base = (zero, one, zero)
    while e:
        if e & 1:
            result = _mulmod(F, result, base, coeffs)
        base = _mulmod(F, base, base, coeffs)
        e >>= 1
    return result


def partition(q_or_field) -> Partition:
    """Split F_q into K0, K1, K2 by the Frobenius action on the fibre of the cover."""
    F = _field(q_or_field)
    return _partition(F.p, F.k)


@lru_cache(maxsize=4)
def _partition(p: int, k: int) -> Partition:
    F = fq_make(p, k)
    if F.p == 3:
        raise ValueError("the cover degenerates in characteristic 3")
    ts = F.elements()
    r0, r1, r2 = x_power_mod_resolvent(F, ts, F.q)
    in_k0 = (r0 == 0) & (r1 == 1) & (r2 == 0)
    # x^(q+1) = x * x^q, reduced once more
    e2, e1, e0 = _resolvent_coeffs(F, ts)
    s0 = F.mul(r2, e0)
    s1 = F.add(r0, F.mul(r2, e1))
    s2 = F.add(r1, F.mul(r2, e2))
    # x^(q+1) - x + 1 == 0
    in_k2 = (s0 == F.neg(1)) & (s1 == 1) & (s2 == 0)
    tt1 = F.add(F.add(F.mul(ts, ts), ts), 1)
    ramified = tt1 == 0
    labels = np.ones(F.q, dtype=np.int8)
    labels[in_k0] = 0
    labels[in_k2] = 2
    labels[ramified] = -1
    labels.setflags(write=False)
    return Partition(F.q, labels, tuple(int(t) for t in np.flatnonzero(ramified)))


def ram_points(q_or_field) -> list[tuple[int, int]]:
    """(s0, t0) for the ramification points: t0^2 + t0 + 1 = 0 and s0 = -t0^2."""
    F = _field(q_or_field)
    out = []
    for t0 in partition(F).ram:
        s0 = F.neg(F.mul(t0, t0))
        out.append((s0, t0))
    return out


def phi(F: FiniteField, s):
    """t = (s^3 - 3s^2 + 1)/(3s^2 - 3s) on P^1(F_q); INF for s in {0, 1, INF}."""
    if s is INF:
        return INF
    three = 3 % F.p
    den = F.mul(three, F.sub(F.mul(s, s), s))
    if den == 0:
        return INF
    num = F.add(F.sub(F.mul(F.mul(s, s), s), F.mul(three, F.mul(s, s))), 1)
    return F.div(num, den)


def sigma(F: FiniteField, s):
    """s -> (s - 1)/s; cycles INF -> 1 -> 0 -> INF."""
    if s is INF:
        return 1
    if s == 0:
        return INF
    return F.div(F.sub(s, 1), s)


def sigma_derivative_at_fixed_point(F: FiniteField, s0: int) -> int:
    """d sigma/ds at a fixed point s0, where s0^2 - s0 + 1 = 0."""
    return F.inv(F.mul(s0, s0))
