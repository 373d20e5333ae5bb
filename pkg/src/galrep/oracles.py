"""Slow reference computations used to cross-check the fast counting code.

Everything here works point by point: s runs over P^1(F_{q^3}), fibres are
counted by enumerating (x, y), and resolved singular fibres are simulated as
explicit permutations of components and nodes.  Only prime q is supported.
"""
from __future__ import annotations

from dataclasses import dataclass

from .arith import FiniteField, fq_make
from .weierstrass import INF, SurfaceModel, brute_count_fibre, poly_valuation


@dataclass(frozen=True)
class FibreShape:
    """Reduction type of a Weierstrass fibre read off from its point count."""

    kind: str  # "smooth" | "split" | "nonsplit" | "additive"
    n: int = 0


def _local(model: SurfaceModel, t):
    return (model.at_infinity, 0) if t is INF else (model, t)


def fibre_shape(model: SurfaceModel, t, F: FiniteField) -> FibreShape:
    local, u = _local(model, t)
    disc = local.reduced_discriminant(F.p)
    n = int(poly_valuation(F, disc, u))
    if n == 0:
        return FibreShape("smooth")
    # singular Weierstrass cubics: q points (split node), q + 2 (non-split node), q + 1 (cusp)
    c = brute_count_fibre(model, t, F) - F.q
    kind = {0: "split", 2: "nonsplit", 1: "additive"}[c]
    return FibreShape(kind, n)


def cycle_fixed_points(n: int, split: bool, q: int) -> tuple[int, list[bool]]:
    """Frobenius-fixed points on a cycle of n rational curves (type I_n).

    Components are indexed by Z/n; each is a P^1 whose points 0 and 1 are the
    ends glued to the neighbours.  Split reduction fixes everything, non-split
    reduction reflects k -> -k and swaps the two ends.  Returns the count and,
    for each fixed node, whether its two branches are swapped.
    """
    def comp(k):
        return k if split else (-k) % n

    def end(k, e):
        return (k, e) if split else ((-k) % n, 1 - e)

    fixed_comps = [k for k in range(n) if comp(k) == k]
    total = (q + 1) * len(fixed_comps)
    swaps = []
    for k in range(n):
        node = {(k, 1), ((k + 1) % n, 0)}
        image = {end(*x) for x in node}
        if image != node:
            continue
        on_fixed = sum(1 for x in node if end(*x) == x and comp(x[0]) == x[0])
        total += 1 - on_fixed
        swaps.append(on_fixed == 0)
    return total, swaps


def _phi(F: FiniteField, s):
    if s is INF:
        return INF
    den = F.mul(3, F.sub(F.mul(s, s), s))
    if den == 0:
        return INF
    s2 = F.mul(s, s)
    return F.div(F.add(F.sub(F.mul(s2, s), F.mul(3, s2)), 1), den)


def _sigma(F: FiniteField, s):
    if s is INF:
        return 1
    if s == 0:
        return INF
    return F.div(F.sub(s, 1), s)


def _frob(F: FiniteField, s, q: int):
    return s if s is INF else F.pow(s, q)


def fixed_s_values(q: int, i: int) -> list:
    """All s in P^1(F_{q^3}) with Fr_q(sigma^i(s)) = s; these are all the fixed s."""
    F3 = fq_make(q, 3)
    out = []
    for s in [INF] + list(range(F3.q)):
        x = s
        for _ in range(i % 3):
            x = _sigma(F3, x)
        if _frob(F3, x, q) == s:
            out.append(s)
    return out


def _down(t, p: int):
    if t is INF:
        return INF
    if not 0 <= t < p:
        raise AssertionError("phi(s) left the prime field")
    return int(t)


def _divide_out_root(F: FiniteField, coeffs, t0: int) -> list[int]:
    quot = [0] * (len(coeffs) - 1)
    acc = 0
    for j in range(len(coeffs) - 1, 0, -1):
        acc = F.add(F.mul(acc, t0), coeffs[j])
        quot[j - 1] = acc
    assert F.add(F.mul(acc, t0), coeffs[0]) == 0
    return quot


def ramified_fixed_points(model: SurfaceModel, q: int, s0: int, i: int) -> int:
    """Fixed points of Fr_q o sigma^i on the minimal fibre of the base change over s0.

    With u = s - s0 and t - t0 = u^3 / (3 s(s - 1)), the substitution x = u^2 x',
    y = u^3 y' turns a type IV fibre y^2 = x^3 + (t - t0)^2 (..) into the smooth
    curve y'^2 = x'^3 + b.  sigma multiplies u by lambda = 1/s0^2 to first
    order, hence acts by x' -> x'/lambda^2, y' -> y'/lambda^3.  The fixed points
    are enumerated over F_{q^3}, where all of them live.
    """
    F = fq_make(q, 1)
    F3 = fq_make(q, 3)
    t0 = _down(_phi(F3, s0), q)
    assert model.is_short
    a4 = [F.from_fraction(c) for c in model.a4]
    a6 = [F.from_fraction(c) for c in model.a6]
    if F.poly_eval(model.reduced_discriminant(q), t0) != 0:
        return brute_count_fibre(model, t0, F)
    # type IV: a4 vanishes to order >= 2 and a6 to order exactly 2
    _divide_out_root(F, _divide_out_root(F, a4, t0), t0)
    g6 = _divide_out_root(F, _divide_out_root(F, a6, t0), t0)
    assert F.poly_eval(g6, t0) != 0
    kappa = F.inv(F.mul(3, F.mul(s0, F.sub(s0, 1))))
    b = F.mul(F.poly_eval(g6, t0), F.mul(kappa, kappa))
    lam = F3.inv(F3.mul(s0, s0))
    lam_i = F3.pow(lam, i % 3)
    lam2, lam3 = F3.pow(lam_i, 2), F3.pow(lam_i, 3)
    fixed_y = [y for y in range(F3.q) if F3.pow(F3.div(y, lam3), q) == y]
    squares: dict[int, int] = {}
    for y in fixed_y:
        y2 = F3.mul(y, y)
        squares[y2] = squares.get(y2, 0) + 1
    count = 1  # the point at infinity
    for x in range(F3.q):
        if F3.pow(F3.div(x, lam2), q) == x:
            count += squares.get(F3.add(F3.pow(x, 3), b), 0)
    return count


def _is_ramified(F3: FiniteField, s) -> bool:
    return s is not INF and _sigma(F3, s) == s


def brute_fix_surface(model: SurfaceModel, q: int, i: int) -> int:
    """Fixed points of Fr_q o sigma^i on the base-changed Weierstrass surface."""
    F = fq_make(q, 1)
    F3 = fq_make(q, 3)
    total = 0
    for s in fixed_s_values(q, i):
        if _is_ramified(F3, s):
            total += ramified_fixed_points(model, q, s, i)
            continue
        total += brute_count_fibre(model, _down(_phi(F3, s), q), F)
    return total


def _resolved(model: SurfaceModel, t, F: FiniteField) -> tuple[int, list[bool]]:
    shape = fibre_shape(model, t, F)
    if shape.kind == "smooth":
        return brute_count_fibre(model, t, F), []
    if shape.kind == "additive":
        raise ValueError(f"additive fibre of {model.label} at t={t}")
    return cycle_fixed_points(shape.n, shape.kind == "split", F.q)


def brute_fix_threefold(X: SurfaceModel, Xp: SurfaceModel, q: int, i: int) -> int:
    """Fixed points of Fr_q o sigma^i on the blown-up fibre product.

    Each fixed node pair (one node from each side) is replaced by a quadric;
    its two rulings are swapped exactly when one of the two nodes has its
    branches swapped, giving q^2 + 1 instead of (q + 1)^2 fixed points.
    """
    F = fq_make(q, 1)
    F3 = fq_make(q, 3)
    total = 0
    for s in fixed_s_values(q, i):
        if _is_ramified(F3, s):
            t0 = _down(_phi(F3, s), q)
            if fibre_shape(Xp, t0, F).kind != "smooth":
                raise ValueError("X' is singular over a ramification point")
            total += ramified_fixed_points(X, q, s, i) * brute_count_fibre(Xp, t0, F)
            continue
        t = _down(_phi(F3, s), q)
        fx, nodes_x = _resolved(X, t, F)
        fxp, nodes_xp = _resolved(Xp, t, F)
        count = fx * fxp
        for a in nodes_x:
            for b in nodes_xp:
                count += (q * q + 1 if a != b else (q + 1) ** 2) - 1
        total += count
    return total
