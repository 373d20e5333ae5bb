"""The four-dimensional piece of H^3 of the resolved fibre product of E and E'.

Traces of Fr_q o sigma^i on H^3 come from the Lefschetz formula once the H^2
trace is known.  The H^2 trace is bookkept from the two surfaces plus the extra
divisors over the bad fibres (exceptional quadrics over nodes and products of
fibre components); that this list generates H^2 is an assumption, flagged by
``ASSUMES_DIVISOR_GENERATION``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .arith import UNITS, ZETA2, EisFrac, EisInt, FiniteField, NonIntegralError, fq_make, fq_of_size
from .cubiccover import partition, ram_points
from .surfrep import (
    CharPoly,
    CharPolyError,
    eigen_traces,
    fix_surface,
    ramified_fibre_data,
    surface_counts,
    twisted_cubic_count,
    cubic_residue_class,
)
from .weierstrass import (
    INF,
    X_PAIR,
    XPRIME_PAIR,
    BadPrimeError,
    FibreClass,
    SurfaceModel,
    classify_fibre,
    count_fibre,
)

ASSUMES_DIVISOR_GENERATION = True


@dataclass(frozen=True)
class ThreefoldConfig:
    X: SurfaceModel = X_PAIR
    Xp: SurfaceModel = XPRIME_PAIR
    # bad fibres of W over the t-line: (n, n') for the I_n x I_n' pairs
    inventory: dict = field(
        default_factory=lambda: {"inf": (2, 9), "3t^2+3t+1": (1, 1), "-1": (0, 1)}
    )
    euler_characteristic: int = 240
    h2: int = 127
    h3: int = 16
    dim_h3_invariant: int = 8
    dim_h3_zeta: int = 4
    extra_divisors: int = 84
    extra_divisor_orbits: int = 28

    def fibres_over_s(self) -> list[tuple[int, int]]:
        """(n, n') for every singular fibre of E x E' over the s-line, three per t."""
        out = []
        for key, (n, m) in self.inventory.items():
            copies = 3 * (2 if key == "3t^2+3t+1" else 1)
            out += [(n, m)] * copies
        return out

    def census_euler(self) -> int:
        return 4 * sum(n * m for n, m in self.fibres_over_s())

    def census_divisors(self) -> int:
        return sum(n * m + max(n - 1, 0) * max(m - 1, 0) for n, m in self.fibres_over_s() if n and m)

    def census_h2(self) -> int:
        # h^2(E) = h^2(E') = 34 restricted to the shared classes: 10 + 34 - 1
        return 10 + 34 - 1 + self.census_divisors()

    def census_orbits(self) -> int:
        # sigma permutes the three copies over each t freely
        return self.census_divisors() // 3

    def census_h3(self) -> int:
        # h^1 = h^5 = 0, so chi = 2 + 2 h^2 - h^3
        return 2 + 2 * self.census_h2() - self.census_euler()

    def census_h3_zeta(self) -> int:
        # zeta and zeta^2 parts are complex conjugate, hence equal in size
        return (self.census_h3() - self.dim_h3_invariant) // 2


DEFAULT_CONFIG = ThreefoldConfig()


# ---------------------------------------------------------------------------
# fibres of the resolved fibre product


def fibre_count(fc: FibreClass, model: SurfaceModel, t, F: FiniteField) -> int:
    """Points on the fibre of the smooth relatively minimal surface at ``t``."""
    if fc.kind == "smooth":
        return count_fibre(model, t, F)
    if fc.is_multiplicative:
        return fc.neron_count(F.q)
    raise BadPrimeError(f"additive fibre {fc.symbol} of {model.label} at t={t} in the fibre product")


def node_correction(fx: FibreClass, fxp: FibreClass, q: int) -> int:
    """Extra points from blowing up the rational nodes of an I_n x I_m fibre into quadrics."""
    if not (fx.is_multiplicative and fxp.is_multiplicative):
        if fx.kind == "additive" or fxp.kind == "additive":
            raise BadPrimeError("additive fibre where a multiplicative one was expected")
        return 0
    full = (q + 1) ** 2 - 1
    if fx.split and fxp.split:
        return fx.n * fxp.n * full
    odd_ns = [f for f in (fx, fxp) if not f.split]
    if any(f.n % 2 == 0 for f in odd_ns):
        return 0
    if len(odd_ns) == 1:
        other = fxp if fx is odd_ns[0] else fx
        return other.n * q**2  # rulings swapped by Frobenius: q^2 + 1 points, minus the node
    return full


@dataclass(frozen=True)
class BadFibre:
    t: object
    label: int
    fx: FibreClass
    fxp: FibreClass

    def count(self, cfg: ThreefoldConfig, F: FiniteField) -> int:
        return (
            fibre_count(self.fx, cfg.X, self.t, F) * fibre_count(self.fxp, cfg.Xp, self.t, F)
            + node_correction(self.fx, self.fxp, F.q)
        )

    def extra_fixed_divisors(self) -> int:
        """Fixed extra divisor classes over one point of the s-line above t."""
        return self.fx.rational_nodes() * self.fxp.rational_nodes() + (
            self.fx.fixed_components() * self.fxp.fixed_components()
        )


def _check_q(F: FiniteField):
    if F.p in (2, 3):
        raise BadPrimeError(f"q = {F.q} is not coprime to 6")


def bad_fibres(F: FiniteField, cfg: ThreefoldConfig = DEFAULT_CONFIG) -> list[BadFibre]:
    """Unramified t in P^1(F_q) where X or X' is singular, with their K-labels."""
    _check_q(F)
    part = partition(F)
    ts = F.elements()
    sing = np.zeros(F.q, dtype=bool)
    for model in (cfg.X, cfg.Xp):
        sing |= F.poly_eval(model.reduced_discriminant(F.p), ts) == 0
    out = []
    for t in [int(x) for x in np.flatnonzero(sing)] + [INF]:
        label = part.label_of(t)
        if label < 0:
            continue
        out.append(BadFibre(t, label, classify_fibre(cfg.X, t, F), classify_fibre(cfg.Xp, t, F)))
    return out


def ram_fix_threefold(F: FiniteField, i: int, cfg: ThreefoldConfig = DEFAULT_CONFIG) -> int:
    """R^(i): per ramification point, fixed points on E_{s0} times points on X'_{t0}."""
    total = 0
    for s0, t0 in ram_points(F):
        kind, b = ramified_fibre_data(cfg.X, F, s0, t0)
        if kind == "smooth":
            ex = count_fibre(cfg.X, t0, F)
        else:
            c = 1 if i % 3 == 0 else cubic_residue_class(F, F.pow(t0, i % 3))
            ex = twisted_cubic_count(F, b, c)
        if F.poly_eval(cfg.Xp.reduced_discriminant(F.p), t0) == 0:
            raise BadPrimeError("X' is singular at a ramification point")
        total += ex * count_fibre(cfg.Xp, t0, F)
    return total


def fix_threefold(F: FiniteField, i: int, cfg: ThreefoldConfig = DEFAULT_CONFIG) -> int:
    """Fixed points of Fr_q o sigma^i on the resolved fibre product."""
    _check_q(F)
    part = partition(F)
    cx, cx_inf = surface_counts(cfg.X, F.p, F.k)
    cxp, cxp_inf = surface_counts(cfg.Xp, F.p, F.k)
    members = part.K(i)
    prod = cx[members].astype(np.int64) * cxp[members].astype(np.int64)
    total = int(prod.sum())
    if i % 3 == 0:
        total += cx_inf * cxp_inf
    for bf in bad_fibres(F, cfg):
        if bf.label != i % 3:
            continue
        naive = cx_inf * cxp_inf if bf.t is INF else int(cx[bf.t]) * int(cxp[bf.t])
        total += bf.count(cfg, F) - naive
    return 3 * total + ram_fix_threefold(F, i, cfg)


# ---------------------------------------------------------------------------
# H^2 bookkeeping and H^3 traces


def _surface_fixed_components(model_side: int, F: FiniteField, i: int, bads: list[BadFibre]) -> int:
    total = 0
    for bf in bads:
        if bf.label == i % 3:
            fc = bf.fx if model_side == 0 else bf.fxp
            total += 3 * fc.fixed_components()
    return total


def surface_trace_H2(model: SurfaceModel, side: int, F: FiniteField, i: int, bads) -> int:
    """Tr(Fr_q o sigma^i | H^2(E)) = Tr on B(E) + q (2 + fixed fibre components)."""
    traceB = fix_surface(model, F, i) - (F.q + 1) ** 2
    return traceB + F.q * (2 + _surface_fixed_components(side, F, i, bads))


def extra_divisors_fixed(F: FiniteField, i: int, bads) -> int:
    return sum(3 * bf.extra_fixed_divisors() for bf in bads if bf.label == i % 3)


def trace_H2(F: FiniteField, i: int, cfg: ThreefoldConfig = DEFAULT_CONFIG) -> int:
    bads = bad_fibres(F, cfg)
    return (
        surface_trace_H2(cfg.X, 0, F, i, bads)
        + surface_trace_H2(cfg.Xp, 1, F, i, bads)
        - F.q
        + F.q * extra_divisors_fixed(F, i, bads)
    )


@dataclass(frozen=True)
class H3Trace:
    q: int
    i: int
    trH2: int
    trH3: int
    fix: int


def trace_H3(F: FiniteField, i: int, cfg: ThreefoldConfig = DEFAULT_CONFIG) -> H3Trace:
    q = F.q
    fix = fix_threefold(F, i, cfg)
    h2 = trace_H2(F, i, cfg)
    return H3Trace(q, i, h2, 1 + q**3 + (1 + q) * h2 - fix, fix)


def solve_k(q: int, fix: int, transcendental_h2: int, transcendental_h4: int, h3: int = 16) -> tuple[int, int]:
    """Unique k with |1 + q^3 + k(q + q^2) + Tr H2_tr + Tr H4_tr - Fix| <= h3 q^(3/2).

    Returns (k, trH3) with trH3 the value inside the absolute value.
    """
    if (q * q + q) <= 2 * h3 * q**1.5:
        raise ValueError(f"q = {q} is below the uniqueness window for k")
    base = 1 + q**3 + transcendental_h2 + transcendental_h4 - fix
    bound = h3 * q**1.5
    step = q + q * q
    lo = math.ceil((-bound - base) / step)
    hi = math.floor((bound - base) / step)
    ks = list(range(lo, hi + 1))
    if len(ks) != 1:
        raise ValueError(f"{len(ks)} integers k satisfy the Weil bound at q = {q}")
    k = ks[0]
    return k, base + k * step


def trace_H3_via_k(F: FiniteField, i: int, cfg: ThreefoldConfig = DEFAULT_CONFIG) -> tuple[int, int]:
    """Cross-check route: only the transcendental parts of H^2 are counted, k is solved for."""
    q = F.q
    tb = sum(fix_surface(m, F, i) - (q + 1) ** 2 for m in (cfg.X, cfg.Xp))
    k, h3 = solve_k(q, fix_threefold(F, i, cfg), tb, q * tb)
    return k, h3


# ---------------------------------------------------------------------------
# a_p, b_p and the degree-4 polynomials


@dataclass(frozen=True)
class APRecord:
    p: int
    a_p: EisInt
    b_p: EisInt | None = None

    @property
    def xi(self) -> EisInt | None:
        return None if self.b_p is None else charpoly4(self.a_p, self.b_p, self.p).xi

    @property
    def a_p_twisted(self) -> EisInt:
        return twist(self.a_p, self.p)


def eigen_trace_h3(F: FiniteField, cfg: ThreefoldConfig = DEFAULT_CONFIG) -> EisInt:
    traces = [trace_H3(F, i, cfg).trH3 for i in range(3)]
    return eigen_traces(*traces)[1]


def compute_ap(p: int, cfg: ThreefoldConfig = DEFAULT_CONFIG) -> EisInt:
    if p < 5:
        raise BadPrimeError("a_p needs p >= 5")
    return eigen_trace_h3(fq_make(p, 1), cfg)


def compute_bp(p: int, cfg: ThreefoldConfig = DEFAULT_CONFIG) -> EisInt:
    if p < 5:
        raise BadPrimeError("b_p needs p >= 5")
    return eigen_trace_h3(fq_make(p, 2), cfg)


def ap_bp(p: int, need_b: bool = False, cfg: ThreefoldConfig = DEFAULT_CONFIG) -> APRecord:
    a = compute_ap(p, cfg)
    b = compute_bp(p, cfg) if need_b else None
    return APRecord(p, a, b)


def charpoly4(a_p: EisInt, b_p: EisInt, p: int) -> CharPoly:
    """T^4 + d3 T^3 + d2 T^2 + d1 T + d0 on the zeta-part of H^3 from a_p and b_p."""
    a_p, b_p = EisInt.coerce(a_p), EisInt.coerce(b_p)
    d3 = -a_p
    try:
        d2 = ((a_p * a_p - b_p) / 2).to_eisint()
    except NonIntegralError as exc:
        raise NonIntegralError(f"a_p^2 - b_p is not divisible by 2 at p = {p}") from exc
    if d2:
        ratio = EisFrac.of(d2) / d2.conj()
        if not (ratio.is_integral() and ratio.num.is_unit()):
            raise CharPolyError(f"d2 / conj(d2) is not a unit at p = {p}")
        candidates = [ratio.num]
    else:
        candidates = list(UNITS)
    good = []
    for xi in candidates:
        cp = CharPoly(4, 3, p, (xi * p**6, xi * d3.conj() * p**3, d2, d3), xi)
        if cp.reflection_holds() and cp.root_magnitude_error() < 1e-20:
            good.append(cp)
    if len(good) != 1:
        raise CharPolyError(f"{len(good)} units fit the degree-4 polynomial at p = {p}")
    return good[0]


# ---------------------------------------------------------------------------
# the determinant character and the twist


def _xi_char_mod9(r: int) -> EisInt:
    """The order-3 character of (Z/9)* with 2 -> zeta^2."""
    r %= 9
    if math.gcd(r, 3) != 1:
        raise ValueError("character is undefined at multiples of 3")
    e = next(j for j in range(6) if pow(2, j, 9) == r)
    return ZETA2 ** (e % 3)


DETERMINANT_CHARACTER = {r: _xi_char_mod9(r) for r in (1, 2, 4, 5, 7, 8)}


def determinant_character(p: int) -> EisInt:
    """epsilon(p) with det = epsilon * cyclotomic^3 on the four-dimensional piece."""
    return DETERMINANT_CHARACTER[p % 9]


def twist_character(p: int) -> EisInt:
    return determinant_character(p).conj()


def twist(a_p: EisInt, p: int) -> EisInt:
    return twist_character(p) * EisInt.coerce(a_p)


def twist_b(b_p: EisInt, p: int) -> EisInt:
    eta = twist_character(p)
    return eta * eta * EisInt.coerce(b_p)


def character_from_xis(xis: dict[int, EisInt]) -> dict[int, EisInt]:
    """Fit the observed xi(p) to a character of (Z/9)*; error when they disagree."""
    table: dict[int, EisInt] = {}
    for p, xi in xis.items():
        r = p % 9
        if r in table and table[r] != xi:
            raise ValueError(f"xi({p}) = {xi} contradicts xi = {table[r]} on the class {r} mod 9")
        table[r] = xi
    for a in table:
        for b in table:
            ab = a * b % 9
            if ab in table and table[ab] != table[a] * table[b]:
                raise ValueError("observed xi values are not multiplicative mod 9")
    return table


def twisted_charpoly(a_p: EisInt, b_p: EisInt, p: int) -> CharPoly:
    return charpoly4(twist(a_p, p), twist_b(b_p, p), p)


@lru_cache(maxsize=None)
def _cached_ap(p: int) -> EisInt:
    return compute_ap(p)


def field_for(q: int) -> FiniteField:
    return fq_of_size(q)
