"""Elliptic surfaces given by Weierstrass equations over Q[t].

A model is ``y^2 + a1 x y + a3 y = x^3 + a2 x^2 + a4 x + a6`` with each ``a_i`` a
polynomial in ``t`` with rational coefficients.  Fibres are counted on the
projective Weierstrass cubic, so a singular fibre contributes its singular
point as well.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache

import numpy as np

from ._kernels import cubic_char_sums, cubic_char_sums_ext, ec_counts_fp2
from .arith import FiniteField, factorize

Poly = tuple[Fraction, ...]


class BadPrimeError(ValueError):
    """The model does not have good reduction where it was asked to."""


class _Infinity:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()


# ---------------------------------------------------------------------------
# polynomials in t with Fraction coefficients, low degree first


def poly(*coeffs) -> Poly:
    return _trim(tuple(Fraction(c) for c in coeffs))


def _trim(a) -> Poly:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return tuple(a)


def padd(a: Poly, b: Poly) -> Poly:
    n = max(len(a), len(b))
    return _trim(
        (a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)
    )


def pscale(a: Poly, c) -> Poly:
    return _trim(x * c for x in a)


def pmul(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return ()
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _trim(out)


def ppow(a: Poly, e: int) -> Poly:
    out = (Fraction(1),)
    for _ in range(e):
        out = pmul(out, a)
    return out


def pcompose(a: Poly, b: Poly) -> Poly:
    """``a(b(t))``."""
    out: Poly = ()
    for c in reversed(a):
        out = padd(pmul(out, b), (c,))
    return out


def pdeg(a: Poly) -> int:
    return len(a) - 1


def peval(a: Poly, t) -> Fraction:
    acc = Fraction(0)
    for c in reversed(a):
        acc = acc * t + c
    return acc


def reduce_poly(a: Poly, p: int) -> tuple[int, ...]:
    out = []
    for c in a:
        if c.denominator % p == 0:
            raise BadPrimeError(f"coefficient {c} is not {p}-integral")
        out.append(c.numerator * pow(c.denominator, -1, p) % p)
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def poly_valuation(F: FiniteField, coeffs, t0: int) -> float:
    """Order of vanishing at ``t0`` of a polynomial with prime-subfield coefficients."""
    c = [int(x) for x in coeffs]
    if not any(c):
        return float("inf")
    v = 0
    while True:
        # synthetic division by (t - t0)
        acc = 0
        quot = []
        for x in reversed(c):
            acc = F.add(F.mul(acc, t0), x)
            quot.append(acc)
        if acc != 0:
            return v
        v += 1
        c = list(reversed(quot[:-1]))


# ---------------------------------------------------------------------------
# models


@dataclass(frozen=True)
class SurfaceModel:
    a1: Poly = ()
    a2: Poly = ()
    a3: Poly = ()
    a4: Poly = ()
    a6: Poly = ()
    label: str = field(default="", compare=False)

    @classmethod
    def from_coeffs(cls, a1=(), a2=(), a3=(), a4=(), a6=(), label=""):
        return cls(poly(*a1), poly(*a2), poly(*a3), poly(*a4), poly(*a6), label)

    @property
    def coeffs(self) -> tuple[Poly, Poly, Poly, Poly, Poly]:
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    @property
    def is_short(self) -> bool:
        return not (self.a1 or self.a2 or self.a3)

    @cached_property
    def b_invariants(self) -> tuple[Poly, Poly, Poly, Poly]:
        a1, a2, a3, a4, a6 = self.coeffs
        b2 = padd(pmul(a1, a1), pscale(a2, 4))
        b4 = padd(pmul(a1, a3), pscale(a4, 2))
        b6 = padd(pmul(a3, a3), pscale(a6, 4))
        b8 = padd(
            padd(pmul(pmul(a1, a1), a6), pscale(pmul(a2, a6), 4)),
            padd(padd(pscale(pmul(pmul(a1, a3), a4), -1), pmul(pmul(a2, a3), a3)), pscale(pmul(a4, a4), -1)),
        )
        return b2, b4, b6, b8

    @cached_property
    def c4(self) -> Poly:
        b2, b4, _, _ = self.b_invariants
        return padd(pmul(b2, b2), pscale(b4, -24))

    @cached_property
    def c6(self) -> Poly:
        b2, b4, b6, _ = self.b_invariants
        return padd(padd(pscale(ppow(b2, 3), -1), pscale(pmul(b2, b4), 36)), pscale(b6, -216))

    @cached_property
    def discriminant(self) -> Poly:
        b2, b4, b6, b8 = self.b_invariants
        terms = [
            pscale(pmul(pmul(b2, b2), b8), -1),
            pscale(ppow(b4, 3), -8),
            pscale(pmul(b6, b6), -27),
            pscale(pmul(pmul(b2, b4), b6), 9),
        ]
        out: Poly = ()
        for t in terms:
            out = padd(out, t)
        if not out:
            raise ValueError(f"model {self.label or self} has zero discriminant")
        return out

    @cached_property
    def twist_weight(self) -> int:
        """Smallest N >= 1 with deg a_i <= N*i for every i."""
        n = 1
        for i, a in zip((1, 2, 3, 4, 6), self.coeffs):
            if a:
                n = max(n, -(-pdeg(a) // i))
        return n

    @cached_property
    def at_infinity(self) -> SurfaceModel:
        """The model in the coordinate u = 1/t, twisted by u^(N i) on a_i."""
        n = self.twist_weight
        new = []
        for i, a in zip((1, 2, 3, 4, 6), self.coeffs):
            c = [Fraction(0)] * (n * i + 1)
            for j, x in enumerate(a):
                c[n * i - j] = x
            new.append(_trim(c))
        return SurfaceModel(*new, label=f"{self.label}@inf")

    def reduced(self, p: int) -> tuple[tuple[int, ...], ...]:
        return _reduced(self, p)

    def reduced_discriminant(self, p: int) -> tuple[int, ...]:
        d = reduce_poly(self.discriminant, p)
        if not d:
            raise BadPrimeError(f"discriminant of {self.label} vanishes identically mod {p}")
        return d

    def fibre_coeffs(self, t0, F: FiniteField):
        """(a1, a2, a3, a4, a6) of the fibre at ``t0`` (an F_q element, an array, or INF)."""
        if t0 is INF:
            return self.at_infinity.fibre_coeffs(0, F)
        return tuple(F.poly_eval(c, t0) for c in self.reduced(F.p))

    def __str__(self):
        return self.label or repr(self)


@lru_cache(maxsize=256)
def _reduced(model: SurfaceModel, p: int):
    return tuple(reduce_poly(a, p) for a in model.coeffs)


# ---------------------------------------------------------------------------
# counting


def _cubic_char_sum_tables(F: FiniteField, c2, c1, c0) -> np.ndarray:
    """sum_x chi(x^3 + c2 x^2 + c1 x + c0) for each row of coefficients (odd q)."""
    c2, c1, c0 = (np.atleast_1d(np.asarray(c, dtype=np.int64)) for c in (c2, c1, c0))
    if F.k == 1:
        return cubic_char_sums(F.p, c2, c1, c0, F.chi_table())
    # walk each cubic along the lines x_hi + F_p, x_hi having zero constant digit
    p = F.p
    chi = F.chi_table()
    xh = np.arange(F.q // p, dtype=np.int64) * p
    xh2 = F.mul(xh, xh)
    xh3 = F.mul(xh2, xh)
    three, six = 3 % p, 6 % p
    # forward differences at x: f(x+1)-f(x) = 3x^2 + 3x + 1 + c2(2x + 1) + c1, second = 6x + 6 + 2 c2
    base1 = F.add(F.add(F.mul(three, xh2), F.mul(three, xh)), 1)
    two_x1 = F.add(F.mul(2, xh), 1)
    base2 = F.add(F.mul(six, xh), six)
    out = np.empty(len(c0), dtype=np.int64)
    rows = max(1, (1 << 20) // len(xh))
    for lo in range(0, len(c0), rows):
        sl = slice(lo, lo + rows)
        C2, C1, C0 = c2[sl, None], c1[sl, None], c0[sl, None]
        val = F.add(F.add(xh3[None, :], F.mul(C2, xh2[None, :])), F.add(F.mul(C1, xh[None, :]), C0))
        d1 = F.add(F.add(base1[None, :], F.mul(C2, two_x1[None, :])), C1)
        d2 = F.add(base2[None, :], F.mul(2, C2))
        shape = val.shape
        digits = F.digits
        sums = cubic_char_sums_ext(
            p,
            digits(val.ravel()),
            digits(np.broadcast_to(d1, shape).ravel()),
            digits(np.broadcast_to(d2, shape).ravel()),
            six,
            chi,
        )
        out[sl] = sums.reshape(shape).sum(axis=1)
    return out


def _counts_from_coeffs(F: FiniteField, a1, a2, a3, a4, a6) -> np.ndarray:
    """Projective point counts of the Weierstrass cubics with the given coefficient arrays."""
    a1, a2, a3, a4, a6 = (np.atleast_1d(np.asarray(a, dtype=np.int64)) for a in (a1, a2, a3, a4, a6))
    q = F.q
    if F.p != 2:
        # complete the square: (2y + a1 x + a3)^2 = 4x^3 + b2 x^2 + 2 b4 x + b6
        b2 = F.add(F.mul(a1, a1), F.mul(4 % F.p, a2))
        b4 = F.add(F.mul(a1, a3), F.mul(2, a4))
        b6 = F.add(F.mul(a3, a3), F.mul(4 % F.p, a6))
        inv4, inv2 = F.inv(4 % F.p), F.inv(2)
        s = _cubic_char_sum_tables(F, F.mul(b2, inv4), F.mul(b4, inv2), F.mul(b6, inv4))
        return 1 + q + s
    xs = F.elements()
    x2 = F.mul(xs, xs)
    x3 = F.mul(x2, xs)
    out = np.empty(len(a1), dtype=np.int64)
    for j in range(len(a1)):
        h = F.add(F.mul(a1[j], xs), a3[j])
        f = F.add(F.add(x3, F.mul(a2[j], x2)), F.add(F.mul(a4[j], xs), a6[j]))
        nz = h != 0
        w = F.mul(f[nz], F.inv(F.mul(h[nz], h[nz])))
        solvable = F.trace(w) == 0 if len(w) else np.zeros(0, dtype=bool)
        out[j] = 1 + int(np.count_nonzero(~nz)) + 2 * int(np.count_nonzero(solvable))
    return out


def count_fibre(model: SurfaceModel, t0, F: FiniteField) -> int:
    """#X_t0(F_q) on the projective Weierstrass fibre at ``t0`` (an element of F_q or INF)."""
    model.reduced_discriminant(F.p)
    return int(_counts_from_coeffs(F, *model.fibre_coeffs(t0, F))[0])


# above this p, fibres over F_{p^2} are counted by group orders instead of character sums
GROUP_ORDER_MIN_P = 40


def fibre_counts(model: SurfaceModel, F: FiniteField, method: str = "auto") -> np.ndarray:
    """Fibre counts at every t in F_q, indexed by the integer encoding of t.

    ``method`` is "sums" (character sums, O(q^2)), "orders" (baby-step
    giant-step on each smooth fibre, F_{p^2} only) or "auto".
    """
    model.reduced_discriminant(F.p)
    if method == "auto":
        method = "orders" if (F.k == 2 and F.p >= GROUP_ORDER_MIN_P) else "sums"
    if method == "orders":
        return _fibre_counts_by_orders(model, F)
    ts = F.elements()
    return _counts_from_coeffs(F, *model.fibre_coeffs(ts, F))


def short_form(F: FiniteField, a1, a2, a3, a4, a6):
    """(A, B) with the fibre isomorphic to y^2 = x^3 + A x + B (p >= 5)."""
    b2 = F.add(F.mul(a1, a1), F.mul(4, a2))
    b4 = F.add(F.mul(a1, a3), F.mul(2, a4))
    b6 = F.add(F.mul(a3, a3), F.mul(4, a6))
    c2 = F.mul(b2, F.inv(4))
    c1 = F.mul(b4, F.inv(2))
    c0 = F.mul(b6, F.inv(4))
    # x -> x - c2/3
    A = F.sub(c1, F.mul(F.mul(c2, c2), F.inv(3)))
    B = F.add(
        F.sub(c0, F.mul(F.mul(c2, c1), F.inv(3))),
        F.mul(F.mul(F.mul(c2, c2), c2), F.div(2, 27 % F.p)),
    )
    return A, B


def _fibre_counts_by_orders(model: SurfaceModel, F: FiniteField) -> np.ndarray:
    if F.k != 2 or F.p < 5:
        raise ValueError("group-order counting is implemented for F_{p^2}, p >= 5")
    ts = F.elements()
    A, B = short_form(F, *model.fibre_coeffs(ts, F))
    disc = F.add(F.mul(4, F.mul(F.mul(A, A), A)), F.mul(27 % F.p, F.mul(B, B)))
    out = np.zeros(F.q, dtype=np.int64)
    smooth = np.flatnonzero(disc != 0)
    # the count depends only on the isomorphism class: j and the square class of AB
    # (for j != 0, 1728), and Frobenius-conjugate curves have equal counts
    As, Bs = A[smooth], B[smooth]
    four_a3 = F.mul(4, F.mul(F.mul(As, As), As))
    j = F.mul(F.mul(1728 % F.p, four_a3), F.inv(disc[smooth]))
    j = np.minimum(j, F.frobenius(j))
    special = (As == 0) | (Bs == 0)
    key = np.where(special, -1 - np.arange(len(smooth)), 2 * j + (F.chi(F.mul(As, Bs)) > 0))
    _, rep, inverse = np.unique(key, return_index=True, return_inverse=True)
    counts = ec_counts_fp2(
        F.p, F.modulus[0], F.modulus[1], F.digits(As[rep]), F.digits(Bs[rep]), 64
    )
    for r in np.flatnonzero(counts < 0):
        counts[r] = count_fibre(model, int(ts[smooth[rep[r]]]), F)
    out[smooth] = counts[inverse.ravel()]
    for t in np.flatnonzero(disc == 0):
        out[t] = count_fibre(model, int(t), F)
    return out


def brute_count_fibre(model: SurfaceModel, t0, F: FiniteField) -> int:
    """Exhaustive (x, y) enumeration; small q only."""
    a1, a2, a3, a4, a6 = model.fibre_coeffs(t0, F)
    xs = F.elements()
    X, Y = np.meshgrid(xs, xs, indexing="ij")
    lhs = F.add(F.mul(Y, Y), F.add(F.mul(F.mul(a1, X), Y), F.mul(a3, Y)))
    x2 = F.mul(X, X)
    rhs = F.add(F.add(F.mul(x2, X), F.mul(a2, x2)), F.add(F.mul(a4, X), a6))
    return 1 + int(np.count_nonzero(lhs == rhs))


# ---------------------------------------------------------------------------
# classification


@dataclass(frozen=True)
class FibreClass:
    kind: str  # "smooth" | "multiplicative" | "additive"
    n: int = 0
    split: bool | None = None
    t0: object = None
    symbol: str = "I0"
    raw: dict | None = None

    @property
    def is_multiplicative(self) -> bool:
        return self.kind == "multiplicative"

    def neron_count(self, q: int) -> int:
        """Rational points on the Neron fibre (cycle of n lines for I_n)."""
        if not self.is_multiplicative:
            raise ValueError("Neron fibre count is only tabulated for I_n fibres")
        if self.split:
            return self.n * q
        return q + 2 if self.n % 2 else 2 * q + 2

    def weierstrass_count(self, q: int) -> int:
        if not self.is_multiplicative:
            raise ValueError("only defined for I_n fibres")
        return q if self.split else q + 2

    def fixed_components(self) -> int:
        """Non-identity components mapped to themselves by Frobenius."""
        if not self.is_multiplicative:
            return 0
        if self.split:
            return self.n - 1
        return 1 if self.n % 2 == 0 else 0

    def rational_nodes(self) -> int:
        """Intersection points of the component cycle that are Frobenius-fixed."""
        if not self.is_multiplicative:
            return 0
        if self.split:
            return self.n
        return 0 if self.n % 2 == 0 else 1


_ADDITIVE_SYMBOLS = {2: "II", 3: "III", 4: "IV", 6: "I0*", 8: "IV*", 9: "III*", 10: "II*"}


def _local(model: SurfaceModel, t0):
    return (model.at_infinity, 0) if t0 is INF else (model, t0)


def classify_fibre(model: SurfaceModel, t0, F: FiniteField) -> FibreClass:
    local, u0 = _local(model, t0)
    p = F.p
    v_disc = poly_valuation(F, local.reduced_discriminant(p), u0)
    if v_disc == 0:
        return FibreClass("smooth", 0, None, t0, "I0")
    c4 = reduce_poly(local.c4, p)
    v_c4 = poly_valuation(F, c4, u0)
    if v_c4 == 0:
        split = _node_is_split(F, local.fibre_coeffs(u0, F))
        return FibreClass("multiplicative", int(v_disc), split, t0, f"I{int(v_disc)}")
    v_c6 = poly_valuation(F, reduce_poly(local.c6, p), u0)
    raw = {"v_disc": v_disc, "v_c4": v_c4, "v_c6": v_c6}
    symbol = "?"
    if p >= 5:
        if v_c4 >= 4 and v_c6 >= 6:
            symbol = "non-minimal"
        elif v_disc in _ADDITIVE_SYMBOLS:
            symbol = _ADDITIVE_SYMBOLS[v_disc]
        elif v_disc > 6 and v_c4 == 2:
            symbol = f"I{int(v_disc) - 6}*"
    return FibreClass("additive", 0, None, t0, symbol, raw)


def _node_is_split(F: FiniteField, coeffs) -> bool:
    """Whether the tangent cone at the node of a nodal Weierstrass cubic splits over F_q."""
    a1, a2, a3, a4, a6 = (int(c) for c in coeffs)
    if F.p == 2:
        if a1 == 0:
            raise ValueError("cuspidal fibre in characteristic 2")
        x0 = F.div(a3, a1)
        c = F.add(x0, a2)
        return int(F.trace(F.div(c, F.mul(a1, a1)))) == 0
    b2 = F.add(F.mul(a1, a1), F.mul(4 % F.p, a2))
    b4 = F.add(F.mul(a1, a3), F.mul(2, a4))
    b6 = F.add(F.mul(a3, a3), F.mul(4 % F.p, a6))
    xs = F.elements()
    x2 = F.mul(xs, xs)
    g = F.add(F.add(F.mul(4 % F.p, F.mul(x2, xs)), F.mul(b2, x2)), F.add(F.mul(F.mul(2, b4), xs), b6))
    dg = F.add(F.add(F.mul(12 % F.p, x2), F.mul(F.mul(2, b2), xs)), F.mul(2, b4))
    sing = np.flatnonzero((g == 0) & (dg == 0))
    if len(sing) != 1:
        raise ValueError("fibre is not a nodal cubic")
    x0 = int(sing[0])
    cone_disc = F.add(b2, F.mul(12 % F.p, x0))
    chi = F.chi(cone_disc)
    if chi == 0:
        raise ValueError("fibre is cuspidal, not nodal")
    return chi == 1


def multiplicative_degree_sum(model: SurfaceModel, F: FiniteField) -> int:
    """Sum of n over the I_n fibres at t in F_q and at infinity."""
    total = 0
    d = model.reduced_discriminant(F.p)
    vals = F.poly_eval(d, F.elements())
    for t in np.flatnonzero(vals == 0):
        fc = classify_fibre(model, int(t), F)
        total += fc.n if fc.is_multiplicative else 0
    fc = classify_fibre(model, INF, F)
    return total + (fc.n if fc.is_multiplicative else 0)


# ---------------------------------------------------------------------------
# the two-parameter family and built-in models


def _short(a4: Poly, a6: Poly, label: str) -> SurfaceModel:
    return SurfaceModel((), (), (), a4, a6, label)


def family_discriminant(c5, c6) -> Fraction:
    c5, c6 = Fraction(c5), Fraction(c6)
    return (
        2**12 * 3**10 * c5**6 * c6**6 * (3 * c6**2 + c5**2) ** 2 * (c6 - c5) ** 4 * (c6 + c5) ** 4
    )


def family_specialize(c5, c6) -> tuple[SurfaceModel, SurfaceModel, set[int]]:
    """The pair (X, X') of the two-parameter family at (c5, c6), with its bad primes."""
    c5, c6 = Fraction(c5), Fraction(c6)
    disc = family_discriminant(c5, c6)
    if disc == 0:
        raise ValueError(f"degenerate specialisation c5={c5}, c6={c6}")
    c1 = -3 * c5**2
    c2 = c3 = 2 * c5**3
    c4 = 3 * c6**2 * c5 - c5**3
    tt1 = poly(1, 1, 1)
    sq = pmul(tt1, tt1)
    x_model = _short(pscale(sq, c1), pmul(poly(c4, c3, c2), sq), f"X(c5={c5},c6={c6})")
    # Beauville's surface in the shifted coordinate
    tt = poly((3 * c5 + 3 * c6) / (2 * c6), (6 * c5) / (2 * c6))
    a4 = pcompose(poly(0, -8, 0, 0, Fraction(-1, 3)), tt)
    a6 = pcompose(poly(-16, 0, 0, Fraction(-8, 3), 0, 0, Fraction(-2, 27)), tt)
    xp_model = _short(a4, a6, f"X'(c5={c5},c6={c6})")
    bad = set(factorize(abs(disc.numerator))) | set(factorize(disc.denominator)) | {2, 3}
    bad.discard(1)
    return x_model, xp_model, bad


X_PAIR = _short(
    pscale(pmul(poly(1, 1, 1), poly(1, 1, 1)), -27),
    pscale(pmul(poly(-1, 3, 3), pmul(poly(1, 1, 1), poly(1, 1, 1))), 18),
    "X",
)
XPRIME_PAIR = _short(
    pscale(pmul(poly(2, 3), poly(80, 324, 486, 243)), -3),
    poly(-4048, -33696, -120528, -235224, -262440, -157464, -39366),
    "Xprime",
)

# rational semistable surfaces giving n-dimensional eigenspaces, keyed by n
SURFACE_EXAMPLES: dict[int, tuple[SurfaceModel, int]] = {
    4: (
        SurfaceModel.from_coeffs(
            a4=(-48, 48, 0, -24, -3), a6=(-128, 192, -48, 112, -48, -24, -2), label="n4"
        ),
        5,
    ),
    5: (
        SurfaceModel.from_coeffs(
            a4=(-768, 0, -960, 0, -219), a6=(-8192, 0, -15360, 0, -8304, 0, -1190), label="n5"
        ),
        7,
    ),
    6: (SurfaceModel.from_coeffs(a1=(0, 1), a3=(1,), a2=(1,), a4=(1,), label="n6"), 2),
    7: (
        SurfaceModel.from_coeffs(a4=(-27, 0, -24, 0, -16), a6=(-54, 0, -72, 0, -64), label="n7"),
        7,
    ),
    8: (SurfaceModel.from_coeffs(a1=(0, 1), a3=(1,), a6=(0, 1), label="n8"), 2),
    9: (
        SurfaceModel.from_coeffs(a1=(0, 1), a3=(1, 0, 1), a4=(1, 1, -1), a6=(0, 1), label="n9"),
        2,
    ),
    10: (SurfaceModel.from_coeffs(a1=(0, 3), a3=(1, 0, 0, 1), a6=(0, 1), label="n10"), 2),
    11: (SurfaceModel.from_coeffs(a1=(0, 1), a3=(1,), a4=(0, 0, 0, 1), a6=(0, 1), label="n11"), 2),
    12: (
        SurfaceModel.from_coeffs(
            a1=(0, 1), a3=(1, 0, 0, -7), a4=(0, 1, 1, 1), a6=(1, 0, 0, 0, 0, 0, -10), label="n12"
        ),
        2,
    ),
}

NAMED_MODELS: dict[str, SurfaceModel] = {"X": X_PAIR, "Xprime": XPRIME_PAIR}
NAMED_MODELS.update({m.label: m for m, _ in SURFACE_EXAMPLES.values()})


def get_model(name: str) -> SurfaceModel:
    try:
        return NAMED_MODELS[name]
    except KeyError:
        raise KeyError(f"unknown model {name!r}; known: {sorted(NAMED_MODELS)}") from None
