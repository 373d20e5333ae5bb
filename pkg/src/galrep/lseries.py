"""Dirichlet series of the twisted representation and the two-sum identity at s = 2.

With Lambda(s) = N^{s/2} (4 pi^2)^{-s} Gamma(s) Gamma(s-1) L(s) and the functional
equation Lambda(s) = w conj(Lambda)(4 - s), shifting the Mellin contour gives

    L(2) = sum a_n/n^2 F(4 n t pi^2/sqrt N) + w sum conj(a_n)/n^2 F(4 n pi^2/(t sqrt N))

for every t > 0, where F is the inverse Mellin transform of Gamma(s+2) Gamma(s),
F(x) = 2 x K_2(2 sqrt x).  Independence of t pins down w and checks N.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass, field

import gmpy2
import mpmath

from .arith import DEFAULT_PREC, UNITS, EisInt, primes_below
from .threefoldrep import twisted_charpoly, twist

# ---------------------------------------------------------------------------
# local factors


@dataclass(frozen=True)
class LocalFactor:
    """1 + d3 X + d2 X^2 + d1 X^3 + d0 X^4 with X = p^{-s}; trailing terms may be unknown.

    ``coeffs`` lists (d3, d2, d1, d0) as far as known.  Coefficients past the
    list are treated as missing, which is fine as long as p^len(coeffs) >= B.
    """

    p: int
    coeffs: tuple[EisInt, ...]
    source: str = "good"

    @classmethod
    def trivial(cls, p: int) -> LocalFactor:
        return cls(p, (EisInt(0),) * 4, "bad-guess")

    def reach(self) -> int:
        """Largest k such that a_{p^k} is determined."""
        return math.inf if self.is_complete() else len(self.coeffs)

    def is_complete(self) -> bool:
        return len(self.coeffs) == 4 or self.source == "bad-guess"

    def padded(self) -> tuple[EisInt, ...]:
        return tuple(self.coeffs) + (EisInt(0),) * (4 - len(self.coeffs))

    def __str__(self):
        terms = ["1"]
        for k, c in enumerate(self.coeffs, start=1):
            if c:
                terms.append(f"({c})X^{k}")
        return " + ".join(terms)


_TERM = re.compile(r"([+-]?)\s*(\d*)\s*(\*?\s*X(?:\^(\d+))?)?")


def parse_bad_factor(text: str, p: int) -> LocalFactor:
    """Parse an integer polynomial in X with constant term 1, e.g. ``1+2X`` or ``1-3X+9X^2``."""
    src = text.replace(" ", "")
    if not src:
        raise ValueError("empty polynomial")
    coeffs: dict[int, int] = {}
    pos = 0
    while pos < len(src):
        m = _TERM.match(src, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse {text!r} at position {pos}")
        sign, num, xpart, exp = m.groups()
        if not num and not xpart:
            raise ValueError(f"cannot parse {text!r} at position {pos}")
        c = int(num) if num else 1
        c = -c if sign == "-" else c
        k = (int(exp) if exp else 1) if xpart else 0
        coeffs[k] = coeffs.get(k, 0) + c
        pos = m.end()
    if coeffs.get(0) != 1:
        raise ValueError(f"local factor {text!r} must have constant term 1")
    deg = max(coeffs)
    if deg > 4:
        raise ValueError(f"local factor {text!r} has degree > 4")
    d = tuple(EisInt(coeffs.get(k, 0)) for k in range(1, 5))
    lf = LocalFactor(p, d, "bad-guess")
    check_bad_factor(lf)
    return lf


def check_bad_factor(lf: LocalFactor, weight: int = 3) -> None:
    """Reciprocal roots of a guessed bad factor must have |alpha| <= p^(weight/2)."""
    coeffs = [c.to_complex() for c in lf.padded()]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    if not coeffs:
        return
    # reciprocal roots of 1 + d3 X + ... are the roots of T^k + d3 T^{k-1} + ...
    roots = mpmath.polyroots([1] + coeffs, maxsteps=200, extraprec=60)
    bound = mpmath.mpf(lf.p) ** (mpmath.mpf(weight) / 2)
    if any(abs(r) > bound * (1 + mpmath.mpf(10) ** -20) for r in roots):
        raise ValueError(f"bad factor at {lf.p} has a reciprocal root beyond p^{weight}/2")


def good_local_factor(p: int, a_p: EisInt, b_p: EisInt | None = None) -> LocalFactor:
    """Local factor of the twisted representation at a good prime."""
    if b_p is None:
        return LocalFactor(p, (-twist(a_p, p),))
    cp = twisted_charpoly(a_p, b_p, p)
    c = cp.coeffs  # c_0 .. c_3 of T^4 + c_3 T^3 + ...
    return LocalFactor(p, (c[3], c[2], c[1], c[0]))


# ---------------------------------------------------------------------------
# Dirichlet coefficients


@dataclass
class LSeriesTable:
    """a_n = u_n + v_n zeta for 1 <= n < B (index 0 unused)."""

    B: int
    u: list[int]
    v: list[int]

    def coeff(self, n: int) -> EisInt:
        return EisInt(self.u[n], self.v[n])

    def embedded(self, n: int) -> mpmath.mpc:
        return self.coeff(n).to_complex()

    def conj(self) -> LSeriesTable:
        """Coefficients of the conjugate series (zeta -> zeta^2)."""
        return LSeriesTable(self.B, [u - v for u, v in zip(self.u, self.v)], [-v for v in self.v])


def _prime_power_coeffs(lf: LocalFactor, kmax: int) -> list[EisInt]:
    """a_{p^k} for k = 0..kmax from 1/(1 + d3 X + d2 X^2 + d1 X^3 + d0 X^4)."""
    if kmax > lf.reach():
        raise ValueError(f"local factor at {lf.p} only determines a_(p^k) for k <= {lf.reach()}")
    d = lf.padded()
    out = [EisInt(1)]
    for k in range(1, kmax + 1):
        acc = EisInt(0)
        for j in range(1, 5):
            if k - j >= 0:
                acc = acc + d[j - 1] * out[k - j]
        out.append(-acc)
    return out


def dirichlet_coeffs(locals_: dict[int, LocalFactor], B: int) -> LSeriesTable:
    """Expand the Euler product into a_n for n < B, exactly in Z[zeta]."""
    u = [0] * B
    v = [0] * B
    if B < 2:
        return LSeriesTable(B, u, v)
    u[1] = 1
    done = [False] * B
    done[1] = True
    for p in primes_below(B):
        if p not in locals_:
            raise KeyError(f"no local factor for p = {p}")
        kmax = 0
        pk = p
        while pk < B:
            kmax += 1
            pk *= p
        pp = _prime_power_coeffs(locals_[p], kmax)
        # multiply the current series by the p-part: a_{m p^k} = a_m a_{p^k} for p not dividing m
        existing = [m for m in range(1, B) if done[m] and m % p]
        for m in existing:
            am = EisInt(u[m], v[m])
            pk = p
            for k in range(1, kmax + 1):
                n = m * pk
                if n >= B:
                    break
                x = am * pp[k]
                u[n], v[n] = x.u, x.v
                done[n] = True
                pk *= p
    return LSeriesTable(B, u, v)


# ---------------------------------------------------------------------------
# the kernel F(x) = 2 x K_2(2 sqrt x)


def _bits(prec: int) -> int:
    return int(prec * 3.3219280948873626) + 16


def _to_mpfr(x):
    """Exact mpmath.mpf -> gmpy2.mpfr (rounded to the active gmpy2 precision)."""
    if not isinstance(x, mpmath.mpf):
        raise TypeError("expected an mpmath.mpf")
    sign, man, exp, _ = x._mpf_
    val = gmpy2.mul_2exp(gmpy2.mpfr(int(man)), int(exp))
    return -val if sign else val


def _to_mpf(x):
    man, exp = x.as_mantissa_exp()
    return mpmath.mpf((int(man), int(exp)))


def _f_series(x, ctx):
    """Power series with the logarithmic term; used for 2 sqrt(x) < 4.

    F = 1 - x - x^2 log(x) S1 + x^2 S2 with S1 = sum x^k/(k!(k+2)!) and
    S2 = sum (psi(k+1) + psi(k+3)) x^k/(k!(k+2)!), psi(m+1) = H_m - gamma.
    """
    eps = gmpy2.mpfr(2) ** (-ctx.precision)
    gamma2 = 2 * gmpy2.const_euler()
    lnx = gmpy2.log(x)
    term = gmpy2.mpfr(1) / 2
    h_k = gmpy2.mpfr(0)  # H_k
    h_k2 = gmpy2.mpfr(3) / 2  # H_{k+2}
    s1 = term
    s2 = (h_k + h_k2 - gamma2) * term
    k = 0
    while True:
        k += 1
        term = term * x / (k * (k + 2))
        h_k += gmpy2.mpfr(1) / k
        h_k2 += gmpy2.mpfr(1) / (k + 2)
        s1 += term
        s2 += (h_k + h_k2 - gamma2) * term
        if term < eps * s1 and k > 2:
            break
    return 1 - x - x * x * lnx * s1 + x * x * s2


def _k0_k1_steed(z, ctx):
    """K_0(z), K_1(z) by Steed's continued fraction (z >= 2)."""
    eps = gmpy2.mpfr(2) ** (-ctx.precision)
    b = 2 * (1 + z)
    d = 1 / b
    h = delh = d
    q1, q2 = gmpy2.mpfr(0), gmpy2.mpfr(1)
    a1 = gmpy2.mpfr(1) / 4
    q = c = a1
    a = -a1
    s = 1 + q * delh
    i = 2
    while True:
        a -= 2 * (i - 1)
        c = -a * c / i
        qnew = (q1 - b * q2) / a
        q1, q2 = q2, qnew
        q += c * qnew
        b += 2
        d = 1 / (b + a * d)
        delh = (b * d - 1) * delh
        h += delh
        dels = q * delh
        s += dels
        if abs(dels) < eps * abs(s):
            break
        i += 1
        if i > 1000000:
            raise ArithmeticError("continued fraction for K did not converge")
    h = a1 * h
    k0 = gmpy2.sqrt(gmpy2.const_pi() / (2 * z)) * gmpy2.exp(-z) / s
    k1 = k0 * (z + gmpy2.mpfr(1) / 2 - h) / z
    return k0, k1


def _F_mpfr(x, ctx):
    z = 2 * gmpy2.sqrt(x)
    if z < 4:
        return _f_series(x, ctx)
    k0, k1 = _k0_k1_steed(z, ctx)
    return 2 * x * (k0 + 2 * k1 / z)


def eval_F(x, prec: int = DEFAULT_PREC):
    """F(x) = 2 x K_2(2 sqrt x) to ``prec`` significant digits."""
    with mpmath.workdps(prec + 10):
        x = mpmath.mpf(x)
    if x <= 0:
        raise ValueError("F is only defined for x > 0")
    with gmpy2.context(gmpy2.get_context(), precision=_bits(prec + 10)) as ctx:
        val = _F_mpfr(_to_mpfr(x), ctx)
    with mpmath.workdps(prec):
        return +_to_mpf(val)


def eval_F_quadrature(x, prec: int = DEFAULT_PREC, r=None):
    """Oracle: (1/2 pi) int Gamma(r+iy+2) Gamma(r+iy) x^{-r-iy} dy along Re s = r."""
    with mpmath.workdps(prec + 15):
        x = mpmath.mpf(x)
        if r is None:
            r = max(mpmath.mpf(1), mpmath.sqrt(x) - 1)
        r = mpmath.mpf(r)

        def integrand(y):
            s = mpmath.mpc(r, y)
            return mpmath.re(mpmath.gamma(s + 2) * mpmath.gamma(s) * mpmath.power(x, -s))

        val = mpmath.quad(integrand, [-mpmath.inf, -20, 0, 20, mpmath.inf]) / (2 * mpmath.pi)
    with mpmath.workdps(prec):
        return +val


def eval_F_bessel(x, prec: int = DEFAULT_PREC):
    """Oracle through mpmath's own K_2."""
    with mpmath.workdps(prec + 10):
        x = mpmath.mpf(x)
        val = 2 * x * mpmath.besselk(2, 2 * mpmath.sqrt(x))
    with mpmath.workdps(prec):
        return +val


# ---------------------------------------------------------------------------
# the two-sum identity


def pairwise_sum(values):
    """Deterministic pairwise summation."""
    vals = list(values)
    if not vals:
        return 0
    while len(vals) > 1:
        nxt = [vals[i] + vals[i + 1] for i in range(0, len(vals) - 1, 2)]
        if len(vals) % 2:
            nxt.append(vals[-1])
        vals = nxt
    return vals[0]


def _zeta(prec):
    with mpmath.workdps(prec):
        return mpmath.mpc(-0.5, mpmath.sqrt(3) / 2)


def _weighted_sums(table: LSeriesTable, scale, prec: int):
    """(sum u_n F(n scale)/n^2, sum v_n F(n scale)/n^2)."""
    su, sv = [], []
    with gmpy2.context(gmpy2.get_context(), precision=_bits(prec + 10)) as ctx:
        with mpmath.workdps(prec + 10):
            c = _to_mpfr(scale)
        for n in range(1, table.B):
            if not (table.u[n] or table.v[n]):
                continue
            f = _F_mpfr(n * c, ctx) / (n * n)
            su.append(table.u[n] * f)
            sv.append(table.v[n] * f)
        a, b = pairwise_sum(su), pairwise_sum(sv)
    with mpmath.workdps(prec + 5):
        return _to_mpf(gmpy2.mpfr(a)), _to_mpf(gmpy2.mpfr(b))


def two_sums(table: LSeriesTable, N: int, t, prec: int = DEFAULT_PREC):
    """(A(t), B(t)) with RHS(t) = A(t) + w B(t)."""
    with mpmath.workdps(prec + 5):
        t = mpmath.mpf(t)
        c = 4 * mpmath.pi**2 / mpmath.sqrt(N)
        z = _zeta(prec + 5)
        su, sv = _weighted_sums(table, c * t, prec)
        A = su + sv * z
        su, sv = _weighted_sums(table, c / t, prec)
        B = su + sv * mpmath.conj(z)
        return A, B


@dataclass
class FEReport:
    N: int
    bad2: str
    bad3: str
    B: int
    tgrid: list
    A: list = field(default_factory=list)
    Bs: list = field(default_factory=list)
    rhs: list = field(default_factory=list)
    w: mpmath.mpc | None = None
    residual: mpmath.mpf | None = None
    L2: mpmath.mpc | None = None
    w_snapped: EisInt | None = None
    rhs_snapped: list = field(default_factory=list)
    residual_snapped: mpmath.mpf | None = None
    L2_snapped: mpmath.mpc | None = None
    ill_conditioned: bool = False

    def w_error(self, target: EisInt) -> mpmath.mpf:
        return abs(self.w - target.to_complex())

    def summary(self, digits: int = 25) -> str:
        lines = [
            f"N = {self.N} ({_factor_str(self.N)})  bad2 = {self.bad2}  bad3 = {self.bad3}  B = {self.B}",
            f"w = {mpmath.nstr(self.w, digits)}  |w| - 1 = {mpmath.nstr(abs(self.w) - 1, 5)}",
            f"nearest unit: {self.w_snapped}  distance {mpmath.nstr(self.w_error(self.w_snapped), 5)}",
            f"max |RHS(t) - RHS(t')| = {mpmath.nstr(self.residual, 5)}",
        ]
        for t, r in zip(self.tgrid, self.rhs):
            lines.append(f"  t = {t}: RHS = {mpmath.nstr(r, digits)}")
        lines.append(f"L(2) = {mpmath.nstr(self.L2, digits)}")
        if self.L2_snapped is not None:
            lines.append(f"with w = {self.w_snapped}: max |RHS(t) - RHS(t')| = {mpmath.nstr(self.residual_snapped, 5)}")
            lines.append(f"L(2) (w = {self.w_snapped}, t nearest 1) = {mpmath.nstr(self.L2_snapped, digits)}")
        if self.ill_conditioned:
            lines.append("warning: B(t) differences are below the precision floor")
        return "\n".join(lines)


def _factor_str(N: int) -> str:
    a = b = 0
    while N % 2 == 0:
        N //= 2
        a += 1
    while N % 3 == 0:
        N //= 3
        b += 1
    rest = f"*{N}" if N != 1 else ""
    return f"2^{a} 3^{b}{rest}"


def nearest_unit(w) -> EisInt:
    return min(UNITS, key=lambda u: abs(w - u.to_complex()))


def fe_solve_w(table: LSeriesTable, N: int, tgrid, prec: int = DEFAULT_PREC, bad2="1", bad3="1") -> FEReport:
    """Least-squares w from all pairs of grid points; residual is recomputed with that w."""
    if len(tgrid) < 2:
        raise ValueError("need at least two values of t")
    if any(t <= 0 for t in tgrid):
        raise ValueError("t must be positive")
    rep = FEReport(N, bad2, bad3, table.B, list(tgrid))
    with mpmath.workdps(prec):
        for t in tgrid:
            A, Bt = two_sums(table, N, t, prec)
            rep.A.append(A)
            rep.Bs.append(Bt)
        num = mpmath.mpc(0)
        den = mpmath.mpf(0)
        k = len(tgrid)
        for i in range(k):
            for j in range(i + 1, k):
                dA = rep.A[i] - rep.A[j]
                dB = rep.Bs[i] - rep.Bs[j]
                num += mpmath.conj(dB) * dA
                den += abs(dB) ** 2
        if den < mpmath.mpf(10) ** (-prec + 5):
            rep.ill_conditioned = True
            den = mpmath.mpf(10) ** (-prec + 5)
        rep.w = -num / den
        rep.rhs = [a + rep.w * b for a, b in zip(rep.A, rep.Bs)]
        rep.residual = max(abs(x - y) for x in rep.rhs for y in rep.rhs)
        rep.L2 = pairwise_sum(rep.rhs) / len(rep.rhs)
        rep.w_snapped = nearest_unit(rep.w)
        u = rep.w_snapped.to_complex()
        rep.rhs_snapped = [a + u * b for a, b in zip(rep.A, rep.Bs)]
        rep.residual_snapped = max(abs(x - y) for x in rep.rhs_snapped for y in rep.rhs_snapped)
        # both tails are balanced at t = 1, so that grid point is the most accurate
        best = min(range(k), key=lambda i: abs(mpmath.log(tgrid[i])))
        rep.L2_snapped = rep.rhs_snapped[best]
    return rep


def w_from_value(L2) -> mpmath.mpc:
    """At t = 1 the identity reads L = A + w conj(A), which forces w = L/conj(L)."""
    L2 = mpmath.mpc(L2)
    return L2 / mpmath.conj(L2)


def truncation_estimate(N: int, B: int, t, terms: int = 4000) -> mpmath.mpf:
    """Typical size of the neglected tail of both sums at t.

    Uses |a_n|/n^2 ~ n^{-1/2} with random signs, so the tail behaves like the
    root-sum-square of n^{-1/2} F(c n) over n >= B.  A heuristic, not a bound.
    """
    with mpmath.workdps(20):
        c = 4 * mpmath.pi**2 / mpmath.sqrt(N)
        total = mpmath.mpf(0)
        for scale in (c * t, c / t):
            step = max(1, int(2 / mpmath.sqrt(scale / B) / terms) + 1)
            acc = mpmath.mpf(0)
            for n in range(B, B + step * terms, step):
                acc += step * (eval_F(scale * n, 20) ** 2 / n)
            total += mpmath.sqrt(acc)
        return total


def l_at_2(table: LSeriesTable, N: int, w, t, prec: int = DEFAULT_PREC):
    """RHS(t) with w fixed."""
    with mpmath.workdps(prec):
        w = w.to_complex() if isinstance(w, EisInt) else mpmath.mpc(w)
        if abs(abs(w) - 1) > mpmath.mpf(10) ** -6:
            raise ValueError("w must have absolute value 1")
        A, B = two_sums(table, N, t, prec)
        return A + w * B


def search(records, B: int, candidates, tgrid, prec: int = DEFAULT_PREC) -> list[FEReport]:
    """Run fe_solve_w for each (bad2 text, bad3 text, N); best residual first."""
    out = []
    for bad2, bad3, N in candidates:
        locs = build_locals(records, B, bad2, bad3)
        rep = fe_solve_w(dirichlet_coeffs(locs, B), N, tgrid, prec, bad2, bad3)
        out.append(rep)
    return sorted(out, key=lambda r: r.residual)


def build_locals(records, B: int, bad2: str = "1", bad3: str = "1") -> dict[int, LocalFactor]:
    """Local factors below B from a_p/b_p records (mapping p -> (a_p, b_p or None))."""
    locs = {2: parse_bad_factor(bad2, 2), 3: parse_bad_factor(bad3, 3)}
    for p in primes_below(B):
        if p < 5:
            continue
        if p not in records:
            raise KeyError(f"no a_p record for p = {p}")
        a_p, b_p = records[p]
        if p * p < B and b_p is None:
            raise KeyError(f"b_p is needed for p = {p} < sqrt(B)")
        locs[p] = good_local_factor(p, a_p, b_p if p * p < B else None)
    return locs


def conductor(a: int, b: int) -> int:
    return 2**a * 3**b
