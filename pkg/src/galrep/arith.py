"""Exact arithmetic: Eisenstein integers, finite fields F_{p^k}, and mpmath helpers.

Elements of F_q are plain ints in ``[0, q)``: the base-``p`` digits of an element
are its coordinates on ``1, x, ..., x^(k-1)`` modulo the field's fixed modulus.
The prime subfield is therefore encoded by ``0..p-1`` in every extension, and
all field operations accept either Python ints or numpy integer arrays.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt

import mpmath
import numpy as np

DEFAULT_PREC = 40


class NonIntegralError(ArithmeticError):
    """An Eisenstein fraction that was required to be integral is not."""


# ---------------------------------------------------------------------------
# Z[zeta]


@dataclass(frozen=True, slots=True)
class EisInt:
    """``u + v*zeta`` with ``zeta`` a primitive cube root of unity (zeta^2 = -1 - zeta)."""

    u: int
    v: int = 0

    @classmethod
    def coerce(cls, x) -> EisInt:
        if isinstance(x, EisInt):
            return x
        if isinstance(x, (int, np.integer)):
            return cls(int(x), 0)
        raise TypeError(f"cannot coerce {type(x).__name__} to EisInt")

    def __add__(self, other):
        try:
            o = EisInt.coerce(other)
        except TypeError:
            return NotImplemented
        return EisInt(self.u + o.u, self.v + o.v)

    __radd__ = __add__

    def __sub__(self, other):
        try:
            o = EisInt.coerce(other)
        except TypeError:
            return NotImplemented
        return EisInt(self.u - o.u, self.v - o.v)

    def __rsub__(self, other):
        return EisInt.coerce(other) - self

    def __neg__(self):
        return EisInt(-self.u, -self.v)

    def __mul__(self, other):
        try:
            o = EisInt.coerce(other)
        except TypeError:
            return NotImplemented
        # (a + b z)(c + d z) = ac + (ad + bc) z + bd z^2,  z^2 = -1 - z
        bd = self.v * o.v
        return EisInt(self.u * o.u - bd, self.u * o.v + self.v * o.u - bd)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative powers are not integral in general")
        result, base = ONE, self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        try:
            o = EisInt.coerce(other)
        except TypeError:
            return NotImplemented
        return self.u == o.u and self.v == o.v

    def __hash__(self):
        return hash((self.u, self.v))

    def __bool__(self):
        return bool(self.u or self.v)

    def conj(self) -> EisInt:
        return EisInt(self.u - self.v, -self.v)

    def norm(self) -> int:
        return self.u * self.u - self.u * self.v + self.v * self.v

    def is_unit(self) -> bool:
        return self.norm() == 1

    def is_rational(self) -> bool:
        return self.v == 0

    def __truediv__(self, other) -> EisFrac:
        return EisFrac.of(self) / other

    def exact_div(self, other) -> EisInt:
        return (EisFrac.of(self) / other).to_eisint()

    def to_complex(self) -> mpmath.mpc:
        """Embed with zeta -> exp(2 pi i / 3) at the current mpmath precision."""
        return mpmath.mpc(self.u - mpmath.mpf(self.v) / 2, self.v * mpmath.sqrt(3) / 2)

    def to_complex128(self) -> complex:
        return complex(self.u - self.v / 2, self.v * 0.8660254037844386)

    def serialize(self) -> str:
        return f"{self.u} {self.v}"

    @classmethod
    def parse(cls, text: str) -> EisInt:
        u, v = text.split()
        return cls(int(u), int(v))

    def __str__(self):
        return format_eis(self)

    def __repr__(self):
        return f"EisInt({self.u}, {self.v})"


ZERO = EisInt(0, 0)
ONE = EisInt(1, 0)
ZETA = EisInt(0, 1)
ZETA2 = EisInt(-1, -1)
UNITS = (ONE, ZETA, ZETA2, -ONE, -ZETA, -ZETA2)


def format_eis(x: EisInt) -> str:
    """Human form ``u + v*zeta`` as used in printed tables: ``10 + 13ζ``, ``-5ζ``, ``7``."""
    if x.v == 0:
        return str(x.u)
    if x.u == 0:
        if x.v == 1:
            return "ζ"
        if x.v == -1:
            return "-ζ"
        return f"{x.v}ζ"
    tail = "ζ" if abs(x.v) == 1 else f"{abs(x.v)}ζ"
    return f"{x.u} {'+' if x.v > 0 else '-'} {tail}"


@dataclass(frozen=True, slots=True)
class EisFrac:
    """Element ``num / den`` of Q(zeta), kept reduced with ``den > 0``."""

    num: EisInt
    den: int = 1

    def __post_init__(self):
        if self.den <= 0:
            raise ValueError("denominator must be positive")
        g = gcd(gcd(self.num.u, self.num.v), self.den)
        if g > 1:
            object.__setattr__(self, "num", EisInt(self.num.u // g, self.num.v // g))
            object.__setattr__(self, "den", self.den // g)

    @classmethod
    def of(cls, x) -> EisFrac:
        if isinstance(x, EisFrac):
            return x
        if isinstance(x, Fraction):
            return cls(EisInt(x.numerator), x.denominator)
        return cls(EisInt.coerce(x), 1)

    def __add__(self, other):
        o = EisFrac.of(other)
        return EisFrac(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-EisFrac.of(other))

    def __rsub__(self, other):
        return EisFrac.of(other) - self

    def __neg__(self):
        return EisFrac(-self.num, self.den)

    def __mul__(self, other):
        o = EisFrac.of(other)
        return EisFrac(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = EisFrac.of(other)
        n = o.num.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(zeta)")
        # a/b = a * conj(b) / N(b)
        return EisFrac(self.num * o.num.conj() * o.den, self.den * n)

    def __eq__(self, other):
        try:
            o = EisFrac.of(other)
        except TypeError:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def conj(self) -> EisFrac:
        return EisFrac(self.num.conj(), self.den)

    def is_integral(self) -> bool:
        return self.den == 1

    def to_eisint(self) -> EisInt:
        if self.den != 1:
            raise NonIntegralError(f"({self.num})/{self.den} is not in Z[zeta]")
        return self.num

    def __repr__(self):
        return f"EisFrac({self.num!r}, {self.den})"


def zeta_complex(prec: int | None = None) -> mpmath.mpc:
    """The embedding of zeta, at ``prec`` decimal digits if given."""
    if prec is None:
        return ZETA.to_complex()
    with mpmath.workdps(prec):
        return ZETA.to_complex()


# ---------------------------------------------------------------------------
# primality and small polynomial helpers over F_p


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for small in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % small == 0:
            return n == small
    # deterministic Miller-Rabin for n < 3.3e24
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41):
        if a % n == 0:
            continue
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primes_below(n: int) -> list[int]:
    if n < 3:
        return []
    sieve = np.ones(n, dtype=bool)
    sieve[:2] = False
    for i in range(2, isqrt(n - 1) + 1):
        if sieve[i]:
            sieve[i * i :: i] = False
    return [int(x) for x in np.flatnonzero(sieve)]


def factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _ptrim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a: list[int], m: list[int], p: int) -> list[int]:
    a = _ptrim([c % p for c in a])
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) >= len(m):
        c = a[-1] * inv_lead % p
        shift = len(a) - len(m)
        for i, mc in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mc) % p
        _ptrim(a)
    return a


def _pmulmod(a: list[int], b: list[int], m: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _pmod(out, m, p)


def _ppowmod(a: list[int], e: int, m: list[int], p: int) -> list[int]:
    result, base = [1], _pmod(a, m, p)
    while e:
        if e & 1:
            result = _pmulmod(result, base, m, p)
        base = _pmulmod(base, base, m, p)
        e >>= 1
    return result


def _pgcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _ptrim([c % p for c in a]), _ptrim([c % p for c in b])
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def is_irreducible_mod_p(m: list[int], p: int) -> bool:
    """Rabin-style test for a monic ``m`` (coefficients low to high) over F_p."""
    k = len(m) - 1
    if k <= 0:
        return False
    if k == 1:
        return True
    x = [0, 1]
    xp = x
    for _ in range(k // 2):
        xp = _ppowmod(xp, p, m, p)
        diff = list(xp) + [0] * max(0, 2 - len(xp))
        diff[1] -= 1
        if len(_pgcd(m, diff, p)) > 1:
            return False
    return True


@lru_cache(maxsize=None)
def conway_free_modulus(p: int, k: int) -> tuple[int, ...]:
    """First monic irreducible of degree ``k`` over F_p.

    Candidates are ``x^k + c_{k-1} x^{k-1} + ... + c_0`` enumerated in
    lexicographic order of ``(c_{k-1}, ..., c_0)``.
    """
    for m in range(p**k):
        coeffs = [(m // p**i) % p for i in range(k)] + [1]
        if is_irreducible_mod_p(coeffs, p):
            return tuple(coeffs)
    raise AssertionError("unreachable: irreducibles exist in every degree")


# ---------------------------------------------------------------------------
# finite fields

_TABLE_LIMIT = 1 << 20


class FiniteField:
    """F_q with q = p^k.  Construct through :func:`fq_make` to share instances."""

    def __init__(self, p: int, k: int = 1):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if k < 1:
            raise ValueError("extension degree must be >= 1")
        self.p = p
        self.k = k
        self.q = p**k
        if k > 1 and self.q > _TABLE_LIMIT:
            raise ValueError(f"F_{p}^{k} is too large for the table-driven representation")
        self.modulus = conway_free_modulus(p, k) if k > 1 else (0, 1)
        self._chi = None
        self._pow_p = np.array([p**i for i in range(k)], dtype=np.int64)
        if k > 1:
            self._build_tables()

    def __repr__(self):
        return f"FiniteField({self.p}, {self.k})"

    def __reduce__(self):
        return (fq_make, (self.p, self.k))

    # -- construction -------------------------------------------------------

    def _slow_mul(self, a: int, b: int) -> int:
        p, m = self.p, list(self.modulus)
        da = [(a // p**i) % p for i in range(self.k)]
        db = [(b // p**i) % p for i in range(self.k)]
        r = _pmulmod(da, db, m, p)
        return sum(c * p**i for i, c in enumerate(r))

    def _build_tables(self):
        p, k, q = self.p, self.k, self.q
        idx = np.arange(q, dtype=np.int64)
        self._digits = np.stack([(idx // p**i) % p for i in range(k)], axis=1)
        order_factors = list(factorize(q - 1))
        for g in range(2, q):
            if all(self._slow_pow(g, (q - 1) // r) != 1 for r in order_factors):
                break
        else:
            g = 1  # q == 2
        exp = np.empty(2 * (q - 1), dtype=np.int64)
        x = 1
        for i in range(q - 1):
            exp[i] = x
            x = self._slow_mul(x, g)
        exp[q - 1 :] = exp[: q - 1]
        log = np.full(q, -1, dtype=np.int64)
        log[exp[: q - 1]] = np.arange(q - 1)
        self.generator = g
        self._exp = exp
        self._log = log

    def _slow_pow(self, a: int, e: int) -> int:
        result, base = 1, a
        while e:
            if e & 1:
                result = self._slow_mul(result, base)
            base = self._slow_mul(base, base)
            e >>= 1
        return result

    # -- arithmetic ---------------------------------------------------------

    @staticmethod
    def _out(x):
        return int(x) if np.ndim(x) == 0 else x

    def add(self, a, b):
        if self.k == 1:
            return (a + b) % self.p
        return self._digitwise(a, b, 1)

    def sub(self, a, b):
        if self.k == 1:
            return (a - b) % self.p
        return self._digitwise(a, b, -1)

    def _digitwise(self, a, b, sign: int):
        a, b = np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)
        p = self.p
        r = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        for pw in self._pow_p:
            r += ((a // pw + sign * (b // pw)) % p) * pw
        return self._out(r)

    def neg(self, a):
        return self.sub(0, a)

    def mul(self, a, b):
        if self.k == 1:
            return (a * b) % self.p
        a, b = np.asarray(a), np.asarray(b)
        la, lb = self._log[a], self._log[b]
        r = self._exp[np.where((la < 0) | (lb < 0), 0, la + lb)]
        return self._out(np.where((la < 0) | (lb < 0), 0, r))

    def pow(self, a, e: int):
        if self.k == 1:
            if np.ndim(a) == 0:
                return pow(int(a), e, self.p) if (e >= 0 or a % self.p) else _zero_pow(e)
            return _np_powmod(np.asarray(a, dtype=np.int64), e, self.p)
        a = np.asarray(a)
        la = self._log[a]
        if e == 0:
            return self._out(np.ones_like(a))
        if np.any((la < 0) & (e < 0)):
            raise ZeroDivisionError("0 has no inverse")
        r = self._exp[np.where(la < 0, 0, (la * e) % (self.q - 1))]
        return self._out(np.where(la < 0, 0, r))

    def inv(self, a):
        if np.ndim(a) == 0 and int(a) % self.q == 0:
            raise ZeroDivisionError("0 has no inverse in F_q")
        return self.pow(a, self.q - 2)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def from_int(self, c: int) -> int:
        return int(c) % self.p

    def from_fraction(self, c: Fraction) -> int:
        c = Fraction(c)
        if c.denominator % self.p == 0:
            raise ZeroDivisionError(f"{c} has a denominator divisible by {self.p}")
        return (c.numerator % self.p) * pow(c.denominator, -1, self.p) % self.p

    def elements(self) -> np.ndarray:
        return np.arange(self.q, dtype=np.int64)

    def digits(self, a) -> np.ndarray:
        """Base-p digits of elements, shape (..., k), least significant first."""
        a = np.asarray(a, dtype=np.int64)
        return np.ascontiguousarray(np.stack([(a // p) % self.p for p in self._pow_p], axis=-1))

    def frobenius(self, a, times: int = 1):
        return self.pow(a, self.p**times)

    def trace(self, a):
        """Absolute trace to F_p."""
        acc, x = a, a
        for _ in range(self.k - 1):
            x = self.pow(x, self.p)
            acc = self.add(acc, x)
        return acc

    def chi_table(self) -> np.ndarray:
        """Quadratic character of every element, as an int8 array of length q."""
        if self._chi is None:
            q = self.q
            chi = np.full(q, -1, dtype=np.int8)
            if self.p == 2:
                chi[:] = 1
            elif self.k == 1:
                xs = np.arange(1, (q + 1) // 2, dtype=np.int64)
                chi[(xs * xs) % q] = 1
            else:
                chi[self._exp[: q - 1 : 2]] = 1
            chi[0] = 0
            self._chi = chi
        return self._chi

    def chi(self, a):
        """Quadratic character; in characteristic 2 every element is a square."""
        return self._out(self.chi_table()[np.asarray(a)])

    fq_sqrt_exists = chi

    def is_square(self, a) -> bool:
        return self.chi(a) >= 0

    def sqrt(self, a: int) -> int | None:
        """Some square root of ``a`` in F_q, or None."""
        if a == 0:
            return 0
        if self.p == 2:
            return self.pow(a, self.q // 2)
        if self.chi(a) < 0:
            return None
        if self.k > 1:
            return int(self._exp[self._log[a] // 2])
        xs = np.arange(self.p, dtype=np.int64)
        hits = np.flatnonzero((xs * xs) % self.p == a)
        return int(hits[0])

    def cube_roots_of_unity(self) -> list[int]:
        q = self.q
        if (q - 1) % 3:
            return [1]
        if self.k > 1:
            return sorted(int(self._exp[j * (q - 1) // 3]) for j in range(3))
        for g in range(2, q):
            w = pow(g, (q - 1) // 3, q)
            if w != 1:
                return sorted([1, w, w * w % q])
        raise AssertionError("unreachable")

    fq_cube_roots_of_unity = cube_roots_of_unity

    def primitive_cube_roots(self) -> list[int]:
        return [w for w in self.cube_roots_of_unity() if w != 1]

    # -- polynomial evaluation ---------------------------------------------

    def poly_eval(self, coeffs, t):
        """Horner evaluation of ``coeffs`` (field elements, low to high) at ``t``."""
        acc = np.zeros_like(np.asarray(t)) if np.ndim(t) else 0
        for c in reversed(coeffs):
            acc = self.add(self.mul(acc, t), c)
        return acc


def _zero_pow(e: int) -> int:
    if e == 0:
        return 1
    if e > 0:
        return 0
    raise ZeroDivisionError("0 has no inverse")


def _np_powmod(a: np.ndarray, e: int, p: int) -> np.ndarray:
    if e < 0:
        if np.any(a % p == 0):
            raise ZeroDivisionError("0 has no inverse")
        a = _np_powmod(a, p - 2, p)
        e = -e
    result = np.ones_like(a)
    base = a % p
    while e:
        if e & 1:
            result = (result * base) % p
        base = (base * base) % p
        e >>= 1
    return result


@lru_cache(maxsize=64)
def fq_make(p: int, k: int = 1) -> FiniteField:
    """Shared handle for F_{p^k}."""
    return FiniteField(p, k)


def fq_of_size(q: int) -> FiniteField:
    for p, k in factorize(q).items():
        if len(factorize(q)) != 1:
            break
        return fq_make(p, k)
    raise ValueError(f"{q} is not a prime power")
