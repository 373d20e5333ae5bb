"""Hot loops for prime-field fibre counting."""
from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def cubic_char_sums(p, c2, c1, c0, chi):
    """``out[j] = sum_x chi[x^3 + c2[j] x^2 + c1[j] x + c0[j] mod p]`` over x in F_p.

    Each cubic is stepped by forward differences, so the inner loop only adds.
    Four cubics run interleaved to keep the pipeline busy.
    """
    n = c0.shape[0]
    out = np.zeros(n, np.int64)
    six = 6 % p
    val = np.zeros(4, np.int64)
    d1 = np.zeros(4, np.int64)
    d2 = np.zeros(4, np.int64)
    for j0 in range(0, n, 4):
        m = min(4, n - j0)
        val[:] = 0
        d1[:] = 0
        d2[:] = 0
        for i in range(m):
            j = j0 + i
            val[i] = c0[j] % p
            d1[i] = (1 + c2[j] + c1[j]) % p
            d2[i] = (6 + 2 * c2[j]) % p
        v0, v1, v2, v3 = val[0], val[1], val[2], val[3]
        a0, a1, a2, a3 = d1[0], d1[1], d1[2], d1[3]
        b0, b1, b2, b3 = d2[0], d2[1], d2[2], d2[3]
        s0 = s1 = s2 = s3 = 0
        for _ in range(p):
            s0 += chi[v0]
            s1 += chi[v1]
            s2 += chi[v2]
            s3 += chi[v3]
            v0 += a0
            v0 -= p if v0 >= p else 0
            v1 += a1
            v1 -= p if v1 >= p else 0
            v2 += a2
            v2 -= p if v2 >= p else 0
            v3 += a3
            v3 -= p if v3 >= p else 0
            a0 += b0
            a0 -= p if a0 >= p else 0
            a1 += b1
            a1 -= p if a1 >= p else 0
            a2 += b2
            a2 -= p if a2 >= p else 0
            a3 += b3
            a3 -= p if a3 >= p else 0
            b0 += six
            b0 -= p if b0 >= p else 0
            b1 += six
            b1 -= p if b1 >= p else 0
            b2 += six
            b2 -= p if b2 >= p else 0
            b3 += six
            b3 -= p if b3 >= p else 0
        sums = (s0, s1, s2, s3)
        for i in range(m):
            out[j0 + i] = sums[i]
    return out


@njit(cache=True)
def cubic_char_sums_ext(p, val, d1, d2, six, chi):
    """Character sums along F_p-lines of an extension field F_{p^k}.

    Row j starts at some x_j and walks x_j, x_j + 1, ..., x_j + p - 1.  ``val``,
    ``d1``, ``d2`` hold the base-p digits of f(x_j) and its first two forward
    differences; the third difference is the prime-field constant ``six``.
    """
    n, k = val.shape
    out = np.zeros(n, np.int64)
    v = np.empty(k, np.int64)
    a = np.empty(k, np.int64)
    b = np.empty(k, np.int64)
    pw = np.empty(k, np.int64)
    pw[0] = 1
    for i in range(1, k):
        pw[i] = pw[i - 1] * p
    for j in range(n):
        for i in range(k):
            v[i] = val[j, i]
            a[i] = d1[j, i]
            b[i] = d2[j, i]
        s = 0
        for _ in range(p):
            idx = 0
            for i in range(k):
                idx += v[i] * pw[i]
            s += chi[idx]
            for i in range(k):
                v[i] += a[i]
                v[i] -= p if v[i] >= p else 0
                a[i] += b[i]
                a[i] -= p if a[i] >= p else 0
            b[0] += six
            b[0] -= p if b[0] >= p else 0
        out[j] = s
    return out


# ---------------------------------------------------------------------------
# group orders of y^2 = x^3 + A x + B over F_{p^2} = F_p[w]/(w^2 + c1 w + c0)
#
# Field elements are pairs (a0, a1) = a0 + a1 w with 0 <= ai < p.  Products are
# reduced through a float reciprocal, which beats integer division here.


@njit(cache=True, inline="always")
def _red(x, p, pinv):
    r = x - np.int64(x * pinv) * p
    if r < 0:
        r += p
    elif r >= p:
        r -= p
    return r


@njit(cache=True, inline="always")
def _sub(a, b, p):
    r = a - b
    return r + p if r < 0 else r


@njit(cache=True, inline="always")
def _add(a, b, p):
    r = a + b
    return r - p if r >= p else r


@njit(cache=True, inline="always")
def _f2mul(F, a0, a1, b0, b1):
    p, pinv, c0, c1 = F[0], F[1], F[2], F[3]
    hi = _red(a1 * b1, p, pinv)
    r0 = _red(a0 * b0 + hi * (p - c0), p, pinv)
    r1 = _red(a0 * b1 + a1 * b0 + hi * (p - c1), p, pinv)
    return r0, r1


@njit(cache=True, inline="always")
def _f2inv(F, inv_p, a0, a1):
    # conj(a) = a0 - c1 a1 - a1 w, and a * conj(a) lies in F_p
    p, pinv, c1 = F[0], F[1], F[3]
    b0 = _red(a0 + a1 * (p - c1), p, pinv)
    b1 = _sub(0, a1, p)
    n0, _ = _f2mul(F, a0, a1, b0, b1)
    ni = inv_p[np.int64(n0)]
    return _red(b0 * ni, p, pinv), _red(b1 * ni, p, pinv)


@njit(cache=True)
def _ec_add(F, inv_p, A0, A1, P, Q):
    # points are (x0, x1, y0, y1, is_infinity)
    p = F[0]
    if P[4]:
        return Q
    if Q[4]:
        return P
    if P[0] == Q[0] and P[1] == Q[1]:
        if _add(P[2], Q[2], p) == 0 and _add(P[3], Q[3], p) == 0:
            return (0, 0, 0, 0, 1)
        # tangent slope (3x^2 + A) / (2y)
        x20, x21 = _f2mul(F, P[0], P[1], P[0], P[1])
        n0 = _red(3 * x20 + A0, p, F[1])
        n1 = _red(3 * x21 + A1, p, F[1])
        d0, d1 = _f2inv(F, inv_p, _add(P[2], P[2], p), _add(P[3], P[3], p))
    else:
        n0 = _sub(Q[2], P[2], p)
        n1 = _sub(Q[3], P[3], p)
        d0, d1 = _f2inv(F, inv_p, _sub(Q[0], P[0], p), _sub(Q[1], P[1], p))
    l0, l1 = _f2mul(F, n0, n1, d0, d1)
    s0, s1 = _f2mul(F, l0, l1, l0, l1)
    x0 = _sub(_sub(s0, P[0], p), Q[0], p)
    x1 = _sub(_sub(s1, P[1], p), Q[1], p)
    t0, t1 = _f2mul(F, l0, l1, _sub(P[0], x0, p), _sub(P[1], x1, p))
    return (x0, x1, _sub(t0, P[2], p), _sub(t1, P[3], p), 0)


@njit(cache=True)
def _ec_mul(F, inv_p, A0, A1, P, n):
    R = (0, 0, 0, 0, 1)
    while n > 0:
        if n & 1:
            R = _ec_add(F, inv_p, A0, A1, R, P)
        P = _ec_add(F, inv_p, A0, A1, P, P)
        n >>= 1
    return R


@njit(cache=True)
def _orders_in_window(F, inv_p, A0, A1, P, lo, width, s, keys, order, by0, by1, out):
    """out[m] = 1 for every m in [0, width] with (lo + m) P = O (baby-step giant-step).

    Baby steps jP, 0 <= j < s, are matched up to sign, so giant steps stride 2s - 1.
    """
    p = F[0]
    out[:] = 0
    R = (0, 0, 0, 0, 1)
    for j in range(s):
        # key -1 marks the point at infinity
        keys[j] = -1 if R[4] else R[0] + p * R[1]
        by0[j], by1[j] = R[2], R[3]
        R = _ec_add(F, inv_p, A0, A1, R, P)
    order[:] = np.argsort(keys)
    sk = keys[order]
    stride = 2 * s - 1
    R = _ec_mul(F, inv_p, A0, A1, P, stride)
    step = (R[0], R[1], _sub(0, R[2], p), _sub(0, R[3], p), R[4])
    G = _ec_mul(F, inv_p, A0, A1, P, lo)
    if not G[4]:
        G = (G[0], G[1], _sub(0, G[2], p), _sub(0, G[3], p), 0)
    # G_i = -(lo + i stride) P; G_i = +-jP means m = i stride +- j
    base = 0
    while base - s < width:
        key = -1 if G[4] else G[0] + p * G[1]
        pos = np.searchsorted(sk, key)
        while pos < s and sk[pos] == key:
            j = order[pos]
            if G[4]:
                plus = minus = True
            else:
                plus = by0[j] == G[2] and by1[j] == G[3]
                minus = _add(by0[j], G[2], p) == 0 and _add(by1[j], G[3], p) == 0
            if plus and base + j <= width:
                out[base + j] = 1
            if minus and 0 <= base - j <= width:
                out[base - j] = 1
            pos += 1
        G = _ec_add(F, inv_p, A0, A1, G, step)
        base += stride


@njit(cache=True)
def _powmod(a, e, p):
    r = 1
    while e:
        if e & 1:
            r = r * a % p
        a = a * a % p
        e >>= 1
    return r


@njit(cache=True)
def ec_counts_fp2(p, c0, c1, A, B, max_points):
    """#E(F_{p^2}) for y^2 = x^3 + A[j] x + B[j]; -1 where the order stayed ambiguous.

    A, B have shape (n, 2) (base-p digits).  Points come without square roots:
    for d = f(x0) != 0, (d x0, d^2) lies on y^2 = x^3 + d^2 A x + d^3 B, which is
    E when d is a square and the quadratic twist otherwise.
    """
    F = (np.int64(p), 1.0 / p, np.int64(c0), np.int64(c1))
    pinv = F[1]
    q = p * p
    W = 2 * p
    lo = q + 1 - W
    width = 2 * W
    s = 1
    while 2 * s * s < width + 1:
        s += 1
    inv_p = np.zeros(p, np.int64)
    sq_p = np.zeros(p, np.int64)
    for a in range(1, p):
        inv_p[a] = _powmod(a, p - 2, p)
        sq_p[a] = 1 if _powmod(a, (p - 1) // 2, p) == 1 else -1
    keys = np.empty(s, np.int64)
    order = np.empty(s, np.int64)
    by0 = np.empty(s, np.int64)
    by1 = np.empty(s, np.int64)
    sol = np.empty(width + 1, np.int64)
    cand = np.empty(width + 1, np.int64)
    n = A.shape[0]
    out = np.empty(n, np.int64)
    for j in range(n):
        a0, a1, b0, b1 = A[j, 0], A[j, 1], B[j, 0], B[j, 1]
        cand[:] = 1
        left = width + 1
        tries = 0
        xv = 0
        while left > 1 and tries < max_points:
            xv += 1
            x0, x1 = xv % p, (xv // p) % p
            # d = x^3 + A x + B
            t0, t1 = _f2mul(F, x0, x1, x0, x1)
            t0, t1 = _add(t0, a0, p), _add(t1, a1, p)
            d0, d1 = _f2mul(F, t0, t1, x0, x1)
            d0, d1 = _add(d0, b0, p), _add(d1, b1, p)
            if d0 == 0 and d1 == 0:
                continue
            tries += 1
            nrm, _ = _f2mul(F, d0, d1, _red(d0 + d1 * (p - c1), p, pinv), _sub(0, d1, p))
            is_sq = sq_p[nrm] == 1
            dd0, dd1 = _f2mul(F, d0, d1, d0, d1)
            Ad0, Ad1 = _f2mul(F, dd0, dd1, a0, a1)
            px0, px1 = _f2mul(F, d0, d1, x0, x1)
            P = (px0, px1, dd0, dd1, 0)
            _orders_in_window(F, inv_p, Ad0, Ad1, P, lo, width, s, keys, order, by0, by1, sol)
            left = 0
            for m in range(width + 1):
                ok = sol[m] if is_sq else sol[width - m]
                if cand[m] and not ok:
                    cand[m] = 0
                left += cand[m]
        if left == 1:
            for m in range(width + 1):
                if cand[m]:
                    out[j] = lo + m
        else:
            out[j] = -1
    return out
