"""Quick oracle cross-checks behind ``galrep selftest``."""
from __future__ import annotations

import tempfile
from pathlib import Path

import mpmath
import numpy as np

from .arith import EisInt, fq_make
from .lseries import eval_F, eval_F_bessel
from .oracles import brute_fix_surface, brute_fix_threefold
from .surfrep import fix_surface, surface_charpoly
from .threefoldrep import DEFAULT_CONFIG, APRecord, charpoly4, compute_ap, compute_bp, fix_threefold
from .weierstrass import X_PAIR, fibre_counts


def _fix_points() -> bool:
    q = 7
    F = fq_make(q)
    cfg = DEFAULT_CONFIG
    ok = True
    for i in range(3):
        for m in (cfg.X, cfg.Xp):
            ok &= fix_surface(m, F, i) == brute_fix_surface(m, q, i)
        ok &= fix_threefold(F, i, cfg) == brute_fix_threefold(cfg.X, cfg.Xp, q, i)
    return ok


def _row5() -> bool:
    cp = charpoly4(compute_ap(5), compute_bp(5), 5)
    want = (EisInt(0, 5**6), EisInt(5**3 * 13, 5**3 * 10), EisInt(5, 5), EisInt(10, 13))
    return tuple(cp.coeffs) == want


def _surface4() -> bool:
    cp = surface_charpoly(4)
    return tuple(cp.coeffs) == (EisInt(625), EisInt(-25, -50), EisInt(-20), EisInt(1, 2))


def _kernel_F() -> bool:
    with mpmath.workdps(40):
        x = mpmath.mpf("2.5")
        return abs(eval_F(x, 40) - eval_F_bessel(x, 40)) < mpmath.mpf(10) ** -35


def _orders_vs_sums() -> bool:
    F = fq_make(43, 2)
    return bool(np.array_equal(fibre_counts(X_PAIR, F, "orders"), fibre_counts(X_PAIR, F, "sums")))


def _cache_roundtrip() -> bool:
    from .cli import APCache

    recs = [APRecord(5, EisInt(-10, -13), EisInt(-79, 81)), APRecord(7, EisInt(7, 4))]
    with tempfile.TemporaryDirectory() as d:
        path = Path(d) / "cache.txt"
        c = APCache(path, "test")
        for r in recs:
            c.add(r)
        return APCache(path, "test").records == {r.p: r for r in recs}


CHECKS = {
    "fixed points vs F_{q^3} enumeration (q = 7)": _fix_points,
    "degree-4 polynomial at p = 5": _row5,
    "four-dimensional surface example at p = 5": _surface4,
    "F kernel vs Bessel K_2": _kernel_F,
    "group-order fibre counts vs character sums (F_43^2)": _orders_vs_sums,
    "cache round trip": _cache_roundtrip,
}


def run(emit=print) -> bool:
    all_ok = True
    for name, check in CHECKS.items():
        ok = bool(check())
        all_ok &= ok
        emit(f"{'PASS' if ok else 'FAIL'}  {name}")
    return all_ok
