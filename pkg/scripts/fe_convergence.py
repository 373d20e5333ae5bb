"""Solve the functional equation at several truncation points B and compare with the published L(2).

Records are shared through the a_p cache, so rerunning with a larger --pmax
only counts the new primes.
"""
import argparse
import logging
from pathlib import Path

import mpmath

from galrep.arith import EisInt
from galrep.cli import RunConfig, fill_cache
from galrep.lseries import build_locals, conductor, dirichlet_coeffs, fe_solve_w, truncation_estimate

PUBLISHED_L2 = mpmath.mpc("0.4199405774024452982392984", "0.2424528054069486672346063")
TGRID = [1, 1.2, 1.3, 1.4, 1.5]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--pmax", type=int, default=16000)
    ap.add_argument("--steps", default="2000,4000,8000,16000")
    ap.add_argument("--cache", default="fe_cache.txt")
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()
    logging.basicConfig(level=logging.INFO, format="%(message)s")

    rc = RunConfig(pmax=args.pmax, cache=Path(args.cache), workers=args.workers)
    cache = fill_cache(rc, lambda p: p * p < args.pmax)
    N = conductor(9, 9)
    unit = EisInt(1, 1).to_complex()  # e^{i pi/3}
    print(f"{'B':>6} {'residual':>10} {'|w-e^(i pi/3)|':>15} {'|L2-published|':>15} {'tail(t=1.5)':>12}")
    for B in (int(x) for x in args.steps.split(",")):
        recs = {p: (r.a_p, r.b_p) for p, r in cache.records.items() if p < B}
        rep = fe_solve_w(dirichlet_coeffs(build_locals(recs, B), B), N, TGRID)
        print(
            f"{B:>6} {mpmath.nstr(rep.residual, 3):>10} {mpmath.nstr(abs(rep.w - unit), 3):>15} "
            f"{mpmath.nstr(abs(rep.L2_snapped - PUBLISHED_L2), 3):>15} "
            f"{mpmath.nstr(truncation_estimate(N, B, 1.5), 3):>12}",
            flush=True,
        )


if __name__ == "__main__":
    main()
