"""Print the surface polynomials for n = 4..12 and the degree-4 rows for p = 5..29."""
import argparse

from galrep.cli import format_row
from galrep.surfrep import format_charpoly, surface_charpoly
from galrep.threefoldrep import ap_bp, charpoly4, twisted_charpoly
from galrep.weierstrass import SURFACE_EXAMPLES


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--primes", default="5,7,11,13,17,19,23,29")
    ap.add_argument("--twisted", action="store_true", help="rows of the twisted representation")
    args = ap.parse_args()

    for n in sorted(SURFACE_EXAMPLES):
        cp = surface_charpoly(n)
        print(f"n = {n:2d}  p = {cp.q}: {format_charpoly(cp)}")
    print()
    for p in (int(x) for x in args.primes.split(",")):
        rec = ap_bp(p, need_b=True)
        cp = (twisted_charpoly if args.twisted else charpoly4)(rec.a_p, rec.b_p, p)
        print(f"{p:3d}  {format_row(cp)}")


if __name__ == "__main__":
    main()
