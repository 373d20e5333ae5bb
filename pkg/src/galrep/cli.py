"""Command line driver: surface polynomials, a_p/b_p with a resumable cache, L(2)."""
from __future__ import annotations

import argparse
import itertools
import logging
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import mpmath

from .arith import DEFAULT_PREC, EisInt, primes_below
from .lseries import build_locals, conductor, dirichlet_coeffs, search
from .surfrep import CharPoly, format_charpoly, surface_charpoly
from .threefoldrep import (
    DEFAULT_CONFIG,
    APRecord,
    ThreefoldConfig,
    charpoly4,
    compute_ap,
    compute_bp,
    twisted_charpoly,
)
from .weierstrass import SURFACE_EXAMPLES, family_specialize

log = logging.getLogger("galrep")

CACHE_ENV = "GALREP_CACHE"
DEFAULT_CACHE = "galrep_ap_cache.txt"
DEFAULT_TGRID = (1.0, 1.2, 1.3, 1.4, 1.5)


class CacheError(ValueError):
    pass


# ---------------------------------------------------------------------------
# configuration


@dataclass
class RunConfig:
    pmax: int = 30
    surfaces: str = "pair"  # "pair" or "c5,c6"
    exponents: tuple[tuple[int, int], ...] = ((9, 9),)
    bad2: tuple[str, ...] = ("1",)
    bad3: tuple[str, ...] = ("1",)
    tgrid: tuple[float, ...] = DEFAULT_TGRID
    prec: int = DEFAULT_PREC
    workers: int = 1
    cache: Path | None = field(default_factory=lambda: Path(os.environ.get(CACHE_ENV, DEFAULT_CACHE)))

    def __post_init__(self):
        if self.pmax < 5:
            raise ValueError("pmax must be at least 5")
        if any(t <= 0 for t in self.tgrid) or len(set(self.tgrid)) != len(self.tgrid):
            raise ValueError("tgrid values must be positive and distinct")
        if self.workers < 1:
            raise ValueError("need at least one worker")

    def threefold(self) -> ThreefoldConfig:
        if self.surfaces == "pair":
            return DEFAULT_CONFIG
        c5, c6 = (x.strip() for x in self.surfaces.split(","))
        X, Xp, _ = family_specialize(c5, c6)
        return ThreefoldConfig(X=X, Xp=Xp)

    def bad_primes(self) -> set[int]:
        if self.surfaces == "pair":
            return {2, 3}
        c5, c6 = (x.strip() for x in self.surfaces.split(","))
        return family_specialize(c5, c6)[2]

    def label(self) -> str:
        cfg = self.threefold()
        return f"{cfg.X.label} {cfg.Xp.label}"

    def candidates(self):
        for b2, b3, (e2, e3) in itertools.product(self.bad2, self.bad3, self.exponents):
            yield b2, b3, conductor(e2, e3)


# ---------------------------------------------------------------------------
# the a_p cache: "p u v [ub vb]" per line, '#' comments


class APCache:
    def __init__(self, path: Path | None, label: str):
        self.path = Path(path) if path is not None else None
        self.label = label
        self.records: dict[int, APRecord] = {}
        if self.path is not None and self.path.exists():
            self._load()

    def _load(self):
        header = f"# models: {self.label}"
        with open(self.path, encoding="utf-8") as fh:
            for lineno, raw in enumerate(fh, start=1):
                line = raw.strip()
                if not line:
                    continue
                if line.startswith("#"):
                    if line.startswith("# models:") and line != header:
                        raise CacheError(f"{self.path}:{lineno}: cache belongs to other models ({line[9:].strip()})")
                    continue
                self._merge(self._parse(line, lineno), lineno)

    def _parse(self, line: str, lineno: int) -> APRecord:
        parts = line.split()
        try:
            nums = [int(x) for x in parts]
        except ValueError:
            nums = None
        if nums is None or len(nums) not in (3, 5) or nums[0] < 5:
            raise CacheError(f"{self.path}:{lineno}: malformed cache line {line!r}")
        b = EisInt(nums[3], nums[4]) if len(nums) == 5 else None
        return APRecord(nums[0], EisInt(nums[1], nums[2]), b)

    def _merge(self, rec: APRecord, lineno: int | None = None):
        old = self.records.get(rec.p)
        if old is not None:
            where = f"{self.path}:{lineno}: " if lineno else ""
            if old.a_p != rec.a_p or (old.b_p and rec.b_p and old.b_p != rec.b_p):
                raise CacheError(f"{where}conflicting records for p = {rec.p}")
            rec = APRecord(rec.p, rec.a_p, rec.b_p or old.b_p)
        self.records[rec.p] = rec

    @staticmethod
    def format(rec: APRecord) -> str:
        line = f"{rec.p} {rec.a_p.serialize()}"
        return line + (f" {rec.b_p.serialize()}" if rec.b_p is not None else "")

    def add(self, rec: APRecord):
        self._merge(rec)
        if self.path is None:
            return
        fresh = not self.path.exists() or self.path.stat().st_size == 0
        with open(self.path, "a", encoding="utf-8") as fh:
            if fresh:
                fh.write(f"# models: {self.label}\n")
            fh.write(self.format(rec) + "\n")

    def missing(self, primes, need_b) -> list[tuple[int, bool, bool]]:
        """(p, need a, need b) for every prime whose record is incomplete."""
        out = []
        for p in primes:
            rec = self.records.get(p)
            want_b = need_b(p)
            if rec is None:
                out.append((p, True, want_b))
            elif want_b and rec.b_p is None:
                out.append((p, False, True))
        return out


def _shard(job):
    p, need_a, need_b, cfg = job
    a = compute_ap(p, cfg) if need_a else None
    b = compute_bp(p, cfg) if need_b else None
    return p, a, b


def fill_cache(rc: RunConfig, need_b=lambda p: False, primes=None) -> APCache:
    """Compute every missing record up to pmax; each shard is one prime, the caller is the only writer."""
    cache = APCache(rc.cache, rc.label())
    bad = rc.bad_primes()
    if primes is None:
        primes = primes_below(rc.pmax + 1)
    primes = [p for p in primes if p not in bad and p >= 5]
    todo = cache.missing(primes, need_b)
    cfg = rc.threefold()
    jobs = [(p, a, b, cfg) for p, a, b in todo]
    log.info("%d primes cached, %d to compute", len(primes) - len(todo), len(todo))
    if rc.workers == 1:
        results = map(_shard, jobs)
        pool = None
    else:
        pool = ProcessPoolExecutor(rc.workers)
        results = pool.map(_shard, jobs, chunksize=4)
    try:
        for p, a, b in results:
            old = cache.records.get(p)
            cache.add(APRecord(p, a if a is not None else old.a_p, b))
    finally:
        if pool is not None:
            pool.shutdown()
    return cache


# ---------------------------------------------------------------------------
# printing


def _zeta_multiple(c: EisInt) -> tuple[int, str] | None:
    """c = m, m*zeta or m*zeta^2 with m an integer."""
    if c.v == 0:
        return c.u, ""
    if c.u == 0:
        return c.v, "ζ"
    if c.u == c.v:
        return -c.u, "ζ²"
    return None


def _row_coeff(c: EisInt, first: bool) -> str:
    """Signed coefficient text: ' - 5ζ²', ' + (10 + 13ζ)', ' - (7 + 4ζ)'."""
    zm = _zeta_multiple(c)
    if zm is not None:
        m, z = zm
        body = (str(abs(m)) if abs(m) != 1 or not z else "") + z
        neg = m < 0
    elif c.u <= 0 and c.v <= 0:
        body, neg = f"({-c})", True
    else:
        body, neg = f"({c})", False
    if first:
        return ("-" if neg else "") + body
    return (" - " if neg else " + ") + body


def format_row(cp: CharPoly) -> str:
    """Degree-4 polynomial with p^3 pulled out of the linear and p^6 out of the constant term."""
    p = cp.q
    d0, d1, d2, d3 = cp.coeffs
    out = "T^4"
    if d3:
        out += _row_coeff(d3, False) + "T^3"
    if d2:
        out += _row_coeff(d2, False) + "T^2"
    if d1:
        inner = d1.exact_div(EisInt(p**3))
        text = _row_coeff(inner, False)
        sign, body = text[:3], text[3:]
        if body == "1":
            body = ""
        elif body and not body.startswith("("):
            body = f"({body})"
        out += f"{sign}{p}^3{body}T"
    unit = _zeta_multiple(d0.exact_div(EisInt(p**6)))
    m, z = unit
    out += (" - " if m < 0 else " + ") + f"{p}^6{z}"
    return out


# ---------------------------------------------------------------------------
# subcommands


def cmd_surface_charpoly(args, rc: RunConfig) -> int:
    ns = args.n or sorted(SURFACE_EXAMPLES)
    for n in ns:
        cp = surface_charpoly(n, args.p)
        print(f"n = {n}  p = {cp.q}  xi = {cp.xi}: {format_charpoly(cp)}")
    return 0


def cmd_ap(args, rc: RunConfig) -> int:
    cache = fill_cache(rc, lambda p: args.with_b)
    if args.list:
        for p in sorted(cache.records):
            if p <= rc.pmax:
                rec = cache.records[p]
                tail = f"  b_p = {rec.b_p}" if rec.b_p is not None else ""
                print(f"p = {p}  a_p = {rec.a_p}{tail}")
    else:
        print(f"{sum(1 for p in cache.records if p <= rc.pmax)} records up to {rc.pmax} in {rc.cache}")
    return 0


def cmd_charpoly(args, rc: RunConfig) -> int:
    p = args.p
    if p in rc.bad_primes() or p < 5:
        print(f"error: {p} is a bad prime", file=sys.stderr)
        return 2
    rec = fill_cache(rc, lambda q: True, primes=[p]).records[p]
    a, b = rec.a_p, rec.b_p
    cp = twisted_charpoly(a, b, p) if args.twisted else charpoly4(a, b, p)
    print(f"{p}  {format_row(cp)}")
    return 0


def _table(rc: RunConfig, bad2: str = "1", bad3: str = "1"):
    B = rc.pmax + 1
    cache = fill_cache(rc, lambda p: p * p < B)
    recs = {p: (r.a_p, r.b_p) for p, r in cache.records.items() if p < B}
    return recs, dirichlet_coeffs(build_locals(recs, B, bad2, bad3), B)


def cmd_coeffs(args, rc: RunConfig) -> int:
    _, table = _table(rc, rc.bad2[0], rc.bad3[0])
    for n in range(1, min(args.count, table.B - 1) + 1):
        print(f"a_{n} = {table.coeff(n)}")
    return 0


def _fe(rc: RunConfig):
    B = rc.pmax + 1
    cache = fill_cache(rc, lambda p: p * p < B)
    recs = {p: (r.a_p, r.b_p) for p, r in cache.records.items() if p < B}
    return search(recs, B, list(rc.candidates()), list(rc.tgrid), rc.prec)


def cmd_verify_fe(args, rc: RunConfig) -> int:
    for rep in _fe(rc):
        print(rep.summary(args.digits))
        print()
    return 0


def cmd_lvalue(args, rc: RunConfig) -> int:
    best = _fe(rc)[0]
    print(best.summary(args.digits))
    print(f"L(2) ≈ {mpmath.nstr(best.L2_snapped, args.digits)}")
    return 0


def cmd_selftest(args, rc: RunConfig) -> int:
    from . import selftest

    return 0 if selftest.run(print) else 1


# ---------------------------------------------------------------------------
# argument parsing


def _pairs(text: str) -> tuple[tuple[int, int], ...]:
    out = []
    for chunk in text.split(";"):
        a, b = chunk.split(",")
        out.append((int(a), int(b)))
    return tuple(out)


def _floats(text: str) -> tuple[float, ...]:
    return tuple(float(x) for x in text.split(","))


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="galrep", description=__doc__)
    ap.add_argument("--cache", help=f"a_p cache file (default ${CACHE_ENV} or {DEFAULT_CACHE}); 'none' disables")
    ap.add_argument("--surfaces", default="pair", help="'pair' or a family point 'c5,c6'")
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("surface-charpoly", help="characteristic polynomials of the built-in surfaces")
    s.add_argument("--n", type=int, action="append", help="eigenspace dimension (repeatable; default all)")
    s.add_argument("-p", type=int, default=None, help="prime (default: the example's own)")
    s.set_defaults(func=cmd_surface_charpoly)

    s = sub.add_parser("ap", help="fill the a_p cache up to pmax")
    s.add_argument("--pmax", type=int, required=True)
    s.add_argument("--with-b", action="store_true", help="also compute b_p")
    s.add_argument("--list", action="store_true")
    s.set_defaults(func=cmd_ap)

    s = sub.add_parser("charpoly", help="degree-4 polynomial at p")
    s.add_argument("-p", type=int, required=True)
    s.add_argument("--twisted", action="store_true")
    s.set_defaults(func=cmd_charpoly)

    s = sub.add_parser("coeffs", help="Dirichlet coefficients a_n")
    s.add_argument("--pmax", type=int, required=True)
    s.add_argument("--count", type=int, default=20)
    s.add_argument("--bad2", default="1")
    s.add_argument("--bad3", default="1")
    s.set_defaults(func=cmd_coeffs)

    for name, func in (("verify-fe", cmd_verify_fe), ("lvalue", cmd_lvalue)):
        s = sub.add_parser(name, help="solve the functional equation for w" if name == "verify-fe" else "L(2)")
        s.add_argument("--pmax", type=int, default=8000)
        s.add_argument("--N", default="9,9", help="conductor exponents 'a,b' of 2^a 3^b; ';' separates candidates")
        s.add_argument("--bad2", default="1", help="local factor at 2 in X, e.g. '1+2X'; ';' separates candidates")
        s.add_argument("--bad3", default="1")
        s.add_argument("--tgrid", default=",".join(str(t) for t in DEFAULT_TGRID))
        s.add_argument("--prec", type=int, default=DEFAULT_PREC)
        s.add_argument("--digits", type=int, default=25)
        s.set_defaults(func=func)

    s = sub.add_parser("selftest", help="run the oracle cross-checks")
    s.set_defaults(func=cmd_selftest)
    return ap


def config_from_args(args) -> RunConfig:
    cache = args.cache if args.cache is not None else os.environ.get(CACHE_ENV, DEFAULT_CACHE)
    kw = dict(
        surfaces=args.surfaces,
        workers=args.workers,
        cache=None if cache == "none" else Path(cache),
    )
    if getattr(args, "pmax", None) is not None:
        kw["pmax"] = args.pmax
    if hasattr(args, "N"):
        kw.update(
            exponents=_pairs(args.N),
            bad2=tuple(args.bad2.split(";")),
            bad3=tuple(args.bad3.split(";")),
            tgrid=_floats(args.tgrid),
            prec=args.prec,
        )
    elif hasattr(args, "bad2"):
        kw.update(bad2=(args.bad2,), bad3=(args.bad3,))
    return RunConfig(**kw)


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        rc = config_from_args(args)
        return args.func(args, rc)
    except CacheError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
