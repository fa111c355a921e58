"""Command line entry point: ``meshpat dist | verify | seq | series``.

Exit codes: 0 success, 1 a hard verification failure, 2 usage error,
3 size cap exceeded.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from dataclasses import dataclass
from typing import Callable, Sequence

from . import multivar as mv
from . import recursions as rc
from .checks import SUITES, run_suite
from .errors import InvalidInputError, ResourceLimitError
from .oracle import ALL, PermClass, default_cap, distribution, q_distribution
from .perm_core import Bound, KMax, Pattern, Permutation, QuadSpec, mmp_count, quad_orbit
from .poly import BiPoly, EgfSeries, IntPoly

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3
HARD_CAP = 12


@dataclass(frozen=True)
class OutputRecord:
    n: int
    spec: str
    cls: str
    coeffs: tuple
    provenance: str

    def to_dict(self) -> dict:
        return {"n": self.n, "spec": self.spec, "class": self.cls,
                "coeffs": list(self.coeffs), "provenance": self.provenance}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> "OutputRecord":
        d = json.loads(text)
        coeffs = tuple(tuple(c) if isinstance(c, list) else c for c in d["coeffs"])
        return cls(d["n"], d["spec"], d["class"], coeffs, d["provenance"])

    @classmethod
    def of(cls, n: int, pattern: Pattern, pclass: PermClass, poly, provenance: str) -> "OutputRecord":
        if isinstance(poly, BiPoly):
            coeffs = tuple(tuple(str(c) for c in row) for row in poly.to_lists())
        else:
            coeffs = tuple(str(c) for c in poly.to_list())
        return cls(n, str(pattern), str(pclass), coeffs, provenance)


# --------------------------------------------------------------------------
# choosing a recursion or product formula for a request
# --------------------------------------------------------------------------

def _one_quadrant_family(spec: QuadSpec):
    """(name, params) for an orbit member with a known formula, else None."""
    zero = Bound.at_least(0)
    for s in sorted(quad_orbit(spec), key=str):
        b1, b2, b3, b4 = s.bounds
        if b3 != zero or b4 != zero:
            continue
        if b2 == zero:
            if b1 == zero:
                return "all_match", ()
            if b1.is_empty:
                return "empty000", ()
            return ("eqk000" if b1.kind == "eq" else "k000"), (b1.m,)
        if b1.kind == "ge" and b2.kind == "ge" and b1.m and b2.m:
            return "ab00", (b1.m, b2.m)
        if b1.kind == "ge" and b1.m and b2.is_empty:
            return "kempty00", (b1.m,)
    return None


_REC = {
    "all_match": (lambda n: IntPoly.monomial(n), lambda n: IntPoly.monomial(n)),
    "empty000": (rc.r_empty000, rc.r_empty000_stirling),
    "k000": (lambda n, k: rc.r_k000(k, n), lambda n, k: rc.r_k000_closed(k, n)),
    "eqk000": (lambda n, k: rc.r_eqk000(k, n), lambda n, k: rc.r_eqk000_closed(k, n)),
    "ab00": (lambda n, a, b: rc.r_ab00(a, b, n), lambda n, a, b: rc.r_ab00_closed(a, b, n)),
    "kempty00": (lambda n, k: rc.r_kempty00(k, n), lambda n, k: rc.r_kempty00_closed(k, n)),
}


def _engine_for(spec: QuadSpec):
    orbit = quad_orbit(spec)
    for name in ("f1010", "g2020", "f1011", "h1111"):
        if mv.engine(name).specs[0] in orbit:
            return mv.engine(name)
    for s in orbit:
        b = s.bounds
        if (b[0], b[1], b[3]) == (Bound.at_least(1), Bound.at_least(0), Bound.at_least(0)) \
                and b[2].kind == "ge" and b[2].m >= 2:
            return mv.engine(f"f10a0:{b[2].m}")
    return None


def _block_split(spec: QuadSpec, pclass: PermClass, n: int):
    """(left spec, right spec, block length) when a block class splits the count."""
    vals = pclass.block_values(n)
    L = len(vals)
    if n < L:
        return None
    # the block must be beta alpha: top values n-k+1..n, then 1..ell
    for k in range(1, L):
        beta, alpha = vals[:k], vals[k:]
        if set(beta) == set(range(n - k + 1, n + 1)) and set(alpha) == set(range(1, L - k + 1)):
            break
    else:
        return None
    zero = Bound.at_least(0)
    b1, b2, b3, b4 = spec.bounds
    if b2 != zero or b1.kind != "ge" or b3.kind != "ge" or not b1.m or not b3.m:
        return None
    if b4 == zero:
        a, b = b1.m, b3.m
        ok = (a <= k and b <= L - k and mmp_count(_red(beta), QuadSpec.of(a, 0, 0, 0)) == 0
              and mmp_count(_red(alpha), QuadSpec.of(0, 0, b, 0)) == 0)
        return (QuadSpec.of(0, 0, b, 0), QuadSpec.of(a, 0, 0, 0), L) if ok else None
    if spec == QuadSpec.of(1, 0, 1, 1):
        decreasing = list(beta) == sorted(beta, reverse=True) and list(alpha) == sorted(alpha, reverse=True)
        return (QuadSpec.of(0, 0, 1, 0), QuadSpec.of(1, 0, 0, 1), L) if decreasing else None
    return None


def _red(vals) -> Permutation:
    order = sorted(vals)
    return Permutation(tuple(order.index(v) + 1 for v in vals))


def compute(n: int, pattern: Pattern, pclass: PermClass = ALL, *, method: str = "oracle",
            q: bool = False, cap: int | None = None, workers: int = 1):
    """Return (polynomial, provenance) for one request."""
    if n < 0:
        raise InvalidInputError("n must be non-negative")
    if method == "oracle":
        if q:
            return q_distribution(n, pattern, pclass, cap=cap, workers=workers), "oracle"
        return distribution(n, pattern, pclass, cap=cap, workers=workers), "oracle"
    if method not in ("recursion", "closed"):
        raise InvalidInputError(f"unknown method {method!r}")
    closed = method == "closed"
    tag = "closed" if closed else "recursion"
    if q:
        fam = _one_quadrant_family(pattern) if isinstance(pattern, QuadSpec) else None
        if pclass.kind != "all" or fam is None or fam[0] not in ("k000", "ab00") \
                or not _is_literal(pattern, fam):
            raise InvalidInputError("(x,q) formulas exist only for (k,0,0,0) and (a,b,0,0) over S_n")
        if fam[0] == "k000":
            f = rc.q_r_k000_closed if closed else rc.q_r_k000
            return f(fam[1][0], n), f"{tag}:q_r_k000"
        f = rc.q_r_ab00_closed if closed else rc.q_r_ab00
        return f(*fam[1], n), f"{tag}:q_r_ab00"
    if isinstance(pattern, KMax):
        if pclass.kind != "all":
            raise InvalidInputError("no recursion for the k<=max pattern on a restricted class")
        if closed and pattern.k >= 2:
            return rc.r_kmax_series(pattern.k, max(n, 1))[n], "closed:r_kmax_series"
        return rc.r_kmax(pattern.k, max(n, 1))[n], f"{tag}:r_kmax"
    if pclass.kind == "one-before-n":
        if n >= 2 and pattern == QuadSpec.of(1, 0, 1, 0):
            return (rc.b1010_closed(n), "closed:b1010") if closed else (rc.b1010(n), "recursion:b1010")
        if n >= 2 and pattern == QuadSpec.of(1, 0, 1, 1):
            return (rc.b1011_closed(n), "closed:b1011") if closed else (rc.b1011(n), "recursion:b1011")
        raise InvalidInputError(f"no formula for {pattern} on the one-before-n class")
    if pclass.kind == "block":
        split = _block_split(pattern, pclass, n)
        if split is None:
            raise InvalidInputError(f"no block convolution for {pattern} on {pclass} at n={n}")
        return rc.block_conv(*split, n), "recursion:block_conv"
    fam = _one_quadrant_family(pattern)
    if fam is not None:
        rec, cl = _REC[fam[0]]
        return (cl if closed else rec)(n, *fam[1]), f"{tag}:{fam[0]}"
    if not closed:
        eng = _engine_for(pattern)
        if eng is not None:
            if n < 1:
                return IntPoly.const(1), f"multivar:{eng.name}"
            return mv.run_engine(eng, n)[-1].specialize(), f"multivar:{eng.name}"
    raise InvalidInputError(f"no {method} available for spec {pattern}")


def _is_literal(spec: QuadSpec, fam) -> bool:
    # the q-statistic is not symmetric, so only the literal spec qualifies
    name, params = fam
    if name == "k000":
        return spec == QuadSpec.of(params[0], 0, 0, 0)
    return spec == QuadSpec.of(params[0], params[1], 0, 0)


# --------------------------------------------------------------------------
# rendering
# --------------------------------------------------------------------------

def _poly_text(coeffs) -> str:
    if coeffs and isinstance(coeffs[0], tuple):
        return str(BiPoly([[int(c) for c in row] for row in coeffs]))
    return str(IntPoly([int(c) for c in coeffs]))


def render(records: Sequence[OutputRecord], fmt: str) -> str:
    if fmt == "json":
        return "\n".join(r.to_json() for r in records)
    if fmt == "csv":
        if any(r.coeffs and isinstance(r.coeffs[0], tuple) for r in records):
            raise InvalidInputError("bivariate output is JSON only")
        width = max((len(r.coeffs) for r in records), default=0)
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "spec", "class"] + [f"c{i}" for i in range(width)])
        for r in records:
            w.writerow([r.n, r.spec, r.cls] + list(r.coeffs) + [0] * (width - len(r.coeffs)))
        return buf.getvalue().rstrip("\n")
    lines = [f"{'n':>3}  {'spec':<16} {'class':<14} polynomial"]
    for r in records:
        lines.append(f"{r.n:>3}  {r.spec:<16} {r.cls:<14} {_poly_text(r.coeffs)}")
    return "\n".join(lines)


# --------------------------------------------------------------------------
# argument handling
# --------------------------------------------------------------------------

def _n_values(text: str) -> list[int]:
    m = re.fullmatch(r"\s*(\d+)\s*(?:(?:\.\.|-|:)\s*(\d+))?\s*", text)
    if not m:
        raise InvalidInputError(f"bad --n value {text!r}; use N or A..B")
    lo = int(m.group(1))
    hi = int(m.group(2)) if m.group(2) else lo
    if hi < lo:
        raise InvalidInputError(f"empty range {text!r}")
    return list(range(lo, hi + 1))


def _pattern(args) -> Pattern:
    if args.kmax is not None and args.spec is not None:
        raise InvalidInputError("give --spec or --kmax, not both")
    if args.kmax is not None:
        return KMax(args.kmax)
    if args.spec is None:
        raise InvalidInputError("one of --spec or --kmax is required")
    return QuadSpec.parse(args.spec)


def _cap(args, pclass: PermClass) -> int:
    cap = args.cap if args.cap is not None else default_cap(pclass)
    if cap > HARD_CAP:
        print(f"warning: cap {cap} lowered to the hard ceiling {HARD_CAP}", file=sys.stderr)
        cap = HARD_CAP
    return cap


def _warn_runtime(n: int, method: str):
    if method == "oracle" and n >= 11:
        print(f"warning: enumerating S_{n} takes minutes", file=sys.stderr)


def cmd_dist(args) -> int:
    pattern = _pattern(args)
    pclass = PermClass.parse(args.cls)
    cap = _cap(args, pclass)
    records = []
    for n in _n_values(args.n):
        if args.method == "oracle" and n > cap:
            raise ResourceLimitError(n, cap)
        _warn_runtime(n, args.method)
        poly, prov = compute(n, pattern, pclass, method=args.method, q=args.q, cap=cap,
                             workers=args.threads)
        records.append(OutputRecord.of(n, pattern, pclass, poly, prov))
    print(render(records, args.format))
    return EXIT_OK


def cmd_verify(args) -> int:
    report = run_suite(args.suite, args.max_n)
    print(json.dumps(report, indent=None if args.compact else 1))
    print(f"{args.suite}: {report['summary']['pass']} pass, {report['summary']['fail']} fail, "
          f"{report['summary']['mismatch']} soft mismatch", file=sys.stderr)
    return EXIT_OK if report["ok"] else EXIT_FAIL


def extractor(text: str) -> Callable[[IntPoly], int]:
    if text == "eval0":
        return lambda p: p(0)
    if text == "top":
        return lambda p: p.leading_coefficient
    m = re.fullmatch(r"eval@(-?\d+)", text)
    if m:
        v = int(m.group(1))
        return lambda p: p(v)
    m = re.fullmatch(r"coeff:(\d+)", text)
    if m:
        k = int(m.group(1))
        return lambda p: p.coefficient(k)
    raise InvalidInputError(f"unknown extraction {text!r}; use eval0, eval@v, coeff:k or top")


def cmd_seq(args) -> int:
    pattern = _pattern(args)
    pclass = PermClass.parse(args.cls)
    cap = _cap(args, pclass)
    ext = extractor(args.extract)
    if args.method == "oracle" and args.max_n > cap:
        raise ResourceLimitError(args.max_n, cap)
    rows = []
    for n in range(args.min_n, args.max_n + 1):
        try:
            poly, _ = compute(n, pattern, pclass, method=args.method, cap=cap, workers=args.threads)
        except InvalidInputError:
            if pclass.kind != "all":  # class empty at this n
                continue
            raise
        rows.append((n, ext(poly)))
    if args.format == "json":
        print(json.dumps([{"n": n, "value": str(v)} for n, v in rows]))
    else:
        print("\n".join(f"{n} {v}" for n, v in rows))
    return EXIT_OK


def series_by_id(ident: str, order: int, k: int | None = None) -> EgfSeries:
    """EGF tables: entry n is the coefficient of t^n/n! (after the id's own shift)."""
    need_k = {"P_k000", "P_eqk000", "R_kempty00", "R_kmax"}
    if ident in need_k and k is None:
        raise InvalidInputError(f"series {ident} needs --k")
    if order < 0:
        raise InvalidInputError("order must be non-negative")
    if ident == "P_k000":
        return rc.p_k000_series(k, order)
    if ident == "P_eqk000":
        return rc.p_eqk000_series(k, order)
    if ident == "R_e000":
        return rc.r_empty000_series(order)
    if ident == "R_kempty00":
        return rc.r_kempty00_series(k, order)
    if ident == "R_kmax":
        return rc.r_kmax_series(k, order) if order >= 1 else EgfSeries.constant(1, 0)
    if ident == "B_1010":
        return rc.b1010_series(order)
    if ident == "B_1011":
        return rc.b1011_series(order)
    raise InvalidInputError(f"unknown series id {ident!r}")


SERIES_IDS = ("P_k000", "P_eqk000", "R_e000", "R_kempty00", "R_kmax", "B_1010", "B_1011")


def cmd_series(args) -> int:
    ser = series_by_id(args.id, args.order, args.k)
    if args.format == "json":
        print(json.dumps({"id": args.id, "k": args.k, "order": ser.order,
                          "terms": [[str(c) for c in p.to_list()] for p in ser.terms]}))
    else:
        print("\n".join(f"{n}: {p}" for n, p in enumerate(ser.terms)))
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="meshpat", description="Mesh pattern statistic distributions.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, fmts=("json", "csv", "table")):
        sp.add_argument("--spec", help="bounds a,b,c,d; tokens int | ge:int | eq:int | empty")
        sp.add_argument("--kmax", type=int, help="use the k<=max pattern instead of --spec")
        sp.add_argument("--class", dest="cls", default="all",
                        help="all | one-before-n | block:<desc>, e.g. block:n1")
        sp.add_argument("--method", choices=("oracle", "recursion", "closed"), default="oracle")
        sp.add_argument("--cap", type=int, help="largest n to enumerate (default 10, 11 on classes)")
        sp.add_argument("--threads", type=int, default=1)
        sp.add_argument("--format", choices=fmts, default=fmts[0])

    d = sub.add_parser("dist", help="distribution polynomial R_n(x)")
    d.add_argument("--n", required=True, help="N or a range A..B")
    d.add_argument("--q", action="store_true", help="track coinversions as well")
    common(d)
    d.set_defaults(func=cmd_dist)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("--suite", choices=SUITES + ("all",), default="all")
    v.add_argument("--max-n", type=int, default=None)
    v.add_argument("--compact", action="store_true", help="single-line JSON")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("seq", help="one integer per n extracted from R_n")
    s.add_argument("--extract", required=True, help="eval0 | eval@v | coeff:k | top")
    s.add_argument("--max-n", type=int, required=True)
    s.add_argument("--min-n", type=int, default=1)
    common(s, fmts=("text", "json"))
    s.set_defaults(func=cmd_seq)

    e = sub.add_parser("series", help="exponential generating function table")
    e.add_argument("--id", required=True, choices=SERIES_IDS)
    e.add_argument("--k", type=int)
    e.add_argument("--order", type=int, default=8)
    e.add_argument("--format", choices=("text", "json"), default="text")
    e.set_defaults(func=cmd_series)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except ResourceLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (InvalidInputError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def run() -> None:
    sys.exit(main())
