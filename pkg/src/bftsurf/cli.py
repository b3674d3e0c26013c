"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 domain error (or a failed ``verify``).
Exact values are printed as ``{"p", "q", "d"}`` objects or ``"num/den"``
strings; anything under ``approx`` is a 20-significant-digit decimal for
display and is never fed back into a computation.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from decimal import Decimal
from fractions import Fraction
from typing import Any, Iterable, Sequence

from . import __version__
from .bft import (
    beta0_principal,
    beta_inverse,
    beta_pair,
    beta_principal,
    family_matches,
    product_pair,
    product_surface_beta,
    second_candidate,
    subadditivity_check,
)
from .config import Config, ConfigError, load_config
from .crf import crf_eval, crf_ideal_l, crf_ideal_n
from .errors import BFTError
from .exact import MixedRadicandError, QuadVal, parse_rat, rat_str
from .lattice import destab_candidates, realize_corollary_lattice, search_irrational, trivial_solution_decomposition
from .pell import PerfectSquareMarker, fundamental_solution, nth_solution, pell_for_type
from .polarization import PolarizedPair
from .semihomog import chern_vector_raw, torsion_count_u_raw

DIGITS = 20
APPROX_NOTE = f"approximate decimals, {DIGITS} significant digits; exact fields are authoritative"

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        flags = sorted({s for a in self._actions for s in a.option_strings})
        raise UsageError(f"{self.prog}: {message}\nvalid flags: {' '.join(flags)}")


# --- formatting -------------------------------------------------------------


def _approx(x) -> str:
    v = QuadVal.coerce(x).to_decimal(DIGITS)
    if not v:
        return "0." + "0" * (DIGITS - 1)
    # pad to exactly DIGITS significant digits, in positional notation
    return format(v.quantize(Decimal(1).scaleb(v.adjusted() - DIGITS + 1)), "f")


def _with_approx(rec: dict, **vals) -> dict:
    rec["approx"] = {"note": APPROX_NOTE, **{k: _approx(v) for k, v in vals.items() if v is not None}}
    return rec


def _flatten(obj: Any, prefix: str = "") -> dict[str, str]:
    out: dict[str, str] = {}
    if isinstance(obj, dict) and set(obj) == {"p", "q", "d"}:
        out[prefix] = str(QuadVal.from_json(obj))
    elif isinstance(obj, dict):
        for k, v in obj.items():
            out.update(_flatten(v, f"{prefix}.{k}" if prefix else k))
    elif isinstance(obj, (list, tuple)):
        out[prefix] = json.dumps(obj)
    else:
        out[prefix] = "" if obj is None else str(obj).lower() if isinstance(obj, bool) else str(obj)
    return out


def _write_csv(rows: Sequence[dict], out) -> None:
    flat = [_flatten(r) for r in rows]
    cols: list[str] = []
    for r in flat:
        cols += [k for k in r if k not in cols]
    w = csv.DictWriter(out, fieldnames=cols, lineterminator="\n")
    w.writeheader()
    w.writerows(flat)


class Emitter:
    def __init__(self, fmt: str, out):
        self.fmt, self.out = fmt, out

    def record(self, rec: dict) -> None:
        if self.fmt == "csv":
            _write_csv([rec], self.out)
        else:
            self.out.write(json.dumps(rec) + "\n")

    def table(self, rows: Sequence[dict], wrapper: dict | None = None, key: str = "rows") -> None:
        if self.fmt == "csv":
            _write_csv(rows, self.out)
        else:
            self.out.write(json.dumps({**(wrapper or {}), key: list(rows)}) + "\n")

    def lines(self, rows: Iterable[dict]) -> None:
        if self.fmt == "csv":
            _write_csv(list(rows), self.out)
        else:
            for r in rows:
                self.out.write(json.dumps(r) + "\n")


# --- subcommands ------------------------------------------------------------


def cmd_pell(args, cfg: Config, em: Emitter) -> int:
    s = fundamental_solution(args.n)
    if args.k != 1:
        s = nth_solution(s, args.k)
    em.record(s.to_json())
    return EXIT_OK


def _raw_slope(text: str) -> tuple[int, int]:
    num, sep, den = text.partition("/")
    try:
        a, b = int(num), int(den) if sep else 1
    except ValueError:
        raise UsageError(f"--lambda expects a/b with integers, got {text!r}") from None
    if b <= 0:
        raise UsageError("--lambda denominator must be positive")
    return a, b


def cmd_semihomog(args, cfg: Config, em: Emitter) -> int:
    a, b = _raw_slope(args.lam)
    if not args.raw:
        f = Fraction(a, b)
        a, b = f.numerator, f.denominator
    v = chern_vector_raw(a, b, args.d)
    rec = {"d": args.d, "lambda": f"{a}/{b}", "u": torsion_count_u_raw(a, b, args.d), **v.to_json()}
    rec["note"] = "c1 is the coefficient of l"
    em.record(rec)
    return EXIT_OK


def _parse_pair(text: str) -> PolarizedPair:
    parts = text.split(",")
    try:
        l2, ln, n2 = (int(x) for x in parts)
    except ValueError:
        raise UsageError(f"--pair expects L2,LN,N2 integers, got {text!r}") from None
    return PolarizedPair(l2, ln, n2)


def _parse_table(text: str) -> tuple[Fraction, Fraction, Fraction]:
    try:
        lo, hi, step = (parse_rat(x) for x in text.split(":"))
    except ValueError:
        raise UsageError(f"--table expects x0:x1:step rationals, got {text!r}") from None
    if step <= 0 or hi < lo:
        raise UsageError("--table needs step > 0 and x0 <= x1")
    return lo, hi, step


def cmd_crf(args, cfg: Config, em: Emitter) -> int:
    if args.pair is None and args.d is None:
        raise UsageError("crf needs --d or --pair")
    if args.pair is not None:
        pair = _parse_pair(args.pair)
        if args.d is not None and pair.l_sq != 2 * args.d:
            raise UsageError(f"--pair has l^2 = {pair.l_sq}, but --d {args.d} needs l^2 = {2 * args.d}")
        triple, along = crf_ideal_n(pair), "n"
        echo = {"d": pair.d, "pair": list(pair.as_tuple())}
    else:
        triple, along = crf_ideal_l(args.d), "l"
        echo = {"d": args.d}
    rec: dict[str, Any] = {"command": "crf", **echo, "sheaf": "ideal of the origin", "along": along,
                           **triple.to_json()}
    rows = None
    if args.eval is not None:
        x = parse_rat(args.eval)
        rec["eval"] = {"x": rat_str(x), **{h: rat_str(crf_eval(getattr(triple, h), x)) for h in ("h0", "h1", "h2")}}
    if args.table is not None:
        lo, hi, step = _parse_table(args.table)
        rows = []
        x = max(lo, triple.h0.domain_floor.as_rational())
        while x <= hi:
            vals = {h: crf_eval(getattr(triple, h), x) for h in ("h0", "h1", "h2")}
            rows.append({"x": rat_str(x), **{h: rat_str(v) for h, v in vals.items()},
                         **{f"{h}_approx": _approx(v) for h, v in vals.items()}})
            x += step
    if em.fmt == "csv" and rows is not None:
        em.table(rows)
        return EXIT_OK
    if rows is not None:
        rec["table"] = {"note": APPROX_NOTE + " (the *_approx columns)", "rows": rows}
    bp = {f"breakpoint_{i}": b for i, b in enumerate(triple.breakpoints)}
    em.record(_with_approx(rec, **bp))
    return EXIT_OK


def cmd_beta(args, cfg: Config, em: Emitter) -> int:
    d = args.d
    p = pell_for_type(d)
    beta = beta_principal(d)
    rec: dict[str, Any] = {"command": "beta", "d": d, "beta": rat_str(beta.as_rational())}
    if isinstance(p, PerfectSquareMarker):
        rec.update(beta0=None, pell=None, family=None,
                   provenance=f"d = {p.root}^2 is a perfect square: beta = 1/sqrt(d); beta0 is not computed")
        em.record(_with_approx(rec, beta=beta))
        return EXIT_OK
    b0 = beta0_principal(d)
    fams = family_matches(d)
    rec.update(
        beta0=rat_str(b0.as_rational()),
        pell=p.to_json(),
        family=[f.to_json() for f in fams] or None,
        second_candidate=rat_str(second_candidate(d)),
        provenance="beta = 2y0/(x0-1), beta0 = 2y0/(x0+1) from the minimal solution of x^2 - 4d y^2 = 1; "
                   "second_candidate = 2y1/(x1-1) is reported only and is never the threshold",
    )
    em.record(_with_approx(rec, beta=beta, beta0=b0))
    return EXIT_OK


def cmd_beta_pair(args, cfg: Config, em: Emitter) -> int:
    pair = PolarizedPair(args.l2, args.ln, args.n2)
    t = beta_pair(pair)
    rec = {"command": "beta-pair", **t.to_json()}
    if t.beta0 is not None:
        rec["beta_inverse"] = beta_inverse(pair).to_json()
        rec["provenance"] = ("beta = s-(E, n) and beta0 = s+(F, n) for the Pell pair E, F; "
                             "valid because hypothesis_margin = x0^2 n^2 - 2 y0^2 (l.n)^2 >= 0")
    else:
        rec["provenance"] = "perfect-square type with n = l: beta = 1/sqrt(d)"
    em.record(_with_approx(rec, beta=t.beta, beta0=t.beta0))
    return EXIT_OK


def cmd_family(args, cfg: Config, em: Emitter) -> int:
    rows = []
    for d in range(2, args.dmax + 1):
        p = pell_for_type(d)
        if isinstance(p, PerfectSquareMarker):
            continue
        fams = family_matches(d)
        rows.append({
            "d": d, "x0": str(p.x), "y0": str(p.y), "beta": rat_str(beta_principal(d).as_rational()),
            "family": ";".join(f"{f.family}(m={f.m},k={f.k})" for f in fams),
        })
    # a table by nature: CSV unless JSON was asked for explicitly
    fmt = args.format or "csv"
    Emitter(fmt, em.out).table(rows, {"command": "family", "dmax": args.dmax})
    return EXIT_OK


def cmd_product(args, cfg: Config, em: Emitter) -> int:
    val = product_surface_beta(args.a, args.b)
    a, b = args.a, args.b
    regime = ("a <= b/2" if 2 * a <= b else "b/2 <= a <= b" if a <= b
              else "b <= a <= 2b" if a <= 2 * b else "2b <= a")
    rec = {"command": "product", "a": a, "b": b, "pair": list(product_pair(a, b).as_tuple()),
           "beta": rat_str(val), "regime": regime,
           "provenance": "four-regime closed form on E1 x E2 with (C1.C2) = 2"
                         + ("; cross-checked against the pair formula" if b <= 2 * a and a <= 2 * b else "")}
    em.record(_with_approx(rec, beta=val))
    return EXIT_OK


def cmd_subadd(args, cfg: Config, em: Emitter) -> int:
    rep = subadditivity_check(args.d, args.m, args.c2)
    rec = {"command": "subadd", **rep.to_json()}
    em.record(_with_approx(rec, inv_beta_n1=rep.inv_n1, inv_beta_sum=rep.inv_sum, inv_beta_n1_plus_n2=rep.inv_total))
    return EXIT_OK


def cmd_search(args, cfg: Config, em: Emitter) -> int:
    bound = args.bound if args.bound is not None else cfg.search_bound
    hits = search_irrational(args.d, bound, rational_too=args.rational_too, width=cfg.parallel_width)
    em.lines(_with_approx({**t.to_json()}, beta=t.beta, beta0=t.beta0) for _, t in hits)
    return EXIT_OK


def cmd_destab(args, cfg: Config, em: Emitter) -> int:
    p = pell_for_type(args.d)
    cands = destab_candidates(args.d)
    rows = [c.to_json() for c in cands]
    wrap = {"command": "destab", "d": args.d, "x0": str(p.x), "y0": str(p.y), "count": len(rows),
            "note": "all integer triples meeting the numerical constraints; not a completeness claim"}
    if args.decomposition:
        wrap["trivial_decomposition"] = trivial_solution_decomposition(args.d).to_json()
    em.table(rows, wrap, key="candidates")
    return EXIT_OK


def cmd_corollary(args, cfg: Config, em: Emitter) -> int:
    _, _, _, cert = realize_corollary_lattice()
    rec = {"command": "corollary17", **cert.to_json()}
    em.record(_with_approx(rec, beta=cert.result.beta, beta0=cert.result.beta0))
    return EXIT_OK


def cmd_verify(args, cfg: Config, em: Emitter) -> int:
    from .verify import run_suite

    budget = args.budget if args.budget is not None else cfg.oracle_budget
    results = run_suite(args.d_max, budget)
    rows = [r.to_json() for r in results]
    ok = all(r.passed for r in results)
    if em.fmt == "csv":
        em.table([{k: v for k, v in r.items() if k != "failures"} for r in rows])
    else:
        em.record({"command": "verify", "d_max": args.d_max, "budget": budget, "all_pass": ok, "checks": rows})
    return EXIT_OK if ok else EXIT_DOMAIN


# --- parser -----------------------------------------------------------------


def _positive(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if n < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {n}")
    return n


def _integer(text: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None


def build_parser() -> _Parser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default=argparse.SUPPRESS)
    common.add_argument("--config", metavar="PATH", default=argparse.SUPPRESS)

    ap = _Parser(prog="bftsurf", description="Exact basepoint-freeness thresholds of abelian surfaces.")
    ap.add_argument("--format", choices=("json", "csv"), default=None)
    ap.add_argument("--config", metavar="PATH", default=None)
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.required = True

    def add(name, fn, help_):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.set_defaults(func=fn)
        return p

    p = add("pell", cmd_pell, "k-th positive solution of x^2 - N y^2 = 1")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--k", type=_positive, default=1)

    p = add("semihomog", cmd_semihomog, "Chern vector of E_{lambda l} on a (1,d) surface")
    p.add_argument("--d", type=_positive, required=True)
    p.add_argument("--lambda", dest="lam", required=True, metavar="A/B")
    p.add_argument("--raw", action="store_true", help="use the pair a/b as given, without reducing")

    p = add("crf", cmd_crf, "rank-function profiles of the origin's ideal sheaf")
    p.add_argument("--d", type=_positive)
    p.add_argument("--pair", metavar="L2,LN,N2")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--eval", metavar="X")
    g.add_argument("--table", metavar="X0:X1:STEP")

    p = add("beta", cmd_beta, "beta and beta0 of a type (1,d) polarization")
    p.add_argument("--d", type=_positive, required=True)

    p = add("beta-pair", cmd_beta_pair, "beta(X, n) from (l^2, l.n, n^2)")
    p.add_argument("--l2", type=_integer, required=True)
    p.add_argument("--ln", type=_integer, required=True)
    p.add_argument("--n2", type=_integer, required=True)

    p = add("family", cmd_family, "table of d, Pell data, beta and matching closed-form families")
    p.add_argument("--dmax", type=_positive, required=True)

    p = add("product", cmd_product, "beta of a C1 + b C2 on a product of elliptic curves")
    p.add_argument("--a", type=_positive, required=True)
    p.add_argument("--b", type=_positive, required=True)

    p = add("subadd", cmd_subadd, "compare beta^-1 of m l +/- c with that of their sum")
    p.add_argument("--d", type=_positive, required=True)
    p.add_argument("--m", type=_positive, required=True)
    p.add_argument("--c2", type=_integer, required=True)

    p = add("search", cmd_search, "pairs (2d, l.n, n^2) with irrational beta, as JSON lines")
    p.add_argument("--d", type=_positive, required=True)
    p.add_argument("--bound", type=_positive)
    p.add_argument("--rational-too", action="store_true")

    p = add("destab", cmd_destab, "numerical destabilizing candidates")
    p.add_argument("--d", type=_positive, required=True)
    p.add_argument("--decomposition", action="store_true", help="also show the trivial-solution split A, B")

    add("corollary17", cmd_corollary, "the rank-2 lattice with (l^2, l.n, n^2) = (4, 12, 34)")

    p = add("verify", cmd_verify, "run the brute-force oracle suite")
    p.add_argument("--d-max", type=_positive, default=200)
    p.add_argument("--budget", type=_positive)
    return ap


def _glue_slopes(argv: Sequence[str]) -> list[str]:
    # argparse would read "--lambda -1/2" as two flags
    out, it = [], iter(argv)
    for tok in it:
        if tok == "--lambda":
            nxt = next(it, None)
            out.append(tok if nxt is None else f"--lambda={nxt}")
        else:
            out.append(tok)
    return out


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    argv = _glue_slopes(sys.argv[1:] if argv is None else argv)
    ap = build_parser()
    try:
        try:
            args = ap.parse_args(argv)
        except SystemExit as e:  # --help / --version
            return EXIT_OK if not e.code else EXIT_USAGE
        cfg = load_config(args.config)
        em = Emitter(args.format or "json", out)
        return args.func(args, cfg, em)
    except (UsageError, ConfigError) as e:
        err.write(f"{e}\n")
        return EXIT_USAGE
    except BFTError as e:
        out.write(json.dumps(e.to_json()) + "\n")
        return EXIT_DOMAIN
    except (ValueError, ZeroDivisionError, MixedRadicandError) as e:
        out.write(json.dumps({"error": type(e).__name__, "message": str(e)}) + "\n")
        return EXIT_DOMAIN


def main() -> None:
    sys.exit(run())

