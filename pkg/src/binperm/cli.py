"""Command line entry point: ``binperm <command> [options]``.

Output is JSON lines on stdout (or ``--out``); ``--table`` prints a
plain-text summary instead.  Exit status is nonzero when a check fails.
"""

from __future__ import annotations

import argparse
import json
import sys
from contextlib import contextmanager
from math import gcd
from typing import Iterable, Optional

from binperm.circle import is_perm_on, unit_circle
from binperm.equiv import are_equivalent, sec3_lh_match, sec3_wydm_match
from binperm.errors import BinpermError, ParameterError
from binperm.framework import (
    TrinomialParams,
    WydmParams,
    criterion_lemma1,
    factor_as_wrapped,
    lemma3_check,
    lemma4_check,
    lh_generate,
    rewrite_lemma2,
    thm1_generate,
    wydm_generate,
)
from binperm.gf import ctx_from_json, ctx_new
from binperm.oracle import brute_force_is_permutation
from binperm.poly import SparsePoly
from binperm.sweep import CHECKS, SweepConfig, run_sweep


def parse_range(text: Optional[str]) -> Optional[list[int]]:
    """'3' -> [3], '2-4' -> [2, 3, 4], '1,3,5' -> [1, 3, 5]; empty '2-1' -> []."""
    if text is None:
        return None
    out: list[int] = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if "-" in part[1:]:
            lo, hi = part.split("-", 1)
            out.extend(range(int(lo), int(hi) + 1))
        else:
            out.append(int(part))
    return out


@contextmanager
def _sink(path: Optional[str]):
    if path is None:
        yield sys.stdout
    else:
        with open(path, "w") as fh:
            yield fh


def _emit(records: Iterable[dict], out) -> None:
    for rec in records:
        out.write(json.dumps(rec, sort_keys=True) + "\n")


def _table(rows: list[dict], cols: list[str], out) -> None:
    widths = [max(len(c), *(len(str(r.get(c, ""))) for r in rows)) if rows else len(c) for c in cols]
    out.write("  ".join(c.ljust(w) for c, w in zip(cols, widths)) + "\n")
    for r in rows:
        out.write("  ".join(str(r.get(c, "")).ljust(w) for c, w in zip(cols, widths)) + "\n")


def _load_poly(path: str):
    with open(path) as fh:
        data = json.load(fh)
    return ctx_from_json(data), SparsePoly.from_json(data)


def _single(values: Optional[list[int]], name: str) -> int:
    if not values or len(values) != 1:
        raise ParameterError(f"--{name} takes a single value here")
    return values[0]


# -- commands ----------------------------------------------------------------


def cmd_gen_thm1(args) -> int:
    ks = parse_range(args.k) or []
    rows = []
    for k in ks:
        u_max = (1 << k) if args.u_max is None else args.u_max
        u_vals = [args.u] if args.u is not None else range(u_max + 1)
        for ell in parse_range(args.ell) or range(1, 2 * k + 2):
            for m in parse_range(args.m) or range(1, 2 * k + 2):
                if ell == m:
                    continue
                for u in u_vals:
                    inst = thm1_generate(TrinomialParams(k, ell, m, u))
                    rows.append({
                        "params": inst.params.to_json(),
                        "exponents": list(inst.exponents),
                        "poly": inst.poly.to_json(k) if inst.poly else None,
                        "accepted": inst.accepted,
                        "degenerate": inst.degenerate,
                    })
    with _sink(args.out) as out:
        if args.table:
            for r in rows:
                r["d"] = r["exponents"]
                r.update(r["params"])
            _table(rows, ["k", "ell", "m", "u", "d", "accepted", "degenerate"], out)
        else:
            _emit(rows, out)
    return 0


def cmd_gen_wydm(args) -> int:
    k = _single(parse_range(args.k), "k")
    wp = WydmParams(k, args.s, args.t, args.r)
    f = wydm_generate(wp)
    ctx = ctx_new(k)
    rec = {"params": wp.to_json(), "poly": f.to_json(k), "predicted": wp.predicts_permutation,
           "brute_force_ok": brute_force_is_permutation(ctx, f)}
    with _sink(args.out) as out:
        _emit([rec], out)
    return 0


def cmd_gen_lh(args) -> int:
    k = _single(parse_range(args.k), "k")
    lp, f = lh_generate(k, args.n)
    rec = {"params": lp.to_json(), "poly": f.to_json(k),
           "brute_force_ok": brute_force_is_permutation(ctx_new(k), f)}
    with _sink(args.out) as out:
        _emit([rec], out)
    return 0


def cmd_verify(args) -> int:
    ctx, f = _load_poly(args.poly)
    bf = brute_force_is_permutation(ctx, f)
    try:
        w = factor_as_wrapped(ctx, f)
        crit = criterion_lemma1(ctx, w)
        wrapped = {"r": w.r, "A": w.A.to_json(ctx.k)}
    except BinpermError as exc:
        crit, wrapped = None, {"error": str(exc)}
    agree = crit is None or crit == bf
    with _sink(args.out) as out:
        _emit([{"brute_force": bf, "criterion": crit, "wrapped": wrapped, "agree": agree}], out)
    return 0 if agree else 1


def cmd_reduce(args) -> int:
    ctx, f = _load_poly(args.poly)
    w = factor_as_wrapped(ctx, f, anchor=args.anchor)
    g = rewrite_lemma2(ctx, w)
    rec = {"r": w.r, "s": w.r % (ctx.q + 1), "A": w.A.to_json(ctx.k), "g": g.to_json(ctx.k),
           "gcd_r_q_minus_1": gcd(w.r, ctx.q - 1),
           "g_permutes_circle": is_perm_on(ctx, g, unit_circle(ctx))}
    with _sink(args.out) as out:
        _emit([rec], out)
    return 0


def cmd_equiv(args) -> int:
    ctx, f = _load_poly(args.f)
    ctx2, g = _load_poly(args.g)
    if ctx2 is not ctx:
        raise ParameterError("polynomials live in different fields")
    w = are_equivalent(ctx, f, g)
    with _sink(args.out) as out:
        _emit([{"witness": w.to_json() if w else None}], out)
    return 0


def cmd_lemma_check(args) -> int:
    rows = []
    for k in parse_range(args.k) or []:
        ctx = ctx_new(k, args.omega_alt)
        if args.which == "lemma3":
            rows.append({"lemma": "lemma3", "k": k, "ok": lemma3_check(ctx)})
            continue
        for ell in parse_range(args.ell) or range(1, 6):
            for m in parse_range(args.m) or range(1, 6):
                if ell != m:
                    rows.append({"lemma": "lemma4", "k": k, "ell": ell, "m": m,
                                 "ok": lemma4_check(ctx, ell, m)})
    with _sink(args.out) as out:
        if args.table:
            _table(rows, ["lemma", "k", "ell", "m", "ok"], out)
        else:
            _emit(rows, out)
    return 0 if all(r["ok"] for r in rows) else 1


def cmd_survey_sec3(args) -> int:
    rows = []
    for k in parse_range(args.k) or []:
        ctx = ctx_new(k)
        u_max = (1 << k) if args.u_max is None else args.u_max
        for ell in parse_range(args.ell) or range(1, 2 * k + 2):
            for m in parse_range(args.m) or range(1, 2 * k + 2):
                if ell == m:
                    continue
                for u in range(u_max + 1):
                    tp = TrinomialParams(k, ell, m, u)
                    if not thm1_generate(tp).accepted:
                        continue
                    rows.append(sec3_lh_match(ctx, tp).to_json())
                    if (ell - m) % 2:
                        rows.append(sec3_wydm_match(ctx, tp).to_json())
    with _sink(args.out) as out:
        if args.table:
            flat = [{**r["params"], "case": r["case"], "verified": r["verified"], "lift_i": r["lift_i"],
                     "n": (r["witness"] or {}).get("n")} for r in rows]
            _table(flat, ["k", "ell", "m", "u", "case", "n", "lift_i", "verified"], out)
        else:
            _emit(rows, out)
    return 0 if all(r["verified"] for r in rows) else 1


def cmd_sweep(args) -> int:
    cfg = SweepConfig(
        k=parse_range(args.k) or [],
        ell=parse_range(args.ell),
        m=parse_range(args.m),
        u_max=args.u_max,
        checks=[c for c in args.checks.split(",") if c],
        omega_alt=args.omega_alt,
    )
    result = run_sweep(cfg)
    with _sink(args.out) as out:
        if args.table:
            rep = result.report.to_json()
            _table([{"field": k, "value": v} for k, v in rep.items()], ["field", "value"], out)
        else:
            _emit(result.records, out)
            _emit([{"check": "report", **result.report.to_json()}], out)
    return 0 if result.report.ok else 1


# -- argument parsing ----------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="binperm", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, ranges=True):
        p.add_argument("--k", default="2", help="k value or range, e.g. 2-4")
        if ranges:
            p.add_argument("--ell", help="ell range (default 1..2k+1)")
            p.add_argument("--m", help="m range (default 1..2k+1)")
            p.add_argument("--u-max", type=int, dest="u_max", help="largest u (default q)")
        p.add_argument("--out", help="write output to this path")
        p.add_argument("--table", action="store_true", help="human-readable table")
        p.add_argument("--omega-alt", action="store_true", dest="omega_alt",
                       help="use omega^2 instead of the canonical g^((q^2-1)/3)")
        p.add_argument("--seed", type=int, default=0, help="seed for randomized checks only")

    p = sub.add_parser("gen-thm1", help="generate X^d1 + X^d2 + X^d3 instances")
    common(p)
    p.add_argument("--u", type=int, help="single u value")
    p.set_defaults(func=cmd_gen_thm1)

    p = sub.add_parser("gen-wydm", help="X^r (X^{(S+T)(q-1)} + X^{T(q-1)} + 1)")
    common(p, ranges=False)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.set_defaults(func=cmd_gen_wydm)

    p = sub.add_parser("gen-lh", help="X + X^{1+r(q-1)} + X^{1+s(q-1)}")
    common(p, ranges=False)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_gen_lh)

    p = sub.add_parser("verify", help="criterion vs brute force for a polynomial JSON file")
    common(p, ranges=False)
    p.add_argument("poly")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("reduce", help="rewrite X^r A(X^{q-1}) as a rational function on mu_{q+1}")
    common(p, ranges=False)
    p.add_argument("poly")
    p.add_argument("--anchor", type=int, help="exponent of f to use as r")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("equiv", help="search a multiplicative-equivalence witness")
    common(p, ranges=False)
    p.add_argument("f")
    p.add_argument("g")
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser("lemma-check", help="degree-one map checks")
    common(p)
    p.add_argument("which", choices=["lemma3", "lemma4"])
    p.set_defaults(func=cmd_lemma_check)

    p = sub.add_parser("survey-sec3", help="match trinomials with the two earlier families")
    common(p)
    p.set_defaults(func=cmd_survey_sec3)

    p = sub.add_parser("sweep", help="deterministic sweep with a summary report")
    common(p)
    p.add_argument("--checks", default="thm1", help=f"comma list from {','.join(CHECKS)}")
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except BinpermError as exc:
        print(f"binperm: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
