"""Command-line surface: minimize, include, generate, saturation, sweep.

Exit codes are a stable contract: 0 success (and "included" for the include
command), 1 not-included, 2 usage/input errors, 3 unknown. JSON records carry
a "schema": 1 field.
"""
from __future__ import annotations

import argparse
import json
import sys
import time

from .automaton import Lasso, parse_ba, remove_dead, serialize_ba, transition_count
from .inclusion import INCLUDED, NOT_INCLUDED, InclusionConfig, check_inclusion
from .randgen import RandomSpec, saturation_probability, tabakov_vardi
from .reduce import MinimizeConfig, minimize

SCHEMA = 1


def _read_automaton(path: str):
    with open(path, encoding="utf-8") as fh:
        return parse_ba(fh.read())


def _write_text(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _witness_json(w):
    if w is None:
        return None
    if isinstance(w, Lasso):
        return {"u": list(w.stem), "v": list(w.cycle)}
    return [[p, q] for p, q in w]


def cmd_minimize(args) -> int:
    a = _read_automaton(args.input)
    cfg = MinimizeConfig(lookahead=args.lookahead, method=args.method)
    t0 = time.perf_counter()
    out, stats = minimize(a, cfg)
    stats["schema"] = SCHEMA
    stats["total_ms"] = round((time.perf_counter() - t0) * 1000.0, 3)
    _write_text(args.output, serialize_ba(out))
    if args.stats:
        _write_text(args.stats, json.dumps(stats, indent=2) + "\n")
    return 0


def cmd_include(args) -> int:
    a = _read_automaton(args.a)
    b = _read_automaton(args.b)
    cfg = InclusionConfig(
        lookahead=args.lookahead,
        max_u=args.max_u,
        max_v=args.max_v,
        stage3_budget_ms=args.timeout_ms,
    )
    v = check_inclusion(a, b, cfg)
    record = {
        "schema": SCHEMA,
        "outcome": v.outcome,
        "stage": v.stage,
        "witness": _witness_json(v.witness),
        "times_ms": v.times_ms,
        "sizes": v.sizes,
    }
    print(json.dumps(record, indent=2))
    if v.outcome == INCLUDED:
        return 0
    if v.outcome == NOT_INCLUDED:
        return 1
    return 3


def cmd_generate(args) -> int:
    spec = RandomSpec(args.states, args.alphabet, args.td, args.ad, args.seed)
    _write_text(args.output, serialize_ba(tabakov_vardi(spec)))
    return 0


def cmd_saturation(args) -> int:
    u = saturation_probability(args.states, args.alphabet, args.td)
    print(f"exact: {u.numerator}/{u.denominator}")
    print(f"decimal: {float(u):.6g}")
    return 0


def _parse_td_range(text: str) -> list[float]:
    parts = text.split(":")
    if len(parts) == 1:
        return [float(parts[0])]
    if len(parts) != 3:
        raise ValueError("td range must be FLOAT or LO:HI:STEP")
    lo, hi, step = (float(x) for x in parts)
    if step <= 0 or hi < lo:
        raise ValueError("td range needs step > 0 and HI ≥ LO")
    count = int((hi - lo) / step + 0.5) + 1
    return [round(lo + i * step, 9) for i in range(count)]


def _sweep_minimize(a, method: str, k: int):
    if method == "rd":
        return remove_dead(a)
    return minimize(a, MinimizeConfig(lookahead=k, method=method))[0]


def cmd_sweep(args) -> int:
    tds = _parse_td_range(args.td)
    rows = ["td,k,mean_states,mean_ms"]
    for td in tds:
        total_states = 0
        total_ms = 0.0
        for i in range(args.samples):
            spec = RandomSpec(args.states, args.alphabet, td, args.ad, args.seed + i)
            a = tabakov_vardi(spec)
            t0 = time.perf_counter()
            out = _sweep_minimize(a, args.method, args.lookahead)
            total_ms += (time.perf_counter() - t0) * 1000.0
            total_states += out.n
        rows.append(
            f"{td:.6g},{args.lookahead},"
            f"{total_states / args.samples:.4f},{total_ms / args.samples:.3f}"
        )
    _write_text(args.output, "\n".join(rows) + "\n")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="bamin", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("minimize", help="minimize a Büchi automaton (.ba)")
    p.add_argument("input")
    p.add_argument("-o", "--output", default=None, help="output .ba (default stdout)")
    p.add_argument("--method", choices=("heavy", "light"), default="heavy")
    p.add_argument("-k", "--lookahead", type=int, default=12)
    p.add_argument("--stats", default=None, help="write a JSON stats record here")
    p.set_defaults(fn=cmd_minimize)

    p = sub.add_parser("include", help="check L(A) ⊆ L(B)")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("-k", "--lookahead", type=int, default=12)
    p.add_argument("--max-u", type=int, default=None, help="counterexample stem bound")
    p.add_argument("--max-v", type=int, default=None, help="counterexample cycle bound")
    p.add_argument(
        "--timeout-ms",
        type=int,
        default=5000,
        help="budget for the counterexample stage only",
    )
    p.set_defaults(fn=cmd_include)

    p = sub.add_parser("generate", help="sample a Tabakov-Vardi random automaton")
    p.add_argument("--states", type=int, required=True)
    p.add_argument("--alphabet", type=int, default=2)
    p.add_argument("--td", type=float, required=True)
    p.add_argument("--ad", type=float, default=0.5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(fn=cmd_generate)

    p = sub.add_parser(
        "saturation", help="exact probability that no generated state deadlocks"
    )
    p.add_argument("--states", type=int, required=True)
    p.add_argument("--alphabet", type=int, default=2)
    p.add_argument("--td", type=float, required=True)
    p.set_defaults(fn=cmd_saturation)

    p = sub.add_parser("sweep", help="CSV of mean minimized size over a td range")
    p.add_argument("--td", required=True, help="FLOAT or LO:HI:STEP (inclusive)")
    p.add_argument("--states", type=int, default=50)
    p.add_argument("--alphabet", type=int, default=2)
    p.add_argument("--ad", type=float, default=0.5)
    p.add_argument("--samples", type=int, default=30)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-k", "--lookahead", type=int, default=12)
    p.add_argument("--method", choices=("heavy", "light", "rd"), default="heavy")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(fn=cmd_sweep)
    return ap


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
