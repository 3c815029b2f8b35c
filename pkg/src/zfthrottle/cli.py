"""Command-line interface.

Exit codes: 0 success, 1 a verify suite failed, 2 bad input, 3 a size guard
was hit.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys

from . import charlib, propagation, suites, throttling
from .graph import Graph, GuardError, cartesian_product_complete_path, generate, parse_graph6, write_graph6
from .rules import RuleId

EXIT_OK, EXIT_SUITE, EXIT_USAGE, EXIT_GUARD = 0, 1, 2, 3

_FAMILIES = {"P": "path", "C": "cycle", "K": "complete", "S": "star", "W": "wheel", "E": "empty"}


class UsageError(Exception):
    pass


def read_graph(source: str, stdin=None) -> Graph:
    """Parse a graph source: ``-`` (stdin), a file, a generator spec such as
    ``P9``, ``C16``, ``K5``, ``S6``, ``W7``, ``E3``, ``KxP:a,b``, or graph6."""
    text = source.strip()
    if text == "-":
        text = _first_line((stdin or sys.stdin).read())
    elif os.path.isfile(text):
        with open(text) as fh:
            text = _first_line(fh.read())
    m = re.fullmatch(r"KxP:(\d+),(\d+)", text)
    if m:
        return cartesian_product_complete_path(int(m[1]), int(m[2]))
    m = re.fullmatch(r"([PCKSWE])(\d+)", text)
    if m:
        return generate(_FAMILIES[m[1]], int(m[2]))
    return parse_graph6(text)


def _first_line(text: str) -> str:
    for line in text.splitlines():
        if line.strip():
            return line.strip()
    raise UsageError("no graph on input")


def _vertex_list(text: str | None, n: int) -> list[int]:
    if text is None or text.strip() == "":
        return []
    try:
        vs = [int(x) for x in text.replace(" ", "").split(",") if x != ""]
    except ValueError:
        raise UsageError(f"bad vertex list {text!r}") from None
    if any(not 0 <= v < n for v in vs):
        raise UsageError(f"vertex out of range in {text!r}")
    return vs


def _forces(text: str | None):
    if text is None:
        return None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"--forces is not JSON: {exc}") from None
    if isinstance(data, dict):
        data = data.get("forces", [])
    return data


def _pt_json(pt: float):
    return "inf" if pt == propagation.INF else int(pt)


def _guard(args, default: int) -> int:
    if args.max_n is None:
        return default
    if args.max_n > default and not args.accept_slow:
        raise GuardError(f"--max-n {args.max_n} exceeds the default guard {default}; add --accept-slow to confirm")
    return args.max_n


# verbs ---------------------------------------------------------------------

def cmd_pt(args) -> tuple[int, object]:
    g = read_graph(args.graph)
    blue = _vertex_list(args.blue, g.n)
    forces = _forces(args.forces)
    if forces is not None:
        sched = propagation.propagate_force_set(args.rule, g, blue, forces)
    else:
        limit = _guard(args, propagation.FLOOR_SEARCH_MAX_N)
        sched = propagation.pt_of_set(args.rule, g, blue, max_n=limit)
    out = {"rule": args.rule.value, "graph6": write_graph6(g), "blue": sorted(blue), **sched.to_json()}
    return EXIT_OK, out


def cmd_throttle(args) -> tuple[int, object]:
    g = read_graph(args.graph)
    default = throttling.MAX_N_FLOOR if args.rule.is_floor else throttling.MAX_N_BASE
    res = throttling.throttling_number(args.rule, g, max_n=_guard(args, default))
    return EXIT_OK, {"rule": args.rule.value, "graph6": write_graph6(g), **res.to_json()}


def cmd_forcing_number(args) -> tuple[int, object]:
    g = read_graph(args.graph)
    res = propagation.forcing_number(args.rule, g)
    return EXIT_OK, {
        "rule": args.rule.value,
        "graph6": write_graph6(g),
        "number": res.number,
        "pt": _pt_json(res.pt),
        "blue": sorted(res.witness),
        "schedule": res.schedule.to_json(),
    }


def cmd_extend(args) -> tuple[int, object]:
    g = read_graph(args.graph)
    blue = _vertex_list(args.blue, g.n)
    forces = _forces(args.forces)
    if forces is None:
        sched = propagation.pt_of_set(RuleId.Z, g, blue)
        if sched.pt == propagation.INF:
            raise UsageError("blue set is not a zero forcing set")
        forces = sched.forces
    return EXIT_OK, charlib.build_extension(g, blue, forces).to_json()


def cmd_catalog(args) -> tuple[int, object]:
    if args.rule not in (RuleId.Z, RuleId.FLOOR_Z):
        raise UsageError("catalogues exist for --rule Z and --rule floorZ")
    if args.t is None:
        raise UsageError("catalog needs --t")
    return EXIT_OK, charlib.catalog(args.rule, args.t, exact=args.exact)


def cmd_char_test(args) -> tuple[int, object]:
    g = read_graph(args.graph)
    if args.t is None:
        raise UsageError("char-test needs --t")
    if args.rule is RuleId.FLOOR_Z:
        ok, w = charlib.obtainable_floor(g, args.t)
    elif args.rule is RuleId.Z:
        ok, w = charlib.obtainable_standard(g, args.t)
    else:
        raise UsageError("char-test supports --rule Z and --rule floorZ")
    return EXIT_OK, {
        "rule": args.rule.value,
        "graph6": write_graph6(g),
        "t": args.t,
        "obtainable": ok,
        "witness": w.to_json() if w else None,
    }


def cmd_verify(args) -> tuple[int, object]:
    try:
        results = suites.run_suite(args.suite)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None
    code = EXIT_OK if all(r.passed for r in results) else EXIT_SUITE
    return code, results


# output --------------------------------------------------------------------------

def _emit(verb: str, payload, fmt: str, out) -> None:
    if verb == "verify":
        if fmt == "json":
            print(json.dumps([r.to_json() for r in payload], indent=2), file=out)
        else:
            for r in payload:
                print(r.line(), file=out)
        return
    if verb == "catalog":
        if fmt == "json":
            print(json.dumps(payload), file=out)
        elif fmt == "csv":
            print("order,graph6", file=out)
            for s in payload:
                print(f"{ord(s[0]) - 63},{s}", file=out)
        else:
            for s in payload:
                print(s, file=out)
        return
    if fmt == "json":
        print(json.dumps(payload, indent=2), file=out)
    else:
        for key, value in payload.items():
            if not isinstance(value, (dict, list)):
                print(f"{key}: {value}", file=out)
            else:
                print(f"{key}: {json.dumps(value)}", file=out)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="zfthrottle", description="Zero forcing propagation and throttling.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--rule", type=_rule, default=RuleId.Z, help="Z, Z+, Zl, floorZ, floorZ+ or floorZl (default Z)")
    common.add_argument("--format", choices=("json", "csv", "text"), default="json")
    common.add_argument("--max-n", type=int, default=None, help="override the order guard")
    common.add_argument("--accept-slow", action="store_true", help="acknowledge a raised --max-n")
    common.add_argument("--seed", type=int, default=None, help="reserved; every algorithm is deterministic")
    sub = p.add_subparsers(dest="verb", required=True)

    s = sub.add_parser("pt", parents=[common], help="propagation time of a blue set")
    s.add_argument("graph")
    s.add_argument("--blue", default="", help="comma separated vertices")
    s.add_argument("--forces", help='JSON list of {"src","dst","kind"}; replays that set of forces')
    s.set_defaults(func=cmd_pt)

    s = sub.add_parser("throttle", parents=[common], help="throttling number with witness")
    s.add_argument("graph")
    s.set_defaults(func=cmd_throttle)

    s = sub.add_parser("forcing-number", parents=[common], help="forcing number and propagation time")
    s.add_argument("graph")
    s.set_defaults(func=cmd_forcing_number)

    s = sub.add_parser("extend", parents=[common], help="extension of a standard forcing process")
    s.add_argument("graph")
    s.add_argument("--blue", required=True)
    s.add_argument("--forces", help="JSON list of forces (default: an optimal set)")
    s.set_defaults(func=cmd_extend)

    s = sub.add_parser("catalog", parents=[common], help="graphs with throttling number at most t")
    s.add_argument("--t", type=int)
    s.add_argument("--exact", action="store_true", help="only throttling number exactly t")
    s.set_defaults(func=cmd_catalog)

    s = sub.add_parser("char-test", parents=[common], help="product-minor characterisation test")
    s.add_argument("graph")
    s.add_argument("--t", type=int)
    s.set_defaults(func=cmd_char_test)

    s = sub.add_parser("verify", parents=[common], help="run a verification suite")
    s.add_argument("suite", help="suite name or 'all'")
    s.set_defaults(func=cmd_verify)
    return p


def _rule(text: str) -> RuleId:
    try:
        return RuleId.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def main(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.format == "csv" and args.verb != "catalog":
        print("zfthrottle: csv output is only available for catalog", file=sys.stderr)
        return EXIT_USAGE
    try:
        code, payload = args.func(args)
    except GuardError as exc:
        print(f"zfthrottle: guard exceeded: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (UsageError, ValueError) as exc:
        print(f"zfthrottle: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _emit(args.verb, payload, args.format, out)
    return code
