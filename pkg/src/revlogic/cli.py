"""Command-line front end.

Exit codes: 0 ok, 1 usage error, 2 parse/semantic error,
3 verification mismatch, 4 bounds exceeded.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .circuit import circuit_permutation, evaluate, metrics, truth_table
from .designs import bind_alu, builtin, builtin_names, builtin_verification, verify_against_spec
from .errors import (
    BoundsTooLarge,
    CircuitError,
    MissingInput,
    NetlistSemanticError,
    NetlistSyntaxError,
    NonClassicalGate,
    SpecError,
    TooWide,
    UnknownCost,
    UnknownDesign,
    UnknownInput,
    UnknownMode,
)
from .gates import METRICS
from .netlist import parse_netlist, print_netlist
from .perm import gap_export, to_cycles
from .synth import spec_from_json, synth_exhaustive

FORMAT_VERSION = 1

EXIT_OK, EXIT_USAGE, EXIT_PARSE, EXIT_MISMATCH, EXIT_BOUNDS = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _dump(doc: dict) -> str:
    return json.dumps({"format_version": FORMAT_VERSION, **doc}, sort_keys=True) + "\n"


def _load(args):
    if getattr(args, "design", None):
        return builtin(args.design)
    path = args.netlist
    if path == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read {path}: {exc}") from None
    return parse_netlist(text)


def _cmd_builtin(args, out):
    out.write(print_netlist(builtin(args.name)))
    return EXIT_OK


def _cmd_table(args, out):
    c = _load(args)
    tt = truth_table(c, include_constants=args.constants, include_garbage=args.garbage)
    if args.format == "csv":
        out.write(tt.to_csv())
    elif args.format == "json":
        out.write(_dump(tt.as_dict()))
    else:
        out.write(tt.to_text())
    return EXIT_OK


def _parse_assignments(items):
    values = {}
    for item in items or ():
        name, sep, val = item.partition("=")
        if not sep or val not in ("0", "1") or not name:
            raise UsageError(f"--set expects NAME=0|1, got {item!r}")
        values[name] = int(val)
    return values


def _cmd_eval(args, out):
    c = _load(args)
    ev = evaluate(c, _parse_assignments(args.set))
    if args.format == "json":
        out.write(_dump({"outputs": ev.outputs,
                         "garbage": {str(k): v for k, v in sorted(ev.garbage.items())}}))
    elif args.format == "csv":
        names = list(ev.outputs)
        out.write(",".join(names) + "\n" + ",".join(str(ev.outputs[n]) for n in names) + "\n")
    else:
        for name, v in ev.outputs.items():
            out.write(f"{name}={v}\n")
        for ln, v in sorted(ev.garbage.items()):
            out.write(f"garbage[{ln}]={v}\n")
    return EXIT_OK


def _cmd_metrics(args, out):
    m = metrics(_load(args), args.metric)
    if args.format == "json":
        out.write(_dump(m.as_dict()))
    elif args.format == "csv":
        d = m.as_dict()
        out.write(",".join(d) + "\n" + ",".join(str(v) for v in d.values()) + "\n")
    else:
        out.write(str(m) + "\n")
    return EXIT_OK


def _cmd_verify(args, out):
    if args.design:
        report = builtin_verification(args.design, args.mode)
    else:
        if not args.mode:
            raise UsageError("verifying a netlist file needs --mode")
        report = verify_against_spec(_load(args), args.mode)
    if args.format == "json":
        out.write(_dump({
            "design": report.design,
            "ok": report.ok,
            "rows_checked": report.rows_checked,
            "outputs": list(report.outputs_checked),
            "mismatches": [{"inputs": row, "output": o, "expected": e, "actual": a}
                           for row, o, e, a in report.mismatches],
        }))
    else:
        out.write(report.summary() + "\n")
        for row, o, e, a in report.mismatches:
            ins = " ".join(f"{k}={v}" for k, v in row.items())
            out.write(f"  {ins}: {o} expected {e} got {a}\n")
    return EXIT_OK if report.ok else EXIT_MISMATCH


def _cmd_synth(args, out):
    try:
        with open(args.spec, encoding="utf-8") as fh:
            spec = spec_from_json(fh.read())
    except OSError as exc:
        raise UsageError(f"cannot read {args.spec}: {exc}") from None
    result = synth_exhaustive(spec, prune=not args.no_prune)
    if args.format == "json":
        out.write(_dump(result.as_dict()))
    else:
        out.write(f"status={result.status}\n")
        if result.proven_min_cost is not None:
            out.write(f"min_cost={result.proven_min_cost} gates={result.gate_count} "
                      f"(within max_gates={spec.max_gates}, max_cost={spec.max_cost})\n")
        for i, c in enumerate(result.circuits, 1):
            body = " ; ".join(str(g) for g in c.gates) or "(empty)"
            out.write(f"solution {i}: {body}\n")
    return EXIT_OK


def _cmd_export(args, out):
    c = _load(args)
    if args.mode:
        c = bind_alu(c, args.mode)
    if args.format == "gap":
        out.write(gap_export(circuit_permutation(c)) + "\n")
    elif args.format == "cycles":
        out.write(to_cycles(circuit_permutation(c)) + "\n")
    else:
        out.write(print_netlist(c))
    return EXIT_OK


def _add_target(p):
    p.add_argument("netlist", nargs="?", default="-", help="netlist file ('-' for stdin)")
    p.add_argument("--design", help="use a built-in design instead of a netlist")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="revlogic", description="Reversible adder/subtractor toolkit.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    p = sub.add_parser("builtin", help="print the netlist of a built-in design")
    p.add_argument("name", help="one of: " + ", ".join(builtin_names()))
    p.set_defaults(func=_cmd_builtin)

    p = sub.add_parser("table", help="print the truth table")
    _add_target(p)
    p.add_argument("--format", choices=("csv", "text", "json"), default="csv")
    p.add_argument("--constants", action="store_true", help="show constant input columns")
    p.add_argument("--garbage", action="store_true", help="show garbage output columns")
    p.set_defaults(func=_cmd_table)

    p = sub.add_parser("eval", help="evaluate one input assignment")
    _add_target(p)
    p.add_argument("--set", action="append", metavar="NAME=BIT")
    p.add_argument("--format", choices=("text", "csv", "json"), default="text")
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("metrics", help="gate count, cost, constants, garbage, delay")
    _add_target(p)
    p.add_argument("--metric", choices=METRICS, default="cost015")
    p.add_argument("--format", choices=("text", "csv", "json"), default="text")
    p.set_defaults(func=_cmd_metrics)

    p = sub.add_parser("verify", help="check a design against its reference formulas")
    _add_target(p)
    p.add_argument("--mode", help="ALU mode: add, sub, and, xor, xnor, not")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("synth", help="exhaustive minimum-cost synthesis")
    p.add_argument("--spec", required=True, help="synthesis spec JSON file")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--no-prune", action="store_true", help="plain enumeration (slow)")
    p.set_defaults(func=_cmd_synth)

    p = sub.add_parser("export", help="export the circuit permutation")
    _add_target(p)
    p.add_argument("--format", choices=("gap", "cycles", "netlist"), default="gap")
    p.add_argument("--mode", help="bind a 4-line cell to an ALU mode first")
    p.set_defaults(func=_cmd_export)
    return parser


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except (UsageError, UnknownDesign, UnknownMode, MissingInput, UnknownInput) as exc:
        code, msg = EXIT_USAGE, str(exc)
    except (TooWide, BoundsTooLarge) as exc:
        code, msg = EXIT_BOUNDS, str(exc)
    except (NetlistSyntaxError, NetlistSemanticError, SpecError, NonClassicalGate,
            UnknownCost, CircuitError) as exc:
        code, msg = EXIT_PARSE, str(exc)
    err.write(f"revlogic: {msg}\n")
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
