"""Line-oriented netlist text format.

::

    # half adder/subtractor
    circuit half-addsub
    lines 3
    input 1 X
    input 2 Y
    const 3 1
    gate R3_231 1 2 3
    output 1 S/D
    output 2 B_out
    output 3 C_out

Lines without an ``input``/``const`` directive default to input ``x<line>``;
lines without ``output``/``garbage`` default to output ``y<line>``.
"""
from __future__ import annotations

import re

from .circuit import (
    Circuit,
    Constant,
    GateInstance,
    Garbage,
    LineRole,
    NamedInput,
    NamedOutput,
)
from .errors import CircuitError, GateError, NetlistSemanticError, NetlistSyntaxError
from .gates import parse_mnemonic

__all__ = ["parse_netlist", "print_netlist"]

_NAME_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_/.'-]*$")

# directive -> number of arguments (None: at least one)
_ARITY = {
    "circuit": 1,
    "lines": 1,
    "input": 2,
    "const": 2,
    "gate": None,
    "output": 2,
    "garbage": 1,
}


def _tokens(raw: str):
    """(column, token) pairs with comments removed; columns are 1-based."""
    text = raw.split("#", 1)[0]
    return [(m.start() + 1, m.group()) for m in re.finditer(r"\S+", text)]


def _int(tok, lineno, col):
    if not tok.isdigit():
        raise NetlistSyntaxError(f"expected a non-negative integer, got {tok!r}", lineno, col)
    return int(tok)


def parse_netlist(text: str) -> Circuit:
    name = ""
    seen_name = False
    width = None
    inputs: dict = {}
    outputs: dict = {}
    gates = []

    def line_index(tok, lineno, col):
        ln = _int(tok, lineno, col)
        if width is None:
            raise NetlistSemanticError("'lines' must come before line references", lineno)
        if ln < 1 or ln > width:
            raise NetlistSemanticError(f"line {ln} outside 1..{width}", lineno)
        return ln

    for lineno, raw in enumerate(text.splitlines(), 1):
        toks = _tokens(raw)
        if not toks:
            continue
        col, head = toks[0]
        args = toks[1:]
        if head not in _ARITY:
            raise NetlistSyntaxError(f"unknown directive {head!r}", lineno, col)
        want = _ARITY[head]
        if want is None:
            if len(args) < 2:
                raise NetlistSyntaxError("gate needs a mnemonic and at least one line", lineno, col)
        elif len(args) != want:
            raise NetlistSyntaxError(f"{head} takes {want} argument(s), got {len(args)}", lineno, col)

        if head == "circuit":
            if seen_name:
                raise NetlistSemanticError("duplicate 'circuit' directive", lineno)
            seen_name = True
            name = args[0][1]
        elif head == "lines":
            if width is not None:
                raise NetlistSemanticError("duplicate 'lines' directive", lineno)
            width = _int(args[0][1], lineno, args[0][0])
            if width < 1:
                raise NetlistSemanticError("a circuit needs at least one line", lineno)
        elif head in ("input", "const"):
            ln = line_index(args[0][1], lineno, args[0][0])
            if ln in inputs:
                raise NetlistSemanticError(f"line {ln} already has an input role", lineno)
            c2, val = args[1]
            if head == "input":
                if not _NAME_RE.match(val):
                    raise NetlistSyntaxError(f"bad input name {val!r}", lineno, c2)
                inputs[ln] = NamedInput(val)
            else:
                if val not in ("0", "1"):
                    raise NetlistSyntaxError(f"constant must be 0 or 1, got {val!r}", lineno, c2)
                inputs[ln] = Constant(int(val))
        elif head in ("output", "garbage"):
            ln = line_index(args[0][1], lineno, args[0][0])
            if ln in outputs:
                raise NetlistSemanticError(f"line {ln} already has an output role", lineno)
            if head == "output":
                c2, val = args[1]
                if not _NAME_RE.match(val):
                    raise NetlistSyntaxError(f"bad output name {val!r}", lineno, c2)
                if any(isinstance(o, NamedOutput) and o.name == val for o in outputs.values()):
                    raise NetlistSemanticError(f"duplicate output name {val!r}", lineno)
                outputs[ln] = NamedOutput(val)
            else:
                outputs[ln] = Garbage()
        else:  # gate
            if width is None:
                raise NetlistSemanticError("'lines' must come before gates", lineno)
            _, mn = args[0]
            try:
                kind = parse_mnemonic(mn)
            except GateError as exc:
                raise NetlistSemanticError(str(exc), lineno) from None
            lines = tuple(line_index(t, lineno, c) for c, t in args[1:])
            if len(lines) != kind.arity:
                raise NetlistSemanticError(
                    f"{mn} acts on {kind.arity} line(s), got {len(lines)}", lineno)
            if len(set(lines)) != len(lines):
                raise NetlistSemanticError(f"{mn} placed on repeated lines {lines}", lineno)
            gates.append(GateInstance(kind, lines))

    if width is None:
        raise NetlistSemanticError("missing 'lines' directive")
    roles = tuple(
        LineRole(inputs.get(i, NamedInput(f"x{i}")), outputs.get(i, NamedOutput(f"y{i}")))
        for i in range(1, width + 1)
    )
    try:
        return Circuit(name, width, roles, tuple(gates))
    except CircuitError as exc:
        raise NetlistSemanticError(str(exc)) from None


def print_netlist(c: Circuit) -> str:
    """Canonical text: every role spelled out, gates in circuit order."""
    out = []
    if c.name:
        out.append(f"circuit {c.name}")
    out.append(f"lines {c.width}")
    for i, r in enumerate(c.roles, 1):
        if isinstance(r.input_role, Constant):
            out.append(f"const {i} {r.input_role.value}")
        else:
            out.append(f"input {i} {r.input_role.name}")
    for gi in c.gates:
        out.append(f"gate {gi}")
    for i, r in enumerate(c.roles, 1):
        if isinstance(r.output_role, Garbage):
            out.append(f"garbage {i}")
        else:
            out.append(f"output {i} {r.output_role.name}")
    return "\n".join(out) + "\n"
