"""Builders and verifiers for the R3-based adder/subtractor family.

The half adder/subtractor is a single ``R3_231`` gate; the full
adder/subtractor is ``R3_123`` on lines 1-3 followed by ``R3_312`` on
lines 2-4. The 4-line cell doubles as a 1-bit ALU whose operation is
selected purely by what is fed into its lines.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Callable, Mapping

from .circuit import (
    Circuit,
    Constant,
    Garbage,
    GateInstance,
    LineRole,
    NamedInput,
    NamedOutput,
    evaluate_batch,
    pattern_word,
)
from .errors import CircuitError, TooWide, UnknownDesign, UnknownMode
from .gates import GateKind

__all__ = [
    "ArithSpec", "AluMode", "ALU_MODES", "HALF_CONFIGS",
    "build_half_addsub", "build_half_logic", "build_full_addsub", "bind_alu",
    "build_ripple", "ripple_run", "VerificationReport", "verify_outputs",
    "verify_against_spec", "half_expectations", "ripple_expectations",
    "builtin", "builtin_names", "builtin_verification",
]

R3_231 = GateKind("R3", (2, 3, 1))
R3_123 = GateKind("R3", (1, 2, 3))
R3_312 = GateKind("R3", (3, 1, 2))


def _role(inp, out) -> LineRole:
    i = Constant(inp) if isinstance(inp, int) else NamedInput(inp)
    o = Garbage() if out is None else NamedOutput(out)
    return LineRole(i, o)


class ArithSpec:
    """Reference formulas for one full adder/subtractor bit."""

    @staticmethod
    def sum(x, y, z):
        return x ^ y ^ z

    @staticmethod
    def carry(x, y, z):
        return (x & y) ^ (x & z) ^ (y & z)

    @staticmethod
    def difference(x, y, z):
        return x ^ y ^ z

    @staticmethod
    def borrow(x, y, z):
        return ((1 - x) & (y ^ z)) ^ (y & z)


# ---------------------------------------------------------------- half designs

def build_half_addsub() -> Circuit:
    roles = (_role("X", "S/D"), _role("Y", "B_out"), _role(1, "C_out"))
    return Circuit("half-addsub", 3, roles, (GateInstance(R3_231, (1, 2, 3)),))


# config -> ((input line 1, 2, 3), (output line 1, 2, 3)); None output = garbage
HALF_CONFIGS = {
    "AND_XOR": (("X", "Y", 1), ("XOR", None, "AND")),
    "NAND_XOR": (("X", "Y", 0), ("XOR", None, "NAND")),
    "NOT_COPY": (("X", 1, 1), ("NOT", None, "COPY")),
    "XNOR": ((1, "X", "Y"), ("NOT_X", "NOT_Y", "XNOR")),
}


def build_half_logic(config: str) -> Circuit:
    key = config.upper().replace("-", "_")
    if key not in HALF_CONFIGS:
        raise UnknownMode(f"unknown half-logic config {config!r}; "
                          f"choose from {', '.join(HALF_CONFIGS)}")
    ins, outs = HALF_CONFIGS[key]
    roles = tuple(_role(i, o) for i, o in zip(ins, outs))
    name = "half-" + key.lower().replace("_", "-")
    return Circuit(name, 3, roles, (GateInstance(R3_231, (1, 2, 3)),))


def half_expectations(config: str | None = None) -> dict:
    """Expected output functions for a half design, keyed by output name."""
    if config is None:
        return {
            "S/D": lambda v: v["X"] ^ v["Y"],
            "B_out": lambda v: (1 - v["X"]) & v["Y"],
            "C_out": lambda v: v["X"] & v["Y"],
        }
    key = config.upper().replace("-", "_")
    table = {
        "AND_XOR": {"XOR": lambda v: v["X"] ^ v["Y"], "AND": lambda v: v["X"] & v["Y"]},
        "NAND_XOR": {"XOR": lambda v: v["X"] ^ v["Y"], "NAND": lambda v: 1 - (v["X"] & v["Y"])},
        "NOT_COPY": {"NOT": lambda v: 1 - v["X"], "COPY": lambda v: v["X"]},
        "XNOR": {
            "NOT_X": lambda v: 1 - v["X"],
            "NOT_Y": lambda v: 1 - v["Y"],
            "XNOR": lambda v: 1 - (v["X"] ^ v["Y"]),
        },
    }
    if key not in table:
        raise UnknownMode(f"unknown half-logic config {config!r}")
    return table[key]


# ---------------------------------------------------------------- full design

def _full_gates(offset: int = 0) -> tuple:
    return (
        GateInstance(R3_123, (1 + offset, 2 + offset, 3 + offset)),
        GateInstance(R3_312, (2 + offset, 3 + offset, 4 + offset)),
    )


def build_full_addsub() -> Circuit:
    """The 4-line adder/subtractor in its adder input binding.

    y1 is the only garbage line; y2 carries C_out, y3 the sum or
    difference and y4 B_out (meaningful once Y also feeds line 2).
    """
    roles = (
        _role("X", None),
        _role(0, "C_out"),
        _role("Y", "S/D"),
        _role("Z", "B_out"),
    )
    return Circuit("full-addsub", 4, roles, _full_gates())


@dataclass(frozen=True)
class AluMode:
    """One row of the ALU binding table.

    ``binding`` gives what feeds x1..x4 (input names or constants, with a
    don't-care already pinned to 0); ``results`` maps output line to name;
    ``expected`` gives each result as a function of the named inputs.
    """

    mode: str
    binding: tuple
    results: Mapping[int, str]
    expected: Mapping[str, Callable] = field(compare=False)


def _xyz(v):
    return v["X"], v["Y"], v.get("Z", 0)


ALU_MODES = {
    "ADD": AluMode("ADD", ("X", 0, "Y", "Z"), {2: "C_out", 3: "S"},
                   {"S": lambda v: ArithSpec.sum(*_xyz(v)),
                    "C_out": lambda v: ArithSpec.carry(*_xyz(v))}),
    "SUB": AluMode("SUB", ("X", "Y", "Y", "Z"), {3: "D", 4: "B_out"},
                   {"D": lambda v: ArithSpec.difference(*_xyz(v)),
                    "B_out": lambda v: ArithSpec.borrow(*_xyz(v))}),
    # x4 is marked don't-care in the table; XY only appears on y2 when it is 0
    "AND": AluMode("AND", ("X", 0, "Y", 0), {2: "AND"},
                   {"AND": lambda v: v["X"] & v["Y"]}),
    "XOR": AluMode("XOR", ("X", 0, "Y", 0), {3: "XOR"},
                   {"XOR": lambda v: v["X"] ^ v["Y"]}),
    "XNOR": AluMode("XNOR", ("X", 0, "Y", 1), {3: "XNOR"},
                    {"XNOR": lambda v: 1 - (v["X"] ^ v["Y"])}),
    "NOT": AluMode("NOT", ("X", 0, 1, 0), {3: "NOT"},
                   {"NOT": lambda v: 1 - v["X"]}),
}


def _mode(mode) -> AluMode:
    if isinstance(mode, AluMode):
        return mode
    key = str(mode).upper()
    if key not in ALU_MODES:
        raise UnknownMode(f"unknown ALU mode {mode!r}; choose from {', '.join(ALU_MODES)}")
    return ALU_MODES[key]


def bind_alu(c: Circuit, mode) -> Circuit:
    """Rewrite the line roles of a 4-line cell for one ALU mode."""
    m = _mode(mode)
    if c.width != 4:
        raise CircuitError(f"ALU binding needs the 4-line cell, got {c.width} lines")
    roles = tuple(_role(inp, m.results.get(i)) for i, inp in enumerate(m.binding, 1))
    return c.with_roles(roles, name=f"alu:{m.mode.lower()}")


# ---------------------------------------------------------------- verification

@dataclass(frozen=True)
class VerificationReport:
    design: str
    rows_checked: int
    outputs_checked: tuple
    mismatches: tuple  # ((inputs dict, output name, expected, actual), ...)

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def summary(self) -> str:
        status = "OK" if self.ok else f"{len(self.mismatches)} mismatch(es)"
        return (f"{self.design}: {self.rows_checked} rows x "
                f"{len(self.outputs_checked)} outputs, {status}")


def verify_outputs(c: Circuit, expected: Mapping[str, Callable], max_inputs: int = 20) -> VerificationReport:
    """Compare every named-input row of ``c`` against ``expected`` functions."""
    names = c.input_names
    k = len(names)
    if k > max_inputs:
        raise TooWide(f"{k} named inputs exceeds the exhaustive bound {max_inputs}")
    lanes = 1 << k
    ev = evaluate_batch(c, {n: pattern_word(i, k) for i, n in enumerate(names)}, lanes)
    missing = [o for o in expected if o not in ev.outputs]
    if missing:
        raise CircuitError(f"circuit has no output(s) {', '.join(missing)}")
    bad = []
    for r in range(lanes):
        row = {n: (r >> (k - 1 - i)) & 1 for i, n in enumerate(names)}
        for out in sorted(expected):
            want = expected[out](row)
            got = (ev.outputs[out] >> r) & 1
            if want != got:
                bad.append((row, out, want, got))
    return VerificationReport(c.name, lanes, tuple(sorted(expected)), tuple(bad))


def verify_against_spec(c: Circuit, mode) -> VerificationReport:
    """Bind ``c`` to ``mode`` and check its results over all input rows."""
    m = _mode(mode)
    return verify_outputs(bind_alu(c, m), m.expected)


# ---------------------------------------------------------------- ripple cascade

def build_ripple(n: int, mode: str = "add") -> Circuit:
    """``n`` full cells, bit 0 on top, chained through the carry/borrow line.

    Line 1 carries the incoming carry (``cin``) or borrow (``bin``). Cell
    ``i`` uses lines ``3i+2 .. 3i+4`` for ``a_i``, the second input and
    ``b_i``. In ADD the second input is a 0 constant that leaves the cell
    as its carry and feeds the next cell's fourth wire; in SUB it is a copy
    of ``b_i`` and the borrow stays on line 1 throughout.
    """
    if n < 1:
        raise ValueError("ripple width must be at least 1")
    key = mode.upper()
    if key not in ("ADD", "SUB"):
        raise UnknownMode(f"ripple mode must be add or sub, got {mode!r}")
    width = 3 * n + 1
    inputs: dict = {}
    outputs: dict = {}
    gates = []
    inputs[1] = "cin" if key == "ADD" else "bin"
    chain = 1
    for i in range(n):
        a, mid, b = 3 * i + 2, 3 * i + 3, 3 * i + 4
        inputs[a] = f"a{i}"
        inputs[b] = f"b{i}"
        inputs[mid] = 0 if key == "ADD" else f"b{i}"
        gates.append(GateInstance(R3_123, (a, mid, b)))
        gates.append(GateInstance(R3_312, (mid, b, chain)))
        outputs[b] = f"s{i}" if key == "ADD" else f"d{i}"
        if key == "ADD":
            chain = mid
    if key == "ADD":
        outputs[chain] = "cout"
    else:
        outputs[1] = "bout"
    roles = tuple(_role(inputs[ln], outputs.get(ln)) for ln in range(1, width + 1))
    return Circuit(f"ripple:{n}:{key.lower()}", width, roles, tuple(gates))


def ripple_run(c: Circuit, n: int, cases) -> list:
    """Evaluate ``(a, b, carry_in)`` triples on a ripple circuit in one pass.

    Returns ``(result, carry_out)`` pairs; bit 0 of each operand is cell 0.
    """
    cases = list(cases)
    lanes = len(cases)
    if lanes == 0:
        return []
    carry_name = "cin" if "cin" in c.input_names else "bin"
    out_prefix, carry_out = ("s", "cout") if carry_name == "cin" else ("d", "bout")
    words = {carry_name: 0}
    for i in range(n):
        words[f"a{i}"] = 0
        words[f"b{i}"] = 0
    for lane, (a, b, cin) in enumerate(cases):
        bit = 1 << lane
        if cin:
            words[carry_name] |= bit
        for i in range(n):
            if (a >> i) & 1:
                words[f"a{i}"] |= bit
            if (b >> i) & 1:
                words[f"b{i}"] |= bit
    ev = evaluate_batch(c, words, lanes)
    outs = [ev.outputs[f"{out_prefix}{i}"] for i in range(n)]
    co = ev.outputs[carry_out]
    results = []
    for lane in range(lanes):
        value = 0
        for i in range(n):
            value |= ((outs[i] >> lane) & 1) << i
        results.append((value, (co >> lane) & 1))
    return results


def ripple_expectations(n: int, mode: str) -> dict:
    """Per-output integer-arithmetic oracle for a ripple circuit."""
    key = mode.upper()

    def operands(v):
        a = sum(v[f"a{i}"] << i for i in range(n))
        b = sum(v[f"b{i}"] << i for i in range(n))
        return a, b, v["cin" if key == "ADD" else "bin"]

    def result(v):
        a, b, c = operands(v)
        return a + b + c if key == "ADD" else a - b - c

    exp = {}
    for i in range(n):
        exp[("s" if key == "ADD" else "d") + str(i)] = (lambda v, i=i: (result(v) >> i) & 1)
    if key == "ADD":
        exp["cout"] = lambda v: result(v) >> n & 1
    else:
        exp["bout"] = lambda v: int(result(v) < 0)
    return exp


# ---------------------------------------------------------------- builtins

_RIPPLE_RE = re.compile(r"^ripple:(\d+):(add|sub)$")


def builtin_names() -> list:
    return (["half-addsub", "half-and-xor", "half-nand-xor", "half-not-copy",
             "half-xnor", "full-addsub"]
            + [f"alu:{m.lower()}" for m in ALU_MODES]
            + ["ripple:<n>:add", "ripple:<n>:sub"])


def builtin(name: str) -> Circuit:
    if name == "half-addsub":
        return build_half_addsub()
    if name.startswith("half-"):
        return build_half_logic(name[len("half-"):])
    if name == "full-addsub":
        return build_full_addsub()
    if name.startswith("alu:"):
        return bind_alu(build_full_addsub(), name[4:])
    m = _RIPPLE_RE.match(name)
    if m:
        return build_ripple(int(m.group(1)), m.group(2))
    raise UnknownDesign(f"unknown design {name!r}; known: {', '.join(builtin_names())}")


def builtin_verification(name: str, mode: str | None = None) -> VerificationReport:
    """Verify a built-in design against its reference behaviour."""
    if name == "half-addsub":
        return verify_outputs(build_half_addsub(), half_expectations())
    if name.startswith("half-"):
        cfg = name[len("half-"):]
        return verify_outputs(build_half_logic(cfg), half_expectations(cfg))
    if name == "full-addsub":
        return verify_against_spec(build_full_addsub(), mode or "ADD")
    if name.startswith("alu:"):
        return verify_against_spec(build_full_addsub(), mode or name[4:])
    m = _RIPPLE_RE.match(name)
    if m:
        n = int(m.group(1))
        return verify_outputs(build_ripple(n, m.group(2)), ripple_expectations(n, m.group(2)))
    raise UnknownDesign(f"unknown design {name!r}")
