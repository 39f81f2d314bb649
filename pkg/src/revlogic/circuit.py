"""Circuit IR over n lines: roles, evaluation, truth tables, metrics.

Lines are 1-indexed, line 1 is the most significant bit of a total state.
A circuit is immutable; builders return new circuits.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field, replace
from typing import Callable, Mapping, Sequence

import numpy as np

from .errors import CircuitError, MissingInput, TooWide, UnknownInput
from .gates import (
    COST015,
    DEFAULT_COSTS,
    CostTable,
    GateKind,
    apply_words,
    gate_permutation,
)
from .perm import Permutation

__all__ = [
    "NamedInput", "Constant", "NamedOutput", "Garbage", "LineRole",
    "GateInstance", "Circuit", "Metrics", "Evaluation", "TruthTable",
    "EXHAUSTIVE_BOUND", "evaluate", "evaluate_batch", "truth_table",
    "circuit_permutation", "state_map", "metrics", "pattern_word",
]

EXHAUSTIVE_BOUND = 20


@dataclass(frozen=True)
class NamedInput:
    name: str


@dataclass(frozen=True)
class Constant:
    value: int

    def __post_init__(self):
        if self.value not in (0, 1):
            raise CircuitError(f"constant must be 0 or 1, got {self.value!r}")


@dataclass(frozen=True)
class NamedOutput:
    name: str


@dataclass(frozen=True)
class Garbage:
    pass


@dataclass(frozen=True)
class LineRole:
    input_role: NamedInput | Constant
    output_role: NamedOutput | Garbage

    @classmethod
    def default(cls, line: int) -> "LineRole":
        return cls(NamedInput(f"x{line}"), NamedOutput(f"y{line}"))


@dataclass(frozen=True)
class GateInstance:
    """``lines[i]`` is the circuit line bound to gate wire ``i + 1``."""

    gate: GateKind
    lines: tuple

    def __post_init__(self):
        lines = tuple(int(v) for v in self.lines)
        object.__setattr__(self, "lines", lines)
        if len(lines) != self.gate.arity:
            raise CircuitError(f"{self.gate} needs {self.gate.arity} lines, got {len(lines)}")
        if len(set(lines)) != len(lines):
            raise CircuitError(f"{self.gate} placed on repeated lines {lines}")

    def __str__(self):
        return self.gate.mnemonic + " " + " ".join(map(str, self.lines))


@dataclass(frozen=True)
class Circuit:
    name: str
    width: int
    roles: tuple
    gates: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "roles", tuple(self.roles))
        object.__setattr__(self, "gates", tuple(self.gates))
        if self.width < 1:
            raise CircuitError("a circuit needs at least one line")
        if len(self.roles) != self.width:
            raise CircuitError(f"{len(self.roles)} roles for {self.width} lines")
        for gi in self.gates:
            for ln in gi.lines:
                if ln < 1 or ln > self.width:
                    raise CircuitError(f"gate {gi} uses line {ln} outside 1..{self.width}")
        outs = [r.output_role.name for r in self.roles if isinstance(r.output_role, NamedOutput)]
        if len(set(outs)) != len(outs):
            raise CircuitError(f"duplicate output names in {outs}")

    @classmethod
    def plain(cls, width: int, gates: Sequence[GateInstance] = (), name: str = "") -> "Circuit":
        """Every line a free input ``x<i>`` and a named output ``y<i>``."""
        return cls(name, width, tuple(LineRole.default(i) for i in range(1, width + 1)), tuple(gates))

    @property
    def input_names(self) -> tuple:
        """Distinct input names in line order (a name may feed several lines)."""
        seen = []
        for r in self.roles:
            if isinstance(r.input_role, NamedInput) and r.input_role.name not in seen:
                seen.append(r.input_role.name)
        return tuple(seen)

    @property
    def output_names(self) -> tuple:
        return tuple(r.output_role.name for r in self.roles
                     if isinstance(r.output_role, NamedOutput))

    @property
    def constant_lines(self) -> tuple:
        return tuple((i, r.input_role.value) for i, r in enumerate(self.roles, 1)
                     if isinstance(r.input_role, Constant))

    @property
    def garbage_lines(self) -> tuple:
        return tuple(i for i, r in enumerate(self.roles, 1) if isinstance(r.output_role, Garbage))

    def with_roles(self, roles: Sequence[LineRole], name: str | None = None) -> "Circuit":
        return replace(self, roles=tuple(roles), name=self.name if name is None else name)

    def with_gates(self, gates: Sequence[GateInstance]) -> "Circuit":
        return replace(self, gates=tuple(gates))


@dataclass(frozen=True)
class Metrics:
    gate_count: int
    quantum_cost: int
    constant_bits: int
    garbage_bits: int
    delay: int
    metric: str = COST015

    def as_dict(self) -> dict:
        return {
            "metric": self.metric,
            "gate_count": self.gate_count,
            "quantum_cost": self.quantum_cost,
            "constant_bits": self.constant_bits,
            "garbage_bits": self.garbage_bits,
            "delay": self.delay,
        }

    def __str__(self):
        return (f"gates={self.gate_count} cost={self.quantum_cost} "
                f"constants={self.constant_bits} garbage={self.garbage_bits} "
                f"delay={self.delay} metric={self.metric}")


@dataclass(frozen=True)
class Evaluation:
    outputs: dict
    garbage: dict = field(default_factory=dict)  # line -> value


def _run_words(c: Circuit, words: list, mask: int) -> list:
    for gi in c.gates:
        idx = [ln - 1 for ln in gi.lines]
        out = apply_words(gi.gate, [words[i] for i in idx], mask)
        for i, v in zip(idx, out):
            words[i] = v
    return words


def _seed(c: Circuit, values: Mapping[str, int], mask: int) -> list:
    names = set(c.input_names)
    missing = [n for n in c.input_names if n not in values]
    if missing:
        raise MissingInput(f"no value for input(s) {', '.join(missing)}")
    unknown = sorted(set(values) - names)
    if unknown:
        raise UnknownInput(f"circuit has no input(s) {', '.join(unknown)}")
    words = []
    for r in c.roles:
        role = r.input_role
        if isinstance(role, Constant):
            words.append(mask if role.value else 0)
        else:
            words.append(values[role.name] & mask)
    return words


def evaluate_batch(c: Circuit, inputs: Mapping[str, int], lanes: int) -> Evaluation:
    """Evaluate ``lanes`` independent input rows at once.

    Each input value is an int whose bit ``r`` is that input in row ``r``;
    outputs come back in the same packed form.
    """
    mask = (1 << lanes) - 1
    words = _run_words(c, _seed(c, inputs, mask), mask)
    outputs, garbage = {}, {}
    for i, (r, w) in enumerate(zip(c.roles, words), 1):
        if isinstance(r.output_role, NamedOutput):
            outputs[r.output_role.name] = w
        else:
            garbage[i] = w
    return Evaluation(outputs, garbage)


def evaluate(c: Circuit, inputs: Mapping[str, int]) -> Evaluation:
    """Run one input assignment; constants are seeded from the circuit."""
    for k, v in inputs.items():
        if v not in (0, 1):
            raise CircuitError(f"input {k}={v!r} is not a bit")
    return evaluate_batch(c, inputs, 1)


def pattern_word(position: int, count: int) -> int:
    """Packed column for variable ``position`` (0 = most significant) of
    ``count`` variables across all ``2**count`` rows in lexicographic order."""
    s = count - 1 - position
    half = 1 << s
    period = half << 1
    block = ((1 << half) - 1) << half
    reps = (1 << count) // period
    repeat = ((1 << (period * reps)) - 1) // ((1 << period) - 1)
    return block * repeat


@dataclass(frozen=True)
class TruthTable:
    input_names: tuple
    constant_columns: tuple  # ((label, value), ...) shown only when requested
    output_names: tuple
    rows: tuple  # ((input bits...), (output bits...))

    @property
    def header(self) -> tuple:
        return self.input_names + tuple(lbl for lbl, _ in self.constant_columns) + self.output_names

    def records(self):
        consts = tuple(v for _, v in self.constant_columns)
        for ins, outs in self.rows:
            yield ins + consts + outs

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.header)
        w.writerows(self.records())
        return buf.getvalue()

    def to_text(self) -> str:
        header = self.header
        widths = [max(len(h), 1) for h in header]
        lines = ["  ".join(h.rjust(wd) for h, wd in zip(header, widths))]
        for rec in self.records():
            lines.append("  ".join(str(v).rjust(wd) for v, wd in zip(rec, widths)))
        return "\n".join(lines) + "\n"

    def as_dict(self) -> dict:
        return {
            "inputs": list(self.input_names),
            "constants": [{"label": lbl, "value": v} for lbl, v in self.constant_columns],
            "outputs": list(self.output_names),
            "rows": [list(r) for r in self.records()],
        }


def truth_table(c: Circuit, include_constants: bool = False, include_garbage: bool = False,
                bound: int = EXHAUSTIVE_BOUND) -> TruthTable:
    """All 2**k rows over the k named inputs, first input most significant."""
    if c.width > bound:
        raise TooWide(f"{c.width} lines exceeds the exhaustive bound {bound}")
    names = c.input_names
    k = len(names)
    lanes = 1 << k
    inputs = {n: pattern_word(i, k) for i, n in enumerate(names)}
    ev = evaluate_batch(c, inputs, lanes)
    out_names = list(c.output_names)
    out_words = [ev.outputs[n] for n in out_names]
    if include_garbage:
        for ln, w in sorted(ev.garbage.items()):
            out_names.append(f"g{ln}")
            out_words.append(w)
    consts = tuple((f"c{ln}", v) for ln, v in c.constant_lines) if include_constants else ()
    rows = []
    for r in range(lanes):
        ins = tuple((r >> (k - 1 - i)) & 1 for i in range(k))
        outs = tuple((w >> r) & 1 for w in out_words)
        rows.append((ins, outs))
    return TruthTable(tuple(names), consts, tuple(out_names), tuple(rows))


def _embedded(gi: GateInstance, width: int, states: np.ndarray) -> np.ndarray:
    """Image of every total state (0-based ints) under one placed gate."""
    local = gate_permutation(gi.gate).images
    table = np.asarray(local, dtype=np.int64) - 1
    a = gi.gate.arity
    shifts = [width - ln for ln in gi.lines]
    sub = np.zeros_like(states)
    clear = 0
    for pos, sh in enumerate(shifts):
        sub |= ((states >> sh) & 1) << (a - 1 - pos)
        clear |= 1 << sh
    img = table[sub]
    out = states & ~np.int64(clear)
    for pos, sh in enumerate(shifts):
        out |= ((img >> (a - 1 - pos)) & 1) << sh
    return out


def circuit_permutation(c: Circuit, bound: int = EXHAUSTIVE_BOUND) -> Permutation:
    """Compose the gates' own permutations, each lifted to all 2**width points.

    Constants are treated as free lines here.
    """
    if c.width > bound:
        raise TooWide(f"{c.width} lines exceeds the exhaustive bound {bound}")
    states = np.arange(1 << c.width, dtype=np.int64)
    total = states.copy()
    for gi in c.gates:
        total = _embedded(gi, c.width, states)[total]
    return Permutation((total + 1).tolist())


def state_map(c: Circuit, bound: int = EXHAUSTIVE_BOUND) -> list:
    """Total-state map computed by evaluating the gates directly (0-based)."""
    if c.width > bound:
        raise TooWide(f"{c.width} lines exceeds the exhaustive bound {bound}")
    n = c.width
    lanes = 1 << n
    mask = (1 << lanes) - 1
    words = [pattern_word(i, n) for i in range(n)]
    words = _run_words(c, words, mask)
    return [sum(((words[i] >> s) & 1) << (n - 1 - i) for i in range(n)) for s in range(lanes)]


def metrics(c: Circuit, metric: str = COST015, costs: CostTable = DEFAULT_COSTS,
            delay_of: Callable[[GateKind], int] | None = None) -> Metrics:
    """Gate count, quantum cost, constant/garbage counts and delay.

    Delay is the longest path through gates ordered by shared lines; each
    gate contributes ``delay_of(gate)``, by default its cost015 cost.
    """
    if delay_of is None:
        delay_of = lambda g: costs.cost(g, COST015)  # noqa: E731
    cost = sum(costs.cost(gi.gate, metric) for gi in c.gates)
    ready = [0] * (c.width + 1)
    finish = 0
    for gi in c.gates:
        start = max(ready[ln] for ln in gi.lines)
        end = start + delay_of(gi.gate)
        for ln in gi.lines:
            ready[ln] = end
        finish = max(finish, end)
    return Metrics(
        gate_count=len(c.gates),
        quantum_cost=cost,
        constant_bits=len(c.constant_lines),
        garbage_bits=len(c.garbage_lines),
        delay=finish,
        metric=metric,
    )

