"""Equivalence checking and exhaustive minimum-cost synthesis.

The search enumerates gate sequences by increasing length and keeps every
solution of the lowest cost; among equal costs the shortest sequences win.
Results are certified only within the caller's ``max_gates``/``max_cost``.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Sequence

from .circuit import (
    EXHAUSTIVE_BOUND,
    Circuit,
    Constant,
    Garbage,
    GateInstance,
    LineRole,
    NamedInput,
    NamedOutput,
    circuit_permutation,
    evaluate,
    state_map,
)
from .errors import BoundsTooLarge, GateError, SpecError, WidthMismatch
from .gates import (
    COST015,
    DEFAULT_COSTS,
    KINDS,
    METRICS,
    CostTable,
    GateKind,
    enumerate_gates,
    gate_permutation,
    parse_mnemonic,
)
from .perm import Permutation

__all__ = [
    "FOUND", "INFEASIBLE", "NODE_CEILING",
    "SynthesisSpec", "SynthesisResult",
    "equivalent", "synth_exhaustive", "mincost_certificate",
    "parse_library", "spec_from_json",
]

FOUND = "Found"
INFEASIBLE = "ProvenInfeasibleWithinBounds"
NODE_CEILING = 10 ** 8


def equivalent(a: Circuit, b: Circuit) -> bool:
    if a.width != b.width:
        raise WidthMismatch(f"widths {a.width} and {b.width} differ")
    return circuit_permutation(a) == circuit_permutation(b)


def parse_library(items: Sequence[str]) -> tuple:
    """Mnemonics (``"R3_231"``) or bare kinds (``"R3"`` = every variant)."""
    out = []
    for item in items:
        if item in KINDS:
            out.extend(enumerate_gates(item))
        elif item == "VD":
            out.extend(enumerate_gates("Vdag"))
        else:
            out.append(parse_mnemonic(item))
    return tuple(dict.fromkeys(out))


@dataclass(frozen=True)
class SynthesisSpec:
    """A partial reversible function over ``width`` lines.

    ``constraints`` maps a total input state (bit tuple, line 1 first) to
    the required output pattern, ``None`` marking a don't-care bit. States
    not listed are unconstrained.
    """

    width: int
    constraints: dict
    library: tuple
    max_gates: int = 4
    max_cost: int = 20
    metric: str = COST015
    constants: tuple = ()  # ((line, value), ...), informational
    costs: CostTable = field(default=DEFAULT_COSTS, compare=False, repr=False)

    def __post_init__(self):
        if self.width < 1:
            raise SpecError("width must be at least 1")
        if self.metric not in METRICS:
            raise SpecError(f"unknown metric {self.metric!r}")
        for state, pattern in self.constraints.items():
            if len(state) != self.width or len(pattern) != self.width:
                raise SpecError(f"constraint {state}->{pattern} does not span {self.width} lines")
        for g in self.library:
            if g.arity > self.width:
                raise SpecError(f"{g} does not fit on {self.width} lines")
            if not g.classical:
                raise SpecError(f"{g} has no basis-state action and cannot be searched")
            self.costs.cost(g, self.metric)

    @classmethod
    def from_permutation(cls, p: Permutation, library, **kw) -> "SynthesisSpec":
        width = p.degree.bit_length() - 1
        if 1 << width != p.degree:
            raise SpecError(f"degree {p.degree} is not a power of two")
        cons = {}
        for s in range(p.degree):
            cons[_bits(s, width)] = _bits(p.images[s] - 1, width)
        return cls(width, cons, tuple(library), **kw)

    @classmethod
    def from_circuit(cls, c: Circuit, library, **kw) -> "SynthesisSpec":
        """Require ``c``'s behaviour on every state its constants allow;
        garbage lines become don't-cares."""
        consts = dict(c.constant_lines)
        smap = state_map(c)
        cons = {}
        for s in range(1 << c.width):
            bits = _bits(s, c.width)
            if any(bits[ln - 1] != v for ln, v in consts.items()):
                continue
            # lines sharing an input name must agree
            seen = {}
            ok = True
            for i, r in enumerate(c.roles):
                if isinstance(r.input_role, NamedInput):
                    if seen.setdefault(r.input_role.name, bits[i]) != bits[i]:
                        ok = False
            if not ok:
                continue
            out = _bits(smap[s], c.width)
            cons[bits] = tuple(None if isinstance(r.output_role, Garbage) else b
                               for r, b in zip(c.roles, out))
        return cls(c.width, cons, tuple(library), constants=tuple(sorted(consts.items())), **kw)


@dataclass(frozen=True)
class SynthesisResult:
    status: str
    circuits: tuple
    proven_min_cost: int | None
    gate_count: int | None
    nodes: int = 0

    def as_dict(self) -> dict:
        return {
            "status": self.status,
            "proven_min_cost": self.proven_min_cost,
            "gate_count": self.gate_count,
            "within_bounds": True,
            "solutions": [[str(g) for g in c.gates] for c in self.circuits],
        }


def _bits(value: int, width: int) -> tuple:
    return tuple((value >> (width - 1 - i)) & 1 for i in range(width))


def _placements(spec: SynthesisSpec) -> list:
    """Distinct placed gates: (instance, state map, cost, targets lines mask).

    Placements computing the same map are merged; the kept representative
    prefers ascending lines, then the smaller mnemonic.
    """
    w = spec.width
    best = {}
    for g in spec.library:
        for lines in itertools.permutations(range(1, w + 1), g.arity):
            gi = GateInstance(g, lines)
            smap = tuple(state_map(Circuit.plain(w, (gi,))))
            key = (list(lines) != sorted(lines), g.mnemonic, lines)
            if smap not in best or key < best[smap][0]:
                best[smap] = (key, gi)
    out = []
    for smap, (_, gi) in best.items():
        tmask = 0
        for pos in gi.gate.targets:
            tmask |= 1 << (w - gi.lines[pos - 1])
        self_inverse = all(smap[smap[s]] == s for s in range(len(smap)))
        out.append((gi, smap, spec.costs.cost(gi.gate, spec.metric), tmask, self_inverse))
    out.sort(key=lambda t: (t[0].gate.mnemonic, t[0].lines))
    return out


def _estimate(n_inst: int, max_gates: int) -> int:
    return sum(n_inst ** d for d in range(max_gates + 1))


def _statics(spec: SynthesisSpec):
    w = spec.width
    states, cares, vals = [], [], []
    for state in sorted(spec.constraints):
        pattern = spec.constraints[state]
        s = sum(b << (w - 1 - i) for i, b in enumerate(state))
        care = sum(1 << (w - 1 - i) for i, b in enumerate(pattern) if b is not None)
        val = sum(b << (w - 1 - i) for i, b in enumerate(pattern) if b)
        states.append(s)
        cares.append(care)
        vals.append(val)
    return tuple(states), tuple(cares), tuple(vals)


def _to_circuit(spec: SynthesisSpec, seq) -> Circuit:
    consts = dict(spec.constants)
    free_out = [bool(spec.constraints) and all(p[i] is None for p in spec.constraints.values())
                for i in range(spec.width)]
    roles = []
    for ln in range(1, spec.width + 1):
        inp = Constant(consts[ln]) if ln in consts else NamedInput(f"x{ln}")
        out = Garbage() if free_out[ln - 1] else NamedOutput(f"y{ln}")
        roles.append(LineRole(inp, out))
    return Circuit("synth", spec.width, tuple(roles), tuple(gi for gi, *_ in seq))


def _check(spec: SynthesisSpec, c: Circuit) -> bool:
    """Re-verify a solution by direct evaluation of every constrained state."""
    plain = Circuit.plain(spec.width, c.gates)
    for state, pattern in spec.constraints.items():
        ev = evaluate(plain, {f"x{i}": b for i, b in enumerate(state, 1)})
        got = [ev.outputs[f"y{i}"] for i in range(1, spec.width + 1)]
        if any(p is not None and p != g for p, g in zip(pattern, got)):
            return False
    return True


def synth_exhaustive(spec: SynthesisSpec, prune: bool = True,
                     node_ceiling: int = NODE_CEILING) -> SynthesisResult:
    """Find every cheapest realization of ``spec`` within its bounds.

    With ``prune=False`` every sequence up to ``max_gates`` is enumerated
    and filtered afterwards; the pruned search must return the same set.
    """
    if spec.width > EXHAUSTIVE_BOUND:
        raise BoundsTooLarge(f"width {spec.width} exceeds {EXHAUSTIVE_BOUND}")
    insts = _placements(spec)
    est = _estimate(len(insts), spec.max_gates)
    if est > node_ceiling:
        raise BoundsTooLarge(
            f"about {est} nodes for {len(insts)} placements and {spec.max_gates} gates "
            f"exceeds ceiling {node_ceiling}")
    states, cares, vals = _statics(spec)

    def satisfied(cur):
        return all((s & c) == v for s, c, v in zip(cur, cares, vals))

    if not prune:
        found, nodes = _brute(spec, insts, states, satisfied)
    else:
        found, nodes = _pruned(spec, insts, states, cares, vals, satisfied)

    if not found:
        return SynthesisResult(INFEASIBLE, (), None, None, nodes)
    circuits = tuple(_to_circuit(spec, seq) for _, seq in found)
    for c in circuits:
        if not _check(spec, c):
            raise AssertionError(f"search returned a circuit violating the constraints: {c.gates}")
    cost = found[0][0]
    return SynthesisResult(FOUND, circuits, cost, len(found[0][1]), nodes)


def _seq_key(seq):
    return tuple((gi.gate.mnemonic, gi.lines) for gi, *_ in seq)


def _select(cands):
    """Keep the lowest (cost, length) candidates in canonical order."""
    if not cands:
        return []
    best = min((c, len(s)) for c, s in cands)
    keep = [(c, s) for c, s in cands if (c, len(s)) == best]
    keep.sort(key=lambda cs: _seq_key(cs[1]))
    return keep


def _brute(spec, insts, states, satisfied):
    cands = []
    nodes = 0
    for d in range(spec.max_gates + 1):
        for seq in itertools.product(insts, repeat=d):
            nodes += 1
            cost = sum(t[2] for t in seq)
            if cost > spec.max_cost:
                continue
            cur = states
            for t in seq:
                smap = t[1]
                cur = tuple(smap[s] for s in cur)
            if satisfied(cur):
                cands.append((cost, seq))
    return _select(cands), nodes


def _pruned(spec, insts, states, cares, vals, satisfied):
    # two constrained states demanding the same fully specified output
    full = (1 << spec.width) - 1
    fixed = [v for c, v in zip(cares, vals) if c == full]
    if len(set(fixed)) != len(fixed):
        return [], 0
    max_targets = max((bin(t[3]).count("1") for t in insts), default=0)
    min_cost = min((t[2] for t in insts), default=0)
    best_cost = None
    found = []
    nodes = 0

    def needed_lines(cur):
        diff = 0
        for s, c, v in zip(cur, cares, vals):
            diff |= (s ^ v) & c
        return bin(diff).count("1")

    for depth in range(spec.max_gates + 1):
        # deeper solutions only count if strictly cheaper
        bound = spec.max_cost if best_cost is None else min(spec.max_cost, best_cost - 1)
        if bound < 0:
            break
        level = []
        level_best = [bound]

        def dfs(cur, cost, seq, remaining):
            nonlocal nodes
            nodes += 1
            if remaining == 0:
                if satisfied(cur):
                    if cost < level_best[0]:
                        level_best[0] = cost
                        level.clear()
                    level.append((cost, tuple(seq)))
                return
            if needed_lines(cur) > remaining * max_targets:
                return
            if cost + remaining * min_cost > level_best[0]:
                return
            for t in insts:
                c2 = cost + t[2]
                if c2 + (remaining - 1) * min_cost > level_best[0]:
                    continue
                # an involution applied twice in a row is never minimal
                if seq and seq[-1] is t and t[4]:
                    continue
                smap = t[1]
                seq.append(t)
                dfs(tuple(smap[s] for s in cur), c2, seq, remaining - 1)
                seq.pop()

        dfs(states, 0, [], depth)
        if level:
            best_cost = level_best[0]
            found = [(c, s) for c, s in level if c == best_cost]
            found.sort(key=lambda cs: _seq_key(cs[1]))
            if best_cost == 0:
                break
    return found, nodes


def mincost_certificate(g: GateKind, library, max_gates: int = 4, max_cost: int = 20,
                        metric: str = COST015, costs: CostTable = DEFAULT_COSTS) -> int | None:
    """Cheapest cost of realizing ``g``'s permutation over ``library``, or
    None when nothing within the bounds realizes it."""
    spec = SynthesisSpec.from_permutation(gate_permutation(g), tuple(library),
                                          max_gates=max_gates, max_cost=max_cost,
                                          metric=metric, costs=costs)
    return synth_exhaustive(spec).proven_min_cost


def spec_from_json(text: str) -> SynthesisSpec:
    """Load a synthesis spec document.

    ``table`` keys are the bits of the non-constant lines (line order);
    values are output bits over all lines, ``-`` for don't-care.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError(f"invalid JSON: {exc}") from None
    try:
        width = int(doc["width"])
        consts = {int(k): int(v) for k, v in doc.get("constants", {}).items()}
        library = parse_library(doc["library"])
    except (KeyError, TypeError, ValueError, GateError) as exc:
        raise SpecError(f"bad synthesis spec: {exc}") from None
    for ln, v in consts.items():
        if not 1 <= ln <= width or v not in (0, 1):
            raise SpecError(f"bad constant {ln}={v}")
    free = [ln for ln in range(1, width + 1) if ln not in consts]
    cons = {}
    for key, out in doc.get("table", {}).items():
        if len(key) != len(free) or set(key) - {"0", "1"}:
            raise SpecError(f"table key {key!r} must be {len(free)} bits")
        if len(out) != width or set(out) - {"0", "1", "-"}:
            raise SpecError(f"table value {out!r} must be {width} of 0/1/-")
        bits = dict(zip(free, (int(ch) for ch in key)))
        bits.update(consts)
        state = tuple(bits[ln] for ln in range(1, width + 1))
        cons[state] = tuple(None if ch == "-" else int(ch) for ch in out)
    return SynthesisSpec(
        width, cons, library,
        max_gates=int(doc.get("max_gates", 4)),
        max_cost=int(doc.get("max_cost", 20)),
        metric=doc.get("metric", COST015),
        constants=tuple(sorted(consts.items())),
    )
