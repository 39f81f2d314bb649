"""The primitive reversible gate library.

A gate is a kind plus a wire order. The order tuple holds the subscript
positions exactly as written on the gate, so ``R3_231`` is
``GateKind("R3", (2, 3, 1))`` and its Boolean equations read their
``j, k, l`` roles from positions 2, 3 and 1 of the gate's wires.

Every classical gate is evaluated word-parallel: each wire carries a Python
int whose bits are independent lanes, and ``mask`` holds one set bit per
lane. Evaluating a single basis state is the special case ``mask == 1``.
All output equations read the original inputs (simultaneous assignment).
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Sequence

from .errors import NonClassicalGate, UnknownCost, Unsupported, WidthMismatch
from .perm import Permutation

__all__ = [
    "GateKind",
    "KINDS",
    "COST015",
    "COST115",
    "METRICS",
    "CostTable",
    "DEFAULT_COSTS",
    "apply_gate",
    "apply_words",
    "gate_permutation",
    "quantum_cost",
    "enumerate_gates",
    "parse_mnemonic",
    "state_to_point",
    "point_to_state",
    "REFERENCE_CYCLES",
]

COST015 = "cost015"
COST115 = "cost115"
METRICS = (COST015, COST115)

_FIXED_ARITY = {
    "N": 1, "R1": 1,
    "C": 2, "V": 2, "Vdag": 2, "R2": 2,
    "P": 3, "F": 3, "R3": 3,
}
KINDS = ("N", "C", "V", "Vdag", "T", "P", "F", "R1", "R2", "R3")

_PREFIX = {"N": "N", "C": "C", "V": "V", "Vdag": "VD", "P": "P", "F": "F",
           "R1": "R1", "R2": "R2", "R3": "R3"}


@dataclass(frozen=True, order=True)
class GateKind:
    """A gate type with its subscript order.

    For ``C``/``V``/``Vdag`` the order is ``(control, target)``; for ``T``
    it is ``(controls..., target)``; for ``P``, ``F`` and ``R3`` it is the
    ``(j, k, l)`` triple of the defining equations.
    """

    kind: str
    order: tuple

    def __post_init__(self):
        if self.kind not in KINDS:
            raise Unsupported(f"unknown gate kind {self.kind!r}")
        order = tuple(int(v) for v in self.order)
        object.__setattr__(self, "order", order)
        n = len(order)
        if self.kind == "T":
            if n < 3:
                raise Unsupported("T gates need at least 3 wires")
        elif n != _FIXED_ARITY[self.kind]:
            raise Unsupported(
                f"{self.kind} has arity {_FIXED_ARITY[self.kind]}, got order {order}")
        if sorted(order) != list(range(1, n + 1)):
            raise Unsupported(f"order {order} is not a permutation of 1..{n}")

    @property
    def arity(self) -> int:
        return len(self.order)

    @property
    def classical(self) -> bool:
        return self.kind not in ("V", "Vdag")

    @property
    def mnemonic(self) -> str:
        prefix = f"T{self.arity}" if self.kind == "T" else _PREFIX[self.kind]
        return prefix + "_" + "".join(map(str, self.order))

    @property
    def targets(self) -> frozenset:
        """Wire positions whose value the gate can change."""
        o = self.order
        if self.kind in ("N", "R1"):
            return frozenset(o)
        if self.kind in ("C", "V", "Vdag", "T"):
            return frozenset(o[-1:])
        if self.kind in ("P", "F"):
            return frozenset(o[1:])
        return frozenset(o)

    def __str__(self):
        return self.mnemonic


_MNEMONIC_RE = re.compile(r"^(N|C|VD|V|T(\d+)|P|F|R1|R2|R3)_(\d+)$")
_FROM_PREFIX = {v: k for k, v in _PREFIX.items()}


def parse_mnemonic(text: str) -> GateKind:
    """``"R3_231"`` -> ``GateKind("R3", (2, 3, 1))``."""
    m = _MNEMONIC_RE.match(text)
    if m is None:
        raise Unsupported(f"bad gate mnemonic {text!r}")
    head, t_arity, digits = m.groups()
    order = tuple(int(d) for d in digits)
    if t_arity is not None:
        if int(t_arity) != len(order):
            raise Unsupported(f"{text!r}: T{t_arity} needs {t_arity} order digits")
        return GateKind("T", order)
    return GateKind(_FROM_PREFIX[head], order)


def apply_words(g: GateKind, words: Sequence[int], mask: int = 1) -> list:
    """Evaluate ``g`` lane-wise. ``words[i]`` is the value of gate wire i+1."""
    if len(words) != g.arity:
        raise WidthMismatch(f"{g} takes {g.arity} wires, got {len(words)}")
    if not g.classical:
        raise NonClassicalGate(f"{g} has no basis-state action")
    x = list(words)
    y = list(words)
    o = [p - 1 for p in g.order]
    kind = g.kind
    if kind in ("N", "R1"):
        y[o[0]] = x[o[0]] ^ mask
    elif kind == "C":
        i, j = o
        y[j] = x[j] ^ x[i]
    elif kind == "T":
        conj = mask
        for c in o[:-1]:
            conj &= x[c]
        t = o[-1]
        y[t] = x[t] ^ conj
    elif kind == "P":
        j, k, l = o
        y[k] = x[j] ^ x[k]
        y[l] = x[l] ^ (x[j] & x[k])
    elif kind == "F":
        j, k, l = o
        d = (x[k] ^ x[l]) & x[j]
        y[k] = x[k] ^ d
        y[l] = x[l] ^ d
    elif kind == "R2":
        i, j = o
        y[i] = x[i] ^ mask
        y[j] = x[i] ^ x[j]
    elif kind == "R3":
        j, k, l = o
        jl = x[j] & x[l]
        y[j] = x[j] ^ x[k] ^ jl ^ mask
        y[k] = x[k] ^ jl ^ mask
        y[l] = x[l] ^ x[j]
    else:  # pragma: no cover - guarded by GateKind validation
        raise Unsupported(kind)
    return y


def apply_gate(g: GateKind, state: Sequence[int]) -> tuple:
    """Map one basis state (x1 first) through ``g``."""
    if len(state) != g.arity:
        raise WidthMismatch(f"{g} takes {g.arity} bits, got {len(state)}")
    if any(b not in (0, 1) for b in state):
        raise ValueError(f"state {tuple(state)} is not a bit vector")
    return tuple(apply_words(g, state, 1))


def state_to_point(state: Sequence[int]) -> int:
    """x1 is the most significant bit; the all-zero state is point 1."""
    v = 0
    for b in state:
        v = (v << 1) | b
    return v + 1


def point_to_state(point: int, width: int) -> tuple:
    v = point - 1
    return tuple((v >> (width - 1 - i)) & 1 for i in range(width))


def gate_permutation(g: GateKind) -> Permutation:
    if not g.classical:
        raise NonClassicalGate(f"{g} has no basis-state action")
    n = g.arity
    images = [state_to_point(apply_gate(g, point_to_state(p, n)))
              for p in range(1, 2 ** n + 1)]
    return Permutation(images)


class CostTable:
    """Per-gate cost015 constants keyed by ``(kind, arity)``.

    cost115 is derived: every 1x1 gate costs 1, everything else as cost015.
    Use :meth:`with_cost` to add constants (e.g. for ``T`` with arity > 3).
    """

    def __init__(self, costs: dict):
        self._costs = dict(costs)

    def with_cost(self, kind: str, arity: int, cost015: int) -> "CostTable":
        costs = dict(self._costs)
        costs[(kind, arity)] = cost015
        return CostTable(costs)

    def cost(self, g: GateKind, metric: str = COST015) -> int:
        if metric not in METRICS:
            raise ValueError(f"unknown metric {metric!r}")
        key = (g.kind, g.arity)
        if key not in self._costs:
            raise UnknownCost(f"no cost registered for {g.kind} on {g.arity} wires")
        if metric == COST115 and g.arity == 1:
            return 1
        return self._costs[key]

    def __contains__(self, g: GateKind) -> bool:
        return (g.kind, g.arity) in self._costs


DEFAULT_COSTS = CostTable({
    ("N", 1): 0, ("R1", 1): 0,
    ("C", 2): 1, ("V", 2): 1, ("Vdag", 2): 1, ("R2", 2): 1,
    ("P", 3): 4, ("R3", 3): 4,
    ("T", 3): 5, ("F", 3): 5,
})


def quantum_cost(g: GateKind, metric: str = COST015, costs: CostTable = DEFAULT_COSTS) -> int:
    return costs.cost(g, metric)


def enumerate_gates(kind: str, arity: int | None = None) -> list:
    """All distinct wire-order variants of a kind, in a fixed order.

    Gates that differ only by the order of interchangeable wires (the two
    controls of a Toffoli, the swapped pair of a Fredkin) are listed once,
    with the interchangeable positions ascending.
    """
    if kind not in KINDS:
        raise Unsupported(f"unknown gate kind {kind!r}")
    if arity is None:
        if kind == "T":
            arity = 3
        else:
            arity = _FIXED_ARITY[kind]
    if kind != "T" and arity != _FIXED_ARITY[kind]:
        raise Unsupported(f"{kind} has no {arity}-wire form")
    if kind == "T" and arity < 3:
        raise Unsupported("T gates need at least 3 wires")
    wires = range(1, arity + 1)
    if kind == "T":
        out = []
        for t in wires:
            controls = tuple(w for w in wires if w != t)
            out.append(GateKind("T", controls + (t,)))
        return sorted(out)
    if kind == "F":
        return sorted(GateKind("F", (c,) + tuple(w for w in wires if w != c)) for c in wires)
    return sorted(GateKind(kind, p) for p in itertools.permutations(wires))


# Cycle listings as printed next to each gate's defining equations.
REFERENCE_CYCLES = (
    ("N_1", "(1,2)"),
    ("C_12", "(3,4)"),
    ("C_21", "(2,4)"),
    ("T3_123", "(7,8)"),
    ("T3_132", "(6,8)"),
    ("T3_321", "(4,8)"),
    ("F_123", "(6,7)"),
    ("F_213", "(4,7)"),
    ("F_321", "(4,6)"),
    ("P_123", "(5,7,6,8)"),
    ("P_132", "(5,6,7,8)"),
    ("P_213", "(3,7,4,8)"),
    ("P_231", "(3,4,7,8)"),
    ("P_312", "(2,6,4,8)"),
    ("P_321", "(2,4,6,8)"),
    ("R1_1", "(1,2)"),
    ("R2_12", "(1,3,2,4)"),
    ("R2_21", "(1,2,3,4)"),
    ("R3_123", "(1,7,6,5,4,2,8,3)"),
    ("R3_321", "(1,4,6,2,7,5,8,3)"),
    ("R3_231", "(1,4,7,3,6,5,8,2)"),
    ("R3_132", "(1,6,7,5,4,3,8,2)"),
    ("R3_312", "(1,6,4,2,7,3,8,5)"),
    ("R3_213", "(1,7,4,3,6,2,8,5)"),
)
