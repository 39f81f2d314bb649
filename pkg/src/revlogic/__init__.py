"""Reversible-logic toolkit built around the R gate family.

Gate library with Boolean and permutation semantics, a circuit IR with
constant/garbage accounting, the R3 half and full adder/subtractor designs,
and an exhaustive minimum-cost synthesizer.
"""

__version__ = "0.1.0"

from .perm import Permutation, compose, from_one_line, gap_export, inverse, parse_cycles, to_cycles
from .gates import (
    COST015, COST115, GateKind, apply_gate, enumerate_gates, gate_permutation,
    parse_mnemonic, quantum_cost,
)
from .vword import rewrite_vword
from .circuit import (
    Circuit, GateInstance, LineRole, Metrics, circuit_permutation, evaluate,
    metrics, truth_table,
)
from .netlist import parse_netlist, print_netlist
from .designs import (
    ALU_MODES, bind_alu, build_full_addsub, build_half_addsub, build_half_logic,
    build_ripple, builtin, verify_against_spec,
)
from .synth import SynthesisSpec, equivalent, mincost_certificate, synth_exhaustive
