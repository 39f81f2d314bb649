import itertools

import pytest

from revlogic.errors import NonClassicalGate, UnknownCost, Unsupported, WidthMismatch
from revlogic.gates import (
    COST015,
    COST115,
    DEFAULT_COSTS,
    REFERENCE_CYCLES,
    GateKind,
    apply_gate,
    enumerate_gates,
    gate_permutation,
    parse_mnemonic,
    point_to_state,
    quantum_cost,
    state_to_point,
)
from revlogic.perm import parse_cycles, to_cycles


def g(text):
    return parse_mnemonic(text)


def all_classical_gates():
    out = []
    for kind in ("N", "C", "T", "P", "F", "R1", "R2", "R3"):
        out.extend(enumerate_gates(kind))
    out.extend(enumerate_gates("T", 4))
    return out


class TestApplyGate:
    def test_not(self):
        assert apply_gate(g("N_1"), (1,)) == (0,)

    def test_toffoli(self):
        assert apply_gate(g("T3_123"), (1, 1, 0)) == (1, 1, 1)

    def test_r3_231_half_adder_row(self):
        # X=1, Y=1, constant 1 -> S/D=0, B_out=0, C_out=1
        assert apply_gate(g("R3_231"), (1, 1, 1)) == (0, 0, 1)

    def test_r3_123_zero_state(self):
        assert apply_gate(g("R3_123"), (0, 0, 0)) == (1, 1, 0)

    def test_r3_equations_simultaneous(self):
        # reference implementation of the three output equations, by role
        for order in itertools.permutations((1, 2, 3)):
            gate = GateKind("R3", order)
            j, k, l = (p - 1 for p in order)
            for x in itertools.product((0, 1), repeat=3):
                y = [0, 0, 0]
                y[j] = x[j] ^ x[k] ^ (x[j] & x[l]) ^ 1
                y[k] = x[k] ^ (x[j] & x[l]) ^ 1
                y[l] = x[l] ^ x[j]
                assert apply_gate(gate, x) == tuple(y)

    def test_width_mismatch(self):
        with pytest.raises(WidthMismatch):
            apply_gate(g("C_12"), (1, 0, 1))

    @pytest.mark.parametrize("m", ["V_12", "VD_21"])
    def test_v_gates_are_not_classical(self, m):
        with pytest.raises(NonClassicalGate):
            apply_gate(g(m), (1, 0))
        with pytest.raises(NonClassicalGate):
            gate_permutation(g(m))

    @pytest.mark.parametrize("m", [3, 4, 5])
    def test_generalized_toffoli(self, m):
        for gate in enumerate_gates("T", m):
            *controls, target = (p - 1 for p in gate.order)
            for x in itertools.product((0, 1), repeat=m):
                y = apply_gate(gate, x)
                conj = int(all(x[c] for c in controls))
                for c in controls:
                    assert y[c] == x[c]
                assert y[target] == x[target] ^ conj


class TestPermutationSemantics:
    def test_state_point_convention(self):
        assert state_to_point((1, 1, 0)) == 7
        assert point_to_state(7, 3) == (1, 1, 0)
        assert all(state_to_point(point_to_state(p, 4)) == p for p in range(1, 17))

    @pytest.mark.parametrize("mnemonic, cycle", [("C_12", "(3,4)"), ("P_123", "(5,7,6,8)")])
    def test_listed_cycles(self, mnemonic, cycle):
        assert to_cycles(gate_permutation(g(mnemonic))) == cycle

    def test_r3_321(self):
        p = gate_permutation(g("R3_321"))
        # the value computed from the Boolean equations equals the printed listing
        assert p == parse_cycles("(1,4,6,2,7,5,8,3)", 8)
        assert to_cycles(p) == "(1,4,6,2,7,5,8,3)"

    @pytest.mark.parametrize("mnemonic, cycle", REFERENCE_CYCLES)
    def test_every_listing_agrees_with_equations(self, mnemonic, cycle):
        gate = g(mnemonic)
        assert gate_permutation(gate) == parse_cycles(cycle, 2 ** gate.arity)

    def test_permutation_matches_apply_pointwise(self):
        for gate in all_classical_gates():
            p = gate_permutation(gate)
            for pt in range(1, p.degree + 1):
                out = apply_gate(gate, point_to_state(pt, gate.arity))
                assert p(pt) == state_to_point(out)

    def test_every_gate_is_a_bijection(self):
        for gate in all_classical_gates():
            outs = {apply_gate(gate, x) for x in itertools.product((0, 1), repeat=gate.arity)}
            assert len(outs) == 2 ** gate.arity

    @pytest.mark.parametrize("kind", ["N", "C", "T", "F"])
    def test_self_inverse_kinds(self, kind):
        for gate in enumerate_gates(kind):
            for x in itertools.product((0, 1), repeat=gate.arity):
                assert apply_gate(gate, apply_gate(gate, x)) == x

    def test_r3_is_not_an_involution(self):
        p = gate_permutation(g("R3_123"))
        assert p.order() == 8
        assert not p.then(p).is_identity()


class TestCosts:
    @pytest.mark.parametrize("mnemonic, c015, c115", [
        ("N_1", 0, 1), ("R1_1", 0, 1),
        ("C_12", 1, 1), ("V_12", 1, 1), ("VD_12", 1, 1), ("R2_21", 1, 1),
        ("P_123", 4, 4), ("R3_231", 4, 4),
        ("T3_123", 5, 5), ("F_123", 5, 5),
    ])
    def test_constants(self, mnemonic, c015, c115):
        assert quantum_cost(g(mnemonic), COST015) == c015
        assert quantum_cost(g(mnemonic), COST115) == c115

    def test_wide_toffoli_needs_registration(self):
        t4 = g("T4_1234")
        with pytest.raises(UnknownCost):
            quantum_cost(t4)
        costs = DEFAULT_COSTS.with_cost("T", 4, 13)
        assert quantum_cost(t4, costs=costs) == 13
        # the default table is untouched
        assert t4 not in DEFAULT_COSTS

    def test_unknown_metric(self):
        with pytest.raises(ValueError):
            quantum_cost(g("N_1"), "cost999")


class TestEnumerate:
    @pytest.mark.parametrize("kind, count", [
        ("N", 1), ("C", 2), ("T", 3), ("P", 6), ("F", 3), ("R1", 1), ("R2", 2), ("R3", 6),
    ])
    def test_counts(self, kind, count):
        gates = enumerate_gates(kind)
        assert len(gates) == count
        assert len({gate_permutation(x) for x in gates}) == count

    def test_fredkin_orders_collapse_to_three(self):
        perms = {gate_permutation(GateKind("F", o)) for o in itertools.permutations((1, 2, 3))}
        assert len(perms) == 3

    def test_unsupported(self):
        with pytest.raises(Unsupported):
            enumerate_gates("P", 4)
        with pytest.raises(Unsupported):
            enumerate_gates("Q", 2)


class TestMnemonics:
    @pytest.mark.parametrize("text", ["N_1", "C_21", "V_12", "VD_21", "T3_231", "T4_1243",
                                      "P_312", "F_213", "R1_1", "R2_12", "R3_231"])
    def test_round_trip(self, text):
        assert parse_mnemonic(text).mnemonic == text

    @pytest.mark.parametrize("text", ["R3_2", "R3_112", "C_13", "X_1", "T3_12", "T4_123", "R3231"])
    def test_bad(self, text):
        with pytest.raises(Unsupported):
            parse_mnemonic(text)

    def test_roles(self):
        gate = g("R3_231")
        assert gate.kind == "R3" and gate.order == (2, 3, 1) and gate.arity == 3
