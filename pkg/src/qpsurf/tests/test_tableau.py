"""Tests for the stabilizer tableau."""

import numpy as np
import pytest

from qpsurf._exceptions import QubitIndexError
from qpsurf._tableau import (
    PauliOperator,
    StabilizerTableau,
    apply_cnot,
    apply_h,
    apply_s,
    apply_sqrt_x,
    apply_x,
    expectation_pauli,
    measure_z,
    new_tableau,
)
from qpsurf.tests.oracle import (
    DenseState,
    dense_apply_gate,
    dense_apply_pauli,
    dense_expectation,
    dense_measure_z,
    dense_probability_one,
)

__author__ = "Artur Barseghyan <artur.barseghyan@gmail.com>"
__copyright__ = "2026 Artur Barseghyan"
__license__ = "MIT"

_ONE_QUBIT_GATES = ("h", "s", "x", "z", "sqrt_x")
_TABLEAU_GATES = {
    "h": StabilizerTableau.h,
    "s": StabilizerTableau.s,
    "x": StabilizerTableau.x_gate,
    "z": StabilizerTableau.z_gate,
    "sqrt_x": StabilizerTableau.sqrt_x,
}


def _random_gate(rng, n):
    if n > 1 and rng.random() < 0.3:
        control, target = rng.choice(n, size=2, replace=False)
        return "cnot", (int(control), int(target))
    return _ONE_QUBIT_GATES[rng.integers(len(_ONE_QUBIT_GATES))], (
        int(rng.integers(n)),
    )


def _apply_both(tableau, state, name, qubits):
    if name == "cnot":
        tableau.cnot(*qubits)
    else:
        _TABLEAU_GATES[name](tableau, *qubits)
    dense_apply_gate(state, name, *qubits)


def _random_pauli(rng, n):
    return PauliOperator(
        rng.integers(0, 2, n), rng.integers(0, 2, n), int(rng.choice([1, -1]))
    )


class TestPauliOperator:
    """Tests for PauliOperator."""

    def test_from_label(self):
        """Labels map letters to (x, z) bits and keep the sign."""
        pauli = PauliOperator.from_label("-XZY")
        assert pauli.x_bits.tolist() == [1, 0, 1]
        assert pauli.z_bits.tolist() == [0, 1, 1]
        assert pauli.phase == -1
        assert pauli.label() == "-XZY"

    def test_length_mismatch_rejected(self):
        """x and z bit vectors of different lengths are rejected."""
        with pytest.raises(QubitIndexError):
            PauliOperator([1, 0], [1])

    def test_bad_phase_rejected(self):
        """Only +1 and -1 are valid phases."""
        with pytest.raises(ValueError):
            PauliOperator([1], [0], phase=2)

    def test_commutation_matches_dense(self, rng):
        """commutes_with agrees with dense matrix commutators."""
        for _ in range(200):
            n = int(rng.integers(1, 5))
            a = _random_pauli(rng, n)
            b = _random_pauli(rng, n)
            state = DenseState(n)
            # Random dense vector to test AB - BA against.
            state.amplitudes = rng.normal(size=2**n) + 1j * rng.normal(size=2**n)
            tmp = DenseState(n)
            tmp.amplitudes = dense_apply_pauli(state, b)
            ab = dense_apply_pauli(tmp, a)
            tmp.amplitudes = dense_apply_pauli(state, a)
            ba = dense_apply_pauli(tmp, b)
            assert a.commutes_with(b) == np.allclose(ab, ba)

    def test_commutes_with_size_mismatch(self):
        """Operators on different qubit counts cannot be compared."""
        with pytest.raises(QubitIndexError):
            PauliOperator.from_label("XX").commutes_with(
                PauliOperator.from_label("X")
            )


class TestNewTableau:
    """Tests for tableau initialisation."""

    def test_single_qubit_is_plus_z(self):
        """One qubit starts stabilised by +Z."""
        tableau = new_tableau(1)
        assert tableau.stabilizers() == [PauliOperator.from_label("+Z")]

    def test_all_qubits_measure_plus_one(self, rng):
        """|000> measures +1 on every qubit, deterministically."""
        tableau = new_tableau(3)
        for q in range(3):
            assert measure_z(tableau, q, rng) == (1, True)

    def test_cnot_fixes_zero_state(self, rng):
        """CNOT leaves |00> unchanged."""
        tableau = apply_cnot(new_tableau(2), 0, 1)
        assert measure_z(tableau, 1, rng) == (1, True)

    def test_zero_qubits_rejected(self):
        """A tableau needs at least one qubit."""
        with pytest.raises(QubitIndexError):
            new_tableau(0)

    def test_starts_valid(self):
        """The initial tableau has the destabilizer structure."""
        assert new_tableau(5).is_valid()


class TestGates:
    """Tests for the Clifford gates."""

    def test_h_twice_is_identity(self):
        """H applied twice restores the tableau."""
        tableau = new_tableau(2).cnot(0, 1).s(1)
        before = tableau.copy()
        apply_h(apply_h(tableau, 1), 1)
        assert np.array_equal(tableau.x, before.x)
        assert np.array_equal(tableau.z, before.z)
        assert np.array_equal(tableau.r, before.r)

    def test_s_four_times_is_identity(self):
        """S applied four times restores the tableau."""
        tableau = new_tableau(2).h(0).cnot(0, 1)
        before = tableau.copy()
        for _ in range(4):
            apply_s(tableau, 0)
        assert np.array_equal(tableau.x, before.x)
        assert np.array_equal(tableau.z, before.z)
        assert np.array_equal(tableau.r, before.r)

    def test_sqrt_x_on_zero_gives_minus_y(self):
        """exp(-i pi/4 X)|0> is the -1 eigenstate of Y."""
        tableau = apply_sqrt_x(new_tableau(1), 0)
        assert expectation_pauli(tableau, PauliOperator.from_label("Y")) == -1

    def test_sqrt_x_twice_equals_x(self):
        """Two square roots of X act like X."""
        a = new_tableau(3).h(0).cnot(0, 2).s(1)
        b = a.copy()
        apply_sqrt_x(apply_sqrt_x(a, 2), 2)
        apply_x(b, 2)
        assert np.array_equal(a.x, b.x)
        assert np.array_equal(a.z, b.z)
        assert np.array_equal(a.r, b.r)

    def test_sqrt_x_equals_h_s_h(self):
        """The native sqrt_x matches H S H row by row."""
        a = new_tableau(2).h(0).cnot(0, 1).s(0)
        b = a.copy()
        a.sqrt_x(1)
        b.h(1).s(1).h(1)
        assert np.array_equal(a.x, b.x)
        assert np.array_equal(a.z, b.z)
        assert np.array_equal(a.r, b.r)

    def test_structure_preserved(self, rng):
        """Commutation structure survives long random circuits."""
        tableau = new_tableau(5)
        for _ in range(300):
            name, qubits = _random_gate(rng, 5)
            if name == "cnot":
                tableau.cnot(*qubits)
            else:
                _TABLEAU_GATES[name](tableau, *qubits)
        assert tableau.is_valid()

    def test_index_out_of_range(self):
        """Qubit indices must lie in [0, n)."""
        with pytest.raises(QubitIndexError):
            new_tableau(2).h(2)
        with pytest.raises(QubitIndexError):
            new_tableau(2).x_gate(-1)

    def test_cnot_same_qubit_rejected(self):
        """CNOT control and target must differ."""
        with pytest.raises(QubitIndexError):
            new_tableau(2).cnot(1, 1)


class TestMeasureZ:
    """Tests for Z-basis measurement."""

    def test_h_zero_is_balanced(self, rng):
        """H|0> measures -1 about half the time."""
        trials = 20_000
        minus = 0
        for _ in range(trials):
            outcome, deterministic = new_tableau(1).h(0).measure_z(0, rng)
            assert not deterministic
            minus += outcome == -1
        sigma = (0.25 / trials) ** 0.5
        assert abs(minus / trials - 0.5) < 4 * sigma

    def test_repeat_measurement_agrees(self, rng):
        """Measuring twice gives the same outcome, the second deterministically."""
        for _ in range(50):
            tableau = new_tableau(2).h(0).cnot(0, 1)
            first, _ = tableau.measure_z(1, rng)
            second, deterministic = tableau.measure_z(1, rng)
            assert deterministic
            assert second == first

    def test_bell_pair_correlated(self, rng):
        """Both halves of a Bell pair give the same outcome."""
        for _ in range(50):
            tableau = new_tableau(2).h(0).cnot(0, 1)
            a, _ = tableau.measure_z(0, rng)
            b, deterministic = tableau.measure_z(1, rng)
            assert deterministic
            assert a == b

    def test_sqrt_x_state_is_balanced(self, rng):
        """A Y eigenstate measured in Z gives a random outcome."""
        outcomes = {new_tableau(1).sqrt_x(0).measure_z(0, rng)[0] for _ in range(64)}
        assert outcomes == {1, -1}

    def test_valid_after_random_measurement(self, rng):
        """Projection keeps the destabilizer structure."""
        tableau = new_tableau(4)
        for _ in range(40):
            name, qubits = _random_gate(rng, 4)
            if name == "cnot":
                tableau.cnot(*qubits)
            else:
                _TABLEAU_GATES[name](tableau, *qubits)
            tableau.measure_z(int(rng.integers(4)), rng)
            assert tableau.is_valid()


class TestExpectation:
    """Tests for Pauli expectation values."""

    def test_zz_on_zero_state(self):
        """<00|ZZ|00> = +1."""
        assert expectation_pauli(new_tableau(2), PauliOperator.from_label("ZZ")) == 1

    def test_z_on_plus_state(self):
        """<+|Z|+> = 0."""
        tableau = new_tableau(1).h(0)
        assert expectation_pauli(tableau, PauliOperator.from_label("Z")) == 0

    def test_sign_of_operator(self):
        """A negative phase flips the expectation."""
        assert expectation_pauli(new_tableau(1), PauliOperator.from_label("-Z")) == -1

    def test_identity_is_one(self):
        """The identity always has expectation +1."""
        tableau = new_tableau(3).h(0).cnot(0, 1)
        assert expectation_pauli(tableau, PauliOperator.from_label("III")) == 1

    def test_size_mismatch_rejected(self):
        """Operators must act on as many qubits as the tableau holds."""
        with pytest.raises(QubitIndexError):
            expectation_pauli(new_tableau(2), PauliOperator.from_label("Z"))


class TestLayers:
    """Tests for the batched channel, CNOT and measurement layers."""

    @staticmethod
    def _scrambled(rng, n):
        tableau = new_tableau(n)
        for _ in range(40):
            name, qubits = _random_gate(rng, n)
            if name == "cnot":
                tableau.cnot(*qubits)
            else:
                _TABLEAU_GATES[name](tableau, *qubits)
        return tableau

    @staticmethod
    def _same(first, second):
        assert np.array_equal(first.x, second.x)
        assert np.array_equal(first.z, second.z)
        assert np.array_equal(first.r, second.r)

    def test_channels_match_single_gates(self, rng):
        """Each kind equals I, X, sqrt_x, or sqrt_x followed by X."""
        for _ in range(100):
            n = int(rng.integers(1, 7))
            layered = self._scrambled(rng, n)
            single = layered.copy()
            qubits = rng.integers(0, n, size=int(rng.integers(0, 10)))
            kinds = rng.integers(0, 4, size=qubits.size)
            layered.apply_channels(qubits, kinds)
            for q, kind in zip(qubits.tolist(), kinds.tolist()):
                if kind in (2, 3):
                    single.sqrt_x(q)
                if kind in (1, 3):
                    single.x_gate(q)
            self._same(layered, single)

    def test_cnot_pairs_match_single_gates(self, rng):
        """A CNOT layer equals the same CNOTs applied one at a time."""
        for _ in range(100):
            n = int(rng.integers(2, 7))
            layered = self._scrambled(rng, n)
            single = layered.copy()
            pairs = [
                rng.choice(n, size=2, replace=False)
                for _ in range(int(rng.integers(0, 10)))
            ]
            controls = np.array([int(c) for c, _ in pairs], dtype=np.int64)
            targets = np.array([int(t) for _, t in pairs], dtype=np.int64)
            layered.cnot_pairs(controls, targets)
            for c, t in zip(controls.tolist(), targets.tolist()):
                single.cnot(c, t)
            self._same(layered, single)
            assert layered.is_valid()

    def test_measure_many_against_dense(self, rng):
        """Deterministic outcomes match the state; random ones take the given bit."""
        for _ in range(100):
            n = 4
            tableau = new_tableau(n)
            state = DenseState(n)
            for _ in range(20):
                _apply_both(tableau, state, *_random_gate(rng, n))
            qubits = rng.integers(0, n, size=6)
            bits = rng.integers(0, 2, size=6).astype(np.uint8)
            probabilities = []
            outcomes = tableau.copy().measure_many(qubits, bits)
            for q, outcome in zip(qubits.tolist(), outcomes.tolist()):
                probabilities.append(dense_probability_one(state, q))
                dense_measure_z(state, q, -1 if outcome else 1)
            for p_one, outcome, bit in zip(probabilities, outcomes, bits):
                if p_one == pytest.approx(0.5):
                    assert outcome == bit
                else:
                    assert p_one == pytest.approx(float(outcome))

    def test_measure_many_projects(self, rng):
        """After a layer every measured qubit reads back its outcome."""
        tableau = new_tableau(3).h(0).cnot(0, 1).sqrt_x(2)
        qubits = np.array([0, 1, 2])
        outcomes = tableau.measure_many(qubits, np.array([1, 0, 0], dtype=np.uint8))
        assert outcomes.tolist() == [1, 1, 0]
        for q, outcome in zip(qubits.tolist(), outcomes.tolist()):
            assert tableau.measure_z(q, rng) == ((-1 if outcome else 1), True)

    def test_empty_layers(self):
        """Empty layers leave the tableau untouched."""
        tableau = new_tableau(2).h(0)
        before = tableau.copy()
        empty = np.zeros(0, dtype=np.int64)
        tableau.apply_channels(empty, empty).cnot_pairs(empty, empty)
        assert tableau.measure_many(empty, np.zeros(0, dtype=np.uint8)).size == 0
        self._same(tableau, before)

    @pytest.mark.parametrize(
        "call",
        [
            lambda t: t.apply_channels([0, 3], [1, 1]),
            lambda t: t.apply_channels([0, 1], [1]),
            lambda t: t.cnot_pairs([0], [-1]),
            lambda t: t.cnot_pairs([1], [1]),
            lambda t: t.measure_many([5], [0]),
        ],
    )
    def test_invalid_arguments(self, call):
        """Out-of-range qubits, coinciding CNOT qubits and shape mismatches."""
        with pytest.raises((QubitIndexError, ValueError)):
            call(new_tableau(3))


class TestDenseAgreement:
    """Random circuits checked against the dense state-vector oracle."""

    def test_random_circuits(self, rng):
        """Expectations agree exactly on 1000 random circuits."""
        for _ in range(1000):
            n = int(rng.integers(1, 5))
            tableau = new_tableau(n)
            state = DenseState(n)
            for _ in range(int(rng.integers(1, 30))):
                _apply_both(tableau, state, *_random_gate(rng, n))
            pauli = _random_pauli(rng, n)
            assert tableau.expectation(pauli) == pytest.approx(
                dense_expectation(state, pauli), abs=1e-9
            )

    def test_random_circuits_with_measurement(self, rng):
        """Measurement statistics and post-measurement states agree."""
        for _ in range(200):
            n = 3
            tableau = new_tableau(n)
            state = DenseState(n)
            for _ in range(30):
                if rng.random() < 0.2:
                    q = int(rng.integers(n))
                    p_one = dense_probability_one(state, q)
                    outcome, deterministic = tableau.measure_z(q, rng)
                    if deterministic:
                        assert p_one == pytest.approx(0.0 if outcome == 1 else 1.0)
                    else:
                        assert p_one == pytest.approx(0.5)
                    dense_measure_z(state, q, outcome)
                else:
                    _apply_both(tableau, state, *_random_gate(rng, n))
            for label in ("ZII", "IZI", "IIZ", "XXI", "YZX", "ZZZ"):
                pauli = PauliOperator.from_label(label)
                assert tableau.expectation(pauli) == pytest.approx(
                    dense_expectation(state, pauli), abs=1e-9
                )
            assert state.norm() == pytest.approx(1.0, abs=1e-10)
