"""Stabilizer tableau simulation (CHP form with destabilizers).

A tableau over ``n`` qubits holds ``2n`` Hermitian Pauli rows: rows
``0..n-1`` are destabilizers and rows ``n..2n-1`` are stabilizers.  Each
row is a pair of bit vectors ``(x, z)`` plus a sign bit ``r`` (``0`` for
``+1``, ``1`` for ``-1``); the pair ``x=1, z=1`` on a qubit stands for
``Y``.  Bit vectors are stored as ``numpy.uint8`` arrays.  Single gates are
vectorised column operations; channel layers, CNOT fan-ins, measurements
and expectation values run in the compiled kernels of :mod:`qpsurf._kernels`.
"""

from __future__ import annotations

__author__ = "Artur Barseghyan <artur.barseghyan@gmail.com>"
__copyright__ = "2026 Artur Barseghyan"
__license__ = "MIT"
__all__ = (
    "PauliOperator",
    "StabilizerTableau",
    "apply_cnot",
    "apply_h",
    "apply_s",
    "apply_sqrt_x",
    "apply_x",
    "apply_z",
    "expectation_pauli",
    "measure_z",
    "new_tableau",
)

from collections.abc import Iterable

import numpy as np

from qpsurf import _kernels
from qpsurf._exceptions import QubitIndexError

_LETTERS = {"I": (0, 0), "X": (1, 0), "Z": (0, 1), "Y": (1, 1)}


class PauliOperator:
    """A Hermitian ``n``-qubit Pauli operator with sign ``+1`` or ``-1``.

    :param x_bits: X component, length ``n``.
    :param z_bits: Z component, length ``n``.
    :param phase: ``+1`` or ``-1``.
    :raises QubitIndexError: If the bit vectors differ in length or are
        empty.
    :raises ValueError: If *phase* is not ``+1`` or ``-1``.
    """

    __slots__ = ("x_bits", "z_bits", "phase")

    def __init__(
        self,
        x_bits: Iterable[int] | np.ndarray,
        z_bits: Iterable[int] | np.ndarray,
        phase: int = 1,
    ) -> None:
        x = np.asarray(list(x_bits) if not isinstance(x_bits, np.ndarray) else x_bits)
        z = np.asarray(list(z_bits) if not isinstance(z_bits, np.ndarray) else z_bits)
        if x.ndim != 1 or x.shape != z.shape or x.size == 0:
            raise QubitIndexError(
                f"x_bits and z_bits must be non-empty and of equal length "
                f"(got {x.size} and {z.size})"
            )
        if phase not in (1, -1):
            raise ValueError(f"phase must be +1 or -1, got {phase!r}")
        self.x_bits = (x & 1).astype(np.uint8)
        self.z_bits = (z & 1).astype(np.uint8)
        self.phase = int(phase)

    @property
    def n(self) -> int:
        return int(self.x_bits.size)

    @classmethod
    def from_label(cls, label: str) -> PauliOperator:
        """Build from a label such as ``"+XZI"`` or ``"-YY"``.

        Character ``k`` of the letter part acts on qubit ``k``.
        """
        phase = 1
        if label[:1] in ("+", "-"):
            phase = -1 if label[0] == "-" else 1
            label = label[1:]
        try:
            bits = [_LETTERS[ch] for ch in label.upper()]
        except KeyError as exc:
            raise ValueError(f"Unknown Pauli letter in {label!r}") from exc
        return cls([b[0] for b in bits], [b[1] for b in bits], phase)

    @classmethod
    def z_on(cls, n: int, qubits: Iterable[int], phase: int = 1) -> PauliOperator:
        """Product of ``Z`` on *qubits* (``n`` qubits overall)."""
        z = np.zeros(n, dtype=np.uint8)
        for q in qubits:
            z[q] ^= 1
        return cls(np.zeros(n, dtype=np.uint8), z, phase)

    @classmethod
    def x_on(cls, n: int, qubits: Iterable[int], phase: int = 1) -> PauliOperator:
        """Product of ``X`` on *qubits* (``n`` qubits overall)."""
        x = np.zeros(n, dtype=np.uint8)
        for q in qubits:
            x[q] ^= 1
        return cls(x, np.zeros(n, dtype=np.uint8), phase)

    def commutes_with(self, other: PauliOperator) -> bool:
        """Return ``True`` iff the symplectic inner product is zero."""
        if other.n != self.n:
            raise QubitIndexError(
                f"Qubit count mismatch: {self.n} vs {other.n}"
            )
        product = (self.x_bits & other.z_bits) ^ (self.z_bits & other.x_bits)
        return int(product.sum()) % 2 == 0

    def label(self) -> str:
        letters = "IXZY"
        body = "".join(
            letters[int(x) + 2 * int(z)] for x, z in zip(self.x_bits, self.z_bits)
        )
        return ("+" if self.phase == 1 else "-") + body

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PauliOperator):
            return NotImplemented
        return (
            self.phase == other.phase
            and np.array_equal(self.x_bits, other.x_bits)
            and np.array_equal(self.z_bits, other.z_bits)
        )

    def __hash__(self) -> int:
        return hash(self.label())

    def __repr__(self) -> str:
        return f"PauliOperator({self.label()!r})"


class StabilizerTableau:
    """Mutable stabilizer state over ``n`` qubits, initialised to ``|0...0>``.

    A tableau is owned by a single worker; it is never shared.

    :param n: Number of qubits.
    :raises QubitIndexError: If ``n < 1``.
    """

    __slots__ = ("n", "x", "z", "r")

    def __init__(self, n: int) -> None:
        if n < 1:
            raise QubitIndexError(f"A tableau needs at least one qubit, got {n}")
        self.n = n
        eye = np.eye(n, dtype=np.uint8)
        zero = np.zeros((n, n), dtype=np.uint8)
        # Destabilizer i is X_i, stabilizer i is Z_i.
        self.x = np.concatenate([eye, zero])
        self.z = np.concatenate([zero, eye.copy()])
        self.r = np.zeros(2 * n, dtype=np.uint8)

    # ---- helpers -----------------------------------------------------------

    def _check(self, q: int) -> None:
        if not 0 <= q < self.n:
            raise QubitIndexError(f"Qubit index {q} out of range [0, {self.n})")

    def copy(self) -> StabilizerTableau:
        clone = StabilizerTableau.__new__(StabilizerTableau)
        clone.n = self.n
        clone.x = self.x.copy()
        clone.z = self.z.copy()
        clone.r = self.r.copy()
        return clone

    def row(self, i: int) -> PauliOperator:
        return PauliOperator(self.x[i], self.z[i], -1 if self.r[i] else 1)

    def stabilizers(self) -> list[PauliOperator]:
        return [self.row(i) for i in range(self.n, 2 * self.n)]

    def destabilizers(self) -> list[PauliOperator]:
        return [self.row(i) for i in range(self.n)]

    def commutation_matrix(self) -> np.ndarray:
        """Symplectic inner products of all row pairs, ``(2n, 2n)`` over GF(2)."""
        x = self.x.astype(np.int64)
        z = self.z.astype(np.int64)
        return ((x @ z.T) + (z @ x.T)) % 2

    def is_valid(self) -> bool:
        """Check the destabilizer/stabilizer commutation structure.

        Stabilizers commute pairwise, destabilizers commute pairwise, and
        destabilizer ``i`` anticommutes with stabilizer ``j`` iff ``i == j``.
        """
        n = self.n
        expected = np.zeros((2 * n, 2 * n), dtype=np.int64)
        idx = np.arange(n)
        expected[idx, idx + n] = 1
        expected[idx + n, idx] = 1
        return bool(np.array_equal(self.commutation_matrix(), expected))

    # ---- Clifford gates ----------------------------------------------------

    def h(self, q: int) -> StabilizerTableau:
        self._check(q)
        xq = self.x[:, q].copy()
        zq = self.z[:, q]
        self.r ^= xq & zq
        self.x[:, q] = zq
        self.z[:, q] = xq
        return self

    def s(self, q: int) -> StabilizerTableau:
        self._check(q)
        xq = self.x[:, q]
        self.r ^= xq & self.z[:, q]
        self.z[:, q] ^= xq
        return self

    def x_gate(self, q: int) -> StabilizerTableau:
        self._check(q)
        self.r ^= self.z[:, q]
        return self

    def z_gate(self, q: int) -> StabilizerTableau:
        self._check(q)
        self.r ^= self.x[:, q]
        return self

    def sqrt_x(self, q: int) -> StabilizerTableau:
        """Conjugate by ``exp(-i pi/4 X)``: ``Z -> -Y``, ``Y -> Z``, ``X -> X``.

        Identical to ``h``, ``s``, ``h`` in sequence.
        """
        self._check(q)
        xq = self.x[:, q]
        zq = self.z[:, q]
        self.r ^= zq & (1 - xq)
        self.x[:, q] = xq ^ zq
        return self

    def cnot(self, control: int, target: int) -> StabilizerTableau:
        self._check(control)
        self._check(target)
        if control == target:
            raise QubitIndexError(f"CNOT control and target are both {control}")
        xa = self.x[:, control]
        za = self.z[:, control]
        xb = self.x[:, target]
        zb = self.z[:, target]
        self.r ^= xa & zb & (xb ^ za ^ 1)
        self.x[:, target] = xb ^ xa
        self.z[:, control] = za ^ zb
        return self

    # ---- layers ------------------------------------------------------------

    def _check_many(self, qubits: np.ndarray) -> None:
        if qubits.size and (qubits.min() < 0 or qubits.max() >= self.n):
            raise QubitIndexError(
                f"Qubit indices must lie in [0, {self.n}), got "
                f"{int(qubits.min())}..{int(qubits.max())}"
            )

    def apply_channels(
        self, qubits: np.ndarray, kinds: np.ndarray
    ) -> StabilizerTableau:
        """Apply one Clifford channel per qubit, in order.

        ``kinds[a]`` selects the channel on ``qubits[a]``: ``0`` identity,
        ``1`` X, ``2`` ``sqrt_x`` and ``3`` ``sqrt_x`` followed by X.
        """
        qubits = np.asarray(qubits, dtype=np.int64)
        kinds = np.asarray(kinds, dtype=np.int64)
        if qubits.shape != kinds.shape:
            raise ValueError("qubits and kinds must have the same shape")
        self._check_many(qubits)
        _kernels.apply_channels(self.x, self.z, self.r, qubits, kinds)
        return self

    def cnot_pairs(
        self, controls: np.ndarray, targets: np.ndarray
    ) -> StabilizerTableau:
        """Apply ``cnot(controls[a], targets[a])`` for every *a*, in order."""
        controls = np.asarray(controls, dtype=np.int64)
        targets = np.asarray(targets, dtype=np.int64)
        if controls.shape != targets.shape:
            raise ValueError("controls and targets must have the same shape")
        self._check_many(controls)
        self._check_many(targets)
        if np.any(controls == targets):
            raise QubitIndexError("CNOT control and target coincide")
        _kernels.cnot_pairs(self.x, self.z, self.r, controls, targets)
        return self

    # ---- measurement -------------------------------------------------------

    def measure_z(self, q: int, rng: np.random.Generator) -> tuple[int, bool]:
        """Measure qubit *q* in the Z basis.

        :returns: ``(outcome, deterministic)`` where ``outcome`` is ``+1``
            or ``-1``.  A random outcome is drawn uniformly from *rng* and
            the tableau is projected onto it.
        """
        self._check(q)
        bit = int(rng.integers(0, 2)) if self.x[self.n :, q].any() else 0
        outcome, deterministic = _kernels.measure(self.x, self.z, self.r, q, bit)
        return (-1 if outcome else 1), bool(deterministic)

    def measure_many(self, qubits: np.ndarray, bits: np.ndarray) -> np.ndarray:
        """Measure *qubits* in the Z basis, in order.

        ``bits[a]`` is the outcome bit taken when measurement *a* is random;
        deterministic measurements ignore it.

        :returns: ``uint8`` outcome bits (``1`` for ``-1``).
        """
        qubits = np.asarray(qubits, dtype=np.int64)
        bits = np.asarray(bits, dtype=np.uint8)
        if qubits.shape != bits.shape:
            raise ValueError("qubits and bits must have the same shape")
        self._check_many(qubits)
        out = np.zeros(qubits.size, dtype=np.uint8)
        _kernels.measure_many(self.x, self.z, self.r, qubits, bits, out)
        return out

    def expectation(self, pauli: PauliOperator) -> int:
        """Return ``<P>`` on the current state: ``-1``, ``0`` or ``+1``."""
        if pauli.n != self.n:
            raise QubitIndexError(
                f"Pauli acts on {pauli.n} qubits, tableau has {self.n}"
            )
        value = _kernels.expectation(
            self.x, self.z, self.r, pauli.x_bits, pauli.z_bits
        )
        return int(value) * pauli.phase

    def __repr__(self) -> str:
        stabs = ", ".join(p.label() for p in self.stabilizers())
        return f"StabilizerTableau(n={self.n}, stabilizers=[{stabs}])"


# ---- functional interface ----------------------------------------------------


def new_tableau(n: int) -> StabilizerTableau:
    """Return a tableau for ``|0...0>`` on *n* qubits."""
    return StabilizerTableau(n)


def apply_h(tableau: StabilizerTableau, q: int) -> StabilizerTableau:
    return tableau.h(q)


def apply_s(tableau: StabilizerTableau, q: int) -> StabilizerTableau:
    return tableau.s(q)


def apply_x(tableau: StabilizerTableau, q: int) -> StabilizerTableau:
    return tableau.x_gate(q)


def apply_z(tableau: StabilizerTableau, q: int) -> StabilizerTableau:
    return tableau.z_gate(q)


def apply_sqrt_x(tableau: StabilizerTableau, q: int) -> StabilizerTableau:
    return tableau.sqrt_x(q)


def apply_cnot(
    tableau: StabilizerTableau, control: int, target: int
) -> StabilizerTableau:
    return tableau.cnot(control, target)


def measure_z(
    tableau: StabilizerTableau, q: int, rng: np.random.Generator
) -> tuple[int, bool]:
    return tableau.measure_z(q, rng)


def expectation_pauli(tableau: StabilizerTableau, pauli: PauliOperator) -> int:
    return tableau.expectation(pauli)
