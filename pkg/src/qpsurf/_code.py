"""Planar surface-code lattice.

The distance-``d`` code lives on a ``(2d-1) x (2d-1)`` grid.  Sites with
``row + col`` even hold data qubits; sites with ``row + col`` odd hold
measurement qubits.  Only the Z-type checks (measurement qubits at odd row,
even column) are modelled: the simulation tracks X errors only, and the
X-type checks never influence Z-basis observables.

Conventions:

- logical ``Z`` is ``Z`` on every data qubit of row 0;
- logical ``X`` is ``X`` on every data qubit of column 0;
- the top and bottom rows are the boundaries where X-error chains may end
  without being detected.
"""

from __future__ import annotations

__author__ = "Artur Barseghyan <artur.barseghyan@gmail.com>"
__copyright__ = "2026 Artur Barseghyan"
__license__ = "MIT"
__all__ = (
    "GridCoord",
    "ZCheck",
    "CodeLayout",
    "SUPPORTED_DISTANCES",
    "boundary_distance",
    "build_layout",
    "syndrome_of_x_pattern",
)

import functools
from collections.abc import Iterable
from dataclasses import dataclass, field

import numpy as np

from qpsurf._exceptions import InvalidDistanceError
from qpsurf._tableau import PauliOperator

SUPPORTED_DISTANCES = (3, 5, 7, 9, 11, 13)


@dataclass(frozen=True, slots=True)
class GridCoord:
    """A site of the ``(2d-1) x (2d-1)`` grid."""

    row: int
    col: int

    @property
    def is_data(self) -> bool:
        return (self.row + self.col) % 2 == 0


@dataclass(frozen=True, slots=True)
class ZCheck:
    """A Z-type stabilizer: its measurement-qubit site and data support."""

    coord: GridCoord
    support: tuple[int, ...]


@dataclass(frozen=True)
class CodeLayout:
    """Immutable lattice description for one code distance.

    Safe to share between workers.
    """

    d: int
    data_qubits: tuple[GridCoord, ...]
    z_checks: tuple[ZCheck, ...]
    logical_z_support: tuple[int, ...]
    logical_x_support: tuple[int, ...]
    check_grid_coords: tuple[tuple[int, int], ...]
    """``(row_idx, col_idx)`` of each check, ``row_idx`` in ``[0, d-2]``,
    ``col_idx`` in ``[0, d-1]``."""

    data_index: dict[GridCoord, int] = field(compare=False, repr=False)
    check_matrix: np.ndarray = field(compare=False, repr=False)
    """``(n_checks, n_data)`` parity-check matrix over GF(2)."""

    @property
    def n_data(self) -> int:
        return len(self.data_qubits)

    @property
    def n_checks(self) -> int:
        return len(self.z_checks)

    @property
    def n_qubits(self) -> int:
        """Data qubits plus one measurement qubit per Z-check."""
        return self.n_data + self.n_checks

    @property
    def n_code_qubits(self) -> int:
        """Every site of the grid, X-type measurement qubits included."""
        return (2 * self.d - 1) ** 2

    def data_at(self, row: int, col: int) -> int:
        """Index of the data qubit at grid site ``(row, col)``."""
        return self.data_index[GridCoord(row, col)]

    def check_at(self, row_idx: int, col_idx: int) -> int:
        """Index of the Z-check with check-grid coordinates ``(row_idx, col_idx)``."""
        return row_idx * self.d + col_idx

    def check_pauli(self, check: int, n_qubits: int | None = None) -> PauliOperator:
        return PauliOperator.z_on(
            n_qubits or self.n_data, self.z_checks[check].support
        )

    def logical_z_pauli(self, n_qubits: int | None = None) -> PauliOperator:
        return PauliOperator.z_on(n_qubits or self.n_data, self.logical_z_support)

    def logical_x_pauli(self, n_qubits: int | None = None) -> PauliOperator:
        return PauliOperator.x_on(n_qubits or self.n_data, self.logical_x_support)


def _validate_distance(d: int) -> None:
    if isinstance(d, bool) or not isinstance(d, (int, np.integer)):
        raise InvalidDistanceError(f"Code distance must be an integer, got {d!r}")
    if d not in SUPPORTED_DISTANCES:
        raise InvalidDistanceError(
            f"Code distance must be odd and in {SUPPORTED_DISTANCES}, got {d}"
        )


def build_layout(d: int) -> CodeLayout:
    """Build the planar surface-code layout for distance *d*.

    Layouts are cached; repeated calls return the same object.

    :raises InvalidDistanceError: If *d* is even, below 3 or above 13.
    """
    _validate_distance(d)
    return _build_layout(int(d))


@functools.lru_cache(maxsize=None)
def _build_layout(d: int) -> CodeLayout:
    size = 2 * d - 1

    data_qubits = tuple(
        GridCoord(row, col)
        for row in range(size)
        for col in range(size)
        if (row + col) % 2 == 0
    )
    data_index = {coord: i for i, coord in enumerate(data_qubits)}

    checks: list[ZCheck] = []
    grid_coords: list[tuple[int, int]] = []
    for row in range(1, size, 2):
        for col in range(0, size, 2):
            neighbours = (
                (row - 1, col),
                (row + 1, col),
                (row, col - 1),
                (row, col + 1),
            )
            support = tuple(
                sorted(
                    data_index[GridCoord(r, c)]
                    for r, c in neighbours
                    if 0 <= r < size and 0 <= c < size
                )
            )
            checks.append(ZCheck(GridCoord(row, col), support))
            grid_coords.append(((row - 1) // 2, col // 2))

    matrix = np.zeros((len(checks), len(data_qubits)), dtype=np.uint8)
    for c, check in enumerate(checks):
        matrix[c, list(check.support)] = 1
    matrix.setflags(write=False)

    return CodeLayout(
        d=d,
        data_qubits=data_qubits,
        z_checks=tuple(checks),
        logical_z_support=tuple(data_index[GridCoord(0, c)] for c in range(0, size, 2)),
        logical_x_support=tuple(data_index[GridCoord(r, 0)] for r in range(0, size, 2)),
        check_grid_coords=tuple(grid_coords),
        data_index=data_index,
        check_matrix=matrix,
    )


def syndrome_of_x_pattern(layout: CodeLayout, flips: Iterable[int]) -> np.ndarray:
    """Return the Z-check syndrome (``uint8`` per check) of an X error pattern.

    Indices appearing an even number of times cancel.
    """
    indicator = np.zeros(layout.n_data, dtype=np.int64)
    for q in flips:
        indicator[q] ^= 1
    return ((layout.check_matrix.astype(np.int64) @ indicator) % 2).astype(np.uint8)


def boundary_distance(layout: CodeLayout, check: int) -> int:
    """Fewest X flips connecting *check* to the top or bottom boundary."""
    row_idx, _ = layout.check_grid_coords[check]
    return min(row_idx + 1, (layout.d - 1) - row_idx)
