"""Exception hierarchy for qpsurf.

All exceptions inherit from ``QpsurfError`` so callers can catch the
package's entire error surface with a single ``except`` clause.
"""

from __future__ import annotations

__author__ = "Artur Barseghyan <artur.barseghyan@gmail.com>"
__copyright__ = "2026 Artur Barseghyan"
__license__ = "MIT"
__all__ = (
    "QpsurfError",
    "InvalidNoiseParamsError",
    "InvalidDistanceError",
    "QubitIndexError",
    "InvalidAccuracyError",
    "InfeasibleBudgetError",
    "InvalidRunConfigError",
    "SyndromeClearanceError",
    "SweepFileError",
)


class QpsurfError(Exception):
    """Base exception for all qpsurf errors."""


class InvalidNoiseParamsError(QpsurfError, ValueError):
    """Noise parameters leave the supported domain.

    Raised when the bit-flip probability ``p`` is outside ``[0, 1/2)`` or
    the noise coherence ``r`` is outside ``[0, 1]``.
    """


class InvalidDistanceError(QpsurfError, ValueError):
    """The code distance is not an odd integer in ``[3, 13]``."""


class QubitIndexError(QpsurfError, IndexError):
    """A qubit index is out of range or an operand is malformed.

    Raised for out-of-range indices, a CNOT whose control equals its
    target, zero-qubit tableaus and Pauli operators whose qubit count does
    not match the tableau.
    """


class InvalidAccuracyError(QpsurfError, ValueError):
    """``epsilon``/``delta`` outside ``(0, 1)`` or ``r_tot`` below 1."""


class InfeasibleBudgetError(QpsurfError):
    """The planned sample count exceeds ``2**63 - 1``.

    Reported before any sampling work starts.
    """


class SyndromeClearanceError(QpsurfError):
    """The recovery operator failed to clear the final-round syndrome.

    This is an internal invariant violation; the sample batch is aborted.
    """


class InvalidRunConfigError(QpsurfError, ValueError):
    """A run configuration has a non-positive sample count or worker count,
    or a seed outside ``[0, 2**64)``."""


class SweepFileError(QpsurfError, ValueError):
    """A sweep declaration file is malformed."""
