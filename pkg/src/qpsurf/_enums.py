"""Enums shared across qpsurf modules."""

from __future__ import annotations

__author__ = "Artur Barseghyan <artur.barseghyan@gmail.com>"
__copyright__ = "2026 Artur Barseghyan"
__license__ = "MIT"
__all__ = (
    "ChannelTag",
    "DecompositionStrategy",
    "NoiseModel",
    "OutputFormat",
)

from enum import Enum


class NoiseModel(Enum):
    """Where the noise channel is applied.

    ``CODE_CAPACITY``
        One noise layer on the data qubits, then a single perfect round of
        syndrome extraction.
    ``PHENOMENOLOGICAL``
        Noise on the data qubits in each of ``d`` rounds and on the
        measurement qubits before readout in the first ``d - 1`` rounds.
        The final round is perfect.
    """

    CODE_CAPACITY = "code"
    PHENOMENOLOGICAL = "pheno"


class ChannelTag(Enum):
    """The four single-qubit Clifford channels the noise is decomposed over.

    ``IDENTITY``     ``[I]``
    ``FLIP_X``       ``[X]``
    ``SQRT_X``       ``[exp(-i pi/4 X)]``
    ``FLIP_X_SQRT_X`` ``[X exp(-i pi/4 X)]``
    """

    IDENTITY = "I"
    FLIP_X = "X"
    SQRT_X = "V"
    FLIP_X_SQRT_X = "XV"


class DecompositionStrategy(Enum):
    """How the coherent noise channel is split into Clifford channels.

    ``JOINT``
        Decompose the composite channel as a whole.  *(default)*
    ``SEPARATE``
        Decompose the over-rotation and the bit-flip individually; only
        used to compare sampling overheads.
    """

    JOINT = "joint"
    SEPARATE = "separate"


class OutputFormat(Enum):
    """Result file format written by the CLI."""

    JSONL = "jsonl"
    CSV = "csv"
