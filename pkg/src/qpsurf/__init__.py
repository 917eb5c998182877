"""qpsurf: logical error rates of surface codes under coherent noise.

Quasi-probability sampling of Clifford circuits.  Python 3.10+.
"""

from __future__ import annotations

__title__ = "qpsurf"
__version__ = "0.1.0"
__author__ = "Artur Barseghyan <artur.barseghyan@gmail.com>"
__copyright__ = "2026 Artur Barseghyan"
__license__ = "MIT"

from qpsurf._code import CodeLayout, build_layout, syndrome_of_x_pattern
from qpsurf._enums import (
    ChannelTag,
    DecompositionStrategy,
    NoiseModel,
    OutputFormat,
)
from qpsurf._exceptions import (
    InfeasibleBudgetError,
    InvalidAccuracyError,
    InvalidDistanceError,
    InvalidNoiseParamsError,
    InvalidRunConfigError,
    QpsurfError,
    QubitIndexError,
    SweepFileError,
    SyndromeClearanceError,
)
from qpsurf._quasiprob import (
    NoiseParams,
    cost,
    decompose,
    robustness,
    robustness_grid,
    scaling_table,
)

# The engine pulls in the decoder and networkx; load it on first use.

_LAZY = ("Estimate", "RunConfig", "estimate", "plan_samples")


def __getattr__(name: str) -> object:
    if name in _LAZY:
        from qpsurf import _engine

        for attr in _LAZY:
            globals()[attr] = getattr(_engine, attr)
        return globals()[name]
    raise AttributeError(f"module {__name__!r} has no attribute {name!r}")


__all__ = [
    # Estimation
    "Estimate",
    "RunConfig",
    "estimate",
    "plan_samples",
    # Noise and cost
    "NoiseParams",
    "cost",
    "decompose",
    "robustness",
    "robustness_grid",
    "scaling_table",
    # Lattice
    "CodeLayout",
    "build_layout",
    "syndrome_of_x_pattern",
    # Enums
    "ChannelTag",
    "DecompositionStrategy",
    "NoiseModel",
    "OutputFormat",
    # Exceptions
    "QpsurfError",
    "InvalidNoiseParamsError",
    "InvalidDistanceError",
    "QubitIndexError",
    "InvalidAccuracyError",
    "InvalidRunConfigError",
    "InfeasibleBudgetError",
    "SyndromeClearanceError",
    "SweepFileError",
]
