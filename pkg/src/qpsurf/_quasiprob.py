"""Quasi-probability decomposition of the coherent noise channel.

The noise channel is an over-rotation ``[exp(i r theta X)]`` followed by a
bit-flip ``(1 - p)[I] + p[X]``, with ``theta = arcsin(sqrt(p))``.  It is
written as a signed combination of four Clifford channels:

.. code-block:: text

    N_coh = c_I [I] + c_X [X] + c_V [V] + c_XV [X V],   V = exp(-i pi/4 X)

All five channels leave ``X`` fixed and act on the ``(Y, Z)`` plane of the
Pauli transfer matrix (PTM), so the decomposition reduces to three linear
equations in four unknowns.  The L1-minimal solution is available in closed
form, which keeps runtime free of any LP solver.
"""

from __future__ import annotations

__author__ = "Artur Barseghyan <artur.barseghyan@gmail.com>"
__copyright__ = "2026 Artur Barseghyan"
__license__ = "MIT"
__all__ = (
    "CHANNEL_ORDER",
    "INT63_MAX",
    "CostEstimate",
    "NoiseParams",
    "QuasiDecomposition",
    "cost",
    "decompose",
    "location_count",
    "ptm",
    "robustness",
    "robustness_grid",
    "sample_channel",
    "sample_channels",
    "scaling_table",
)

import math
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from types import MappingProxyType

import numpy as np

from qpsurf._code import build_layout
from qpsurf._enums import ChannelTag, DecompositionStrategy, NoiseModel
from qpsurf._exceptions import InvalidAccuracyError, InvalidNoiseParamsError

CHANNEL_ORDER: tuple[ChannelTag, ...] = (
    ChannelTag.IDENTITY,
    ChannelTag.FLIP_X,
    ChannelTag.SQRT_X,
    ChannelTag.FLIP_X_SQRT_X,
)

INT63_MAX = 2**63 - 1
_LN_INT63_MAX = math.log(INT63_MAX)

# Distance from the R = 1 curve treated as on it.
_BOUNDARY_TOL = 1e-12


@dataclass(frozen=True, slots=True)
class NoiseParams:
    """Bit-flip probability *p* and noise coherence *r*.

    :raises InvalidNoiseParamsError: If ``p`` is outside ``[0, 1/2)`` or
        ``r`` is outside ``[0, 1]``.
    """

    p: float
    r: float

    def __post_init__(self) -> None:
        for name in ("p", "r"):
            value = getattr(self, name)
            if not isinstance(value, (int, float)) or isinstance(value, bool):
                raise InvalidNoiseParamsError(f"{name} must be a real number")
            if math.isnan(value):
                raise InvalidNoiseParamsError(f"{name} must not be NaN")
        if not 0.0 <= self.p < 0.5:
            raise InvalidNoiseParamsError(
                f"Bit-flip probability p must lie in [0, 0.5), got {self.p}"
            )
        if not 0.0 <= self.r <= 1.0:
            raise InvalidNoiseParamsError(
                f"Noise coherence r must lie in [0, 1], got {self.r}"
            )

    @property
    def theta(self) -> float:
        """Rotation scale with ``sin(theta)**2 == p``."""
        return math.asin(math.sqrt(self.p))

    @property
    def alpha(self) -> float:
        """Over-rotation angle ``r * theta``."""
        return self.r * self.theta

    def yz_components(self) -> tuple[float, float]:
        """Return ``(u, v)``, the diagonal and off-diagonal (Y, Z) PTM entries."""
        shrink = 1.0 - 2.0 * self.p
        two_alpha = 2.0 * self.alpha
        return shrink * math.cos(two_alpha), shrink * math.sin(two_alpha)


@dataclass(frozen=True)
class QuasiDecomposition:
    """Signed coefficients over :data:`CHANNEL_ORDER` and their sampling data."""

    params: NoiseParams
    coeffs: Mapping[ChannelTag, float]
    robustness: float
    probs: Mapping[ChannelTag, float]
    signs: Mapping[ChannelTag, int]
    prob_vector: np.ndarray = field(compare=False, repr=False)
    sign_vector: np.ndarray = field(compare=False, repr=False)

    @property
    def log_robustness(self) -> float:
        return math.log(self.robustness)

    @property
    def has_negative(self) -> bool:
        return any(c < 0 for c in self.coeffs.values())


@dataclass(frozen=True, slots=True)
class CostEstimate:
    """Sampling cost of one configuration.

    ``r_tot_squared`` is ``inf`` when it overflows a float; ``log10`` is
    always finite.  ``samples_m`` is ``None`` when the budget exceeds
    ``2**63 - 1`` (``feasible`` is then ``False``).
    """

    model: NoiseModel
    d: int
    locations: int
    log_robustness: float
    log10_r_tot_squared: float
    r_tot_squared: float
    samples_m: int | None
    feasible: bool

    @property
    def r_tot(self) -> float:
        try:
            return math.exp(self.locations * self.log_robustness)
        except OverflowError:
            return math.inf


# ---- decomposition -----------------------------------------------------------


def _coefficients(u: float, v: float) -> tuple[float, float, float, float]:
    """L1-minimal ``(c_I, c_X, c_V, c_XV)`` for PTM components ``(u, v)``.

    Constraints: ``c_I + c_X + c_V + c_XV = 1``, ``c_I - c_X = u`` and
    ``c_XV - c_V = v`` (``[V]`` maps ``Z -> -Y``, ``[XV]`` maps ``Z -> Y``).
    """
    a = abs(v)
    if u + a <= 1.0 + _BOUNDARY_TOL:
        c_x = (1.0 - u - a) / 2.0
        if c_x <= _BOUNDARY_TOL:
            c_x = 0.0
        c_i = c_x + u
        if v >= 0:
            return c_i, c_x, 0.0, v
        return c_i, c_x, a, 0.0
    big = (1.0 - u + a) / 2.0
    small = (1.0 - u - a) / 2.0
    if v >= 0:
        return u, 0.0, small, big
    return u, 0.0, big, small


def _build(
    params: NoiseParams, coeffs: Sequence[float], weight: float
) -> QuasiDecomposition:
    values = np.asarray(coeffs, dtype=float)
    prob_vector = np.abs(values) / np.abs(values).sum()
    sign_vector = np.where(values < 0, -1, 1).astype(np.int8)
    prob_vector.setflags(write=False)
    sign_vector.setflags(write=False)
    return QuasiDecomposition(
        params=params,
        coeffs=MappingProxyType(dict(zip(CHANNEL_ORDER, map(float, values)))),
        robustness=weight,
        probs=MappingProxyType(dict(zip(CHANNEL_ORDER, map(float, prob_vector)))),
        signs=MappingProxyType(dict(zip(CHANNEL_ORDER, map(int, sign_vector)))),
        prob_vector=prob_vector,
        sign_vector=sign_vector,
    )


def decompose(params: NoiseParams) -> QuasiDecomposition:
    """Return the L1-minimal decomposition of the noise channel at *params*.

    When ``u + |v| <= 1`` every coefficient is nonnegative and the
    robustness is exactly 1; otherwise it is ``u + |v|``.  On the curve
    ``u + |v| = 1`` (to within ``1e-12``) the X-flip coefficient is exactly
    zero.
    """
    u, v = params.yz_components()
    return _build(params, _coefficients(u, v), _joint_robustness(u, v))


def _joint_robustness(u: float, v: float) -> float:
    total = u + abs(v)
    return 1.0 if total <= 1.0 + _BOUNDARY_TOL else total


def _rotation_only_robustness(params: NoiseParams) -> float:
    two_alpha = 2.0 * params.alpha
    return math.cos(two_alpha) + abs(math.sin(two_alpha))


def robustness(
    params: NoiseParams,
    strategy: DecompositionStrategy = DecompositionStrategy.JOINT,
) -> float:
    """Channel robustness ``R`` of the noise at *params*.

    ``JOINT`` decomposes the composite channel; ``SEPARATE`` multiplies the
    robustness of the over-rotation (``cos 2a + |sin 2a|``) with that of the
    bit-flip (always 1).
    """
    if strategy is DecompositionStrategy.SEPARATE:
        return _rotation_only_robustness(params)
    return _joint_robustness(*params.yz_components())


def robustness_grid(
    p_values: Iterable[float],
    r_values: Iterable[float],
    strategy: DecompositionStrategy = DecompositionStrategy.JOINT,
) -> np.ndarray:
    """Matrix of robustness values, one row per *p* and one column per *r*."""
    ps = list(p_values)
    rs = list(r_values)
    grid = np.empty((len(ps), len(rs)))
    for i, p in enumerate(ps):
        for j, r in enumerate(rs):
            grid[i, j] = robustness(NoiseParams(p=p, r=r), strategy)
    return grid


# ---- sampling ----------------------------------------------------------------


def sample_channel(
    decomp: QuasiDecomposition, rng: np.random.Generator
) -> tuple[ChannelTag, int]:
    """Draw one channel with probability ``|c_k| / R``; return it and its sign."""
    k = int(rng.choice(4, p=decomp.prob_vector))
    return CHANNEL_ORDER[k], int(decomp.sign_vector[k])


def sample_channels(
    decomp: QuasiDecomposition, rng: np.random.Generator, size: int
) -> tuple[np.ndarray, int]:
    """Draw *size* channel indices (into :data:`CHANNEL_ORDER`) at once.

    :returns: ``(indices, lam)`` where ``lam`` is the product of the signs.
    """
    if size == 0:
        return np.zeros(0, dtype=np.int64), 1
    cdf = np.cumsum(decomp.prob_vector)
    cdf[-1] = 1.0
    indices = np.searchsorted(cdf, rng.random(size), side="right")
    indices = np.minimum(indices, 3)
    negatives = int((decomp.sign_vector[indices] < 0).sum())
    return indices, (-1 if negatives % 2 else 1)


# ---- Pauli transfer matrices -------------------------------------------------

_TAG_PTM: dict[ChannelTag, np.ndarray] = {
    ChannelTag.IDENTITY: np.diag([1.0, 1.0, 1.0, 1.0]),
    ChannelTag.FLIP_X: np.diag([1.0, 1.0, -1.0, -1.0]),
    # exp(-i pi/4 X): Y -> Z, Z -> -Y.
    ChannelTag.SQRT_X: np.array(
        [
            [1.0, 0.0, 0.0, 0.0],
            [0.0, 1.0, 0.0, 0.0],
            [0.0, 0.0, 0.0, -1.0],
            [0.0, 0.0, 1.0, 0.0],
        ]
    ),
    ChannelTag.FLIP_X_SQRT_X: np.array(
        [
            [1.0, 0.0, 0.0, 0.0],
            [0.0, 1.0, 0.0, 0.0],
            [0.0, 0.0, 0.0, 1.0],
            [0.0, 0.0, -1.0, 0.0],
        ]
    ),
}


def ptm(channel: ChannelTag | NoiseParams) -> np.ndarray:
    """Pauli transfer matrix in the ``(I, X, Y, Z)`` basis.

    ``R[i, j] = Tr(P_i N(P_j)) / 2``.
    """
    if isinstance(channel, ChannelTag):
        return _TAG_PTM[channel].copy()
    u, v = channel.yz_components()
    out = np.eye(4)
    out[2, 2] = u
    out[2, 3] = v
    out[3, 2] = -v
    out[3, 3] = u
    return out


# ---- cost --------------------------------------------------------------------


def location_count(model: NoiseModel, d: int) -> int:
    """Number of noisy channel applications per sample."""
    layout = build_layout(d)
    if model is NoiseModel.CODE_CAPACITY:
        return layout.n_data
    return d * layout.n_data + (d - 1) * layout.n_checks


def _validate_accuracy(epsilon: float, delta: float) -> None:
    if not 0.0 < epsilon < 1.0:
        raise InvalidAccuracyError(f"epsilon must lie in (0, 1), got {epsilon}")
    if not 0.0 < delta < 1.0:
        raise InvalidAccuracyError(f"delta must lie in (0, 1), got {delta}")


def _samples_from_log(
    log_r_tot_squared: float, epsilon: float, delta: float
) -> int | None:
    """Hoeffding sample count from ``ln(R_tot**2)``; ``None`` if it overflows."""
    log_m = math.log(2.0 / epsilon**2) + log_r_tot_squared + math.log(
        math.log(2.0 / delta)
    )
    if log_m > _LN_INT63_MAX:
        return None
    m = math.ceil(
        (2.0 / epsilon**2) * math.exp(log_r_tot_squared) * math.log(2.0 / delta)
    )
    return m if m <= INT63_MAX else None


def cost(
    model: NoiseModel,
    d: int,
    params: NoiseParams,
    epsilon: float,
    delta: float,
    strategy: DecompositionStrategy = DecompositionStrategy.JOINT,
) -> CostEstimate:
    """Sampling cost of estimating ``p_L`` within *epsilon* w.p. ``1 - delta``.

    All arithmetic runs in log space; nothing overflows for ``d <= 13``.
    """
    _validate_accuracy(epsilon, delta)
    locations = location_count(model, d)
    log_r = math.log(robustness(params, strategy))
    log_r_tot_squared = 2.0 * locations * log_r
    samples = _samples_from_log(log_r_tot_squared, epsilon, delta)
    try:
        r_tot_squared = math.exp(log_r_tot_squared)
    except OverflowError:
        r_tot_squared = math.inf
    return CostEstimate(
        model=model,
        d=d,
        locations=locations,
        log_robustness=log_r,
        log10_r_tot_squared=log_r_tot_squared / math.log(10.0),
        r_tot_squared=r_tot_squared,
        samples_m=samples,
        feasible=samples is not None,
    )


def scaling_table(
    model: NoiseModel,
    distances: Iterable[int],
    params: NoiseParams,
    epsilon: float,
    delta: float,
    strategy: DecompositionStrategy = DecompositionStrategy.JOINT,
) -> list[CostEstimate]:
    """One :class:`CostEstimate` per distance, in the given order."""
    return [cost(model, d, params, epsilon, delta, strategy) for d in distances]
