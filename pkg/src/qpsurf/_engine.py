"""Quasi-probability Monte Carlo estimation of the logical error rate.

Every sample builds one Clifford realisation of the noisy syndrome
extraction circuit, decodes the recorded history, applies the recovery and
evaluates the infidelity exactly on the stabilizer tableau.  The sample
contributes ``R_tot * lambda * F`` to the estimate, where ``lambda`` is the
product of the signs of the drawn channels.

Internally each sample is reduced to the integer ``k = 2 * lambda * F`` in
``{-2, ..., 2}``; workers return exact integer sums of ``k`` and ``k**2``
so the aggregated estimate does not depend on how samples were split.
"""

from __future__ import annotations

__author__ = "Artur Barseghyan <artur.barseghyan@gmail.com>"
__copyright__ = "2026 Artur Barseghyan"
__license__ = "MIT"
__all__ = (
    "Estimate",
    "RunConfig",
    "SampleOutcome",
    "estimate",
    "plan_samples",
    "round_count",
    "run_sample",
    "sample_rng",
    "simulate_rounds",
)

import functools
import logging
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from qpsurf._code import CodeLayout, build_layout
from qpsurf._config import (
    default_check_clearance,
    default_delta,
    default_epsilon,
    default_seed,
    default_workers,
)
from qpsurf._decoder import SyndromeHistory, decode
from qpsurf._enums import NoiseModel
from qpsurf._exceptions import (
    InfeasibleBudgetError,
    InvalidAccuracyError,
    InvalidRunConfigError,
    SyndromeClearanceError,
)
from qpsurf._kernels import KIND_FLIP_X
from qpsurf._quasiprob import (
    INT63_MAX,
    NoiseParams,
    QuasiDecomposition,
    cost,
    decompose,
    location_count,
    sample_channels,
)
from qpsurf._tableau import PauliOperator, StabilizerTableau

log = logging.getLogger("qpsurf.engine")

_SEED_LIMIT = 2**64


@dataclass(frozen=True)
class RunConfig:
    """One estimation run.

    Give either an explicit sample count *samples* or an accuracy pair
    (*epsilon*, *delta*); when neither is given the accuracy pair comes
    from ``QPSURF_EPSILON`` / ``QPSURF_DELTA``.

    :raises InvalidRunConfigError: On a non-positive sample or worker
        count, or a seed outside ``[0, 2**64)``.
    :raises InvalidDistanceError: If *d* is not supported.
    """

    model: NoiseModel
    d: int
    noise: NoiseParams
    samples: int | None = None
    epsilon: float | None = None
    delta: float | None = None
    seed: int = field(default_factory=default_seed)
    workers: int = field(default_factory=default_workers)
    check_clearance: bool = field(default_factory=default_check_clearance)

    def __post_init__(self) -> None:
        build_layout(self.d)
        if self.samples is not None and self.samples < 1:
            raise InvalidRunConfigError(
                f"Sample count must be positive, got {self.samples}"
            )
        if self.workers < 1:
            raise InvalidRunConfigError(
                f"Worker count must be positive, got {self.workers}"
            )
        if not 0 <= self.seed < _SEED_LIMIT:
            raise InvalidRunConfigError(
                f"Seed must lie in [0, 2**64), got {self.seed}"
            )
        if self.samples is None:
            if self.epsilon is None:
                object.__setattr__(self, "epsilon", default_epsilon())
            if self.delta is None:
                object.__setattr__(self, "delta", default_delta())

    @property
    def rounds(self) -> int:
        return round_count(self.model, self.d)

    def resolve_samples(self) -> int:
        """Number of samples to draw.

        :raises InfeasibleBudgetError: If the Hoeffding count for the
            accuracy pair exceeds ``2**63 - 1``.
        """
        if self.samples is not None:
            return self.samples
        assert self.epsilon is not None and self.delta is not None
        planned = cost(self.model, self.d, self.noise, self.epsilon, self.delta)
        if planned.samples_m is None:
            raise InfeasibleBudgetError(
                f"Planned sample count for {self.model.value} d={self.d} "
                f"p={self.noise.p} r={self.noise.r} exceeds 2**63 - 1 "
                f"(log10 R_tot^2 = {planned.log10_r_tot_squared:.1f})"
            )
        return planned.samples_m


@dataclass(frozen=True, slots=True)
class SampleOutcome:
    lam: int
    infidelity: float
    channel_draw_count: int

    @property
    def weight(self) -> int:
        """``2 * lam * infidelity`` as an integer."""
        return int(round(2 * self.lam * self.infidelity))


@dataclass(frozen=True)
class Estimate:
    """Aggregated result of :func:`estimate`."""

    p_l_mean: float
    std_error: float
    n_samples: int
    log_r_tot: float
    wall_time: float

    @property
    def r_tot(self) -> float:
        try:
            return math.exp(self.log_r_tot)
        except OverflowError:
            return math.inf

    @property
    def log10_r_tot(self) -> float:
        return self.log_r_tot / math.log(10.0)


def round_count(model: NoiseModel, d: int) -> int:
    """Syndrome rounds per sample: 1 for code capacity, *d* otherwise."""
    return 1 if model is NoiseModel.CODE_CAPACITY else d


def sample_rng(seed: int, sample_index: int) -> np.random.Generator:
    """Independent stream for one sample, derived from ``(seed, index)``."""
    return np.random.Generator(
        np.random.Philox(np.random.SeedSequence(seed, spawn_key=(sample_index,)))
    )


def plan_samples(epsilon: float, delta: float, r_tot: float) -> int:
    """Hoeffding count ``ceil((2 / eps**2) * r_tot**2 * ln(2 / delta))``.

    :raises InvalidAccuracyError: If *epsilon* or *delta* lies outside
        ``(0, 1)`` or *r_tot* is below 1.
    :raises InfeasibleBudgetError: If the count exceeds ``2**63 - 1``.
    """
    if not 0.0 < epsilon < 1.0:
        raise InvalidAccuracyError(f"epsilon must lie in (0, 1), got {epsilon}")
    if not 0.0 < delta < 1.0:
        raise InvalidAccuracyError(f"delta must lie in (0, 1), got {delta}")
    if not r_tot >= 1.0:
        raise InvalidAccuracyError(f"r_tot must be at least 1, got {r_tot}")
    log_m = (
        math.log(2.0 / epsilon**2)
        + 2.0 * math.log(r_tot)
        + math.log(math.log(2.0 / delta))
    )
    if log_m > math.log(INT63_MAX):
        raise InfeasibleBudgetError(
            f"Sample count exceeds 2**63 - 1 (log10 M = {log_m / math.log(10):.1f})"
        )
    m = math.ceil((2.0 / epsilon**2) * r_tot**2 * math.log(2.0 / delta))
    if m > INT63_MAX:
        raise InfeasibleBudgetError("Sample count exceeds 2**63 - 1")
    return m


# ---- single sample -----------------------------------------------------------


@functools.lru_cache(maxsize=None)
def _observables(d: int) -> tuple[tuple[PauliOperator, ...], PauliOperator]:
    layout = build_layout(d)
    n = layout.n_qubits
    checks = tuple(layout.check_pauli(c, n) for c in range(layout.n_checks))
    return checks, layout.logical_z_pauli(n)


@functools.lru_cache(maxsize=None)
def _fan_in(d: int) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Data qubits, ancillas and the CNOT ``(controls, targets)`` of one round."""
    layout = build_layout(d)
    controls = [q for check in layout.z_checks for q in check.support]
    targets = [
        layout.n_data + c
        for c, check in enumerate(layout.z_checks)
        for _ in check.support
    ]
    return (
        np.arange(layout.n_data, dtype=np.int64),
        np.arange(layout.n_data, layout.n_qubits, dtype=np.int64),
        np.array(controls, dtype=np.int64),
        np.array(targets, dtype=np.int64),
    )


def simulate_rounds(
    config: RunConfig,
    layout: CodeLayout,
    decomp: QuasiDecomposition,
    rng: np.random.Generator,
) -> tuple[StabilizerTableau, np.ndarray, int, int]:
    """Noisy syndrome extraction of one sample, before decoding.

    Draws come from *rng* in a fixed order: every data channel (round by
    round), then every ancilla channel, then the outcome bits used by
    random measurements.

    :returns: ``(tableau, bits, lam, draws)`` with ``bits`` the
        ``(rounds, n_checks)`` outcomes (``1`` for ``-1``).
    """
    rounds = config.rounds
    # The last round is read out perfectly.
    noisy_readouts = rounds - 1 if config.model is NoiseModel.PHENOMENOLOGICAL else 0
    data, ancillas, controls, targets = _fan_in(layout.d)

    data_draws, data_sign = sample_channels(decomp, rng, rounds * layout.n_data)
    ancilla_draws, ancilla_sign = sample_channels(
        decomp, rng, noisy_readouts * layout.n_checks
    )
    random_bits = rng.integers(0, 2, size=(rounds, layout.n_checks), dtype=np.uint8)
    data_draws = data_draws.reshape(rounds, layout.n_data)
    ancilla_draws = ancilla_draws.reshape(noisy_readouts, layout.n_checks)

    tableau = StabilizerTableau(layout.n_qubits)
    bits = np.zeros((rounds, layout.n_checks), dtype=np.uint8)
    for t in range(rounds):
        tableau.apply_channels(data, data_draws[t])
        if t:
            # Ancillas still hold the previous outcomes; flip the -1 ones back.
            tableau.apply_channels(ancillas, bits[t - 1])
        tableau.cnot_pairs(controls, targets)
        if t < noisy_readouts:
            tableau.apply_channels(ancillas, ancilla_draws[t])
        bits[t] = tableau.measure_many(ancillas, random_bits[t])

    return (
        tableau,
        bits,
        data_sign * ancilla_sign,
        data_draws.size + ancilla_draws.size,
    )


def run_sample(
    config: RunConfig,
    layout: CodeLayout,
    decomp: QuasiDecomposition,
    sample_index: int,
) -> SampleOutcome:
    """Simulate, decode and score one signed circuit realisation.

    Deterministic in ``(config.seed, sample_index)``.

    :raises SyndromeClearanceError: If the recovery leaves a nonzero
        syndrome (only checked when ``config.check_clearance`` is set).
    """
    rng = sample_rng(config.seed, sample_index)
    tableau, bits, lam, draws = simulate_rounds(config, layout, decomp, rng)

    recovery = decode(SyndromeHistory(layout.d, config.rounds, bits), layout)
    if recovery.flips:
        flips = np.array(sorted(recovery.flips), dtype=np.int64)
        tableau.apply_channels(flips, np.full(flips.size, KIND_FLIP_X))

    check_paulis, logical_z = _observables(layout.d)
    if config.check_clearance:
        for c, pauli in enumerate(check_paulis):
            if tableau.expectation(pauli) != 1:
                raise SyndromeClearanceError(
                    f"Check {c} not cleared after recovery "
                    f"(sample {sample_index}, seed {config.seed})"
                )

    value = tableau.expectation(logical_z)
    return SampleOutcome(
        lam=lam,
        infidelity=(1 - value) / 2,
        channel_draw_count=draws,
    )


# ---- aggregation -------------------------------------------------------------


@dataclass
class _Accumulator:
    """Exact integer sums of the per-sample weights ``k``."""

    total: int = 0
    total_sq: int = 0
    count: int = 0

    def account(self, k: int) -> None:
        self.total += k
        self.total_sq += k * k
        self.count += 1

    def merge(self, other: tuple[int, int, int]) -> None:
        total, total_sq, count = other
        self.total += total
        self.total_sq += total_sq
        self.count += count

    def as_tuple(self) -> tuple[int, int, int]:
        return self.total, self.total_sq, self.count


def _run_chunk(
    model: str,
    d: int,
    p: float,
    r: float,
    seed: int,
    check_clearance: bool,
    start: int,
    stop: int,
) -> tuple[int, int, int]:
    # Plain arguments keep the call picklable for worker processes.
    config = RunConfig(
        model=NoiseModel(model),
        d=d,
        noise=NoiseParams(p=p, r=r),
        samples=max(1, stop - start),
        seed=seed,
        workers=1,
        check_clearance=check_clearance,
    )
    layout = build_layout(d)
    decomp = decompose(config.noise)
    acc = _Accumulator()
    for index in range(start, stop):
        acc.account(run_sample(config, layout, decomp, index).weight)
    log.debug("Chunk [%d, %d) done", start, stop)
    return acc.as_tuple()


def _partition(n: int, parts: int) -> list[tuple[int, int]]:
    bounds = np.linspace(0, n, parts + 1).round().astype(int)
    return [
        (int(lo), int(hi)) for lo, hi in zip(bounds[:-1], bounds[1:]) if hi > lo
    ]


def _finalise(acc: _Accumulator, log_r_tot: float, wall_time: float) -> Estimate:
    n = acc.count
    r_tot = math.exp(log_r_tot) if log_r_tot < 709.0 else math.inf
    mean = r_tot * acc.total / (2 * n) if acc.total else 0.0
    if n > 1:
        spread = max(0.0, (acc.total_sq - acc.total**2 / n) / (n - 1))
        std_error = (r_tot / 2) * math.sqrt(spread / n) if spread else 0.0
    else:
        std_error = math.nan
    return Estimate(
        p_l_mean=mean,
        std_error=std_error,
        n_samples=n,
        log_r_tot=log_r_tot,
        wall_time=wall_time,
    )


def estimate(config: RunConfig) -> Estimate:
    """Run the Monte Carlo estimate of ``p_L`` for *config*.

    The result is identical for any worker count with the same seed.

    :raises InfeasibleBudgetError: If the planned sample count is
        infeasible; raised before any sample is drawn.
    """
    n = config.resolve_samples()
    decomp = decompose(config.noise)
    log_r_tot = location_count(config.model, config.d) * decomp.log_robustness
    chunks = _partition(n, min(config.workers, n))
    log.info(
        "Estimating p_L: model=%s d=%d p=%g r=%g N=%d log10(R_tot)=%.3f workers=%d",
        config.model.value,
        config.d,
        config.noise.p,
        config.noise.r,
        n,
        log_r_tot / math.log(10.0),
        len(chunks),
    )

    args = (
        config.model.value,
        config.d,
        config.noise.p,
        config.noise.r,
        config.seed,
        config.check_clearance,
    )
    acc = _Accumulator()
    started = time.perf_counter()
    if len(chunks) == 1:
        acc.merge(_run_chunk(*args, *chunks[0]))
    else:
        with ProcessPoolExecutor(max_workers=len(chunks)) as pool:
            futures = [pool.submit(_run_chunk, *args, lo, hi) for lo, hi in chunks]
            for future in futures:
                try:
                    acc.merge(future.result())
                except Exception:
                    log.exception("Sample chunk failed; aborting the batch")
                    for pending in futures:
                        pending.cancel()
                    raise
    wall_time = time.perf_counter() - started

    result = _finalise(acc, log_r_tot, wall_time)
    log.info(
        "p_L = %.6g +/- %.2g (%d samples, %.2fs)",
        result.p_l_mean,
        result.std_error,
        result.n_samples,
        result.wall_time,
    )
    return result
