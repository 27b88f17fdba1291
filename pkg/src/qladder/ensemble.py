"""Seeded Monte Carlo over disorder realizations with deterministic reduction.

Each realization index owns an independent random stream derived from the
master seed, so ensembles are reproducible bit-for-bit regardless of worker
count or execution order. Workers carry one realization end-to-end (sample,
build, diagonalize, evolve, measure); results are reduced in realization
order so floating-point summation is fixed.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .hamiltonian import Branch, bell_minus_state, build_effective
from .model import LadderParams, sample_realization
from .observables import branch_occupation, concurrence, transfer_time
from .spectral import eigendecompose, evolve, evolve_series, expectation

__all__ = [
    "DEFAULT_MASTER_SEED",
    "ObservablePlan",
    "EnsembleConfig",
    "EnsembleStats",
    "derive_stream",
    "run_ensemble",
    "LABEL_CONCURRENCE",
    "LABEL_P_MINUS",
    "LABEL_P_PLUS",
]

DEFAULT_MASTER_SEED = 42

LABEL_CONCURRENCE = "concurrence_at_tau"
LABEL_P_MINUS = "p_minus"
LABEL_P_PLUS = "p_plus"

# conservation tolerances along every evolved trajectory; fixed, not configurable
_ENERGY_DRIFT_TOL = 1e-9


def derive_stream(master_seed: int, index: int) -> np.random.Generator:
    """Independent random stream for one realization.

    Stream identity (part of the reproducibility contract): a Philox
    counter-based generator keyed by ``SeedSequence(master_seed,
    spawn_key=(index,))``. Distinct indices give statistically independent
    streams in any order of use.
    """
    if index < 0:
        raise ValueError(f"realization index must be nonnegative, got {index}")
    seq = np.random.SeedSequence(master_seed, spawn_key=(index,))
    return np.random.Generator(np.random.Philox(seq))


@dataclass(frozen=True, eq=False)
class ObservablePlan:
    """What to record per realization: C(tau), a branch-occupation trace, or both."""

    concurrence_at_tau: bool = True
    trace_times: np.ndarray | None = None

    def __post_init__(self):
        if self.trace_times is not None:
            times = np.asarray(self.trace_times, dtype=np.float64)
            if times.ndim != 1:
                raise ValueError("trace_times must be a 1-d sequence")
            if times.size and (np.any(np.diff(times) < 0) or times[0] < 0):
                raise ValueError("trace_times must be ascending and nonnegative")
            times.setflags(write=False)
            object.__setattr__(self, "trace_times", times)
        elif not self.concurrence_at_tau:
            raise ValueError("plan records nothing")

    @classmethod
    def concurrence_only(cls) -> "ObservablePlan":
        return cls(concurrence_at_tau=True, trace_times=None)

    @classmethod
    def branch_trace(cls, times) -> "ObservablePlan":
        return cls(concurrence_at_tau=False, trace_times=times)

    @classmethod
    def both(cls, times) -> "ObservablePlan":
        return cls(concurrence_at_tau=True, trace_times=times)


@dataclass(frozen=True, eq=False)
class EnsembleConfig:
    """Physics and sampling definition of one ensemble run."""

    params: LadderParams
    n_realizations: int = 100
    master_seed: int = DEFAULT_MASTER_SEED
    plan: ObservablePlan = ObservablePlan()

    def __post_init__(self):
        if self.n_realizations < 1:
            raise ValueError("n_realizations must be at least 1")


@dataclass(frozen=True, eq=False)
class EnsembleStats:
    """Mean, standard error and count for one observable (scalar or per-time-point)."""

    mean: np.ndarray
    std_error: np.ndarray
    n: int
    per_realization: np.ndarray | None = None


def _measure_one(config: EnsembleConfig, index: int) -> dict:
    rng = derive_stream(config.master_seed, index)
    realization = sample_realization(
        config.params, rng, seed_tag=f"{config.master_seed}:{index}"
    )
    n_sites = config.params.n_sites
    operator = build_effective(realization)
    system = eigendecompose(operator)
    psi0 = bell_minus_state(n_sites)
    energy0 = expectation(operator, psi0)

    out = {}
    evolved = []
    if config.plan.concurrence_at_tau:
        tau = transfer_time(n_sites)
        state = evolve(system, psi0, tau)
        out[LABEL_CONCURRENCE] = concurrence(state, n_sites)
        evolved.append(state)
    if config.plan.trace_times is not None:
        trajectory = evolve_series(system, psi0, config.plan.trace_times)
        out[LABEL_P_MINUS] = np.array(
            [branch_occupation(s, Branch.MINUS) for s in trajectory]
        )
        out[LABEL_P_PLUS] = np.array(
            [branch_occupation(s, Branch.PLUS) for s in trajectory]
        )
        evolved.extend(trajectory)

    # evolve() already guards the norm; energy must stay put as well
    for state in evolved:
        drift = abs(expectation(operator, state) - energy0)
        if drift > _ENERGY_DRIFT_TOL:
            raise ArithmeticError(f"energy drift {drift:.3e} exceeds {_ENERGY_DRIFT_TOL}")
    return out


def _reduce(values: np.ndarray, keep_raw: bool) -> EnsembleStats:
    n = values.shape[0]
    mean = values.mean(axis=0)
    if n > 1:
        std_error = values.std(axis=0, ddof=1) / np.sqrt(n)
    else:
        std_error = np.zeros_like(mean)
    return EnsembleStats(
        mean=mean,
        std_error=std_error,
        n=n,
        per_realization=values if keep_raw else None,
    )


def run_ensemble(
    config: EnsembleConfig, threads: int = 1, keep_raw: bool = False
) -> dict[str, EnsembleStats]:
    """Sample, evolve and measure ``n_realizations`` ladders; aggregate statistics.

    Returns a map from observable label to :class:`EnsembleStats`; the
    concurrence entry is scalar, the branch-trace entries are per-time-point.
    The result is bitwise identical for a fixed config regardless of
    ``threads``. Per-realization raw values are retained when
    ``keep_raw=True``.
    """
    indices = range(config.n_realizations)
    results: list[dict] = []
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            futures = [pool.submit(_measure_one, config, i) for i in indices]
            for i, future in enumerate(futures):
                try:
                    results.append(future.result())
                except Exception as exc:
                    raise RuntimeError(f"realization {i} failed: {exc}") from exc
    else:
        for i in indices:
            try:
                results.append(_measure_one(config, i))
            except Exception as exc:
                raise RuntimeError(f"realization {i} failed: {exc}") from exc

    stats = {}
    for label in results[0]:
        stacked = np.stack([r[label] for r in results], axis=0)
        stats[label] = _reduce(stacked, keep_raw)
    return stats
