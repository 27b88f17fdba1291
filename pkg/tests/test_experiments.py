import numpy as np
import pytest

from qladder.experiments import (
    default_trace_grid,
    default_w_grid,
    leakage_trace,
    oracle_check,
    ordered_baseline,
    transfer_sweep,
    welch_greater,
)
from qladder.observables import transfer_time


# ---------------------------------------------------------------------------
# sweep driver
# ---------------------------------------------------------------------------

def test_default_w_grid_shape():
    grid = default_w_grid()
    assert grid.size == 25
    assert grid[0] == pytest.approx(0.2)
    assert grid[-1] == pytest.approx(10.0)
    assert np.all(np.diff(grid) > 0)


def test_sweep_zero_detuning_control_row():
    # the protected branch is clean for delta=0, whatever W is
    result = transfer_sweep(
        n_sites=8,
        deltas=(0.0,),
        w_grid=[0.2, 2.0, 10.0],
        n_realizations=3,
        master_seed=7,
    )
    for stats in result.series[0.0]:
        assert float(stats.mean) >= 1.0 - 1e-6


def test_sweep_metadata_reproduces_run():
    result = transfer_sweep(
        n_sites=6, deltas=(0.1,), w_grid=[0.5, 5.0], n_realizations=4, master_seed=11
    )
    meta = result.metadata
    again = transfer_sweep(
        n_sites=meta["n_sites"],
        deltas=meta["deltas"],
        w_grid=meta["w_grid"],
        n_realizations=meta["n_realizations"],
        master_seed=meta["master_seed"],
    )
    for first, second in zip(result.series[0.1], again.series[0.1]):
        assert np.array_equal(first.mean, second.mean)
        assert np.array_equal(first.std_error, second.std_error)


def test_sweep_trend_improves_with_disorder():
    # scaled-down version of the production run; the Welch test decides
    result = transfer_sweep(
        n_sites=12,
        deltas=(0.2,),
        w_grid=[0.2, 10.0],
        n_realizations=40,
        master_seed=5,
        keep_raw=True,
    )
    low, high = result.series[0.2]
    assert float(high.mean) > float(low.mean)
    assert welch_greater(high.per_realization, low.per_realization) < 0.01


# ---------------------------------------------------------------------------
# leakage driver
# ---------------------------------------------------------------------------

def test_leakage_trace_shapes_and_completeness():
    times = default_trace_grid(6, span_in_tau=2.0, n_points=30)
    result = leakage_trace(
        n_sites=6, delta=0.2, w_values=(0.2, 10.0), times=times,
        n_realizations=4, master_seed=3,
    )
    assert result.tau == transfer_time(6)
    for w in result.w_values:
        minus, plus = result.minus[w], result.plus[w]
        assert minus.mean.shape == times.shape
        assert minus.mean[0] == 1.0  # the initial state lives in the minus branch
        assert np.max(np.abs(minus.mean + plus.mean - 1.0)) < 1e-12


def test_leakage_metadata_reproduces_run():
    result = leakage_trace(
        n_sites=6, delta=0.3, w_values=(1.0,), times=default_trace_grid(6, 1.0, 12),
        n_realizations=3, master_seed=8,
    )
    meta = result.metadata
    again = leakage_trace(
        n_sites=meta["n_sites"],
        delta=meta["delta"],
        w_values=meta["w_values"],
        times=meta["times"],
        n_realizations=meta["n_realizations"],
        master_seed=meta["master_seed"],
    )
    assert np.array_equal(result.minus[1.0].mean, again.minus[1.0].mean)


def test_leakage_is_suppressed_by_disorder():
    times = default_trace_grid(10, span_in_tau=6.0, n_points=40)
    result = leakage_trace(
        n_sites=10, delta=0.2, w_values=(0.2, 10.0), times=times,
        n_realizations=30, master_seed=9, keep_raw=True,
    )
    window = times >= 3.0 * result.tau
    low = result.minus[0.2].per_realization[:, window].mean(axis=1)
    high = result.minus[10.0].per_realization[:, window].mean(axis=1)
    assert high.mean() > low.mean()
    assert welch_greater(high, low) < 0.01


# ---------------------------------------------------------------------------
# ordered baseline
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("n_sites,expected_tau", [(30, 7.5 * np.pi), (4, np.pi), (2, np.pi / 2)])
def test_ordered_baseline_reaches_unit_concurrence(n_sites, expected_tau):
    report = ordered_baseline(n_sites)
    assert report.tau == pytest.approx(expected_tau, abs=1e-15)
    assert report.concurrence_at_tau >= 1.0 - 1e-6
    assert report.concurrence_at_tau == pytest.approx(
        2.0 * abs(report.amp_leg1) * abs(report.amp_leg2), abs=1e-12
    )


def test_ordered_baseline_odd_chain_needs_exact_revival():
    report = ordered_baseline(3, exact_revival=True)
    assert report.tau == pytest.approx(np.pi * np.sqrt(8.0) / 4.0, abs=1e-15)
    assert report.concurrence_at_tau >= 1.0 - 1e-6


# ---------------------------------------------------------------------------
# closed-form validation
# ---------------------------------------------------------------------------

@pytest.mark.parametrize(
    "delta,gamma,n_sites",
    [(0.0, 1.0, 5), (3.0, 0.2, 10), (0.5, 1.0, 1), (2.0, 0.2, 5)],
)
def test_oracle_check_is_tight(delta, gamma, n_sites):
    assert oracle_check(delta, gamma, n_sites) < 1e-8


def test_oracle_check_decoupled_legs():
    assert oracle_check(1.0, 0.0, 4) < 1e-12
