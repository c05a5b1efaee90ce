"""
Integration tests for AdaBoost dynamics on the 2-D toy grid.

Run with: pytest tests/integration/test_toy_cycling.py -v
"""

import json
import logging

import numpy as np
import pytest

from multiboost.analysis import accuracy_vs_kept, bound_curve, margin_curve, margin_distribution, margins, training_error
from multiboost.boosters import BoostConfig, adaboost_discrete
from multiboost.cli.main import EXIT_OK
from multiboost.dynamics import detect_cycle, orbit_from_trace, toy_dataset

logger = logging.getLogger(__name__)


@pytest.fixture(scope="module")
def toy():
    return toy_dataset(20)


@pytest.fixture(scope="module")
def long_run(toy):
    return adaboost_discrete(toy, BoostConfig(rounds=500))


class TestToyCycling:
    """Test the weight orbit on the toy grid settles into a short cycle."""

    def test_cycle_over_few_stumps(self, long_run):
        """Test a cycle is detected and only a handful of stumps repeat in it."""
        _, trace = long_run
        assert len(trace) == 500
        orbit, ids = orbit_from_trace(trace)
        report = detect_cycle(orbit, tol=1e-9, hypothesis_ids=ids)

        assert report.entered
        assert 3 <= report.distinct_hypotheses <= 10
        logger.info(
            f"Toy cycle: T0={report.entry_time}, period={report.period}, "
            f"{report.distinct_hypotheses} distinct stumps"
        )

    def test_analyze_reports_birkhoff_convergence(self, cli, tmp_path):
        """Test the running weight averages reach the cycle mean."""
        data, trace, reports = tmp_path / "toy.csv", tmp_path / "toy.json", tmp_path / "reports"
        assert cli("toygen", "--n", "20", "--out", str(data)) == EXIT_OK
        assert cli("run", "--algo", "discrete", "--rounds", "500", "--data", str(data), "--out", str(trace)) == EXIT_OK
        assert cli("analyze", "--trace", str(trace), "--data", str(data), "--out", str(reports)) == EXIT_OK

        summary = json.loads((reports / "summary.json").read_text())
        assert summary["cycle_entered"] is True
        assert 3 <= summary["distinct_hypotheses_in_cycle"] <= 10
        assert summary["birkhoff_final_gap"] <= 1e-6

        cycle = json.loads((reports / "cycle_report.json").read_text())
        assert cycle["period"] == summary["period"]


class TestToyTrainingError:
    """Test the ensemble fits the toy grid."""

    def test_bound_and_interpolation(self, toy, long_run):
        """Test the product bound holds on every prefix and error is zero once it drops below 1/m."""
        ens, trace = long_run
        bounds = bound_curve(trace.epsilons)
        errors = 1.0 - accuracy_vs_kept(ens, toy)
        assert np.all(errors <= bounds)
        assert np.all(errors[bounds < 1.0 / toy.m] == 0.0)
        assert training_error(ens, toy) == pytest.approx(errors[-1], abs=1e-12)

    def test_margins_after_interpolation(self, toy, long_run):
        """Test no training margin is non-positive after 300 rounds and the minimum margin grew since round 30."""
        ens, _ = long_run
        late = ens.prefix(300)
        assert margin_distribution(late, toy, theta=0.0) == 0.0
        assert margins(late, toy).min_margin > 0.0

        early = margins(ens.prefix(30), toy).min_margin
        curve = margin_curve(ens.prefix(300), toy)
        logger.info(f"Minimum margin at T=30: {early:.4f}, at T=300: {curve[-1]:.4f}")
        assert np.isfinite(curve).all()
        assert margins(late, toy).min_margin > early
