"""
Unit tests for trace persistence.
"""

import json

import numpy as np
import pytest

from multiboost.boosters import BoostConfig, adaboost_discrete, adaboost_real, adaboost_samme
from multiboost.cli.trace_io import dump_trace, hypothesis_from_dict, load_run, load_trace
from multiboost.core import Negated, PredictionRule, TraceFormatError
from multiboost.learners import DecisionStump, LearnerSpec


class TestDumpAndLoad:
    """Test writing and reading traces."""

    def test_discrete_trace(self, tmp_path, d1_data):
        """Test weights, coefficients and ids survive a dump and load."""
        _, trace = adaboost_discrete(d1_data, BoostConfig(rounds=4, seed=3))
        path = dump_trace(trace, tmp_path / "trace.json", classes=d1_data.classes)
        loaded = load_trace(path)
        assert loaded.algo == "discrete"
        assert loaded.seed == 3
        assert loaded.hypothesis_ids == trace.hypothesis_ids
        np.testing.assert_array_equal(loaded.alphas, trace.alphas)
        np.testing.assert_array_equal(loaded.weights_after(), trace.weights_after())

    def test_file_layout(self, tmp_path, d1_data):
        """Test the meta and rounds keys."""
        _, trace = adaboost_discrete(d1_data, BoostConfig(rounds=1))
        payload = json.loads(dump_trace(trace, tmp_path / "t.json", classes=d1_data.classes).read_text())
        assert payload["meta"]["rule"] == "sign"
        assert payload["meta"]["classes"] == [-1, 1]
        assert set(payload["rounds"][0]) >= {"t", "epsilon", "alpha", "z", "edge", "hypothesis", "w_before", "w"}

    def test_identical_runs_identical_files(self, tmp_path, d1_data):
        """Test dumping is deterministic."""
        a = dump_trace(adaboost_discrete(d1_data, BoostConfig(rounds=3))[1], tmp_path / "a.json")
        b = dump_trace(adaboost_discrete(d1_data, BoostConfig(rounds=3))[1], tmp_path / "b.json")
        assert a.read_bytes() == b.read_bytes()

    def test_nan_margins_become_null(self, tmp_path, multiclass_data):
        """Test undefined margins are written as null and read back as NaN."""
        _, trace = adaboost_samme(multiclass_data, BoostConfig(rounds=2))
        path = dump_trace(trace, tmp_path / "samme.json", classes=multiclass_data.classes)
        assert json.loads(path.read_text())["rounds"][0]["min_margin_l1"] is None
        assert np.isnan(load_trace(path).records[0].min_margin_l1)

    def test_load_run_rebuilds_ensemble(self, tmp_path, multiclass_data):
        """Test the reloaded ensemble predicts like the original."""
        ens, trace = adaboost_real(multiclass_data, BoostConfig(rounds=3, learner=LearnerSpec.parse("tree:2")))
        path = dump_trace(trace, tmp_path / "real.json", classes=multiclass_data.classes)
        _, loaded = load_run(path)
        assert loaded.rule is PredictionRule.PLAUSIBILITY
        np.testing.assert_array_equal(loaded.predict_batch(multiclass_data.X), ens.predict_batch(multiclass_data.X))
        assert trace.records[0].pair_w_after is not None

    def test_load_run_needs_classes(self, tmp_path, d1_data):
        """Test a trace without classes cannot rebuild an ensemble."""
        _, trace = adaboost_discrete(d1_data, BoostConfig(rounds=1))
        path = dump_trace(trace, tmp_path / "t.json")
        with pytest.raises(TraceFormatError, match="classes"):
            load_run(path)


class TestMalformedTraces:
    """Test error reporting for bad trace files."""

    def test_not_json(self, tmp_path):
        """Test invalid JSON."""
        path = tmp_path / "bad.json"
        path.write_text("{not json")
        with pytest.raises(TraceFormatError, match="not valid JSON"):
            load_trace(path)

    def test_missing_keys(self, tmp_path):
        """Test a JSON object without meta and rounds."""
        path = tmp_path / "bad.json"
        path.write_text(json.dumps({"rounds": []}))
        with pytest.raises(TraceFormatError, match="meta"):
            load_trace(path)

    def test_missing_file(self, tmp_path):
        """Test a missing trace file."""
        with pytest.raises(TraceFormatError, match="not found"):
            load_trace(tmp_path / "missing.json")

    def test_weights_off_simplex(self, tmp_path, d1_data):
        """Test a round whose weights do not sum to one."""
        _, trace = adaboost_discrete(d1_data, BoostConfig(rounds=1))
        path = dump_trace(trace, tmp_path / "t.json")
        payload = json.loads(path.read_text())
        payload["rounds"][0]["w"] = [0.5, 0.5, 0.5]
        path.write_text(json.dumps(payload))
        with pytest.raises(TraceFormatError, match="Malformed trace"):
            load_trace(path)

    def test_unknown_hypothesis_kind(self):
        """Test an unknown hypothesis kind."""
        with pytest.raises(TraceFormatError, match="Unknown hypothesis"):
            hypothesis_from_dict({"kind": "forest"})

    def test_missing_hypothesis_field(self):
        """Test a stump without a threshold."""
        with pytest.raises(TraceFormatError, match="Malformed stump"):
            hypothesis_from_dict({"kind": "stump", "feature": 0, "polarity": 1})

    def test_nested_hypothesis(self):
        """Test negated stumps decode recursively with infinite thresholds."""
        h = Negated(DecisionStump(0, -np.inf, 1))
        assert hypothesis_from_dict(h.to_dict()) == h
