"""
JSON persistence for boosting traces.

Layout:
    {"meta": {"algo", "seed", "config", "classes", "rule", "initial_w",
              "stop_reason", "extras"},
     "rounds": [{"t", "epsilon", "alpha", "z", "edge", "min_margin_l1",
                 "clamped", "hypothesis", "w_before", "w", "pair_w"?}, ...]}

Weights are written with shortest round-trip float text so traces of different
formulations can be diffed losslessly. NaN margins are written as null.
"""

import json
import logging
import math
from pathlib import Path
from typing import Any, Callable, Optional

import numpy as np

from multiboost.core.ensemble import Ensemble, EnsembleTerm, PredictionRule
from multiboost.core.errors import KindMismatchError, TraceFormatError
from multiboost.core.hypotheses import ConstantPlausibility, Negated, OneHotPlausibility, WeakHypothesis
from multiboost.core.trace import BoostTrace, RoundRecord
from multiboost.core.weights import WeightDistribution
from multiboost.learners.confidence import ConfidenceStump
from multiboost.learners.multiclass import MulticlassStump
from multiboost.learners.stumps import DecisionStump
from multiboost.learners.trees import DecisionTree, LeafPlausibility

logger = logging.getLogger(__name__)

ALGO_RULES: dict[str, PredictionRule] = {
    "discrete": PredictionRule.SIGN,
    "gradient": PredictionRule.SIGN,
    "gradient-logistic": PredictionRule.SIGN,
    "mirror": PredictionRule.SIGN,
    "poe": PredictionRule.SIGN,
    "real-additive": PredictionRule.SIGN,
    "m1": PredictionRule.VOTE,
    "samme": PredictionRule.VOTE,
    "real": PredictionRule.PLAUSIBILITY,
}


def _tree_from_dict(d: dict[str, Any]) -> DecisionTree:
    return DecisionTree(
        depth=int(d["depth"]),
        classes=tuple(int(c) for c in d["classes"]),
        children_left=np.asarray(d["children_left"], dtype=np.int64),
        children_right=np.asarray(d["children_right"], dtype=np.int64),
        feature=np.asarray(d["feature"], dtype=np.int64),
        threshold=np.asarray(d["threshold"], dtype=np.float64),
        values=np.asarray(d["values"], dtype=np.float64),
    )


_DECODERS: dict[str, Callable[[dict[str, Any]], WeakHypothesis]] = {
    "stump": lambda d: DecisionStump(int(d["feature"]), float(d["threshold"]), int(d["polarity"])),
    "multiclass_stump": lambda d: MulticlassStump(
        int(d["feature"]), float(d["threshold"]), int(d["left_label"]), int(d["right_label"])
    ),
    "confidence_stump": lambda d: ConfidenceStump(
        int(d["feature"]), float(d["threshold"]), float(d["left_value"]), float(d["right_value"])
    ),
    "tree": _tree_from_dict,
    "leaf_plausibility": lambda d: LeafPlausibility(_tree_from_dict(d["tree"])),
    "negated": lambda d: Negated(hypothesis_from_dict(d["base"])),
    "onehot": lambda d: OneHotPlausibility(
        hypothesis_from_dict(d["base"]), tuple(int(c) for c in d["classes"])
    ),
    "constant_plausibility": lambda d: ConstantPlausibility(
        float(d["value"]), tuple(int(c) for c in d["classes"])
    ),
}


def hypothesis_from_dict(d: dict[str, Any]) -> WeakHypothesis:
    """
    Rebuild a hypothesis from its `to_dict()` form.

    Raises:
        TraceFormatError: On an unknown kind or missing fields.
    """
    try:
        decoder = _DECODERS[d["kind"]]
    except (KeyError, TypeError):
        raise TraceFormatError(f"Unknown hypothesis description: {d!r:.120}") from None
    try:
        return decoder(d)
    except TraceFormatError:
        raise
    except (KeyError, TypeError, ValueError) as e:
        raise TraceFormatError(f"Malformed {d['kind']} hypothesis: {e}") from e


def _nullable(value: float) -> Optional[float]:
    return None if math.isnan(value) else value


def trace_to_dict(
    trace: BoostTrace, classes: Optional[tuple[int, ...]] = None, rule: Optional[PredictionRule] = None
) -> dict[str, Any]:
    rounds = []
    for r in trace.records:
        entry: dict[str, Any] = {
            "t": r.t,
            "epsilon": r.epsilon,
            "alpha": r.alpha,
            "z": r.z,
            "edge": r.edge,
            "min_margin_l1": _nullable(r.min_margin_l1),
            "clamped": r.clamped,
            "hypothesis": r.hypothesis.to_dict(),
            "w_before": r.w_before.w.tolist(),
            "w": r.w_after.w.tolist(),
        }
        if r.pair_w_after is not None:
            entry["pair_w"] = np.asarray(r.pair_w_after).tolist()
        rounds.append(entry)
    rule = rule or ALGO_RULES.get(trace.algo)
    return {
        "meta": {
            "algo": trace.algo,
            "seed": trace.seed,
            "config": trace.config,
            "classes": list(classes) if classes is not None else None,
            "rule": rule.value if rule is not None else None,
            "initial_w": trace.initial.w.tolist(),
            "stop_reason": trace.stop_reason,
            "extras": trace.extras,
        },
        "rounds": rounds,
    }


def dump_trace(
    trace: BoostTrace,
    path: Path | str,
    classes: Optional[tuple[int, ...]] = None,
    rule: Optional[PredictionRule] = None,
) -> Path:
    """Write a trace as JSON; identical traces give byte-identical files."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w") as f:
        json.dump(trace_to_dict(trace, classes, rule), f, indent=1, allow_nan=False)
        f.write("\n")
    logger.info(f"Wrote {trace.algo} trace with {len(trace)} rounds to {path}")
    return path


def _read_json(path: Path) -> dict[str, Any]:
    try:
        with open(path, "r") as f:
            payload = json.load(f)
    except FileNotFoundError:
        raise TraceFormatError(f"Trace file not found: {path}") from None
    except json.JSONDecodeError as e:
        raise TraceFormatError(f"{path} is not valid JSON: {e}") from e
    if not isinstance(payload, dict) or "meta" not in payload or "rounds" not in payload:
        raise TraceFormatError(f"{path} lacks the top-level 'meta' and 'rounds' keys")
    return payload


def trace_from_dict(payload: dict[str, Any]) -> BoostTrace:
    """
    Rebuild a BoostTrace.

    Raises:
        TraceFormatError: On missing keys or inconsistent rounds.
    """
    try:
        meta = payload["meta"]
        initial = WeightDistribution(np.asarray(meta["initial_w"], dtype=np.float64))
        records = []
        for entry in payload["rounds"]:
            margin = entry.get("min_margin_l1")
            pair_w = entry.get("pair_w")
            records.append(
                RoundRecord(
                    t=int(entry["t"]),
                    w_before=WeightDistribution(np.asarray(entry["w_before"], dtype=np.float64)),
                    w_after=WeightDistribution(np.asarray(entry["w"], dtype=np.float64)),
                    epsilon=float(entry["epsilon"]),
                    alpha=float(entry["alpha"]),
                    z=float(entry["z"]),
                    edge=float(entry["edge"]),
                    hypothesis=hypothesis_from_dict(entry["hypothesis"]),
                    min_margin_l1=float("nan") if margin is None else float(margin),
                    clamped=bool(entry.get("clamped", False)),
                    pair_w_after=None if pair_w is None else np.asarray(pair_w, dtype=np.float64),
                )
            )
        return BoostTrace(
            algo=str(meta["algo"]),
            seed=meta.get("seed"),
            config=dict(meta.get("config") or {}),
            records=tuple(records),
            initial=initial,
            stop_reason=meta.get("stop_reason"),
            extras=dict(meta.get("extras") or {}),
        )
    except TraceFormatError:
        raise
    except (KeyError, TypeError, ValueError) as e:
        raise TraceFormatError(f"Malformed trace: {e}") from e


def load_trace(path: Path | str) -> BoostTrace:
    """Read a trace written by dump_trace."""
    return trace_from_dict(_read_json(Path(path)))


def load_run(path: Path | str) -> tuple[BoostTrace, Ensemble]:
    """
    Read a trace together with the ensemble it produced.

    Raises:
        TraceFormatError: If the file does not record classes and rule.
    """
    payload = _read_json(Path(path))
    trace = trace_from_dict(payload)
    meta = payload["meta"]
    if not meta.get("classes") or not meta.get("rule"):
        raise TraceFormatError(f"{path} does not record the ensemble classes and prediction rule")
    try:
        ensemble = Ensemble(
            tuple(EnsembleTerm(r.alpha, r.hypothesis) for r in trace.records),
            tuple(int(c) for c in meta["classes"]),
            PredictionRule(meta["rule"]),
        )
    except (KindMismatchError, ValueError) as e:
        raise TraceFormatError(f"Invalid ensemble in {path}: {e}") from e
    return trace, ensemble
