"""
Learner specifications (`stump` or `tree:<depth>`) and the callables they build.
"""

from typing import Callable, Literal, Optional

from pydantic import BaseModel, Field, model_validator

from multiboost.core.dataset import Dataset
from multiboost.core.errors import ConfigError
from multiboost.core.hypotheses import WeakHypothesis
from multiboost.core.weights import PairWeightDistribution, WeightDistribution
from multiboost.learners.multiclass import train_multiclass_stump, train_plausibility_stump
from multiboost.learners.stumps import train_stump
from multiboost.learners.trees import train_plausibility_tree, train_tree

Learner = Callable[[Dataset, WeightDistribution], WeakHypothesis]
PlausibilityLearner = Callable[[Dataset, PairWeightDistribution], WeakHypothesis]


class LearnerSpec(BaseModel):
    """Weak learner selection."""

    kind: Literal["stump", "tree"] = "stump"
    depth: Optional[int] = Field(default=None, ge=1, description="Tree depth (trees only)")
    random_state: int = Field(default=0, description="Seed passed to the tree trainer")

    @model_validator(mode="after")
    def _depth_for_trees(self) -> "LearnerSpec":
        if self.kind == "tree" and self.depth is None:
            raise ValueError("Tree learners need a depth, e.g. tree:3")
        return self

    @classmethod
    def parse(cls, text: str, random_state: int = 0) -> "LearnerSpec":
        """
        Parse `stump` or `tree:<depth>`.

        Raises:
            ConfigError: If the text is not a known learner.
        """
        text = text.strip().lower()
        if text == "stump":
            return cls(kind="stump", random_state=random_state)
        if text.startswith("tree:"):
            try:
                depth = int(text.split(":", 1)[1])
            except ValueError:
                raise ConfigError(f"Invalid tree depth in learner spec {text!r}") from None
            if depth < 1:
                raise ConfigError(f"Tree depth must be >= 1, got {depth}")
            return cls(kind="tree", depth=depth, random_state=random_state)
        raise ConfigError(f"Unknown learner {text!r}; expected 'stump' or 'tree:<depth>'")

    def __str__(self) -> str:
        return "stump" if self.kind == "stump" else f"tree:{self.depth}"


def make_learner(spec: LearnerSpec) -> Learner:
    """Weighted-error learner; stumps switch to the multiclass search on K > 2 data."""
    if spec.kind == "tree":
        depth, seed = int(spec.depth), spec.random_state  # type: ignore[arg-type]
        return lambda data, w: train_tree(data, w, depth, seed)

    def stump_learner(data: Dataset, w: WeightDistribution) -> WeakHypothesis:
        if data.is_binary:
            return train_stump(data, w)
        return train_multiclass_stump(data, w)

    return stump_learner


def make_plausibility_learner(spec: LearnerSpec) -> PlausibilityLearner:
    """Pseudo-loss learner for real AdaBoost."""
    if spec.kind == "tree":
        depth, seed = int(spec.depth), spec.random_state  # type: ignore[arg-type]
        return lambda data, pw: train_plausibility_tree(data, pw, depth, seed)
    return train_plausibility_stump
