"""Run configuration shared by every booster."""

from typing import Optional

from pydantic import BaseModel, Field

from multiboost.learners.factory import LearnerSpec


class BoostConfig(BaseModel):
    """
    Booster settings.

    Example:
        >>> cfg = BoostConfig(rounds=25)
        >>> cfg.eps_clamp
        1e-12
    """

    rounds: int = Field(..., ge=1, description="Number of boosting rounds T")
    eps_clamp: float = Field(
        default=1e-12,
        gt=0.0,
        lt=0.5,
        description="Weighted error is clamped to [eps_clamp, 1 - eps_clamp] before any log",
    )
    stop_on_eps_half: bool = Field(
        default=True, description="Stop (and record why) once a round's error reaches 1/2"
    )
    stop_on_perfect: bool = Field(
        default=True, description="Stop after appending a hypothesis with zero error"
    )
    learner: LearnerSpec = Field(default_factory=LearnerSpec)
    seed: Optional[int] = Field(default=None, description="Recorded in the trace metadata")
    smoothing: Optional[float] = Field(
        default=None,
        gt=0.0,
        description="Leaf smoothing for confidence-rated stumps (default 1/(2m))",
    )
