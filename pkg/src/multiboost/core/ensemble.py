"""
Additive ensembles H_T = sum_t alpha_t h_t and their prediction rules.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Iterator

import numpy as np

from multiboost.core.dataset import BINARY_CLASSES
from multiboost.core.errors import EmptyEnsembleError, KindMismatchError
from multiboost.core.hypotheses import HypothesisKind, WeakHypothesis


class PredictionRule(str, Enum):
    """How the weighted terms are turned into a label."""

    SIGN = "sign"  # sign(sum alpha h(x)), sign(0) -> +1
    VOTE = "vote"  # argmax_y sum alpha 1[h(x) = y]
    PLAUSIBILITY = "plausibility"  # argmax_y sum alpha h(x, y)


_RULE_KINDS = {
    PredictionRule.SIGN: {HypothesisKind.BINARY, HypothesisKind.CONFIDENCE},
    PredictionRule.VOTE: {HypothesisKind.BINARY, HypothesisKind.MULTICLASS},
    PredictionRule.PLAUSIBILITY: {HypothesisKind.PLAUSIBILITY},
}


@dataclass(frozen=True)
class EnsembleTerm:
    alpha: float
    hypothesis: WeakHypothesis


@dataclass(frozen=True, eq=False)
class Ensemble:
    """
    Ordered weighted combination of weak hypotheses.

    Terms keep iteration order. Ties resolve deterministically: sign(0) -> +1 for
    binary labels, and the lowest class index for multiclass argmax.
    """

    terms: tuple[EnsembleTerm, ...]
    classes: tuple[int, ...]
    rule: PredictionRule

    def __post_init__(self) -> None:
        terms = tuple(self.terms)
        rule = PredictionRule(self.rule)
        if rule is PredictionRule.SIGN and tuple(self.classes) != BINARY_CLASSES:
            raise KindMismatchError("Sign rule requires binary classes (-1, 1)")
        for term in terms:
            if not np.isfinite(term.alpha):
                raise ValueError(f"Ensemble coefficients must be finite, got {term.alpha}")
            if term.hypothesis.kind not in _RULE_KINDS[rule]:
                raise KindMismatchError(
                    f"{term.hypothesis.kind.value} hypotheses cannot be combined by the {rule.value} rule"
                )
        object.__setattr__(self, "terms", terms)
        object.__setattr__(self, "classes", tuple(self.classes))
        object.__setattr__(self, "rule", rule)

    @classmethod
    def empty(cls, classes: tuple[int, ...], rule: PredictionRule) -> "Ensemble":
        return cls((), classes, rule)

    def append(self, alpha: float, hypothesis: WeakHypothesis) -> "Ensemble":
        """New ensemble with one more term."""
        return Ensemble(self.terms + (EnsembleTerm(float(alpha), hypothesis),), self.classes, self.rule)

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator[EnsembleTerm]:
        return iter(self.terms)

    @property
    def alphas(self) -> np.ndarray:
        return np.array([term.alpha for term in self.terms], dtype=np.float64)

    @property
    def hypotheses(self) -> list[WeakHypothesis]:
        return [term.hypothesis for term in self.terms]

    @property
    def is_binary(self) -> bool:
        return self.classes == BINARY_CLASSES

    def prefix(self, T: int) -> "Ensemble":
        return self.block(0, T)

    def block(self, start: int, stop: int) -> "Ensemble":
        return Ensemble(self.terms[start:stop], self.classes, self.rule)

    def decision_function(self, X: np.ndarray) -> np.ndarray:
        """Real score sum_t alpha_t h_t(x) for binary ensembles."""
        if not self.is_binary or self.rule is PredictionRule.PLAUSIBILITY:
            raise KindMismatchError("decision_function is defined for binary sign/vote ensembles")
        X = np.atleast_2d(np.asarray(X, dtype=np.float64))
        score = np.zeros(X.shape[0])
        for term in self.terms:
            score += term.alpha * term.hypothesis.predict(X)
        return score

    def votes(self, X: np.ndarray) -> np.ndarray:
        """Weighted votes of shape (n, K), columns in class order."""
        X = np.atleast_2d(np.asarray(X, dtype=np.float64))
        classes = np.asarray(self.classes)
        votes = np.zeros((X.shape[0], len(classes)))
        for term in self.terms:
            if self.rule is PredictionRule.PLAUSIBILITY:
                votes += term.alpha * term.hypothesis.plausibility(X)
            else:
                pred = term.hypothesis.predict(X)
                votes += term.alpha * (pred[:, None] == classes[None, :])
        return votes

    def predict_batch(self, X: np.ndarray) -> np.ndarray:
        """
        Labels for every row of X.

        Raises:
            EmptyEnsembleError: If the ensemble has no terms.
        """
        if not self.terms:
            raise EmptyEnsembleError("Cannot predict with an empty ensemble")
        if self.rule is PredictionRule.SIGN:
            return np.where(self.decision_function(X) >= 0, 1, -1).astype(np.int64)
        votes = self.votes(X)
        if self.is_binary:
            return np.where(votes[:, 1] >= votes[:, 0], 1, -1).astype(np.int64)
        return np.asarray(self.classes, dtype=np.int64)[np.argmax(votes, axis=1)]


def predict(ens: Ensemble, x: np.ndarray) -> int:
    """Label of a single feature vector under the ensemble's prediction rule."""
    return int(ens.predict_batch(np.asarray(x, dtype=np.float64).reshape(1, -1))[0])
