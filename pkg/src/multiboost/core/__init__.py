"""Domain types shared by every formulation."""

from .dataset import BINARY_CLASSES, Dataset, encode_labels
from .ensemble import Ensemble, EnsembleTerm, PredictionRule, predict
from .errors import (
    ConfigError,
    DatasetParseError,
    DimensionMismatchError,
    EmptyEnsembleError,
    InfeasibleProjectionError,
    KindMismatchError,
    MultiboostError,
    NumericalError,
    SimplexError,
    TraceFormatError,
)
from .hypotheses import (
    ConstantPlausibility,
    HypothesisKind,
    Negated,
    OneHotPlausibility,
    WeakHypothesis,
    dichotomy_of,
    weighted_error,
)
from .trace import BoostTrace, RoundRecord
from .weights import Dichotomy, PairWeightDistribution, WeightDistribution, edge

__all__ = [
    "BINARY_CLASSES",
    "BoostTrace",
    "ConfigError",
    "ConstantPlausibility",
    "Dataset",
    "DatasetParseError",
    "Dichotomy",
    "DimensionMismatchError",
    "EmptyEnsembleError",
    "Ensemble",
    "EnsembleTerm",
    "HypothesisKind",
    "InfeasibleProjectionError",
    "KindMismatchError",
    "MultiboostError",
    "Negated",
    "NumericalError",
    "OneHotPlausibility",
    "PairWeightDistribution",
    "PredictionRule",
    "RoundRecord",
    "SimplexError",
    "TraceFormatError",
    "WeakHypothesis",
    "WeightDistribution",
    "dichotomy_of",
    "edge",
    "encode_labels",
    "predict",
    "weighted_error",
]
