"""
Splitting a long ensemble into consecutive blocks and scoring each block alone.
"""

from dataclasses import dataclass

import numpy as np

from multiboost.core.dataset import Dataset
from multiboost.core.ensemble import Ensemble


@dataclass(frozen=True, eq=False)
class BlockReport:
    index: int
    ensemble: Ensemble
    train_accuracy: float

    @property
    def interpolates(self) -> bool:
        return self.train_accuracy == 1.0


def self_averaging_split(ens: Ensemble, data: Dataset, T_block: int) -> list[BlockReport]:
    """
    Cut the ensemble into len(ens) / T_block consecutive blocks.

    Raises:
        ValueError: If T_block < 1 or does not divide the ensemble length.
    """
    if T_block < 1:
        raise ValueError(f"Block length must be >= 1, got {T_block}")
    if len(ens) == 0 or len(ens) % T_block != 0:
        raise ValueError(f"Ensemble of {len(ens)} terms is not a whole number of blocks of {T_block}")
    blocks = []
    for k in range(len(ens) // T_block):
        block = ens.block(k * T_block, (k + 1) * T_block)
        accuracy = float(np.mean(block.predict_batch(data.X) == data.y))
        blocks.append(BlockReport(index=k, ensemble=block, train_accuracy=accuracy))
    return blocks


def accuracy_vs_kept(ens: Ensemble, data: Dataset) -> np.ndarray:
    """Training accuracy of the first t estimators, t = 1..T."""
    return np.array(
        [float(np.mean(ens.prefix(t).predict_batch(data.X) == data.y)) for t in range(1, len(ens) + 1)]
    )
