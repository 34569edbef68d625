"""SMOTE oversampling of minority classes in dense feature space.

Synthetic rows are convex combinations x + u * (x_nn - x) of a class
member and one of its k nearest same-class neighbors (Euclidean distance,
ties broken by lower row index). Per-class RNG streams derived from
(seed, class id) make the output independent of generation order.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from newscat.errors import ConfigurationError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SmoteConfig:
    k: int = 5
    seed: int = 0

    def __post_init__(self):
        if self.k < 1:
            raise ConfigurationError("k must be >= 1")


def _nearest_same_class(rows: np.ndarray, i: int, k: int) -> np.ndarray:
    """Indices (into rows) of the k nearest neighbors of rows[i], self excluded."""
    d = np.linalg.norm(rows - rows[i], axis=1)
    order = sorted(j for j in range(len(rows)) if j != i)
    order.sort(key=lambda j: (d[j], j))
    return np.array(order[:k], dtype=np.int64)


def smote_fit_resample(
    X, y, config: SmoteConfig = SmoteConfig()
) -> tuple[np.ndarray, np.ndarray]:
    """Balance every class up to the majority-class count.

    Original rows come back unchanged and first, synthetic rows appended
    grouped by ascending class id. A class with m <= k members uses
    k' = m - 1 neighbors (logged); a singleton class is an error.
    """
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=np.int64)
    if X.ndim != 2 or len(X) != len(y):
        raise ConfigurationError("X must be (n, d) with one label per row")
    if not np.all(np.isfinite(X)):
        raise ConfigurationError("features must be finite")
    classes, counts = np.unique(y, return_counts=True)
    for cls, cnt in zip(classes, counts):
        if cnt < 2:
            raise ConfigurationError(
                f"class {cls} has a single sample; SMOTE needs >= 2"
            )
    target = counts.max()
    new_rows = []
    new_labels = []
    for cls, cnt in zip(classes, counts):
        need = target - cnt
        if need == 0:
            continue
        members = np.flatnonzero(y == cls)
        rows = X[members]
        k = min(config.k, cnt - 1)
        if k < config.k:
            logger.info(
                "smote: class %d has %d members, using k=%d", cls, cnt, k
            )
        rng = np.random.default_rng([config.seed, int(cls)])
        for _ in range(need):
            base = rng.integers(cnt)
            neighbors = _nearest_same_class(rows, int(base), k)
            pick = neighbors[rng.integers(k)]
            u = rng.random()
            new_rows.append(rows[base] + u * (rows[pick] - rows[base]))
            new_labels.append(cls)
    if not new_rows:
        return X.copy(), y.copy()
    X_out = np.vstack([X, np.array(new_rows)])
    y_out = np.concatenate([y, np.array(new_labels, dtype=np.int64)])
    return X_out, y_out
