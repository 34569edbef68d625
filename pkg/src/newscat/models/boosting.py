"""Second-order gradient-boosted regression trees on softmax logits.

Each boosting round grows one regression tree per class on the softmax
gradient/hessian statistics. Splits are found by exact greedy search over
all features and thresholds, maximizing the regularized gain

    0.5 * (GL^2/(HL+lambda) + GR^2/(HR+lambda) - G^2/(H+lambda))

and leaves take the weight -G/(H+lambda) scaled by the learning rate.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from newscat.errors import ConfigurationError
from newscat.models.base import check_dense, softmax


@dataclass(frozen=True)
class GbtConfig:
    n_rounds: int = 50
    max_depth: int = 3
    learning_rate: float = 0.3
    reg_lambda: float = 1.0
    min_child_weight: float = 1e-6

    def __post_init__(self):
        if self.n_rounds < 1 or self.max_depth < 1:
            raise ConfigurationError("n_rounds and max_depth must be >= 1")
        if self.learning_rate <= 0 or self.reg_lambda < 0:
            raise ConfigurationError("learning_rate > 0 and reg_lambda >= 0 required")


def _leaf_weight(g_sum, h_sum, lam):
    return -g_sum / (h_sum + lam)


def _best_split(X, g, h, config):
    """Exact greedy split over all features; returns (gain, feature, threshold)."""
    lam = config.reg_lambda
    G, H = g.sum(), h.sum()
    parent_score = G * G / (H + lam)
    best = (0.0, None, None)
    for feat in range(X.shape[1]):
        order = np.argsort(X[:, feat], kind="stable")
        xs = X[order, feat]
        gs = np.cumsum(g[order])
        hs = np.cumsum(h[order])
        # Split between consecutive distinct values only.
        for pos in range(len(xs) - 1):
            if xs[pos] == xs[pos + 1]:
                continue
            GL, HL = gs[pos], hs[pos]
            GR, HR = G - GL, H - HL
            if HL < config.min_child_weight or HR < config.min_child_weight:
                continue
            gain = 0.5 * (
                GL * GL / (HL + lam) + GR * GR / (HR + lam) - parent_score
            )
            if gain > best[0]:
                best = (gain, feat, 0.5 * (xs[pos] + xs[pos + 1]))
    return best


def _grow_tree(X, g, h, depth, config):
    """Nested-dict tree: {"leaf": w} or {"feat", "thr", "left", "right"}."""
    if depth >= config.max_depth or len(X) < 2:
        return {"leaf": _leaf_weight(g.sum(), h.sum(), config.reg_lambda)}
    gain, feat, thr = _best_split(X, g, h, config)
    if feat is None or gain <= 0:
        return {"leaf": _leaf_weight(g.sum(), h.sum(), config.reg_lambda)}
    mask = X[:, feat] < thr
    return {
        "feat": int(feat),
        "thr": float(thr),
        "left": _grow_tree(X[mask], g[mask], h[mask], depth + 1, config),
        "right": _grow_tree(X[~mask], g[~mask], h[~mask], depth + 1, config),
    }


def _tree_predict(tree, X):
    out = np.empty(len(X))
    stack = [(tree, np.arange(len(X)))]
    while stack:
        node, idx = stack.pop()
        if "leaf" in node:
            out[idx] = node["leaf"]
            continue
        mask = X[idx, node["feat"]] < node["thr"]
        stack.append((node["left"], idx[mask]))
        stack.append((node["right"], idx[~mask]))
    return out


class GradientBoostedTrees:
    kind = "gbt"
    feature_contract = "dense"

    def __init__(self, label_names, config: GbtConfig = GbtConfig()):
        self.label_names = tuple(label_names)
        self.config = config
        self.trees: list[list[dict]] = []  # [round][class]
        self.logloss_trace: list[float] = []

    def fit(self, X, y):
        X = check_dense(X)
        y = np.asarray(y, dtype=np.int64)
        n_classes = len(self.label_names)
        Y = np.eye(n_classes)[y]
        F = np.zeros((len(X), n_classes))
        self.trees = []
        self.logloss_trace = []
        for _ in range(self.config.n_rounds):
            P = softmax(F)
            round_trees = []
            for c in range(n_classes):
                g = P[:, c] - Y[:, c]
                h = np.maximum(P[:, c] * (1.0 - P[:, c]), 1e-16)
                tree = _grow_tree(X, g, h, 0, self.config)
                F[:, c] += self.config.learning_rate * _tree_predict(tree, X)
                round_trees.append(tree)
            self.trees.append(round_trees)
            P = softmax(F)
            self.logloss_trace.append(
                float(-np.mean(np.log(P[np.arange(len(y)), y] + 1e-300)))
            )
        return self

    def _logits(self, X):
        F = np.zeros((len(X), len(self.label_names)))
        for round_trees in self.trees:
            for c, tree in enumerate(round_trees):
                F[:, c] += self.config.learning_rate * _tree_predict(tree, X)
        return F

    def predict_proba(self, X) -> np.ndarray:
        X = check_dense(X)
        return softmax(self._logits(X))

    def to_params(self) -> dict:
        return {
            "learning_rate": self.config.learning_rate,
            "trees": self.trees,
        }

    @classmethod
    def from_params(cls, label_names, params) -> "GradientBoostedTrees":
        model = cls(
            label_names, GbtConfig(learning_rate=params["learning_rate"])
        )
        model.trees = params["trees"]
        return model
