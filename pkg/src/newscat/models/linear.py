"""Softmax (multinomial logistic) regression trained by full-batch
gradient descent from zero-initialized weights."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from newscat.errors import ConfigurationError
from newscat.models.base import check_dense, softmax


@dataclass(frozen=True)
class LogregConfig:
    learning_rate: float = 0.5
    l2: float = 1e-4
    max_iters: int = 500
    tol: float = 1e-7

    def __post_init__(self):
        if self.learning_rate <= 0 or self.max_iters < 0:
            raise ConfigurationError("learning_rate and max_iters must be positive")


def logreg_loss_and_grad(W, b, X, Y, l2):
    """L2-regularized mean cross-entropy and its analytic gradients.

    The bias is not regularized. Used by both the training loop and the
    finite-difference gradient test.
    """
    n = len(X)
    probs = softmax(X @ W + b)
    eps = 1e-300
    loss = -np.sum(Y * np.log(probs + eps)) / n + 0.5 * l2 * np.sum(W**2)
    residual = (probs - Y) / n
    grad_W = X.T @ residual + l2 * W
    grad_b = residual.sum(axis=0)
    return loss, grad_W, grad_b


class SoftmaxRegression:
    kind = "logreg"
    feature_contract = "dense"

    def __init__(self, label_names, config: LogregConfig = LogregConfig()):
        self.label_names = tuple(label_names)
        self.config = config
        self.W = None
        self.b = None
        self.loss_trace: list[float] = []

    def fit(self, X, y):
        X = check_dense(X)
        y = np.asarray(y, dtype=np.int64)
        n_classes = len(self.label_names)
        if n_classes < 2:
            raise ConfigurationError("need at least 2 classes")
        Y = np.eye(n_classes)[y]
        self.W = np.zeros((X.shape[1], n_classes))
        self.b = np.zeros(n_classes)
        self.loss_trace = []
        prev = np.inf
        for _ in range(self.config.max_iters):
            loss, grad_W, grad_b = logreg_loss_and_grad(
                self.W, self.b, X, Y, self.config.l2
            )
            self.loss_trace.append(loss)
            if prev - loss < self.config.tol:
                break
            prev = loss
            self.W -= self.config.learning_rate * grad_W
            self.b -= self.config.learning_rate * grad_b
        return self

    def predict_proba(self, X) -> np.ndarray:
        X = check_dense(X)
        return softmax(X @ self.W + self.b)

    def to_params(self) -> dict:
        return {"W": self.W.tolist(), "b": self.b.tolist()}

    @classmethod
    def from_params(cls, label_names, params) -> "SoftmaxRegression":
        model = cls(label_names)
        model.W = np.array(params["W"])
        model.b = np.array(params["b"])
        return model
