"""Multinomial and Gaussian naive Bayes.

The multinomial variant serves count-like (bag-of-words / tf-idf)
features and requires nonnegative inputs; the Gaussian variant serves
dense mean-embedding features.
"""

from __future__ import annotations

import numpy as np

from newscat.errors import FeatureContractError
from newscat.models.base import check_dense


def _posterior_from_log_joint(log_joint: np.ndarray) -> np.ndarray:
    log_joint = log_joint - log_joint.max(axis=1, keepdims=True)
    joint = np.exp(log_joint)
    return joint / joint.sum(axis=1, keepdims=True)


class MultinomialNaiveBayes:
    kind = "nb_multinomial"
    feature_contract = "sparse"

    def __init__(self, label_names, alpha: float = 1.0):
        if alpha <= 0:
            raise FeatureContractError("alpha must be > 0")
        self.label_names = tuple(label_names)
        self.alpha = alpha
        self.log_prior = None
        self.log_likelihood = None  # (C, d)

    def fit(self, X, y):
        X = check_dense(X)
        if np.any(X < 0):
            raise FeatureContractError(
                "multinomial naive Bayes requires nonnegative features"
            )
        y = np.asarray(y, dtype=np.int64)
        n_classes = len(self.label_names)
        n, d = X.shape
        priors = np.zeros(n_classes)
        likelihood = np.zeros((n_classes, d))
        for c in range(n_classes):
            rows = X[y == c]
            priors[c] = len(rows) / n
            totals = rows.sum(axis=0)
            likelihood[c] = (totals + self.alpha) / (
                totals.sum() + self.alpha * d
            )
        with np.errstate(divide="ignore"):
            self.log_prior = np.where(priors > 0, np.log(priors), -np.inf)
        self.log_likelihood = np.log(likelihood)
        return self

    def predict_proba(self, X) -> np.ndarray:
        X = check_dense(X)
        log_joint = self.log_prior + X @ self.log_likelihood.T
        return _posterior_from_log_joint(log_joint)

    def to_params(self) -> dict:
        return {
            "alpha": self.alpha,
            "log_prior": self.log_prior.tolist(),
            "log_likelihood": self.log_likelihood.tolist(),
        }

    @classmethod
    def from_params(cls, label_names, params) -> "MultinomialNaiveBayes":
        model = cls(label_names, alpha=params["alpha"])
        model.log_prior = np.array(params["log_prior"])
        model.log_likelihood = np.array(params["log_likelihood"])
        return model


class GaussianNaiveBayes:
    kind = "nb_gaussian"
    feature_contract = "dense"

    def __init__(self, label_names, var_floor: float = 1e-9):
        if var_floor <= 0:
            raise FeatureContractError("var_floor must be > 0")
        self.label_names = tuple(label_names)
        self.var_floor = var_floor
        self.log_prior = None
        self.means = None  # (C, d)
        self.variances = None  # (C, d)

    def fit(self, X, y):
        X = check_dense(X)
        y = np.asarray(y, dtype=np.int64)
        n_classes = len(self.label_names)
        n, d = X.shape
        priors = np.zeros(n_classes)
        self.means = np.zeros((n_classes, d))
        self.variances = np.full((n_classes, d), self.var_floor)
        for c in range(n_classes):
            rows = X[y == c]
            priors[c] = len(rows) / n
            if len(rows):
                self.means[c] = rows.mean(axis=0)
                self.variances[c] = np.maximum(
                    rows.var(axis=0), self.var_floor
                )
        with np.errstate(divide="ignore"):
            self.log_prior = np.where(priors > 0, np.log(priors), -np.inf)
        return self

    def predict_proba(self, X) -> np.ndarray:
        X = check_dense(X)
        n = len(X)
        n_classes = len(self.label_names)
        log_joint = np.zeros((n, n_classes))
        for c in range(n_classes):
            diff = X - self.means[c]
            log_joint[:, c] = self.log_prior[c] - 0.5 * np.sum(
                np.log(2 * np.pi * self.variances[c])
                + diff**2 / self.variances[c],
                axis=1,
            )
        return _posterior_from_log_joint(log_joint)

    def to_params(self) -> dict:
        return {
            "var_floor": self.var_floor,
            "log_prior": self.log_prior.tolist(),
            "means": self.means.tolist(),
            "variances": self.variances.tolist(),
        }

    @classmethod
    def from_params(cls, label_names, params) -> "GaussianNaiveBayes":
        model = cls(label_names, var_floor=params["var_floor"])
        model.log_prior = np.array(params["log_prior"])
        model.means = np.array(params["means"])
        model.variances = np.array(params["variances"])
        return model
