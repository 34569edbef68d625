"""Shared classifier plumbing: prediction helpers and persistence.

Every model exposes ``kind``, ``feature_contract`` (one of "sparse",
"dense", "sequence"), ``label_names`` and ``predict_proba`` returning one
probability row per input that sums to 1.
"""

from __future__ import annotations

import json

import numpy as np

from newscat.errors import ConfigurationError, FeatureContractError

FORMAT_VERSION = 1


def check_dense(X) -> np.ndarray:
    X = np.asarray(X, dtype=np.float64)
    if X.ndim != 2:
        raise FeatureContractError("expected a 2-D feature matrix")
    if not np.all(np.isfinite(X)):
        raise FeatureContractError("features must be finite")
    return X


def predict_labels(model, X) -> np.ndarray:
    """argmax over predict_proba rows; ties go to the lowest class id."""
    return np.argmax(model.predict_proba(X), axis=1)


def save_model(model, path) -> None:
    payload = {
        "format_version": FORMAT_VERSION,
        "kind": model.kind,
        "feature_contract": model.feature_contract,
        "label_names": list(model.label_names),
        "params": model.to_params(),
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh)


def load_model(path, expected_contract: str | None = None):
    from newscat.models.naive_bayes import MultinomialNaiveBayes, GaussianNaiveBayes
    from newscat.models.linear import SoftmaxRegression
    from newscat.models.boosting import GradientBoostedTrees
    from newscat.models.lstm import LstmClassifier

    with open(path, encoding="utf-8") as fh:
        payload = json.load(fh)
    if payload.get("format_version") != FORMAT_VERSION:
        raise ConfigurationError(
            f"unsupported model format: {payload.get('format_version')}"
        )
    if (
        expected_contract is not None
        and payload["feature_contract"] != expected_contract
    ):
        raise FeatureContractError(
            f"model has contract {payload['feature_contract']!r}, "
            f"expected {expected_contract!r}"
        )
    registry = {
        "nb_multinomial": MultinomialNaiveBayes,
        "nb_gaussian": GaussianNaiveBayes,
        "logreg": SoftmaxRegression,
        "gbt": GradientBoostedTrees,
        "lstm": LstmClassifier,
    }
    kind = payload["kind"]
    if kind not in registry:
        raise ConfigurationError(f"unknown model kind {kind!r}")
    return registry[kind].from_params(payload["label_names"], payload["params"])


def softmax(logits: np.ndarray) -> np.ndarray:
    z = logits - logits.max(axis=1, keepdims=True)
    e = np.exp(z)
    return e / e.sum(axis=1, keepdims=True)
