"""Bag-of-words and TF-IDF sparse document features.

The idf uses the smoothed form ln((1 + N) / (1 + df)) + 1 and TF-IDF
vectors are L2-normalized, so idf is always >= 1 and every nonzero
transformed vector has unit Euclidean norm.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

import numpy as np

from newscat.corpus import LabeledCorpus
from newscat.errors import ConfigurationError, EmptyCorpusError
from newscat.vocab import Vocabulary, tokenize


@dataclass(frozen=True)
class SparseVector:
    """Sorted (index, value) pairs of a single document feature row."""

    indices: np.ndarray  # strictly increasing int token ids
    values: np.ndarray   # positive finite reals, same length
    dim: int

    def __post_init__(self):
        if len(self.indices) != len(self.values):
            raise ConfigurationError("indices/values length mismatch")
        if len(self.indices) and (
            np.any(np.diff(self.indices) <= 0)
            or self.indices[0] < 0
            or self.indices[-1] >= self.dim
        ):
            raise ConfigurationError("indices must be sorted, unique, < dim")
        if len(self.values) and (
            not np.all(np.isfinite(self.values)) or np.any(self.values <= 0)
        ):
            raise ConfigurationError("values must be finite and > 0")

    def to_dense(self) -> np.ndarray:
        dense = np.zeros(self.dim)
        dense[self.indices] = self.values
        return dense


def to_dense_matrix(rows: list[SparseVector]) -> np.ndarray:
    """Stack sparse rows into a dense (n, dim) matrix."""
    if not rows:
        raise ConfigurationError("no rows to stack")
    return np.vstack([r.to_dense() for r in rows])


def bow_transform(vocab: Vocabulary, text: str) -> SparseVector:
    """Raw token counts over the vocabulary; OOV tokens are ignored."""
    index = vocab.index
    counts = Counter(index[t] for t in tokenize(text) if t in index)
    ids = np.array(sorted(counts), dtype=np.int64)
    values = np.array([float(counts[i]) for i in ids])
    return SparseVector(indices=ids, values=values, dim=len(vocab))


@dataclass(frozen=True)
class TfidfModel:
    vocab: Vocabulary
    idf: np.ndarray  # one positive weight per vocabulary token
    n_docs: int


def tfidf_fit(vocab: Vocabulary, corpus: LabeledCorpus) -> TfidfModel:
    """Compute smoothed idf weights over the training corpus."""
    if len(corpus) == 0:
        raise EmptyCorpusError("cannot fit tf-idf on an empty corpus")
    n = len(corpus)
    df = np.zeros(len(vocab))
    index = vocab.index
    for doc in corpus.documents:
        for t in set(tokenize(doc.text)):
            if t in index:
                df[index[t]] += 1
    idf = np.log((1.0 + n) / (1.0 + df)) + 1.0
    return TfidfModel(vocab=vocab, idf=idf, n_docs=n)


def tfidf_transform(model: TfidfModel, text: str) -> SparseVector:
    """count * idf, then L2-normalize the whole row (when nonzero)."""
    bow = bow_transform(model.vocab, text)
    values = bow.values * model.idf[bow.indices]
    norm = np.linalg.norm(values)
    if norm > 0:
        values = values / norm
    return SparseVector(indices=bow.indices, values=values, dim=bow.dim)
