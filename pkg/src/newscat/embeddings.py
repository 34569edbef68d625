"""Skip-gram negative-sampling word embeddings, trained with plain SGD.

Single-threaded training is deterministic for a fixed seed. Negatives are
drawn from the unigram distribution raised to the 3/4 power. The table
serves document mean-pooling and similarity queries.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

import numpy as np

from newscat.errors import ConfigurationError, TokenNotFoundError


@dataclass(frozen=True)
class SgnsConfig:
    dim: int = 300
    window: int = 5
    negatives: int = 5
    epochs: int = 5
    learning_rate: float = 0.025
    min_count: int = 2
    seed: int = 0

    def __post_init__(self):
        if min(self.dim, self.window, self.negatives, self.min_count) < 1:
            raise ConfigurationError("dim/window/negatives/min_count must be >= 1")
        if self.epochs < 0:
            raise ConfigurationError("epochs must be >= 0")
        if not (0 < self.learning_rate < 1):
            raise ConfigurationError("learning_rate must be in (0, 1)")


class EmbeddingTable:
    """token -> dense vector map with similarity queries.

    ``epoch_mean_loss`` holds the mean per-pair training loss of each
    epoch when the table came out of :func:`train_sgns`.
    """

    def __init__(self, tokens, vectors, epoch_mean_loss=None):
        vectors = np.asarray(vectors, dtype=np.float64)
        if vectors.ndim != 2 or vectors.shape[0] != len(tokens):
            raise ConfigurationError("vectors must be a (|tokens|, dim) matrix")
        if not np.all(np.isfinite(vectors)):
            raise ConfigurationError("embedding vectors must be finite")
        self.tokens = tuple(tokens)
        self.vectors = vectors
        self.index = {t: i for i, t in enumerate(self.tokens)}
        self.epoch_mean_loss = list(epoch_mean_loss or [])

    @property
    def dim(self) -> int:
        return self.vectors.shape[1]

    def __len__(self) -> int:
        return len(self.tokens)

    def __contains__(self, token: str) -> bool:
        return token in self.index

    def vector(self, token: str) -> np.ndarray:
        try:
            return self.vectors[self.index[token]]
        except KeyError:
            raise TokenNotFoundError(f"token not in embedding table: {token!r}")

    def save(self, path) -> None:
        """Text format: header `<vocab_size> <dim>`, then `token v1 ... vdim`."""
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(f"{len(self)} {self.dim}\n")
            for token, row in zip(self.tokens, self.vectors):
                fh.write(token + " " + " ".join(repr(float(x)) for x in row) + "\n")

    @classmethod
    def load(cls, path) -> "EmbeddingTable":
        with open(path, encoding="utf-8") as fh:
            n, dim = map(int, fh.readline().split())
            tokens = []
            rows = np.empty((n, dim))
            for i in range(n):
                parts = fh.readline().rstrip("\n").split(" ")
                tokens.append(parts[0])
                rows[i] = [float(x) for x in parts[1:]]
        return cls(tokens, rows)


def _log_sigmoid(x: float) -> float:
    if x >= 0:
        return -np.log1p(np.exp(-x))
    return x - np.log1p(np.exp(x))


def _sigmoid(x):
    return 1.0 / (1.0 + np.exp(-np.clip(x, -500, 500)))


def sgns_pair_loss_and_grad(v_center, out_rows, is_positive):
    """Loss and analytic gradients of one (center, context, negatives) tuple.

    ``out_rows`` stacks the output vectors of the positive context and the
    sampled negatives; ``is_positive`` is the matching 0/1 vector. Returns
    (loss, grad_center, grad_out_rows).
    """
    out_rows = np.asarray(out_rows, dtype=np.float64)
    y = np.asarray(is_positive, dtype=np.float64)
    scores = out_rows @ v_center
    loss = -sum(
        _log_sigmoid(s if yi else -s) for s, yi in zip(scores, y)
    )
    residual = _sigmoid(scores) - y          # d loss / d score
    grad_center = residual @ out_rows
    grad_out = np.outer(residual, v_center)
    return loss, grad_center, grad_out


def _retained_vocab(sentences, min_count):
    counts = Counter()
    for sent in sentences:
        counts.update(sent)
    kept = sorted(
        (t for t, c in counts.items() if c >= min_count),
        key=lambda t: (-counts[t], t),
    )
    return kept, np.array([counts[t] for t in kept], dtype=np.float64)


def train_sgns(sentences, config: SgnsConfig = SgnsConfig()) -> EmbeddingTable:
    """Train skip-gram embeddings with negative sampling on token lists.

    Deterministic given ``config.seed`` (single-threaded). With
    ``epochs=0`` the seeded random initialization is returned unchanged.
    """
    sentences = [list(s) for s in sentences]
    kept, counts = _retained_vocab(sentences, config.min_count)
    if len(kept) < 2:
        raise ConfigurationError(
            "corpus too small: fewer than 2 tokens meet min_count"
        )
    index = {t: i for i, t in enumerate(kept)}
    vocab_size = len(kept)
    rng = np.random.default_rng(config.seed)

    v_in = (rng.random((vocab_size, config.dim)) - 0.5) / config.dim
    v_out = np.zeros((vocab_size, config.dim))

    # Unigram^0.75 negative-sampling distribution as a cumulative table.
    noise = counts ** 0.75
    noise_cdf = np.cumsum(noise / noise.sum())

    encoded = [[index[t] for t in sent if t in index] for sent in sentences]
    # Exact pair count, for the linear learning-rate decay schedule.
    pairs_per_epoch = 0
    for s in encoded:
        n = len(s)
        for i in range(n):
            lo, hi = max(0, i - config.window), min(n, i + config.window + 1)
            pairs_per_epoch += hi - lo - 1
    total_pairs = max(1, pairs_per_epoch * config.epochs)

    epoch_mean_loss = []
    seen = 0
    for _epoch in range(config.epochs):
        loss_sum = 0.0
        loss_n = 0
        for sent in encoded:
            n = len(sent)
            for i in range(n):
                center = sent[i]
                lo, hi = max(0, i - config.window), min(n, i + config.window + 1)
                for j in range(lo, hi):
                    if j == i:
                        continue
                    context = sent[j]
                    draws = rng.random(config.negatives)
                    negs = np.minimum(
                        np.searchsorted(noise_cdf, draws), vocab_size - 1
                    )
                    rows = np.concatenate(([context], negs))
                    y = np.zeros(len(rows))
                    y[0] = 1.0
                    loss, g_center, g_out = sgns_pair_loss_and_grad(
                        v_in[center], v_out[rows], y
                    )
                    lr = config.learning_rate * max(1e-4, 1.0 - seen / total_pairs)
                    v_in[center] -= lr * g_center
                    # Scatter-subtract handles repeated negative ids.
                    np.subtract.at(v_out, rows, lr * g_out)
                    loss_sum += loss
                    loss_n += 1
                    seen += 1
        epoch_mean_loss.append(loss_sum / max(1, loss_n))
    return EmbeddingTable(kept, v_in, epoch_mean_loss=epoch_mean_loss)


def embed_document_mean(table: EmbeddingTable, tokens) -> tuple[np.ndarray, bool]:
    """Mean of in-vocabulary token vectors.

    Returns (vector, all_oov). All-OOV or empty inputs yield the zero
    vector with the flag set.
    """
    rows = [table.index[t] for t in tokens if t in table.index]
    if not rows:
        return np.zeros(table.dim), True
    return table.vectors[rows].mean(axis=0), False


def cosine_similarity(u, v) -> float:
    """dot(u, v) / (|u| |v|); defined as 0.0 when either vector is zero."""
    u = np.asarray(u, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    nu, nv = np.linalg.norm(u), np.linalg.norm(v)
    if nu == 0.0 or nv == 0.0:
        return 0.0
    return float(np.dot(u, v) / (nu * nv))


def top_k_neighbors(
    table: EmbeddingTable, token: str, k: int
) -> list[tuple[str, float]]:
    """The k most cosine-similar other tokens, ties broken lexicographically."""
    if k < 1:
        raise ConfigurationError("k must be >= 1")
    if token not in table:
        raise TokenNotFoundError(f"token not in embedding table: {token!r}")
    query = table.vector(token)
    sims = [
        (other, cosine_similarity(query, table.vectors[i]))
        for i, other in enumerate(table.tokens)
        if other != token
    ]
    sims.sort(key=lambda p: (-p[1], p[0]))
    return sims[:k]
