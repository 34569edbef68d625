"""Contextual data augmentation via embedding-neighbor word replacement.

Each training document gets ``n_copies`` altered copies; each token is
independently replaced (probability ``replace_prob``) by a uniform draw
from its top-k embedding neighbors above ``min_similarity``. Per-copy RNG
streams are derived from (seed, source index, copy index) so results are
independent of evaluation order.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from newscat.corpus import Document, LabeledCorpus
from newscat.embeddings import EmbeddingTable, top_k_neighbors
from newscat.errors import ConfigurationError
from newscat.vocab import tokenize


@dataclass(frozen=True)
class AugmentConfig:
    n_copies: int = 20
    replace_prob: float = 0.15
    k_neighbors: int = 5
    min_similarity: float = 0.5
    seed: int = 0

    def __post_init__(self):
        if self.n_copies < 1:
            raise ConfigurationError("n_copies must be >= 1")
        if not (0 < self.replace_prob <= 1):
            raise ConfigurationError("replace_prob must be in (0, 1]")
        if self.k_neighbors < 1:
            raise ConfigurationError("k_neighbors must be >= 1")
        if not (-1 <= self.min_similarity <= 1):
            raise ConfigurationError("min_similarity must be in [-1, 1]")


class _NeighborCache:
    """Memoized qualifying-replacement lists per token."""

    def __init__(self, table: EmbeddingTable, config: AugmentConfig):
        self.table = table
        self.config = config
        self._cache: dict[str, list[str]] = {}

    def candidates(self, token: str) -> list[str]:
        if token not in self._cache:
            if token in self.table:
                self._cache[token] = [
                    t
                    for t, sim in top_k_neighbors(
                        self.table, token, self.config.k_neighbors
                    )
                    if sim >= self.config.min_similarity
                ]
            else:
                self._cache[token] = []
        return self._cache[token]


def augment_sentence(
    tokens,
    table: EmbeddingTable,
    config: AugmentConfig,
    rng: np.random.Generator,
    _cache: _NeighborCache | None = None,
) -> list[str]:
    """One altered copy of a token list; length is always preserved.

    Every token consumes one uniform draw; a replaced token consumes one
    more (the neighbor choice). OOV tokens and tokens with no qualifying
    neighbor are kept verbatim.
    """
    cache = _cache or _NeighborCache(table, config)
    out = []
    for token in tokens:
        if rng.random() < config.replace_prob:
            candidates = cache.candidates(token)
            if candidates:
                out.append(candidates[rng.integers(len(candidates))])
                continue
        out.append(token)
    return out


def augment_training_set(
    train: LabeledCorpus, table: EmbeddingTable, config: AugmentConfig
) -> LabeledCorpus:
    """Originals first, then n_copies altered copies per document.

    Copy ids encode (source id, copy index). Labels are inherited from the
    source document, so the output label multiset is the input's scaled by
    (1 + n_copies).
    """
    if len(train) == 0:
        raise ConfigurationError("cannot augment an empty training set")
    cache = _NeighborCache(table, config)
    documents = list(train.documents)
    labels = list(train.labels)
    for copy in range(1, config.n_copies + 1):
        for src_idx, (doc, lab) in enumerate(zip(train.documents, train.labels)):
            rng = np.random.default_rng([config.seed, src_idx, copy])
            new_tokens = augment_sentence(
                tokenize(doc.text), table, config, rng, _cache=cache
            )
            documents.append(
                Document(id=f"{doc.id}#aug{copy}", text=" ".join(new_tokens))
            )
            labels.append(lab)
    return LabeledCorpus(
        documents=tuple(documents),
        labels=tuple(labels),
        label_set=train.label_set,
    )
