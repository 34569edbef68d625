"""Bundled synthetic fixtures: class-conditional toy corpora.

Two labeled corpora stand in for the real dataset shape classes:
``toy-articles`` (5 classes x 40 docs, ~80 tokens each) and
``toy-titles`` (5 classes x 12 docs, ~5 tokens each). An unlabeled
sentence stream from the same token distributions serves as embedding
pretraining data, so embedding neighborhoods align with classes.
"""

from __future__ import annotations

import numpy as np

from newscat.corpus import Document, LabeledCorpus, LabelSet

N_CLASSES = 5
TOKENS_PER_CLASS = 12
SHARED_TOKENS = 20
CLASS_NAMES = ("politics", "sport", "economy", "education", "society")


def _class_tokens(cls: int) -> list[str]:
    return [f"w{cls}t{j:02d}" for j in range(TOKENS_PER_CLASS)]


def _shared_tokens() -> list[str]:
    return [f"shared{j:02d}" for j in range(SHARED_TOKENS)]


def _sample_doc(rng, cls: int, length: int, class_weight: float = 0.7) -> str:
    own = _class_tokens(cls)
    shared = _shared_tokens()
    tokens = []
    for _ in range(length):
        if rng.random() < class_weight:
            tokens.append(own[rng.integers(len(own))])
        else:
            tokens.append(shared[rng.integers(len(shared))])
    return " ".join(tokens)


def make_toy_corpus(
    kind: str = "titles",
    seed: int = 0,
    docs_per_class: int | None = None,
) -> LabeledCorpus:
    """Deterministic labeled toy corpus ("titles" or "articles")."""
    if kind == "titles":
        # short and noisy: titles share 40% of their tokens across classes
        docs_per_class = docs_per_class or 12
        mean_len = 5
        class_weight = 0.6
    elif kind == "articles":
        docs_per_class = docs_per_class or 40
        mean_len = 80
        class_weight = 0.7
    else:
        raise ValueError(f"unknown toy corpus kind {kind!r}")
    rng = np.random.default_rng([seed, {"titles": 0, "articles": 1}[kind]])
    documents = []
    labels = []
    for cls in range(N_CLASSES):
        for d in range(docs_per_class):
            length = max(3, int(rng.normal(mean_len, mean_len / 4)))
            documents.append(
                Document(
                    id=f"{kind}-{cls}-{d}",
                    text=_sample_doc(rng, cls, length, class_weight),
                )
            )
            labels.append(cls)
    return LabeledCorpus(
        documents=tuple(documents),
        labels=tuple(labels),
        label_set=LabelSet(CLASS_NAMES),
    )


def make_unlabeled_sentences(
    n_sentences: int = 2000, seed: int = 1, mean_len: int = 12
) -> list[list[str]]:
    """Unlabeled pretraining sentences, each drawn from one latent class.

    Same-class tokens co-occur heavily, so trained embeddings cluster by
    class and neighbor replacement stays label-consistent.
    """
    rng = np.random.default_rng(seed)
    sentences = []
    for _ in range(n_sentences):
        cls = int(rng.integers(N_CLASSES))
        length = max(4, int(rng.normal(mean_len, 3)))
        sentences.append(_sample_doc(rng, cls, length).split())
    return sentences
