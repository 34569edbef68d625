"""Dataset-shape profiling and pipeline recommendation.

Maps (corpus size, typical document length) to a recommended
(resampler, model) pair; the representation is always word2vec, the only
one with consistently strong results across dataset shapes.
"""

from __future__ import annotations

import statistics
from dataclasses import dataclass

from newscat.corpus import LabeledCorpus
from newscat.errors import EmptyCorpusError
from newscat.vocab import tokenize

SIZE_THRESHOLD = 300       # docs at or above count as "large"
LENGTH_THRESHOLD = 30      # median tokens at or above count as "long"


@dataclass(frozen=True)
class DatasetProfile:
    n_docs: int
    median_tokens: float
    size_class: str    # "large" | "small"
    length_class: str  # "long" | "short"


@dataclass(frozen=True)
class Recommendation:
    resampler: str
    model: str
    representation: str
    rationale: str
    caveat: str | None = None


def profile_corpus(
    corpus: LabeledCorpus,
    size_threshold: int = SIZE_THRESHOLD,
    length_threshold: int = LENGTH_THRESHOLD,
) -> DatasetProfile:
    if len(corpus) == 0:
        raise EmptyCorpusError("cannot profile an empty corpus")
    median_tokens = statistics.median(
        len(tokenize(d.text)) for d in corpus.documents
    )
    return DatasetProfile(
        n_docs=len(corpus),
        median_tokens=float(median_tokens),
        size_class="large" if len(corpus) >= size_threshold else "small",
        length_class="long" if median_tokens >= length_threshold else "short",
    )


def recommend(profile: DatasetProfile) -> Recommendation:
    """Total mapping from the four shape cells to a pipeline choice."""
    cell = (profile.size_class, profile.length_class)
    if cell == ("large", "long"):
        return Recommendation(
            resampler="augment",
            model="lstm",
            representation="word2vec",
            rationale=(
                "large long-text datasets: contextual augmentation over "
                "SMOTE, with an LSTM classifier"
            ),
        )
    if cell == ("large", "short"):
        return Recommendation(
            resampler="smote",
            model="gbt",
            representation="word2vec",
            rationale=(
                "large short-text datasets: SMOTE over contextual "
                "augmentation, with gradient-boosted trees"
            ),
        )
    if cell == ("small", "short"):
        return Recommendation(
            resampler="augment",
            model="gbt",
            representation="word2vec",
            rationale=(
                "small short-text datasets: contextual augmentation over "
                "SMOTE, with gradient-boosted trees"
            ),
        )
    return Recommendation(
        resampler="augment",
        model="gbt",
        representation="word2vec",
        rationale="small long-text datasets: defaulting to augmentation + "
        "gradient-boosted trees",
        caveat="outside the evidence base; no small long-text dataset was "
        "benchmarked",
    )
