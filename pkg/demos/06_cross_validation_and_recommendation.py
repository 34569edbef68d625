"""Stratified cross-validation with macro metrics, then a pipeline
recommendation from the dataset's shape profile.
"""

from newscat.datasets import make_toy_corpus, make_unlabeled_sentences
from newscat.embeddings import SgnsConfig, train_sgns
from newscat.evaluate import (
    ModelSpec,
    RepresentationSpec,
    ResamplerSpec,
    cross_validate,
)
from newscat.recommend import profile_corpus, recommend

table = train_sgns(
    make_unlabeled_sentences(500, seed=1), SgnsConfig(dim=24, window=4, epochs=3, seed=7)
)
corpus = make_toy_corpus("titles", seed=0)

report = cross_validate(
    corpus,
    RepresentationSpec("word2vec", table=table),
    ResamplerSpec("none"),
    ModelSpec("logreg"),
    k=5,
    seed=0,
    n_resamples=500,
)
print("word2vec + logreg, stratified 5-fold:")
print(f"  macro precision {report.precision_macro:.4f}")
print(f"  macro recall    {report.recall_macro:.4f}")
print(f"  macro F1        {report.f1_macro:.4f}")
print(f"  accuracy        {report.accuracy:.4f}")
low, high = report.f1_ci
print(f"  F1 bootstrap CI ({low:.4f}, {high:.4f})")
print("  confusion matrix:")
for row in report.confusion:
    print("   ", row.tolist())

profile = profile_corpus(corpus)
rec = recommend(profile)
print(
    f"\nshape profile: {profile.n_docs} docs, median "
    f"{profile.median_tokens:.0f} tokens -> ({profile.size_class}, {profile.length_class})"
)
print(f"recommended pipeline: {rec.resampler} + {rec.model} on {rec.representation}")
print(f"rationale: {rec.rationale}")
