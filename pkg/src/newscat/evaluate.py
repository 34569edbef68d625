"""Stratified cross-validated evaluation with macro metrics and bootstrap
confidence intervals.

All per-fold fitting (vocabulary, tf-idf weights, resampling) happens
strictly inside the training split; held-out folds are only ever
transformed and predicted, never used to fit anything.
"""

from __future__ import annotations

import hashlib
import logging
from dataclasses import dataclass, field, replace

import numpy as np

from newscat.augment import AugmentConfig, augment_training_set
from newscat.corpus import LabeledCorpus
from newscat.embeddings import EmbeddingTable, embed_document_mean
from newscat.errors import ConfigurationError, EmptyCorpusError
from newscat.models.base import predict_labels
from newscat.models.boosting import GbtConfig, GradientBoostedTrees
from newscat.models.linear import LogregConfig, SoftmaxRegression
from newscat.models.lstm import LstmClassifier, LstmConfig
from newscat.models.naive_bayes import GaussianNaiveBayes, MultinomialNaiveBayes
from newscat.smote import SmoteConfig, smote_fit_resample
from newscat.vectorize import bow_transform, tfidf_fit, tfidf_transform, to_dense_matrix
from newscat.vocab import build_vocabulary, tokenize

logger = logging.getLogger(__name__)

REPRESENTATIONS = ("bow", "tfidf", "word2vec")
RESAMPLERS = ("none", "augment", "smote")
MODELS = ("nb", "logreg", "gbt", "lstm")


@dataclass(frozen=True)
class RepresentationSpec:
    kind: str
    table: EmbeddingTable | None = None
    max_tokens: int = 20_000

    def __post_init__(self):
        if self.kind not in REPRESENTATIONS:
            raise ConfigurationError(f"unknown representation {self.kind!r}")


@dataclass(frozen=True)
class ResamplerSpec:
    kind: str = "none"
    augment: AugmentConfig = AugmentConfig()
    smote: SmoteConfig = SmoteConfig()

    def __post_init__(self):
        if self.kind not in RESAMPLERS:
            raise ConfigurationError(f"unknown resampler {self.kind!r}")


@dataclass(frozen=True)
class ModelSpec:
    kind: str
    nb_alpha: float = 1.0
    nb_var_floor: float = 1e-9
    logreg: LogregConfig = LogregConfig()
    gbt: GbtConfig = GbtConfig()
    lstm: LstmConfig = LstmConfig()

    def __post_init__(self):
        if self.kind not in MODELS:
            raise ConfigurationError(f"unknown model {self.kind!r}")


def validate_combination(rep: RepresentationSpec, resampler: ResamplerSpec, model: ModelSpec):
    """Reject spec combinations with no defined semantics."""
    if model.kind == "lstm" and rep.kind != "word2vec":
        raise ConfigurationError("lstm requires the word2vec representation")
    if model.kind == "lstm" and resampler.kind == "smote":
        raise ConfigurationError(
            "smote interpolates feature vectors, which are not token "
            "sequences; smote+lstm is unsupported"
        )
    if rep.kind == "word2vec" and rep.table is None:
        raise ConfigurationError("word2vec representation needs an embedding table")
    if resampler.kind == "augment" and rep.table is None:
        raise ConfigurationError("augmentation needs an embedding table")


@dataclass
class MetricsReport:
    precision_macro: float
    recall_macro: float
    f1_macro: float
    accuracy: float
    confusion: np.ndarray
    f1_ci: tuple[float, float] | None = None
    n_oov_docs: int = 0
    per_fold_f1: list[float] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "precision_macro": self.precision_macro,
            "recall_macro": self.recall_macro,
            "f1_macro": self.f1_macro,
            "accuracy": self.accuracy,
            "f1_ci": list(self.f1_ci) if self.f1_ci is not None else None,
            "confusion": self.confusion.tolist(),
            "n_oov_docs": self.n_oov_docs,
            "per_fold_f1": self.per_fold_f1,
        }


def stratified_kfold(labels, k: int = 5, seed: int = 0) -> list[np.ndarray]:
    """Disjoint index folds with per-class counts differing by at most 1.

    Shuffles within each class, then deals round-robin to folds. If some
    class has fewer than k members, k is lowered to that count (logged).
    """
    if k < 2:
        raise ConfigurationError("k must be >= 2")
    labels = np.asarray(labels, dtype=np.int64)
    _, counts = np.unique(labels, return_counts=True)
    min_count = int(counts.min())
    if min_count < k:
        logger.warning(
            "smallest class has %d members; lowering k from %d to %d",
            min_count, k, min_count,
        )
        k = min_count
        if k < 2:
            raise ConfigurationError("smallest class has fewer than 2 members")
    rng = np.random.default_rng(seed)
    folds: list[list[int]] = [[] for _ in range(k)]
    for cls in np.unique(labels):
        members = np.flatnonzero(labels == cls)
        rng.shuffle(members)
        for pos, idx in enumerate(members):
            folds[pos % k].append(int(idx))
    return [np.array(sorted(f), dtype=np.int64) for f in folds]


def confusion_and_metrics(y_true, y_pred, n_classes: int) -> MetricsReport:
    """Confusion matrix, macro precision/recall/F1 and accuracy.

    Classes with a zero denominator contribute 0 to the macro average
    (logged); macro averages are unweighted over all classes.
    """
    y_true = np.asarray(y_true, dtype=np.int64)
    y_pred = np.asarray(y_pred, dtype=np.int64)
    if len(y_true) == 0:
        raise ConfigurationError("empty predictions")
    if len(y_true) != len(y_pred):
        raise ConfigurationError("y_true / y_pred length mismatch")
    confusion = np.zeros((n_classes, n_classes), dtype=np.int64)
    for t, p in zip(y_true, y_pred):
        confusion[t, p] += 1
    precision = np.zeros(n_classes)
    recall = np.zeros(n_classes)
    f1 = np.zeros(n_classes)
    for c in range(n_classes):
        tp = confusion[c, c]
        predicted = confusion[:, c].sum()
        actual = confusion[c, :].sum()
        if predicted == 0 or actual == 0:
            logger.debug("class %d has a zero denominator; counted as 0", c)
        precision[c] = tp / predicted if predicted else 0.0
        recall[c] = tp / actual if actual else 0.0
        if precision[c] + recall[c] > 0:
            f1[c] = 2 * precision[c] * recall[c] / (precision[c] + recall[c])
    return MetricsReport(
        precision_macro=float(precision.mean()),
        recall_macro=float(recall.mean()),
        f1_macro=float(f1.mean()),
        accuracy=float(np.trace(confusion) / confusion.sum()),
        confusion=confusion,
    )


def macro_f1(y_true, y_pred, n_classes: int) -> float:
    return confusion_and_metrics(y_true, y_pred, n_classes).f1_macro


def _macro_f1_present(y_true, y_pred) -> float:
    """Macro-F1 over the classes present in y_true or y_pred."""
    classes = np.union1d(y_true, y_pred)
    f1s = []
    for c in classes:
        tp = np.sum((y_true == c) & (y_pred == c))
        fp = np.sum((y_true != c) & (y_pred == c))
        fn = np.sum((y_true == c) & (y_pred != c))
        prec = tp / (tp + fp) if tp + fp else 0.0
        rec = tp / (tp + fn) if tp + fn else 0.0
        f1s.append(2 * prec * rec / (prec + rec) if prec + rec else 0.0)
    return float(np.mean(f1s))


def bootstrap_f1_ci(
    y_true, y_pred, n_resamples: int = 1000, level: float = 0.95, seed: int = 0
) -> tuple[float, float]:
    """Percentile bootstrap interval of macro-F1 over paired resamples.

    Resample r draws indices ``rng.integers(n, size=n)`` from a single
    ``default_rng(seed)`` stream, in order. Within a resample the macro
    average runs over the classes present in that resample, so perfect
    predictions always score 1.0 even when a resample misses a class.
    """
    y_true = np.asarray(y_true, dtype=np.int64)
    y_pred = np.asarray(y_pred, dtype=np.int64)
    if len(y_true) == 0:
        raise ConfigurationError("empty predictions")
    n = len(y_true)
    rng = np.random.default_rng(seed)
    stats = np.empty(n_resamples)
    for r in range(n_resamples):
        idx = rng.integers(n, size=n)
        stats[r] = _macro_f1_present(y_true[idx], y_pred[idx])
    alpha = (1.0 - level) / 2.0
    low = float(np.percentile(stats, 100 * alpha))
    high = float(np.percentile(stats, 100 * (1 - alpha)))
    return (low, high)


def _mean_embedding_features(table, texts):
    rows = []
    n_oov = 0
    for text in texts:
        vec, all_oov = embed_document_mean(table, tokenize(text))
        rows.append(vec)
        n_oov += int(all_oov)
    return np.vstack(rows), n_oov


def _build_model(model: ModelSpec, rep_kind: str, label_names, table):
    if model.kind == "nb":
        if rep_kind == "word2vec":
            return GaussianNaiveBayes(label_names, var_floor=model.nb_var_floor)
        return MultinomialNaiveBayes(label_names, alpha=model.nb_alpha)
    if model.kind == "logreg":
        return SoftmaxRegression(label_names, config=model.logreg)
    if model.kind == "gbt":
        return GradientBoostedTrees(label_names, config=model.gbt)
    return LstmClassifier(label_names, table, config=model.lstm)


def run_fold(
    corpus: LabeledCorpus,
    train_idx,
    test_idx,
    rep: RepresentationSpec,
    resampler: ResamplerSpec,
    model: ModelSpec,
) -> tuple[np.ndarray, dict, int]:
    """Fit one CV fold and predict its held-out documents.

    Returns (test predictions, fitted-state fingerprint, oov count on the
    held-out fold). The fingerprint covers every artifact fitted in this
    fold (vocabulary, idf weights, resampled training features, model
    parameters) and exists so tests can assert that held-out text never
    leaks into fitting.
    """
    validate_combination(rep, resampler, model)
    train = corpus.subset(train_idx)
    test_texts = [corpus.documents[i].text for i in test_idx]
    state: dict = {}

    if resampler.kind == "augment":
        train = augment_training_set(train, rep.table, resampler.augment)
    y_train = np.asarray(train.labels, dtype=np.int64)
    label_names = corpus.label_set.names
    train_texts = [d.text for d in train.documents]
    n_oov = 0

    if rep.kind in ("bow", "tfidf"):
        vocab = build_vocabulary(train, max_size=rep.max_tokens)
        state["vocab_tokens"] = vocab.tokens
        if rep.kind == "bow":
            Xtr = to_dense_matrix([bow_transform(vocab, t) for t in train_texts])
            Xte = to_dense_matrix([bow_transform(vocab, t) for t in test_texts])
        else:
            tfidf = tfidf_fit(vocab, train)
            state["idf"] = tfidf.idf.tobytes()
            Xtr = to_dense_matrix([tfidf_transform(tfidf, t) for t in train_texts])
            Xte = to_dense_matrix([tfidf_transform(tfidf, t) for t in test_texts])
    elif model.kind == "lstm":
        Xtr = [
            [rep.table.index[t] for t in tokenize(text) if t in rep.table.index]
            for text in train_texts
        ]
        Xte = [
            [rep.table.index[t] for t in tokenize(text) if t in rep.table.index]
            for text in test_texts
        ]
        n_oov = sum(1 for s in Xte if not s)
    else:
        Xtr, _ = _mean_embedding_features(rep.table, train_texts)
        Xte, n_oov = _mean_embedding_features(rep.table, test_texts)

    if resampler.kind == "smote":
        Xtr, y_train = smote_fit_resample(np.asarray(Xtr), y_train, resampler.smote)

    if model.kind == "lstm":
        state["train_fingerprint"] = hashlib.sha256(
            repr(Xtr).encode()
        ).hexdigest()
    else:
        Xtr = np.asarray(Xtr, dtype=np.float64)
        state["train_fingerprint"] = hashlib.sha256(Xtr.tobytes()).hexdigest()
    state["train_labels"] = tuple(int(v) for v in y_train)

    clf = _build_model(model, rep.kind, label_names, rep.table)
    clf.fit(Xtr, y_train)
    state["model_params"] = hashlib.sha256(
        repr(clf.to_params()).encode()
    ).hexdigest()
    y_pred = predict_labels(clf, Xte)
    return y_pred, state, n_oov


def cross_validate(
    corpus: LabeledCorpus,
    rep: RepresentationSpec,
    resampler: ResamplerSpec,
    model: ModelSpec,
    k: int = 5,
    seed: int = 0,
    n_resamples: int = 1000,
) -> MetricsReport:
    """Stratified k-fold evaluation with pooled out-of-fold predictions.

    Resampling and all fitting happen inside each training split only;
    held-out folds are never augmented or oversampled. The confidence
    interval is computed on the pooled predictions.
    """
    if len(corpus) == 0:
        raise EmptyCorpusError("cannot evaluate an empty corpus")
    validate_combination(rep, resampler, model)
    labels = np.asarray(corpus.labels, dtype=np.int64)
    folds = stratified_kfold(labels, k=k, seed=seed)
    all_idx = np.arange(len(corpus))
    y_pred = np.full(len(corpus), -1, dtype=np.int64)
    n_oov_total = 0
    per_fold_f1 = []
    n_classes = len(corpus.label_set)
    for f, test_idx in enumerate(folds):
        train_idx = np.setdiff1d(all_idx, test_idx)
        try:
            fold_pred, _, n_oov = run_fold(
                corpus, train_idx, test_idx, rep, resampler, model
            )
        except Exception as exc:
            raise ConfigurationError(f"fold {f} failed: {exc}") from exc
        y_pred[test_idx] = fold_pred
        n_oov_total += n_oov
        per_fold_f1.append(macro_f1(labels[test_idx], fold_pred, n_classes))
    report = confusion_and_metrics(labels, y_pred, n_classes)
    report.f1_ci = bootstrap_f1_ci(
        labels, y_pred, n_resamples=n_resamples, seed=seed
    )
    report.n_oov_docs = n_oov_total
    report.per_fold_f1 = per_fold_f1
    return report
