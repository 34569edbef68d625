import numpy as np
import pytest

from newscat.corpus import Document, LabelSet, LabeledCorpus
from newscat.errors import ConfigurationError
from newscat.evaluate import (
    ModelSpec,
    RepresentationSpec,
    ResamplerSpec,
    bootstrap_f1_ci,
    confusion_and_metrics,
    cross_validate,
    macro_f1,
    run_fold,
    stratified_kfold,
    validate_combination,
)
from newscat.models.linear import LogregConfig
from newscat.augment import AugmentConfig
from newscat.smote import SmoteConfig


class TestStratifiedKfold:
    def test_balanced_two_class(self):
        folds = stratified_kfold([0] * 5 + [1] * 5, k=5, seed=0)
        labels = np.array([0] * 5 + [1] * 5)
        for fold in folds:
            assert (labels[fold] == 0).sum() == 1
            assert (labels[fold] == 1).sum() == 1

    def test_six_four_split(self):
        labels = np.array([0] * 6 + [1] * 4)
        folds = stratified_kfold(labels, k=2, seed=1)
        assert sorted(len(f) for f in folds) == [5, 5]
        for fold in folds:
            assert (labels[fold] == 0).sum() == 3
            assert (labels[fold] == 1).sum() == 2

    def test_deterministic(self):
        labels = np.array([0, 1, 2] * 7)
        a = stratified_kfold(labels, k=3, seed=5)
        b = stratified_kfold(labels, k=3, seed=5)
        for fa, fb in zip(a, b):
            assert np.array_equal(fa, fb)

    def test_partition_and_balance_100_random(self):
        rng = np.random.default_rng(31)
        for _ in range(100):
            n_classes = int(rng.integers(2, 6))
            labels = rng.integers(n_classes, size=int(rng.integers(10, 60)))
            # guarantee every class has >= 2 members
            labels = np.concatenate([labels, np.arange(n_classes), np.arange(n_classes)])
            k = int(rng.integers(2, 6))
            folds = stratified_kfold(labels, k=k, seed=int(rng.integers(1000)))
            all_idx = np.concatenate(folds)
            assert sorted(all_idx.tolist()) == list(range(len(labels)))
            for cls in range(n_classes):
                per_fold = [(labels[f] == cls).sum() for f in folds]
                assert max(per_fold) - min(per_fold) <= 1

    def test_k_lowered_for_small_class(self, caplog):
        labels = np.array([0] * 10 + [1] * 3)
        folds = stratified_kfold(labels, k=5, seed=0)
        assert len(folds) == 3

    def test_k_below_two(self):
        with pytest.raises(ConfigurationError):
            stratified_kfold([0, 0, 1, 1], k=1)


class TestMetrics:
    def test_hand_computed_fixture(self):
        # confusion [[2,0],[1,1]]
        y_true = [0, 0, 1, 1]
        y_pred = [0, 0, 0, 1]
        rep = confusion_and_metrics(y_true, y_pred, 2)
        assert rep.confusion.tolist() == [[2, 0], [1, 1]]
        assert rep.precision_macro == pytest.approx((2 / 3 + 1) / 2)
        assert rep.recall_macro == pytest.approx((1 + 0.5) / 2)
        assert rep.f1_macro == pytest.approx(0.7333, abs=1e-4)
        assert rep.accuracy == pytest.approx(0.75)

    def test_perfect(self):
        rep = confusion_and_metrics([0, 1, 2], [0, 1, 2], 3)
        assert rep.precision_macro == rep.recall_macro == rep.f1_macro == 1.0
        assert rep.accuracy == 1.0

    def test_never_predicted_class(self):
        rep = confusion_and_metrics([0, 1], [0, 0], 2)
        assert rep.f1_macro < 1.0
        assert rep.precision_macro == pytest.approx((0.5 + 0.0) / 2)

    def test_brute_force_oracle_random(self):
        rng = np.random.default_rng(8)
        for _ in range(50):
            n_classes = int(rng.integers(2, 6))
            n = int(rng.integers(1, 51))
            y_true = rng.integers(n_classes, size=n)
            y_pred = rng.integers(n_classes, size=n)
            rep = confusion_and_metrics(y_true, y_pred, n_classes)
            # per-sample loop oracle
            precs, recs, f1s = [], [], []
            for c in range(n_classes):
                tp = sum(1 for t, p in zip(y_true, y_pred) if t == c and p == c)
                fp = sum(1 for t, p in zip(y_true, y_pred) if t != c and p == c)
                fn = sum(1 for t, p in zip(y_true, y_pred) if t == c and p != c)
                prec = tp / (tp + fp) if tp + fp else 0.0
                rec = tp / (tp + fn) if tp + fn else 0.0
                precs.append(prec)
                recs.append(rec)
                f1s.append(
                    2 * prec * rec / (prec + rec) if prec + rec else 0.0
                )
            assert rep.precision_macro == pytest.approx(np.mean(precs), abs=1e-12)
            assert rep.recall_macro == pytest.approx(np.mean(recs), abs=1e-12)
            assert rep.f1_macro == pytest.approx(np.mean(f1s), abs=1e-12)
            assert rep.accuracy == pytest.approx(
                np.mean(y_true == y_pred), abs=1e-12
            )

    def test_empty_raises(self):
        with pytest.raises(ConfigurationError):
            confusion_and_metrics([], [], 2)


class TestBootstrapCi:
    def test_perfect_predictions(self):
        assert bootstrap_f1_ci([0, 1, 0, 1], [0, 1, 0, 1], seed=3) == (1.0, 1.0)

    def test_single_correct_sample(self):
        assert bootstrap_f1_ci([1], [1], seed=0) == (1.0, 1.0)

    def test_replay_oracle(self):
        rng = np.random.default_rng(21)
        y_true = rng.integers(3, size=20)
        y_pred = rng.integers(3, size=20)
        got = bootstrap_f1_ci(y_true, y_pred, n_resamples=200, seed=17)
        # independent replay of the documented resample-index stream
        replay = np.random.default_rng(17)
        stats = []
        for _ in range(200):
            idx = replay.integers(20, size=20)
            yt, yp = y_true[idx], y_pred[idx]
            f1s = []
            for c in sorted(set(yt.tolist()) | set(yp.tolist())):
                tp = sum(1 for t, p in zip(yt, yp) if t == c and p == c)
                fp = sum(1 for t, p in zip(yt, yp) if t != c and p == c)
                fn = sum(1 for t, p in zip(yt, yp) if t == c and p != c)
                prec = tp / (tp + fp) if tp + fp else 0.0
                rec = tp / (tp + fn) if tp + fn else 0.0
                f1s.append(2 * prec * rec / (prec + rec) if prec + rec else 0.0)
            stats.append(float(np.mean(f1s)))
        low = float(np.percentile(stats, 2.5))
        high = float(np.percentile(stats, 97.5))
        assert got == (low, high)

    def test_reproducible(self):
        y_true = [0, 1, 1, 0, 1, 0]
        y_pred = [0, 1, 0, 0, 1, 1]
        a = bootstrap_f1_ci(y_true, y_pred, seed=5)
        b = bootstrap_f1_ci(y_true, y_pred, seed=5)
        assert a == b

    def test_point_estimate_inside_interval(self):
        rng = np.random.default_rng(2)
        y_true = rng.integers(2, size=40)
        y_pred = np.where(rng.random(40) < 0.8, y_true, 1 - y_true)
        low, high = bootstrap_f1_ci(y_true, y_pred, seed=11)
        point = macro_f1(y_true, y_pred, 2)
        assert low <= point <= high


def separable_corpus(docs_per_class=10, tokens_per_doc=5):
    """Perfectly separable: each class uses its own disjoint token set."""
    documents = []
    labels = []
    for cls in range(3):
        for d in range(docs_per_class):
            tokens = [f"c{cls}w{(d + j) % 6}" for j in range(tokens_per_doc)]
            documents.append(Document(id=f"{cls}-{d}", text=" ".join(tokens)))
            labels.append(cls)
    return LabeledCorpus(
        tuple(documents), tuple(labels), LabelSet(("a", "b", "c"))
    )


class TestCrossValidate:
    def test_separable_word2vec_logreg_perfect(self, toy_table):
        from newscat.datasets import make_toy_corpus

        corpus = make_toy_corpus("titles", seed=3)
        rep = RepresentationSpec("word2vec", table=toy_table)
        spec = ModelSpec("logreg", logreg=LogregConfig(max_iters=300))
        report = cross_validate(
            corpus, rep, ResamplerSpec("none"), spec, k=5, seed=0, n_resamples=50
        )
        assert report.accuracy >= 0.95
        assert report.f1_ci[0] <= report.f1_macro <= report.f1_ci[1]

    def test_bow_pipeline_runs(self):
        corpus = separable_corpus()
        rep = RepresentationSpec("bow", max_tokens=100)
        report = cross_validate(
            corpus, rep, ResamplerSpec("none"), ModelSpec("nb"),
            k=5, seed=1, n_resamples=50,
        )
        assert report.confusion.sum() == len(corpus)
        assert report.accuracy == 1.0

    def test_deterministic(self, toy_table):
        corpus = separable_corpus()
        rep = RepresentationSpec("tfidf", max_tokens=100)
        spec = ModelSpec("logreg", logreg=LogregConfig(max_iters=50))
        a = cross_validate(corpus, rep, ResamplerSpec("none"), spec, seed=4, n_resamples=100)
        b = cross_validate(corpus, rep, ResamplerSpec("none"), spec, seed=4, n_resamples=100)
        assert a.to_dict() == b.to_dict()

    def test_invalid_combinations_rejected(self, toy_table):
        rep_sparse = RepresentationSpec("bow")
        rep_dense = RepresentationSpec("word2vec", table=toy_table)
        with pytest.raises(ConfigurationError):
            validate_combination(rep_sparse, ResamplerSpec("none"), ModelSpec("lstm"))
        with pytest.raises(ConfigurationError):
            validate_combination(rep_dense, ResamplerSpec("smote"), ModelSpec("lstm"))
        with pytest.raises(ConfigurationError):
            validate_combination(
                RepresentationSpec("word2vec"), ResamplerSpec("none"), ModelSpec("nb")
            )

    def test_pooled_confusion_total(self, toy_table):
        from newscat.datasets import make_toy_corpus

        corpus = make_toy_corpus("titles", seed=1)
        rep = RepresentationSpec("word2vec", table=toy_table)
        report = cross_validate(
            corpus, rep, ResamplerSpec("smote"), ModelSpec("nb"),
            k=5, seed=0, n_resamples=50,
        )
        assert report.confusion.sum() == len(corpus)


class TestNoLeakage:
    @pytest.mark.parametrize("rep_kind,resampler_kind,model_kind", [
        ("bow", "none", "nb"),
        ("tfidf", "none", "logreg"),
        ("word2vec", "smote", "nb"),
        ("word2vec", "augment", "logreg"),
        ("word2vec", "none", "lstm"),
    ])
    def test_sentinel_test_fold_changes_no_fitted_state(
        self, toy_table, rep_kind, resampler_kind, model_kind
    ):
        from newscat.datasets import make_toy_corpus

        corpus = make_toy_corpus("titles", seed=2)
        labels = np.asarray(corpus.labels)
        folds = stratified_kfold(labels, k=5, seed=0)
        test_idx = folds[0]
        train_idx = np.setdiff1d(np.arange(len(corpus)), test_idx)
        rep = RepresentationSpec(rep_kind, table=toy_table, max_tokens=500)
        resampler = ResamplerSpec(
            resampler_kind,
            augment=AugmentConfig(n_copies=2, seed=3),
            smote=SmoteConfig(seed=3),
        )
        spec = ModelSpec(
            model_kind, logreg=LogregConfig(max_iters=30)
        )
        _, state_a, _ = run_fold(corpus, train_idx, test_idx, rep, resampler, spec)

        # replace held-out texts with sentinels
        docs = list(corpus.documents)
        for i in test_idx:
            docs[i] = Document(id=docs[i].id, text="sentinelxx sentinelyy")
        poisoned = LabeledCorpus(
            tuple(docs), corpus.labels, corpus.label_set
        )
        _, state_b, _ = run_fold(poisoned, train_idx, test_idx, rep, resampler, spec)
        assert state_a == state_b
