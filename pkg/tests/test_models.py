import itertools

import numpy as np
import pytest

from newscat.embeddings import EmbeddingTable
from newscat.errors import FeatureContractError
from newscat.models import (
    GaussianNaiveBayes,
    GradientBoostedTrees,
    LstmClassifier,
    MultinomialNaiveBayes,
    SoftmaxRegression,
    load_model,
    predict_labels,
    save_model,
)
from newscat.models.boosting import GbtConfig
from newscat.models.linear import LogregConfig, logreg_loss_and_grad
from newscat.models.lstm import (
    LstmConfig,
    init_lstm_params,
    lstm_loss_and_grads,
)


def finite_difference(fn, x, step=1e-6):
    grad = np.zeros_like(x)
    flat = x.ravel()
    g = grad.ravel()
    for i in range(flat.size):
        orig = flat[i]
        flat[i] = orig + step
        hi = fn()
        flat[i] = orig - step
        lo = fn()
        flat[i] = orig
        g[i] = (hi - lo) / (2 * step)
    return grad


class TestMultinomialNB:
    def test_hand_computed_likelihood(self):
        # class A doc "aa aa", class B doc "bb", vocab {aa, bb}, alpha=1
        X = np.array([[2.0, 0.0], [0.0, 1.0]])
        y = np.array([0, 1])
        model = MultinomialNaiveBayes(["A", "B"], alpha=1.0).fit(X, y)
        assert np.exp(model.log_likelihood[0, 0]) == pytest.approx(0.75)

    def test_negative_features_rejected(self):
        model = MultinomialNaiveBayes(["A", "B"])
        with pytest.raises(FeatureContractError):
            model.fit(np.array([[-1.0, 0.0], [0.0, 1.0]]), np.array([0, 1]))

    def test_single_class(self):
        X = np.array([[1.0, 2.0], [2.0, 1.0]])
        model = MultinomialNaiveBayes(["only"]).fit(X, np.array([0, 0]))
        probs = model.predict_proba(X)
        assert np.allclose(probs, 1.0)

    def test_exhaustive_bayes_oracle(self):
        # vocab <= 4, classes <= 3, doc length <= 3: posterior must equal
        # a direct Bayes-rule computation over the learned parameters
        rng = np.random.default_rng(77)
        for _ in range(20):
            vocab = int(rng.integers(2, 5))
            n_classes = int(rng.integers(2, 4))
            n_docs = int(rng.integers(n_classes, 12))
            y = np.concatenate(
                [np.arange(n_classes), rng.integers(n_classes, size=n_docs - n_classes)]
            )
            X = rng.integers(0, 4, size=(n_docs, vocab)).astype(float)
            model = MultinomialNaiveBayes(
                [f"c{i}" for i in range(n_classes)], alpha=1.0
            ).fit(X, y)
            prior = np.array(
                [(y == c).mean() for c in range(n_classes)]
            )
            theta = np.exp(model.log_likelihood)
            for length in range(4):
                for doc in itertools.product(range(vocab), repeat=length):
                    counts = np.bincount(doc, minlength=vocab).astype(float)
                    joint = prior * np.prod(theta ** counts, axis=1)
                    expected = joint / joint.sum()
                    got = model.predict_proba(counts[None, :])[0]
                    assert np.allclose(got, expected, atol=1e-12)


class TestGaussianNB:
    def test_symmetric_posterior(self):
        X = np.array([[-1.2], [-0.8], [-1.0], [0.8], [1.2], [1.0]])
        y = np.array([0, 0, 0, 1, 1, 1])
        model = GaussianNaiveBayes(["neg", "pos"]).fit(X, y)
        probs = model.predict_proba(np.array([[0.0]]))
        assert probs[0, 0] == pytest.approx(0.5, abs=1e-9)

    def test_training_accuracy_separable(self):
        rng = np.random.default_rng(0)
        X = np.vstack([rng.normal(-3, 0.1, (20, 2)), rng.normal(3, 0.1, (20, 2))])
        y = np.array([0] * 20 + [1] * 20)
        model = GaussianNaiveBayes(["a", "b"]).fit(X, y)
        assert (predict_labels(model, X) == y).all()


class TestSoftmaxRegression:
    def test_zero_iterations_uniform(self):
        config = LogregConfig(max_iters=0)
        X = np.random.default_rng(1).normal(size=(5, 3))
        model = SoftmaxRegression(["a", "b", "c"], config).fit(X, np.array([0, 1, 2, 0, 1]))
        assert np.allclose(model.predict_proba(X), 1 / 3)

    def test_separable_converges(self):
        rng = np.random.default_rng(3)
        x = np.concatenate([rng.uniform(-2, -0.5, 20), rng.uniform(0.5, 2, 20)])
        X = x[:, None]
        y = np.array([0] * 20 + [1] * 20)
        config = LogregConfig(l2=0.0, max_iters=500, tol=0.0)
        model = SoftmaxRegression(["A", "B"], config).fit(X, y)
        assert (predict_labels(model, X) == y).all()

    def test_gradient_check(self):
        rng = np.random.default_rng(8)
        X = rng.normal(size=(6, 4))
        Y = np.eye(3)[rng.integers(3, size=6)]
        for _ in range(10):
            W = rng.normal(size=(4, 3))
            b = rng.normal(size=3)
            _, gW, gb = logreg_loss_and_grad(W, b, X, Y, l2=0.01)
            fdW = finite_difference(
                lambda: logreg_loss_and_grad(W, b, X, Y, 0.01)[0], W
            )
            fdb = finite_difference(
                lambda: logreg_loss_and_grad(W, b, X, Y, 0.01)[0], b
            )
            for a, n in ((gW, fdW), (gb, fdb)):
                rel = np.abs(a - n) / np.maximum(np.abs(n), 1e-8)
                assert rel.max() < 1e-5

    def test_loss_trace_non_increasing(self):
        rng = np.random.default_rng(12)
        X = rng.normal(size=(30, 5))
        y = rng.integers(3, size=30)
        config = LogregConfig(learning_rate=0.1, max_iters=200, tol=0.0)
        model = SoftmaxRegression(["a", "b", "c"], config).fit(X, y)
        trace = model.loss_trace
        assert all(b <= a + 1e-12 for a, b in zip(trace, trace[1:]))


class TestGradientBoostedTrees:
    def test_constant_label(self):
        X = np.random.default_rng(0).normal(size=(10, 2))
        y = np.zeros(10, dtype=int)
        config = GbtConfig(n_rounds=1, learning_rate=1.0, reg_lambda=0.1)
        model = GradientBoostedTrees(["only", "other"], config).fit(X, y)
        assert model.predict_proba(X)[:, 0].min() > 0.9

    def test_threshold_data_stump(self):
        rng = np.random.default_rng(4)
        x = np.concatenate([rng.uniform(-2, -0.1, 25), rng.uniform(0.1, 2, 25)])
        X = x[:, None]
        y = (x > 0).astype(int)
        config = GbtConfig(n_rounds=10, max_depth=1)
        model = GradientBoostedTrees(["neg", "pos"], config).fit(X, y)
        assert (predict_labels(model, X) == y).all()

    def test_logloss_trace_non_increasing(self):
        rng = np.random.default_rng(6)
        X = rng.normal(size=(40, 3))
        y = rng.integers(3, size=40)
        model = GradientBoostedTrees(
            ["a", "b", "c"], GbtConfig(n_rounds=50)
        ).fit(X, y)
        trace = model.logloss_trace
        assert len(trace) == 50
        assert all(b <= a + 1e-12 for a, b in zip(trace, trace[1:]))


@pytest.fixture()
def seq_table():
    rng = np.random.default_rng(42)
    tokens = [f"t{i}" for i in range(10)]
    return EmbeddingTable(tokens, rng.normal(size=(10, 6)))


class TestLstm:
    def test_gradient_check_length_3(self, seq_table):
        rng = np.random.default_rng(5)
        params = init_lstm_params(emb_dim=4, hidden_dim=3, n_classes=2, rng=rng)
        # non-trivial weights, away from the tiny init
        params = {k: rng.normal(scale=0.5, size=v.shape) for k, v in params.items()}
        X = rng.normal(size=(2, 3, 4))
        mask = np.array([[1.0, 1.0, 1.0], [1.0, 1.0, 0.0]])
        y = np.array([0, 1])
        _, grads = lstm_loss_and_grads(params, X, mask, y)
        for key in params:
            fd = finite_difference(
                lambda: lstm_loss_and_grads(params, X, mask, y)[0],
                params[key],
                step=1e-6,
            )
            rel = np.abs(grads[key] - fd) / np.maximum(np.abs(fd), 1e-7)
            assert rel.max() < 1e-4, key

    def test_overfits_class_unique_tokens(self, seq_table):
        # 8 examples, each class marked by its own tokens
        sequences = [[0, 1], [1, 0], [0, 0], [1, 1], [5, 6], [6, 5], [5, 5], [6, 6]]
        y = np.array([0, 0, 0, 0, 1, 1, 1, 1])
        config = LstmConfig(hidden_dim=8, epochs=200, learning_rate=0.5, seed=0)
        model = LstmClassifier(["a", "b"], seq_table, config).fit(sequences, y)
        assert (predict_labels(model, sequences) == y).all()
        # loss halves early
        assert model.loss_trace[49] < 0.5 * model.loss_trace[0]

    def test_all_padding_predicts_head_bias(self, seq_table):
        config = LstmConfig(hidden_dim=4, epochs=2, seed=1)
        model = LstmClassifier(["a", "b"], seq_table, config).fit(
            [[0, 1], [2, 3]], np.array([0, 1])
        )
        probs = model.predict_proba([[]])
        z = model.params["bout"]
        expected = np.exp(z - z.max())
        expected /= expected.sum()
        assert np.allclose(probs[0], expected, atol=1e-12)

    def test_deterministic(self, seq_table):
        config = LstmConfig(hidden_dim=4, epochs=3, seed=9)
        sequences = [[0, 1, 2], [3, 4], [5], [6, 7, 8]]
        y = np.array([0, 1, 0, 1])
        a = LstmClassifier(["a", "b"], seq_table, config).fit(sequences, y)
        b = LstmClassifier(["a", "b"], seq_table, config).fit(sequences, y)
        for k in a.params:
            assert np.array_equal(a.params[k], b.params[k])


class TestContract:
    def make_models(self, seq_table):
        rng = np.random.default_rng(0)
        Xc = np.abs(rng.normal(size=(8, 3)))
        Xd = rng.normal(size=(8, 3))
        y = np.array([0, 1] * 4)
        return [
            (MultinomialNaiveBayes(["a", "b"]).fit(Xc, y), Xc),
            (GaussianNaiveBayes(["a", "b"]).fit(Xd, y), Xd),
            (
                SoftmaxRegression(["a", "b"], LogregConfig(max_iters=20)).fit(Xd, y),
                Xd,
            ),
            (
                GradientBoostedTrees(["a", "b"], GbtConfig(n_rounds=3)).fit(Xd, y),
                Xd,
            ),
            (
                LstmClassifier(
                    ["a", "b"], seq_table, LstmConfig(hidden_dim=4, epochs=2)
                ).fit([[0], [1]] * 4, y),
                [[0], [1]] * 4,
            ),
        ]

    def test_probability_simplex(self, seq_table):
        for model, X in self.make_models(seq_table):
            probs = model.predict_proba(X)
            assert np.all(probs >= 0) and np.all(probs <= 1)
            assert np.allclose(probs.sum(axis=1), 1.0, atol=1e-9)

    def test_persistence_round_trip(self, seq_table, tmp_path):
        for model, X in self.make_models(seq_table):
            path = tmp_path / f"{model.kind}.json"
            save_model(model, path)
            again = load_model(path)
            if model.kind == "lstm":
                again.table = seq_table
            assert np.allclose(
                model.predict_proba(X), again.predict_proba(X), atol=1e-12
            )

    def test_load_rejects_contract_mismatch(self, seq_table, tmp_path):
        model, X = self.make_models(seq_table)[0]
        path = tmp_path / "m.json"
        save_model(model, path)
        with pytest.raises(FeatureContractError):
            load_model(path, expected_contract="dense")
