import numpy as np
import pytest

from newscat.corpus import (
    Document,
    LabelSet,
    LabeledCorpus,
    class_distribution,
    load_corpus_csv,
    prune_rare_labels,
    save_corpus_csv,
)
from newscat.errors import ConfigurationError, EmptyCorpusError


def write_csv(path, rows, header="text,label"):
    path.write_text(header + "\n" + "\n".join(rows) + "\n", encoding="utf-8")


def make_corpus(labels, names):
    docs = tuple(Document(id=str(i), text=f"doc {i}") for i in range(len(labels)))
    return LabeledCorpus(docs, tuple(labels), LabelSet(tuple(names)))


class TestLoad:
    def test_direct_load(self, tmp_path):
        p = tmp_path / "c.csv"
        write_csv(p, ['"indaba yezwe",politics', "ibhola,sport"])
        corpus = load_corpus_csv(p, "text", "label")
        assert len(corpus) == 2
        assert corpus.label_set.names == ("politics", "sport")
        assert corpus.labels == (0, 1)
        assert corpus.documents[0].text == "indaba yezwe"

    def test_empty_text_row_skipped(self, tmp_path):
        p = tmp_path / "c.csv"
        write_csv(p, ['"",politics', "ibhola,sport"])
        corpus = load_corpus_csv(p, "text", "label")
        assert len(corpus) == 1
        assert corpus.n_skipped == 1

    def test_missing_column(self, tmp_path):
        p = tmp_path / "c.csv"
        write_csv(p, ["ibhola,sport"])
        with pytest.raises(ConfigurationError, match="body"):
            load_corpus_csv(p, "body", "label")

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigurationError):
            load_corpus_csv(tmp_path / "nope.csv", "text", "label")

    def test_all_rows_unusable(self, tmp_path):
        p = tmp_path / "c.csv"
        write_csv(p, [",politics", "ibhola,"])
        with pytest.raises(EmptyCorpusError):
            load_corpus_csv(p, "text", "label")

    def test_label_normalization(self, tmp_path):
        p = tmp_path / "c.csv"
        write_csv(p, ["aa,Politics", "bb, politics "])
        corpus = load_corpus_csv(p, "text", "label")
        assert corpus.label_set.names == ("politics",)
        assert corpus.labels == (0, 0)

    def test_round_trip(self, tmp_path):
        p = tmp_path / "c.csv"
        write_csv(p, ['"indaba, yezwe",politics', "ibhola lakhe,sport", "aa,politics"])
        corpus = load_corpus_csv(p, "text", "label")
        out = tmp_path / "out.csv"
        save_corpus_csv(corpus, out)
        again = load_corpus_csv(out, "text", "label")
        assert again.documents == corpus.documents
        assert again.labels == corpus.labels
        assert again.label_set == corpus.label_set


class TestPrune:
    def test_drops_rare_class(self):
        corpus = make_corpus([0] * 50 + [1] * 3, ["aa", "bb"])
        pruned = prune_rare_labels(corpus, 10)
        assert len(pruned) == 50
        assert pruned.label_set.names == ("aa",)
        # input untouched
        assert len(corpus) == 53

    def test_min_count_one_is_identity(self):
        corpus = make_corpus([0, 1, 0], ["aa", "bb"])
        pruned = prune_rare_labels(corpus, 1)
        assert pruned.documents == corpus.documents
        assert pruned.labels == corpus.labels

    def test_idempotent(self):
        corpus = make_corpus([0] * 12 + [1] * 4 + [2] * 11, ["aa", "bb", "cc"])
        once = prune_rare_labels(corpus, 10)
        twice = prune_rare_labels(once, 10)
        assert once.documents == twice.documents
        assert once.labels == twice.labels

    def test_everything_pruned(self):
        corpus = make_corpus([0, 1], ["aa", "bb"])
        with pytest.raises(EmptyCorpusError):
            prune_rare_labels(corpus, 10)


class TestDistribution:
    def test_hand_computed(self):
        corpus = make_corpus([0, 0, 1], ["aa", "bb"])
        rows = class_distribution(corpus)
        assert rows[0] == ("aa", 2, pytest.approx(2 / 3))
        assert rows[1] == ("bb", 1, pytest.approx(1 / 3))

    def test_single_class(self):
        corpus = make_corpus([0, 0], ["aa"])
        assert class_distribution(corpus) == [("aa", 2, 1.0)]

    def test_balanced(self):
        corpus = make_corpus(
            [c for c in range(5) for _ in range(10)], list("abcde")
        )
        rows = class_distribution(corpus)
        assert all(r[2] == pytest.approx(0.2) for r in rows)

    def test_fractions_sum_to_one(self):
        rng = np.random.default_rng(3)
        for _ in range(20):
            labels = rng.integers(3, size=rng.integers(1, 40)).tolist()
            n_names = max(labels) + 1
            corpus = make_corpus(labels, [f"c{i}" for i in range(n_names)])
            rows = class_distribution(corpus)
            assert abs(sum(r[2] for r in rows) - 1.0) < 1e-12
            counts = corpus.class_counts
            for name, count, _ in rows:
                assert counts[corpus.label_set.index[name]] == count
