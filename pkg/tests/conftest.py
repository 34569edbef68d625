import sys

import numpy as np
import pytest

from newscat.datasets import make_toy_corpus, make_unlabeled_sentences
from newscat.embeddings import EmbeddingTable, SgnsConfig, train_sgns


@pytest.fixture(scope="session")
def toy_titles():
    return make_toy_corpus("titles", seed=0)


@pytest.fixture(scope="session")
def toy_table():
    """Embeddings trained on the unlabeled toy stream; class tokens cluster."""
    sentences = make_unlabeled_sentences(600, seed=1)
    return train_sgns(sentences, SgnsConfig(dim=24, epochs=3, window=4, seed=7))


def pytest_terminal_summary(terminalreporter):
    """Replay the acceptance-criterion verdict lines after capture ends."""
    verdicts = getattr(sys.modules.get("test_acceptance"), "VERDICTS", None)
    if verdicts:
        terminalreporter.section("acceptance criteria")
        for line in verdicts:
            terminalreporter.write_line(line)


@pytest.fixture()
def tiny_table():
    """Handcrafted 4-token table with known geometry."""
    tokens = ["aa", "bb", "cc", "dd"]
    vectors = np.array(
        [
            [1.0, 0.0],
            [1.0, 0.0],     # bb identical direction to aa
            [0.0, 1.0],     # cc orthogonal
            [-1.0, 0.0],    # dd antiparallel
        ]
    )
    return EmbeddingTable(tokens, vectors)
