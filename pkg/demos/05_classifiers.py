"""The four classifiers on one task, trained from scratch in numpy.

Features are mean word embeddings (sequences for the LSTM); every model
exposes the same fit / predict_proba surface and JSON persistence.
"""

import tempfile

import numpy as np

from newscat.datasets import make_toy_corpus, make_unlabeled_sentences
from newscat.embeddings import SgnsConfig, train_sgns
from newscat.evaluate import _mean_embedding_features
from newscat.models import (
    GaussianNaiveBayes,
    GradientBoostedTrees,
    LstmClassifier,
    SoftmaxRegression,
    load_model,
    predict_labels,
    save_model,
)
from newscat.models.boosting import GbtConfig
from newscat.models.linear import LogregConfig
from newscat.models.lstm import LstmConfig
from newscat.vocab import tokenize

table = train_sgns(
    make_unlabeled_sentences(500, seed=1), SgnsConfig(dim=24, window=4, epochs=3, seed=7)
)
corpus = make_toy_corpus("titles", seed=0)
names = corpus.label_set.names
X, _ = _mean_embedding_features(table, [d.text for d in corpus.documents])
y = np.asarray(corpus.labels)

models = {
    "gaussian nb": GaussianNaiveBayes(names),
    "logreg": SoftmaxRegression(names, LogregConfig(max_iters=300)),
    "gbt": GradientBoostedTrees(names, GbtConfig(n_rounds=20)),
}
for label, model in models.items():
    model.fit(X, y)
    acc = (predict_labels(model, X) == y).mean()
    print(f"{label:12s} training accuracy {acc:.3f}")

sequences = [
    [table.index[t] for t in tokenize(d.text) if t in table.index]
    for d in corpus.documents
]
lstm = LstmClassifier(
    names, table, LstmConfig(hidden_dim=16, epochs=100, learning_rate=0.1, seed=0)
)
lstm.fit(sequences, y)
acc = (predict_labels(lstm, sequences) == y).mean()
print(f"{'lstm':12s} training accuracy {acc:.3f}")

# persistence round trip
with tempfile.NamedTemporaryFile(suffix=".json") as fh:
    save_model(models["logreg"], fh.name)
    again = load_model(fh.name)
    assert np.allclose(models["logreg"].predict_proba(X), again.predict_proba(X))
    print("\nlogreg JSON round trip: predictions identical")
