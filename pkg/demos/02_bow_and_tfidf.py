"""Bag-of-words counts and smoothed tf-idf weights.

Shows the sparse vectors for a two-document corpus, small enough to
verify the idf arithmetic by hand.
"""

import numpy as np

from newscat.corpus import Document, LabelSet, LabeledCorpus
from newscat.vectorize import bow_transform, tfidf_fit, tfidf_transform
from newscat.vocab import build_vocabulary

docs = (
    Document(id="0", text="amaphoyisa abulala umfana"),
    Document(id="1", text="amaphoyisa aboshiwe"),
)
corpus = LabeledCorpus(docs, (0, 1), LabelSet(("crime", "courts")))
vocab = build_vocabulary(corpus, max_size=10)
print("vocabulary:", vocab.tokens)

for doc in docs:
    counts = bow_transform(vocab, doc.text)
    print(f"bow({doc.text!r}) ->", dict(zip(counts.indices.tolist(), counts.values.tolist())))

model = tfidf_fit(vocab, corpus)
print("\nidf weights (ln((1+N)/(1+df)) + 1):")
for token in vocab.tokens:
    print(f"  {token:12s} {model.idf[vocab.index[token]]:.6f}")

vec = tfidf_transform(model, docs[0].text).to_dense()
print("\ntf-idf of doc 0:", np.round(vec, 4))
print("L2 norm:", np.linalg.norm(vec))  # always 1 for nonempty docs
