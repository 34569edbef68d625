"""Text cleaning and vocabulary construction.

Walks one raw headline through the cleaning pipeline, then builds a
frequency-ranked vocabulary over the bundled toy corpus.
"""

from newscat.cleaning import CleaningConfig, clean_corpus, clean_text
from newscat.datasets import make_toy_corpus
from newscat.vocab import build_vocabulary

raw = "UDkt  AmaPhoyisa, a-bulala 3 unksz  e-Goli!"
print("raw:     ", raw)
print("cleaned: ", clean_text(raw))

# digits can be dropped too
print("no digits:", clean_text(raw, CleaningConfig(keep_digits=False)))

# cleaning a labeled corpus keeps labels aligned and counts dropped docs
corpus = make_toy_corpus("titles", seed=0)
cleaned = clean_corpus(corpus)
print(f"\ncorpus: {len(cleaned)} documents, {cleaned.n_skipped} emptied by cleaning")

vocab = build_vocabulary(cleaned, max_size=30)
print(f"vocabulary ({len(vocab.tokens)} most frequent tokens):")
for token in vocab.tokens[:10]:
    print(f"  {token:10s} df={vocab.doc_freq[vocab.index[token]]}")
