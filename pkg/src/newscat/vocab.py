"""Tokenization and frequency-capped vocabulary construction."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from newscat.corpus import LabeledCorpus
from newscat.errors import ConfigurationError, EmptyCorpusError

DEFAULT_MAX_TOKENS = 20_000


def tokenize(text: str) -> list[str]:
    """Whitespace split of cleaned text; never yields empty tokens."""
    return text.split()


@dataclass(frozen=True)
class Vocabulary:
    """Tokens ranked by corpus frequency, capped at ``max_size``.

    ``doc_freq[i]`` is the number of training documents containing
    ``tokens[i]`` at least once.
    """

    tokens: tuple[str, ...]
    doc_freq: tuple[int, ...]
    max_size: int

    def __post_init__(self):
        if len(self.tokens) > self.max_size:
            raise ConfigurationError("vocabulary exceeds max_size")
        if len(set(self.tokens)) != len(self.tokens):
            raise ConfigurationError("duplicate vocabulary tokens")
        if any(df < 1 for df in self.doc_freq):
            raise ConfigurationError("doc_freq must be >= 1 for every token")

    @property
    def index(self) -> dict[str, int]:
        return {t: i for i, t in enumerate(self.tokens)}

    def __len__(self) -> int:
        return len(self.tokens)

    def __contains__(self, token: str) -> bool:
        return token in self.index


def build_vocabulary(
    corpus: LabeledCorpus, max_size: int = DEFAULT_MAX_TOKENS
) -> Vocabulary:
    """Rank tokens by corpus frequency (ties lexicographic), keep the top
    ``max_size``."""
    if max_size < 1:
        raise ConfigurationError("max_size must be >= 1")
    if len(corpus) == 0:
        raise EmptyCorpusError("cannot build a vocabulary from an empty corpus")
    term_freq: Counter[str] = Counter()
    doc_freq: Counter[str] = Counter()
    for doc in corpus.documents:
        tokens = tokenize(doc.text)
        term_freq.update(tokens)
        doc_freq.update(set(tokens))
    ranked = sorted(term_freq, key=lambda t: (-term_freq[t], t))[:max_size]
    return Vocabulary(
        tokens=tuple(ranked),
        doc_freq=tuple(doc_freq[t] for t in ranked),
        max_size=max_size,
    )


def encode(vocab: Vocabulary, text: str) -> list[int]:
    """Token ids in text order; out-of-vocabulary tokens are dropped."""
    index = vocab.index
    return [index[t] for t in tokenize(text) if t in index]


def save_vocabulary(vocab: Vocabulary, path) -> None:
    """Persist as `token<TAB>doc_freq` lines in rank order."""
    with open(path, "w", encoding="utf-8") as fh:
        for token, df in zip(vocab.tokens, vocab.doc_freq):
            fh.write(f"{token}\t{df}\n")


def load_vocabulary(path, max_size: int = DEFAULT_MAX_TOKENS) -> Vocabulary:
    tokens = []
    doc_freq = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            if not line.strip():
                continue
            token, df = line.rstrip("\n").split("\t")
            tokens.append(token)
            doc_freq.append(int(df))
    return Vocabulary(tuple(tokens), tuple(doc_freq), max(max_size, len(tokens)))
