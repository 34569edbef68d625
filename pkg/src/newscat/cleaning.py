"""Text cleaning for noisy scraped news text.

Fixed step order: transliterate to ASCII, lowercase, replace special
characters with spaces, drop single-character tokens and noise words,
collapse whitespace. The result contains only lowercase ASCII letters,
digits (optional) and single spaces.
"""

from __future__ import annotations

import unicodedata
from dataclasses import dataclass, field

from newscat.corpus import LabeledCorpus, Document, LabelSet
from newscat.errors import ConfigurationError, EmptyCorpusError

# The three noise tokens shipped as the default list (honorific
# abbreviations that are not real words).
DEFAULT_NOISE_WORDS = frozenset({"udkt", "unksz", "unkk"})


@dataclass(frozen=True)
class CleaningConfig:
    noise_words: frozenset[str] = DEFAULT_NOISE_WORDS
    keep_digits: bool = True

    def __post_init__(self):
        for w in self.noise_words:
            if not w or w != w.lower():
                raise ConfigurationError(
                    f"noise words must be non-empty and lowercase, got {w!r}"
                )


def load_noise_words(path) -> frozenset[str]:
    """Read a noise-word list: one token per line, '#' starts a comment."""
    words = set()
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            token = line.split("#", 1)[0].strip().lower()
            if token:
                words.add(token)
    return frozenset(words)


def _ascii_fold(text: str) -> str:
    # NFKD-decompose, drop combining marks, then drop any remaining
    # non-ASCII byte. isiZulu/Siswati orthography is ASCII-compatible so
    # nothing meaningful is lost.
    decomposed = unicodedata.normalize("NFKD", text)
    stripped = "".join(c for c in decomposed if not unicodedata.combining(c))
    return stripped.encode("ascii", "ignore").decode("ascii")


def clean_text(raw: str, config: CleaningConfig = CleaningConfig()) -> str:
    """Clean one text. Empty output is a legal result."""
    text = _ascii_fold(raw).lower()
    kept_chars = []
    for c in text:
        if c.isascii() and (c.isalpha() or (config.keep_digits and c.isdigit())):
            kept_chars.append(c)
        else:
            kept_chars.append(" ")
    tokens = "".join(kept_chars).split()
    tokens = [
        t for t in tokens if len(t) > 1 and t not in config.noise_words
    ]
    return " ".join(tokens)


def clean_corpus(
    corpus: LabeledCorpus, config: CleaningConfig = CleaningConfig()
) -> LabeledCorpus:
    """Clean every document; drop (and count) documents that clean to "".

    Labels stay aligned with their surviving documents.
    """
    documents = []
    labels = []
    n_dropped = 0
    for doc, lab in zip(corpus.documents, corpus.labels):
        cleaned = clean_text(doc.text, config)
        if not cleaned:
            n_dropped += 1
            continue
        documents.append(Document(id=doc.id, text=cleaned))
        labels.append(lab)
    if not documents:
        raise EmptyCorpusError("every document cleaned to an empty string")
    return LabeledCorpus(
        documents=tuple(documents),
        labels=tuple(labels),
        label_set=corpus.label_set,
        n_skipped=n_dropped,
    )
