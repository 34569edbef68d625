"""Labeled news corpus loading, validation and filtering.

A corpus is an ordered, immutable collection of documents with integer
class labels and a dense label dictionary. Labels are normalized (trimmed,
lowercased) on load so that mixed-casing in source files collapses to one
class.
"""

from __future__ import annotations

import csv
from collections import Counter
from dataclasses import dataclass, field

from newscat.errors import ConfigurationError, EmptyCorpusError


@dataclass(frozen=True)
class Document:
    """One news item: a stable id and its (raw or cleaned) text."""

    id: str
    text: str

    @property
    def token_count(self) -> int:
        return len(self.text.split())


@dataclass(frozen=True)
class LabelSet:
    """Ordered set of distinct category names with a dense 0-based index."""

    names: tuple[str, ...]

    def __post_init__(self):
        if len(set(self.names)) != len(self.names):
            raise ConfigurationError(f"duplicate label names: {self.names}")

    @property
    def index(self) -> dict[str, int]:
        return {name: i for i, name in enumerate(self.names)}

    def __len__(self) -> int:
        return len(self.names)


def normalize_label(raw: str) -> str:
    """Canonical label form: surrounding whitespace stripped, lowercased."""
    return raw.strip().lower()


@dataclass(frozen=True)
class LabeledCorpus:
    """Documents plus per-document label ids and the owning label set."""

    documents: tuple[Document, ...]
    labels: tuple[int, ...]
    label_set: LabelSet
    n_skipped: int = 0

    def __post_init__(self):
        if len(self.documents) != len(self.labels):
            raise ConfigurationError("documents and labels length mismatch")
        ids = [d.id for d in self.documents]
        if len(set(ids)) != len(ids):
            raise ConfigurationError("duplicate document ids")
        n = len(self.label_set)
        if any(not (0 <= lab < n) for lab in self.labels):
            raise ConfigurationError("label id out of range")

    def __len__(self) -> int:
        return len(self.documents)

    @property
    def class_counts(self) -> dict[int, int]:
        counts = {i: 0 for i in range(len(self.label_set))}
        for lab in self.labels:
            counts[lab] += 1
        return counts

    def subset(self, indices) -> "LabeledCorpus":
        """Corpus restricted to the given document indices (order kept)."""
        return LabeledCorpus(
            documents=tuple(self.documents[i] for i in indices),
            labels=tuple(self.labels[i] for i in indices),
            label_set=self.label_set,
        )


def load_corpus_csv(
    path, text_column: str = "text", label_column: str = "label"
) -> LabeledCorpus:
    """Load a labeled corpus from an RFC 4180 CSV file with a header row.

    Rows with an empty text or label cell are skipped and counted in
    ``n_skipped``. The label set is built from distinct normalized label
    values in first-appearance order. Document ids come from an ``id``
    column when present, otherwise the 0-based data row number.
    """
    try:
        fh = open(path, newline="", encoding="utf-8")
    except FileNotFoundError:
        raise ConfigurationError(f"corpus file not found: {path}")
    with fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames or []
        for col in (text_column, label_column):
            if col not in header:
                raise ConfigurationError(
                    f"column {col!r} not in CSV header {header}"
                )
        documents: list[Document] = []
        label_names: list[str] = []
        label_ids: list[int] = []
        index: dict[str, int] = {}
        n_skipped = 0
        for row_num, row in enumerate(reader):
            text = (row.get(text_column) or "").strip()
            label = normalize_label(row.get(label_column) or "")
            if not text or not label:
                n_skipped += 1
                continue
            if label not in index:
                index[label] = len(label_names)
                label_names.append(label)
            doc_id = (row.get("id") or "").strip() or str(row_num)
            documents.append(Document(id=doc_id, text=text))
            label_ids.append(index[label])
    if not documents:
        raise EmptyCorpusError(f"no usable rows in {path}")
    return LabeledCorpus(
        documents=tuple(documents),
        labels=tuple(label_ids),
        label_set=LabelSet(tuple(label_names)),
        n_skipped=n_skipped,
    )


def save_corpus_csv(corpus: LabeledCorpus, path) -> None:
    """Write a corpus back to CSV with columns id,text,label."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["id", "text", "label"])
        for doc, lab in zip(corpus.documents, corpus.labels):
            writer.writerow([doc.id, doc.text, corpus.label_set.names[lab]])


def prune_rare_labels(corpus: LabeledCorpus, min_count: int) -> LabeledCorpus:
    """Drop every class whose document count is below ``min_count``.

    The surviving label set is re-indexed densely, keeping the original
    name order. The input corpus is not modified.
    """
    if min_count < 1:
        raise ConfigurationError("min_count must be >= 1")
    counts = corpus.class_counts
    keep = [i for i in range(len(corpus.label_set)) if counts[i] >= min_count]
    if not keep:
        raise EmptyCorpusError("pruning removed every class")
    remap = {old: new for new, old in enumerate(keep)}
    kept_names = tuple(corpus.label_set.names[i] for i in keep)
    documents = []
    labels = []
    for doc, lab in zip(corpus.documents, corpus.labels):
        if lab in remap:
            documents.append(doc)
            labels.append(remap[lab])
    return LabeledCorpus(
        documents=tuple(documents),
        labels=tuple(labels),
        label_set=LabelSet(kept_names),
    )


def class_distribution(corpus: LabeledCorpus) -> list[tuple[str, int, float]]:
    """Per-class (name, count, fraction) rows.

    Ordered by descending count, ties broken by label name. Fractions sum
    to 1 up to floating-point rounding.
    """
    if len(corpus) == 0:
        raise EmptyCorpusError("cannot summarize an empty corpus")
    total = len(corpus)
    rows = [
        (corpus.label_set.names[i], c, c / total)
        for i, c in corpus.class_counts.items()
        if c > 0
    ]
    rows.sort(key=lambda r: (-r[1], r[0]))
    return rows
