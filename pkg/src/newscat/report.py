"""Experiment matrix runner and report table rendering.

Runs every valid {representation x resampler x model} cell under
cross-validation, writes one metrics JSON per cell, and renders one
Markdown table (plus a CSV mirror) per resampler with the columns
Preprocessing | Model | Precision(%) | Recall(%) | F1-score(%) |
Accuracy(%) | Confidence Interval(f1 score). Every table number is read
back from the cell JSON so the JSON files stay the single source of
truth.
"""

from __future__ import annotations

import csv
import json
import logging
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from pathlib import Path

from newscat.corpus import LabeledCorpus
from newscat.embeddings import EmbeddingTable
from newscat.errors import ConfigurationError
from newscat.evaluate import (
    MODELS,
    REPRESENTATIONS,
    RESAMPLERS,
    ModelSpec,
    RepresentationSpec,
    ResamplerSpec,
    cross_validate,
    validate_combination,
)

logger = logging.getLogger(__name__)

REP_DISPLAY = {"bow": "Bag-Of-Words", "tfidf": "TF-IDF", "word2vec": "Word2vec"}
MODEL_DISPLAY = {
    "nb": "Naive Bayes",
    "logreg": "Logistic Regression",
    "gbt": "Gradient Boosted Trees",
    "lstm": "LSTM",
}
TABLE_COLUMNS = [
    "Preprocessing",
    "Model",
    "Precision(%)",
    "Recall(%)",
    "F1-score(%)",
    "Accuracy(%)",
    "Confidence Interval(f1 score)",
]


@dataclass(frozen=True)
class MatrixCell:
    rep: RepresentationSpec
    resampler: ResamplerSpec
    model: ModelSpec

    @property
    def name(self) -> str:
        return f"{self.rep.kind}_{self.resampler.kind}_{self.model.kind}"


def enumerate_cells(
    table: EmbeddingTable,
    rep_template: RepresentationSpec | None = None,
    resampler_template: ResamplerSpec | None = None,
    model_template: ModelSpec | None = None,
) -> list[MatrixCell]:
    """All spec combinations that pass combination validation."""
    cells = []
    for rep_kind in REPRESENTATIONS:
        for res_kind in RESAMPLERS:
            for model_kind in MODELS:
                rep = replace(
                    rep_template or RepresentationSpec("bow"),
                    kind=rep_kind,
                    table=table,
                )
                res = replace(
                    resampler_template or ResamplerSpec(), kind=res_kind
                )
                model = replace(
                    model_template or ModelSpec("nb"), kind=model_kind
                )
                try:
                    validate_combination(rep, res, model)
                except ConfigurationError:
                    continue
                cells.append(MatrixCell(rep=rep, resampler=res, model=model))
    return cells


def _atomic_write(path: Path, content: str) -> None:
    tmp = path.with_suffix(path.suffix + ".tmp")
    tmp.write_text(content, encoding="utf-8")
    os.replace(tmp, path)


def _pct(x: float) -> str:
    return f"{100 * x:.2f}"


def _run_cell(corpus, cell, k, seed, n_resamples):
    try:
        report = cross_validate(
            corpus, cell.rep, cell.resampler, cell.model,
            k=k, seed=seed, n_resamples=n_resamples,
        )
        return cell.name, report.to_dict(), None
    except Exception as exc:  # recorded in the table as FAILED
        logger.warning("cell %s failed: %s", cell.name, exc)
        return cell.name, None, str(exc)


def run_matrix(
    corpus: LabeledCorpus,
    cells: list[MatrixCell],
    out_dir,
    k: int = 5,
    seed: int = 0,
    n_resamples: int = 1000,
    jobs: int = 1,
) -> int:
    """Evaluate every cell; write JSON, Markdown and CSV reports.

    Returns a process exit code: 0 when at least one cell succeeded,
    1 when all cells failed.
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    results: dict[str, tuple[MatrixCell, dict | None, str | None]] = {}
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            futures = {
                cell.name: pool.submit(
                    _run_cell, corpus, cell, k, seed, n_resamples
                )
                for cell in cells
            }
            for cell in cells:
                name, payload, error = futures[cell.name].result()
                results[name] = (cell, payload, error)
    else:
        for cell in cells:
            name, payload, error = _run_cell(corpus, cell, k, seed, n_resamples)
            results[name] = (cell, payload, error)

    for name, (_cell, payload, _error) in results.items():
        if payload is not None:
            _atomic_write(
                out_dir / f"{name}.json", json.dumps(payload, indent=2)
            )

    for res_kind in RESAMPLERS:
        group = [
            (cell, payload, error)
            for cell, payload, error in results.values()
            if cell.resampler.kind == res_kind
        ]
        if not group:
            continue
        _write_tables(out_dir, res_kind, group)
    n_ok = sum(1 for _, payload, _e in results.values() if payload is not None)
    return 0 if n_ok > 0 else 1


def _table_rows(group):
    rows = []
    best_f1 = None
    for cell, payload, error in group:
        if payload is None:
            rows.append(
                [
                    REP_DISPLAY[cell.rep.kind],
                    MODEL_DISPLAY[cell.model.kind],
                    "FAILED", "FAILED", "FAILED", "FAILED",
                    f"FAILED: {error}",
                ]
            )
            continue
        low, high = payload["f1_ci"]
        rows.append(
            [
                REP_DISPLAY[cell.rep.kind],
                MODEL_DISPLAY[cell.model.kind],
                _pct(payload["precision_macro"]),
                _pct(payload["recall_macro"]),
                _pct(payload["f1_macro"]),
                _pct(payload["accuracy"]),
                f"({_pct(low)},{_pct(high)})",
            ]
        )
        if best_f1 is None or payload["f1_macro"] > best_f1[1]:
            best_f1 = (len(rows) - 1, payload["f1_macro"])
    return rows, (best_f1[0] if best_f1 else None)


def _write_tables(out_dir: Path, res_kind: str, group) -> None:
    rows, best_idx = _table_rows(group)
    lines = [
        "| " + " | ".join(TABLE_COLUMNS) + " |",
        "|" + "|".join(["---"] * len(TABLE_COLUMNS)) + "|",
    ]
    for i, row in enumerate(rows):
        cells = [f"**{v}**" for v in row] if i == best_idx else row
        lines.append("| " + " | ".join(cells) + " |")
    _atomic_write(out_dir / f"report_{res_kind}.md", "\n".join(lines) + "\n")

    csv_path = out_dir / f"report_{res_kind}.csv"
    tmp = csv_path.with_suffix(".csv.tmp")
    with open(tmp, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(TABLE_COLUMNS)
        writer.writerows(rows)
    os.replace(tmp, csv_path)
