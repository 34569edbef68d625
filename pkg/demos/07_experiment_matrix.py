"""Run a (fast) experiment matrix and render the report tables.

Every valid {representation x resampler x model} cell is evaluated under
cross-validation; one Markdown table per resampler is written with the
best-F1 row bolded. Small model configs keep this demo under a minute;
drop the overrides (or use the `newscat matrix` CLI) for the full run.
"""

from dataclasses import replace
from pathlib import Path
from tempfile import mkdtemp

from newscat import report
from newscat.augment import AugmentConfig
from newscat.datasets import make_toy_corpus, make_unlabeled_sentences
from newscat.embeddings import SgnsConfig, train_sgns
from newscat.evaluate import ModelSpec, RepresentationSpec, ResamplerSpec
from newscat.models.boosting import GbtConfig
from newscat.models.linear import LogregConfig
from newscat.models.lstm import LstmConfig

table = train_sgns(
    make_unlabeled_sentences(500, seed=1), SgnsConfig(dim=24, window=4, epochs=3, seed=7)
)
corpus = make_toy_corpus("titles", seed=0)

cells = report.enumerate_cells(
    table,
    resampler_template=ResamplerSpec(augment=AugmentConfig(n_copies=3)),
    model_template=ModelSpec(
        "nb",
        logreg=LogregConfig(max_iters=100),
        gbt=GbtConfig(n_rounds=10),
        lstm=LstmConfig(hidden_dim=8, epochs=5),
    ),
)
print(f"{len(cells)} valid cells (lstm needs word2vec; smote+lstm unsupported)")

out_dir = Path(mkdtemp(prefix="newscat_matrix_"))
code = report.run_matrix(corpus, cells, out_dir, k=5, seed=0, n_resamples=200)
print(f"exit code {code}; outputs in {out_dir}\n")
print((out_dir / "report_none.md").read_text())
