"""Command-line interface.

Subcommands: clean, train-embeddings, augment, smote, evaluate, matrix,
recommend, chart. The default seed comes from the NEWSCAT_SEED
environment variable (0 when unset); every experiment is deterministic
for a fixed seed. The matrix command also reads an INI config file whose
values are overridden by explicit CLI flags.
"""

from __future__ import annotations

import argparse
import configparser
import json
import os
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np

from newscat import chart, report
from newscat.augment import AugmentConfig, augment_training_set
from newscat.cleaning import CleaningConfig, clean_corpus, load_noise_words
from newscat.corpus import load_corpus_csv, prune_rare_labels, save_corpus_csv
from newscat.embeddings import EmbeddingTable, SgnsConfig, train_sgns
from newscat.errors import NewscatError
from newscat.evaluate import (
    ModelSpec,
    RepresentationSpec,
    ResamplerSpec,
    cross_validate,
)
from newscat.models.boosting import GbtConfig
from newscat.models.linear import LogregConfig
from newscat.models.lstm import LstmConfig
from newscat.recommend import profile_corpus, recommend
from newscat.smote import SmoteConfig, smote_fit_resample
from newscat.vocab import tokenize


def _default_seed() -> int:
    return int(os.environ.get("NEWSCAT_SEED", "0"))


def _add_corpus_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--input", required=True, help="corpus CSV path")
    p.add_argument("--text-col", default="text")
    p.add_argument("--label-col", default="label")
    p.add_argument(
        "--min-class-count", type=int, default=1,
        help="drop classes with fewer documents than this",
    )


def _load_corpus(args):
    corpus = load_corpus_csv(args.input, args.text_col, args.label_col)
    if args.min_class_count > 1:
        corpus = prune_rare_labels(corpus, args.min_class_count)
    return corpus


def _cmd_clean(args) -> int:
    noise = load_noise_words(args.noise_words) if args.noise_words else None
    config = CleaningConfig(
        noise_words=noise if noise is not None else CleaningConfig().noise_words,
        keep_digits=not args.drop_digits,
    )
    corpus = _load_corpus(args)
    cleaned = clean_corpus(corpus, config)
    save_corpus_csv(cleaned, args.output)
    print(
        f"cleaned {len(cleaned)} documents "
        f"({cleaned.n_skipped} dropped as empty) -> {args.output}"
    )
    return 0


def _read_plaintext_sentences(paths, config: CleaningConfig):
    from newscat.cleaning import clean_text

    sentences = []
    for path in paths:
        with open(path, encoding="utf-8") as fh:
            for line in fh:
                tokens = clean_text(line, config).split()
                if tokens:
                    sentences.append(tokens)
    return sentences


def _cmd_train_embeddings(args) -> int:
    config = SgnsConfig(
        dim=args.dim,
        window=args.window,
        negatives=args.negatives,
        epochs=args.epochs,
        learning_rate=args.learning_rate,
        min_count=args.min_count,
        seed=args.seed,
    )
    sentences = _read_plaintext_sentences(args.corpus, CleaningConfig())
    table = train_sgns(sentences, config)
    table.save(args.output)
    losses = ", ".join(f"{x:.4f}" for x in table.epoch_mean_loss)
    print(f"trained {len(table)} x {table.dim} embeddings -> {args.output}")
    print(f"epoch mean loss: {losses}")
    return 0


def _cmd_augment(args) -> int:
    corpus = _load_corpus(args)
    table = EmbeddingTable.load(args.embeddings)
    config = AugmentConfig(
        n_copies=args.copies,
        replace_prob=args.replace_prob,
        k_neighbors=args.k,
        min_similarity=args.min_sim,
        seed=args.seed,
    )
    augmented = augment_training_set(corpus, table, config)
    save_corpus_csv(augmented, args.output)
    print(f"{len(corpus)} documents -> {len(augmented)} -> {args.output}")
    return 0


def _cmd_smote(args) -> int:
    from newscat.evaluate import _mean_embedding_features

    corpus = _load_corpus(args)
    table = EmbeddingTable.load(args.embeddings)
    X, n_oov = _mean_embedding_features(
        table, [d.text for d in corpus.documents]
    )
    y = np.asarray(corpus.labels)
    X_out, y_out = smote_fit_resample(
        X, y, SmoteConfig(k=args.smote_k, seed=args.seed)
    )
    np.savez(args.output, X=X_out, y=y_out)
    print(
        f"{len(X)} rows -> {len(X_out)} balanced rows "
        f"({n_oov} all-OOV documents) -> {args.output}"
    )
    return 0


def _model_spec(args, config_ini=None) -> ModelSpec:
    def get(section, key, cast, default):
        if config_ini is not None and config_ini.has_option(section, key):
            return cast(config_ini.get(section, key))
        return default

    logreg = LogregConfig(
        learning_rate=get("logreg", "learning_rate", float, 0.5),
        l2=get("logreg", "l2", float, 1e-4),
        max_iters=get("logreg", "max_iters", int, 500),
        tol=get("logreg", "tol", float, 1e-7),
    )
    gbt = GbtConfig(
        n_rounds=get("gbt", "n_rounds", int, 50),
        max_depth=get("gbt", "max_depth", int, 3),
        learning_rate=get("gbt", "learning_rate", float, 0.3),
        reg_lambda=get("gbt", "reg_lambda", float, 1.0),
    )
    lstm = LstmConfig(
        hidden_dim=get("lstm", "hidden_dim", int, 64),
        epochs=get("lstm", "epochs", int, 30),
        learning_rate=get("lstm", "learning_rate", float, 0.05),
        clip_norm=get("lstm", "clip_norm", float, 5.0),
        max_seq_len=get("lstm", "max_seq_len", int, getattr(args, "max_seq_len", 200)),
        seed=args.seed,
    )
    return ModelSpec(
        kind=getattr(args, "model", "nb"),
        logreg=logreg, gbt=gbt, lstm=lstm,
    )


def _resampler_spec(args, config_ini=None) -> ResamplerSpec:
    return ResamplerSpec(
        kind=getattr(args, "resampler", "none"),
        augment=AugmentConfig(
            n_copies=args.copies,
            replace_prob=args.replace_prob,
            k_neighbors=args.k,
            min_similarity=args.min_sim,
            seed=args.seed,
        ),
        smote=SmoteConfig(k=args.smote_k, seed=args.seed),
    )


def _cmd_evaluate(args) -> int:
    corpus = _load_corpus(args)
    table = EmbeddingTable.load(args.embeddings) if args.embeddings else None
    rep = RepresentationSpec(
        kind=args.representation, table=table, max_tokens=args.max_tokens
    )
    result = cross_validate(
        corpus,
        rep,
        _resampler_spec(args),
        _model_spec(args),
        k=args.k,
        seed=args.seed,
        n_resamples=args.n_resamples,
    )
    payload = result.to_dict()
    print(json.dumps(payload, indent=2))
    if args.output:
        Path(args.output).write_text(json.dumps(payload, indent=2))
    return 0


def _cmd_matrix(args) -> int:
    if not args.embeddings:
        print("error: matrix requires --embeddings", file=sys.stderr)
        return 2
    config_ini = None
    if args.config:
        config_ini = configparser.ConfigParser()
        config_ini.read(args.config)
    corpus = _load_corpus(args)
    table = EmbeddingTable.load(args.embeddings)
    cells = report.enumerate_cells(
        table,
        rep_template=RepresentationSpec("bow", max_tokens=args.max_tokens),
        resampler_template=_resampler_spec(args, config_ini),
        model_template=_model_spec(args, config_ini),
    )
    code = report.run_matrix(
        corpus,
        cells,
        args.out_dir,
        k=args.k,
        seed=args.seed,
        n_resamples=args.n_resamples,
        jobs=args.jobs,
    )
    print(f"wrote reports to {args.out_dir}")
    return code


def _cmd_recommend(args) -> int:
    corpus = _load_corpus(args)
    profile = profile_corpus(corpus)
    rec = recommend(profile)
    print(
        f"dataset: {profile.n_docs} docs, median {profile.median_tokens:.0f} "
        f"tokens ({profile.size_class}, {profile.length_class})"
    )
    print(
        f"recommended: resampler={rec.resampler} model={rec.model} "
        f"representation={rec.representation}"
    )
    print(f"rationale: {rec.rationale}")
    if rec.caveat:
        print(f"caveat: {rec.caveat}")
    return 0


def _cmd_chart(args) -> int:
    corpus = _load_corpus(args)
    chart.emit_class_chart(corpus, args.output)
    print(f"wrote {args.output}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="newscat",
        description="news topic classification toolkit for low-resource languages",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    seed = _default_seed()

    p = sub.add_parser("clean", help="clean a corpus CSV")
    _add_corpus_args(p)
    p.add_argument("--noise-words", help="noise-word list file")
    p.add_argument("--drop-digits", action="store_true")
    p.add_argument("--output", required=True)
    p.set_defaults(func=_cmd_clean)

    p = sub.add_parser("train-embeddings", help="train word embeddings")
    p.add_argument("--corpus", nargs="+", required=True, help="plain-text files")
    p.add_argument("--dim", type=int, default=300)
    p.add_argument("--window", type=int, default=5)
    p.add_argument("--negatives", type=int, default=5)
    p.add_argument("--epochs", type=int, default=5)
    p.add_argument("--learning-rate", type=float, default=0.025)
    p.add_argument("--min-count", type=int, default=2)
    p.add_argument("--seed", type=int, default=seed)
    p.add_argument("--output", required=True)
    p.set_defaults(func=_cmd_train_embeddings)

    def add_resampler_args(p):
        p.add_argument("--copies", type=int, default=20)
        p.add_argument("--replace-prob", type=float, default=0.15)
        p.add_argument("--k-neighbors", dest="k", type=int, default=5)
        p.add_argument("--min-sim", type=float, default=0.5)
        p.add_argument("--smote-k", type=int, default=5)

    p = sub.add_parser("augment", help="augment a training corpus")
    _add_corpus_args(p)
    p.add_argument("--embeddings", required=True)
    add_resampler_args(p)
    p.add_argument("--seed", type=int, default=seed)
    p.add_argument("--output", required=True)
    p.set_defaults(func=_cmd_augment)

    p = sub.add_parser("smote", help="oversample mean-embedding features")
    _add_corpus_args(p)
    p.add_argument("--embeddings", required=True)
    p.add_argument("--smote-k", type=int, default=5)
    p.add_argument("--seed", type=int, default=seed)
    p.add_argument("--output", required=True, help=".npz output path")
    p.set_defaults(func=_cmd_smote)

    def add_eval_args(p):
        _add_corpus_args(p)
        p.add_argument("--embeddings", help="embedding table path")
        p.add_argument("--max-tokens", type=int, default=20_000)
        p.add_argument("--max-seq-len", type=int, default=200)
        p.add_argument("-k", "--folds", dest="k", type=int, default=5)
        p.add_argument("--n-resamples", type=int, default=1000)
        p.add_argument("--seed", type=int, default=seed)
        add_resampler_args(p)

    p = sub.add_parser("evaluate", help="cross-validate one pipeline")
    add_eval_args(p)
    p.add_argument(
        "--representation", choices=("bow", "tfidf", "word2vec"), required=True
    )
    p.add_argument(
        "--resampler", choices=("none", "augment", "smote"), default="none"
    )
    p.add_argument(
        "--model", choices=("nb", "logreg", "gbt", "lstm"), required=True
    )
    p.add_argument("--output", help="metrics JSON output path")
    p.set_defaults(func=_cmd_evaluate)

    p = sub.add_parser("matrix", help="run the full experiment matrix")
    add_eval_args(p)
    p.add_argument("--config", help="INI config file")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out-dir", required=True)
    p.set_defaults(func=_cmd_matrix, resampler="none", model="nb")

    p = sub.add_parser("recommend", help="recommend a pipeline for a corpus")
    _add_corpus_args(p)
    p.set_defaults(func=_cmd_recommend)

    p = sub.add_parser("chart", help="class-distribution SVG chart")
    _add_corpus_args(p)
    p.add_argument("--output", required=True)
    p.set_defaults(func=_cmd_chart)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except NewscatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
