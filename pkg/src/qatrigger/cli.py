"""Command-line pipeline: featurize, train, tune, predict, evaluate, build-df.

Configuration comes from an INI-style file of `key = value` lines under
`[section]` headers.  Values may be overridden by environment variables named
QATRIGGER_<SECTION>_<KEY> and by repeated `--set section.key=value` flags
(flags win over the environment, which wins over the file).  Paths inside a
config file are resolved relative to the file's directory; overrides are
resolved relative to the working directory.
"""

from __future__ import annotations

import argparse
import configparser
import os
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import combiner
from .baselines import AnswerPool, load_embeddings, tokenize
from .combiner import (
    DEFAULT_MANIFEST,
    FEATURE_NAMES,
    FeatureResources,
    TrainConfig,
    TriggerModel,
    extract_features,
    load_model,
    save_model,
    train,
)
from .corpus import QuestionGroup, attach_parses, load_scores, load_wikiqa
from .errors import ConfigError, IngestionError, QaTriggerError
from .evaluation import ScoredGroup, triggering_report, tune_threshold
from .ged import GedConfig, load_pos_table
from .graphsim import LEVELS, build_df, load_df_table, save_df_table

ENV_PREFIX = "QATRIGGER"
SPLITS = ("train", "dev", "test")

_POSITIONAL_NOTE = (
    "When no index file is configured for a split, parses align positionally: "
    "all questions first, then all candidates, both in corpus order."
)


@dataclass
class RunConfig:
    """Typed view of the configuration file plus overrides."""

    # [data]
    train: Path | None = None
    dev: Path | None = None
    test: Path | None = None
    conllu_train: Path | None = None
    conllu_dev: Path | None = None
    conllu_test: Path | None = None
    index_train: Path | None = None
    index_dev: Path | None = None
    index_test: Path | None = None
    scores: Path | None = None
    embeddings: Path | None = None
    # [resources]
    df_word: Path | None = None
    df_pair: Path | None = None
    df_triplet: Path | None = None
    pos_costs: Path | None = None
    # [features]
    manifest: tuple[str, ...] = DEFAULT_MANIFEST
    # [hyper]
    alpha1: float = 7.0
    alpha2: float = 5.0
    alpha3: float = 2.0
    subgraph_m: int = 3
    edge_weight: float = 0.5
    delete_cost: float = 1.0
    k1: float = 1.5
    b: float = 0.75
    n_max: int = 3
    lr: float = 0.1
    epochs: int = 200
    l2: float = 1e-4
    seed: int = 0
    threshold: float = 0.14
    # [baselines]
    bm25_threshold: float | None = None
    ngram_threshold: float | None = None
    semvec_threshold: float | None = 0.70

    def validate(self) -> None:
        if min(self.alpha1, self.alpha2, self.alpha3) < 0:
            raise ConfigError("alphas must be >= 0")
        if self.subgraph_m < 0:
            raise ConfigError("subgraph_m must be >= 0")
        if not 0.0 <= self.b <= 1.0:
            raise ConfigError("b must be in [0, 1]")
        if self.k1 < 0 or self.n_max < 1:
            raise ConfigError("k1 must be >= 0 and n_max >= 1")
        if self.lr <= 0 or self.epochs < 1 or self.l2 < 0:
            raise ConfigError("lr must be > 0, epochs >= 1, l2 >= 0")
        if self.edge_weight < 0 or self.delete_cost < 0:
            raise ConfigError("edge_weight and delete_cost must be >= 0")
        bad = [name for name in self.manifest if name not in FEATURE_NAMES]
        if bad:
            raise ConfigError(f"unknown features in manifest: {', '.join(bad)}")


def _parse_manifest(raw: str) -> tuple[str, ...]:
    return tuple(name.strip() for name in raw.split(",") if name.strip())


_PATH_KEYS = {
    ("data", "train"): "train",
    ("data", "dev"): "dev",
    ("data", "test"): "test",
    ("data", "conllu_train"): "conllu_train",
    ("data", "conllu_dev"): "conllu_dev",
    ("data", "conllu_test"): "conllu_test",
    ("data", "index_train"): "index_train",
    ("data", "index_dev"): "index_dev",
    ("data", "index_test"): "index_test",
    ("data", "scores"): "scores",
    ("data", "embeddings"): "embeddings",
    ("resources", "df_word"): "df_word",
    ("resources", "df_pair"): "df_pair",
    ("resources", "df_triplet"): "df_triplet",
    ("resources", "pos_costs"): "pos_costs",
}

_FLOAT_KEYS = {
    ("hyper", "alpha1"): "alpha1",
    ("hyper", "alpha2"): "alpha2",
    ("hyper", "alpha3"): "alpha3",
    ("hyper", "edge_weight"): "edge_weight",
    ("hyper", "delete_cost"): "delete_cost",
    ("hyper", "k1"): "k1",
    ("hyper", "b"): "b",
    ("hyper", "lr"): "lr",
    ("hyper", "l2"): "l2",
    ("hyper", "threshold"): "threshold",
    ("baselines", "bm25_threshold"): "bm25_threshold",
    ("baselines", "ngram_threshold"): "ngram_threshold",
    ("baselines", "semvec_threshold"): "semvec_threshold",
}

_INT_KEYS = {
    ("hyper", "m"): "subgraph_m",
    ("hyper", "n_max"): "n_max",
    ("hyper", "epochs"): "epochs",
    ("hyper", "seed"): "seed",
}


def _apply(config: RunConfig, section: str, key: str, value: str, base: Path | None) -> None:
    section, key = section.lower(), key.lower()
    if (section, key) in _PATH_KEYS:
        path = Path(value)
        if base is not None and not path.is_absolute():
            path = base / path
        setattr(config, _PATH_KEYS[(section, key)], path)
    elif (section, key) in _FLOAT_KEYS:
        try:
            setattr(config, _FLOAT_KEYS[(section, key)], float(value))
        except ValueError as exc:
            raise ConfigError(f"[{section}] {key}: not a number: {value!r}") from exc
    elif (section, key) in _INT_KEYS:
        try:
            setattr(config, _INT_KEYS[(section, key)], int(value))
        except ValueError as exc:
            raise ConfigError(f"[{section}] {key}: not an integer: {value!r}") from exc
    elif (section, key) == ("features", "manifest"):
        config.manifest = _parse_manifest(value)
    else:
        raise ConfigError(f"unknown configuration key [{section}] {key}")


def load_config(
    config_path: str | Path | None,
    overrides: list[str] | None = None,
    env: dict[str, str] | None = None,
) -> RunConfig:
    config = RunConfig()
    if config_path is not None:
        path = Path(config_path)
        parser = configparser.ConfigParser(interpolation=None)
        read = parser.read(path, encoding="utf-8")
        if not read:
            raise ConfigError(f"config file not found: {path}")
        for section in parser.sections():
            for key, value in parser.items(section):
                _apply(config, section, key, value, base=path.parent.resolve())
    env = os.environ if env is None else env
    for name, value in sorted(env.items()):
        if not name.startswith(ENV_PREFIX + "_"):
            continue
        parts = name.split("_", 2)
        if len(parts) != 3:
            raise ConfigError(f"malformed environment override {name}")
        _apply(config, parts[1], parts[2], value, base=None)
    for item in overrides or []:
        if "=" not in item or "." not in item.split("=", 1)[0]:
            raise ConfigError(f"--set expects section.key=value, got {item!r}")
        target, value = item.split("=", 1)
        section, key = target.split(".", 1)
        _apply(config, section.strip(), key.strip(), value.strip(), base=None)
    config.validate()
    return config


def _require(value: Path | None, what: str) -> Path:
    if value is None:
        raise ConfigError(f"missing required configuration: {what}")
    return value


def load_split(config: RunConfig, split: str, with_parses: bool) -> list[QuestionGroup]:
    if split not in SPLITS:
        raise ConfigError(f"unknown split {split!r}")
    corpus_path = _require(getattr(config, split), f"[data] {split}")
    groups = load_wikiqa(corpus_path)
    if with_parses:
        conllu = getattr(config, f"conllu_{split}")
        if conllu is None:
            raise ConfigError(
                f"graph features need parses: set [data] conllu_{split}"
            )
        groups = attach_parses(groups, conllu, getattr(config, f"index_{split}"))
    return groups


def _needs_parses(manifest: tuple[str, ...]) -> bool:
    return any(name in combiner.GRAPH_FEATURES for name in manifest)


def _df_tables(config: RunConfig) -> dict[str, object]:
    """Load the three DF tables, or derive them from the training split."""
    paths = {"word": config.df_word, "pair": config.df_pair, "triplet": config.df_triplet}
    if all(p is not None for p in paths.values()):
        return {level: load_df_table(paths[level], level) for level in LEVELS}
    if any(p is not None for p in paths.values()):
        raise ConfigError("set all three DF table paths or none")
    train_groups = load_split(config, "train", with_parses=True)
    sentences = [g.question for g in train_groups]
    sentences += [sent for g in train_groups for _, sent, _ in g.candidates]
    return {level: build_df(sentences, level) for level in LEVELS}


def build_resources(
    config: RunConfig, manifest: tuple[str, ...], groups: list[QuestionGroup]
) -> FeatureResources:
    resources = FeatureResources(
        alphas=(config.alpha1, config.alpha2, config.alpha3),
        subgraph_m=config.subgraph_m,
        k1=config.k1,
        b=config.b,
        n_max=config.n_max,
    )
    pos_table = load_pos_table(config.pos_costs) if config.pos_costs else None
    if pos_table is not None:
        resources.ged_config = GedConfig(
            pos_table=pos_table,
            edge_weight=config.edge_weight,
            delete_cost=config.delete_cost,
        )
    else:
        resources.ged_config = GedConfig(
            edge_weight=config.edge_weight, delete_cost=config.delete_cost
        )
    if any(name.startswith("sim_") for name in manifest):
        resources.df_tables = _df_tables(config)
    if "ext_score" in manifest:
        scores_path = _require(config.scores, "[data] scores (ext_score enabled)")
        resources.scores, duplicates = load_scores(scores_path)
        if duplicates:
            print(f"warning: {duplicates} duplicate score rows (last wins)", file=sys.stderr)
    if "semvec" in manifest:
        emb_path = _require(config.embeddings, "[data] embeddings (semvec enabled)")
        resources.embeddings = load_embeddings(emb_path)
    if "bm25" in manifest:
        resources.pools = {
            g.question_id: AnswerPool.build(
                [tokenize(sent.text) for _, sent, _ in g.candidates]
            )
            for g in groups
        }
    return resources


def _fmt(value: float) -> str:
    return format(float(value), ".17g")


def cmd_featurize(config: RunConfig, split: str, out_path: Path) -> int:
    if not config.manifest:
        raise ConfigError("no features enabled")
    groups = load_split(config, split, with_parses=_needs_parses(config.manifest))
    resources = build_resources(config, config.manifest, groups)
    with open(out_path, "w", encoding="utf-8", newline="") as handle:
        handle.write(
            "question_id\tcandidate_id\tgold_label\t" + "\t".join(config.manifest) + "\n"
        )
        for group in groups:
            for pair in group.pairs():
                values = extract_features(pair, resources, config.manifest)
                handle.write(
                    f"{pair.question_id}\t{pair.candidate_id}\t{pair.gold_label}\t"
                    + "\t".join(_fmt(v) for v in values)
                    + "\n"
                )
    n_pairs = sum(len(g.candidates) for g in groups)
    print(f"featurized {len(groups)} questions / {n_pairs} pairs -> {out_path}")
    return 0


def read_features(
    path: str | Path,
) -> tuple[tuple[str, ...], list[tuple[str, str, int, np.ndarray]]]:
    """Read a feature TSV into (feature_names, rows)."""
    path = Path(path)
    rows: list[tuple[str, str, int, np.ndarray]] = []
    with open(path, encoding="utf-8") as handle:
        header = handle.readline().rstrip("\r\n").split("\t")
        if header[:3] != ["question_id", "candidate_id", "gold_label"]:
            raise IngestionError(f"{path}: not a feature file (bad header)")
        names = tuple(header[3:])
        for lineno, line in enumerate(handle, start=2):
            line = line.rstrip("\r\n")
            if not line:
                continue
            columns = line.split("\t")
            if len(columns) != 3 + len(names):
                raise IngestionError(
                    f"{path}: line {lineno}: expected {3 + len(names)} columns"
                )
            rows.append(
                (
                    columns[0],
                    columns[1],
                    int(columns[2]),
                    np.asarray([float(v) for v in columns[3:]]),
                )
            )
    return names, rows


def _scored_groups(
    rows: list[tuple[str, str, int, np.ndarray]], scores: list[float]
) -> list[ScoredGroup]:
    grouped: dict[str, list[tuple[str, float, int]]] = {}
    for (qid, cid, label, _), score in zip(rows, scores):
        grouped.setdefault(qid, []).append((cid, score, label))
    return [ScoredGroup(qid, tuple(cands)) for qid, cands in grouped.items()]


def cmd_train(config: RunConfig, features_path: Path, model_path: Path) -> int:
    names, rows = read_features(features_path)
    x = [row[3] for row in rows]
    y = [row[2] for row in rows]
    try:
        model = train(
            x,
            y,
            names,
            TrainConfig(lr=config.lr, epochs=config.epochs, l2=config.l2, seed=config.seed),
            threshold=config.threshold,
        )
    except ValueError as exc:
        raise IngestionError(str(exc)) from exc
    save_model(model, model_path)
    z = np.asarray([model.standardize(v) for v in x])
    loss, _, _ = combiner.loss_and_gradient(
        model.weights, model.bias, z, np.asarray(y, dtype=float), config.l2
    )
    predictions = [1 if model.prob(v) > 0.5 else 0 for v in x]
    accuracy = sum(p == label for p, label in zip(predictions, y)) / len(y)
    print(
        f"trained on {len(y)} pairs: epochs={config.epochs} "
        f"final_loss={loss:.6f} train_accuracy={accuracy:.4f} -> {model_path}"
    )
    return 0


def _model_scores(model: TriggerModel, rows) -> list[float]:
    return [model.prob(row[3]) for row in rows]


def cmd_tune(
    config: RunConfig, model_path: Path, features_path: Path, update_model: bool
) -> int:
    model = load_model(model_path)
    names, rows = read_features(features_path)
    if names != model.feature_names:
        raise ConfigError(
            f"feature file columns {names} do not match model features {model.feature_names}"
        )
    groups = _scored_groups(rows, _model_scores(model, rows))
    try:
        threshold, best_f1 = tune_threshold(groups)
    except ValueError as exc:
        raise IngestionError(str(exc)) from exc
    print(f"threshold={_fmt(threshold)} dev_f1={best_f1:.2f}")
    if update_model:
        model.threshold = threshold
        save_model(model, model_path)
        print(f"model threshold updated -> {model_path}")
    return 0


def cmd_predict(
    config: RunConfig, model_path: Path, features_path: Path, out_path: Path
) -> int:
    model = load_model(model_path)
    names, rows = read_features(features_path)
    if names != model.feature_names:
        raise ConfigError(
            f"feature file columns {names} do not match model features {model.feature_names}"
        )
    with open(out_path, "w", encoding="utf-8", newline="") as handle:
        for row, score in zip(rows, _model_scores(model, rows)):
            handle.write(f"{row[0]}\t{row[1]}\t{_fmt(score)}\n")
    print(f"wrote {len(rows)} predictions -> {out_path}")
    return 0


def _baseline_threshold(config: RunConfig, name: str, groups: list[ScoredGroup]) -> float:
    configured = getattr(config, f"{name}_threshold")
    if configured is not None:
        return configured
    threshold, _ = tune_threshold(groups)
    return threshold


def cmd_evaluate(
    config: RunConfig,
    model_path: Path,
    features_path: Path,
    report_path: Path | None,
    with_baselines: bool,
) -> int:
    model = load_model(model_path)
    names, rows = read_features(features_path)
    if names != model.feature_names:
        raise ConfigError(
            f"feature file columns {names} do not match model features {model.feature_names}"
        )
    groups = _scored_groups(rows, _model_scores(model, rows))
    report = triggering_report(groups, model.threshold)
    sections = [
        f"== model (threshold {_fmt(model.threshold)}) ==",
        report.as_text(),
        report.as_kv(),
    ]
    if with_baselines:
        for name in ("bm25", "ngram", "semvec"):
            if name not in names:
                continue
            column = names.index(name)
            baseline_groups = _scored_groups(rows, [float(r[3][column]) for r in rows])
            threshold = _baseline_threshold(config, name, baseline_groups)
            baseline_report = triggering_report(baseline_groups, threshold)
            sections.append(f"== baseline {name} (threshold {_fmt(threshold)}) ==")
            sections.append(baseline_report.as_text())
            sections.append(baseline_report.as_kv())
    text = "\n".join(sections) + "\n"
    print(text, end="")
    if report_path is not None:
        with open(report_path, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
    return 0


def cmd_build_df(config: RunConfig, out_dir: Path | None) -> int:
    groups = load_split(config, "train", with_parses=True)
    sentences = [g.question for g in groups]
    sentences += [sent for g in groups for _, sent, _ in g.candidates]
    targets = {
        "word": config.df_word,
        "pair": config.df_pair,
        "triplet": config.df_triplet,
    }
    for level in LEVELS:
        table = build_df(sentences, level)
        target = targets[level]
        if target is None:
            if out_dir is None:
                raise ConfigError(
                    "set [resources] df_* paths or pass --out-dir"
                )
            target = out_dir / f"df_{level}.tsv"
        save_df_table(table, target)
        print(f"df[{level}]: {len(table.df)} keys over {table.n_docs} docs -> {target}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qatrigger",
        description="Answer triggering with dependency-graph alignment features.",
        epilog=(
            "Configuration precedence: --set flags > QATRIGGER_<SECTION>_<KEY> "
            "environment variables > the --config file > built-in defaults. "
            + _POSITIONAL_NOTE
        ),
    )
    parser.add_argument("--config", type=Path, default=None, help="INI config file")
    parser.add_argument(
        "--set",
        dest="overrides",
        action="append",
        default=[],
        metavar="SECTION.KEY=VALUE",
        help="override one config value (repeatable)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser(
        "featurize",
        help="extract feature vectors for one corpus split",
        description="Extract per-pair feature vectors to a TSV. " + _POSITIONAL_NOTE,
    )
    p.add_argument("--split", choices=SPLITS, required=True)
    p.add_argument("--out", type=Path, required=True)

    p = sub.add_parser("train", help="fit the logistic-regression trigger model")
    p.add_argument("--features", type=Path, required=True)
    p.add_argument("--model", type=Path, required=True)

    p = sub.add_parser("tune", help="pick the triggering threshold on dev features")
    p.add_argument("--model", type=Path, required=True)
    p.add_argument("--features", type=Path, required=True)
    p.add_argument(
        "--update-model", action="store_true", help="write the tuned threshold back"
    )

    p = sub.add_parser("predict", help="write per-pair trigger probabilities")
    p.add_argument("--model", type=Path, required=True)
    p.add_argument("--features", type=Path, required=True)
    p.add_argument("--out", type=Path, required=True)

    p = sub.add_parser("evaluate", help="report MAP/MRR and triggering P/R/F")
    p.add_argument("--model", type=Path, required=True)
    p.add_argument("--features", type=Path, required=True)
    p.add_argument("--report", type=Path, default=None, help="also write the report here")
    p.add_argument(
        "--baselines",
        action="store_true",
        help="also report each baseline feature column present in the file",
    )

    p = sub.add_parser(
        "build-df",
        help="build word/pair/triplet document-frequency tables from the train split",
    )
    p.add_argument("--out-dir", type=Path, default=None)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = load_config(args.config, overrides=args.overrides)
        if args.command == "featurize":
            return cmd_featurize(config, args.split, args.out)
        if args.command == "train":
            return cmd_train(config, args.features, args.model)
        if args.command == "tune":
            return cmd_tune(config, args.model, args.features, args.update_model)
        if args.command == "predict":
            return cmd_predict(config, args.model, args.features, args.out)
        if args.command == "evaluate":
            return cmd_evaluate(
                config, args.model, args.features, args.report, args.baselines
            )
        if args.command == "build-df":
            return cmd_build_df(config, args.out_dir)
        parser.error(f"unknown command {args.command!r}")
    except ConfigError as exc:
        print(f"error:config: {exc}", file=sys.stderr)
        return 2
    except IngestionError as exc:
        print(f"error:data: {exc}", file=sys.stderr)
        return 3
    except FileNotFoundError as exc:
        print(f"error:io: {exc}", file=sys.stderr)
        return 4
    except QaTriggerError as exc:
        print(f"error:internal: {exc}", file=sys.stderr)
        return 5
    return 0


if __name__ == "__main__":
    sys.exit(main())
