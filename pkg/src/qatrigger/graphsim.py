"""TF-IDF weighted similarity between dependency graphs.

Each graph is rendered as a weighted vector at three granularities: node
lemmas (word), governor|dependent lemma pairs (pair), and pairs extended
with the relation label (triplet).  Weights are tf * idf with
idf = ln((N + 1) / (df + 1)) + 1, entries at or below the level's threshold
are dropped, and similarity is the cosine of the surviving vectors.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping

from .corpus import Sentence
from .depgraph import DependencyGraph, build_graph
from .errors import IngestionError

LEVELS = ("word", "pair", "triplet")


@dataclass(frozen=True)
class DfTable:
    """Document frequencies for one key level over a corpus of N sentences."""

    level: str
    n_docs: int
    df: Mapping[str, int]

    def __post_init__(self) -> None:
        if self.level not in LEVELS:
            raise ValueError(f"unknown level {self.level!r}")
        if self.n_docs < 1:
            raise ValueError("n_docs must be positive")
        bad = [k for k, v in self.df.items() if v < 1 or v > self.n_docs]
        if bad:
            raise ValueError(f"df out of range for keys: {bad[:3]}")

    def idf(self, key: str) -> float:
        return math.log((self.n_docs + 1) / (self.df.get(key, 0) + 1)) + 1.0


def extract_keys(graph: DependencyGraph, level: str) -> Counter[str]:
    """Multiset of keys of a graph at one level."""
    if level == "word":
        return Counter(t.lemma for t in graph.nodes)
    lemma = {t.index: t.lemma for t in graph.nodes}
    if level == "pair":
        return Counter(f"{lemma[gov]}|{lemma[dep]}" for gov, dep, _ in graph.edges)
    if level == "triplet":
        return Counter(
            f"{lemma[gov]}|{lemma[dep]}|{rel}" for gov, dep, rel in graph.edges
        )
    raise ValueError(f"unknown level {level!r}")


def build_df(sentences: Iterable[Sentence], level: str) -> DfTable:
    """Count each parsed sentence as one document at the given level."""
    df: Counter[str] = Counter()
    n_docs = 0
    for sentence in sentences:
        n_docs += 1
        for key in set(extract_keys(build_graph(sentence), level)):
            df[key] += 1
    if n_docs == 0:
        raise ValueError("cannot build a DF table from zero sentences")
    return DfTable(level=level, n_docs=n_docs, df=dict(df))


def tfidf_vector(graph: DependencyGraph, table: DfTable, alpha: float) -> dict[str, float]:
    """tf * idf weights per key, keeping only weights strictly above alpha."""
    vector: dict[str, float] = {}
    for key, tf in sorted(extract_keys(graph, table.level).items()):
        weight = tf * table.idf(key)
        if weight > alpha:
            vector[key] = weight
    return vector


def cosine(v1: Mapping[str, float], v2: Mapping[str, float]) -> float:
    """Cosine over the key union; 0 when either vector is empty."""
    if not v1 or not v2:
        return 0.0
    shared = sorted(v1.keys() & v2.keys())
    dot = math.fsum(v1[k] * v2[k] for k in shared)
    norm1 = math.sqrt(math.fsum(w * w for _, w in sorted(v1.items())))
    norm2 = math.sqrt(math.fsum(w * w for _, w in sorted(v2.items())))
    if norm1 == 0.0 or norm2 == 0.0:
        return 0.0
    return min(1.0, dot / (norm1 * norm2))


def graph_similarity_features(
    gq: DependencyGraph,
    ga: DependencyGraph,
    tables: Mapping[str, DfTable],
    alphas: tuple[float, float, float],
) -> tuple[float, float, float]:
    """(word, pair, triplet) cosine similarities between two graphs."""
    sims = []
    for level, alpha in zip(LEVELS, alphas):
        table = tables[level]
        sims.append(
            cosine(tfidf_vector(gq, table, alpha), tfidf_vector(ga, table, alpha))
        )
    return tuple(sims)


def save_df_table(table: DfTable, path: str | Path) -> None:
    """Write `N<TAB>n_docs` then sorted `key<TAB>df` lines."""
    with open(path, "w", encoding="utf-8", newline="") as handle:
        handle.write(f"N\t{table.n_docs}\n")
        for key in sorted(table.df):
            handle.write(f"{key}\t{table.df[key]}\n")


def load_df_table(path: str | Path, level: str) -> DfTable:
    path = Path(path)
    df: dict[str, int] = {}
    n_docs: int | None = None
    with open(path, encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            line = line.rstrip("\r\n")
            if not line:
                continue
            columns = line.split("\t")
            if len(columns) != 2:
                raise IngestionError(
                    f"{path}: line {lineno}: expected 2 columns, got {len(columns)}"
                )
            if lineno == 1:
                if columns[0] != "N":
                    raise IngestionError(f"{path}: first line must be `N<TAB>n_docs`")
                n_docs = int(columns[1])
                continue
            try:
                df[columns[0]] = int(columns[1])
            except ValueError as exc:
                raise IngestionError(f"{path}: line {lineno}: bad count") from exc
    if n_docs is None:
        raise IngestionError(f"{path}: empty DF table file")
    try:
        return DfTable(level=level, n_docs=n_docs, df=df)
    except ValueError as exc:
        raise IngestionError(f"{path}: {exc}") from exc
