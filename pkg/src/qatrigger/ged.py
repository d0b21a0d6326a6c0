"""Normalized graph edit distance between two dependency graphs.

The distance is approximated by a single minimum-cost assignment over an
(n+m) x (n+m) cost matrix: an n x m substitution block, diagonal deletion
and insertion blocks whose off-diagonal entries carry an infeasible
sentinel, and an all-zero epsilon block.  Node substitution cost is zero
for equal lemmas and otherwise a POS-pair substitute weight; every cost
additionally charges the mismatch between the incident relation multisets
of the two nodes.  The assignment total is normalized by the cost of
deleting one graph entirely and inserting the other, which bounds the
result to [0, 1].
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping, Sequence

import numpy as np

from .corpus import Token
from .depgraph import DependencyGraph, degrees, incident_relations
from .errors import IngestionError

UPOS_TAGS = (
    "ADJ", "ADP", "ADV", "AUX", "CCONJ", "DET", "INTJ", "NOUN", "NUM",
    "PART", "PRON", "PROPN", "PUNCT", "SCONJ", "SYM", "VERB", "X",
)

# Tags that substitute for each other at reduced cost.
_POS_CLASSES = (
    ("NOUN", "PROPN", "PRON"),
    ("VERB", "AUX"),
    ("ADJ", "ADV"),
)

SAME_TAG_COST = 0.3
SAME_CLASS_COST = 0.5


@dataclass(frozen=True)
class PosCostTable:
    """Symmetric POS-pair substitute weights with a default for unknown pairs."""

    entries: Mapping[tuple[str, str], float]
    default_cost: float = 1.0

    def cost(self, upos_a: str, upos_b: str) -> float:
        value = self.entries.get((upos_a, upos_b))
        if value is None:
            value = self.entries.get((upos_b, upos_a))
        return self.default_cost if value is None else value


def default_pos_table() -> PosCostTable:
    entries = {(tag, tag): SAME_TAG_COST for tag in UPOS_TAGS}
    for group in _POS_CLASSES:
        for i, a in enumerate(group):
            for b in group[i + 1:]:
                entries[(a, b)] = SAME_CLASS_COST
    return PosCostTable(entries=entries, default_cost=1.0)


DEFAULT_POS_TABLE = default_pos_table()


def load_pos_table(path: str | Path) -> PosCostTable:
    """Load `UPOS_A<TAB>UPOS_B<TAB>cost` lines plus one `DEFAULT<TAB>cost` line."""
    path = Path(path)
    entries: dict[tuple[str, str], float] = {}
    default_cost = 1.0
    saw_default = False
    with open(path, encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            line = line.rstrip("\r\n")
            if not line or line.startswith("#"):
                continue
            columns = line.split("\t")
            if columns[0] == "DEFAULT":
                if len(columns) != 2:
                    raise IngestionError(f"{path}: line {lineno}: DEFAULT needs one cost")
                default_cost = float(columns[1])
                saw_default = True
                continue
            if len(columns) != 3:
                raise IngestionError(
                    f"{path}: line {lineno}: expected 3 columns, got {len(columns)}"
                )
            a, b, raw = columns
            try:
                cost = float(raw)
            except ValueError as exc:
                raise IngestionError(f"{path}: line {lineno}: bad cost {raw!r}") from exc
            if not 0.0 <= cost <= 1.0:
                raise IngestionError(f"{path}: line {lineno}: cost must be in [0, 1]")
            if entries.get((b, a), cost) != cost or entries.get((a, b), cost) != cost:
                raise IngestionError(f"{path}: line {lineno}: asymmetric entry {a}/{b}")
            entries[(a, b)] = cost
    if not saw_default:
        raise IngestionError(f"{path}: missing DEFAULT line")
    return PosCostTable(entries=entries, default_cost=default_cost)


@dataclass(frozen=True)
class GedConfig:
    pos_table: PosCostTable = field(default_factory=default_pos_table)
    edge_weight: float = 0.5
    delete_cost: float = 1.0


@dataclass(frozen=True)
class CostMatrix:
    """Square edit-cost matrix; off-diagonal epsilon entries hold `sentinel`."""

    data: np.ndarray
    n_question: int
    n_answer: int
    sentinel: float

    def __post_init__(self) -> None:
        if self.data.ndim != 2 or self.data.shape[0] != self.data.shape[1]:
            raise ValueError("cost matrix must be square")


def node_cost(u: Token, v: Token, table: PosCostTable) -> float:
    """0 for equal lemmas (case-insensitive), else the POS substitute weight."""
    if u.lemma.lower() == v.lemma.lower():
        return 0.0
    return table.cost(u.upos, v.upos)


def incident_edge_cost(
    u_relations: Counter[str], v_relations: Counter[str], edge_weight: float
) -> float:
    """Half the symmetric multiset difference of relation labels, times the weight."""
    difference = (u_relations - v_relations) + (v_relations - u_relations)
    return edge_weight * sum(difference.values()) / 2.0


def build_cost_matrix(
    gq: DependencyGraph,
    ga: DependencyGraph,
    table: PosCostTable,
    edge_weight: float,
    delete_cost: float,
) -> CostMatrix:
    n, m = len(gq.nodes), len(ga.nodes)
    size = n + m
    rels_q = incident_relations(gq)
    rels_a = incident_relations(ga)
    deg_q = degrees(gq)
    deg_a = degrees(ga)

    substitution = np.zeros((n, m))
    for i, u in enumerate(gq.nodes):
        for j, v in enumerate(ga.nodes):
            substitution[i, j] = node_cost(u, v, table) + incident_edge_cost(
                rels_q[u.index], rels_a[v.index], edge_weight
            )
    deletions = [delete_cost + edge_weight * deg_q[u.index] for u in gq.nodes]
    insertions = [delete_cost + edge_weight * deg_a[v.index] for v in ga.nodes]

    sentinel = math.fsum(substitution.flat) + math.fsum(deletions) + math.fsum(insertions) + 1.0
    data = np.full((size, size), sentinel)
    data[:n, :m] = substitution
    for i in range(n):
        data[i, m + i] = deletions[i]
    for j in range(m):
        data[n + j, j] = insertions[j]
    data[n:, m:] = 0.0
    return CostMatrix(data=data, n_question=n, n_answer=m, sentinel=sentinel)


def _jv_assignment(cost: np.ndarray) -> tuple[list[int], list[float], list[float]]:
    """Shortest-augmenting-path assignment on a square matrix.

    Returns (row_to_col, row_duals, col_duals); assigned entries are tight
    against the duals, which the lexicographic refinement relies on.
    """
    n = cost.shape[0]
    inf = math.inf
    u = [0.0] * (n + 1)
    v = [0.0] * (n + 1)
    col_row = [0] * (n + 1)  # 1-based; 0 means unassigned
    way = [0] * (n + 1)
    for i in range(1, n + 1):
        col_row[0] = i
        j0 = 0
        minv = [inf] * (n + 1)
        used = [False] * (n + 1)
        while True:
            used[j0] = True
            i0 = col_row[j0]
            delta = inf
            j1 = 0
            row = cost[i0 - 1]
            ui0 = u[i0]
            for j in range(1, n + 1):
                if used[j]:
                    continue
                current = row[j - 1] - ui0 - v[j]
                if current < minv[j]:
                    minv[j] = current
                    way[j] = j0
                if minv[j] < delta:
                    delta = minv[j]
                    j1 = j
            for j in range(n + 1):
                if used[j]:
                    u[col_row[j]] += delta
                    v[j] -= delta
                else:
                    minv[j] -= delta
            j0 = j1
            if col_row[j0] == 0:
                break
        while j0 != 0:
            j1 = way[j0]
            col_row[j0] = col_row[j1]
            j0 = j1
    row_to_col = [0] * n
    for j in range(1, n + 1):
        if col_row[j]:
            row_to_col[col_row[j] - 1] = j - 1
    return row_to_col, [u[i] for i in range(1, n + 1)], [v[j] for j in range(1, n + 1)]


def _refine_lexicographic(
    cost: np.ndarray,
    assignment: list[int],
    row_duals: list[float],
    col_duals: list[float],
) -> list[int]:
    """Among cost-equal optima, steer toward the lexicographically smallest.

    Optimal assignments only use edges that are tight against the duals, so
    each row greedily tries smaller tight columns, re-matching displaced rows
    through augmenting paths restricted to tight edges.
    """
    n = len(assignment)
    if n <= 1:
        return assignment
    tol = 1e-9 * max(1.0, float(np.max(np.abs(cost))))
    duals = np.asarray(col_duals)
    tight: list[list[int]] = []
    for i in range(n):
        slack = cost[i] - row_duals[i] - duals
        tight.append([j for j in range(n) if slack[j] <= tol])

    row_match = list(assignment)
    col_match: dict[int, int] = {c: r for r, c in enumerate(row_match)}
    fixed_cols: set[int] = set()

    def augment(row: int, banned_col: int, visited: set[int]) -> bool:
        for j in tight[row]:
            if j == banned_col or j in fixed_cols or j in visited:
                continue
            visited.add(j)
            owner = col_match.get(j)
            if owner is None or augment(owner, banned_col, visited):
                col_match[j] = row
                row_match[row] = j
                return True
        return False

    for i in range(n):
        for j in tight[i]:
            if j >= row_match[i]:
                break
            if j in fixed_cols or j not in col_match:
                continue
            displaced = col_match[j]
            del col_match[row_match[i]]
            col_match[j] = i
            old = row_match[i]
            row_match[i] = j
            if augment(displaced, j, set()):
                break
            # Revert: no perfect matching without this column for row i.
            col_match[j] = displaced
            row_match[i] = old
            col_match[old] = i
        fixed_cols.add(row_match[i])
    return row_match


def solve_assignment(
    matrix: CostMatrix | np.ndarray | Sequence[Sequence[float]],
) -> tuple[tuple[int, ...], float]:
    """Minimum-cost perfect matching of a square cost matrix.

    Returns (row_to_column assignment, total cost).  Ties between optimal
    assignments break toward the lexicographically smallest row_to_column
    vector; the total is the exact float sum of the selected entries.
    """
    cost = matrix.data if isinstance(matrix, CostMatrix) else np.asarray(matrix, dtype=float)
    if cost.size == 0:
        return (), 0.0
    if cost.ndim != 2 or cost.shape[0] != cost.shape[1]:
        raise ValueError("assignment requires a square matrix")
    n = cost.shape[0]
    assignment, row_duals, col_duals = _jv_assignment(cost)
    total = math.fsum(cost[i, assignment[i]] for i in range(n))
    refined = _refine_lexicographic(cost, assignment, row_duals, col_duals)
    if refined != assignment:
        refined_total = math.fsum(cost[i, refined[i]] for i in range(n))
        # Only accept the refinement on true ties; optimality wins otherwise.
        if refined_total == total:
            assignment = refined
    return tuple(assignment), total


def graph_edit_distance(
    gq: DependencyGraph, ga: DependencyGraph, config: GedConfig | None = None
) -> float:
    """Assignment-based edit distance, normalized to [0, 1].

    The normalizer is the cost of deleting every question node and inserting
    every answer node, which is itself a feasible assignment; identical
    graphs score 0, and an empty question against any answer scores 1.
    """
    cfg = config or GedConfig()
    n, m = len(gq.nodes), len(ga.nodes)
    if n == 0 and m == 0:
        return 0.0
    matrix = build_cost_matrix(gq, ga, cfg.pos_table, cfg.edge_weight, cfg.delete_cost)
    _, total = solve_assignment(matrix)
    deg_q = degrees(gq)
    deg_a = degrees(ga)
    denominator = math.fsum(
        cfg.delete_cost + cfg.edge_weight * deg_q[t.index] for t in gq.nodes
    ) + math.fsum(cfg.delete_cost + cfg.edge_weight * deg_a[t.index] for t in ga.nodes)
    if denominator <= 0.0:
        return 0.0
    return min(1.0, max(0.0, total / denominator))
