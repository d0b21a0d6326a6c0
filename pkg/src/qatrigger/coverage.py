"""Coverage features between question and answer dependency graphs.

Relation coverage counts one-to-one edge-signature matches relative to the
question's edges; vocabulary coverage does the same over node lemmas.  Graph
coverage builds a sub-graph of the answer graph spanned by shortest paths
(unit weights, directions ignored) between answer nodes whose lemmas also
occur in the question, keeping only paths of at most `m` edges, and reports
the sub-graph's edge count relative to each side.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from itertools import combinations
from typing import Mapping

from .depgraph import (
    DependencyGraph,
    edge_signatures,
    node_lemmas,
    undirected_adjacency,
)


@dataclass(frozen=True)
class SubGraph:
    """Node indices and undirected edges (sorted pairs) inside the answer graph."""

    nodes: frozenset[int]
    edges: frozenset[tuple[int, int]]


EMPTY_SUBGRAPH = SubGraph(nodes=frozenset(), edges=frozenset())


def relation_coverage(gq: DependencyGraph, ga: DependencyGraph) -> float:
    """Matched edge signatures over question edge count; 0 for an edgeless question."""
    if not gq.edges:
        return 0.0
    sig_q = edge_signatures(gq)
    sig_a = edge_signatures(ga)
    matched = sum(min(count, sig_a[sig]) for sig, count in sig_q.items())
    return matched / len(gq.edges)


def vocabulary_coverage(gq: DependencyGraph, ga: DependencyGraph) -> float:
    """Matched lemmas over question node count."""
    if not gq.nodes:
        return 0.0
    lem_q = node_lemmas(gq)
    lem_a = node_lemmas(ga)
    matched = sum(min(count, lem_a[lemma]) for lemma, count in lem_q.items())
    return matched / len(gq.nodes)


def find_path(
    adjacency: Mapping[int, set[int]], source: int, dest: int
) -> list[int]:
    """Shortest unit-weight path from source to dest, or [] if unreachable.

    Priority-queue relaxation with strict improvement; equal-distance ties
    resolve toward the smaller node index, so the returned path is
    deterministic.
    """
    if source not in adjacency or dest not in adjacency:
        return []
    distance = {v: math.inf for v in adjacency}
    parent: dict[int, int | None] = {v: None for v in adjacency}
    distance[source] = 0
    queue: list[tuple[float, int]] = [(0, source)]
    while queue:
        dist_u, u = heapq.heappop(queue)
        if dist_u > distance[u]:
            continue  # stale entry left behind by a decrease-key
        for v in sorted(adjacency[u]):
            candidate = dist_u + 1
            if candidate < distance[v]:
                distance[v] = candidate
                parent[v] = u
                heapq.heappush(queue, (candidate, v))
    if distance[dest] is math.inf:
        return []
    path = []
    vertex: int | None = dest
    while vertex is not None:
        path.append(vertex)
        vertex = parent[vertex]
    path.reverse()
    return path


def align_subgraph(gq: DependencyGraph, ga: DependencyGraph, m: int) -> SubGraph:
    """Answer sub-graph spanned by short paths between question-shared nodes.

    The shared node set holds every answer node whose lemma occurs in the
    question; for each unordered pair, the shortest undirected path joins the
    sub-graph when it exists and uses at most m edges.
    """
    if m < 0:
        raise ValueError("path threshold m must be non-negative")
    question_lemmas = set(node_lemmas(gq))
    common = [t.index for t in ga.nodes if t.lemma in question_lemmas]
    if len(common) < 2 or m == 0:
        return EMPTY_SUBGRAPH
    adjacency = undirected_adjacency(ga)
    nodes: set[int] = set()
    edges: set[tuple[int, int]] = set()
    for source, dest in combinations(common, 2):
        path = find_path(adjacency, source, dest)
        if not path or len(path) - 1 > m:
            continue
        nodes.update(path)
        for a, b in zip(path, path[1:]):
            edges.add((a, b) if a < b else (b, a))
    return SubGraph(nodes=frozenset(nodes), edges=frozenset(edges))


def graph_coverage_features(
    gq: DependencyGraph, ga: DependencyGraph, m: int
) -> tuple[float, float]:
    """(coverage vs answer edges, coverage vs question edges), both in [0, 1]."""
    sub = align_subgraph(gq, ga, m)
    n_sub = len(sub.edges)
    cov_ans = n_sub / len(ga.edges) if ga.edges else 0.0
    cov_ques = min(1.0, n_sub / len(gq.edges)) if gq.edges else 0.0
    return cov_ans, cov_ques
