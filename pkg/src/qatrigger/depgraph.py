"""Dependency graphs over parsed sentences.

A sentence parse is turned into a rooted tree whose nodes are the tokens and
whose labeled edges run from governor to dependent.  All downstream features
(edit distance, similarity, coverage) consume these graphs.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .corpus import Sentence, Token


@dataclass(frozen=True)
class DependencyGraph:
    """Nodes in sentence order plus (governor, dependent, relation) edges."""

    nodes: tuple[Token, ...]
    edges: tuple[tuple[int, int, str], ...]


def build_graph(sentence: Sentence) -> DependencyGraph:
    """Build the dependency graph of a parsed sentence.

    One edge per non-root token, so a valid parse yields a tree with
    len(edges) == len(nodes) - 1.
    """
    if not sentence.parsed:
        raise ValueError(f"sentence {sentence.sentence_id!r} has no parse")
    n = len(sentence.tokens)
    roots = 0
    edges = []
    for token in sentence.tokens:
        if token.head == token.index or token.head < 0 or token.head > n:
            raise ValueError(
                f"sentence {sentence.sentence_id!r}: invalid head {token.head} "
                f"for token {token.index}"
            )
        if token.head == 0:
            roots += 1
        else:
            edges.append((token.head, token.index, token.deprel))
    if roots != 1:
        raise ValueError(
            f"sentence {sentence.sentence_id!r}: expected exactly one root, got {roots}"
        )
    return DependencyGraph(nodes=sentence.tokens, edges=tuple(edges))


def undirected_adjacency(graph: DependencyGraph) -> dict[int, set[int]]:
    """Symmetric adjacency over node indices, ignoring edge direction."""
    adjacency: dict[int, set[int]] = {t.index: set() for t in graph.nodes}
    for gov, dep, _ in graph.edges:
        adjacency[gov].add(dep)
        adjacency[dep].add(gov)
    return adjacency


def edge_signatures(graph: DependencyGraph) -> Counter[tuple[str, str, str]]:
    """Multiset of (governor lemma, dependent lemma, relation) per edge."""
    lemma = {t.index: t.lemma for t in graph.nodes}
    return Counter((lemma[gov], lemma[dep], rel) for gov, dep, rel in graph.edges)


def node_lemmas(graph: DependencyGraph) -> Counter[str]:
    """Multiset of node lemmas."""
    return Counter(t.lemma for t in graph.nodes)


def incident_relations(graph: DependencyGraph) -> dict[int, Counter[str]]:
    """Per node, the multiset of relation labels on its incident edges."""
    relations: dict[int, Counter[str]] = {t.index: Counter() for t in graph.nodes}
    for gov, dep, rel in graph.edges:
        relations[gov][rel] += 1
        relations[dep][rel] += 1
    return relations


def degrees(graph: DependencyGraph) -> dict[int, int]:
    """Undirected degree of every node."""
    degree = {t.index: 0 for t in graph.nodes}
    for gov, dep, _ in graph.edges:
        degree[gov] += 1
        degree[dep] += 1
    return degree
