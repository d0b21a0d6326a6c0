#!/usr/bin/env python3
"""TF-IDF graph similarity and coverage features on one question/answer pair.

Similarity renders each graph as weighted vectors of lemmas, lemma pairs,
and (pair, relation) triplets, then takes cosines.  Coverage counts how
much of the question's structure the answer reproduces: matched edge
signatures, matched lemmas, and the sub-graph spanned by short paths
between shared nodes.
"""

from qatrigger import (
    align_subgraph,
    build_df,
    build_graph,
    graph_coverage_features,
    graph_similarity_features,
    relation_coverage,
    vocabulary_coverage,
)
from qatrigger.corpus import Sentence, Token


def sentence(sid, rows):
    tokens = tuple(
        Token(i, form, lemma, upos, upos, head, rel)
        for i, (form, lemma, upos, head, rel) in enumerate(rows, start=1)
    )
    return Sentence(sid, " ".join(t.form for t in tokens), tokens)


question = sentence(
    "q",
    [
        ("how", "how", "ADV", 5, "advmod"),
        ("did", "do", "AUX", 5, "aux"),
        ("david", "david", "PROPN", 4, "compound"),
        ("carradine", "carradine", "PROPN", 5, "nsubj"),
        ("die", "die", "VERB", 0, "root"),
    ],
)
answer = sentence(
    "a",
    [
        ("david", "david", "PROPN", 2, "compound"),
        ("carradine", "carradine", "PROPN", 3, "nsubj"),
        ("died", "die", "VERB", 0, "root"),
        ("of", "of", "ADP", 5, "case"),
        ("asphyxiation", "asphyxiation", "NOUN", 3, "obl"),
    ],
)

gq, ga = build_graph(question), build_graph(answer)

# Document frequencies normally come from the training split (or a file);
# here the two sentences themselves act as a two-document corpus.
tables = {level: build_df([question, answer], level) for level in ("word", "pair", "triplet")}

sim_word, sim_pair, sim_triplet = graph_similarity_features(
    gq, ga, tables, alphas=(0.0, 0.0, 0.0)
)
print("question:", question.text)
print("answer:  ", answer.text, "\n")
print(f"word-level similarity:    {sim_word:.4f}")
print(f"pair-level similarity:    {sim_pair:.4f}")
print(f"triplet-level similarity: {sim_triplet:.4f}")

# Raising a threshold only ever removes vector entries, never adds them.
strict_word, _, _ = graph_similarity_features(gq, ga, tables, alphas=(1.5, 0.0, 0.0))
print(f"word similarity with alpha=1.5:  {strict_word:.4f} (filtering drops weights)")

print(f"\nrelation coverage:  {relation_coverage(gq, ga):.4f}  (matched edges / question edges)")
print(f"vocabulary coverage: {vocabulary_coverage(gq, ga):.4f}  (matched lemmas / question nodes)")

sub = align_subgraph(gq, ga, m=3)
print(f"\naligned sub-graph over shared lemmas: nodes {sorted(sub.nodes)}, edges {sorted(sub.edges)}")
cov_ans, cov_ques = graph_coverage_features(gq, ga, m=3)
print(f"graph coverage vs answer:   {cov_ans:.4f}")
print(f"graph coverage vs question: {cov_ques:.4f}")
