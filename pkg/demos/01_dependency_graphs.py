#!/usr/bin/env python3
"""Build dependency graphs from CoNLL-U parses and inspect their structure.

A parsed sentence becomes a rooted tree: one node per token, one labeled
edge per non-root token running from governor to dependent.
"""

from pathlib import Path
import tempfile

from qatrigger import attach_parses, build_graph, edge_signatures, load_wikiqa, undirected_adjacency

# A two-row corpus: one question with one candidate answer.
corpus = (
    "QuestionID\tQuestion\tDocumentID\tDocumentTitle\tSentenceID\tSentence\tLabel\n"
    "Q1\thow did david carradine die\tD1\tDavid Carradine\t"
    "S1\tdavid carradine died of asphyxiation\t1\n"
)

# Parses for both sentences, questions first (positional alignment).
conllu = """\
1\thow\thow\tADV\tWRB\t_\t5\tadvmod\t_\t_
2\tdid\tdo\tAUX\tVBD\t_\t5\taux\t_\t_
3\tdavid\tdavid\tPROPN\tNNP\t_\t4\tcompound\t_\t_
4\tcarradine\tcarradine\tPROPN\tNNP\t_\t5\tnsubj\t_\t_
5\tdie\tdie\tVERB\tVB\t_\t0\troot\t_\t_

1\tdavid\tdavid\tPROPN\tNNP\t_\t2\tcompound\t_\t_
2\tcarradine\tcarradine\tPROPN\tNNP\t_\t3\tnsubj\t_\t_
3\tdied\tdie\tVERB\tVBD\t_\t0\troot\t_\t_
4\tof\tof\tADP\tIN\t_\t5\tcase\t_\t_
5\tasphyxiation\tasphyxiation\tNOUN\tNN\t_\t3\tobl\t_\t_
"""

with tempfile.TemporaryDirectory() as tmp:
    corpus_path = Path(tmp) / "corpus.tsv"
    conllu_path = Path(tmp) / "parses.conllu"
    corpus_path.write_text(corpus)
    conllu_path.write_text(conllu)

    groups = load_wikiqa(corpus_path)
    groups = attach_parses(groups, conllu_path)  # no index file -> positional

group = groups[0]
question_graph = build_graph(group.question)
answer_graph = build_graph(group.candidates[0][1])

print("question:", group.question.text)
for gov, dep, rel in question_graph.edges:
    gov_tok = question_graph.nodes[gov - 1]
    dep_tok = question_graph.nodes[dep - 1]
    print(f"  {gov_tok.form} -[{rel}]-> {dep_tok.form}")

print("\nanswer:", group.candidates[0][1].text)
for gov, dep, rel in answer_graph.edges:
    gov_tok = answer_graph.nodes[gov - 1]
    dep_tok = answer_graph.nodes[dep - 1]
    print(f"  {gov_tok.form} -[{rel}]-> {dep_tok.form}")

# Edge signatures are (governor lemma, dependent lemma, relation) triples;
# the question and the answer share the compound and nsubj links even though
# "die" and "died" differ on the surface.
shared = edge_signatures(question_graph) & edge_signatures(answer_graph)
print("\nshared edge signatures:", sorted(shared))

# Directions are ignored by the coverage features downstream.
print("\nundirected adjacency of the question graph:")
for node, neighbors in undirected_adjacency(question_graph).items():
    print(f"  {node}: {sorted(neighbors)}")
