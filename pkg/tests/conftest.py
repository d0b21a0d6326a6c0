from pathlib import Path

import pytest

from qatrigger.corpus import Sentence, Token
from qatrigger.depgraph import build_graph

MINI_DIR = Path(__file__).resolve().parent / "data" / "mini"


def make_sentence(sentence_id, rows):
    """rows: (form, lemma, upos, head, deprel); xpos mirrors upos."""
    tokens = tuple(
        Token(index=i, form=form, lemma=lemma, upos=upos, xpos=upos, head=head, deprel=rel)
        for i, (form, lemma, upos, head, rel) in enumerate(rows, start=1)
    )
    return Sentence(sentence_id, " ".join(t.form for t in tokens), tokens)


@pytest.fixture
def question_sentence():
    # "how did david carradine die", rooted at "die"
    return make_sentence(
        "q1",
        [
            ("how", "how", "ADV", 5, "advmod"),
            ("did", "do", "AUX", 5, "aux"),
            ("david", "david", "PROPN", 4, "compound"),
            ("carradine", "carradine", "PROPN", 5, "nsubj"),
            ("die", "die", "VERB", 0, "root"),
        ],
    )


@pytest.fixture
def answer_sentence():
    # "david carradine died on june 3 2009 apparently of asphyxiation"
    return make_sentence(
        "a1",
        [
            ("david", "david", "PROPN", 2, "compound"),
            ("carradine", "carradine", "PROPN", 3, "nsubj"),
            ("died", "die", "VERB", 0, "root"),
            ("on", "on", "ADP", 5, "case"),
            ("june", "june", "PROPN", 3, "obl"),
            ("3", "3", "NUM", 5, "nummod"),
            ("2009", "2009", "NUM", 5, "nummod"),
            ("apparently", "apparently", "ADV", 3, "advmod"),
            ("of", "of", "ADP", 10, "case"),
            ("asphyxiation", "asphyxiation", "NOUN", 3, "obl"),
        ],
    )


@pytest.fixture
def question_graph(question_sentence):
    return build_graph(question_sentence)


@pytest.fixture
def answer_graph(answer_sentence):
    return build_graph(answer_sentence)


@pytest.fixture
def mini_dir():
    return MINI_DIR


def random_tree_sentence(rng, max_nodes=8, lemma_pool=None, prefix="t"):
    """Random labeled tree as a parsed Sentence; parent indices precede children."""
    lemmas = lemma_pool or ["die", "live", "win", "run", "city", "man", "dog", "sun"]
    upos = ["NOUN", "VERB", "PROPN", "ADV", "ADJ", "AUX", "DET"]
    rels = ["nsubj", "obj", "advmod", "det", "obl", "amod"]
    n = int(rng.integers(1, max_nodes + 1))
    rows = []
    for i in range(1, n + 1):
        head = 0 if i == 1 else int(rng.integers(1, i))
        lemma = lemmas[int(rng.integers(0, len(lemmas)))]
        tag = upos[int(rng.integers(0, len(upos)))]
        rel = "root" if head == 0 else rels[int(rng.integers(0, len(rels)))]
        rows.append((lemma, lemma, tag, head, rel))
    return make_sentence(f"{prefix}{rng.integers(0, 10**9)}", rows)
