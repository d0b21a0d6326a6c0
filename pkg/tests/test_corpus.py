import pytest

from qatrigger.corpus import (
    attach_parses,
    load_scores,
    load_wikiqa,
    save_wikiqa,
)
from qatrigger.errors import IngestionError

HEADER = "QuestionID\tQuestion\tDocumentID\tDocumentTitle\tSentenceID\tSentence\tLabel\n"


def write(path, text):
    path.write_text(text, encoding="utf-8")
    return path


def test_three_row_file_single_group(tmp_path):
    path = write(
        tmp_path / "c.tsv",
        HEADER
        + "Q1\twho won\tD1\tt\tS1\tnobody won\t0\n"
        + "Q1\twho won\tD1\tt\tS2\talice won\t1\n"
        + "Q1\twho won\tD1\tt\tS3\tbob lost\t0\n",
    )
    groups = load_wikiqa(path)
    assert len(groups) == 1
    group = groups[0]
    assert group.question_id == "Q1"
    assert [cid for cid, _, _ in group.candidates] == ["S1", "S2", "S3"]
    assert [label for _, _, label in group.candidates] == [0, 1, 0]
    assert group.answerable


def test_empty_file_gives_empty_list(tmp_path):
    assert load_wikiqa(write(tmp_path / "e.tsv", "")) == []


def test_headerless_file_is_accepted(tmp_path):
    path = write(tmp_path / "c.tsv", "Q1\tq\tD1\tt\tS1\ts\t1\n")
    assert len(load_wikiqa(path)) == 1


def test_groups_preserve_first_appearance_order(tmp_path):
    path = write(
        tmp_path / "c.tsv",
        "Q2\tq2\tD\tt\tS1\ts\t0\nQ1\tq1\tD\tt\tS2\ts\t0\nQ2\tq2\tD\tt\tS3\ts\t1\n",
    )
    groups = load_wikiqa(path)
    assert [g.question_id for g in groups] == ["Q2", "Q1"]
    assert len(groups[0].candidates) == 2


def test_group_sizes_sum_to_row_count(mini_dir):
    groups = load_wikiqa(mini_dir / "train.tsv")
    n_rows = sum(
        1 for line in (mini_dir / "train.tsv").read_text().splitlines()[1:] if line
    )
    assert sum(len(g.candidates) for g in groups) == n_rows


def test_short_row_is_an_error_with_line_number(tmp_path):
    path = write(tmp_path / "c.tsv", HEADER + "Q1\tq\tD1\tt\tS1\n")
    with pytest.raises(IngestionError, match="line 2"):
        load_wikiqa(path)


def test_non_binary_label_is_an_error(tmp_path):
    path = write(tmp_path / "c.tsv", "Q1\tq\tD1\tt\tS1\ts\t2\n")
    with pytest.raises(IngestionError, match="label"):
        load_wikiqa(path)


def test_duplicate_candidate_id_is_an_error(tmp_path):
    path = write(
        tmp_path / "c.tsv",
        "Q1\tq\tD1\tt\tS1\ts\t0\nQ1\tq\tD1\tt\tS1\ts\t1\n",
    )
    with pytest.raises(IngestionError, match="duplicate"):
        load_wikiqa(path)


def test_round_trip_preserves_groups(mini_dir, tmp_path):
    groups = load_wikiqa(mini_dir / "dev.tsv")
    out = tmp_path / "again.tsv"
    save_wikiqa(groups, out)
    assert load_wikiqa(out) == groups


CONLLU_TWO = """1\tnobody\tnobody\tPRON\tNN\t_\t2\tnsubj\t_\t_
2\twon\twin\tVERB\tVBD\t_\t0\troot\t_\t_

1\talice\talice\tPROPN\tNNP\t_\t2\tnsubj\t_\t_
2\twon\twin\tVERB\tVBD\t_\t0\troot\t_\t_
"""


def test_attach_parses_positional(tmp_path):
    corpus = write(tmp_path / "c.tsv", "Q1\tnobody won\tD\tt\tS1\talice won\t1\n")
    conllu = write(tmp_path / "p.conllu", CONLLU_TWO)
    groups = attach_parses(load_wikiqa(corpus), conllu)
    question = groups[0].question
    assert [t.form for t in question.tokens] == ["nobody", "won"]
    assert [t.head for t in question.tokens] == [2, 0]
    _, answer, _ = groups[0].candidates[0]
    assert answer.tokens[0].lemma == "alice"


def test_attach_parses_by_index_file(tmp_path):
    corpus = write(tmp_path / "c.tsv", "Q1\tnobody won\tD\tt\tS1\talice won\t1\n")
    blocks = (
        "# sent_id = p-answer\n"
        "1\talice\talice\tPROPN\tNNP\t_\t2\tnsubj\t_\t_\n"
        "2\twon\twin\tVERB\tVBD\t_\t0\troot\t_\t_\n\n"
        "# sent_id = p-question\n"
        "1\tnobody\tnobody\tPRON\tNN\t_\t2\tnsubj\t_\t_\n"
        "2\twon\twin\tVERB\tVBD\t_\t0\troot\t_\t_\n"
    )
    conllu = write(tmp_path / "p.conllu", blocks)
    index = write(tmp_path / "i.tsv", "p-question\tQ1\np-answer\tS1\n")
    groups = attach_parses(load_wikiqa(corpus), conllu, index)
    assert groups[0].question.tokens[0].form == "nobody"
    assert groups[0].candidates[0][1].tokens[0].form == "alice"


def test_attach_parses_skips_mwt_and_empty_nodes(tmp_path):
    corpus = write(tmp_path / "c.tsv", "Q1\tdo it\tD\tt\tS1\tdo it\t0\n")
    block = (
        "1-2\tdoit\t_\t_\t_\t_\t_\t_\t_\t_\n"
        "1\tdo\tdo\tVERB\tVB\t_\t0\troot\t_\t_\n"
        "1.1\tghost\t_\t_\t_\t_\t_\t_\t_\t_\n"
        "2\tit\tit\tPRON\tPRP\t_\t1\tobj\t_\t_\n"
    )
    conllu = write(tmp_path / "p.conllu", block + "\n" + block)
    groups = attach_parses(load_wikiqa(corpus), conllu)
    assert len(groups[0].question.tokens) == 2


def test_attach_parses_rejects_double_root(tmp_path):
    corpus = write(tmp_path / "c.tsv", "Q1\ta b\tD\tt\tS1\ta b\t0\n")
    bad = (
        "1\ta\ta\tNOUN\tNN\t_\t0\troot\t_\t_\n"
        "2\tb\tb\tNOUN\tNN\t_\t0\troot\t_\t_\n"
    )
    good = (
        "1\ta\ta\tNOUN\tNN\t_\t2\tnsubj\t_\t_\n"
        "2\tb\tb\tNOUN\tNN\t_\t0\troot\t_\t_\n"
    )
    conllu = write(tmp_path / "p.conllu", bad + "\n" + good)
    with pytest.raises(IngestionError, match="single-root"):
        attach_parses(load_wikiqa(corpus), conllu)


def test_attach_parses_missing_parse_lists_ids(tmp_path):
    corpus = write(tmp_path / "c.tsv", "Q1\tnobody won\tD\tt\tS1\talice won\t1\n")
    conllu = write(
        tmp_path / "p.conllu",
        "# sent_id = only\n1\twon\twin\tVERB\tVBD\t_\t0\troot\t_\t_\n",
    )
    index = write(tmp_path / "i.tsv", "only\tQ1\n")
    with pytest.raises(IngestionError, match="S1"):
        attach_parses(load_wikiqa(corpus), conllu, index)


def test_attach_parses_duplicate_mapping_is_an_error(tmp_path):
    corpus = write(tmp_path / "c.tsv", "Q1\tnobody won\tD\tt\tS1\talice won\t1\n")
    conllu = write(tmp_path / "p.conllu", CONLLU_TWO)
    index = write(tmp_path / "i.tsv", "1\tQ1\n1\tS1\n")
    with pytest.raises(IngestionError, match="duplicate"):
        attach_parses(load_wikiqa(corpus), conllu, index)


def test_attach_parses_mini_corpus_invariants(mini_dir):
    groups = attach_parses(
        load_wikiqa(mini_dir / "train.tsv"),
        mini_dir / "parses_train.conllu",
        mini_dir / "index_train.tsv",
    )
    for group in groups:
        sentences = [group.question] + [s for _, s, _ in group.candidates]
        for sentence in sentences:
            n = len(sentence.tokens)
            assert n > 0
            assert sum(1 for t in sentence.tokens if t.head == 0) == 1
            assert all(0 <= t.head <= n and t.head != t.index for t in sentence.tokens)
            assert all(t.lemma for t in sentence.tokens)


def test_lemma_falls_back_to_lowercased_form(tmp_path):
    corpus = write(tmp_path / "c.tsv", "Q1\tParis\tD\tt\tS1\tParis\t0\n")
    block = "1\tParis\t_\tPROPN\tNNP\t_\t0\troot\t_\t_\n"
    conllu = write(tmp_path / "p.conllu", block + "\n" + block)
    groups = attach_parses(load_wikiqa(corpus), conllu)
    assert groups[0].question.tokens[0].lemma == "paris"


def test_load_scores_roundtrip_and_duplicates(tmp_path):
    path = write(
        tmp_path / "s.tsv",
        "Q1\tA1\t0.73\nQ1\tA2\t0.2\nQ1\tA2\t0.9\nQ2\tA1\t-1.5\n",
    )
    scores, duplicates = load_scores(path)
    assert scores[("Q1", "A1")] == 0.73
    assert scores[("Q1", "A2")] == 0.9
    assert duplicates == 1
    assert len(scores) == 3


def test_load_scores_five_row_fixture(tmp_path):
    rows = "\n".join(f"Q{i}\tA{i}\t0.{i}" for i in range(1, 6))
    scores, duplicates = load_scores(write(tmp_path / "s.tsv", rows + "\n"))
    assert len(scores) == 5
    assert duplicates == 0


def test_load_scores_non_numeric_is_an_error(tmp_path):
    path = write(tmp_path / "s.tsv", "Q1\tA1\thigh\n")
    with pytest.raises(IngestionError, match="line 1"):
        load_scores(path)
