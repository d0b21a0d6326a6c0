"""WikiQA-format corpus ingestion.

Reads the public 7-column WikiQA TSV (QuestionID, Question, DocumentID,
DocumentTitle, SentenceID, Sentence, Label), groups candidate answers by
question, and aligns every sentence with a dependency parse supplied as a
CoNLL-U sidecar file.  Parsing itself is out of scope: parses are ingested,
never produced.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from pathlib import Path

from .errors import IngestionError

WIKIQA_COLUMNS = 7


@dataclass(frozen=True)
class Token:
    """One parsed token; indices are 1-based, head 0 marks the root."""

    index: int
    form: str
    lemma: str
    upos: str
    xpos: str
    head: int
    deprel: str


@dataclass(frozen=True)
class Sentence:
    sentence_id: str
    text: str
    tokens: tuple[Token, ...] = ()

    @property
    def parsed(self) -> bool:
        return bool(self.tokens)


@dataclass(frozen=True)
class QAPair:
    question_id: str
    candidate_id: str
    question: Sentence
    answer: Sentence
    gold_label: int


@dataclass(frozen=True)
class QuestionGroup:
    """One question with its candidate answers in corpus order."""

    question_id: str
    question: Sentence
    candidates: tuple[tuple[str, Sentence, int], ...]

    @property
    def answerable(self) -> bool:
        return any(label == 1 for _, _, label in self.candidates)

    def pairs(self) -> list[QAPair]:
        return [
            QAPair(self.question_id, cid, self.question, sent, label)
            for cid, sent, label in self.candidates
        ]


def _is_header(columns: list[str]) -> bool:
    # Header rows are recognised by a non-numeric Label column.
    return len(columns) >= WIKIQA_COLUMNS and not columns[6].strip().isdigit()


def load_wikiqa(tsv_path: str | Path) -> list[QuestionGroup]:
    """Load a WikiQA TSV into question groups in first-appearance order.

    Rows need at least 7 tab-separated columns; extra columns are ignored.
    A header row is auto-detected and skipped.  Malformed rows (too few
    columns, a label other than 0/1, a duplicate SentenceID within one
    question) raise IngestionError naming the line.
    """
    path = Path(tsv_path)
    grouped: dict[str, dict] = {}
    with open(path, encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            line = line.rstrip("\r\n")
            if not line:
                continue
            columns = line.split("\t")
            if lineno == 1 and _is_header(columns):
                continue
            if len(columns) < WIKIQA_COLUMNS:
                raise IngestionError(
                    f"{path}: line {lineno}: expected >= {WIKIQA_COLUMNS} columns, "
                    f"got {len(columns)}"
                )
            qid, question_text = columns[0], columns[1]
            sent_id, sent_text, label_text = columns[4], columns[5], columns[6].strip()
            if label_text not in ("0", "1"):
                raise IngestionError(
                    f"{path}: line {lineno}: label must be 0 or 1, got {label_text!r}"
                )
            entry = grouped.setdefault(
                qid, {"question": question_text, "candidates": [], "seen": set()}
            )
            if sent_id in entry["seen"]:
                raise IngestionError(
                    f"{path}: line {lineno}: duplicate candidate id {sent_id!r} "
                    f"for question {qid!r}"
                )
            entry["seen"].add(sent_id)
            entry["candidates"].append(
                (sent_id, Sentence(sent_id, sent_text), int(label_text))
            )
    return [
        QuestionGroup(qid, Sentence(qid, entry["question"]), tuple(entry["candidates"]))
        for qid, entry in grouped.items()
    ]


def save_wikiqa(groups: list[QuestionGroup], tsv_path: str | Path) -> None:
    """Write groups back to the 7-column TSV layout (placeholder doc fields)."""
    with open(tsv_path, "w", encoding="utf-8", newline="") as handle:
        handle.write(
            "QuestionID\tQuestion\tDocumentID\tDocumentTitle\tSentenceID\tSentence\tLabel\n"
        )
        for group in groups:
            for cid, sent, label in group.candidates:
                handle.write(
                    f"{group.question_id}\t{group.question.text}\tD0\t-\t"
                    f"{cid}\t{sent.text}\t{label}\n"
                )


def _validate_parse(tokens: list[Token], where: str) -> None:
    n = len(tokens)
    roots = [t.index for t in tokens if t.head == 0]
    if len(roots) != 1:
        raise IngestionError(
            f"{where}: single-root violation ({len(roots)} roots in {n} tokens)"
        )
    for t in tokens:
        if t.index < 1 or t.index > n:
            raise IngestionError(f"{where}: token index {t.index} out of range 1..{n}")
        if t.head < 0 or t.head > n:
            raise IngestionError(f"{where}: head {t.head} out of range 0..{n}")
        if t.head == t.index:
            raise IngestionError(f"{where}: token {t.index} is its own head")
    if [t.index for t in tokens] != list(range(1, n + 1)):
        raise IngestionError(f"{where}: token indices are not contiguous 1..{n}")


def _read_conllu_blocks(conllu_path: Path) -> list[tuple[str, list[Token]]]:
    """Read CoNLL-U blocks as (block_id, tokens).

    The block id is the `# sent_id = ...` comment when present, otherwise the
    1-based block ordinal as a string.  Multi-word-token lines (id "1-2") and
    empty-node lines (id "1.1") are skipped.
    """
    blocks: list[tuple[str, list[Token]]] = []
    sent_id: str | None = None
    tokens: list[Token] = []

    def flush() -> None:
        nonlocal sent_id, tokens
        if tokens:
            blocks.append((sent_id or str(len(blocks) + 1), tokens))
        sent_id, tokens = None, []

    with open(conllu_path, encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            line = line.rstrip("\r\n")
            if not line:
                flush()
                continue
            if line.startswith("#"):
                if line[1:].strip().startswith("sent_id"):
                    _, _, value = line.partition("=")
                    sent_id = value.strip()
                continue
            columns = line.split("\t")
            if len(columns) != 10:
                raise IngestionError(
                    f"{conllu_path}: line {lineno}: expected 10 columns, got {len(columns)}"
                )
            token_id = columns[0]
            if "-" in token_id or "." in token_id:
                continue
            try:
                index = int(token_id)
                head = int(columns[6])
            except ValueError as exc:
                raise IngestionError(
                    f"{conllu_path}: line {lineno}: non-numeric id or head"
                ) from exc
            form = columns[1]
            lemma = columns[2] if columns[2] not in ("", "_") else form
            tokens.append(
                Token(
                    index=index,
                    form=form,
                    lemma=lemma.lower(),
                    upos=columns[3],
                    xpos=columns[4],
                    head=head,
                    deprel=columns[7],
                )
            )
    flush()
    return blocks


def _read_index(index_path: Path) -> dict[str, str]:
    """Read `conllu_sent_id<TAB>wikiqa_id` lines; duplicates on either side fail."""
    mapping: dict[str, str] = {}
    seen_targets: set[str] = set()
    with open(index_path, encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            line = line.rstrip("\r\n")
            if not line:
                continue
            columns = line.split("\t")
            if len(columns) != 2:
                raise IngestionError(
                    f"{index_path}: line {lineno}: expected 2 columns, got {len(columns)}"
                )
            conllu_id, wikiqa_id = columns
            if conllu_id in mapping:
                raise IngestionError(
                    f"{index_path}: line {lineno}: duplicate mapping for {conllu_id!r}"
                )
            if wikiqa_id in seen_targets:
                raise IngestionError(
                    f"{index_path}: line {lineno}: duplicate mapping for {wikiqa_id!r}"
                )
            mapping[conllu_id] = wikiqa_id
            seen_targets.add(wikiqa_id)
    return mapping


def attach_parses(
    groups: list[QuestionGroup],
    conllu_path: str | Path,
    index_path: str | Path | None = None,
) -> list[QuestionGroup]:
    """Return new groups whose sentences carry tokens from a CoNLL-U file.

    With an index file, each CoNLL-U block (keyed by `# sent_id` comment or by
    1-based order) is mapped to a WikiQA QuestionID or SentenceID.  Without
    one, alignment is positional: all questions first, then all candidates,
    both in corpus order.  Every used parse must have exactly one root and
    in-range heads; sentences left without a parse raise IngestionError
    listing the missing ids.
    """
    conllu_path = Path(conllu_path)
    blocks = _read_conllu_blocks(conllu_path)

    by_wikiqa_id: dict[str, list[Token]] = {}
    if index_path is not None:
        by_block_id = {}
        for block_id, tokens in blocks:
            if block_id in by_block_id:
                raise IngestionError(
                    f"{conllu_path}: duplicate sent_id {block_id!r}"
                )
            by_block_id[block_id] = tokens
        for conllu_id, wikiqa_id in _read_index(Path(index_path)).items():
            if conllu_id not in by_block_id:
                raise IngestionError(
                    f"{index_path}: mapped sent_id {conllu_id!r} not found in {conllu_path}"
                )
            by_wikiqa_id[wikiqa_id] = by_block_id[conllu_id]
    else:
        targets = [g.question_id for g in groups]
        targets += [cid for g in groups for cid, _, _ in g.candidates]
        if len(blocks) != len(targets):
            raise IngestionError(
                f"{conllu_path}: positional alignment needs {len(targets)} parses, "
                f"found {len(blocks)}"
            )
        for target, (_, tokens) in zip(targets, blocks):
            by_wikiqa_id[target] = tokens

    missing = [g.question_id for g in groups if g.question_id not in by_wikiqa_id]
    missing += [
        cid
        for g in groups
        for cid, _, _ in g.candidates
        if cid not in by_wikiqa_id
    ]
    if missing:
        raise IngestionError(
            f"{conllu_path}: no parse for ids: {', '.join(missing)}"
        )

    def parsed(sentence: Sentence, key: str) -> Sentence:
        tokens = by_wikiqa_id[key]
        _validate_parse(tokens, f"{conllu_path}: sentence {key!r}")
        return dataclasses.replace(sentence, tokens=tuple(tokens))

    result = []
    for group in groups:
        candidates = tuple(
            (cid, parsed(sent, cid), label) for cid, sent, label in group.candidates
        )
        result.append(
            QuestionGroup(
                group.question_id,
                parsed(group.question, group.question_id),
                candidates,
            )
        )
    return result


def load_scores(tsv_path: str | Path) -> tuple[dict[tuple[str, str], float], int]:
    """Load an external per-pair score file.

    Rows are `question_id<TAB>candidate_id<TAB>score`.  Returns the score map
    and the number of duplicate keys encountered (last value wins).
    """
    path = Path(tsv_path)
    scores: dict[tuple[str, str], float] = {}
    duplicates = 0
    with open(path, encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            line = line.rstrip("\r\n")
            if not line:
                continue
            columns = line.split("\t")
            if len(columns) != 3:
                raise IngestionError(
                    f"{path}: line {lineno}: expected 3 columns, got {len(columns)}"
                )
            try:
                value = float(columns[2])
            except ValueError as exc:
                raise IngestionError(
                    f"{path}: line {lineno}: non-numeric score {columns[2]!r}"
                ) from exc
            if value != value or value in (float("inf"), float("-inf")):
                raise IngestionError(f"{path}: line {lineno}: score is not finite")
            key = (columns[0], columns[1])
            if key in scores:
                duplicates += 1
            scores[key] = value
    return scores, duplicates
