"""E-contract text preprocessing and rule-based entity/relation extraction.

The unit of structure is the clause: a `Header: body` line whose header is a
short run of capitalized words.  Everything else folds into the clause above
it.  Extraction is pattern- and lexicon-driven; no statistical NLP.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass

from .config import Lexicons
from .errors import EmptyDocument, SchemaViolation, UnknownEntityReference
from .kg import Entity, Provenance, Relation, entity_id, slugify

MODALS = ("shall", "agrees to", "is responsible for", "may")

_BRACKETED = re.compile(r"\[([^\]\n]*)\]")
_PARENTHETICAL = re.compile(r"\([^()\n]*\)")
_HEADER_WORD = re.compile(r"[A-Z][A-Za-z]*")
# lowercase words allowed inside a header without counting as capitalized
_HEADER_CONNECTORS = frozenset({"of", "and", "the", "to", "in", "on", "for"})

_DATE = re.compile(r"\b\d{2}/\d{2}/\d{4}\b")
_ISO_AMOUNT = re.compile(r"\b[A-Z]{3}\s+\d+\b")
_LEADING_NAME = re.compile(r"^([A-Z][A-Za-z]*(?:\s+[A-Z][A-Za-z]*)*)")
_SENTENCE_SPLIT = re.compile(r"(?<=[.!?])\s+")


@dataclass(frozen=True)
class EContractDocument:
    raw_text: str
    source_name: str = "<string>"


@dataclass(frozen=True)
class Clause:
    header: str
    body: str
    index: int


@dataclass(frozen=True)
class PreprocessedText:
    clauses: tuple[Clause, ...]
    token_count: int


# ----------------------------------------------------------------------
# preprocessing
# ----------------------------------------------------------------------


def _clean_line(line: str) -> str:
    line = _BRACKETED.sub(r"\1", line)
    line = _PARENTHETICAL.sub(" ", line)
    line = line.replace('"', "")
    line = "".join(ch if ch.isprintable() else " " for ch in line)
    return " ".join(line.split())


def _split_header(line: str) -> tuple[str, str] | None:
    head, sep, body = line.partition(":")
    if not sep:
        return None
    header = head.strip()
    words = header.split()
    if not 1 <= len(words) <= 4:
        return None
    if not _HEADER_WORD.fullmatch(words[0]):
        return None
    for word in words[1:]:
        if word not in _HEADER_CONNECTORS and not _HEADER_WORD.fullmatch(word):
            return None
    return header, body.strip()


def preprocess(doc: EContractDocument, lexicons: Lexicons | None = None) -> PreprocessedText:
    """Normalize the text and segment it into clauses."""
    lex = lexicons or Lexicons()
    noise = {h.lower() for h in lex.noise_headers}
    text = doc.raw_text.replace("\r\n", "\n").replace("\r", "\n").replace("\t", " ")

    headers: list[str] = []
    bodies: list[list[str]] = []
    for raw_line in text.split("\n"):
        line = _clean_line(raw_line)
        if not line:
            continue
        split = _split_header(line)
        if split is not None and split[0].lower() not in noise:
            headers.append(split[0])
            bodies.append([split[1]] if split[1] else [])
        elif headers:
            bodies[-1].append(line)
        else:
            headers.append("Preamble")
            bodies.append([line])
    if not headers:
        raise EmptyDocument(f"no clauses found in {doc.source_name}")

    clauses = tuple(
        Clause(header, " ".join(parts), index)
        for index, (header, parts) in enumerate(zip(headers, bodies))
    )
    token_count = sum(len(c.header.split()) + len(c.body.split()) for c in clauses)
    return PreprocessedText(clauses, token_count)


def render_clauses(pre: PreprocessedText) -> str:
    """Inverse-ish of preprocess: one `Header: body` line per clause."""
    return "\n".join(f"{c.header}: {c.body}".rstrip() for c in pre.clauses) + "\n"


def clauses_to_json(pre: PreprocessedText) -> str:
    doc = {
        "schema_version": "1",
        "clauses": [
            {"header": c.header, "body": c.body, "index": c.index} for c in pre.clauses
        ],
        "token_count": pre.token_count,
    }
    return json.dumps(doc, indent=2, ensure_ascii=True) + "\n"


def clauses_from_json(doc: str | dict) -> PreprocessedText:
    if isinstance(doc, str):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as exc:
            raise SchemaViolation(f"not valid JSON: {exc}", "$") from exc
    if not isinstance(doc, dict):
        raise SchemaViolation("document must be an object", "$")
    if doc.get("schema_version") != "1":
        raise SchemaViolation("schema_version must be '1'", "$.schema_version")
    if not isinstance(doc.get("clauses"), list):
        raise SchemaViolation("clauses must be a list", "$.clauses")
    clauses = []
    for i, raw in enumerate(doc["clauses"]):
        where = f"$.clauses[{i}]"
        if not isinstance(raw, dict):
            raise SchemaViolation("clause must be an object", where)
        header, body, index = raw.get("header"), raw.get("body"), raw.get("index")
        if not isinstance(header, str) or not header:
            raise SchemaViolation("header must be a non-empty string", f"{where}.header")
        if not isinstance(body, str):
            raise SchemaViolation("body must be a string", f"{where}.body")
        if index != i:
            raise SchemaViolation(f"index must be {i}", f"{where}.index")
        clauses.append(Clause(header, body, index))
    token_count = doc.get("token_count")
    if not isinstance(token_count, int) or token_count < 0:
        raise SchemaViolation("token_count must be a non-negative integer", "$.token_count")
    return PreprocessedText(tuple(clauses), token_count)


# ----------------------------------------------------------------------
# entity extraction
# ----------------------------------------------------------------------


def _word_pattern(words: tuple[str, ...]) -> re.Pattern[str]:
    alternation = "|".join(re.escape(w) for w in sorted(words, key=len, reverse=True))
    return re.compile(rf"\b(?:{alternation})\b", re.IGNORECASE)


def _scan_body(clause: Clause, lex: Lexicons) -> list[tuple[str, str, int]]:
    """(kind, surface label, position) matches inside one clause body."""
    found: list[tuple[str, str, int]] = []
    body = clause.body
    for match in _word_pattern(lex.party).finditer(body):
        found.append(("party", match.group(0), match.start()))
    for match in _ISO_AMOUNT.finditer(body):
        found.append(("monetary-amount", match.group(0), match.start()))
    word_amount = re.compile(
        rf"\b\d+\s+(?:{'|'.join(re.escape(w) for w in lex.currency_words)})\b", re.IGNORECASE
    )
    for match in word_amount.finditer(body):
        found.append(("monetary-amount", match.group(0), match.start()))
    for match in _DATE.finditer(body):
        found.append(("date", match.group(0), match.start()))
    if clause.header.lower() in {h.lower() for h in lex.party}:
        name = _LEADING_NAME.match(body)
        if name:
            found.append(("person-name", name.group(1), 0))
    if clause.header.lower() in {h.lower() for h in lex.address_headers} and body:
        found.append(("property-address", body, 0))
    return found


def extract_entities(pre: PreprocessedText, lexicons: Lexicons | None = None) -> list[Entity]:
    """Clause terms plus lexicon/pattern hits, deduplicated by (kind, label)."""
    lex = lexicons or Lexicons()
    entities: list[Entity] = []
    seen: set[tuple[str, str]] = set()

    def emit(kind: str, label: str, clause_index: int) -> None:
        key = (kind, slugify(label))
        if key in seen:
            return
        seen.add(key)
        entities.append(
            Entity(
                entity_id("econtract", kind, label),
                label,
                kind,
                {},
                Provenance("econtract", f"clause {clause_index}"),
            )
        )

    for clause in pre.clauses:
        emit("clause-term", clause.header, clause.index)
    scans = {clause.index: _scan_body(clause, lex) for clause in pre.clauses}
    for kind in ("party", "person-name", "monetary-amount", "date", "property-address"):
        for clause in pre.clauses:
            for found_kind, label, _ in scans[clause.index]:
                if found_kind == kind:
                    emit(kind, label, clause.index)
    return entities


# ----------------------------------------------------------------------
# relation extraction
# ----------------------------------------------------------------------


def _verb_lemmas(verbs: tuple[str, ...]) -> dict[str, str]:
    """Map inflected forms back to the lexicon lemma."""
    table: dict[str, str] = {}
    for verb in verbs:
        forms = {verb, verb + "s", verb + "es", verb + "ed", verb + "ing"}
        if verb.endswith("e"):
            forms.add(verb[:-1] + "ing")
            forms.add(verb + "d")
        for form in forms:
            table.setdefault(form, verb)
    return table


def extract_relations(
    pre: PreprocessedText,
    entities: list[Entity],
    lexicons: Lexicons | None = None,
) -> list[Relation]:
    """Clause containment ("mentions") plus modal-verb obligations."""
    lex = lexicons or Lexicons()
    by_key = {(e.kind, slugify(e.label)): e.id for e in entities}

    def lookup(kind: str, label: str) -> str:
        key = (kind, slugify(label))
        if key not in by_key:
            raise UnknownEntityReference(f"no {kind} entity for label {label!r}")
        return by_key[key]

    relations: list[Relation] = []
    seen: set[tuple[str, str, str]] = set()

    def emit(source: str, predicate: str, target: str, clause_index: int) -> None:
        triple = (source, predicate, target)
        if triple in seen or source == target:
            return
        seen.add(triple)
        relations.append(Relation(source, predicate, target, Provenance("econtract", f"clause {clause_index}")))

    for clause in pre.clauses:
        clause_id = lookup("clause-term", clause.header)
        for kind, label, _ in _scan_body(clause, lex):
            emit(clause_id, "mentions", lookup(kind, label), clause.index)

    party_pattern = "|".join(re.escape(w) for w in sorted(lex.party, key=len, reverse=True))
    modal_pattern = "|".join(re.escape(m) for m in MODALS)
    obligation = re.compile(
        rf"\b({party_pattern})\s+(?:{modal_pattern})\s+([a-z]+)\b", re.IGNORECASE
    )
    lemmas = _verb_lemmas(lex.verbs)

    for clause in pre.clauses:
        for sentence in _SENTENCE_SPLIT.split(clause.body):
            hit = obligation.search(sentence)
            if hit is None:
                continue
            lemma = lemmas.get(hit.group(2).lower())
            if lemma is None:
                continue
            subject_id = lookup("party", hit.group(1))
            candidates = [
                (position, kind, label)
                for kind, label, position in _scan_body(Clause(clause.header, sentence, clause.index), lex)
                if kind in ("party", "monetary-amount", "date") and position >= hit.end(2)
            ]
            for position, kind, label in sorted(candidates):
                object_id = lookup(kind, label)
                if object_id != subject_id:
                    emit(subject_id, lemma, object_id, clause.index)
                    break
    return relations
