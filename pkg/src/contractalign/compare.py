"""Cross-graph entity/relation matching and the discrepancy report.

Matching is greedy one-to-one over Jaccard token-set similarity.  The
ordering discipline (descending score, then labels, then ids) makes the
result deterministic; a brute-force oracle in the test suite bounds the
greedy loss.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass

from .config import MatchingConfig
from .kg import Entity, KnowledgeGraph, Relation, slugify

_CAMEL_BOUNDARY = re.compile(r"(?<=[a-z0-9])(?=[A-Z])|(?<=[A-Z])(?=[A-Z][a-z])")
_NON_ALNUM = re.compile(r"[^A-Za-z0-9]+")


def normalize_label(label: str, stop_tokens: tuple[str, ...] = MatchingConfig().stop_tokens) -> frozenset[str]:
    """Token set: split whitespace/punctuation/underscore/camelCase, lowercase, drop stops."""
    spaced = _CAMEL_BOUNDARY.sub(" ", label)
    tokens = {t.lower() for t in _NON_ALNUM.split(spaced) if t}
    return frozenset(tokens - set(stop_tokens))


def _jaccard(a: frozenset[str], b: frozenset[str]) -> float:
    if not a or not b:
        return 0.0
    return len(a & b) / len(a | b)


def similarity(a: Entity, b: Entity, matching: MatchingConfig | None = None) -> float:
    """Label token overlap in [0,1]; identical or alias-linked labels score 1.0.

    The equal-label short-circuit matters when a label consists entirely of
    stop tokens (e.g. "Address"): its token set is empty, so Jaccard alone
    could never even self-match it.
    """
    config = matching or MatchingConfig()
    slug_a, slug_b = slugify(a.label), slugify(b.label)
    if slug_a == slug_b or config.alias_linked(slug_a, slug_b):
        return 1.0
    return _jaccard(
        normalize_label(a.label, config.stop_tokens),
        normalize_label(b.label, config.stop_tokens),
    )


def _stem_verb(token: str) -> str:
    if token.endswith("es") and len(token) > 3:
        return token[:-2]
    if token.endswith("s") and len(token) > 2:
        return token[:-1]
    return token


def predicate_similarity(p_e: str, p_s: str, stop_tokens: tuple[str, ...]) -> float:
    """Like label similarity but with light verb stemming (pays/pay)."""
    a = frozenset(_stem_verb(t) for t in normalize_label(p_e, stop_tokens))
    b = frozenset(_stem_verb(t) for t in normalize_label(p_s, stop_tokens))
    return _jaccard(a, b)


@dataclass(frozen=True)
class MatchedPair:
    e_id: str
    s_id: str
    score: float


@dataclass(frozen=True)
class MatchSet:
    pairs: tuple[MatchedPair, ...]

    def e_ids(self) -> frozenset[str]:
        return frozenset(p.e_id for p in self.pairs)

    def s_ids(self) -> frozenset[str]:
        return frozenset(p.s_id for p in self.pairs)

    def as_mapping(self) -> dict[str, str]:
        return {p.e_id: p.s_id for p in self.pairs}

    def __len__(self) -> int:
        return len(self.pairs)


def _greedy(candidates: list[tuple[float, str, str, str, str]], threshold: float) -> tuple[MatchedPair, ...]:
    """candidates: (score, e_sort_label, s_sort_label, e_id, s_id)."""
    ordered = sorted(candidates, key=lambda c: (-c[0], c[1], c[2], c[3], c[4]))
    used_e: set[str] = set()
    used_s: set[str] = set()
    accepted = []
    for score, _, _, e_id, s_id in ordered:
        if score < threshold or e_id in used_e or s_id in used_s:
            continue
        used_e.add(e_id)
        used_s.add(s_id)
        accepted.append(MatchedPair(e_id, s_id, score))
    return tuple(sorted(accepted, key=lambda p: (p.e_id, p.s_id)))


def match_entities(
    v_e: tuple[Entity, ...],
    v_s: tuple[Entity, ...],
    matching: MatchingConfig | None = None,
) -> MatchSet:
    config = matching or MatchingConfig()
    candidates = []
    for e in v_e:
        for s in v_s:
            score = similarity(e, s, config)
            if score > 0.0:
                candidates.append((score, e.label, s.label, e.id, s.id))
    return MatchSet(_greedy(candidates, config.tau))


def relation_key(relation: Relation) -> str:
    return f"{relation.source} -[{relation.predicate}]-> {relation.target}"


def match_relations(
    e_e: tuple[Relation, ...],
    e_s: tuple[Relation, ...],
    matched_entities: MatchSet,
    matching: MatchingConfig | None = None,
) -> MatchSet:
    config = matching or MatchingConfig()
    mapped = matched_entities.as_mapping()
    candidates = []
    for rel_e in e_e:
        for rel_s in e_s:
            if mapped.get(rel_e.source) != rel_s.source:
                continue
            if mapped.get(rel_e.target) != rel_s.target:
                continue
            score = predicate_similarity(rel_e.predicate, rel_s.predicate, config.stop_tokens)
            if score > 0.0:
                key_e, key_s = relation_key(rel_e), relation_key(rel_s)
                candidates.append((score, key_e, key_s, key_e, key_s))
    return MatchSet(_greedy(candidates, config.tau_p))


@dataclass(frozen=True)
class DiscrepancyReport:
    matched_entities: MatchSet
    matched_relations: MatchSet
    missing_in_smartcontract: tuple[Entity, ...]
    missing_in_econtract: tuple[Entity, ...]
    unmatched_relations_e: tuple[Relation, ...]
    unmatched_relations_s: tuple[Relation, ...]
    aligned: bool


def compute_discrepancy(
    g_e: KnowledgeGraph,
    g_s: KnowledgeGraph,
    matching: MatchingConfig | None = None,
) -> DiscrepancyReport:
    config = matching or MatchingConfig()
    matched = match_entities(g_e.nodes, g_s.nodes, config)
    matched_rel = match_relations(g_e.edges, g_s.edges, matched, config)

    missing_e = tuple(n for n in g_e.nodes if n.id not in matched.e_ids())
    missing_s = tuple(n for n in g_s.nodes if n.id not in matched.s_ids())
    matched_rel_e = {p.e_id for p in matched_rel.pairs}
    matched_rel_s = {p.s_id for p in matched_rel.pairs}
    unmatched_e = tuple(r for r in g_e.edges if relation_key(r) not in matched_rel_e)
    unmatched_s = tuple(r for r in g_s.edges if relation_key(r) not in matched_rel_s)

    obligation = set(config.obligation_kinds)
    aligned = not any(n.kind in obligation for n in missing_e) and not any(
        n.kind in obligation for n in missing_s
    )
    return DiscrepancyReport(
        matched_entities=matched,
        matched_relations=matched_rel,
        missing_in_smartcontract=missing_e,
        missing_in_econtract=missing_s,
        unmatched_relations_e=unmatched_e,
        unmatched_relations_s=unmatched_s,
        aligned=aligned,
    )


# ----------------------------------------------------------------------
# report rendering
# ----------------------------------------------------------------------


def report_json(report: DiscrepancyReport, matching: MatchingConfig | None = None) -> str:
    config = matching or MatchingConfig()
    doc = {
        "schema_version": "1",
        "aligned": report.aligned,
        "matched_entities": [
            {"econtract": p.e_id, "smartcontract": p.s_id, "score": round(p.score, 6)}
            for p in report.matched_entities.pairs
        ],
        "matched_relations": [
            {"econtract": p.e_id, "smartcontract": p.s_id, "score": round(p.score, 6)}
            for p in report.matched_relations.pairs
        ],
        "missing_in_smartcontract": [
            {"id": n.id, "label": n.label, "kind": n.kind} for n in report.missing_in_smartcontract
        ],
        "missing_in_econtract": [
            {"id": n.id, "label": n.label, "kind": n.kind} for n in report.missing_in_econtract
        ],
        "unmatched_relations_econtract": [
            {"source": r.source, "predicate": r.predicate, "target": r.target}
            for r in report.unmatched_relations_e
        ],
        "unmatched_relations_smartcontract": [
            {"source": r.source, "predicate": r.predicate, "target": r.target}
            for r in report.unmatched_relations_s
        ],
        "config": {
            "tau": config.tau,
            "tau_p": config.tau_p,
            "stop_tokens": list(config.stop_tokens),
            "obligation_kinds": list(config.obligation_kinds),
            "aliases": {key: list(values) for key, values in sorted(config.aliases.items())},
        },
    }
    return json.dumps(doc, indent=2, ensure_ascii=True) + "\n"


def render_table(report: DiscrepancyReport, g_e: KnowledgeGraph, g_s: KnowledgeGraph) -> str:
    labels_e = {n.id: n.label for n in g_e.nodes}
    labels_s = {n.id: n.label for n in g_s.nodes}
    width = 30
    lines = [
        f"{'e-entity':<{width}} | {'s-entity':<{width}} | score",
        f"{'-' * width}-+-{'-' * width}-+------",
    ]
    for pair in report.matched_entities.pairs:
        left = labels_e.get(pair.e_id, pair.e_id)
        right = labels_s.get(pair.s_id, pair.s_id)
        lines.append(f"{left:<{width}} | {right:<{width}} | {pair.score:5.2f}")
    lines.append("-" * (width * 2 + 11))
    lines.append("missing in smart contract:")
    for node in report.missing_in_smartcontract:
        lines.append(f"  - {node.label} ({node.kind})")
    if not report.missing_in_smartcontract:
        lines.append("  (none)")
    lines.append("missing in e-contract:")
    for node in report.missing_in_econtract:
        lines.append(f"  - {node.label} ({node.kind})")
    if not report.missing_in_econtract:
        lines.append("  (none)")
    lines.append(f"matched relations: {len(report.matched_relations)}")
    lines.append(f"aligned: {'yes' if report.aligned else 'no'}")
    return "\n".join(lines) + "\n"
