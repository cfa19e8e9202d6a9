"""Knowledge graph types, construction, and canonical serialization.

Graphs are immutable once built: nodes sorted by id, edges sorted by
(source, predicate, target), so every export is byte-deterministic.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable

from .describe import SemanticStructure
from .errors import DanglingEdge, SchemaViolation
from .solidity.nodes import AstNode

GRAPH_SCHEMA_VERSION = "1"

SIDES = ("econtract", "smartcontract")

# DOT rendering legend; unknown kinds fall back to ellipse
KIND_SHAPES = {
    "party": "house",
    "person-name": "ellipse",
    "monetary-amount": "diamond",
    "date": "note",
    "property-address": "box",
    "clause-term": "folder",
    "code-contract": "box3d",
    "code-variable": "box",
    "code-function": "component",
    "code-event": "note",
    "code-role": "house",
}


@dataclass(frozen=True)
class Provenance:
    side: str
    location: str


@dataclass(frozen=True)
class Entity:
    id: str
    label: str
    kind: str
    attributes: dict[str, str] = field(default_factory=dict)
    provenance: Provenance | None = field(default=None, compare=False)


@dataclass(frozen=True)
class Relation:
    source: str
    predicate: str
    target: str
    provenance: Provenance | None = field(default=None, compare=False)

    @property
    def triple(self) -> tuple[str, str, str]:
        return (self.source, self.predicate, self.target)


@dataclass(frozen=True)
class KnowledgeGraph:
    side: str
    nodes: tuple[Entity, ...]
    edges: tuple[Relation, ...]

    def node_index(self) -> dict[str, Entity]:
        return {node.id: node for node in self.nodes}


def slugify(label: str) -> str:
    """Lowercased label with whitespace collapsed; the id-forming normal form."""
    return " ".join(label.lower().split())


def entity_id(side: str, kind: str, label: str) -> str:
    return f"{side}:{kind}:{slugify(label)}"


def build_graph(side: str, entities: Iterable[Entity], relations: Iterable[Relation]) -> KnowledgeGraph:
    """Assemble a canonical graph; duplicate triples collapse, self-loops drop."""
    if side not in SIDES:
        raise ValueError(f"side must be one of {SIDES}, got {side!r}")
    by_id: dict[str, Entity] = {}
    for entity in entities:
        existing = by_id.get(entity.id)
        if existing is None:
            by_id[entity.id] = entity
        elif existing != entity:
            raise ValueError(f"conflicting entities share id {entity.id!r}")
    seen: set[tuple[str, str, str]] = set()
    edges = []
    for relation in relations:
        for endpoint in (relation.source, relation.target):
            if endpoint not in by_id:
                raise DanglingEdge(
                    f"edge ({relation.source!r}, {relation.predicate!r}, {relation.target!r}) "
                    f"references missing node {endpoint!r}"
                )
        if relation.source == relation.target:
            continue
        if relation.triple in seen:
            continue
        seen.add(relation.triple)
        edges.append(relation)
    nodes = tuple(sorted(by_id.values(), key=lambda n: n.id))
    edges_sorted = tuple(sorted(edges, key=lambda e: e.triple))
    return KnowledgeGraph(side, nodes, edges_sorted)


# ----------------------------------------------------------------------
# smart-contract side (semantic structure -> graph)
# ----------------------------------------------------------------------


def _role_comparisons(condition: AstNode) -> list[str]:
    """Identifiers equality-compared against msg.sender, in source order."""
    found: list[str] = []

    def is_msg_sender(node: AstNode) -> bool:
        return (
            node.node_type == "MemberAccess"
            and node.attributes.get("member") == "sender"
            and node.children[0].node_type == "Identifier"
            and node.children[0].attributes.get("name") == "msg"
        )

    def visit(node: AstNode) -> None:
        if node.node_type == "BinaryExpression" and node.attributes.get("operator") == "==":
            left, right = node.children
            if is_msg_sender(left) and right.node_type == "Identifier":
                found.append(right.attributes["name"])
            elif is_msg_sender(right) and left.node_type == "Identifier":
                found.append(left.attributes["name"])
        for child in node.children:
            visit(child)

    visit(condition)
    return found


def _statements(body: AstNode) -> Iterable[AstNode]:
    """All statements under a block, including nested ones."""
    for child in body.children:
        yield child
        if child.children:
            yield from _statements(child)


def graph_from_semantic(structure: SemanticStructure, root: AstNode) -> KnowledgeGraph:
    """Build the smart-contract graph for the first contract in the source."""
    side = "smartcontract"
    descriptions = {item.node_path: item.description for item in structure.items}

    contract = None
    contract_path: tuple[int, ...] = ()
    for path, node in root.walk():
        if node.node_type == "ContractDefinition":
            contract, contract_path = node, path
            break
    if contract is None:
        return build_graph(side, (), ())

    def located(node: AstNode) -> Provenance:
        return Provenance(side, f"line {node.span.start[0]}")

    def make(kind: str, label: str, node: AstNode, path: tuple[int, ...] | None = None) -> Entity:
        attributes = {}
        if path is not None and path in descriptions:
            attributes["description"] = descriptions[path]
        return Entity(entity_id(side, kind, label), label, kind, attributes, located(node))

    entities: list[Entity] = []
    relations: list[Relation] = []
    contract_entity = make("code-contract", contract.attributes["name"], contract, contract_path)
    entities.append(contract_entity)

    variable_ids: dict[str, str] = {}
    event_ids: dict[str, str] = {}
    members: list[tuple[tuple[int, ...], AstNode]] = [
        (contract_path + (i,), child) for i, child in enumerate(contract.children)
    ]

    for path, member in members:
        if member.node_type == "StateVariableDeclaration":
            entity = make("code-variable", member.attributes["name"], member, path)
            entities.append(entity)
            variable_ids[member.attributes["name"]] = entity.id
            relations.append(Relation(contract_entity.id, "declares", entity.id, located(member)))
        elif member.node_type == "EventDefinition":
            entity = make("code-event", member.attributes["name"], member, path)
            entities.append(entity)
            event_ids[member.attributes["name"]] = entity.id
            relations.append(Relation(contract_entity.id, "defines", entity.id, located(member)))

    role_ids: dict[str, str] = {}

    for path, member in members:
        if member.node_type not in ("FunctionDefinition", "ConstructorDefinition"):
            continue
        is_constructor = member.node_type == "ConstructorDefinition"
        label = "constructor" if is_constructor else member.attributes["name"]
        fn_entity = make("code-function", label, member, path)
        entities.append(fn_entity)
        relations.append(Relation(contract_entity.id, "defines", fn_entity.id, located(member)))

        body = member.children[-1]
        for stmt in _statements(body):
            if stmt.node_type == "RequireStatement":
                roles = _role_comparisons(stmt.children[0])
                for name in roles:
                    if name not in role_ids:
                        role = make("code-role", name, stmt)
                        entities.append(role)
                        role_ids[name] = role.id
                if roles:
                    relations.append(Relation(fn_entity.id, "guards", role_ids[roles[0]], located(stmt)))
            elif stmt.node_type == "EmitStatement":
                name = stmt.attributes["name"]
                if name not in event_ids:
                    event = make("code-event", name, stmt)
                    entities.append(event)
                    event_ids[name] = event.id
                relations.append(Relation(fn_entity.id, "emits", event_ids[name], located(stmt)))
            elif stmt.node_type == "Assignment":
                target = stmt.children[0]
                name = target.attributes.get("name", "")
                if name in variable_ids:
                    predicate = "initializes" if is_constructor else "writes"
                    relations.append(Relation(fn_entity.id, predicate, variable_ids[name], located(stmt)))

    return build_graph(side, entities, relations)


# ----------------------------------------------------------------------
# serialization
# ----------------------------------------------------------------------


def export_json(graph: KnowledgeGraph) -> str:
    doc = {
        "schema_version": GRAPH_SCHEMA_VERSION,
        "side": graph.side,
        "nodes": [
            {
                "id": node.id,
                "label": node.label,
                "kind": node.kind,
                "attributes": {key: node.attributes[key] for key in sorted(node.attributes)},
            }
            for node in graph.nodes
        ],
        "edges": [
            {"source": edge.source, "predicate": edge.predicate, "target": edge.target}
            for edge in graph.edges
        ],
    }
    return json.dumps(doc, indent=2, ensure_ascii=True) + "\n"


def _expect(condition: bool, message: str, path: str) -> None:
    if not condition:
        raise SchemaViolation(message, path)


def import_json(doc: str | dict) -> KnowledgeGraph:
    if isinstance(doc, str):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as exc:
            raise SchemaViolation(f"not valid JSON: {exc}", "$") from exc
    _expect(isinstance(doc, dict), "document must be an object", "$")
    _expect(doc.get("schema_version") == GRAPH_SCHEMA_VERSION,
            f"schema_version must be {GRAPH_SCHEMA_VERSION!r}", "$.schema_version")
    side = doc.get("side")
    _expect(side in SIDES, f"side must be one of {SIDES}", "$.side")
    _expect(isinstance(doc.get("nodes"), list), "nodes must be a list", "$.nodes")
    _expect(isinstance(doc.get("edges"), list), "edges must be a list", "$.edges")

    nodes = []
    seen_ids = set()
    for i, raw in enumerate(doc["nodes"]):
        where = f"$.nodes[{i}]"
        _expect(isinstance(raw, dict), "node must be an object", where)
        for key in ("id", "label", "kind"):
            _expect(isinstance(raw.get(key), str) and raw[key] != "",
                    f"node {key} must be a non-empty string", f"{where}.{key}")
        attributes = raw.get("attributes", {})
        _expect(isinstance(attributes, dict), "attributes must be an object", f"{where}.attributes")
        for key, value in attributes.items():
            _expect(isinstance(value, str), f"attribute {key!r} must be a string", f"{where}.attributes.{key}")
        _expect(raw["id"] not in seen_ids, f"duplicate node id {raw['id']!r}", where)
        seen_ids.add(raw["id"])
        nodes.append(Entity(raw["id"], raw["label"], raw["kind"], dict(attributes)))

    edges = []
    for i, raw in enumerate(doc["edges"]):
        where = f"$.edges[{i}]"
        _expect(isinstance(raw, dict), "edge must be an object", where)
        for key in ("source", "predicate", "target"):
            _expect(isinstance(raw.get(key), str) and raw[key] != "",
                    f"edge {key} must be a non-empty string", f"{where}.{key}")
        _expect(raw["source"] in seen_ids, f"edge source {raw['source']!r} not in nodes", f"{where}.source")
        _expect(raw["target"] in seen_ids, f"edge target {raw['target']!r} not in nodes", f"{where}.target")
        _expect(raw["source"] != raw["target"], "self-loop edges are not allowed", where)
        edges.append(Relation(raw["source"], raw["predicate"], raw["target"]))

    return build_graph(side, nodes, edges)


def _dot_escape(text: str) -> str:
    return text.replace("\\", "\\\\").replace('"', '\\"')


def export_dot(graph: KnowledgeGraph) -> str:
    lines = [
        "digraph knowledge_graph {",
        "  rankdir=LR;",
        "  // shape legend: " + ", ".join(f"{kind}={shape}" for kind, shape in sorted(KIND_SHAPES.items())),
    ]
    for node in graph.nodes:
        shape = KIND_SHAPES.get(node.kind, "ellipse")
        lines.append(f'  "{_dot_escape(node.id)}" [label="{_dot_escape(node.label)}", shape={shape}];')
    for edge in graph.edges:
        lines.append(
            f'  "{_dot_escape(edge.source)}" -> "{_dot_escape(edge.target)}" '
            f'[label="{_dot_escape(edge.predicate)}"];'
        )
    lines.append("}")
    return "\n".join(lines) + "\n"
