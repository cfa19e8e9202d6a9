"""Knowledge-graph construction, canonical JSON, and DOT export."""

import json
from collections import Counter

import pytest

from contractalign import (
    DanglingEdge,
    Entity,
    KIND_SHAPES,
    Relation,
    SchemaViolation,
    build_graph,
    describe_contract,
    entity_id,
    export_dot,
    export_json,
    graph_from_semantic,
    import_json,
    slugify,
)
from contractalign.solidity import DIALECT_V08, SoliditySource, parse

from helpers import flip_side


def _entity(side: str, kind: str, label: str) -> Entity:
    return Entity(entity_id(side, kind, label), label, kind)


def test_slugify_collapses_whitespace_and_case():
    assert slugify("  Security   Deposit ") == "security deposit"
    assert slugify("GBP 5000") == "gbp 5000"


def test_entity_id_scheme():
    assert entity_id("econtract", "party", "Landlord") == "econtract:party:landlord"


# ----------------------------------------------------------------------
# build_graph
# ----------------------------------------------------------------------


def test_nodes_and_edges_come_out_sorted():
    b = _entity("econtract", "party", "bravo")
    a = _entity("econtract", "party", "alpha")
    graph = build_graph(
        "econtract",
        [b, a],
        [Relation(b.id, "pays", a.id), Relation(a.id, "pays", b.id)],
    )
    assert [n.id for n in graph.nodes] == sorted(n.id for n in graph.nodes)
    assert [e.triple for e in graph.edges] == sorted(e.triple for e in graph.edges)


def test_duplicate_entities_collapse():
    a1 = _entity("econtract", "party", "alpha")
    a2 = _entity("econtract", "party", "alpha")
    graph = build_graph("econtract", [a1, a2], [])
    assert len(graph.nodes) == 1


def test_conflicting_entities_same_id_rejected():
    a1 = _entity("econtract", "party", "alpha")
    a2 = Entity(a1.id, "alpha", "party", {"note": "different"})
    with pytest.raises(ValueError):
        build_graph("econtract", [a1, a2], [])


def test_dangling_edge_rejected():
    a = _entity("econtract", "party", "alpha")
    with pytest.raises(DanglingEdge):
        build_graph("econtract", [a], [Relation(a.id, "pays", "econtract:party:ghost")])


def test_self_loops_are_dropped():
    a, b = _entity("econtract", "party", "alpha"), _entity("econtract", "party", "beta")
    graph = build_graph("econtract", [a, b], [Relation(a.id, "pays", a.id), Relation(a.id, "pays", b.id)])
    assert [e.triple for e in graph.edges] == [(a.id, "pays", b.id)]


def test_duplicate_triples_collapse():
    a, b = _entity("econtract", "party", "alpha"), _entity("econtract", "party", "beta")
    edges = [Relation(a.id, "pays", b.id), Relation(a.id, "pays", b.id)]
    graph = build_graph("econtract", [a, b], edges)
    assert len(graph.edges) == 1


def test_unknown_side_rejected():
    with pytest.raises(ValueError):
        build_graph("somewhere", [], [])


# ----------------------------------------------------------------------
# graphs from the fixture pipeline
# ----------------------------------------------------------------------


def test_econtract_graph_matches_golden(e_graph):
    golden = open("tests/fixtures/golden/rental_agreement.econtract.kg.json").read()
    assert export_json(e_graph) == golden


def test_smartcontract_graph_matches_golden(s_graph):
    golden = open("tests/fixtures/golden/rental_agreement.smartcontract.kg.json").read()
    assert export_json(s_graph) == golden


def test_smartcontract_graph_shape(s_graph):
    assert len(s_graph.nodes) == 19
    assert len(s_graph.edges) == 31
    kinds = Counter(n.kind for n in s_graph.nodes)
    assert kinds == {
        "code-contract": 1,
        "code-variable": 8,
        "code-function": 5,
        "code-event": 3,
        "code-role": 2,
    }
    predicates = Counter(e.predicate for e in s_graph.edges)
    assert predicates == {
        "declares": 8,
        "defines": 8,
        "initializes": 8,
        "emits": 3,
        "guards": 3,
        "writes": 1,
    }


def test_landlord_is_both_variable_and_role(s_graph):
    ids = {n.id for n in s_graph.nodes}
    assert "smartcontract:code-variable:landlord" in ids
    assert "smartcontract:code-role:landlord" in ids


def test_guard_edges_point_at_compared_roles(s_graph):
    guards = sorted(e.triple for e in s_graph.edges if e.predicate == "guards")
    assert guards == [
        ("smartcontract:code-function:payrent", "guards", "smartcontract:code-role:tenant"),
        ("smartcontract:code-function:paysecuritydeposit", "guards", "smartcontract:code-role:tenant"),
        ("smartcontract:code-function:terminatecontract", "guards", "smartcontract:code-role:landlord"),
    ]


def test_descriptions_ride_along_as_attributes(s_graph):
    contract = s_graph.node_index()["smartcontract:code-contract:rentalagreement"]
    assert contract.attributes["description"] == "contract 'RentalAgreement'"
    roles = [n for n in s_graph.nodes if n.kind == "code-role"]
    assert all("description" not in n.attributes for n in roles)


def test_undeclared_emitted_event_gets_a_node():
    text = (
        "pragma solidity ^0.8.0;\n"
        "contract C { constructor() { emit Ghost(1); } }"
    )
    root = parse(SoliditySource(text), DIALECT_V08)
    graph = graph_from_semantic(describe_contract(root), root)
    assert "smartcontract:code-event:ghost" in {n.id for n in graph.nodes}
    assert ("smartcontract:code-function:constructor", "emits", "smartcontract:code-event:ghost") in {
        e.triple for e in graph.edges
    }


def test_only_first_contract_feeds_the_graph():
    text = (
        "pragma solidity ^0.8.0;\n"
        "contract First { uint256 public a; }\n"
        "contract Second { uint256 public b; }"
    )
    root = parse(SoliditySource(text), DIALECT_V08)
    graph = graph_from_semantic(describe_contract(root), root)
    labels = {n.label for n in graph.nodes}
    assert "First" in labels and "a" in labels
    assert "Second" not in labels and "b" not in labels


def test_constructor_assignments_initialize_while_function_assignments_write(s_graph):
    writes = [e.triple for e in s_graph.edges if e.predicate == "writes"]
    assert writes == [
        ("smartcontract:code-function:terminatecontract", "writes", "smartcontract:code-variable:terminated"),
    ]
    inits = {e.target for e in s_graph.edges if e.predicate == "initializes"}
    assert len(inits) == 8  # every state variable is set in the constructor


def test_provenance_locations(e_graph, s_graph):
    assert all(n.provenance.location.startswith("clause ") for n in e_graph.nodes)
    assert all(n.provenance.location.startswith("line ") for n in s_graph.nodes)


# ----------------------------------------------------------------------
# JSON round trip and schema checks
# ----------------------------------------------------------------------


def test_export_import_export_is_byte_stable(e_graph, s_graph, full_graph):
    for graph in (e_graph, s_graph, full_graph):
        doc = export_json(graph)
        assert export_json(import_json(doc)) == doc


def test_import_preserves_structure(e_graph):
    loaded = import_json(export_json(e_graph))
    assert loaded.side == e_graph.side
    assert [(n.id, n.label, n.kind, n.attributes) for n in loaded.nodes] == [
        (n.id, n.label, n.kind, n.attributes) for n in e_graph.nodes
    ]
    assert [e.triple for e in loaded.edges] == [e.triple for e in e_graph.edges]


def test_export_json_is_canonical(e_graph):
    doc = json.loads(export_json(e_graph))
    assert doc["schema_version"] == "1"
    assert doc["side"] == "econtract"
    assert [n["id"] for n in doc["nodes"]] == sorted(n["id"] for n in doc["nodes"])
    assert export_json(e_graph).endswith("\n")


@pytest.mark.parametrize(
    ("mutate", "path"),
    [
        (lambda d: d.pop("schema_version"), "$.schema_version"),
        (lambda d: d.update(schema_version="9"), "$.schema_version"),
        (lambda d: d.update(side="elsewhere"), "$.side"),
        (lambda d: d["nodes"][0].update(id=""), "$.nodes[0].id"),
        (lambda d: d["nodes"][0].update(kind=7), "$.nodes[0].kind"),
        (lambda d: d["edges"][0].update(source="nope"), "$.edges[0].source"),
        (lambda d: d["edges"][0].pop("predicate"), "$.edges[0].predicate"),
    ],
)
def test_schema_violations_carry_paths(e_graph, mutate, path):
    doc = json.loads(export_json(e_graph))
    mutate(doc)
    with pytest.raises(SchemaViolation) as err:
        import_json(doc)
    assert err.value.path == path


def test_import_rejects_duplicate_ids(e_graph):
    doc = json.loads(export_json(e_graph))
    doc["nodes"].append(dict(doc["nodes"][0]))
    with pytest.raises(SchemaViolation):
        import_json(doc)


def test_import_rejects_self_loops(e_graph):
    doc = json.loads(export_json(e_graph))
    some = doc["nodes"][0]["id"]
    doc["edges"].append({"source": some, "predicate": "loops", "target": some})
    with pytest.raises(SchemaViolation):
        import_json(doc)


# ----------------------------------------------------------------------
# DOT export
# ----------------------------------------------------------------------


def test_dot_structure(e_graph):
    dot = export_dot(e_graph)
    lines = dot.splitlines()
    assert lines[0] == "digraph knowledge_graph {"
    assert lines[1] == "  rankdir=LR;"
    assert lines[2].startswith("  // shape legend: ")
    assert lines[-1] == "}"
    for kind, shape in KIND_SHAPES.items():
        assert f"{kind}={shape}" in lines[2]
    node_lines = [l for l in lines if "[label=" in l and "->" not in l]
    edge_lines = [l for l in lines if "->" in l]
    assert len(node_lines) == len(e_graph.nodes)
    assert len(edge_lines) == len(e_graph.edges)
    assert (
        '  "econtract:party:landlord" -> "econtract:party:tenant" [label="rent"];' in lines
    )


def test_dot_uses_kind_shapes(e_graph):
    dot = export_dot(e_graph)
    assert '"econtract:party:landlord" [label="Landlord", shape=house];' in dot
    assert '"econtract:monetary-amount:gbp 5000" [label="GBP 5000", shape=diamond];' in dot


def test_dot_escapes_quotes():
    label = 'say "hi"'
    node = Entity(entity_id("econtract", "clause-term", label), label, "clause-term")
    dot = export_dot(build_graph("econtract", [node], []))
    assert '\\"hi\\"' in dot


def test_dot_is_deterministic(s_graph):
    assert export_dot(s_graph) == export_dot(s_graph)


def test_flip_side_round_trip(e_graph):
    flipped = flip_side(e_graph)
    assert flipped.side == "smartcontract"
    assert flip_side(flipped).nodes == tuple(
        Entity(n.id, n.label, n.kind, dict(n.attributes)) for n in e_graph.nodes
    )
