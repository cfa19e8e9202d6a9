"""Shared test utilities: a Solidity pretty-printer, an exact matching
oracle, and random graph generators for property tests."""

from __future__ import annotations

import random

from contractalign import (
    Entity,
    KnowledgeGraph,
    MatchingConfig,
    Relation,
    build_graph,
    entity_id,
    similarity,
)
from contractalign.solidity import AstNode

# ----------------------------------------------------------------------
# pretty-printer for the supported Solidity subset
# ----------------------------------------------------------------------


def pretty_expr(node: AstNode) -> str:
    """Render an expression with enough parentheses to reparse identically."""
    kind = node.node_type
    if kind == "Identifier":
        return node.attributes["name"]
    if kind == "Literal":
        return node.attributes["value"]
    if kind == "MemberAccess":
        return f"{pretty_expr(node.children[0])}.{node.attributes['member']}"
    if kind == "BinaryExpression":
        left, right = node.children
        # operands that are themselves binary get explicit parens so the
        # reparse cannot re-associate them
        lt = pretty_expr(left)
        rt = pretty_expr(right)
        if left.node_type == "BinaryExpression":
            lt = f"({lt})"
        if right.node_type == "BinaryExpression":
            rt = f"({rt})"
        return f"{lt} {node.attributes['operator']} {rt}"
    raise ValueError(f"not an expression node: {kind}")


def _pretty_param(node: AstNode) -> str:
    parts = [node.attributes["type"]]
    if "location" in node.attributes:
        parts.append(node.attributes["location"])
    if "name" in node.attributes:
        parts.append(node.attributes["name"])
    return " ".join(parts)


def _params(node: AstNode, role: str) -> str:
    return ", ".join(
        _pretty_param(c)
        for c in node.children
        if c.node_type == "Parameter" and c.attributes["role"] == role
    )


def _assignment_fragment(node: AstNode) -> str:
    target, value = node.children
    return f"{pretty_expr(target)} = {pretty_expr(value)}"


def _pretty_statement(node: AstNode, indent: str) -> list[str]:
    kind = node.node_type
    if kind == "Assignment":
        return [f"{indent}{_assignment_fragment(node)};"]
    if kind == "RequireStatement":
        cond = pretty_expr(node.children[0])
        return [f'{indent}require({cond}, "{node.attributes["message"]}");']
    if kind == "EmitStatement":
        args = ", ".join(pretty_expr(c) for c in node.children)
        return [f"{indent}emit {node.attributes['name']}({args});"]
    if kind == "ReturnStatement":
        if not node.children:
            return [f"{indent}return;"]
        if len(node.children) == 1:
            return [f"{indent}return {pretty_expr(node.children[0])};"]
        args = ", ".join(pretty_expr(c) for c in node.children)
        return [f"{indent}return ({args});"]
    if kind == "IfStatement":
        cond = pretty_expr(node.children[0])
        lines = [f"{indent}if ({cond}) {{"]
        lines += _pretty_block_body(node.children[1], indent + "    ")
        if len(node.children) == 3:
            lines.append(f"{indent}}} else {{")
            lines += _pretty_block_body(node.children[2], indent + "    ")
        lines.append(f"{indent}}}")
        return lines
    if kind == "WhileStatement":
        cond = pretty_expr(node.children[0])
        lines = [f"{indent}while ({cond}) {{"]
        lines += _pretty_block_body(node.children[1], indent + "    ")
        lines.append(f"{indent}}}")
        return lines
    if kind == "ForStatement":
        init, cond, post, body = node.children
        head = f"{_assignment_fragment(init)}; {pretty_expr(cond)}; {_assignment_fragment(post)}"
        lines = [f"{indent}for ({head}) {{"]
        lines += _pretty_block_body(body, indent + "    ")
        lines.append(f"{indent}}}")
        return lines
    raise ValueError(f"not a statement node: {kind}")


def _pretty_block_body(block: AstNode, indent: str) -> list[str]:
    lines: list[str] = []
    for child in block.children:
        lines += _pretty_statement(child, indent)
    return lines


def _pretty_contract_part(node: AstNode, indent: str) -> list[str]:
    kind = node.node_type
    if kind == "StateVariableDeclaration":
        type_name = node.children[0].attributes["type"]
        return [f"{indent}{type_name} {node.attributes['visibility']} {node.attributes['name']};"]
    if kind == "EventDefinition":
        return [f"{indent}event {node.attributes['name']}({_params(node, 'input')});"]
    if kind == "ConstructorDefinition":
        lines = [f"{indent}constructor({_params(node, 'input')}) {{"]
        lines += _pretty_block_body(node.children[-1], indent + "    ")
        lines.append(f"{indent}}}")
        return lines
    if kind == "FunctionDefinition":
        head = f"{indent}function {node.attributes['name']}({_params(node, 'input')})"
        head += f" {node.attributes['visibility']}"
        if node.attributes["mutability"] != "nonpayable":
            head += f" {node.attributes['mutability']}"
        returns = _params(node, "return")
        if returns:
            head += f" returns ({returns})"
        lines = [head + " {"]
        lines += _pretty_block_body(node.children[-1], indent + "    ")
        lines.append(f"{indent}}}")
        return lines
    raise ValueError(f"not a contract part: {kind}")


def pretty(root: AstNode) -> str:
    """Print a SourceUnit back to compilable text for the supported subset."""
    assert root.node_type == "SourceUnit"
    lines: list[str] = []
    for child in root.children:
        if child.node_type == "PragmaDirective":
            lines.append(f"pragma solidity {child.attributes['constraint']};")
        else:
            lines.append(f"contract {child.attributes['name']} {{")
            for part in child.children:
                lines += _pretty_contract_part(part, "    ")
            lines.append("}")
    return "\n".join(lines) + "\n"


def strip_spans(node: AstNode):
    """Structural view of an AST without source positions."""
    return (
        node.node_type,
        tuple(sorted(node.attributes.items())),
        tuple(strip_spans(c) for c in node.children),
    )


# ----------------------------------------------------------------------
# exact matching oracle
# ----------------------------------------------------------------------


def max_weight_score(e_nodes, s_nodes, matching: MatchingConfig) -> float:
    """Exact maximum total score over all one-to-one entity assignments.

    Exhaustive depth-first search over injections, pruned only when the
    optimistic bound (sum of remaining per-row maxima) cannot beat the
    incumbent, so the result stays exact.  Pairs below tau contribute
    nothing, mirroring the threshold applied by the greedy matcher.
    """
    weights = []
    for e in e_nodes:
        row = []
        for s in s_nodes:
            score = similarity(e, s, matching)
            row.append(score if score >= matching.tau else 0.0)
        weights.append(row)
    # rows with no viable candidate never affect the optimum
    weights = [row for row in weights if any(row)]
    weights.sort(key=lambda row: -max(row, default=0.0))
    suffix_max = [0.0] * (len(weights) + 1)
    for i in range(len(weights) - 1, -1, -1):
        suffix_max[i] = suffix_max[i + 1] + max(weights[i], default=0.0)

    best = 0.0

    def search(i: int, used: int, total: float) -> None:
        nonlocal best
        if total > best:
            best = total
        if i == len(weights) or total + suffix_max[i] <= best:
            return
        search(i + 1, used, total)  # leave row i unmatched
        for j, w in enumerate(weights[i]):
            if w > 0.0 and not used & (1 << j):
                search(i + 1, used | (1 << j), total + w)

    search(0, 0, 0.0)
    return best


def greedy_total_score(match_set) -> float:
    return sum(pair.score for pair in match_set.pairs)


# ----------------------------------------------------------------------
# random graphs
# ----------------------------------------------------------------------

_WORDS = (
    "rent", "deposit", "tenant", "landlord", "property", "utility",
    "notice", "term", "fee", "owner", "period", "balance",
)
_E_KINDS = ("party", "person-name", "monetary-amount", "date", "property-address", "clause-term")
_S_KINDS = ("code-contract", "code-variable", "code-function", "code-event", "code-role")
_PREDICATES = ("pays", "keeps", "sends", "holds", "uses")


def random_graph(rng: random.Random, side: str, max_nodes: int = 8) -> KnowledgeGraph:
    kinds = _E_KINDS if side == "econtract" else _S_KINDS
    count = rng.randint(0, max_nodes)
    by_id: dict[str, Entity] = {}
    for _ in range(count):
        label = " ".join(rng.sample(_WORDS, rng.randint(1, 2)))
        kind = rng.choice(kinds)
        node = Entity(entity_id(side, kind, label), label, kind)
        by_id.setdefault(node.id, node)
    nodes = list(by_id.values())
    edges = []
    if len(nodes) >= 2:
        for _ in range(rng.randint(0, len(nodes))):
            source, target = rng.sample(nodes, 2)
            edges.append(Relation(source.id, rng.choice(_PREDICATES), target.id))
    return build_graph(side, nodes, edges)


def random_graph_pair(rng: random.Random, max_nodes: int = 8):
    return (
        random_graph(rng, "econtract", max_nodes),
        random_graph(rng, "smartcontract", max_nodes),
    )


def flip_side(graph: KnowledgeGraph) -> KnowledgeGraph:
    """Copy a graph onto the opposite side, rewriting node ids to match."""
    other = "smartcontract" if graph.side == "econtract" else "econtract"
    mapping = {}
    nodes = []
    for node in graph.nodes:
        new_id = entity_id(other, node.kind, node.label)
        mapping[node.id] = new_id
        nodes.append(Entity(new_id, node.label, node.kind, dict(node.attributes)))
    edges = [
        Relation(mapping[edge.source], edge.predicate, mapping[edge.target])
        for edge in graph.edges
    ]
    return build_graph(other, nodes, edges)
