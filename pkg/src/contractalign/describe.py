"""Render AST nodes into short natural-language descriptions.

Each semantic node type has a grammar template whose placeholders are filled
from node attributes and child fragments.  The resulting SemanticStructure is
the bridge between the parsed contract and the knowledge graph.
"""

from __future__ import annotations

import json
import re
from collections.abc import Iterable, Mapping
from dataclasses import dataclass

from .config import DEFAULT_TEMPLATES
from .errors import MissingRule
from .solidity.nodes import AstNode

# only these node types carry a sentence of their own; structural and
# expression nodes are rendered inline as fragments
DESCRIBABLE_NODE_TYPES = frozenset(DEFAULT_TEMPLATES)

_PLACEHOLDER = re.compile(r"\{([a-z][a-z-]*)\}")

_MUTABILITY_PHRASES = {
    "view": "is read-only",
    "payable": "accepts payment",
    "nonpayable": "modifies state",
}

# higher binds tighter; comparisons are non-associative
_PRECEDENCE = {"||": 1, "&&": 2, "==": 3, "!=": 3, "<": 3, "<=": 3, ">": 3, ">=": 3}


@dataclass(frozen=True)
class GrammarRule:
    node_type: str
    template: str


@dataclass(frozen=True)
class DescribedNode:
    node_path: tuple[int, ...]
    node_type: str
    description: str


@dataclass(frozen=True)
class SemanticStructure:
    contract_name: str
    items: tuple[DescribedNode, ...]


def default_rules() -> tuple[GrammarRule, ...]:
    return tuple(GrammarRule(node_type, template) for node_type, template in DEFAULT_TEMPLATES.items())


def node_type(node: AstNode) -> str:
    return node.node_type


def _as_mapping(rules: Mapping[str, str] | Iterable[GrammarRule] | None) -> Mapping[str, str]:
    if rules is None:
        return DEFAULT_TEMPLATES
    if isinstance(rules, Mapping):
        return rules
    return {rule.node_type: rule.template for rule in rules}


# ----------------------------------------------------------------------
# expression and parameter fragments
# ----------------------------------------------------------------------


def render_expression(node: AstNode) -> str:
    if node.node_type == "Identifier":
        return node.attributes["name"]
    if node.node_type == "Literal":
        return node.attributes["value"]
    if node.node_type == "MemberAccess":
        return f"{render_expression(node.children[0])}.{node.attributes['member']}"
    if node.node_type == "BinaryExpression":
        op = node.attributes["operator"]
        left, right = node.children
        return f"{_wrap(left, op)} {op} {_wrap(right, op)}"
    raise ValueError(f"cannot render {node.node_type} as an expression")


def _wrap(child: AstNode, parent_op: str) -> str:
    text = render_expression(child)
    if child.node_type != "BinaryExpression":
        return text
    child_prec = _PRECEDENCE[child.attributes["operator"]]
    parent_prec = _PRECEDENCE[parent_op]
    if child_prec < parent_prec or (child_prec == parent_prec and parent_prec == 3):
        return f"({text})"
    return text


def render_parameter(node: AstNode) -> str:
    parts = [node.attributes["type"]]
    if "location" in node.attributes:
        parts.append(node.attributes["location"])
    if "name" in node.attributes:
        parts.append(node.attributes["name"])
    return " ".join(parts)


def _parameters(node: AstNode, role: str) -> str:
    rendered = [
        render_parameter(child)
        for child in node.children
        if child.node_type == "Parameter" and child.attributes.get("role", "input") == role
    ]
    return ", ".join(rendered)


# ----------------------------------------------------------------------
# template filling
# ----------------------------------------------------------------------


def _slots(node: AstNode) -> dict[str, str]:
    kind = node.node_type
    slots = dict(node.attributes)
    if kind in ("EventDefinition", "ConstructorDefinition", "FunctionDefinition"):
        slots["params"] = _parameters(node, "input")
    if kind == "FunctionDefinition":
        slots["returns"] = _parameters(node, "return")
        slots["mutability-phrase"] = _MUTABILITY_PHRASES[node.attributes["mutability"]]
    if kind == "RequireStatement":
        slots["condition"] = render_expression(node.children[0])
    if kind in ("EmitStatement", "ReturnStatement"):
        exprs = [c for c in node.children if c.node_type != "Parameter"]
        slots["args"] = ", ".join(render_expression(c) for c in exprs)
    if kind == "Assignment":
        slots["target"] = render_expression(node.children[0])
        slots["value"] = render_expression(node.children[1])
    if kind == "IfStatement" or kind == "WhileStatement":
        slots["condition"] = render_expression(node.children[0])
    if kind == "ForStatement":
        slots["condition"] = render_expression(node.children[1])
    return slots


def apply_grammar(node: AstNode, rules: Mapping[str, str] | Iterable[GrammarRule] | None = None,
                  node_path: tuple[int, ...] = ()) -> DescribedNode:
    """Fill the node type's template; MissingRule if no template is known."""
    templates = _as_mapping(rules)
    template = templates.get(node.node_type)
    if template is None:
        raise MissingRule(f"no grammar template for node type {node.node_type!r}")
    slots = _slots(node)

    def fill(match: re.Match[str]) -> str:
        key = match.group(1)
        if key not in slots:
            raise ValueError(f"template for {node.node_type} uses unknown placeholder {key!r}")
        return slots[key]

    return DescribedNode(node_path, node.node_type, _PLACEHOLDER.sub(fill, template))


def describe_contract(root: AstNode, rules: Mapping[str, str] | Iterable[GrammarRule] | None = None) -> SemanticStructure:
    """Describe every semantic node in pre-order."""
    templates = _as_mapping(rules)
    contract_name = ""
    items = []
    for path, node in root.walk():
        if node.node_type == "ContractDefinition" and not contract_name:
            contract_name = node.attributes["name"]
        if node.node_type in DESCRIBABLE_NODE_TYPES:
            items.append(apply_grammar(node, templates, path))
    return SemanticStructure(contract_name, tuple(items))


def semantic_to_json(structure: SemanticStructure) -> str:
    doc = {
        "schema_version": "1",
        "contract_name": structure.contract_name,
        "items": [
            {
                "node_path": list(item.node_path),
                "node_type": item.node_type,
                "description": item.description,
            }
            for item in structure.items
        ],
    }
    return json.dumps(doc, indent=2, ensure_ascii=True) + "\n"


def semantic_listing(structure: SemanticStructure) -> str:
    """Numbered one-description-per-line view for terminal output."""
    lines = [f"{i + 1}. {item.description}" for i, item in enumerate(structure.items)]
    return "\n".join(lines) + "\n"
