"""Typed AST for the Solidity subset, plus canonical JSON (de)serialization.

A node is (nodeType, attributes, span, children).  Trees are immutable after
construction and safe to share across threads.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterator

from ..errors import SchemaViolation

NODE_TYPES = frozenset(
    {
        "SourceUnit",
        "PragmaDirective",
        "ContractDefinition",
        "StateVariableDeclaration",
        "EventDefinition",
        "ConstructorDefinition",
        "FunctionDefinition",
        "Parameter",
        "Block",
        "RequireStatement",
        "EmitStatement",
        "Assignment",
        "ReturnStatement",
        "IfStatement",
        "ForStatement",
        "WhileStatement",
        "BinaryExpression",
        "MemberAccess",
        "Identifier",
        "Literal",
        "ElementaryTypeName",
    }
)

# Attributes that must be present per node type.  Optional ones (Parameter
# "name"/"location", FunctionDefinition extras) are not listed.
REQUIRED_ATTRIBUTES: dict[str, tuple[str, ...]] = {
    "SourceUnit": (),
    "PragmaDirective": ("constraint",),
    "ContractDefinition": ("name",),
    "StateVariableDeclaration": ("name", "type", "visibility"),
    "EventDefinition": ("name",),
    "ConstructorDefinition": (),
    "FunctionDefinition": ("name", "visibility", "mutability"),
    "Parameter": ("type",),
    "Block": (),
    "RequireStatement": ("message",),
    "EmitStatement": ("name",),
    "Assignment": (),
    "ReturnStatement": (),
    "IfStatement": (),
    "ForStatement": (),
    "WhileStatement": (),
    "BinaryExpression": ("operator",),
    "MemberAccess": ("member",),
    "Identifier": ("name",),
    "Literal": ("value",),
    "ElementaryTypeName": ("type",),
}


@dataclass(frozen=True)
class Span:
    """Half-open [start, end) region; lines 1-based, columns 0-based."""

    start: tuple[int, int]
    end: tuple[int, int]

    def contains(self, other: "Span") -> bool:
        return self.start <= other.start and other.end <= self.end

    def covers_point(self, line: int, column: int) -> bool:
        return self.start <= (line, column) < self.end


@dataclass(frozen=True)
class AstNode:
    node_type: str
    attributes: dict[str, str]
    span: Span
    children: tuple["AstNode", ...] = field(default_factory=tuple)

    def walk(self, path: tuple[int, ...] = ()) -> Iterator[tuple[tuple[int, ...], "AstNode"]]:
        """Pre-order traversal yielding (child-index path, node)."""
        yield path, self
        for i, child in enumerate(self.children):
            yield from child.walk(path + (i,))

    def at_path(self, path: tuple[int, ...]) -> "AstNode":
        node = self
        for index in path:
            node = node.children[index]
        return node


def validate_ast(root: AstNode) -> None:
    """Check structural invariants; raises ValueError on violation."""
    if root.node_type != "SourceUnit":
        raise ValueError(f"root must be SourceUnit, got {root.node_type}")
    for path, node in root.walk():
        if node.node_type not in NODE_TYPES:
            raise ValueError(f"unknown node type {node.node_type!r} at {path}")
        for attr in REQUIRED_ATTRIBUTES[node.node_type]:
            if attr not in node.attributes:
                raise ValueError(f"{node.node_type} at {path} missing attribute {attr!r}")
        for child in node.children:
            if not node.span.contains(child.span):
                raise ValueError(f"child span escapes parent at {path}")


def _node_to_obj(node: AstNode) -> dict:
    return {
        "nodeType": node.node_type,
        "attributes": {k: node.attributes[k] for k in sorted(node.attributes)},
        "span": {"start": list(node.span.start), "end": list(node.span.end)},
        "children": [_node_to_obj(c) for c in node.children],
    }


def ast_to_json(root: AstNode) -> str:
    """Canonical, byte-deterministic JSON for an AST rooted at a SourceUnit."""
    if root.node_type != "SourceUnit":
        raise ValueError("ast_to_json expects a SourceUnit root")
    return json.dumps(_node_to_obj(root), indent=2, ensure_ascii=True) + "\n"


def _obj_to_node(obj, path: str) -> AstNode:
    if not isinstance(obj, dict):
        raise SchemaViolation("node must be an object", path)
    for key in ("nodeType", "attributes", "span", "children"):
        if key not in obj:
            raise SchemaViolation(f"missing key {key!r}", path)
    node_type = obj["nodeType"]
    if node_type not in NODE_TYPES:
        raise SchemaViolation(f"unknown nodeType {node_type!r}", f"{path}.nodeType")
    attrs = obj["attributes"]
    if not isinstance(attrs, dict) or not all(
        isinstance(k, str) and isinstance(v, str) for k, v in attrs.items()
    ):
        raise SchemaViolation("attributes must map strings to strings", f"{path}.attributes")
    span_obj = obj["span"]
    try:
        span = Span(tuple(span_obj["start"]), tuple(span_obj["end"]))
    except (TypeError, KeyError):
        raise SchemaViolation("span must have start/end pairs", f"{path}.span") from None
    if not isinstance(obj["children"], list):
        raise SchemaViolation("children must be an array", f"{path}.children")
    children = tuple(
        _obj_to_node(child, f"{path}.children[{i}]") for i, child in enumerate(obj["children"])
    )
    return AstNode(node_type, dict(attrs), span, children)


def ast_from_json(doc: str | dict) -> AstNode:
    """Inverse of ast_to_json; raises SchemaViolation with a JSON path."""
    if isinstance(doc, str):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as exc:
            raise SchemaViolation(f"not valid JSON: {exc}", "$") from None
    root = _obj_to_node(doc, "$")
    if root.node_type != "SourceUnit":
        raise SchemaViolation("root nodeType must be SourceUnit", "$.nodeType")
    try:
        validate_ast(root)
    except ValueError as exc:
        raise SchemaViolation(str(exc), "$") from None
    return root
