"""Solidity frontend: pragma handling, lexer, parser, and AST utilities."""

from .nodes import (
    NODE_TYPES,
    REQUIRED_ATTRIBUTES,
    AstNode,
    Span,
    ast_from_json,
    ast_to_json,
    validate_ast,
)
from .parser import SoliditySource, parse
from .tokens import ELEMENTARY_TYPES, Token, tokenize
from .version import (
    DIALECT_V08,
    ParserDialect,
    VersionConstraint,
    VersionOperator,
    extract_pragma_version,
    parse_constraint,
    select_dialect,
)

__all__ = [
    "NODE_TYPES",
    "REQUIRED_ATTRIBUTES",
    "AstNode",
    "Span",
    "ast_from_json",
    "ast_to_json",
    "validate_ast",
    "SoliditySource",
    "parse",
    "ELEMENTARY_TYPES",
    "Token",
    "tokenize",
    "DIALECT_V08",
    "ParserDialect",
    "VersionConstraint",
    "VersionOperator",
    "extract_pragma_version",
    "parse_constraint",
    "select_dialect",
]
