"""Recursive descent parser for a Solidity 0.8 subset.

Supported grammar: one pragma, contract definitions, state variables over
elementary types, events, a constructor, functions (visibility, view/payable,
memory/calldata parameter locations, tuple returns), and the statements
require/emit/assignment/return/if/for/while over comparison and boolean
expressions.  Anything else fails loudly with UnsupportedConstruct so the
knowledge graph can never silently omit code semantics.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import SoliditySyntaxError, UnsupportedConstruct
from .nodes import AstNode, Span
from .tokens import ELEMENTARY_TYPES, Token, tokenize
from .version import ParserDialect

VISIBILITIES = ("external", "public", "internal", "private")
MUTABILITIES = ("view", "payable")
COMPARISON_OPS = ("==", "!=", "<", "<=", ">", ">=")

# constructs we recognize well enough to reject by name
_UNSUPPORTED_LEADS = {
    "mapping": "mapping types",
    "struct": "struct definitions",
    "enum": "enum definitions",
    "modifier": "modifier definitions",
    "using": "using-for directives",
    "import": "import directives",
    "fallback": "fallback functions",
    "receive": "receive functions",
    "assembly": "inline assembly",
    "is": "inheritance",
    "bytes": "dynamic bytes type",
    "interface": "interface definitions",
    "library": "library definitions",
    "abstract": "abstract contracts",
}

_ARITHMETIC = ("+", "-", "*", "/", "%")


@dataclass(frozen=True)
class SoliditySource:
    raw_text: str
    source_name: str = "<string>"


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0
        self.last_end: tuple[int, int] = (1, 0)

    # ------------------------------------------------------------------
    # token plumbing
    # ------------------------------------------------------------------

    @property
    def cur(self) -> Token:
        return self.tokens[self.pos]

    def start(self) -> tuple[int, int]:
        return (self.cur.line, self.cur.column)

    def advance(self) -> Token:
        tok = self.cur
        if tok.kind != "eof":
            self.pos += 1
            self.last_end = tok.end
        return tok

    def at(self, text: str) -> bool:
        return self.cur.text == text and self.cur.kind in ("keyword", "punct")

    def at_kind(self, kind: str) -> bool:
        return self.cur.kind == kind

    def expect(self, text: str) -> Token:
        if not self.at(text):
            raise self.fail(f"unexpected {self._describe(self.cur)}", expected=(text,))
        return self.advance()

    def expect_identifier(self, what: str) -> Token:
        if self.cur.kind != "identifier":
            raise self.fail(f"expected {what}, got {self._describe(self.cur)}")
        return self.advance()

    @staticmethod
    def _describe(tok: Token) -> str:
        return "end of input" if tok.kind == "eof" else f"{tok.kind} {tok.text!r}"

    def fail(self, message: str, expected: tuple[str, ...] = ()) -> SoliditySyntaxError:
        return SoliditySyntaxError(message, self.cur.line, self.cur.column, expected)

    def unsupported(self, what: str, tok: Token | None = None) -> UnsupportedConstruct:
        tok = tok or self.cur
        return UnsupportedConstruct(f"{what} are outside the supported subset", tok.line, tok.column)

    def reject_unsupported_lead(self) -> None:
        tok = self.cur
        if tok.text in _UNSUPPORTED_LEADS:
            raise self.unsupported(_UNSUPPORTED_LEADS[tok.text])
        if tok.text in _ARITHMETIC:
            raise self.unsupported("arithmetic operators")
        if tok.text == "[":
            raise self.unsupported("array types")

    def node(self, node_type: str, start: tuple[int, int], attributes: dict[str, str] | None = None,
             children: tuple[AstNode, ...] = ()) -> AstNode:
        return AstNode(node_type, attributes or {}, Span(start, self.last_end), children)

    # ------------------------------------------------------------------
    # declarations
    # ------------------------------------------------------------------

    def parse_source_unit(self) -> AstNode:
        start = (1, 0)
        children = [self.parse_pragma()]
        while not self.at_kind("eof"):
            self.reject_unsupported_lead()
            if self.at("contract"):
                children.append(self.parse_contract())
            else:
                raise self.fail(f"unexpected {self._describe(self.cur)}", expected=("contract",))
        return self.node("SourceUnit", start, children=tuple(children))

    def parse_pragma(self) -> AstNode:
        start = self.start()
        self.expect("pragma")
        self.expect("solidity")
        pieces = []
        while not self.at(";"):
            if self.at_kind("eof"):
                raise self.fail("unterminated pragma directive", expected=(";",))
            pieces.append(self.advance().text)
        self.expect(";")
        return self.node("PragmaDirective", start, {"constraint": "".join(pieces)})

    def parse_contract(self) -> AstNode:
        start = self.start()
        self.expect("contract")
        name = self.expect_identifier("contract name").text
        self.reject_unsupported_lead()
        self.expect("{")
        parts = []
        while not self.at("}"):
            if self.at_kind("eof"):
                raise self.fail("unterminated contract body", expected=("}",))
            parts.append(self.parse_contract_part())
        self.expect("}")
        return self.node("ContractDefinition", start, {"name": name}, tuple(parts))

    def parse_contract_part(self) -> AstNode:
        self.reject_unsupported_lead()
        if self.at("event"):
            return self.parse_event()
        if self.at("constructor"):
            return self.parse_constructor()
        if self.at("function"):
            return self.parse_function()
        if self.cur.kind == "identifier" and self.cur.text in ELEMENTARY_TYPES:
            return self.parse_state_variable()
        raise self.fail(
            f"unexpected {self._describe(self.cur)} in contract body",
            expected=("event", "constructor", "function", "<elementary type>"),
        )

    def parse_elementary_type(self) -> AstNode:
        start = self.start()
        tok = self.cur
        if tok.kind != "identifier" or tok.text not in ELEMENTARY_TYPES:
            raise self.fail(f"expected elementary type, got {self._describe(tok)}")
        self.advance()
        if self.at("["):
            raise self.unsupported("array types")
        normalized = {"uint": "uint256", "int": "int256"}.get(tok.text, tok.text)
        return self.node("ElementaryTypeName", start, {"type": normalized})

    def parse_state_variable(self) -> AstNode:
        start = self.start()
        type_node = self.parse_elementary_type()
        visibility = "internal"
        if self.cur.text in VISIBILITIES:
            visibility = self.advance().text
        name = self.expect_identifier("state variable name").text
        if self.at("="):
            raise self.unsupported("state variable initializers")
        self.expect(";")
        attrs = {"name": name, "type": type_node.attributes["type"], "visibility": visibility}
        return self.node("StateVariableDeclaration", start, attrs, (type_node,))

    def parse_parameter(self, role: str, names_required: bool) -> AstNode:
        start = self.start()
        type_node = self.parse_elementary_type()
        attrs = {"type": type_node.attributes["type"], "role": role}
        if self.cur.text in ("memory", "calldata"):
            attrs["location"] = self.advance().text
        if self.cur.kind == "identifier":
            attrs["name"] = self.advance().text
        elif names_required:
            raise self.fail("expected parameter name")
        return self.node("Parameter", start, attrs, (type_node,))

    def parse_parameter_list(self, role: str, names_required: bool) -> tuple[AstNode, ...]:
        self.expect("(")
        params = []
        if not self.at(")"):
            params.append(self.parse_parameter(role, names_required))
            while self.at(","):
                self.advance()
                params.append(self.parse_parameter(role, names_required))
        self.expect(")")
        return tuple(params)

    def parse_event(self) -> AstNode:
        start = self.start()
        self.expect("event")
        name = self.expect_identifier("event name").text
        params = self.parse_parameter_list("input", names_required=False)
        self.expect(";")
        return self.node("EventDefinition", start, {"name": name}, params)

    def parse_constructor(self) -> AstNode:
        start = self.start()
        self.expect("constructor")
        params = self.parse_parameter_list("input", names_required=True)
        body = self.parse_block()
        return self.node("ConstructorDefinition", start, {}, params + (body,))

    def parse_function(self) -> AstNode:
        start = self.start()
        self.expect("function")
        name = self.expect_identifier("function name").text
        params = self.parse_parameter_list("input", names_required=True)

        visibility = None
        mutability = None
        while True:
            if self.cur.text in VISIBILITIES:
                if visibility is not None:
                    raise self.fail("duplicate visibility modifier")
                visibility = self.advance().text
            elif self.cur.text in MUTABILITIES:
                if mutability is not None:
                    raise self.fail("duplicate mutability modifier")
                mutability = self.advance().text
            else:
                break
        if visibility is None:
            raise self.fail("function requires a visibility modifier",
                            expected=VISIBILITIES)

        returns: tuple[AstNode, ...] = ()
        if self.at("returns"):
            self.advance()
            returns = self.parse_parameter_list("return", names_required=False)

        body = self.parse_block()
        attrs = {"name": name, "visibility": visibility, "mutability": mutability or "nonpayable"}
        return self.node("FunctionDefinition", start, attrs, params + returns + (body,))

    # ------------------------------------------------------------------
    # statements
    # ------------------------------------------------------------------

    def parse_block(self) -> AstNode:
        start = self.start()
        self.expect("{")
        statements = []
        while not self.at("}"):
            if self.at_kind("eof"):
                raise self.fail("unterminated block", expected=("}",))
            statements.append(self.parse_statement())
        self.expect("}")
        return self.node("Block", start, {}, tuple(statements))

    def parse_statement(self) -> AstNode:
        self.reject_unsupported_lead()
        if self.at("require"):
            return self.parse_require()
        if self.at("emit"):
            return self.parse_emit()
        if self.at("return"):
            return self.parse_return()
        if self.at("if"):
            return self.parse_if()
        if self.at("while"):
            return self.parse_while()
        if self.at("for"):
            return self.parse_for()
        if self.cur.kind == "identifier":
            stmt = self.parse_assignment_head()
            self.expect(";")
            # widen the span over the terminator, like every other statement
            return AstNode(stmt.node_type, stmt.attributes,
                           Span(stmt.span.start, self.last_end), stmt.children)
        raise self.fail(
            f"unexpected {self._describe(self.cur)} in block",
            expected=("require", "emit", "return", "if", "while", "for", "<assignment>"),
        )

    def parse_assignment_head(self) -> AstNode:
        """`target = expression`, without the trailing semicolon."""
        start = self.start()
        target_tok = self.expect_identifier("assignment target")
        target = AstNode("Identifier", {"name": target_tok.text},
                         Span((target_tok.line, target_tok.column), target_tok.end))
        if self.at("("):
            raise self.unsupported("call statements", target_tok)
        if self.at("."):
            raise self.unsupported("member assignment targets", target_tok)
        self.expect("=")
        value = self.parse_expression()
        return self.node("Assignment", start, {}, (target, value))

    def parse_require(self) -> AstNode:
        start = self.start()
        self.expect("require")
        self.expect("(")
        condition = self.parse_expression()
        self.expect(",")
        if self.cur.kind != "string":
            raise self.fail("require needs a string revert message")
        message = self.advance().text[1:-1]
        self.expect(")")
        self.expect(";")
        return self.node("RequireStatement", start, {"message": message}, (condition,))

    def parse_emit(self) -> AstNode:
        start = self.start()
        self.expect("emit")
        name = self.expect_identifier("event name").text
        self.expect("(")
        args = []
        if not self.at(")"):
            args.append(self.parse_expression())
            while self.at(","):
                self.advance()
                args.append(self.parse_expression())
        self.expect(")")
        self.expect(";")
        return self.node("EmitStatement", start, {"name": name}, tuple(args))

    def parse_return(self) -> AstNode:
        start = self.start()
        self.expect("return")
        args = []
        if self.at("("):
            self.advance()
            if not self.at(")"):
                args.append(self.parse_expression())
                while self.at(","):
                    self.advance()
                    args.append(self.parse_expression())
            self.expect(")")
        elif not self.at(";"):
            args.append(self.parse_expression())
        self.expect(";")
        return self.node("ReturnStatement", start, {}, tuple(args))

    def parse_if(self) -> AstNode:
        start = self.start()
        self.expect("if")
        self.expect("(")
        condition = self.parse_expression()
        self.expect(")")
        then_block = self.parse_block()
        children = [condition, then_block]
        if self.at("else"):
            self.advance()
            children.append(self.parse_block())
        return self.node("IfStatement", start, {}, tuple(children))

    def parse_while(self) -> AstNode:
        start = self.start()
        self.expect("while")
        self.expect("(")
        condition = self.parse_expression()
        self.expect(")")
        body = self.parse_block()
        return self.node("WhileStatement", start, {}, (condition, body))

    def parse_for(self) -> AstNode:
        start = self.start()
        self.expect("for")
        self.expect("(")
        init = self.parse_assignment_head()
        self.expect(";")
        condition = self.parse_expression()
        self.expect(";")
        post = self.parse_assignment_head()
        self.expect(")")
        body = self.parse_block()
        return self.node("ForStatement", start, {}, (init, condition, post, body))

    # ------------------------------------------------------------------
    # expressions
    # ------------------------------------------------------------------

    def parse_expression(self) -> AstNode:
        return self.parse_or()

    def _binary(self, start, left: AstNode, op: str, right: AstNode) -> AstNode:
        return self.node("BinaryExpression", start, {"operator": op}, (left, right))

    def parse_or(self) -> AstNode:
        start = self.start()
        left = self.parse_and()
        while self.at("||"):
            self.advance()
            left = self._binary(start, left, "||", self.parse_and())
        return left

    def parse_and(self) -> AstNode:
        start = self.start()
        left = self.parse_comparison()
        while self.at("&&"):
            self.advance()
            left = self._binary(start, left, "&&", self.parse_comparison())
        return left

    def parse_comparison(self) -> AstNode:
        start = self.start()
        left = self.parse_primary()
        if self.cur.kind == "punct" and self.cur.text in COMPARISON_OPS:
            op = self.advance().text
            return self._binary(start, left, op, self.parse_primary())
        return left

    def parse_primary(self) -> AstNode:
        expr = self._parse_primary_inner()
        # infix arithmetic is recognized so it fails by name, not as a
        # bewildering "expected ;" error
        if self.cur.kind == "punct" and self.cur.text in _ARITHMETIC:
            raise self.unsupported("arithmetic operators")
        return expr

    def _parse_primary_inner(self) -> AstNode:
        self.reject_unsupported_lead()
        tok = self.cur
        start = self.start()
        if tok.kind == "number":
            self.advance()
            return self.node("Literal", start, {"value": tok.text})
        if tok.kind == "string":
            self.advance()
            return self.node("Literal", start, {"value": tok.text})
        if tok.text in ("true", "false"):
            self.advance()
            return self.node("Literal", start, {"value": tok.text})
        if tok.text == "(":
            self.advance()
            inner = self.parse_expression()
            self.expect(")")
            return inner
        if tok.kind == "identifier":
            self.advance()
            expr = self.node("Identifier", start, {"name": tok.text})
            while self.at("."):
                self.advance()
                member = self.expect_identifier("member name").text
                if self.at("("):
                    raise self.unsupported("method calls", tok)
                expr = self.node("MemberAccess", start, {"member": member}, (expr,))
            if self.at("("):
                raise self.unsupported("function call expressions", tok)
            return expr
        raise self.fail(f"unexpected {self._describe(tok)} in expression")


def parse(src: SoliditySource, dialect: ParserDialect) -> AstNode:
    """Parse source text into a SourceUnit AST under the given dialect."""
    if dialect.name != "v08":
        raise ValueError(f"unknown dialect {dialect.name!r}")
    tokens = tokenize(src.raw_text)
    parser = _Parser(tokens)
    root = parser.parse_source_unit()
    return root
