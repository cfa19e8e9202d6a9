"""Tokenizer for the supported Solidity subset.

Positions are (line, column) with 1-based lines and 0-based columns; token
spans are half-open.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import SoliditySyntaxError

KEYWORDS = frozenset(
    {
        "pragma",
        "solidity",
        "contract",
        "event",
        "constructor",
        "function",
        "returns",
        "require",
        "emit",
        "return",
        "if",
        "else",
        "for",
        "while",
        "public",
        "private",
        "internal",
        "external",
        "view",
        "payable",
        "memory",
        "calldata",
        "true",
        "false",
    }
)

# longest first so '==' wins over '='
PUNCTUATION = (
    "==",
    "!=",
    "<=",
    ">=",
    "||",
    "&&",
    "^",
    "=",
    "<",
    ">",
    "(",
    ")",
    "{",
    "}",
    ";",
    ",",
    ".",
    # tokenized so the parser can reject them with a located error
    "[",
    "]",
    "+",
    "-",
    "*",
    "/",
    "%",
)

ELEMENTARY_TYPES = frozenset(
    {"address", "bool", "string", "bytes32"}
    | {f"uint{w}" for w in range(8, 257, 8)}
    | {f"int{w}" for w in range(8, 257, 8)}
    | {"uint", "int"}
)


@dataclass(frozen=True)
class Token:
    kind: str  # keyword | identifier | number | string | punct | eof
    text: str
    line: int
    column: int

    @property
    def end(self) -> tuple[int, int]:
        return (self.line, self.column + len(self.text))


def tokenize(source: str) -> list[Token]:
    """Split source into tokens, dropping comments and whitespace."""
    tokens: list[Token] = []
    line, col, i = 1, 0, 0
    n = len(source)

    def here(msg: str) -> SoliditySyntaxError:
        return SoliditySyntaxError(msg, line, col)

    while i < n:
        ch = source[i]
        if ch == "\n":
            line += 1
            col = 0
            i += 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if source.startswith("//", i):
            while i < n and source[i] != "\n":
                i += 1
                col += 1
            continue
        if source.startswith("/*", i):
            end = source.find("*/", i + 2)
            if end < 0:
                raise here("unterminated block comment")
            for j in range(i, end + 2):
                if source[j] == "\n":
                    line += 1
                    col = 0
                else:
                    col += 1
            i = end + 2
            continue
        if ch == '"':
            j = i + 1
            while j < n and source[j] not in '"\n':
                j += 1
            if j >= n or source[j] != '"':
                raise here("unterminated string literal")
            tokens.append(Token("string", source[i : j + 1], line, col))
            col += j + 1 - i
            i = j + 1
            continue
        if ch.isdigit():
            j = i
            while j < n and source[j].isdigit():
                j += 1
            tokens.append(Token("number", source[i:j], line, col))
            col += j - i
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (source[j].isalnum() or source[j] == "_"):
                j += 1
            text = source[i:j]
            kind = "keyword" if text in KEYWORDS else "identifier"
            tokens.append(Token(kind, text, line, col))
            col += j - i
            i = j
            continue
        for punct in PUNCTUATION:
            if source.startswith(punct, i):
                tokens.append(Token("punct", punct, line, col))
                col += len(punct)
                i += len(punct)
                break
        else:
            raise here(f"unexpected character {ch!r}")

    tokens.append(Token("eof", "", line, col))
    return tokens
