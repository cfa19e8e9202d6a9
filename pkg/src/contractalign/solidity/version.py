"""Pragma version extraction and parser-dialect selection.

The pragma's constraint decides which grammar dialect handles the file; only
the 0.8 line is supported.  Supported constraint operators: caret (^x.y.z),
exact (x.y.z), and lower-bound-only ranges (>=x.y.z).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum

from ..errors import MalformedPragma, MissingPragma, UnsupportedVersion

_PRAGMA_RE = re.compile(r"pragma\s+solidity\s+([^;]+);")
_VERSION_RE = re.compile(r"^(\^|>=)?\s*(\d+)\.(\d+)\.(\d+)$")


class VersionOperator(Enum):
    CARET = "^"
    EXACT = ""
    RANGE_NONE = ">="  # lower bound with no upper end


@dataclass(frozen=True)
class VersionConstraint:
    operator: VersionOperator
    major: int
    minor: int
    patch: int

    @property
    def base(self) -> tuple[int, int, int]:
        return (self.major, self.minor, self.patch)

    def text(self) -> str:
        return f"{self.operator.value}{self.major}.{self.minor}.{self.patch}"

    def bounds(self) -> tuple[tuple[int, int, int], tuple[int, int, int] | None]:
        """Allowed half-open interval [low, high); high None means unbounded."""
        if self.operator is VersionOperator.EXACT:
            return self.base, (self.major, self.minor, self.patch + 1)
        if self.operator is VersionOperator.CARET:
            # 0.x caret: patch may float within the minor line
            if self.major == 0:
                return self.base, (0, self.minor + 1, 0)
            return self.base, (self.major + 1, 0, 0)
        return self.base, None

    def intersects(self, low: tuple[int, int, int], high: tuple[int, int, int]) -> bool:
        my_low, my_high = self.bounds()
        if my_high is not None and my_high <= low:
            return False
        return my_low < high


@dataclass(frozen=True)
class ParserDialect:
    name: str
    supported_low: tuple[int, int, int]
    supported_high: tuple[int, int, int]

    @property
    def supported_range(self) -> str:
        low = ".".join(map(str, self.supported_low))
        high = ".".join(map(str, self.supported_high))
        return f"[{low}, {high})"


DIALECT_V08 = ParserDialect("v08", (0, 8, 0), (0, 9, 0))
DIALECTS = (DIALECT_V08,)


def parse_constraint(text: str) -> VersionConstraint:
    match = _VERSION_RE.match(text.strip())
    if not match:
        raise MalformedPragma(f"cannot parse version constraint {text.strip()!r}")
    op_text, major, minor, patch = match.groups()
    operator = {None: VersionOperator.EXACT, "^": VersionOperator.CARET,
                ">=": VersionOperator.RANGE_NONE}[op_text]
    return VersionConstraint(operator, int(major), int(minor), int(patch))


def extract_pragma_version(source) -> VersionConstraint:
    """Read the constraint of the first `pragma solidity` directive.

    Accepts raw text or any object with a raw_text attribute.
    """
    text = getattr(source, "raw_text", source)
    match = _PRAGMA_RE.search(text)
    if not match:
        raise MissingPragma("no 'pragma solidity' directive found")
    return parse_constraint(match.group(1))


def select_dialect(constraint: VersionConstraint) -> ParserDialect:
    for dialect in DIALECTS:
        if constraint.intersects(dialect.supported_low, dialect.supported_high):
            return dialect
    supported = ", ".join(f"{d.name} {d.supported_range}" for d in DIALECTS)
    raise UnsupportedVersion(constraint.text(), supported)
