"""Exception hierarchy shared across the pipeline.

Every error the library raises derives from ContractAlignError so the CLI
can catch one base class and map it to exit code 2.
"""


class ContractAlignError(Exception):
    """Base class for all contractalign errors."""


class EmptyDocument(ContractAlignError):
    """Raised when an e-contract yields no clauses at all."""


class UnknownEntityReference(ContractAlignError):
    """Internal guard: a relation endpoint was not among the extracted entities."""


class MissingPragma(ContractAlignError):
    """Solidity source contains no `pragma solidity` directive."""


class MalformedPragma(ContractAlignError):
    """The pragma version constraint does not parse."""


class UnsupportedVersion(ContractAlignError):
    """Pragma constraint does not intersect any supported dialect range."""

    def __init__(self, requested: str, supported: str):
        super().__init__(f"no parser dialect for pragma '{requested}' (supported: {supported})")
        self.requested = requested
        self.supported = supported


class SourceLocatedError(ContractAlignError):
    """Error anchored to a line/column of the input source."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{line}:{column}: {message}")
        self.line = line
        self.column = column


class SoliditySyntaxError(SourceLocatedError):
    """Token stream does not match the grammar."""

    def __init__(self, message: str, line: int, column: int, expected: tuple[str, ...] = ()):
        if expected:
            message = f"{message} (expected {', '.join(expected)})"
        super().__init__(message, line, column)
        self.expected = expected


class UnsupportedConstruct(SourceLocatedError):
    """Syntactically valid Solidity outside the supported subset."""


class MissingRule(ContractAlignError):
    """A describable AST node has no grammar template (configuration error)."""


class DanglingEdge(ContractAlignError):
    """A relation references an entity id absent from the node set."""


class SchemaViolation(ContractAlignError):
    """A JSON artifact does not match its schema; carries the offending path."""

    def __init__(self, message: str, path: str):
        super().__init__(f"{path}: {message}")
        self.path = path
