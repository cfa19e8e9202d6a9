"""contractalign: validate Solidity contracts against natural-language
e-contracts by building and comparing knowledge graphs."""

__version__ = "0.1.0"

from .compare import (
    DiscrepancyReport,
    MatchedPair,
    MatchSet,
    compute_discrepancy,
    match_entities,
    match_relations,
    normalize_label,
    predicate_similarity,
    render_table,
    report_json,
    similarity,
)
from .config import Lexicons, MatchingConfig, PipelineConfig, config_from_dict, load_config
from .describe import (
    DescribedNode,
    GrammarRule,
    SemanticStructure,
    apply_grammar,
    default_rules,
    describe_contract,
    render_expression,
    semantic_listing,
    semantic_to_json,
)
from .econtract import (
    Clause,
    EContractDocument,
    PreprocessedText,
    clauses_from_json,
    clauses_to_json,
    extract_entities,
    extract_relations,
    preprocess,
    render_clauses,
)
from .errors import (
    ContractAlignError,
    DanglingEdge,
    EmptyDocument,
    MalformedPragma,
    MissingPragma,
    MissingRule,
    SchemaViolation,
    SoliditySyntaxError,
    UnknownEntityReference,
    UnsupportedConstruct,
    UnsupportedVersion,
)
from .kg import (
    KIND_SHAPES,
    Entity,
    KnowledgeGraph,
    Provenance,
    Relation,
    build_graph,
    entity_id,
    export_dot,
    export_json,
    graph_from_semantic,
    import_json,
    slugify,
)
from .solidity import (
    AstNode,
    ParserDialect,
    SoliditySource,
    Span,
    VersionConstraint,
    ast_from_json,
    ast_to_json,
    extract_pragma_version,
    parse,
    select_dialect,
    tokenize,
)

__all__ = [
    "__version__",
    "DiscrepancyReport",
    "MatchedPair",
    "MatchSet",
    "compute_discrepancy",
    "match_entities",
    "match_relations",
    "normalize_label",
    "predicate_similarity",
    "render_table",
    "report_json",
    "similarity",
    "Lexicons",
    "MatchingConfig",
    "PipelineConfig",
    "config_from_dict",
    "load_config",
    "DescribedNode",
    "GrammarRule",
    "SemanticStructure",
    "apply_grammar",
    "default_rules",
    "describe_contract",
    "render_expression",
    "semantic_listing",
    "semantic_to_json",
    "Clause",
    "EContractDocument",
    "PreprocessedText",
    "clauses_from_json",
    "clauses_to_json",
    "extract_entities",
    "extract_relations",
    "preprocess",
    "render_clauses",
    "ContractAlignError",
    "DanglingEdge",
    "EmptyDocument",
    "MalformedPragma",
    "MissingPragma",
    "MissingRule",
    "SchemaViolation",
    "SoliditySyntaxError",
    "UnknownEntityReference",
    "UnsupportedConstruct",
    "UnsupportedVersion",
    "KIND_SHAPES",
    "Entity",
    "KnowledgeGraph",
    "Provenance",
    "Relation",
    "build_graph",
    "entity_id",
    "export_dot",
    "export_json",
    "graph_from_semantic",
    "import_json",
    "slugify",
    "AstNode",
    "ParserDialect",
    "SoliditySource",
    "Span",
    "VersionConstraint",
    "ast_from_json",
    "ast_to_json",
    "extract_pragma_version",
    "parse",
    "select_dialect",
    "tokenize",
]
