"""Command-line interface: the full validate pipeline plus one subcommand
per stage, wired through JSON artifacts so staged and pipelined runs produce
byte-identical outputs.

Exit codes: 0 contracts aligned, 1 obligation-kind discrepancies found,
2 any error.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from pathlib import Path

from . import __version__
from .compare import compute_discrepancy, render_table, report_json
from .config import PipelineConfig, load_config
from .describe import SemanticStructure, describe_contract, semantic_listing, semantic_to_json
from .econtract import (
    EContractDocument,
    PreprocessedText,
    clauses_from_json,
    clauses_to_json,
    extract_entities,
    extract_relations,
    preprocess,
)
from .errors import ContractAlignError, SchemaViolation
from .kg import (
    KnowledgeGraph,
    build_graph,
    export_dot,
    export_json,
    graph_from_semantic,
    import_json,
)
from .solidity import (
    AstNode,
    SoliditySource,
    ast_from_json,
    ast_to_json,
    extract_pragma_version,
    parse,
    select_dialect,
)

EMIT_CHOICES = ("ast", "kg", "dot", "report")


def _stem(path: Path) -> str:
    """File name up to the first dot: rental.econtract.kg.json -> rental."""
    return path.name.split(".", 1)[0]


def _read_text(path: Path) -> str:
    return path.read_text(encoding="utf-8")


def _write(path: Path, content: str) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(content, encoding="utf-8", newline="\n")
    return path


def _load_pipeline_config(args: argparse.Namespace) -> PipelineConfig:
    cfg = load_config(args.config) if getattr(args, "config", None) else PipelineConfig()
    overrides = {}
    if getattr(args, "tau", None) is not None:
        overrides["tau"] = args.tau
    if getattr(args, "tau_p", None) is not None:
        overrides["tau_p"] = args.tau_p
    if overrides:
        cfg = dataclasses.replace(cfg, matching=dataclasses.replace(cfg.matching, **overrides))
    return cfg


def _located(path: Path, exc: ContractAlignError) -> ContractAlignError:
    return ContractAlignError(f"{path}: {exc}")


def _econtract_pipeline(path: Path, cfg: PipelineConfig) -> tuple[PreprocessedText, KnowledgeGraph]:
    try:
        doc = EContractDocument(_read_text(path), str(path))
        pre = preprocess(doc, cfg.lexicons)
        entities = extract_entities(pre, cfg.lexicons)
        relations = extract_relations(pre, entities, cfg.lexicons)
        return pre, build_graph("econtract", entities, relations)
    except ContractAlignError as exc:
        raise _located(path, exc) from exc


def _solidity_pipeline(path: Path, cfg: PipelineConfig) -> tuple[AstNode, SemanticStructure, KnowledgeGraph]:
    try:
        src = SoliditySource(_read_text(path), str(path))
        dialect = select_dialect(extract_pragma_version(src))
        root = parse(src, dialect)
        structure = describe_contract(root, cfg.templates)
        return root, structure, graph_from_semantic(structure, root)
    except ContractAlignError as exc:
        raise _located(path, exc) from exc


# ----------------------------------------------------------------------
# subcommand implementations
# ----------------------------------------------------------------------


def _cmd_validate(args: argparse.Namespace) -> int:
    emit = [item for item in args.emit.split(",") if item]
    unknown = [item for item in emit if item not in EMIT_CHOICES]
    if unknown:
        raise ContractAlignError(
            f"unknown --emit value(s) {', '.join(unknown)} (choose from {', '.join(EMIT_CHOICES)})"
        )
    cfg = _load_pipeline_config(args)
    _, g_e = _econtract_pipeline(args.econtract, cfg)
    root, _, g_s = _solidity_pipeline(args.sol, cfg)
    report = compute_discrepancy(g_e, g_s, cfg.matching)

    out = args.out
    e_stem, s_stem = _stem(args.econtract), _stem(args.sol)
    if "ast" in emit:
        _write(out / f"{s_stem}.ast.json", ast_to_json(root))
    if "kg" in emit:
        _write(out / f"{e_stem}.econtract.kg.json", export_json(g_e))
        _write(out / f"{s_stem}.smartcontract.kg.json", export_json(g_s))
    if "dot" in emit:
        _write(out / f"{e_stem}.econtract.dot", export_dot(g_e))
        _write(out / f"{s_stem}.smartcontract.dot", export_dot(g_s))
    if "report" in emit:
        _write(out / f"{e_stem}.report.json", report_json(report, cfg.matching))
    print(render_table(report, g_e, g_s), end="")
    return 0 if report.aligned else 1


def _cmd_parse_econtract(args: argparse.Namespace) -> int:
    cfg = _load_pipeline_config(args)
    try:
        doc = EContractDocument(_read_text(args.input), str(args.input))
        pre = preprocess(doc, cfg.lexicons)
    except ContractAlignError as exc:
        raise _located(args.input, exc) from exc
    written = _write(args.out / f"{_stem(args.input)}.clauses.json", clauses_to_json(pre))
    print(f"wrote {written} ({len(pre.clauses)} clauses)")
    return 0


def _cmd_parse_sol(args: argparse.Namespace) -> int:
    cfg = _load_pipeline_config(args)
    root, _, _ = _solidity_pipeline(args.input, cfg)
    written = _write(args.out / f"{_stem(args.input)}.ast.json", ast_to_json(root))
    print(f"wrote {written}")
    return 0


def _load_ast_artifact(path: Path) -> AstNode:
    try:
        return ast_from_json(_read_text(path))
    except ContractAlignError as exc:
        raise _located(path, exc) from exc


def _cmd_describe(args: argparse.Namespace) -> int:
    cfg = _load_pipeline_config(args)
    if args.input.name.endswith(".json"):
        root = _load_ast_artifact(args.input)
        structure = describe_contract(root, cfg.templates)
    else:
        _, structure, _ = _solidity_pipeline(args.input, cfg)
    _write(args.out / f"{_stem(args.input)}.semantic.json", semantic_to_json(structure))
    print(semantic_listing(structure), end="")
    return 0


def _cmd_graph(args: argparse.Namespace) -> int:
    cfg = _load_pipeline_config(args)
    try:
        doc = json.loads(_read_text(args.input))
    except json.JSONDecodeError as exc:
        raise _located(args.input, SchemaViolation(f"not valid JSON: {exc}", "$")) from exc

    if isinstance(doc, dict) and "clauses" in doc:
        try:
            pre = clauses_from_json(doc)
            entities = extract_entities(pre, cfg.lexicons)
            relations = extract_relations(pre, entities, cfg.lexicons)
            graph = build_graph("econtract", entities, relations)
        except ContractAlignError as exc:
            raise _located(args.input, exc) from exc
    elif isinstance(doc, dict) and "nodeType" in doc:
        try:
            root = ast_from_json(doc)
            structure = describe_contract(root, cfg.templates)
            graph = graph_from_semantic(structure, root)
        except ContractAlignError as exc:
            raise _located(args.input, exc) from exc
    else:
        raise _located(args.input, SchemaViolation("neither a clauses nor an AST artifact", "$"))

    written = _write(args.out / f"{_stem(args.input)}.{graph.side}.kg.json", export_json(graph))
    print(f"wrote {written} ({len(graph.nodes)} nodes, {len(graph.edges)} edges)")
    if args.dot:
        dot_path = _write(args.out / f"{_stem(args.input)}.{graph.side}.dot", export_dot(graph))
        print(f"wrote {dot_path}")
    return 0


def _cmd_compare(args: argparse.Namespace) -> int:
    cfg = _load_pipeline_config(args)
    graphs = []
    for path in (args.econtract_kg, args.smartcontract_kg):
        try:
            graphs.append(import_json(_read_text(path)))
        except ContractAlignError as exc:
            raise _located(path, exc) from exc
    g_e, g_s = graphs
    report = compute_discrepancy(g_e, g_s, cfg.matching)
    _write(args.out / f"{_stem(args.econtract_kg)}.report.json", report_json(report, cfg.matching))
    print(render_table(report, g_e, g_s), end="")
    return 0 if report.aligned else 1


# ----------------------------------------------------------------------
# argument parsing
# ----------------------------------------------------------------------


def _add_common(sub: argparse.ArgumentParser, config: bool = True) -> None:
    sub.add_argument("--out", type=Path, default=Path("."), help="directory for artifacts")
    if config:
        sub.add_argument("--config", type=Path, help="TOML override file")


def _add_thresholds(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--tau", type=float, help="entity match threshold (default 0.5)")
    sub.add_argument("--tau-p", dest="tau_p", type=float, help="predicate match threshold (default 0.3)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="contractalign",
        description="Validate a Solidity contract against its natural-language e-contract "
        "by comparing knowledge graphs built from each side.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    validate = sub.add_parser("validate", help="run the full pipeline and print the report")
    validate.add_argument("--econtract", required=True, type=Path, help="e-contract text file")
    validate.add_argument("--sol", required=True, type=Path, help="Solidity source file")
    _add_common(validate)
    _add_thresholds(validate)
    validate.add_argument(
        "--emit",
        default=",".join(EMIT_CHOICES),
        help="comma list of artifacts to write: ast,kg,dot,report (default: all)",
    )
    validate.set_defaults(func=_cmd_validate)

    pe = sub.add_parser("parse-econtract", help="segment an e-contract into clauses")
    pe.add_argument("input", type=Path)
    _add_common(pe)
    pe.set_defaults(func=_cmd_parse_econtract)

    ps = sub.add_parser("parse-sol", help="parse Solidity and write the AST as JSON")
    ps.add_argument("input", type=Path)
    _add_common(ps)
    ps.set_defaults(func=_cmd_parse_sol)

    de = sub.add_parser("describe", help="describe an AST (.ast.json or .sol) in plain language")
    de.add_argument("input", type=Path)
    _add_common(de)
    de.set_defaults(func=_cmd_describe)

    gr = sub.add_parser("graph", help="build a knowledge graph from a clauses or AST artifact")
    gr.add_argument("input", type=Path)
    gr.add_argument("--dot", action="store_true", help="also write DOT output")
    _add_common(gr)
    gr.set_defaults(func=_cmd_graph)

    cp = sub.add_parser("compare", help="compare two knowledge-graph JSON files")
    cp.add_argument("econtract_kg", type=Path, help="graph treated as the e-contract side")
    cp.add_argument("smartcontract_kg", type=Path, help="graph treated as the smart-contract side")
    _add_common(cp)
    _add_thresholds(cp)
    cp.set_defaults(func=_cmd_compare)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ContractAlignError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
