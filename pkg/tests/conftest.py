import sys
from pathlib import Path

import pytest

from contractalign import (
    EContractDocument,
    PipelineConfig,
    build_graph,
    describe_contract,
    extract_entities,
    extract_relations,
    graph_from_semantic,
    preprocess,
)
from contractalign.solidity import SoliditySource, parse, select_dialect, extract_pragma_version

sys.path.insert(0, str(Path(__file__).parent))

FIXTURES = Path(__file__).parent / "fixtures"
GOLDEN = FIXTURES / "golden"


def read_fixture(name: str) -> str:
    return (FIXTURES / name).read_text()


def parse_fixture(name: str):
    src = SoliditySource(read_fixture(name), source_name=name)
    dialect = select_dialect(extract_pragma_version(src))
    return parse(src, dialect)


@pytest.fixture(scope="session")
def config() -> PipelineConfig:
    return PipelineConfig()


@pytest.fixture(scope="session")
def rental_text() -> str:
    return read_fixture("rental_agreement.txt")


@pytest.fixture(scope="session")
def rental_clauses(rental_text):
    return preprocess(EContractDocument(rental_text, "rental_agreement.txt"))


@pytest.fixture(scope="session")
def rental_entities(rental_clauses, config):
    return extract_entities(rental_clauses, config.lexicons)


@pytest.fixture(scope="session")
def e_graph(rental_clauses, rental_entities, config):
    relations = extract_relations(rental_clauses, rental_entities, config.lexicons)
    return build_graph("econtract", rental_entities, relations)


@pytest.fixture(scope="session")
def rental_ast():
    return parse_fixture("rental_agreement.sol")


@pytest.fixture(scope="session")
def rental_structure(rental_ast, config):
    return describe_contract(rental_ast, config.templates)


@pytest.fixture(scope="session")
def s_graph(rental_structure, rental_ast):
    return graph_from_semantic(rental_structure, rental_ast)


@pytest.fixture(scope="session")
def control_ast():
    return parse_fixture("control_flow.sol")


@pytest.fixture(scope="session")
def full_ast():
    return parse_fixture("rental_agreement_full.sol")


@pytest.fixture(scope="session")
def full_graph(full_ast, config):
    structure = describe_contract(full_ast, config.templates)
    return graph_from_semantic(structure, full_ast)
