"""Pragma extraction, version constraints, and dialect selection."""

import pytest
from hypothesis import given, strategies as st

from contractalign import MalformedPragma, MissingPragma, UnsupportedVersion
from contractalign.solidity import (
    DIALECT_V08,
    SoliditySource,
    VersionConstraint,
    VersionOperator,
    extract_pragma_version,
    parse_constraint,
    select_dialect,
)


def test_caret_pragma_from_listing(rental_ast):
    del rental_ast  # fixture just proves the file parses
    source = SoliditySource(open("tests/fixtures/rental_agreement.sol").read())
    constraint = extract_pragma_version(source)
    assert constraint.operator is VersionOperator.CARET
    assert constraint.base == (0, 8, 0)


def test_accepts_raw_string_input():
    constraint = extract_pragma_version("pragma solidity 0.8.19;\ncontract C {}")
    assert constraint.operator is VersionOperator.EXACT
    assert constraint.base == (0, 8, 19)


def test_range_constraint():
    constraint = parse_constraint(">=0.8.2")
    assert constraint.operator is VersionOperator.RANGE_NONE
    assert constraint.bounds() == ((0, 8, 2), None)


def test_missing_pragma():
    with pytest.raises(MissingPragma):
        extract_pragma_version("contract C {}")


@pytest.mark.parametrize("text", ["banana", "^0.8", "0.8", ">0.8.0", "=0.8.0", "^ 0 . 8 . 0"])
def test_malformed_constraints(text):
    with pytest.raises(MalformedPragma):
        parse_constraint(text)


def test_old_version_is_unsupported():
    constraint = extract_pragma_version("pragma solidity ^0.4.24;")
    with pytest.raises(UnsupportedVersion) as err:
        select_dialect(constraint)
    assert "^0.4.24" in str(err.value)
    assert "0.8.0" in str(err.value)  # message names the supported range


def test_next_major_is_unsupported():
    with pytest.raises(UnsupportedVersion):
        select_dialect(parse_constraint("0.9.0"))


def test_caret_zero_eight_selects_v08():
    assert select_dialect(parse_constraint("^0.8.0")) is DIALECT_V08
    assert select_dialect(parse_constraint("0.8.19")) is DIALECT_V08
    # open-ended lower bound still intersects the supported window
    assert select_dialect(parse_constraint(">=0.8.0")) is DIALECT_V08


def test_caret_bounds():
    assert parse_constraint("^0.8.1").bounds() == ((0, 8, 1), (0, 9, 0))
    assert parse_constraint("^1.2.3").bounds() == ((1, 2, 3), (2, 0, 0))
    assert parse_constraint("0.8.7").bounds() == ((0, 8, 7), (0, 8, 8))


_versions = st.tuples(
    st.integers(min_value=0, max_value=9),
    st.integers(min_value=0, max_value=20),
    st.integers(min_value=0, max_value=30),
)


@given(op=st.sampled_from(list(VersionOperator)), version=_versions)
def test_constraint_text_round_trip(op, version):
    constraint = VersionConstraint(op, *version)
    assert parse_constraint(constraint.text()) == constraint


@given(op=st.sampled_from(["^", ">=", ""]), version=_versions)
def test_pragma_extraction_round_trip(op, version):
    text = f"pragma solidity {op}{version[0]}.{version[1]}.{version[2]};"
    constraint = extract_pragma_version(text)
    assert constraint.base == version
    assert constraint.text() == f"{op}{version[0]}.{version[1]}.{version[2]}"
