#!/usr/bin/env python3
"""Run the bundled rental-agreement example end to end.

Builds both knowledge graphs from the fixtures, prints the comparison
table, and leaves every artifact (AST, graphs, DOT, report) in --out.
"""

import argparse
import sys
from pathlib import Path

from contractalign.cli import main as cli_main

FIXTURES = Path(__file__).resolve().parent.parent / "tests" / "fixtures"


def run(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", type=Path, default=Path("out"), help="artifact directory")
    parser.add_argument(
        "--full",
        action="store_true",
        help="use the extended contract and alias table that align fully",
    )
    args = parser.parse_args(argv)

    cli_args = [
        "validate",
        "--econtract", str(FIXTURES / "rental_agreement.txt"),
        "--out", str(args.out),
    ]
    if args.full:
        cli_args += [
            "--sol", str(FIXTURES / "rental_agreement_full.sol"),
            "--config", str(FIXTURES / "full_match.toml"),
        ]
    else:
        cli_args += ["--sol", str(FIXTURES / "rental_agreement.sol")]

    code = cli_main(cli_args)
    print(f"\nartifacts in {args.out}/ (exit code {code})")
    return code


if __name__ == "__main__":
    sys.exit(run())
