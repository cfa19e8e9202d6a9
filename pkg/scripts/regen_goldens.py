#!/usr/bin/env python3
"""Regenerate the golden fixtures under tests/fixtures/golden/.

Only run this after deliberately changing extraction rules, graph rules, or
serialization, and re-audit the diff by hand before committing: the goldens
are the frozen record of what the pipeline is supposed to produce.
"""

import contextlib
import io
import sys
import tempfile
from pathlib import Path

from contractalign.cli import main as cli_main

ROOT = Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "tests" / "fixtures"
GOLDEN = FIXTURES / "golden"

ARTIFACTS = (
    "rental_agreement.ast.json",
    "rental_agreement.econtract.kg.json",
    "rental_agreement.smartcontract.kg.json",
    "rental_agreement.report.json",
)


def run() -> int:
    with tempfile.TemporaryDirectory() as tmp:
        with contextlib.redirect_stdout(io.StringIO()):
            code = cli_main([
                "validate",
                "--econtract", str(FIXTURES / "rental_agreement.txt"),
                "--sol", str(FIXTURES / "rental_agreement.sol"),
                "--out", tmp,
            ])
        if code not in (0, 1):
            print(f"pipeline failed with exit code {code}", file=sys.stderr)
            return code
        GOLDEN.mkdir(parents=True, exist_ok=True)
        for name in ARTIFACTS:
            content = (Path(tmp) / name).read_bytes()
            target = GOLDEN / name
            changed = not target.exists() or target.read_bytes() != content
            target.write_bytes(content)
            print(f"{'updated' if changed else 'unchanged'} {target.relative_to(ROOT)}")
    return 0


if __name__ == "__main__":
    sys.exit(run())
