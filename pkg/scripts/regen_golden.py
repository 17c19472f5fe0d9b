"""Rewrite tests/golden/ from the current CLI.  Review the diff before committing."""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "tests"))

from cli_cases import GOLDEN, cases, run  # noqa: E402


def main():
    GOLDEN.mkdir(exist_ok=True)
    for name, argv in cases():
        (GOLDEN / f"{name}.txt").write_text(run(argv))
    print(f"wrote {len(cases())} golden files to {GOLDEN}")


if __name__ == "__main__":
    main()
