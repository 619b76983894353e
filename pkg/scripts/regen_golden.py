"""Rewrite tests/golden/*.json from the current CLI output."""

import contextlib
import io
import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "tests"))

from golden_cases import CASES, GOLDEN, ROOT  # noqa: E402

from fairalloc.cli import main  # noqa: E402


def run(argv):
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = main(argv)
    if code:
        raise SystemExit(f"{' '.join(argv)} exited {code}")
    return buf.getvalue()


if __name__ == "__main__":
    os.chdir(ROOT)
    for name, argv in CASES.items():
        (GOLDEN / f"{name}.json").write_text(run(argv), encoding="utf-8", newline="\n")
        print(f"wrote {name}.json")
