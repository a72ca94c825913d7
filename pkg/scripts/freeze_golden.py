#!/usr/bin/env python3
"""Regenerate the golden corpus (inputs + frozen expectations) in corpus/.

All expectations come from the in-repo solvers and oracles at freeze time;
rerunning this script on any machine must reproduce the committed files
byte for byte.
"""

import sys
from pathlib import Path

from subwin.golden import build_corpus


def main() -> int:
    corpus = Path(sys.argv[1]) if len(sys.argv) > 1 else (
        Path(__file__).resolve().parents[1] / "corpus"
    )
    cases = build_corpus(corpus)
    print(f"froze {len(cases)} golden case(s) in {corpus}")
    for case in cases:
        print(f"  {case.name}: rect={case.expected_rect} sum={case.expected_sum!r}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
