#!/usr/bin/env python3
"""Export the reference connection matrices to fixtures/appendix.json.

The output uses the matrix JSON layout of the CLI (basis plus row-major
canonical rational-function strings) in the theta-scaled convention, ready
for `kummer-pf pfaffian compare`.
"""

import json
import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from kummer_pf.appendix import appendix_matrices
from kummer_pf.pfaffian import BASIS_P2


def main() -> int:
    mats = appendix_matrices()
    payload = {
        "convention": "theta",
        "basis": [list(b) for b in BASIS_P2],
        "Mp": [e.to_text() for row in mats["p"] for e in row],
        "Mq": [e.to_text() for row in mats["q"] for e in row],
        "Mr": [e.to_text() for row in mats["r"] for e in row],
    }
    out = pathlib.Path(__file__).resolve().parents[1] / "fixtures" / "appendix.json"
    out.parent.mkdir(exist_ok=True)
    out.write_text(json.dumps(payload, indent=1), encoding="utf-8")
    print(f"wrote {out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
