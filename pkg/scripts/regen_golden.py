"""Rewrite the golden bounds reports of the ADE corpus.

The frozen ``*.expected.json`` invariants are hand-maintained and are not
touched; this script refuses to write a report that disagrees with them.

    python3 scripts/regen_golden.py [--check]
"""

import argparse
import sys
from pathlib import Path

from dsgbounds.suites import ADE_NAMES, bounds_json, load_ade_corpus

CORPUS = Path(__file__).resolve().parents[1] / "src" / "dsgbounds" / "corpus" / "ade"


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--check", action="store_true", help="only compare, exit 1 on any difference")
    args = ap.parse_args()
    status = 0
    for (doc, exp), name in zip(load_ade_corpus(), ADE_NAMES):
        text = bounds_json(doc)
        import json
        rep = json.loads(text)
        got = (rep["nu"], rep["ll"], rep["e_reduction"], rep["bound_thm1"], rep["bound_thm2"], rep["bound_bfk"])
        want = (exp["nu"], exp["ll"], exp["e"], exp["bound_thm1"], exp["bound_thm2"], exp["bound_bfk"])
        if got != want:
            print(f"{name}: report {got} disagrees with expected {want}; not written")
            status = 1
            continue
        path = CORPUS / f"{name}.report.json"
        old = path.read_text(encoding="utf-8") if path.exists() else None
        if args.check:
            if old != text:
                print(f"{name}: golden report differs")
                status = 1
        elif old != text:
            path.write_text(text, encoding="utf-8")
            print(f"{name}: written")
    return status


if __name__ == "__main__":
    sys.exit(main())
