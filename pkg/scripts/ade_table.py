"""Print the invariants and bounds of the bundled ADE curve corpus.

    python3 scripts/ade_table.py [--field Fp:101]
"""

import argparse

from dsgbounds.field import CoefficientField
from dsgbounds.invariants import compute_bounds
from dsgbounds.parse import parse_document
from dsgbounds.suites import ADE_NAMES, _corpus_dir


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--field", default=None)
    args = ap.parse_args()
    field = CoefficientField.parse(args.field) if args.field else None
    head = ("name", "f", "L", "nu", "ll", "e", "(nu-d+1)ll-1", "e-1", "2ll-1")
    rows = []
    for name in ADE_NAMES:
        doc = parse_document((_corpus_dir() / f"{name}.ring").read_text(encoding="utf-8"), name, field)
        r = compute_bounds(doc.presentation(), seed=doc.seed)
        rows.append((name, r.relations[0], r.L, r.nu, r.ll, r.e_reduction, r.bound_thm1, r.bound_thm2, r.bound_bfk))
    widths = [max(len(str(v)) for v in col) for col in zip(head, *rows)]
    for row in (head, *rows):
        print("  ".join(str(v).rjust(w) for v, w in zip(row, widths)))


if __name__ == "__main__":
    main()
