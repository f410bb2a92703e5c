"""Command line: ``dsgbounds bounds|verify|koszul``.

Exit statuses: 0 success (including regular rings), 2 parse or usage error,
3 not certified isolated, 4 inconclusive, 5 verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from .errors import DimensionOverflow, DsgError
from .field import CoefficientField
from .invariants import compute_bounds
from .parse import parse_document, parse_int_list, parse_module_spec, parse_row
from .report import report_document, to_json, to_table

EXIT_OK, EXIT_USAGE, EXIT_NOT_ISOLATED, EXIT_INCONCLUSIVE, EXIT_SUITE = 0, 2, 3, 4, 5
STATUS_EXIT = {"ok": EXIT_OK, "regular": EXIT_OK, "not_isolated": EXIT_NOT_ISOLATED,
               "inconclusive": EXIT_INCONCLUSIVE}


class UsageError(DsgError):
    code = EXIT_USAGE
    kind = "usage_error"


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _load(args):
    field = None
    if args.field:
        try:
            field = CoefficientField.parse(args.field)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    doc = parse_document(_read(args.input), name=Path(args.input).stem if args.input != "-" else None,
                         field=field)
    if args.schedule:
        doc.schedule = parse_int_list(args.schedule)
    if args.seed is not None:
        doc.seed = args.seed
    if args.n_max is not None:
        doc.n_max = args.n_max
    return doc


def _add_common(p, input_required=True):
    if input_required:
        p.add_argument("input", help="ring document (format: 1), or '-' for stdin")
    p.add_argument("--field", help="override the coefficient field: QQ or Fp:<prime>")
    p.add_argument("--schedule", help="truncation orders, e.g. 4,6,10,16,24")
    p.add_argument("--seed", type=int, help="seed for generic combinations and random cases")
    p.add_argument("--n-max", dest="n_max", type=int, help="largest power used in the Hilbert-Samuel fit")
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="fmt", action="store_const", const="json", help="JSON output (default)")
    fmt.add_argument("--table", dest="fmt", action="store_const", const="table", help="aligned text table")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="dsgbounds", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="verb", required=True)

    b = sub.add_parser("bounds", help="certify isolation and compute the three bounds")
    _add_common(b)
    b.add_argument("--no-hilbert", action="store_true", help="skip the Hilbert-Samuel cross-check")
    b.add_argument("--timings", action="store_true", help="include wall-clock timings (breaks byte-identity)")

    v = sub.add_parser("verify", help="run verification suites on a document or built-in corpus")
    v.add_argument("input", nargs="?", help="ring document to verify")
    v.add_argument("--corpus", help="ade-curves | oracle-random | koszul-random | stable-artinian | all")
    _add_common(v, input_required=False)

    k = sub.add_parser("koszul", help="Koszul homology of a module over an artinian truncation")
    _add_common(k)
    k.add_argument("--module", help="presentation matrix: rows ';', entries ','; default the free module")
    k.add_argument("--sequence", help="comma-separated sequence; empty for the zero-length complex")
    k.add_argument("--order", type=int, help="truncation order N (default: certified artinian order)")
    return ap


def cmd_bounds(args, out) -> int:
    doc = _load(args)
    P = doc.presentation()
    t0 = time.perf_counter()
    rep = compute_bounds(P, seed=doc.seed, n_max=doc.n_max, hilbert=not args.no_hilbert)
    timings = {"total": round((time.perf_counter() - t0) * 1000)} if args.timings else None
    d = report_document(rep, doc.seed, doc.schedule, doc.n_max, timings)
    out.write(to_table(d) if args.fmt == "table" else to_json(d))
    return STATUS_EXIT[rep.status]


def cmd_verify(args, out) -> int:
    from .suites import CORPORA, document_suite, run_corpus

    if args.corpus is not None and args.input is not None:
        raise UsageError("give either a document or --corpus, not both")
    if args.input is not None:
        results = [document_suite(_load(args))]
    else:
        sel = (args.corpus or "").strip()
        if not sel:
            raise UsageError("empty corpus selector; choose from " + ", ".join(CORPORA + ("all",)))
        try:
            results = run_corpus(sel, args.seed)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    ok = all(r.ok for r in results)
    if args.fmt == "json":
        doc = {"ok": ok, "suites": [{"name": r.name, "ok": r.ok, "cases": [
            {"name": c.name, "ok": c.ok, "seed": c.seed, "detail": {k: _jsonable(v) for k, v in c.detail.items()}}
            for c in r.cases]} for r in results]}
        out.write(json.dumps(doc, sort_keys=True, indent=2) + "\n")
    else:
        for r in results:
            for c in r.cases:
                out.write(c.line() + "\n")
            out.write(r.summary() + "\n")
    return EXIT_OK if ok else EXIT_SUITE


def _jsonable(v):
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, (int, str, bool)) or v is None:
        return v
    return str(v)


def koszul_report(doc, module_text=None, sequence_text=None, order=None) -> dict:
    from .koszul import MAX_MODULE_DIM, ModulePresentation, check_annihilation, depth_via_koszul, koszul_homology
    from .truncation import TruncatedAlgebra

    P_rel = doc.relations
    if order is None:
        order = doc.order
    if order is None:
        from .truncation import LocalRing
        order = LocalRing(doc.field, len(doc.variables), P_rel, doc.schedule).length().N
    T = TruncatedAlgebra(doc.field, len(doc.variables), P_rel, order)
    rows = parse_module_spec(module_text, doc.variables, doc.field) if module_text else doc.module
    if rows:
        M = ModulePresentation.cokernel(T, rows, max_dim=MAX_MODULE_DIM)
    elif T.dim > MAX_MODULE_DIM:
        raise DimensionOverflow(f"module model would have {T.dim} > {MAX_MODULE_DIM} dimensions",
                                dim=T.dim, limit=MAX_MODULE_DIM)
    else:
        M = ModulePresentation.free(T, 1)
    if sequence_text is not None:
        xs = parse_row(sequence_text, doc.variables, doc.field)
    else:
        xs = list(doc.sequence)
    if M.dim == 0:
        raise UsageError("the module is zero")
    H = koszul_homology(xs, M)
    depth = depth_via_koszul(M)
    ann = check_annihilation(xs, xs, M, H)
    names = doc.variables
    return {
        "order": order,
        "algebra_dim": T.dim,
        "module_dim": M.dim,
        "sequence": [f.to_string(names) for f in xs],
        "homology": {str(i): H.dims.get(i, 0) for i in range(0, -len(xs) - 1, -1)},
        "depth": depth,
        "annihilated": ann,
    }


def format_koszul(r: dict) -> str:
    hs = ", ".join(f"H^{i}: {h}" for i, h in r["homology"].items())
    seq = ", ".join(r["sequence"])
    return f"{hs}, depth {r['depth']}, annihilated by ({seq}): {'yes' if r['annihilated'] else 'no'}\n"


def cmd_koszul(args, out) -> int:
    doc = _load(args)
    r = koszul_report(doc, args.module, args.sequence, args.order)
    out.write(to_json(r) if args.fmt == "json" else format_koszul(r))
    return EXIT_OK


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if args.verb == "koszul" and args.fmt is None:
        args.fmt = "text"
    try:
        return {"bounds": cmd_bounds, "verify": cmd_verify, "koszul": cmd_koszul}[args.verb](args, out)
    except BrokenPipeError:
        # downstream closed early (e.g. piped into head)
        sys.stdout = None
        return EXIT_OK
    except DsgError as exc:
        err.write(f"dsgbounds: {exc.message}\n")
        err.write(json.dumps(exc.to_dict(), sort_keys=True) + "\n")
        return exc.code if exc.code in (EXIT_USAGE, EXIT_NOT_ISOLATED, EXIT_INCONCLUSIVE) else EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
