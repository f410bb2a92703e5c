"""Verification suites: ADE corpus, multiplicity oracles, Koszul properties, stable annihilation.

Each suite returns a :class:`SuiteResult`; the CLI ``verify`` verb and the
acceptance tests both drive these.
"""

from __future__ import annotations

import json
import random
import warnings
from dataclasses import dataclass, field as dc_field
from importlib import resources

from .errors import DsgError, Inconclusive
from .field import QQ
from .invariants import (
    RingPresentation,
    compute_bounds,
    jacobian_ideal,
    multiplicity_hilbert,
    multiplicity_reduction,
)
from .koszul import (
    ModulePresentation,
    check_annihilation,
    depth_via_koszul,
    jacobian_stable_annihilation,
    koszul_homology,
    random_element,
    random_module,
    stably_zero,
    truncate_complex,
    verify_witness,
)
from .parse import InputDocument, parse_document
from .poly import Polynomial, variables
from .report import report_document, to_json
from .truncation import (
    TruncatedAlgebra,
    colength,
    ideal_span,
    loewy_length,
    min_num_gens,
    power_chain,
    product_span,
)


@dataclass
class CaseResult:
    name: str
    ok: bool
    seed: int | None = None
    detail: dict = dc_field(default_factory=dict)

    def line(self) -> str:
        seed = "" if self.seed is None else f" seed={self.seed}"
        extra = " ".join(f"{k}={v}" for k, v in self.detail.items())
        return f"[{'PASS' if self.ok else 'FAIL'}] {self.name}{seed} {extra}".rstrip()


@dataclass
class SuiteResult:
    name: str
    cases: list = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.cases)

    @property
    def failures(self) -> list:
        return [c for c in self.cases if not c.ok]

    def add(self, name, ok, seed=None, **detail):
        self.cases.append(CaseResult(name, bool(ok), seed, detail))

    def summary(self) -> str:
        return f"{self.name}: {len(self.cases) - len(self.failures)}/{len(self.cases)} passed"


# corpus

CORPORA = ("ade-curves", "oracle-random", "koszul-random", "stable-artinian")
ADE_NAMES = ("A1", "A2", "A3", "A4", "A5", "D4", "D5", "D6", "E6", "E7", "E8")


def _corpus_dir():
    return resources.files("dsgbounds") / "corpus" / "ade"


def load_ade_corpus() -> list[tuple[InputDocument, dict]]:
    """(document, expected invariants) pairs in corpus order."""
    base = _corpus_dir()
    out = []
    for name in ADE_NAMES:
        doc = parse_document((base / f"{name}.ring").read_text(encoding="utf-8"), name=name)
        expected = json.loads((base / f"{name}.expected.json").read_text(encoding="utf-8"))
        out.append((doc, expected))
    return out


def bounds_json(doc: InputDocument, seed: int | None = None) -> str:
    P = doc.presentation()
    s = doc.seed if seed is None else seed
    rep = compute_bounds(P, seed=s, n_max=doc.n_max)
    return to_json(report_document(rep, s, P.schedule, doc.n_max))


def stability_recheck(P: RingPresentation, seed: int = 0, n_max: int | None = None) -> list:
    """Recompute every certified invariant at truncation order N + 2.

    Returns (name, value at N, value at N+2) triples.
    """
    rep = compute_bounds(P, seed=seed, n_max=n_max)
    if rep.status != "ok":
        return []
    J = jacobian_ideal(P)
    R = P.local_ring()
    c = rep.certificates
    out = []

    def at(N, gens):
        return R.ideal(gens, N)

    I = at(c["isolated"]["N"] + 2, J)
    out.append(("L", rep.L, I.certificate().L))
    for key, fn in (("nu", min_num_gens), ("ll", loewy_length)):
        N2 = c[key]["N"] + 2
        v = fn(at(N2, J))
        out.append((key, getattr(rep, key), v.value if v.certified else None))
    red = multiplicity_reduction(J, P, seed=seed, n_max=n_max)
    if not red.fallback:
        N2 = red.N + 2
        q = colength(at(N2, list(red.Q)))
        out.append(("e_reduction", rep.e_reduction, q.value if q.certified else None))
        chain = power_chain(at(N2, J), red.r + 1)
        top = chain[red.r]
        QIr = ideal_span(top.parent, list(red.Q)).span if red.r == 0 else product_span(chain[red.r - 1], red.Q)
        out.append(("reduction_identity", True, QIr.dim == top.dim and top.certificate().certified))
    hil = c.get("e_hilbert")
    if hil:
        for t, (length, N) in enumerate(zip(hil["lengths"], hil["orders"])):
            chain = power_chain(at(N + 2, J), t + 1)
            v = colength(chain[t])
            out.append((f"length_J^{t + 1}", length, v.value if v.certified else None))
    return out


def ring_checks(res: SuiteResult, doc: InputDocument, seeds=range(5), runs: int = 3,
                expected: dict | None = None) -> None:
    """Append the per-ring checks for one document to ``res``."""
    P = doc.presentation()
    name = doc.name or "input"
    rep = compute_bounds(P, seed=doc.seed, n_max=doc.n_max)
    if expected is not None:
        got = {k: getattr(rep, k) for k in ("nu", "ll", "e_reduction", "e_hilbert", "bound_thm1",
                                             "bound_thm2", "bound_bfk", "L")}
        want = {"nu": expected["nu"], "ll": expected["ll"], "e_reduction": expected["e"],
                "e_hilbert": expected["e"], "bound_thm1": expected["bound_thm1"],
                "bound_thm2": expected["bound_thm2"], "bound_bfk": expected["bound_bfk"],
                "L": expected["L"]}
        res.add(f"{name} golden", rep.status == "ok" and got == want, doc.seed,
                nu=rep.nu, ll=rep.ll, e=rep.e_reduction,
                bounds=(rep.bound_thm1, rep.bound_thm2, rep.bound_bfk))
    if rep.status != "ok":
        res.add(f"{name} certified", rep.status == "regular", doc.seed, status=rep.status)
        return
    res.add(f"{name} multiplicity oracles agree", rep.e_reduction == rep.e_hilbert, doc.seed,
            e_reduction=rep.e_reduction, e_hilbert=rep.e_hilbert)
    if P.is_hypersurface:
        res.add(f"{name} bound_thm1 <= bound_bfk", rep.bound_thm1 <= rep.bound_bfk, doc.seed)
    drift = [(n, a, b) for n, a, b in stability_recheck(P, doc.seed, doc.n_max) if a != b]
    res.add(f"{name} stability at N+2", not drift, doc.seed, drift=drift or "none")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        es = {multiplicity_reduction(jacobian_ideal(P), P, seed=s, n_max=doc.n_max).e for s in seeds}
    res.add(f"{name} seed independence", len(es) == 1, None, seeds=list(seeds), values=sorted(es))
    outs = {bounds_json(doc) for _ in range(runs)}
    res.add(f"{name} deterministic report", len(outs) == 1, doc.seed, runs=runs)
    if P.dim == 0:
        st = jacobian_stable_annihilation(P, seed=doc.seed)
        res.add(f"{name} Jacobian acts stably trivially", st.value, doc.seed, cases=len(st.cases))


def ade_suite(seeds=range(5), runs: int = 3) -> SuiteResult:
    res = SuiteResult("ade-curves")
    for doc, exp in load_ade_corpus():
        ring_checks(res, doc, seeds, runs, expected=exp)
    return res


def document_suite(doc: InputDocument) -> SuiteResult:
    res = SuiteResult(doc.name or "input")
    ring_checks(res, doc)
    return res


# random rings and ideals for the multiplicity oracles

def _rand_poly(field, nvars, rng, min_deg, max_deg, nterms):
    from .poly import monomials_below
    monos = [m for m in monomials_below(nvars, max_deg + 1) if sum(m) >= min_deg]
    f = Polynomial.zero(field, nvars)
    for m in rng.sample(monos, min(nterms, len(monos))):
        f = f + Polynomial.monomial(field, nvars, m, rng.choice([1, 2, 3, -1, -2, -3]))
    return f


def random_hypersurface(rng: random.Random, field=QQ) -> RingPresentation:
    x, y = variables(field, 2)
    a, b = rng.choice([2, 3]), rng.choice([2, 3, 4])
    f = x ** a + y ** b + _rand_poly(field, 2, rng, max(a, b) + 1, max(a, b) + 2, rng.randint(0, 2))
    return RingPresentation(field, 2, (f,), complete_intersection=True)


def random_artinian(rng: random.Random, field=QQ) -> RingPresentation:
    x, y = variables(field, 2)
    a, b = rng.choice([2, 3]), rng.choice([2, 3])
    f1 = x ** a + _rand_poly(field, 2, rng, a + 1, a + 2, rng.randint(0, 2))
    f2 = y ** b + _rand_poly(field, 2, rng, b + 1, b + 2, rng.randint(0, 2))
    return RingPresentation(field, 2, (f1, f2), complete_intersection=True)


def random_mprimary_ideal(P: RingPresentation, rng: random.Random, max_L: int = 3, tries: int = 200):
    R = P.local_ring()
    for _ in range(tries):
        k = rng.randint(1, 3)
        gens = [_rand_poly(P.field, P.nvars, rng, 1, 2, rng.randint(1, 3)) for _ in range(k)]
        gens = [g for g in gens if not g.is_zero()]
        if not gens:
            continue
        try:
            c = R.colength(gens)
        except Inconclusive:
            continue
        if 1 <= c.certificate.L <= max_L:
            return gens
    raise RuntimeError("could not draw an m-primary ideal")


def random_rings(seed: int) -> list[RingPresentation]:
    rng = random.Random(seed)
    return [random_hypersurface(rng), random_artinian(rng), random_hypersurface(rng),
            random_artinian(rng), random_hypersurface(rng)]


def oracle_cases(seed: int = 0, ideals_per_ring: int = 5):
    """(ring, ideal gens, case seed) triples: 5 rings x ``ideals_per_ring`` ideals."""
    out = []
    for ri, P in enumerate(random_rings(seed)):
        for ii in range(ideals_per_ring):
            case_seed = seed * 10000 + ri * 100 + ii
            out.append((P, random_mprimary_ideal(P, random.Random(case_seed)), case_seed))
    return out


def oracle_suite(seed: int = 0, seeds=range(5), ideals_per_ring: int = 5) -> tuple[SuiteResult, SuiteResult]:
    """Reduction vs Hilbert-Samuel multiplicity, and the parameter-ideal chain."""
    eq = SuiteResult("oracle-equivalence")
    ch = SuiteResult("parameter-chain")
    for P, I, case_seed in oracle_cases(seed, ideals_per_ring):
        d = P.dim
        name = f"d={d} F=({'; '.join(P.fmt(f) for f in P.defining)}) I=({', '.join(P.fmt(g) for g in I)})"
        try:
            hil = multiplicity_hilbert(I, P, n_max=d + 2 if d else 6)
        except DsgError as exc:
            eq.add(name, False, case_seed, error=exc.message)
            continue
        R = P.local_ring()
        for s in seeds:
            with warnings.catch_warnings():
                warnings.simplefilter("ignore", RuntimeWarning)
                red = multiplicity_reduction(I, P, seed=s)
            eq.add(name, red.e == hil.e, s, e_reduction=red.e, e_hilbert=hil.e, fallback=red.fallback)
            if red.fallback:
                ch.add(name, False, s, reason="no verified reduction")
                continue
            Q = list(red.Q)
            nu = R.min_num_gens(Q)
            ll = R.loewy_length(Q)
            length = R.colength(Q)
            ok = nu.value == d and ll.value <= length.value == red.e
            ch.add(name, ok, s, nu_Q=nu.value, ll_Q=ll.value, length_Q=length.value, e=red.e)
    return eq, ch


# Koszul property suite

def random_truncated_algebra(rng: random.Random, field=QQ, max_dim: int = 12) -> TruncatedAlgebra:
    for _ in range(100):
        n = rng.randint(1, 3)
        N = rng.randint(3, 6)
        F = [_rand_poly(field, n, rng, 2, 3, rng.randint(1, 3)) for _ in range(rng.randint(0, 2))]
        F = [f for f in F if not f.is_zero()]
        T = TruncatedAlgebra(field, n, F, N)
        if 2 <= T.dim <= max_dim:
            return T
    return TruncatedAlgebra(field, 1, [], 3)


def koszul_case(case_seed: int) -> dict:
    rng = random.Random(case_seed)
    T = random_truncated_algebra(rng)
    xs = [random_element(T, rng, 1, rng.randint(1, 3)) for _ in range(rng.randint(1, 3))]
    kind = rng.random()
    if kind < 0.15:
        M = ModulePresentation.free(T, 1)
    elif kind < 0.25:
        M = ModulePresentation.residue_field(T)
    else:
        M = random_module(T, rng, 12)
    if M.dim == 0:
        M = ModulePresentation.residue_field(T)
    out = {"n": T.nvars, "N": T.N, "dimT": T.dim, "dimM": M.dim, "len_x": len(xs)}
    H = koszul_homology(xs, M)
    K = H.complex
    out["d_squared"] = K.squares_to_zero()
    out["module_valid"] = M.is_valid()
    out["annihilated"] = check_annihilation(xs, xs, M, H)
    t = depth_via_koszul(M)
    out["depth"] = t
    lo = t - len(xs)
    out["vanishing"] = all(h == 0 for i, h in H.dims.items() if i < lo or i > 0)
    euler = sum((-1) ** (-i) * h for i, h in H.dims.items())
    out["euler"] = euler == 0
    steps = truncate_complex(K)
    rng_h = K.homology_range()
    out["steps"] = len(steps)
    out["step_count"] = len(steps) == rng_h[1] - rng_h[0] + 1
    out["steps_exact"] = all(s.ok for s in steps)
    out["final_acyclic"] = all(h == 0 for h in steps[-1].Y.homology_dims().values())
    return out


KOSZUL_FLAGS = ("d_squared", "module_valid", "annihilated", "vanishing", "euler", "step_count",
                "steps_exact", "final_acyclic")


def koszul_suite(seed: int = 7, cases: int = 100) -> SuiteResult:
    res = SuiteResult("koszul-random")
    for i in range(cases):
        cs = seed * 100000 + i
        out = koszul_case(cs)
        ok = all(out[k] for k in KOSZUL_FLAGS)
        res.add(f"case {i}", ok, cs, **{k: out[k] for k in ("n", "N", "dimT", "dimM", "len_x", "depth", "steps")},
                **({"failed": [k for k in KOSZUL_FLAGS if not out[k]]} if not ok else {}))
    return res


# stable annihilation over artinian rings

def truncated_power(n: int, field=QQ) -> RingPresentation:
    x, = variables(field, 1)
    return RingPresentation(field, 1, (x ** n,), complete_intersection=True, var_names=("x",))


def stable_suite(count: int = 20, seed: int = 0) -> SuiteResult:
    res = SuiteResult("stable-artinian")
    x, y = variables(QQ, 2)
    rings = [(f"k[x]/(x^{n})", truncated_power(n)) for n in range(2, 7)]
    rings.append(("k[x,y]/(x^2, y^2)", RingPresentation(QQ, 2, (x ** 2, y ** 2), complete_intersection=True)))
    for name, P in rings:
        rep = jacobian_stable_annihilation(P, count=count, seed=seed)
        mods = len(rep.cases) // max(1, len(jacobian_ideal(P)))
        bad = [c for c in rep.cases if not (c[3] and c[4])]
        res.add(f"{name} Jacobian acts stably trivially", rep.value, seed, modules=mods,
                generators=len(jacobian_ideal(P)), failed=len(bad))
    # x on T/(x^2): zero stably over k[x]/(x^3), nonzero over k[x]/(x^4)
    for n, expect in ((3, True), (4, False)):
        P = truncated_power(n)
        T = P.local_ring().truncation(P.local_ring().length().N)
        xv = Polynomial.var(QQ, 1, 0)
        M = ModulePresentation.cyclic(T, [xv ** 2])
        r = stably_zero(xv, M)
        witness = verify_witness(xv, M, r) if r.value else r.certificate is not None
        res.add(f"x on k[x]/(x^{n}) / (x^2) stably zero is {expect}", r.value == expect and witness, None)
    return res


@dataclass(frozen=True)
class SuiteConfig:
    """Sizes and seeds of the built-in corpora."""
    seed: int | None = None             # None: each corpus uses its own default
    seeds: tuple = (0, 1, 2, 3, 4)      # multiplicity seeds per ideal / ring
    runs: int = 3                       # repeated runs for the determinism check
    ideals_per_ring: int = 5
    koszul_cases: int = 100
    modules: int = 20


def run_corpus(selector: str, seed: int | None = None, config: SuiteConfig | None = None) -> list[SuiteResult]:
    cfg = config or SuiteConfig(seed=seed)
    s = cfg.seed
    if selector == "ade-curves":
        return [ade_suite(cfg.seeds, cfg.runs)]
    if selector == "oracle-random":
        return list(oracle_suite(s or 0, cfg.seeds, cfg.ideals_per_ring))
    if selector == "koszul-random":
        return [koszul_suite(7 if s is None else s, cfg.koszul_cases)]
    if selector == "stable-artinian":
        return [stable_suite(cfg.modules, s or 0)]
    if selector == "all":
        out = []
        for name in CORPORA:
            out.extend(run_corpus(name, config=cfg))
        return out
    raise ValueError(f"unknown corpus {selector!r}; choose from {', '.join(CORPORA + ('all',))}")
