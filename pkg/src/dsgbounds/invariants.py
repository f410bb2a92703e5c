"""Jacobian ideal, isolated-singularity certificate, multiplicities and the bounds.

Given R = k[[x]]/(F) that is Cohen-Macaulay with an isolated singularity and
J the Jacobian ideal, the singularity category satisfies

    dim D_sg(R) <= (nu(J) - dim R + 1) * ll(R/J) - 1
    dim D_sg(R) <= e(J) - 1                          (k infinite)
    dim D_sg(R) <= 2 * ll(R/J) - 1                    (hypersurfaces)
"""

from __future__ import annotations

import random
import warnings
from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .errors import Inconclusive, InvalidPresentation, NotIsolated
from .field import CoefficientField
from .poly import Polynomial, jacobian_minors
from .truncation import (
    DEFAULT_SCHEDULE,
    Certified,
    LocalRing,
    colength,
    ideal_span,
    power_chain,
    product_span,
)

R_MAX = 6
REDRAWS = 5


@dataclass(frozen=True)
class RingPresentation:
    field: CoefficientField
    nvars: int
    defining: tuple
    declared_dim: int | None = None
    complete_intersection: bool = False
    var_names: tuple | None = None
    schedule: tuple = DEFAULT_SCHEDULE

    def __post_init__(self):
        object.__setattr__(self, "defining", tuple(self.defining))
        object.__setattr__(self, "schedule", tuple(self.schedule))
        if self.var_names is None:
            names = ("x", "y", "z", "w") if self.nvars <= 4 else tuple(f"x{i}" for i in range(self.nvars))
            object.__setattr__(self, "var_names", names[: self.nvars])
        for f in self.defining:
            if f.nvars != self.nvars or f.field != self.field:
                raise InvalidPresentation("relation lives in a different ring")
        d_ci = self.nvars - len(self.defining)
        if self.complete_intersection and self.declared_dim is not None and self.declared_dim != d_ci:
            raise InvalidPresentation(
                f"declared dimension {self.declared_dim} contradicts complete intersection dimension {d_ci}")
        if not self.complete_intersection and self.declared_dim is None:
            raise InvalidPresentation("dimension undetermined: declare dim or flag complete_intersection")
        d = self.dim
        if not 0 <= d <= self.nvars:
            raise InvalidPresentation(f"dimension {d} outside [0, {self.nvars}]")

    @property
    def dim(self) -> int:
        if self.complete_intersection:
            return self.nvars - len(self.defining)
        return self.declared_dim

    @property
    def h(self) -> int:
        return self.nvars - self.dim

    @property
    def is_hypersurface(self) -> bool:
        return len(self.defining) == 1

    def local_ring(self, schedule=None) -> LocalRing:
        return LocalRing(self.field, self.nvars, self.defining, schedule or self.schedule)

    def fmt(self, f: Polynomial) -> str:
        return f.to_string(self.var_names)


def jacobian_ideal(P: RingPresentation) -> list[Polynomial]:
    h = P.h
    m = len(P.defining)
    if not 1 <= h <= min(m, P.nvars):
        raise InvalidPresentation(f"minor size h = {h} outside [1, {min(m, P.nvars)}]", h=h)
    return jacobian_minors(P.defining, h)


@dataclass(frozen=True)
class IsolationCertificate:
    is_regular: bool
    L: int
    N: int


def check_isolated(P: RingPresentation, schedule=None) -> IsolationCertificate:
    """Certify m^L ⊆ J + (F); L = 0 means J is the unit ideal and R is regular."""
    J = jacobian_ideal(P)
    R = P.local_ring(schedule)

    try:
        res = R.certified(J, lambda I: Certified(0, I.certificate()), schedule)
    except Inconclusive:
        raise NotIsolated("not certified isolated (possibly non-isolated singularity)",
                          schedule=list(schedule or P.schedule)) from None
    cert = res.certificate
    return IsolationCertificate(cert.L == 0, cert.L, cert.N)


# Hilbert-Samuel multiplicity

@dataclass(frozen=True)
class HilbertResult:
    e: int
    lengths: tuple      # ℓ(R/I^{t+1}), t = 0..n_max
    orders: tuple       # truncation order certifying each length
    n_max: int


def _power_lengths(R: LocalRing, gens, top: int, schedule) -> tuple[list[int], list[int]]:
    lengths: list = [None] * top
    orders: list = [None] * top
    for N in schedule:
        todo = [t for t in range(top) if lengths[t] is None]
        if not todo:
            break
        chain = power_chain(R.ideal(gens, N), max(todo) + 1)
        for t in todo:
            c = colength(chain[t])
            if c.certified:
                lengths[t] = c.value
                orders[t] = N
    if any(v is None for v in lengths):
        missing = [t + 1 for t, v in enumerate(lengths) if v is None]
        raise Inconclusive("inconclusive: ideal powers not certified; extend the truncation schedule",
                           powers=missing, schedule=list(schedule))
    return lengths, orders


def _differences(values: Sequence[int], k: int) -> list[int]:
    v = list(values)
    for _ in range(k):
        v = [b - a for a, b in zip(v, v[1:])]
    return v


def multiplicity_hilbert(I: Sequence[Polynomial], P: RingPresentation, n_max: int | None = None,
                         schedule=None) -> HilbertResult:
    """d! times the leading coefficient of t -> ℓ(R/I^{t+1}).

    Lengths are computed for t = 0..n_max; the polynomial through the d+1
    points before the last must reproduce the last one, otherwise n_max is
    doubled once.
    """
    d = P.dim
    if n_max is None:
        n_max = d + 2
    if n_max < d + 2:
        raise ValueError(f"n_max must be at least dim R + 2 = {d + 2}")
    schedule = tuple(schedule or P.schedule)
    R = P.local_ring(schedule)
    for attempt in range(2):
        lengths, orders = _power_lengths(R, I, n_max + 1, schedule)
        window = lengths[n_max - d - 1:]
        if _differences(window, d + 1) == [0]:
            e = _differences(lengths[n_max - d:], d)[0]
            return HilbertResult(e, tuple(lengths), tuple(orders), n_max)
        n_max *= 2
    raise Inconclusive("increase n_max: Hilbert-Samuel function not yet polynomial",
                       n_max=n_max // 2, lengths=lengths)


# multiplicity through a parameter reduction

@dataclass(frozen=True)
class ReductionResult:
    e: int
    Q: tuple            # d generic combinations of the generators
    coefficients: tuple
    r: int | None       # reduction number witnessed: I^{r+1} = Q I^r
    N: int | None
    attempts: int
    seed: int
    fallback: bool = False
    warning: str | None = None


def _try_reduction(R: LocalRing, gens, Q, r_max: int, schedule):
    """Return (r, N) with I^{r+1} = Q I^r certified at order N, or None."""
    r = 0
    for N in schedule:
        chain = None
        while r <= r_max:
            if chain is None or len(chain) < r + 1:
                chain = power_chain(R.ideal(gens, N), r + 1)
            top = chain[r]
            if not top.certificate().certified:
                break
            if r == 0:
                QIr = ideal_span(top.parent, Q).span
            else:
                QIr = product_span(chain[r - 1], Q)
            if QIr.dim == top.dim:
                return r, N
            r += 1
        if r > r_max:
            return None
    return None


def multiplicity_reduction(I: Sequence[Polynomial], P: RingPresentation, seed: int = 0,
                           r_max: int = R_MAX, redraws: int = REDRAWS, schedule=None,
                           n_max: int | None = None) -> ReductionResult:
    """e(I) as ℓ(R/Q) for a verified reduction Q of I by dim R generic elements.

    Valid for Cohen-Macaulay R.  If no reduction is verified after the
    redraws, falls back to :func:`multiplicity_hilbert` with a warning.
    """
    I = list(I)
    d = P.dim
    F = P.field
    schedule = tuple(schedule or P.schedule)
    R = P.local_ring(schedule)
    rng = random.Random(seed)
    zero = Polynomial.zero(F, P.nvars)
    attempts = 0
    for attempt in range(1 + redraws):
        attempts += 1
        coeffs = tuple(tuple(F.random_element(rng) for _ in I) for _ in range(d))
        Q = []
        for row in coeffs:
            q = zero
            for c, g in zip(row, I):
                q = q + g * c
            Q.append(q)
        found = _try_reduction(R, I, Q, r_max, schedule)
        if found is not None:
            r, N = found
            c = colength(R.ideal(Q, N))
            if c.certified:
                return ReductionResult(c.value, tuple(Q), coeffs, r, N, attempts, seed)
        if d == 0:
            break
    msg = (f"no reduction verified after {attempts} draws (seed {seed}); "
           "falling back to the Hilbert-Samuel computation")
    warnings.warn(msg, RuntimeWarning, stacklevel=2)
    h = multiplicity_hilbert(I, P, n_max, schedule)
    return ReductionResult(h.e, (), (), None, None, attempts, seed, fallback=True, warning=msg)


# the report

@dataclass
class BoundsReport:
    status: str                     # ok | regular | not_isolated | inconclusive
    field: str
    variables: tuple
    relations: tuple
    d: int
    h: int
    jacobian_gens: tuple = ()
    is_regular: bool = False
    L: int | None = None
    nu: int | None = None
    ll: int | None = None
    e_reduction: int | None = None
    e_hilbert: int | None = None
    bound_thm1: int | None = None
    bound_thm2: int | None = None
    bound_bfk: int | None = None
    certificates: dict = dc_field(default_factory=dict)
    hypotheses: dict = dc_field(default_factory=dict)
    conclusion: str | None = None
    message: str | None = None
    warnings: list = dc_field(default_factory=list)

    def to_dict(self) -> dict:
        out = {
            "status": self.status,
            "field": self.field,
            "variables": list(self.variables),
            "relations": list(self.relations),
            "d": self.d,
            "h": self.h,
            "jacobian_gens": list(self.jacobian_gens),
            "is_regular": self.is_regular,
            "L": self.L,
            "nu": self.nu,
            "ll": self.ll,
            "e_reduction": self.e_reduction,
            "e_hilbert": self.e_hilbert,
            "bound_thm1": self.bound_thm1,
            "bound_thm2": self.bound_thm2,
            "bound_bfk": self.bound_bfk,
            "certificates": self.certificates,
            "hypotheses": self.hypotheses,
            "conclusion": self.conclusion,
            "warnings": list(self.warnings),
        }
        if self.message is not None:
            out["message"] = self.message
        return out


def _hypotheses(P: RingPresentation) -> dict:
    char0 = P.field.characteristic == 0
    return {
        "cohen_macaulay": "complete intersection" if P.complete_intersection else "asserted by input",
        "field_perfect": True,
        "field_infinite": P.field.is_infinite,
        "characteristic_zero": char0,
        "hypersurface": P.is_hypersurface,
        "applies": {
            "bound_thm1": True,
            "bound_thm2": P.field.is_infinite,
            "bound_bfk": "yes" if (P.is_hypersurface and char0)
            else ("relaxed to positive characteristic" if P.is_hypersurface else "no"),
        },
    }


def compute_bounds(P: RingPresentation, seed: int = 0, n_max: int | None = None, r_max: int = R_MAX,
                   hilbert: bool = True, schedule=None) -> BoundsReport:
    schedule = tuple(schedule or P.schedule)
    base = dict(field=P.field.name, variables=tuple(P.var_names),
                relations=tuple(P.fmt(f) for f in P.defining), d=P.dim, h=P.h)
    J = jacobian_ideal(P)
    base["jacobian_gens"] = tuple(P.fmt(g) for g in J)
    hyp = _hypotheses(P)
    try:
        iso = check_isolated(P, schedule)
    except NotIsolated as exc:
        hyp["isolated_singularity"] = "not certified"
        return BoundsReport(status="not_isolated", hypotheses=hyp, message=exc.message,
                            certificates={"isolated": {"schedule": list(schedule)}}, **base)
    hyp["isolated_singularity"] = "regular" if iso.is_regular else "certified"
    certs = {"isolated": {"L": iso.L, "N": iso.N}}
    if iso.is_regular:
        # D_sg(R) = 0; the formulas give -1 with nu(R) = 1, ll(0) = 0, e(R) = 0
        d = P.dim
        bfk = -1 if P.is_hypersurface else None
        return BoundsReport(status="regular", is_regular=True, L=0, nu=1, ll=0, e_reduction=0,
                            e_hilbert=0 if hilbert else None,
                            bound_thm1=(1 - d + 1) * 0 - 1, bound_thm2=-1, bound_bfk=bfk,
                            certificates=certs, hypotheses=hyp, conclusion="D_sg(R) = 0", **base)
    R = P.local_ring(schedule)
    warns = []
    try:
        nu = R.min_num_gens(J)
        ll = R.loewy_length(J)
        red = multiplicity_reduction(J, P, seed=seed, r_max=r_max, schedule=schedule, n_max=n_max)
        hil = multiplicity_hilbert(J, P, n_max, schedule) if hilbert else None
    except Inconclusive as exc:
        return BoundsReport(status="inconclusive", L=iso.L, certificates=certs, hypotheses=hyp,
                            message=exc.message, **base)
    certs["nu"] = {"N": nu.N, "L": nu.certificate.L}
    certs["ll"] = {"N": ll.N, "L": ll.certificate.L}
    certs["e_reduction"] = {
        "N": red.N, "r": red.r, "seed": red.seed, "attempts": red.attempts, "fallback": red.fallback,
        "Q": [P.fmt(q) for q in red.Q],
        "coefficients": [[P.field.format(c) for c in row] for row in red.coefficients],
    }
    if red.warning:
        warns.append(red.warning)
    if hil is not None:
        certs["e_hilbert"] = {"lengths": list(hil.lengths), "orders": list(hil.orders), "n_max": hil.n_max}
    d = P.dim
    b1 = (nu.value - d + 1) * ll.value - 1
    b2 = red.e - 1
    bfk = 2 * ll.value - 1 if P.is_hypersurface else None
    if hil is not None and hil.e != red.e:
        warns.append(f"multiplicity algorithms disagree: reduction {red.e}, Hilbert-Samuel {hil.e}")
    return BoundsReport(status="ok", L=iso.L, nu=nu.value, ll=ll.value, e_reduction=red.e,
                        e_hilbert=None if hil is None else hil.e, bound_thm1=b1, bound_thm2=b2,
                        bound_bfk=bfk, certificates=certs, hypotheses=hyp,
                        conclusion=f"dim D_sg(R) <= {min(b for b in (b1, b2, bfk) if b is not None)}",
                        warnings=warns, **base)
