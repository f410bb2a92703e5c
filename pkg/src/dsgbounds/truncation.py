"""Finite-dimensional models k[x]/((F) + m^N) of a local ring k[[x]]/(F).

Every ideal is handled as a subspace of the truncated algebra.  A result is
*certified* when some power m^L with L < N lies in the ideal: by Nakayama the
truncation then cannot see the difference between the ideal and its image,
so colength, Loewy length and generator counts are those of the local ring.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .errors import Inconclusive, UnitIdealError
from .field import CoefficientField
from .linalg import Subspace
from .poly import Polynomial, grevlex_key, monomials_below

DEFAULT_SCHEDULE = (4, 6, 10, 16, 24)


@dataclass(frozen=True)
class TruncationCertificate:
    L: int | None
    N: int

    @property
    def certified(self) -> bool:
        return self.L is not None and self.L < self.N

    def to_dict(self):
        return {"L": self.L, "N": self.N, "certified": self.certified}


@dataclass(frozen=True)
class Certified:
    """An integer invariant together with the truncation certificate behind it."""
    value: int
    certificate: TruncationCertificate

    @property
    def certified(self) -> bool:
        return self.certificate.certified

    @property
    def N(self) -> int:
        return self.certificate.N


class TruncatedAlgebra:
    """k[x_1..x_n]/((F) + m^N) with a standard-monomial basis.

    Monomials of degree < N are the ambient columns, numbered in ascending
    grevlex order, so each relation's pivot is its lowest-degree term.  The
    monomials that are never pivots form ``basis``; ``normal_form`` maps a
    monomial to its coordinates on that basis.
    """

    def __init__(self, field: CoefficientField, nvars: int, defining: Sequence[Polynomial], N: int):
        if N < 1:
            raise ValueError("truncation order must be at least 1")
        defining = [f for f in defining if not f.is_zero()]
        for f in defining:
            if f.nvars != nvars or f.field != field:
                raise ValueError("defining polynomial lives in a different ring")
            if f.constant_term():
                raise UnitIdealError("unit in defining ideal: the quotient is zero",
                                     polynomial=f.to_string())
        self.field = field
        self.nvars = nvars
        self.N = N
        self.defining = tuple(defining)
        monos = monomials_below(nvars, N)
        self.monomials = monos
        self.column = {m: i for i, m in enumerate(monos)}

        rel = Subspace(field, len(monos))
        for f in defining:
            o = f.order()
            for u in monomials_below(nvars, N - o):
                row = {}
                for m, c in f.terms.items():
                    mm = tuple(a + b for a, b in zip(m, u))
                    if sum(mm) < N:
                        row[self.column[mm]] = c
                if row:
                    rel.add(row)
        self._relations = rel
        self.basis = [m for i, m in enumerate(monos) if not rel.is_pivot(i)]
        self.basis.sort(key=grevlex_key)
        self.index = {m: i for i, m in enumerate(self.basis)}
        self._nf: dict = {}
        for i, m in enumerate(monos):
            if m in self.index:
                self._nf[m] = {self.index[m]: field.one}
            else:
                r = rel.reduce({i: field.one})
                self._nf[m] = {self.index[monos[c]]: v for c, v in r.items()}
        self.var_action = []
        for i in range(nvars):
            act = []
            for b in self.basis:
                bb = list(b)
                bb[i] += 1
                bb = tuple(bb)
                act.append(self._nf.get(bb, {}) if sum(bb) < N else {})
            self.var_action.append(act)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def normal_form(self, m) -> dict:
        """Coordinates of the monomial ``m`` (zero if deg m >= N)."""
        m = tuple(m)
        if sum(m) >= self.N:
            return {}
        return self._nf[m]

    def reduce(self, f: Polynomial) -> dict:
        """Coordinates of the class of ``f``."""
        out: dict = {}
        for m, c in f.terms.items():
            if sum(m) >= self.N:
                continue
            for k, v in self._nf[m].items():
                nv = out.get(k, 0) + c * v
                if nv:
                    out[k] = nv
                else:
                    out.pop(k)
        return out

    def lift(self, vec: dict) -> Polynomial:
        """The polynomial supported on standard monomials with these coordinates."""
        return Polynomial(self.field, self.nvars, {self.basis[k]: v for k, v in vec.items()})

    def mul_var(self, i: int, vec: dict) -> dict:
        act = self.var_action[i]
        out: dict = {}
        for k, c in vec.items():
            for j, v in act[k].items():
                nv = out.get(j, 0) + c * v
                if nv:
                    out[j] = nv
                else:
                    out.pop(j)
        return out

    def mul_poly(self, g: Polynomial, vec: dict) -> dict:
        """Coordinates of g times the element ``vec``."""
        out: dict = {}
        N = self.N
        nf = self._nf
        gterms = [(m, c) for m, c in g.terms.items() if sum(m) < N]
        for k, a in vec.items():
            b = self.basis[k]
            for m, c in gterms:
                mm = tuple(x + y for x, y in zip(m, b))
                if sum(mm) >= N:
                    continue
                s = a * c
                for j, v in nf[mm].items():
                    nv = out.get(j, 0) + s * v
                    if nv:
                        out[j] = nv
                    else:
                        out.pop(j)
        return out

    def monomials_of_degree(self, d: int):
        return [m for m in self.monomials if sum(m) == d]

    def __repr__(self):
        return f"TruncatedAlgebra({self.field}, n={self.nvars}, N={self.N}, dim={self.dim})"


def build_truncation(F: Sequence[Polynomial], N: int, field: CoefficientField | None = None,
                     nvars: int | None = None) -> TruncatedAlgebra:
    F = list(F)
    if field is None or nvars is None:
        if not F:
            raise ValueError("field and nvars are required when F is empty")
        field, nvars = F[0].field, F[0].nvars
    return TruncatedAlgebra(field, nvars, F, N)


class IdealSpan:
    """An ideal of a truncated algebra, stored as its (variable-closed) span."""

    def __init__(self, parent: TruncatedAlgebra, gens: Sequence[Polynomial], span: Subspace | None = None):
        self.parent = parent
        self.gens = tuple(gens)
        if span is None:
            span = Subspace(parent.field, parent.dim)
            queue = [parent.reduce(g) for g in self.gens]
            while queue:
                r = span.add(queue.pop())
                if r is not None:
                    for i in range(parent.nvars):
                        queue.append(parent.mul_var(i, r))
        self.span = span
        self._L = None

    @property
    def dim(self) -> int:
        return self.span.dim

    @property
    def is_unit(self) -> bool:
        return self.parent.dim > 0 and self.span.dim == self.parent.dim

    def contains(self, f: Polynomial) -> bool:
        return self.span.contains(self.parent.reduce(f))

    def basis_vectors(self) -> list[dict]:
        return self.span.basis()

    def certificate(self) -> TruncationCertificate:
        """Least L < N with m^L inside the span (None when there is none)."""
        if self._L is None:
            T = self.parent
            found = None
            for L in range(T.N):
                if all(self.span.contains(T.normal_form(m)) for m in T.monomials_of_degree(L)):
                    found = L
                    break
            self._L = (found,)
        return TruncationCertificate(self._L[0], self.parent.N)

    def standard_monomials(self) -> list:
        """Basis monomials of parent that stay independent modulo the ideal."""
        return [self.parent.basis[i] for i in range(self.parent.dim) if not self.span.is_pivot(i)]

    def __repr__(self):
        return f"IdealSpan(dim={self.dim} / {self.parent.dim}, N={self.parent.N})"


def ideal_span(T: TruncatedAlgebra, gens: Sequence[Polynomial]) -> IdealSpan:
    for g in gens:
        if g.nvars != T.nvars or g.field != T.field:
            raise ValueError("generator lives in a different ring")
    return IdealSpan(T, gens)


def maximal_ideal(T: TruncatedAlgebra) -> IdealSpan:
    return IdealSpan(T, [Polynomial.var(T.field, T.nvars, i) for i in range(T.nvars)])


def product_span(I: IdealSpan, gens: Iterable[Polynomial]) -> Subspace:
    """Span of (ideal generated by gens) * I, using that I's span is an ideal."""
    T = I.parent
    S = Subspace(T.field, T.dim)
    vecs = I.basis_vectors()
    for g in gens:
        for v in vecs:
            S.add(T.mul_poly(g, v))
    return S


def colength(I: IdealSpan) -> Certified:
    return Certified(I.parent.dim - I.dim, I.certificate())


def loewy_length(I: IdealSpan) -> Certified:
    """Least n >= 1 with m^n inside I; 0 for the unit ideal (R/I = 0)."""
    cert = I.certificate()
    if not cert.certified:
        raise Inconclusive("inconclusive: raise truncation order", N=I.parent.N)
    return Certified(max(cert.L, 1) if not I.is_unit else 0, cert)


def min_num_gens(I: IdealSpan) -> Certified:
    """dim I/mI, which by Nakayama is the minimal number of generators."""
    T = I.parent
    mI = product_span(I, [Polynomial.var(T.field, T.nvars, i) for i in range(T.nvars)])
    return Certified(I.dim - mI.dim, I.certificate())


def ideal_power(I: IdealSpan, t: int) -> IdealSpan:
    if t < 1:
        raise ValueError("power must be positive")
    P = I
    for _ in range(t - 1):
        P = _times(P, I)
    return P


def _times(P: IdealSpan, I: IdealSpan) -> IdealSpan:
    T = I.parent
    span = product_span(P, I.gens)
    gens = []
    for a in P.gens:
        for b in I.gens:
            gens.append((a * b).truncate(T.N))
    return IdealSpan(T, _dedupe(gens), span=span)


def _dedupe(polys):
    seen = set()
    out = []
    for p in polys:
        if not p.is_zero() and p not in seen:
            seen.add(p)
            out.append(p)
    return out


def power_chain(I: IdealSpan, top: int) -> list[IdealSpan]:
    """[I^1, ..., I^top] computed incrementally."""
    out = [I]
    while len(out) < top:
        out.append(_times(out[-1], I))
    return out


def certify(compute: Callable[[int], Certified], schedule: Sequence[int] = DEFAULT_SCHEDULE):
    """Run ``compute(N)`` along the schedule and return the first certified result."""
    schedule = list(schedule)
    if not schedule or any(b <= a for a, b in zip(schedule, schedule[1:])):
        raise ValueError("schedule must be nonempty and strictly increasing")
    last = None
    for N in schedule:
        try:
            res = compute(N)
        except Inconclusive:
            continue
        last = res
        if res.certified:
            return res
    raise Inconclusive("inconclusive: no certificate along the truncation schedule",
                       schedule=schedule, last_N=None if last is None else last.N)


class LocalRing:
    """A local ring k[[x]]/(F) with cached truncations."""

    def __init__(self, field: CoefficientField, nvars: int, defining: Sequence[Polynomial],
                 schedule: Sequence[int] = DEFAULT_SCHEDULE):
        self.field = field
        self.nvars = nvars
        self.defining = tuple(defining)
        self.schedule = tuple(schedule)
        self._cache: dict[int, TruncatedAlgebra] = {}
        for f in self.defining:
            if not f.is_zero() and f.constant_term():
                raise UnitIdealError("unit in defining ideal: the quotient is zero",
                                     polynomial=f.to_string())

    def truncation(self, N: int) -> TruncatedAlgebra:
        T = self._cache.get(N)
        if T is None:
            T = TruncatedAlgebra(self.field, self.nvars, self.defining, N)
            self._cache[N] = T
        return T

    def ideal(self, gens: Sequence[Polynomial], N: int) -> IdealSpan:
        return ideal_span(self.truncation(N), gens)

    def var_polys(self) -> list[Polynomial]:
        return [Polynomial.var(self.field, self.nvars, i) for i in range(self.nvars)]

    def certified(self, gens, invariant: Callable[[IdealSpan], Certified], schedule=None) -> Certified:
        return certify(lambda N: invariant(self.ideal(gens, N)), schedule or self.schedule)

    def colength(self, gens, schedule=None) -> Certified:
        return self.certified(gens, colength, schedule)

    def loewy_length(self, gens, schedule=None) -> Certified:
        return self.certified(gens, loewy_length, schedule)

    def min_num_gens(self, gens, schedule=None) -> Certified:
        return self.certified(gens, min_num_gens, schedule)

    def length(self, schedule=None) -> Certified:
        """ℓ(R), certified only when R is artinian (m^L ⊆ (F))."""
        return self.certified([], colength, schedule)
