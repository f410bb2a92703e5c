"""Independent oracles: dense row reduction over QQ and brute-force stable maps.

Nothing here imports the package.  Polynomials are dicts exponent -> int
(or Fraction); row reduction is sympy's DomainMatrix over QQ.  The order N
for I^t comes from m^L in I giving m^(tL) in I^t, so each length is a
single rank computation.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, combinations_with_replacement

from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix


def pmul(a, b):
    out = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(i + j for i, j in zip(ea, eb))
            out[e] = out.get(e, 0) + ca * cb
    return {e: c for e, c in out.items() if c}


def padd(a, b, s=1):
    out = dict(a)
    for e, c in b.items():
        out[e] = out.get(e, 0) + s * c
    return {e: c for e, c in out.items() if c}


def pdiff(a, i):
    out = {}
    for e, c in a.items():
        if e[i]:
            f = list(e)
            f[i] -= 1
            out[tuple(f)] = c * e[i]
    return out


def order(a):
    return min(sum(e) for e in a)


def parse(text, n):
    """Sums of terms like ``-3*x^2*y``; variables x, y, z in that order."""
    names = "xyz"[:n]
    out = {}
    for sign, body in re.findall(r"([+-]?)\s*([^+-]+)", text.replace(" ", "")):
        c = -1 if sign == "-" else 1
        e = [0] * n
        for f in body.split("*"):
            if f.isdigit():
                c *= int(f)
            else:
                v, _, k = f.partition("^")
                e[names.index(v)] += int(k or 1)
        out = padd(out, {tuple(e): c})
    return out


def monomials(n, lo, hi):
    out = []
    for d in range(lo, hi):
        for c in combinations_with_replacement(range(n), d):
            e = [0] * n
            for i in c:
                e[i] += 1
            out.append(tuple(e))
    return out


class Dense:
    """QQ[x]/m^N with ideals given by generators (plus the relations F)."""

    def __init__(self, n, F, N):
        self.n, self.F, self.N = n, list(F), N
        self.monos = monomials(n, 0, N)
        self.index = {e: i for i, e in enumerate(self.monos)}

    def rows(self, polys):
        out = []
        for g in list(polys) + self.F:
            if not g:
                continue
            for m in monomials(self.n, 0, self.N - order(g)):
                row = {}
                for e, c in g.items():
                    f = tuple(i + j for i, j in zip(e, m))
                    if sum(f) < self.N:
                        row[self.index[f]] = c
                if row:
                    out.append(row)
        return out

    def rank(self, rows):
        if not rows:
            return 0
        dense = [[QQ(0)] * len(self.monos) for _ in rows]
        for r, row in zip(dense, rows):
            for k, c in row.items():
                r[k] = QQ(c.numerator, c.denominator) if isinstance(c, Fraction) else QQ(c)
        return DomainMatrix(dense, (len(rows), len(self.monos)), QQ).rank()

    def dim(self, polys):
        return self.rank(self.rows(polys))

    def colength(self, polys):
        return len(self.monos) - self.dim(polys)

    def least_power(self, polys):
        rows = self.rows(polys)
        base = self.rank(rows)
        for L in range(self.N):
            extra = [{self.index[m]: 1} for m in monomials(self.n, L, L + 1)]
            if self.rank(rows + extra) == base:
                return L
        return None


def power_gens(I, t):
    return [_prod(c) for c in combinations_with_replacement(I, t)]


def _prod(ps):
    out = ps[0]
    for p in ps[1:]:
        out = pmul(out, p)
    return out


def jacobian(n, F):
    h = len(F)
    M = [[pdiff(f, j) for j in range(n)] for f in F]
    out = []
    for rows in combinations(range(len(F)), h):
        for cols in combinations(range(n), h):
            m = det([[M[r][c] for c in cols] for r in rows])
            if m:
                out.append(m)
    return out


def det(A):
    if len(A) == 1:
        return A[0][0]
    out = {}
    for j in range(len(A)):
        minor = [row[:j] + row[j + 1:] for row in A[1:]]
        out = padd(out, pmul(A[0][j], det(minor)), -1 if j % 2 else 1)
    return out


def invariants(n, F, I, n_max=None):
    """L, nu, ll, colength and e of an m-primary ideal I of QQ[[x]]/(F)."""
    d = n - len(F)
    L = None
    for N in (4, 6, 8, 10, 12, 14):
        L = Dense(n, F, N).least_power(I)
        if L is not None:
            break
    if L is None:
        raise RuntimeError("oracle: ideal not m-primary in range")
    N = L + 2
    T = Dense(n, F, N)
    mI = [pmul(g, {tuple(int(i == j) for i in range(n)): 1}) for g in I for j in range(n)]
    nu = T.dim(I) - T.dim(mI)
    if n_max is None:
        n_max = d + 2
    lengths = []
    for t in range(1, n_max + 2):
        Tt = Dense(n, F, t * max(L, 1) + 1)
        lengths.append(Tt.colength(power_gens(I, t)))
    v = lengths[-(d + 1):]
    for _ in range(d):
        v = [b - a for a, b in zip(v, v[1:])]
    return {"L": L, "nu": nu, "ll": L, "colength": lengths[0], "e": v[0], "lengths": lengths}


@lru_cache(maxsize=None)
def curve_invariants(text):
    """Invariants of the Jacobian ideal of a plane curve f(x, y)."""
    f = parse(text, 2)
    inv = dict(invariants(2, [f], jacobian(2, [f])))
    inv["bound_thm1"] = (inv["nu"] - 1 + 1) * inv["ll"] - 1
    inv["bound_thm2"] = inv["e"] - 1
    inv["bound_bfk"] = 2 * inv["ll"] - 1
    return inv


def _shift(n, p):
    """Matrix of multiplication by x on F_p[x]/(x^n) in the basis 1, x, ..., x^(n-1)."""
    return [[1 if i == j + 1 else 0 for j in range(n)] for i in range(n)]


def _mat(A, B, p):
    return [[sum(A[i][k] * B[k][j] for k in range(len(B))) % p for j in range(len(B[0]))] for i in range(len(A))]


def stable_zero_bruteforce(n, m, s, p):
    """Does x^s on M = L/(x^m), L = F_p[x]/(x^n), factor through the cover L -> M?

    Every linear map h: M -> L (p^(n*m) of them) is tried.
    """
    from itertools import product

    AF, AM = _shift(n, p), _shift(m, p)
    f = [[1 if i == j else 0 for j in range(n)] for i in range(m)]
    r = [[1 if i == j + s else 0 for j in range(m)] for i in range(m)]
    for entries in product(range(p), repeat=n * m):
        H = [list(entries[i * m:(i + 1) * m]) for i in range(n)]
        if _mat(H, AM, p) == _mat(AF, H, p) and _mat(f, H, p) == r:
            return True
    return False
