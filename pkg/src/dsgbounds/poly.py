"""Sparse multivariate polynomials with exact coefficients.

Monomials are exponent tuples.  Terms iterate in graded reverse lexicographic
order so printing and every derived report are deterministic.
"""

from __future__ import annotations

from itertools import combinations, permutations
from typing import Iterable, Sequence

from .errors import PolynomialMismatch
from .field import CoefficientField

Monomial = tuple  # tuple[int, ...]


def degree(m: Monomial) -> int:
    return sum(m)


def grevlex_key(m: Monomial):
    """Sort key: ascending key means ascending monomial in graded revlex."""
    return (sum(m), tuple(-e for e in reversed(m)))


def monomials_of_degree(nvars: int, d: int):
    """All exponent tuples of total degree ``d``, ascending in grevlex."""
    out = []

    def rec(prefix, left, k):
        if k == nvars - 1:
            out.append(prefix + (left,))
            return
        for e in range(left, -1, -1):
            rec(prefix + (e,), left - e, k + 1)

    if nvars == 0:
        return [()] if d == 0 else []
    rec((), d, 0)
    out.sort(key=grevlex_key)
    return out


def monomials_below(nvars: int, N: int):
    """All monomials of degree < N, ascending in grevlex."""
    out = []
    for d in range(N):
        out.extend(monomials_of_degree(nvars, d))
    return out


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


class Polynomial:
    """Immutable polynomial over a :class:`CoefficientField`.

    ``terms`` maps exponent tuples to nonzero coefficients.
    """

    __slots__ = ("field", "nvars", "terms", "_hash")

    def __init__(self, field: CoefficientField, nvars: int, terms=None):
        if nvars < 1:
            raise ValueError("a polynomial needs at least one variable")
        self.field = field
        self.nvars = nvars
        clean = {}
        if terms:
            for m, c in dict(terms).items():
                m = tuple(m)
                if len(m) != nvars or any(e < 0 for e in m):
                    raise PolynomialMismatch(f"monomial {m} does not fit {nvars} variables")
                c = field(c)
                if c:
                    clean[m] = c
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, field, nvars, terms):
        # trusted constructor: terms already clean
        p = cls.__new__(cls)
        p.field = field
        p.nvars = nvars
        p.terms = terms
        p._hash = None
        return p

    # constructors
    @classmethod
    def zero(cls, field, nvars):
        return cls._raw(field, nvars, {})

    @classmethod
    def constant(cls, field, nvars, c):
        return cls(field, nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, field, nvars, i):
        if not 0 <= i < nvars:
            raise IndexError(f"variable index {i} out of range")
        m = [0] * nvars
        m[i] = 1
        return cls._raw(field, nvars, {tuple(m): field.one})

    @classmethod
    def monomial(cls, field, nvars, m, c=1):
        return cls(field, nvars, {tuple(m): c})

    # queries
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def order(self) -> int:
        """Least total degree of a term (the m-adic order)."""
        if not self.terms:
            raise ValueError("order of the zero polynomial is undefined")
        return min(sum(m) for m in self.terms)

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    def constant_term(self):
        return self.terms.get((0,) * self.nvars, self.field.zero)

    def sorted_terms(self, descending: bool = True):
        return sorted(self.terms.items(), key=lambda t: grevlex_key(t[0]), reverse=descending)

    def leading(self):
        """Leading (monomial, coefficient) under grevlex."""
        return max(self.terms.items(), key=lambda t: grevlex_key(t[0]))

    def truncate(self, N: int) -> "Polynomial":
        """Drop every term of degree >= N."""
        return Polynomial._raw(self.field, self.nvars,
                               {m: c for m, c in self.terms.items() if sum(m) < N})

    def _check(self, other: "Polynomial"):
        if self.field != other.field or self.nvars != other.nvars:
            raise PolynomialMismatch(
                f"operands live in different rings: {self.field}[{self.nvars}] vs {other.field}[{other.nvars}]",
                left=(self.field.name, self.nvars), right=(other.field.name, other.nvars))

    def _lift(self, other):
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        return Polynomial.constant(self.field, self.nvars, other)

    # arithmetic
    def __add__(self, other):
        other = self._lift(other)
        t = dict(self.terms)
        for m, c in other.terms.items():
            v = t.get(m, 0) + c
            if v:
                t[m] = v
            else:
                t.pop(m, None)
        return Polynomial._raw(self.field, self.nvars, t)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.field, self.nvars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            c = self.field(other)
            if not c:
                return Polynomial.zero(self.field, self.nvars)
            return Polynomial._raw(self.field, self.nvars, {m: v * c for m, v in self.terms.items()})
        return poly_mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative exponent")
        result = Polynomial.constant(self.field, self.nvars, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.field == other.field and self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, int):
            return self.terms == Polynomial.constant(self.field, self.nvars, other).terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field, self.nvars, frozenset(self.terms.items())))
        return self._hash

    def to_string(self, names: Sequence[str] | None = None) -> str:
        """Render in the grammar accepted by :func:`dsgbounds.parse.parse_polynomial`."""
        if names is None:
            names = [f"x{i}" for i in range(self.nvars)] if self.nvars > 1 else ["x"]
        if not self.terms:
            return "0"
        pieces = []
        for m, c in self.sorted_terms():
            text = self.field.format(c)
            neg = text.startswith("-")
            if neg:
                text = text[1:]
            factors = []
            for name, e in zip(names, m):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            if factors:
                body = "*".join(factors) if text == "1" else text + "*" + "*".join(factors)
            else:
                body = text
            pieces.append(("-" if neg else "+", body))
        sign, body = pieces[0]
        out = ("-" if sign == "-" else "") + body
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"Polynomial({self.to_string()!r}, {self.field})"


def poly_mul(a: Polynomial, b: Polynomial) -> Polynomial:
    a._check(b)
    t: dict = {}
    for ma, ca in a.terms.items():
        for mb, cb in b.terms.items():
            m = tuple(x + y for x, y in zip(ma, mb))
            t[m] = t.get(m, 0) + ca * cb
    return Polynomial._raw(a.field, a.nvars, {m: c for m, c in t.items() if c})


def poly_diff(f: Polynomial, var_index: int) -> Polynomial:
    """Formal partial derivative.  In characteristic p the coefficient may vanish."""
    if not 0 <= var_index < f.nvars:
        raise IndexError(f"variable index {var_index} out of range for {f.nvars} variables")
    t = {}
    for m, c in f.terms.items():
        e = m[var_index]
        if e == 0:
            continue
        v = c * e
        if v:
            mm = list(m)
            mm[var_index] = e - 1
            t[tuple(mm)] = v
    return Polynomial._raw(f.field, f.nvars, t)


def exact_divide(a: Polynomial, b: Polynomial) -> Polynomial:
    """Quotient a/b, raising ``ArithmeticError`` unless b divides a."""
    a._check(b)
    if b.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    lm_b, lc_b = b.leading()
    q = Polynomial.zero(a.field, a.nvars)
    r = a
    while not r.is_zero():
        lm_r, lc_r = r.leading()
        if not divides(lm_b, lm_r):
            raise ArithmeticError("inexact polynomial division")
        m = tuple(x - y for x, y in zip(lm_r, lm_b))
        t = Polynomial._raw(a.field, a.nvars, {m: a.field.div(lc_r, lc_b)})
        q = q + t
        r = r - t * b
    return q


def det_cofactor(M: Sequence[Sequence[Polynomial]]) -> Polynomial:
    n = len(M)
    if n == 1:
        return M[0][0]
    if n == 2:
        return M[0][0] * M[1][1] - M[0][1] * M[1][0]
    total = None
    for j in range(n):
        if M[0][j].is_zero():
            continue
        minor = [row[:j] + row[j + 1:] for row in M[1:]]
        term = M[0][j] * det_cofactor(minor)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    if total is None:
        return Polynomial.zero(M[0][0].field, M[0][0].nvars)
    return total


def det_bareiss(M: Sequence[Sequence[Polynomial]]) -> Polynomial:
    """Fraction-free Bareiss elimination; every division is exact."""
    A = [list(row) for row in M]
    n = len(A)
    zero = Polynomial.zero(A[0][0].field, A[0][0].nvars)
    sign = 1
    prev = Polynomial.constant(zero.field, zero.nvars, 1)
    for k in range(n - 1):
        if A[k][k].is_zero():
            for i in range(k + 1, n):
                if not A[i][k].is_zero():
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return zero
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = A[k][k] * A[i][j] - A[i][k] * A[k][j]
                A[i][j] = exact_divide(num, prev)
        prev = A[k][k]
    d = A[n - 1][n - 1]
    return d if sign > 0 else -d


def det_leibniz(M: Sequence[Sequence[Polynomial]]) -> Polynomial:
    """Permutation-sum determinant; slow, kept as an independent check."""
    n = len(M)
    total = Polynomial.zero(M[0][0].field, M[0][0].nvars)
    for perm in permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = Polynomial.constant(total.field, total.nvars, 1)
        for i, j in enumerate(perm):
            term = term * M[i][j]
            if term.is_zero():
                break
        total = total - term if inv % 2 else total + term
    return total


def determinant(M: Sequence[Sequence[Polynomial]]) -> Polynomial:
    return det_bareiss(M) if len(M) >= 4 else det_cofactor(M)


def jacobian_matrix(F: Sequence[Polynomial]):
    return [[poly_diff(f, j) for j in range(f.nvars)] for f in F]


def jacobian_minors(F: Sequence[Polynomial], h: int) -> list[Polynomial]:
    """All nonzero h x h minors of the Jacobian matrix of ``F``.

    Minors are listed by (row subset, column subset) in lexicographic order.
    """
    F = list(F)
    if not F:
        raise ValueError("no defining polynomials")
    n = F[0].nvars
    m = len(F)
    if not 1 <= h <= min(m, n):
        raise ValueError(f"minor size h={h} outside [1, {min(m, n)}]")
    Jm = jacobian_matrix(F)
    out = []
    for rows in combinations(range(m), h):
        for cols in combinations(range(n), h):
            sub = [[Jm[i][j] for j in cols] for i in rows]
            d = determinant(sub)
            if not d.is_zero():
                out.append(d)
    return out


def variables(field: CoefficientField, nvars: int) -> list[Polynomial]:
    return [Polynomial.var(field, nvars, i) for i in range(nvars)]


def as_polys(field, nvars, items: Iterable) -> list[Polynomial]:
    return [p if isinstance(p, Polynomial) else Polynomial.constant(field, nvars, p) for p in items]
