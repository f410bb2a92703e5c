"""Koszul complexes, truncation triangles and stable annihilation over artinian algebras.

Modules over a truncated algebra T are finite-dimensional vector spaces with
one commuting action matrix per variable.  Matrices are numpy object arrays
holding exact field elements.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from itertools import combinations
from typing import Sequence

import numpy as np

from .errors import ComplexError, DimensionOverflow, InvalidPresentation
from .field import CoefficientField
from .linalg import (
    Subspace,
    column_space,
    dense_columns,
    dense_rows,
    dense_to_vec,
    equal_matrices,
    identity,
    is_zero_matrix,
    matmul,
    matrix_kernel,
    matrix_rank,
    solve,
    zeros,
)
from .poly import Polynomial
from .truncation import TruncatedAlgebra

MAX_MODULE_DIM = 4096


class ModulePresentation:
    """A finitely generated T-module as a vector space with variable actions."""

    def __init__(self, parent: TruncatedAlgebra, action: Sequence[np.ndarray], origin=None,
                 generators: Sequence[dict] | None = None):
        self.parent = parent
        self.field = parent.field
        self.action = [np.asarray(A, dtype=object) for A in action]
        if len(self.action) != parent.nvars:
            raise InvalidPresentation("need one action matrix per variable")
        self.dim = self.action[0].shape[0] if self.action else 0
        self.origin = origin
        self.generators = generators
        self._mono_cache: dict = {}

    # constructors
    @classmethod
    def free(cls, T: TruncatedAlgebra, rank: int = 1) -> "ModulePresentation":
        n = T.dim
        acts = []
        for i in range(T.nvars):
            A = zeros(T.field, rank * n, rank * n)
            for blk in range(rank):
                for k, col in enumerate(T.var_action[i]):
                    for j, v in col.items():
                        A[blk * n + j, blk * n + k] = v
            acts.append(A)
        one = T.index[(0,) * T.nvars]
        gens = [{blk * n + one: T.field.one} for blk in range(rank)]
        return cls(T, acts, origin=("free", rank), generators=gens)

    @classmethod
    def cokernel(cls, T: TruncatedAlgebra, matrix: Sequence[Sequence[Polynomial]],
                 max_dim: int = MAX_MODULE_DIM) -> "ModulePresentation":
        """coker(T^a -> T^b) for a b x a matrix of polynomials."""
        b = len(matrix)
        if b == 0:
            raise InvalidPresentation("presentation matrix needs at least one row")
        a = len(matrix[0])
        if any(len(row) != a for row in matrix):
            raise InvalidPresentation("ragged presentation matrix")
        n = T.dim
        if b * n > max_dim:
            raise DimensionOverflow(f"module model would have {b * n} > {max_dim} dimensions",
                                    dim=b * n, limit=max_dim)
        cols = []
        for j in range(a):
            v = {}
            for i in range(b):
                for k, c in T.reduce(matrix[i][j]).items():
                    v[i * n + k] = c
            cols.append(v)
        return cls._quotient(T, b, cols, origin=("cokernel", [[p.to_string() for p in row] for row in matrix]))

    @classmethod
    def cyclic(cls, T: TruncatedAlgebra, gens: Sequence[Polynomial]) -> "ModulePresentation":
        """T/I for the ideal generated by ``gens``."""
        return cls.cokernel(T, [list(gens)] if gens else [[Polynomial.zero(T.field, T.nvars)]])

    @classmethod
    def residue_field(cls, T: TruncatedAlgebra) -> "ModulePresentation":
        return cls.cyclic(T, [Polynomial.var(T.field, T.nvars, i) for i in range(T.nvars)])

    @classmethod
    def _quotient(cls, T, b, vectors, origin):
        n = T.dim
        S = Subspace(T.field, b * n)

        def times_var(i, v):
            out = {}
            for c, val in v.items():
                blk, k = divmod(c, n)
                for j, w in T.var_action[i][k].items():
                    key = blk * n + j
                    nv = out.get(key, 0) + val * w
                    if nv:
                        out[key] = nv
                    else:
                        out.pop(key)
            return out

        queue = list(vectors)
        while queue:
            r = S.add(queue.pop())
            if r is not None:
                for i in range(T.nvars):
                    queue.append(times_var(i, r))
        keep = [c for c in range(b * n) if not S.is_pivot(c)]
        pos = {c: p for p, c in enumerate(keep)}
        m = len(keep)
        acts = []
        for i in range(T.nvars):
            A = zeros(T.field, m, m)
            for p, c in enumerate(keep):
                for k, v in S.reduce(times_var(i, {c: T.field.one})).items():
                    A[pos[k], p] = v
            acts.append(A)
        one = T.index[(0,) * T.nvars]
        gens = []
        for blk in range(b):
            red = S.reduce({blk * n + one: T.field.one})
            gens.append({pos[k]: v for k, v in red.items()})
        return cls(T, acts, origin=origin, generators=gens)

    # actions
    def monomial_matrix(self, m) -> np.ndarray:
        m = tuple(m)
        A = self._mono_cache.get(m)
        if A is not None:
            return A
        if sum(m) == 0:
            A = identity(self.field, self.dim)
        elif sum(m) >= self.parent.N:
            A = zeros(self.field, self.dim, self.dim)
        else:
            i = next(k for k, e in enumerate(m) if e)
            rest = list(m)
            rest[i] -= 1
            A = matmul(self.field, self.action[i], self.monomial_matrix(rest))
        self._mono_cache[m] = A
        return A

    def element_matrix(self, g: Polynomial) -> np.ndarray:
        A = zeros(self.field, self.dim, self.dim)
        for m, c in g.terms.items():
            if sum(m) < self.parent.N:
                A = A + self.monomial_matrix(m) * c
        return A

    def is_valid(self) -> bool:
        """Actions commute, kill every relation of the parent, and are nilpotent."""
        F = self.field
        acts = self.action
        for i in range(len(acts)):
            for j in range(i + 1, len(acts)):
                if not equal_matrices(matmul(F, acts[i], acts[j]), matmul(F, acts[j], acts[i])):
                    return False
        for f in self.parent.defining:
            if not is_zero_matrix(self.element_matrix(f)):
                return False
        N = self.parent.N
        for i in range(len(acts)):
            # monomial_matrix short-circuits at degree N, so multiply out directly
            P = identity(F, self.dim)
            for _ in range(N):
                P = matmul(F, acts[i], P)
            if not is_zero_matrix(P):
                return False
        return True

    def radical_span(self) -> Subspace:
        """m M as a subspace of M."""
        S = Subspace(self.field, self.dim)
        for A in self.action:
            if self.dim:
                S.extend(dense_columns(A))
        return S

    def num_generators(self) -> int:
        return self.dim - self.radical_span().dim

    def __repr__(self):
        return f"ModulePresentation(dim={self.dim}, origin={self.origin})"


# complexes

@dataclass
class FiniteComplex:
    """Cochain complex X^lo -> ... -> X^hi; ``d[i]`` maps degree i to i+1."""
    field: CoefficientField
    lo: int
    hi: int
    dims: dict
    d: dict

    def __post_init__(self):
        for i in range(self.lo, self.hi):
            A = self.d[i]
            if A.shape != (self.dims[i + 1], self.dims[i]):
                raise ComplexError(f"differential at degree {i} has shape {A.shape}")

    def dim(self, i: int) -> int:
        return self.dims.get(i, 0) if self.lo <= i <= self.hi else 0

    def differential(self, i: int) -> np.ndarray:
        if self.lo <= i < self.hi:
            return self.d[i]
        return zeros(self.field, self.dim(i + 1), self.dim(i))

    def squares_to_zero(self) -> bool:
        for i in range(self.lo, self.hi - 1):
            if not is_zero_matrix(matmul(self.field, self.d[i + 1], self.d[i])):
                return False
        return True

    def cycles(self, i: int) -> tuple[list[dict], list[int]]:
        """Kernel basis of d^i and the free columns indexing it."""
        A = self.differential(i)
        basis = matrix_kernel(self.field, A)
        free = [c for c in range(self.dim(i)) if c not in _pivot_set(self.field, A)]
        return basis, free

    def boundaries(self, i: int) -> Subspace:
        return column_space(self.field, self.differential(i - 1))

    def homology_dim(self, i: int) -> int:
        return self.dim(i) - matrix_rank(self.field, self.differential(i)) \
            - matrix_rank(self.field, self.differential(i - 1))

    def homology_dims(self) -> dict:
        return {i: self.homology_dim(i) for i in range(self.lo, self.hi + 1)}

    def homology_basis(self, i: int) -> list[dict]:
        """Cycles whose classes form a basis of H^i."""
        Z, _ = self.cycles(i)
        S = self.boundaries(i)
        reps = []
        for z in Z:
            if S.add(z) is not None:
                reps.append(z)
        return reps

    def homology_range(self):
        nz = [i for i, h in self.homology_dims().items() if h]
        if not nz:
            return None
        return min(nz), max(nz)


def _pivot_set(field, A) -> set:
    S = Subspace(field, A.shape[1])
    if A.size:
        S.extend(dense_rows(A))
    return set(S.pivots)


def koszul_complex(xs: Sequence[Polynomial], M: ModulePresentation) -> FiniteComplex:
    """K(x, M) in degrees -t..0, with basis e_S (S increasing subsets) tensor M."""
    F = M.field
    t = len(xs)
    mats = [M.element_matrix(x) for x in xs]
    subsets = {j: list(combinations(range(t), j)) for j in range(t + 1)}
    index = {j: {S: k for k, S in enumerate(subsets[j])} for j in subsets}
    m = M.dim
    dims = {-j: len(subsets[j]) * m for j in range(t + 1)}
    d = {}
    for j in range(1, t + 1):
        A = zeros(F, dims[-j + 1], dims[-j])
        for S in subsets[j]:
            src = index[j][S]
            for s, i in enumerate(S):
                target = index[j - 1][S[:s] + S[s + 1:]]
                X = mats[i] if s % 2 == 0 else -mats[i]
                A[target * m:(target + 1) * m, src * m:(src + 1) * m] = X
        d[-j] = A
    K = FiniteComplex(F, -t, 0, dims, d)
    if not K.squares_to_zero():
        raise ComplexError("Koszul differential does not square to zero")
    return K


@dataclass
class KoszulHomology:
    complex: FiniteComplex
    dims: dict
    bases: dict

    def nonzero_degrees(self) -> list[int]:
        return sorted(i for i, h in self.dims.items() if h)


def koszul_homology(xs: Sequence[Polynomial], M: ModulePresentation) -> KoszulHomology:
    K = koszul_complex(xs, M)
    bases = {i: K.homology_basis(i) for i in range(K.lo, K.hi + 1)}
    dims = {i: len(b) for i, b in bases.items()}
    return KoszulHomology(K, dims, bases)


def _block_diag_apply(G: np.ndarray, v: dict, m: int) -> dict:
    out = {}
    for c, val in v.items():
        blk, k = divmod(c, m)
        for r in range(m):
            g = G[r, k]
            if g:
                key = blk * m + r
                nv = out.get(key, 0) + g * val
                if nv:
                    out[key] = nv
                else:
                    out.pop(key)
    return out


def check_annihilation(I: Sequence[Polynomial], xs: Sequence[Polynomial], M: ModulePresentation,
                       homology: KoszulHomology | None = None) -> bool:
    """Every generator of I sends every homology class of K(x, M) to zero."""
    H = homology or koszul_homology(xs, M)
    K = H.complex
    for g in I:
        G = M.element_matrix(g)
        for i, reps in H.bases.items():
            if not reps:
                continue
            B = K.boundaries(i)
            for z in reps:
                if not B.contains(_block_diag_apply(G, z, M.dim)):
                    return False
    return True


def depth_via_koszul(M: ModulePresentation, homology: KoszulHomology | None = None) -> int:
    """n - max{j : H^{-j}(K(x_1..x_n; M)) != 0} with x the variables."""
    if M.dim == 0:
        raise ComplexError("depth of the zero module is undefined")
    T = M.parent
    H = homology or koszul_homology([Polynomial.var(T.field, T.nvars, i) for i in range(T.nvars)], M)
    top = max(-i for i, h in H.dims.items() if h)
    return T.nvars - top


# truncation triangles

def _coordinates(field, vectors: list[dict], target: dict, nrows: int):
    """Coefficients c with sum c_j vectors_j = target (vectors independent)."""
    rows = [dict() for _ in range(nrows)]
    for j, v in enumerate(vectors):
        for k, val in v.items():
            rows[k][j] = val
    rhs = [target.get(k, field.zero) for k in range(nrows)]
    sol = solve(field, rows, rhs, len(vectors))
    if sol is None:
        raise ComplexError("vector not in the span")
    return [sol.get(j, field.zero) for j in range(len(vectors))]


@dataclass
class TriangleStep:
    """One application of Y -> X' -> H^n[-n]: the short exact sequence and its checks."""
    degree: int
    Y: FiniteComplex
    X_prime: FiniteComplex
    homology_dim: int
    checks: dict = dc_field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())


def truncate_complex(X: FiniteComplex) -> list[TriangleStep]:
    """Peel off the top homology degree by degree until nothing is left.

    Each step builds X' = (... -> X^{n-1} -> Z^n -> 0) and
    Y = (... -> X^{n-1} -> B^n -> 0) with 0 -> Y -> X' -> H^n[-n] -> 0.
    """
    F = X.field
    rng = X.homology_range()
    if rng is None:
        raise ComplexError("complex has no homology: nothing to truncate")
    lo_h, hi_h = rng
    steps = []
    cur = X
    for n in range(hi_h, lo_h - 1, -1):
        Z, free = cur.cycles(n)
        zdim = len(Z)
        dn1 = cur.differential(n - 1)
        # X': d^{n-1} lands in Z; coordinates in the kernel basis are the free entries
        dX = zeros(F, zdim, cur.dim(n - 1))
        for j in range(cur.dim(n - 1)):
            for a, c in enumerate(free):
                dX[a, j] = dn1[c, j]
        Bspace = cur.boundaries(n)
        Bvecs = Bspace.basis()
        bdim = len(Bvecs)
        B_in_Z = [[v.get(c, F.zero) for c in free] for v in Bvecs]  # b list of Z-coords
        dY = zeros(F, bdim, cur.dim(n - 1))
        for j in range(cur.dim(n - 1)):
            col = {k: dn1[k, j] for k in range(dn1.shape[0]) if dn1[k, j]}
            if col:
                coords = _coordinates(F, Bvecs, col, cur.dim(n))
                for a in range(bdim):
                    dY[a, j] = coords[a]
        # homology representatives in Z-coordinates
        Sz = Subspace(F, zdim)
        for bz in B_in_Z:
            Sz.add(dense_to_vec(bz))
        reps = []
        for a in range(zdim):
            e = {a: F.one}
            if Sz.add(e) is not None:
                reps.append(e)
        hdim = len(reps)
        # f: B -> Z (inclusion) and p: Z -> H (projection)
        f_n = zeros(F, zdim, bdim)
        for a, bz in enumerate(B_in_Z):
            for r in range(zdim):
                f_n[r, a] = bz[r]
        basis_Z = [dense_to_vec(bz) for bz in B_in_Z] + reps
        p_n = zeros(F, hdim, zdim)
        for a in range(zdim):
            coords = _coordinates(F, basis_Z, {a: F.one}, zdim)
            for s in range(hdim):
                p_n[s, a] = coords[bdim + s]

        lo = cur.lo
        dims_x = {i: cur.dim(i) for i in range(lo, n)}
        dims_x[n] = zdim
        d_x = {i: cur.differential(i) for i in range(lo, n - 1)}
        dims_y = dict(dims_x)
        dims_y[n] = bdim
        d_y = dict(d_x)
        if n - 1 >= lo:
            d_x[n - 1] = dX
            d_y[n - 1] = dY
        lo_new = min(lo, n)
        for D in (dims_x, dims_y):
            for i in range(lo_new, n + 1):
                D.setdefault(i, 0)
        Xp = FiniteComplex(F, lo_new, n, dims_x, d_x)
        Y = FiniteComplex(F, lo_new, n, dims_y, d_y)

        checks = {}
        checks["d_squared"] = Xp.squares_to_zero() and Y.squares_to_zero()
        checks["injective"] = matrix_rank(F, f_n) == bdim
        checks["surjective"] = matrix_rank(F, p_n) == hdim
        checks["composite_zero"] = is_zero_matrix(matmul(F, p_n, f_n))
        checks["middle_exact"] = zdim == bdim + hdim
        checks["chain_map_f"] = equal_matrices(matmul(F, f_n, dY), dX) if n - 1 >= lo else True
        checks["chain_map_p"] = is_zero_matrix(matmul(F, p_n, dX)) if n - 1 >= lo else True
        # X' -> cur is the inclusion Z^n -> X^n
        g_n = zeros(F, cur.dim(n), zdim)
        for a, z in enumerate(Z):
            for k, v in z.items():
                g_n[k, a] = v
        checks["chain_map_g"] = (equal_matrices(matmul(F, g_n, dX), dn1) if n - 1 >= lo else True) \
            and is_zero_matrix(matmul(F, cur.differential(n), g_n))
        hx = {i: cur.homology_dim(i) for i in range(lo_new, cur.hi + 1)}
        hxp = Xp.homology_dims()
        checks["quasi_isomorphism"] = all(hxp.get(i, 0) == hx.get(i, 0) for i in hx)
        hy = Y.homology_dims()
        checks["homology_contract"] = all(hy.get(i, 0) == 0 for i in range(n, cur.hi + 1)) and \
            all(hy.get(i, 0) == hx.get(i, 0) for i in range(lo_new, n))
        checks["homology_dim"] = hdim == hx.get(n, 0)
        steps.append(TriangleStep(n, Y, Xp, hdim, checks))
        cur = Y
    return steps


# stable annihilation (artinian parents)

@dataclass
class FreeCover:
    F: ModulePresentation
    f: np.ndarray            # dim M x dim F
    generators: list         # indices of the basis vectors of M chosen as generators


def free_cover(M: ModulePresentation) -> FreeCover:
    """Minimal free cover T^g -> M, g = dim M/mM."""
    T = M.parent
    S = M.radical_span()
    gens = []
    for c in range(M.dim):
        if S.add({c: M.field.one}) is not None:
            gens.append(c)
    Fm = ModulePresentation.free(T, len(gens))
    n = T.dim
    f = zeros(M.field, M.dim, len(gens) * n)
    for j, c in enumerate(gens):
        for k, b in enumerate(T.basis):
            col = M.monomial_matrix(b)[:, c]
            for r in range(M.dim):
                f[r, j * n + k] = col[r]
    return FreeCover(Fm, f, gens)


def _module_map_equations(M: ModulePresentation, N: ModulePresentation):
    """Rows in the unknowns H (dim N x dim M, row-major) for H A_i^M = A_i^N H."""
    dm, dn = M.dim, N.dim
    rows = []
    for AM, AN in zip(M.action, N.action):
        for p in range(dn):
            for q in range(dm):
                row = {}
                for k in range(dm):
                    v = AM[k, q]
                    if v:
                        key = p * dm + k
                        row[key] = row.get(key, 0) + v
                for k in range(dn):
                    v = AN[p, k]
                    if v:
                        key = k * dm + q
                        row[key] = row.get(key, 0) - v
                row = {k: v for k, v in row.items() if v}
                if row:
                    rows.append(row)
    return rows


def is_module_map(H: np.ndarray, M: ModulePresentation, N: ModulePresentation) -> bool:
    F = M.field
    return all(equal_matrices(matmul(F, H, AM), matmul(F, AN, H)) for AM, AN in zip(M.action, N.action))


@dataclass
class StableZeroResult:
    value: bool
    witness: np.ndarray | None = None       # h: M -> F with f h = r id_M
    cover: FreeCover | None = None
    certificate: dict | None = None         # y with y A = 0, y b = 1 when inconsistent

    def __bool__(self):
        return self.value


def stably_zero(r: Polynomial, M: ModulePresentation) -> StableZeroResult:
    """Decide whether multiplication by r on M factors through the free cover."""
    Fd = M.field
    if M.dim == 0:
        return StableZeroResult(True, zeros(Fd, 0, 0))
    cov = free_cover(M)
    Fm, f = cov.F, cov.f
    dm, df = M.dim, Fm.dim
    rows = _module_map_equations(M, Fm)
    rhs = [Fd.zero] * len(rows)
    Rm = M.element_matrix(r)
    for p in range(dm):
        for q in range(dm):
            row = {}
            for k in range(df):
                v = f[p, k]
                if v:
                    row[k * dm + q] = v
            rows.append(row)
            rhs.append(Rm[p, q])
    sol = solve(Fd, rows, rhs, df * dm)
    if sol is None:
        return StableZeroResult(False, None, cov, _farkas(Fd, rows, rhs))
    H = zeros(Fd, df, dm)
    for key, v in sol.items():
        H[divmod(key, dm)] = v
    return StableZeroResult(True, H, cov)


def _farkas(field, rows, rhs):
    """y with y^T A = 0 and y^T b = 1, witnessing inconsistency of A x = b."""
    ncols = 1 + max((max(r) for r in rows if r), default=-1)
    nrows = len(rows)
    trows = [dict() for _ in range(ncols + 1)]
    for i, r in enumerate(rows):
        for k, v in r.items():
            trows[k][i] = v
        if rhs[i]:
            trows[ncols][i] = rhs[i]
    target = [field.zero] * ncols + [field.one]
    y = solve(field, trows, target, nrows)
    return None if y is None else {int(k): v for k, v in y.items()}


def verify_witness(r: Polynomial, M: ModulePresentation, res: StableZeroResult) -> bool:
    if not res.value or res.witness is None or res.cover is None:
        return False
    F = M.field
    H = res.witness
    return equal_matrices(matmul(F, res.cover.f, H), M.element_matrix(r)) and \
        is_module_map(H, M, res.cover.F)


# test modules

def random_element(T: TruncatedAlgebra, rng: random.Random, min_degree: int = 1, terms: int = 3) -> Polynomial:
    monos = [m for m in T.basis if sum(m) >= min_degree]
    if not monos:
        return Polynomial.zero(T.field, T.nvars)
    f = Polynomial.zero(T.field, T.nvars)
    for m in rng.sample(monos, min(terms, len(monos))):
        c = rng.choice([1, 1, 2, -1, 3, -2])
        f = f + Polynomial.monomial(T.field, T.nvars, m, c)
    return f


def random_module(T: TruncatedAlgebra, rng: random.Random, max_dim: int = 12, tries: int = 50):
    """A random cokernel of a small matrix with entries in m, of dimension <= max_dim."""
    for _ in range(tries):
        b = rng.choice([1, 1, 2, 2, 3])
        a = rng.choice([1, 2, 2, 3])
        if b * T.dim > 4 * max_dim:
            b = 1
        mat = [[random_element(T, rng, 1, rng.randint(1, 3)) for _ in range(a)] for _ in range(b)]
        M = ModulePresentation.cokernel(T, mat)
        if 0 < M.dim <= max_dim:
            return M
    return ModulePresentation.residue_field(T)


def sample_modules(T: TruncatedAlgebra, count: int = 20, max_dim: int = 12, seed: int = 0) -> list:
    """Cyclic modules T/(x_i^t), T, k and random cokernels; ``count`` in total."""
    out = [ModulePresentation.free(T, 1), ModulePresentation.residue_field(T)]
    for i in range(T.nvars):
        x = Polynomial.var(T.field, T.nvars, i)
        for t in range(2, T.N + 1):
            M = ModulePresentation.cyclic(T, [x ** t])
            if M.dim == T.dim:
                break
            if M.dim <= max_dim:
                out.append(M)
    out = [M for M in out if M.dim <= max_dim][:count]
    rng = random.Random(seed)
    while len(out) < count:
        out.append(random_module(T, rng, max_dim))
    return out


@dataclass
class StableAnnihilationReport:
    value: bool
    cases: list      # (generator string, module origin, module dim, stably zero, witness verified)


def jacobian_stable_annihilation(P, count: int = 20, max_dim: int = 12, seed: int = 0,
                                 schedule=None) -> StableAnnihilationReport:
    """Every Jacobian generator acts stably trivially on every test module."""
    from .invariants import jacobian_ideal

    if P.dim != 0:
        raise InvalidPresentation("stable annihilation is only checked over artinian rings")
    R = P.local_ring(schedule)
    length = R.length(schedule)
    T = R.truncation(length.N)
    J = jacobian_ideal(P)
    cases = []
    ok = True
    for M in sample_modules(T, count, max_dim, seed):
        for g in J:
            res = stably_zero(g, M)
            verified = verify_witness(g, M, res)
            cases.append((P.fmt(g), M.origin, M.dim, res.value, verified))
            ok = ok and res.value and verified
    return StableAnnihilationReport(ok, cases)
