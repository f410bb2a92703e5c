from fractions import Fraction

import sympy as sp
from hypothesis import given, settings, strategies as st

from dsgbounds.field import QQ, CoefficientField
from dsgbounds.linalg import Subspace, kernel, rank, solve

F7 = CoefficientField.prime(7)

matrices = st.integers(1, 6).flatmap(
    lambda c: st.lists(st.lists(st.integers(-4, 4), min_size=c, max_size=c), min_size=1, max_size=7))


def dot(field, row, x):
    return sum((field(v) * x.get(j, 0) for j, v in enumerate(row)), field.zero)


@settings(max_examples=60, deadline=None)
@given(matrices)
def test_rank_matches_sympy(A):
    assert rank(QQ, A) == sp.Matrix(A).rank()


@settings(max_examples=40, deadline=None)
@given(matrices)
def test_rank_mod_p_matches_sympy(A):
    from sympy.polys.matrices import DomainMatrix
    want = DomainMatrix.from_list(A, sp.GF(7)).rank()
    assert rank(F7, [[F7(v) for v in r] for r in A]) == want


@settings(max_examples=60, deadline=None)
@given(matrices)
def test_kernel_is_kernel(A):
    n = len(A[0])
    K = kernel(QQ, A, n)
    assert len(K) == n - sp.Matrix(A).rank()
    for x in K:
        assert all(dot(QQ, r, x) == 0 for r in A)


@settings(max_examples=60, deadline=None)
@given(matrices, st.data())
def test_solve_consistent_and_inconsistent(A, data):
    n = len(A[0])
    x0 = data.draw(st.lists(st.integers(-3, 3), min_size=n, max_size=n))
    b = [sum(v * w for v, w in zip(r, x0)) for r in A]
    x = solve(QQ, A, b, n)
    assert x is not None and [dot(QQ, r, x) for r in A] == b
    M = sp.Matrix(A)
    bb = data.draw(st.lists(st.integers(-3, 3), min_size=len(A), max_size=len(A)))
    consistent = M.rank() == M.row_join(sp.Matrix(bb)).rank()
    assert (solve(QQ, A, bb, n) is not None) == consistent


def test_reduce_idempotent_and_membership():
    S = Subspace(QQ, 3)
    assert S.add({0: 2, 1: 4}) is not None
    assert S.add({0: 1, 1: 2}) is None
    v = {0: Fraction(1, 3), 2: 5}
    r = S.reduce(v)
    assert S.reduce(r) == r
    assert S.contains({0: -7, 1: -14})
    assert S.dim == 1 and S.pivots == [0]
