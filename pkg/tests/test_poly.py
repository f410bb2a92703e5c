import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from dsgbounds.errors import PolynomialMismatch
from dsgbounds.field import QQ, CoefficientField
from dsgbounds.poly import (
    Polynomial,
    det_bareiss,
    det_cofactor,
    det_leibniz,
    exact_divide,
    grevlex_key,
    jacobian_minors,
    monomials_below,
    monomials_of_degree,
    poly_diff,
    variables,
)

F5 = CoefficientField.prime(5)


def polys(field, nvars=2, max_terms=4, max_exp=3):
    mono = st.tuples(*[st.integers(0, max_exp)] * nvars)
    coeff = st.fractions(min_value=-5, max_value=5, max_denominator=4) if field.is_rational \
        else st.integers(0, field.characteristic - 1)
    return st.dictionaries(mono, coeff, max_size=max_terms).map(lambda t: Polynomial(field, nvars, t))


@settings(max_examples=40, deadline=None)
@given(polys(QQ), polys(QQ), polys(QQ))
def test_ring_axioms_qq(a, b, c):
    assert a + b == b + a and a * b == b * a
    assert (a + b) + c == a + (b + c) and (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == Polynomial.zero(QQ, 2)


@settings(max_examples=30, deadline=None)
@given(polys(F5), polys(F5))
def test_ring_axioms_fp(a, b):
    assert a * b == b * a
    assert (a + b) ** 5 == a ** 5 + b ** 5       # Frobenius


@settings(max_examples=40, deadline=None)
@given(polys(QQ), polys(QQ), st.integers(0, 1))
def test_product_rule(a, b, i):
    assert poly_diff(a * b, i) == poly_diff(a, i) * b + a * poly_diff(b, i)


def test_ordering_and_helpers():
    assert [sum(m) for m in monomials_below(2, 3)] == [0, 1, 1, 2, 2, 2]
    assert len(monomials_of_degree(3, 4)) == 15
    assert sorted(monomials_of_degree(2, 2), key=grevlex_key) == monomials_of_degree(2, 2)
    x, y = variables(QQ, 2)
    f = x ** 2 * y + 3 * x + 1
    assert f.order() == 0 and f.total_degree() == 3 and f.constant_term() == 1
    assert f.truncate(2) == 3 * x + 1


def test_mismatch():
    x, = variables(QQ, 1)
    y = variables(QQ, 2)[1]
    with pytest.raises(PolynomialMismatch):
        x + y
    with pytest.raises(PolynomialMismatch):
        x + variables(F5, 1)[0]


def _rand_matrix(rng, n):
    v = variables(QQ, 2)
    def ent():
        p = Polynomial.zero(QQ, 2)
        for _ in range(rng.randint(0, 2)):
            p = p + rng.randint(-3, 3) * v[rng.randint(0, 1)] ** rng.randint(0, 2)
        return p
    return [[ent() for _ in range(n)] for _ in range(n)]


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_determinants_agree(n):
    rng = random.Random(n)
    for _ in range(5):
        M = _rand_matrix(rng, n)
        d = det_leibniz(M)
        assert det_bareiss(M) == d and det_cofactor(M) == d
        if n > 1:
            swapped = [M[1], M[0]] + M[2:]
            assert det_bareiss(swapped) == -d


def test_bareiss_stays_exact():
    x, y = variables(QQ, 2)
    M = [[2 * x + 3, y, 1], [5 * y, 3 * x, 2], [7, x * y, 3 * y + 1]]
    d = det_bareiss(M)
    assert d == det_leibniz(M)
    assert all(type(c) is int or type(c).__name__ == "Fraction" for c in d.terms.values())


def test_floats_rejected():
    with pytest.raises(TypeError):
        QQ(0.5)


def test_exact_divide():
    x, y = variables(QQ, 2)
    a, b = x ** 2 - y ** 2, x + y
    assert exact_divide(a * b, b) == a
    q = exact_divide(x, 3 * x)
    assert q.constant_term() == Fraction(1, 3) and type(q.constant_term()) is Fraction
    with pytest.raises(ArithmeticError):
        exact_divide(x + 1, y)


def test_jacobian_minors():
    x, y = variables(QQ, 2)
    assert jacobian_minors([x ** 2 + y ** 3], 1) == [2 * x, 3 * y ** 2]
    assert jacobian_minors([x ** 2, y ** 2], 2) == [4 * x * y]
    with pytest.raises(ValueError):
        jacobian_minors([x ** 2], 2)


def test_to_string():
    x, y = variables(QQ, 2)
    assert (-3 * x ** 2 - 4 * x * y - 3 * y ** 2).to_string(["x", "y"]) == "-3*x^2 - 4*x*y - 3*y^2"
    assert (x * Fraction(1, 2) - 1).to_string(["x", "y"]) == "1/2*x - 1"
    assert Polynomial.zero(QQ, 2).to_string() == "0"
