from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from dsgbounds.errors import ParseError
from dsgbounds.field import QQ, CoefficientField
from dsgbounds.parse import format_document, parse_document, parse_module_spec, parse_polynomial
from dsgbounds.poly import Polynomial, variables

x, y = variables(QQ, 2)
XY = ["x", "y"]


def test_examples():
    assert parse_polynomial("x^2 + y^3", XY) == x ** 2 + y ** 3
    assert parse_polynomial("2*x*y - 3*(x + y)^2", XY) == -3 * x ** 2 - 4 * x * y - 3 * y ** 2
    assert parse_polynomial("-x + 1/2*y", XY) == -x + y * Fraction(1, 2)
    assert parse_polynomial("  ( x )^0", XY) == Polynomial.constant(QQ, 2, 1)


def test_literals_reduce_into_prime_field():
    F = CoefficientField.prime(5)
    u, v = variables(F, 2)
    assert parse_polynomial("7*x + 10*y", XY, F) == 2 * u


@pytest.mark.parametrize("text,col,msg", [
    ("x^-1", 3, "negative exponent"),
    ("2x", 2, "implicit multiplication"),
    ("x + z", 5, "unknown variable"),
    ("(x + y", 7, "expected ')'"),
    ("x +", 4, "unexpected end"),
    ("x / y", 3, "only allowed by a nonzero constant"),
    ("x # y", 3, "unexpected character"),
    ("", 1, "empty expression"),
])
def test_errors_carry_position(text, col, msg):
    with pytest.raises(ParseError) as e:
        parse_polynomial(text, XY)
    assert e.value.column == col and msg in e.value.message
    assert e.value.code == 2


coeffs = st.fractions(min_value=-20, max_value=20, max_denominator=6)
terms = st.dictionaries(st.tuples(st.integers(0, 4), st.integers(0, 4)), coeffs, max_size=5)


@settings(max_examples=100, deadline=None)
@given(terms)
def test_round_trip(t):
    f = Polynomial(QQ, 2, t)
    assert parse_polynomial(f.to_string(XY), XY) == f


DOC = """format: 1
# the E6 curve
field: QQ
vars: x, y
relations:
  x^3 + y^4
options:
  schedule: 4, 6, 10
  seed: 3
"""


def test_document():
    d = parse_document(DOC)
    assert d.variables == XY and d.relations == [x ** 3 + y ** 4]
    assert d.schedule == (4, 6, 10) and d.seed == 3 and d.complete_intersection
    assert d.presentation().dim == 1
    again = parse_document(format_document(d))
    assert again.relations == d.relations and again.schedule == d.schedule


def test_field_override():
    d = parse_document(DOC, field=CoefficientField.prime(7))
    assert d.field.characteristic == 7 and d.relations[0].field.characteristic == 7


@pytest.mark.parametrize("text,line,msg", [
    ("vars: x\n", 1, "missing 'format: 1'"),
    ("format: 2\nvars: x\n", 1, "unsupported format"),
    ("format: 1\nvars: x, x\n", 2, "duplicate"),
    ("format: 1\nvars: x\nrelations:\n  x^2 + q\n", 4, "unknown variable"),
    ("format: 1\nvars: x\ncolour: red\n", 3, "unknown key"),
    ("format: 1\nvars: x\noptions:\n  seed: many\n", 4, "expected an integer"),
    ("format: 1\nvars: 1x\n", 2, "bad variable name"),
])
def test_document_errors(text, line, msg):
    with pytest.raises(ParseError) as e:
        parse_document(text)
    assert e.value.line == line and msg in e.value.message


def test_relation_column_is_absolute():
    with pytest.raises(ParseError) as e:
        parse_document("format: 1\nvars: x\nrelations:\n  x^2 + 3x\n")
    assert (e.value.line, e.value.column) == (4, 10)


def test_dim_turns_off_complete_intersection():
    d = parse_document("format: 1\nvars: x, y\nrelations:\n  x^2\n  x*y\noptions:\n  dim: 1\n")
    assert not d.complete_intersection and d.presentation().dim == 1


def test_module_spec():
    rows = parse_module_spec("x, y^2; 0, x", XY, QQ)
    assert rows == [[x, y ** 2], [Polynomial.zero(QQ, 2), x]]
    with pytest.raises(ParseError):
        parse_module_spec(" ; ", XY, QQ)
    with pytest.raises(ParseError):
        parse_module_spec("x,,y", XY, QQ)
