import warnings

import pytest

import oracle
from dsgbounds.errors import InvalidPresentation, NotIsolated
from dsgbounds.field import QQ, CoefficientField
from dsgbounds.invariants import (
    RingPresentation,
    check_isolated,
    compute_bounds,
    jacobian_ideal,
    multiplicity_hilbert,
    multiplicity_reduction,
)
from dsgbounds.poly import variables

x, y = variables(QQ, 2)


def hyp(f, field=QQ, n=2):
    return RingPresentation(field, n, (f,), complete_intersection=True)


def test_cusp_report():
    r = compute_bounds(hyp(x ** 2 + y ** 3))
    assert r.status == "ok"
    assert (r.nu, r.ll, r.e_reduction, r.e_hilbert) == (2, 2, 3, 3)
    assert (r.bound_thm1, r.bound_thm2, r.bound_bfk) == (3, 2, 3)
    assert r.conclusion == "dim D_sg(R) <= 2"
    assert r.hypotheses["applies"]["bound_bfk"] == "yes"


def test_regular_ring():
    t, = variables(QQ, 1)
    r = compute_bounds(RingPresentation(QQ, 1, (t,), complete_intersection=True))
    assert r.status == "regular" and r.conclusion == "D_sg(R) = 0"
    assert r.bound_thm1 == r.bound_thm2 == r.bound_bfk == -1


def test_non_isolated():
    P = hyp(x ** 2)
    with pytest.raises(NotIsolated):
        check_isolated(P)
    assert compute_bounds(P).status == "not_isolated"


def test_inconclusive_with_short_schedule():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        r = compute_bounds(hyp(x ** 3 + y ** 5), schedule=(6,))
    assert r.status == "inconclusive" and "extend the truncation schedule" in r.message


def test_presentation_validation():
    with pytest.raises(InvalidPresentation):
        RingPresentation(QQ, 2, (x ** 2,))
    with pytest.raises(InvalidPresentation):
        RingPresentation(QQ, 2, (x ** 2,), declared_dim=0, complete_intersection=True)
    P = RingPresentation(QQ, 2, (x ** 2, x * y), declared_dim=1)
    with pytest.raises(InvalidPresentation):
        jacobian_ideal(RingPresentation(QQ, 2, (x ** 2,), declared_dim=-0 + 2 - 2))
    assert P.h == 1


def test_artinian_complete_intersection():
    P = RingPresentation(QQ, 2, (x ** 2, y ** 2), complete_intersection=True)
    r = compute_bounds(P)
    # J = (4xy), R/J has basis 1, x, y so ll = 2, and e(J) = length(R) = 4 in dimension zero
    assert (r.nu, r.ll, r.e_reduction, r.e_hilbert) == (1, 2, 4, 4)
    assert (r.bound_thm1, r.bound_thm2, r.bound_bfk) == (3, 3, None)


def test_prime_field_matches_rationals_for_large_p():
    F = CoefficientField.prime(101)
    u, v = variables(F, 2)
    r = compute_bounds(hyp(u ** 3 + v ** 4, F))
    assert (r.nu, r.ll, r.e_reduction) == (2, 4, 8)
    assert r.hypotheses["applies"]["bound_thm2"] is False
    assert r.hypotheses["applies"]["bound_bfk"] == "relaxed to positive characteristic"


def test_characteristic_can_change_the_answer():
    F = CoefficientField.prime(3)
    u, v = variables(F, 2)
    # d/dv of v^3 vanishes, leaving J = (2u) and R/J = k[v]/(v^3)
    r = compute_bounds(hyp(u ** 2 + v ** 3, F))
    assert (r.nu, r.ll, r.e_reduction) == (1, 3, 3)


@pytest.mark.parametrize("seed", range(5))
def test_reduction_matches_hilbert_and_oracle(seed):
    P = hyp(x ** 2 * y + y ** 4)
    J = jacobian_ideal(P)
    red = multiplicity_reduction(J, P, seed=seed)
    assert not red.fallback and len(red.Q) == 1
    assert red.e == multiplicity_hilbert(J, P).e == oracle.curve_invariants("x^2*y+y^4")["e"] == 7


def test_reduction_fallback_warns():
    P = hyp(x ** 3 + y ** 5)
    with pytest.warns(RuntimeWarning, match="falling back"):
        red = multiplicity_reduction(jacobian_ideal(P), P, r_max=0, redraws=1)
    assert red.fallback and red.e == 10 and red.attempts == 2


def test_hilbert_rejects_short_window_and_retries():
    P = hyp(x ** 2 + y ** 3)
    with pytest.raises(ValueError):
        multiplicity_hilbert(jacobian_ideal(P), P, n_max=2)
    h = multiplicity_hilbert(jacobian_ideal(P), P, n_max=4)
    assert h.e == 3 and h.lengths == (2, 5, 8, 11, 14)
