import pytest

import oracle
from dsgbounds.errors import ComplexError, DimensionOverflow, InvalidPresentation
from dsgbounds.field import QQ, CoefficientField
from dsgbounds.invariants import RingPresentation
from dsgbounds.koszul import (
    ModulePresentation,
    check_annihilation,
    depth_via_koszul,
    free_cover,
    is_module_map,
    jacobian_stable_annihilation,
    koszul_complex,
    koszul_homology,
    sample_modules,
    stably_zero,
    truncate_complex,
    verify_witness,
)
from dsgbounds.poly import Polynomial, variables
from dsgbounds.truncation import TruncatedAlgebra

x1, = variables(QQ, 1)


def lam(n, field=QQ):
    return TruncatedAlgebra(field, 1, [Polynomial.var(field, 1, 0) ** n], n + 1)


def test_dual_numbers_example():
    T = lam(2)
    M = ModulePresentation.free(T)
    H = koszul_homology([x1], M)
    assert H.dims == {-1: 1, 0: 1}
    assert check_annihilation([x1], [x1], M, H)
    assert depth_via_koszul(M) == 0
    steps = truncate_complex(H.complex)
    assert [(s.degree, s.homology_dim, s.ok) for s in steps] == [(0, 1, True), (-1, 1, True)]


def test_empty_sequence_is_the_module():
    T = lam(3)
    M = ModulePresentation.cyclic(T, [x1 ** 2])
    K = koszul_complex([], M)
    assert K.homology_dims() == {0: 2}


def test_koszul_on_residue_field_is_exterior_algebra():
    x, y = variables(QQ, 2)
    T = TruncatedAlgebra(QQ, 2, [], 2)
    k = ModulePresentation.residue_field(T)
    H = koszul_homology([x, y], k)
    assert H.dims == {-2: 1, -1: 2, 0: 1}
    assert all(s.ok for s in truncate_complex(H.complex))


def test_differential_squares_to_zero():
    x, y = variables(QQ, 2)
    T = TruncatedAlgebra(QQ, 2, [x ** 2 - y ** 3], 5)
    M = ModulePresentation.cokernel(T, [[x, y ** 2], [y, x]])
    K = koszul_complex([x + y, x * y, y ** 2], M)
    assert K.squares_to_zero()
    assert sum((-1) ** abs(i) * h for i, h in K.homology_dims().items()) == 0


def test_module_validity_and_errors():
    T = lam(3)
    M = ModulePresentation.cyclic(T, [x1 ** 2])
    assert M.is_valid() and M.dim == 2 and M.num_generators() == 1
    with pytest.raises(InvalidPresentation):
        ModulePresentation.cokernel(T, [[x1], [x1, x1]])
    with pytest.raises(DimensionOverflow):
        ModulePresentation.cokernel(T, [[x1]] * 5, max_dim=10)
    zero = ModulePresentation.cyclic(T, [Polynomial.constant(QQ, 1, 1)])
    with pytest.raises(ComplexError):
        depth_via_koszul(zero)


def test_free_cover_is_surjective_module_map():
    x, y = variables(QQ, 2)
    T = TruncatedAlgebra(QQ, 2, [x ** 2, y ** 2], 4)
    M = ModulePresentation.cokernel(T, [[x, y]])
    cov = free_cover(M)
    assert cov.F.dim == T.dim * M.num_generators()
    assert is_module_map(cov.f, cov.F, M)


def test_stably_zero_free_and_zero_maps():
    T = lam(3)
    F = ModulePresentation.free(T, 2)
    assert verify_witness(x1, F, stably_zero(x1, F))
    M = ModulePresentation.cyclic(T, [x1 ** 2])
    assert verify_witness(x1 ** 2, M, stably_zero(x1 ** 2, M))


@pytest.mark.parametrize("p", [2, 3])
def test_x_on_quotient_over_cube_factors(p):
    # h(1) = x gives f(h(1)) = x, so x is stably zero on k[x]/(x^2) over k[x]/(x^3)
    F = CoefficientField.prime(p)
    u = Polynomial.var(F, 1, 0)
    M = ModulePresentation.cyclic(lam(3, F), [u ** 2])
    res = stably_zero(u, M)
    assert res.value is True and verify_witness(u, M, res)
    assert oracle.stable_zero_bruteforce(3, 2, 1, p) is True


@pytest.mark.parametrize("n,m,s", [(4, 2, 1), (4, 3, 1), (5, 2, 1), (4, 2, 2), (5, 3, 2), (3, 1, 0), (4, 2, 0)])
def test_stably_zero_matches_bruteforce(n, m, s):
    want = oracle.stable_zero_bruteforce(n, m, s, 2)
    for field in (QQ, CoefficientField.prime(2)):
        u = Polynomial.var(field, 1, 0)
        M = ModulePresentation.cyclic(lam(n, field), [u ** m])
        res = stably_zero(u ** s, M)
        assert res.value is want
        if want:
            assert verify_witness(u ** s, M, res)
        else:
            assert res.certificate is not None


def test_farkas_certificate_checks():
    u = x1
    M = ModulePresentation.cyclic(lam(4), [u ** 2])
    res = stably_zero(u, M)
    assert res.value is False
    y = res.certificate
    assert y and any(y.values())


def test_jacobian_stable_annihilation_examples():
    for n in (2, 3):
        P = RingPresentation(QQ, 1, (x1 ** n,), complete_intersection=True)
        rep = jacobian_stable_annihilation(P, count=8)
        assert rep.value and len(rep.cases) == 8
    x, y = variables(QQ, 2)
    P = RingPresentation(QQ, 2, (x ** 2, y ** 2), complete_intersection=True)
    rep = jacobian_stable_annihilation(P, count=6)
    assert rep.value and {c[0] for c in rep.cases} == {"4*x*y"}
    with pytest.raises(InvalidPresentation):
        jacobian_stable_annihilation(RingPresentation(QQ, 2, (x ** 3 + y ** 2,), complete_intersection=True))


def test_sample_modules_cover_cyclic_family():
    T = lam(4)
    mods = sample_modules(T, count=6)
    dims = [M.dim for M in mods]
    assert len(mods) == 6 and dims[:2] == [4, 1] and 2 in dims and 3 in dims
