from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hqb import catalog, checks
from hqb import constructions as C
from hqb.quantum import cyclic_group
from hqb.tensor import LinMap, TensorElement, perm_legs, unit_power


# twisting


def test_twist_algebra_by_weak_morphism():
    A = catalog.example_3dim(1, "b")
    out = C.twist_algebra(A, A.alpha)
    assert checks.check_hom_algebra(out).overall
    assert out.alpha == A.alpha.compose(A.alpha)


def test_twist_rejects_non_morphism(dh2):
    with pytest.raises(C.NotAMorphism) as info:
        C.twist_hq(dh2.structure, dh2.morphisms["alpha2_printed"])
    assert not info.value.report.overall


def test_twist_qt_needs_r_fixed(dw):
    with pytest.raises(C.NotAMorphism):
        C.twist_qt(dw, catalog.dwz3_morphisms(dw)["f"])
    out = C.twist_qt(dw, LinMap.identity(dw.ctx, 9))
    assert checks.check_qthq(out).overall


def test_twist_bialgebra_group():
    B = catalog.group_hombialgebra(cyclic_group(3))
    sq = LinMap(1, 1, {(g,): {((2 * g) % 3,): B.ctx.one()} for g in range(3)})
    out = C.twist_bialgebra(B, sq)
    assert checks.check_hom_bialgebra(out).overall


def test_twist_coalgebra(sweedler):
    out = C.twist_coalgebra(sweedler.coalgebra(), sweedler.alpha)
    assert checks.check_hom_coalgebra(out).overall


@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_iterate_alpha(n):
    H = catalog.dh2_hq(1)
    out = C.iterate_alpha(H, n)
    assert checks.check_hq(out).overall
    assert out.alpha == H.alpha.power(n + 1, H.ctx, H.dim)


def test_iterate_rejects_non_multiplicative():
    A = catalog.dwz3()
    bad = A.replace(alpha=catalog.dwz3_morphisms(A)["f"].scale(A.ctx.const(2)))
    with pytest.raises(C.NotMultiplicative):
        C.iterate_alpha(bad, 1)


# duality


def test_dual_of_group_algebra_is_group_like():
    B = catalog.group_hombialgebra(cyclic_group(2))
    D = C.dual_algebra_to_coalgebra(B.algebra())
    assert checks.check_hom_coalgebra(D).overall
    # the coproduct is the transpose of the multiplication table
    assert D.delta.image((0,)) == TensorElement(2, {(0, 0): B.ctx.one(), (1, 1): B.ctx.one()})


def test_dual_of_three_dim_is_coassociative():
    D = C.dual_algebra_to_coalgebra(catalog.example_3dim())
    assert checks.check_hom_coassociativity(D).overall


def test_double_dual_of_double(dw):
    A = dw.algebra()
    back = C.dual_coalgebra_to_algebra(C.dual_algebra_to_coalgebra(A))
    assert back.mu == A.mu and back.eta == A.eta and back.alpha == A.alpha


def test_dual_bialgebra(sweedler):
    D = C.dual_bialgebra(sweedler)
    assert checks.check_hom_bialgebra(D).overall


# convolution and antipode


def test_convolution_unit_and_gamma(sweedler):
    B = catalog.group_hombialgebra(cyclic_group(3), (0, 2, 1))
    for S in (B, sweedler):
        u = C.convolution_unit(S)
        f = S.alpha.compose(S.alpha)
        assert C.convolution(S, u, f) == C.gamma_twist(S, f)


def test_id_star_id_on_kz2():
    B = catalog.group_hombialgebra(cyclic_group(2))
    sq = C.convolution(B, B.identity(), B.identity())
    assert sq == LinMap(1, 1, {(0,): {(0,): B.ctx.one()}, (1,): {(0,): B.ctx.one()}})


def random_endo(rng, S):
    return LinMap(1, 1, {(j,): {(k,): S.ctx.const(rng.randint(-2, 2)) for k in range(S.dim) if rng.random() < 0.5}
                         for j in range(S.dim)})


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10_000))
def test_convolution_hom_associative(seed):
    rng = random.Random(seed)
    S = catalog.sweedler_family(2)
    f, g, h = (random_endo(rng, S) for _ in range(3))
    lhs = C.convolution(S, C.convolution(S, f, g), C.gamma_twist(S, h))
    rhs = C.convolution(S, C.gamma_twist(S, f), C.convolution(S, g, h))
    assert lhs == rhs


def test_convolution_algebra_structure():
    CA = C.ConvolutionAlgebra(catalog.group_hombialgebra(cyclic_group(2)))
    assert checks.check_hom_algebra(CA.as_hom_algebra()).overall


def test_antipode_kz2():
    B = catalog.group_hombialgebra(cyclic_group(2))
    sol = C.solve_antipode(B)
    assert sol.unique
    assert sol.value == LinMap.identity(B.ctx, 2)


def test_antipode_kz3_inverts():
    B = catalog.group_hombialgebra(cyclic_group(3))
    S = C.solve_antipode(B).value
    assert S == LinMap(1, 1, {(g,): {((-g) % 3,): B.ctx.one()} for g in range(3)})


@pytest.mark.parametrize("lam", ["lambda", 1, 2])
def test_sweedler_antipode(lam):
    B = catalog.sweedler_family(lam)
    sol = C.solve_antipode(B)
    assert sol is not None and sol.unique
    S = sol.value
    unit = C.convolution_unit(B)
    assert C.convolution(B, S, B.identity()) == unit == C.convolution(B, B.identity(), S)
    ctx, e = B.ctx, B.space.basis
    assert S(e(1)) == e(1) and S(e(2)) == -e(3) and S(e(3)) == e(2)


# primitives and HLie


def test_primitives_group_and_sweedler(sweedler):
    assert C.primitives(catalog.group_hombialgebra(cyclic_group(3))).basis == []
    res = C.primitives(sweedler)
    assert res.report.overall
    assert res.basis == []


def test_primitives_counit_zero():
    for name in ("group_z2", "group_z3_square", "sweedler"):
        B = catalog.CATALOG[name].build()
        res = C.primitives(B)
        for x in res.basis:
            assert B.eps(x).is_zero()


def test_hlie_commutative_zero_bracket(dw):
    L, rep = C.hlie(dw.algebra())
    assert rep.overall
    assert L.bracket.is_zero()


def test_hlie_three_dim_bracket_not_zero():
    A = catalog.example_3dim(1, "b")
    L, rep = C.hlie(A)
    assert rep.overall
    e = A.space.basis
    assert L(e(1), e(2)) == e(2).scale(A.ctx.param("b"))


def test_hlie_requires_multiplicative():
    with pytest.raises(C.NotMultiplicative):
        C.hlie(catalog.example_3dim())
    _, rep = C.hlie(catalog.example_3dim(), strict=False)
    assert not rep["alpha_multiplicative"].passed
    assert rep["hom_jacobi"].passed


def test_hlie_twisted_double(dw_twisted):
    _, rep = C.hlie(dw_twisted.algebra())
    assert rep.overall


# opposite structures


def test_opposite_variants(dw):
    op = C.opposite_variants(dw, "op")
    assert C.opposite_variants(op, "op").mu == dw.mu
    assert checks.check_hq(C.opposite_variants(dw, "cop")).overall
    opcop = C.opposite_variants(dw, "opcop")
    assert opcop.phi == perm_legs(dw.phi, "321")


def test_opposite_variants_bad_kind(dw):
    with pytest.raises(ValueError):
        C.opposite_variants(dw, "co")


# gauge transformations


def test_trivial_gauge():
    H = catalog.dh2_hq(1)
    g = C.gauge_data(H, unit_power(H.eta, 2))
    assert g.delta == H.delta and g.phi == H.phi
    out = C.gauge_transform(H, unit_power(H.eta, 2))
    assert out.alpha == H.alpha.power(3, H.ctx, H.dim)


def test_gauge_on_double(dw):
    ctx = dw.ctx
    F = catalog.normalized_cochain(dw, {(1, 1): 2, (1, 2): ctx.root(4), (2, 1): -3, (2, 2): ctx.root(8)})
    out = C.gauge_transform(dw, F)
    assert checks.check_hq(out).overall
    assert out.phi != dw.phi
    g = C.gauge_data(dw, F)
    assert g.phi == g.phi_right


def test_gauge_precondition(dw):
    bad = TensorElement(2, {(1, 1): dw.ctx.one()}) + unit_power(dw.eta, 2)
    with pytest.raises(C.GaugePreconditionFailed):
        C.gauge_transform(dw, bad)


def test_gauge_fails_when_alpha_cubed_differs(dw_twisted):
    # f has order 3, so the output twist is the identity while mu stays twisted by f
    F = unit_power(dw_twisted.eta, 2)
    with pytest.raises(C.ConstructionError) as info:
        C.gauge_transform(dw_twisted, F)
    assert not info.value.report["hom_associativity"].passed


def test_gauge_lemma_on_double(dw):
    ctx = dw.ctx
    F = catalog.normalized_cochain(dw, {(1, 1): 5, (1, 2): -1, (2, 1): ctx.root(2), (2, 2): 7})
    g = C.gauge_data(dw, F)
    e = dw.space.basis
    for i in range(9):
        for j in range(9):
            for side in (1, 2):
                assert C.gauge_lemma_residual(dw, F, e(i), e(j), side, g).is_zero()
            assert C.gauge_delta_residual(dw, F, e(i), e(j), g).is_zero()


def test_gauge_lemma_bad_side(dw):
    e = dw.space.basis
    with pytest.raises(ValueError):
        C.gauge_lemma_residual(dw, unit_power(dw.eta, 2), e(0), e(0), side=3)
