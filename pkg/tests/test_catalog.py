from __future__ import annotations

import pytest

from hqb import catalog, checks
from hqb.checks import associator
from hqb.quantum import cyclic_group
from hqb.scalar import ScalarContext
from hqb.tensor import LinMap, TensorElement


@pytest.mark.parametrize("name", sorted(catalog.CATALOG))
def test_expected_verdicts(name):
    entry = catalog.CATALOG[name]
    assert catalog.expected_verdicts(entry) == dict(entry.expected)


def test_build_rejects_unknown_param():
    with pytest.raises(KeyError):
        catalog.CATALOG["dwz3"].build(s=1)


def test_build_overrides_specialize():
    D = catalog.CATALOG["dwz3"].build(p=2, q="1/3")
    assert D.ctx.params == ()
    assert checks.check_hq(D).overall


# printed tables


def _dw_fixture_case(name, r_choice):
    fx = catalog.dwz3_fixtures()[name]
    if name in ("dwz3_f", "dwz3_g"):
        D = catalog.dwz3(r_choice=r_choice)
        return fx, D, catalog.dwz3_morphisms(D)[name[-1]]
    D = catalog.dwz3(r_choice=r_choice) if name == "dwz3" else catalog.dwz3_twisted(r_choice=r_choice)
    return fx, D, None


@pytest.mark.parametrize("r_choice", [1, 2])
@pytest.mark.parametrize("name", ["dwz3", "dwz3_twisted", "dwz3_f", "dwz3_g"])
def test_dwz3_fixture_diffs_are_the_documented_ones(name, r_choice):
    fx, D, m = _dw_fixture_case(name, r_choice)
    diffs = catalog.diff_fixture(fx, D, catalog.dwz3_fixture_subs(D, r_choice), m)
    assert {(d.section, d.key) for d in diffs} == catalog.known_diff_keys(fx)


def test_twisted_fixture_has_three_documented_diffs():
    assert len(catalog.known_diff_keys(catalog.dwz3_fixtures()["dwz3_twisted"])) == 3


@pytest.mark.parametrize("name, variant", [("dh2_hq1", 1), ("dh2_hq2", 2)])
def test_dh2_fixture_diffs(name, variant):
    fx = catalog.dh2_fixtures()[name]
    H = catalog.dh2_hq(variant)
    diffs = catalog.diff_fixture(fx, H, catalog.dh2_fixture_subs(H.ctx))
    assert {(d.section, d.key) for d in diffs} == catalog.known_diff_keys(fx)
    if variant == 1:
        assert diffs == []


def test_parse_combination():
    ctx = ScalarContext(24, ("p",))
    labels = {"a": 0, "b": 1}
    unit = TensorElement(1, {(0,): ctx.one()})
    v = catalog.parse_combination("2*a@b - p^-1*b@a + U@a", labels, unit, ctx)
    assert v == TensorElement(2, {(0, 1): ctx.const(2), (1, 0): -ctx.parse("p^-1"), (0, 0): ctx.one()})
    assert catalog.parse_combination("-b", labels, unit, ctx) == TensorElement(1, {(1,): -ctx.one()})


# the Z3 double and its morphisms


def test_non_associativity_witness(dw_twisted):
    e, ctx = dw_twisted.space.basis, dw_twisted.ctx
    x1, xx, xx2 = e(3), e(4), e(5)
    mul = lambda u, v: dw_twisted.mu(u.otimes(v))  # noqa: E731
    p = ctx.param("p")
    assert mul(mul(x1, xx), xx) == xx2.scale(p)
    assert mul(x1, mul(xx, xx)) == xx2.scale(-catalog.xi6(ctx) * p)
    assert not associator(dw_twisted.algebra().replace(alpha=LinMap.identity(ctx, 9)), x1, xx, xx).is_zero()
    assert checks.check_hom_associativity(dw_twisted.algebra()).overall


def test_f_has_order_three(dw):
    f = catalog.dwz3_morphisms(dw)["f"]
    assert f.power(3, dw.ctx, 9) == LinMap.identity(dw.ctx, 9)
    assert f.compose(f) != LinMap.identity(dw.ctx, 9)


@pytest.mark.parametrize("name", ["f", "g"])
def test_morphisms_fix_unit_and_counit(dw, name):
    m = catalog.dwz3_morphisms(dw)[name]
    assert m(dw.eta) == dw.eta
    assert dw.eps.compose(m) == dw.eps


def test_search_recovers_f_and_g(dw):
    found = checks.search_morphisms(dw, catalog.dwz3_search_pattern(), [dw.ctx.root(2 * k) for k in range(12)])
    ms = catalog.dwz3_morphisms(dw)
    assert sorted(map(repr, found)) == sorted(map(repr, [LinMap.identity(dw.ctx, 9), ms["f"], ms["g"]]))


def test_normalized_cochain_shape(dw):
    ctx = dw.ctx
    F = catalog.normalized_cochain(dw, {(u, v): ctx.const(u + v) for u in (1, 2) for v in (1, 2)})
    assert checks.check_gauge(dw, F).overall


# the other examples


def test_example_3dim_associator():
    A = catalog.example_3dim()
    e, ctx = A.space.basis, A.ctx
    plain = A.replace(alpha=LinMap.identity(ctx, 3))
    a, b = ctx.param("a"), ctx.param("b")
    assert associator(plain, e(0), e(0), e(2)) == e(2).scale((a - b) * b)


def test_example_3dim_multiplicative_only_at_a_one():
    assert not checks.check_multiplicative(catalog.example_3dim()).overall
    assert checks.check_multiplicative(catalog.example_3dim(1, "b")).overall


@pytest.mark.parametrize("lam", ["lambda", 0, 1, "-3/2"])
def test_sweedler_family(lam):
    assert checks.check_hom_bialgebra(catalog.sweedler_family(lam)).overall


def test_group_endo_validation():
    with pytest.raises(catalog.NotAGroupEndomorphism):
        catalog.group_hombialgebra(cyclic_group(3), (0, 1, 1))
    with pytest.raises(catalog.NotAGroupEndomorphism):
        catalog.group_hombialgebra(cyclic_group(3), (1, 2, 0))


def test_group_bialgebra_as_hq():
    H = catalog.group_bialgebra_hq(catalog.group_hombialgebra(cyclic_group(3), (0, 2, 1)))
    assert checks.check_hq(H).overall


def test_dh2_printed_alpha2_residual():
    d = catalog.dh2()
    rep = checks.check_morphism("hq", d.morphisms["alpha2_printed"], d.structure)
    entry = rep["hom_mu"]
    assert not entry.passed
    X = d.structure.space.basis(1)
    assert entry.witness == (2, 2) and entry.residual == X


@pytest.mark.parametrize("name", ["alpha1", "alpha2", "alpha3"])
def test_dh2_morphisms_twist(name):
    d = catalog.dh2()
    from hqb.constructions import twist_hq

    assert checks.check_hq(twist_hq(d.structure, d.morphisms[name])).overall


def test_dh2_search_pattern_only_alpha1():
    d = catalog.dh2()
    ctx = d.structure.ctx
    pattern = {(0, 0): 1, (1, 1): 1, (3, 2): "c", (2, 3): "d"}
    found = checks.search_morphisms(d.structure, pattern, [ctx.root(3 * k) for k in range(8)])
    assert found == [d.morphisms["alpha1"]]
