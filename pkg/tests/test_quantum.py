from __future__ import annotations

import itertools
import random
from fractions import Fraction

import pytest

from hqb import checks
from hqb.quantum import (
    Cocycle3,
    FiniteGroup,
    GroupError,
    InvalidCocycle,
    abelian_theta,
    build_dw_double,
    check_cocycle3,
    cyclic_group,
    dw_labels,
    gamma,
    theta,
    trivial_cocycle,
    z3_cocycle,
)
from hqb.scalar import ScalarContext

CTX = ScalarContext(24, ("p", "q"))


def s3() -> FiniteGroup:
    perms = list(itertools.permutations(range(3)))
    compose = lambda a, b: tuple(a[b[i]] for i in range(3))  # noqa: E731
    table = [[perms.index(compose(a, b)) for b in perms] for a in perms]
    return FiniteGroup(tuple(tuple(r) for r in table))


def test_cyclic_groups():
    assert cyclic_group(1).order == 1
    z3 = cyclic_group(3)
    assert z3.mul(1, 2) == 0
    assert z3.names == ("1", "x", "x^2")
    assert z3.is_abelian()


@pytest.mark.parametrize("table", [[[0, 1], [1, 1]], [[1, 0], [0, 1]], [[0, 1, 2], [1, 2, 0]], []])
def test_bad_group_tables(table):
    with pytest.raises(GroupError):
        FiniteGroup(tuple(tuple(r) for r in table))


def test_s3_nonabelian():
    G = s3()
    assert not G.is_abelian()
    assert all(G.mul(a, G.inv(a)) == 0 for a in G.elements())


@pytest.mark.parametrize("r_choice", [0, 1, 2])
def test_z3_cocycle_identity(r_choice):
    rep = check_cocycle3(z3_cocycle(CTX, r_choice=r_choice))
    assert rep.overall
    assert rep["cocycle_identity"].failures == 0


def test_broken_cocycle_detected():
    w = z3_cocycle(CTX)
    w.values[(1, 1, 1)] = CTX.param("q")
    rep = check_cocycle3(w)
    assert not rep["cocycle_identity"].passed
    with pytest.raises(InvalidCocycle) as info:
        build_dw_double(w.group, w)
    assert info.value.report is not None


def test_unnormalized_cocycle_detected():
    G = cyclic_group(2)
    w = Cocycle3(G, CTX, {(0, 1, 1): CTX.param("p")})
    assert not check_cocycle3(w)["cocycle_normalized"].passed


def test_r_choice_range():
    with pytest.raises(ValueError):
        z3_cocycle(CTX, r_choice=3)


LEMMA = {
    (1, 1, 1): "p",
    (1, 1, 2): "z^16*p^-1",
    (1, 2, 1): "z^16*p^-1",
    (1, 2, 2): "z^16*p^-2",
    (2, 1, 1): "p^2",
    (2, 1, 2): "z^8*p",
    (2, 2, 1): "z^8*p",
    (2, 2, 2): "z^8*p^-1",
}


@pytest.mark.parametrize("triple, printed", sorted(LEMMA.items()))
def test_lemma_values(triple, printed):
    w = z3_cocycle(CTX)
    assert theta(w, *triple) == CTX.parse(printed)
    assert gamma(w, *triple) == CTX.parse(printed)


@pytest.mark.parametrize("r_choice", [0, 1, 2])
def test_abelian_reduction(r_choice):
    w = z3_cocycle(CTX, r_choice=r_choice)
    for t in itertools.product(range(3), repeat=3):
        assert theta(w, *t) == abelian_theta(w, *t) == gamma(w, *t)


def test_double_labels_and_shape(dw):
    assert dw.dim == 9
    assert dw_labels(cyclic_group(3))[4] == "e_x·x"
    assert dw.eta == sum((dw.space.basis(3 * g) for g in range(1, 3)), dw.space.basis(0))


@pytest.mark.parametrize("r_choice", [0, 1, 2])
def test_drinfeld_theorem_symbolic(r_choice):
    D = build_dw_double(cyclic_group(3), z3_cocycle(CTX, r_choice=r_choice))
    assert checks.check_qthq(D).overall


@pytest.mark.parametrize("seed", range(3))
def test_drinfeld_theorem_rational(seed):
    rng = random.Random(seed)
    ctx = ScalarContext(24, ())
    p = Fraction(rng.choice([-1, 1]) * rng.randint(1, 9), rng.randint(1, 9))
    q = Fraction(rng.choice([-1, 1]) * rng.randint(1, 9), rng.randint(1, 9))
    D = build_dw_double(cyclic_group(3), z3_cocycle(ctx, p, q, rng.randint(0, 2)))
    assert checks.check_qthq(D).overall


def test_trivial_cocycle_degenerates_to_classical_double():
    G = cyclic_group(2)
    D = build_dw_double(G, trivial_cocycle(G, ScalarContext(24, ())))
    assert checks.check_hom_coassociativity(D.coalgebra()).overall
    assert checks.check_qthq(D).overall


def test_nonabelian_double_with_trivial_cocycle():
    G = s3()
    D = build_dw_double(G, trivial_cocycle(G, ScalarContext(24, ())))
    assert D.dim == 36
    assert checks.check_qthq(D).overall


def test_cocycle_subs():
    w = z3_cocycle(CTX)
    target = ScalarContext(24, ())
    v = w.subs({"p": target.const(2), "q": target.const(3)}, target)
    assert v(1, 1, 1) == target.const(2)
    assert check_cocycle3(v).overall
