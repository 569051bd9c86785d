"""Axiom and morphism checkers.

Every check iterates over basis tuples (enough by multilinearity) and
records, per axiom, the first failing tuple with its exact residual plus
the total number of failing tuples.
"""

from __future__ import annotations

import itertools
from typing import Callable, Iterable, Mapping, Sequence

from .scalar import Scalar, ScalarContext
from .structures import (
    EPS_NOTE,
    AxiomEntry,
    AxiomReport,
    DimensionMismatch,
    HomAlgebra,
    HomBialgebra,
    HomCoalgebra,
    HQBialgebra,
    MissingCounit,
    MissingUnit,
    QTHQBialgebra,
)
from .tensor import (
    LinMap,
    TensorElement,
    apply_legs,
    embed_legs,
    invert_element,
    mul_chain,
    mul_on_power,
    perm_legs,
    unit_power,
)


class SearchSpaceTooLarge(ValueError):
    pass


# Leg-permutation reading used for the subscripts in the QT identities.
# "positions": Phi_{ijk} puts leg 1 of Phi at slot i, leg 2 at slot j, leg 3 at slot k.
# "legs": slot t carries leg s_t of Phi (the perm_legs convention).
# Only "positions" makes the twisted double quasi-triangular.
QT_SUBSCRIPTS = "positions"
# Middle associator factor of the (Delta (x) alpha)(R) identity.  The
# printed "123" fails on the twisted double; "132" is the classical form.
QT3_MIDDLE = "132"


def collect(axiom: str, items: Iterable[tuple[tuple, TensorElement]], note: str | None = None) -> AxiomEntry:
    """Fold (witness, residual) pairs into one entry."""
    first = None
    count = 0
    for witness, residual in items:
        if not residual.is_zero():
            count += 1
            if first is None:
                first = (witness, residual)
    if first is None:
        return AxiomEntry(axiom, True, note=note)
    return AxiomEntry(axiom, False, first[0], first[1], count, note)


def _as_element(s: Scalar) -> TensorElement:
    return TensorElement(0, {(): s})


class _Basis:
    """Cached basis-level data for one structure."""

    def __init__(self, s):
        self.s = s
        one = s.ctx.one()
        self.e = [TensorElement(1, {(i,): one}) for i in range(s.dim)]
        self._prod = {}
        self._alpha = {}

    def prod(self, i: int, j: int) -> TensorElement:
        key = (i, j)
        if key not in self._prod:
            self._prod[key] = TensorElement(1, self.s.mu.cols.get(key, {}))
        return self._prod[key]

    def alpha(self, i: int, alpha: LinMap | None = None) -> TensorElement:
        alpha = alpha or self.s.alpha
        key = (i, id(alpha))
        if key not in self._alpha:
            self._alpha[key] = alpha.image((i,))
        return self._alpha[key]


def _mul(mu: LinMap, x: TensorElement, y: TensorElement) -> TensorElement:
    return mul_on_power(mu, x, y)


def associator(A: HomAlgebra, x: TensorElement, y: TensorElement, z: TensorElement) -> TensorElement:
    """``(xy) alpha(z) - alpha(x) (yz)``."""
    mu, al = A.mu, A.alpha
    return _mul(mu, _mul(mu, x, y), al(z)) - _mul(mu, al(x), _mul(mu, y, z))


def check_hom_associativity(A: HomAlgebra, alpha: LinMap | None = None) -> AxiomReport:
    alpha = alpha or A.alpha
    mu = A.mu
    b = _Basis(A)
    n = A.dim
    left = {}
    right = {}
    for i, j in itertools.product(range(n), repeat=2):
        left[i, j] = b.prod(i, j)
    al = [alpha.image((k,)) for k in range(n)]

    def items():
        for i, j, k in itertools.product(range(n), repeat=3):
            lhs = _mul(mu, left[i, j], al[k]) if left[i, j].coords and al[k].coords else TensorElement(1)
            if (j, k) not in right:
                right[j, k] = b.prod(j, k)
            rhs = _mul(mu, al[i], right[j, k]) if al[i].coords and right[j, k].coords else TensorElement(1)
            yield (i, j, k), lhs - rhs

    return AxiomReport([collect("hom_associativity", items())], space=A.space)


def check_unit(A: HomAlgebra) -> AxiomReport:
    if A.eta is None:
        raise MissingUnit("check_unit needs a unit")
    one = A.eta
    mu, al = A.mu, A.alpha
    n = A.dim
    e = [A.space.basis(i) for i in range(n)]
    entries = [
        collect("unit_right", (((i,), _mul(mu, e[i], one) - al(e[i])) for i in range(n))),
        collect("unit_left", (((i,), _mul(mu, one, e[i]) - al(e[i])) for i in range(n))),
        collect("alpha_fixes_unit", [((), al(one) - one)]),
    ]
    return AxiomReport(entries, space=A.space)


def check_multiplicative(A: HomAlgebra) -> AxiomReport:
    mu, al = A.mu, A.alpha
    n = A.dim

    def items():
        for i, j in itertools.product(range(n), repeat=2):
            lhs = al(TensorElement(1, mu.cols.get((i, j), {})))
            rhs = mu(al.image((i,)).otimes(al.image((j,))))
            yield (i, j), lhs - rhs

    return AxiomReport([collect("alpha_multiplicative", items())], space=A.space)


def check_comultiplicative(C: HomCoalgebra) -> AxiomReport:
    n = C.dim

    def items():
        for i in range(n):
            lhs = apply_legs([C.alpha, C.alpha], C.delta.image((i,)))
            rhs = C.delta(C.alpha.image((i,)))
            yield (i,), lhs - rhs

    return AxiomReport([collect("alpha_comultiplicative", items())], space=C.space)


def check_hom_coassociativity(C: HomCoalgebra) -> AxiomReport:
    n = C.dim

    def items():
        for i in range(n):
            d = C.delta.image((i,))
            yield (i,), apply_legs([C.alpha, C.delta], d) - apply_legs([C.delta, C.alpha], d)

    return AxiomReport([collect("hom_coassociativity", items())], space=C.space)


def check_counit(C: HomCoalgebra) -> AxiomReport:
    if C.eps is None:
        raise MissingCounit("check_counit needs a counit")
    ident = C.identity()
    n = C.dim

    def items(side):
        for i in range(n):
            d = C.delta.image((i,))
            maps = [C.eps, ident] if side == "left" else [ident, C.eps]
            yield (i,), apply_legs(maps, d) - C.alpha.image((i,))

    return AxiomReport(
        [collect("counit_left", items("left")), collect("counit_right", items("right"))],
        space=C.space,
    )


def check_hom_coalgebra(C: HomCoalgebra) -> AxiomReport:
    rep = check_hom_coassociativity(C)
    if C.eps is not None:
        rep.extend(check_counit(C))
    return rep


def check_hom_algebra(A: HomAlgebra) -> AxiomReport:
    rep = check_hom_associativity(A)
    if A.eta is not None:
        rep.extend(check_unit(A))
    return rep


def _compat_entries(s, delta_alpha: bool, coalgebra_alpha: LinMap | None = None) -> list[AxiomEntry]:
    """Delta and eps as algebra maps, plus eps o alpha = eps (and Delta o alpha if asked)."""
    ctx = s.ctx
    n = s.dim
    mu, delta, eps, one = s.mu, s.delta, s.eps, s.eta
    d = [delta.image((i,)) for i in range(n)]
    ev = [eps.image((i,)).as_scalar(ctx) for i in range(n)]
    entries = []
    if delta_alpha:
        calpha = coalgebra_alpha or s.alpha

        def da():
            for i in range(n):
                yield (i,), delta(calpha.image((i,))) - apply_legs([calpha, calpha], d[i])

        entries.append(collect("delta_alpha", da()))

    def dm():
        for i, j in itertools.product(range(n), repeat=2):
            lhs = delta(TensorElement(1, mu.cols.get((i, j), {})))
            rhs = mul_on_power(mu, d[i], d[j]) if d[i].coords and d[j].coords else TensorElement(2)
            yield (i, j), lhs - rhs

    entries.append(collect("delta_multiplicative", dm()))
    entries.append(collect("delta_unit", [((), delta(one) - one.otimes(one))]))

    def ea():
        for i in range(n):
            yield (i,), _as_element(eps(s.alpha.image((i,))).as_scalar(ctx) - ev[i])

    entries.append(collect("eps_alpha", ea()))

    def em():
        for i, j in itertools.product(range(n), repeat=2):
            lhs = eps(TensorElement(1, mu.cols.get((i, j), {}))).as_scalar(ctx)
            yield (i, j), _as_element(lhs - ev[i] * ev[j])

    entries.append(collect("eps_multiplicative", em()))
    entries.append(collect("eps_unit", [((), _as_element(eps(one).as_scalar(ctx) - ctx.one()))]))
    return entries


def check_bialgebra_compat(B: HomBialgebra) -> AxiomReport:
    return AxiomReport(_compat_entries(B, delta_alpha=False), space=B.space)


def check_hom_bialgebra(B: HomBialgebra) -> AxiomReport:
    """Algebra axioms for alpha, coalgebra axioms for beta, and the compatibilities."""
    rep = check_hom_algebra(B.algebra())
    rep.extend(check_hom_coalgebra(B.coalgebra()))
    rep.extend(check_bialgebra_compat(B))
    return rep


def _invertible_entry(axiom: str, s, v: TensorElement) -> tuple[AxiomEntry, TensorElement | None]:
    sol = invert_element(s.mu, s.eta, v, s.dim)
    if sol is None:
        return AxiomEntry(axiom, False, (), v, 1, "no two-sided inverse"), None
    w = sol.value
    target = unit_power(s.eta, v.power)
    note = None if sol.unique else f"inverse not unique (nullity {sol.nullity})"
    entry = collect(
        axiom,
        [(("left",), mul_on_power(s.mu, v, w) - target), (("right",), mul_on_power(s.mu, w, v) - target)],
        note,
    )
    return entry, w


def hq3_sides(H: HQBialgebra):
    """Both sides of the pentagon identity, plus the right side associated the other way."""
    al, de, phi, one = H.alpha, H.delta, H.phi, H.eta
    mu = H.mu
    lhs = mul_on_power(mu, apply_legs([al, al, de], phi), apply_legs([de, al, al], phi))
    p234 = embed_legs(phi, 4, (2, 3, 4), one)
    p123 = embed_legs(phi, 4, (1, 2, 3), one)
    middle = apply_legs([al, de, al], phi)
    rhs_left = mul_chain(mu, p234, middle, p123)
    rhs_right = mul_on_power(mu, p234, mul_on_power(mu, middle, p123))
    return lhs, rhs_left, rhs_right


def check_hq(H: HQBialgebra) -> AxiomReport:
    rep = check_hom_algebra(H.algebra())
    if H.eta is None:
        raise MissingUnit("an HQ-bialgebra needs a unit")
    if H.eps is None:
        raise MissingCounit("an HQ-bialgebra needs a counit")
    rep.entries.extend(_compat_entries(H, delta_alpha=True))
    mu, al, de, phi, one = H.mu, H.alpha, H.delta, H.phi, H.eta
    n = H.dim
    ident = H.identity()

    def hq1():
        for i in range(n):
            d = de.image((i,))
            lhs = mul_on_power(mu, apply_legs([al, de], d), phi)
            rhs = mul_on_power(mu, phi, apply_legs([de, al], d))
            yield (i,), lhs - rhs

    rep.entries.append(collect("HQ1", hq1()))

    def hq2(side):
        for i in range(n):
            d = de.image((i,))
            maps = [H.eps, ident] if side == "left" else [ident, H.eps]
            yield (i,), apply_legs(maps, d) - al.image((i,))

    rep.entries.append(collect("HQ2_left", hq2("left")))
    rep.entries.append(collect("HQ2_right", hq2("right")))
    lhs, rhs_left, rhs_right = hq3_sides(H)
    rep.entries.append(collect("HQ3", [((), lhs - rhs_left)]))
    rep.entries.append(collect("HQ3_association", [((), rhs_right - rhs_left)]))
    rep.entries.append(collect("HQ4", [((), apply_legs([ident, H.eps, ident], phi) - one.otimes(one))]))
    rep.entries.append(collect("phi_alpha_invariant", [((), apply_legs([al, al, al], phi) - phi)]))
    entry, w = _invertible_entry("phi_invertible", H, phi)
    rep.entries.append(entry)
    if w is not None:
        H.__dict__.setdefault("_cache", {}).setdefault("phi_inv", w)
    rep.notes.append(EPS_NOTE)
    return rep


def subscript(v: TensorElement, sigma: str) -> TensorElement:
    """``v_{sigma}`` under the reading fixed by ``QT_SUBSCRIPTS``."""
    if QT_SUBSCRIPTS == "legs":
        return perm_legs(v, sigma)
    inverse = [0] * len(sigma)
    for leg, slot in enumerate(sigma, start=1):
        inverse[int(slot) - 1] = leg
    return perm_legs(v, inverse)


def qt_sides(Q: QTHQBialgebra, qt3_middle: str | None = None):
    """(lhs, rhs) for the two hexagon identities, right sides left-associated."""
    qt3_middle = qt3_middle or QT3_MIDDLE
    mu, al, de, one = Q.mu, Q.alpha, Q.delta, Q.eta
    phi, phi_inv, r = Q.phi, Q.phi_inv, Q.r
    r12 = embed_legs(r, 3, (1, 2), one)
    r13 = embed_legs(r, 3, (1, 3), one)
    r23 = embed_legs(r, 3, (2, 3), one)
    qt2 = (
        apply_legs([al, de], r),
        mul_chain(mu, subscript(phi_inv, "231"), r13, subscript(phi, "213"), r12, phi_inv),
    )
    qt3 = (
        apply_legs([de, al], r),
        mul_chain(mu, subscript(phi, "312"), r13, subscript(phi_inv, qt3_middle), r23, phi),
    )
    return qt2, qt3


def check_qt(Q: QTHQBialgebra) -> AxiomReport:
    """Quasi-triangularity entries only; combine with check_hq for the full suite."""
    mu, al, de, r = Q.mu, Q.alpha, Q.delta, Q.r
    n = Q.dim
    entries = []
    r_entry, r_inv = _invertible_entry("R_invertible", Q, r)

    def qt1():
        for i in range(n):
            d = de.image((i,))
            dop = perm_legs(d, "21")
            yield (i,), mul_on_power(mu, dop, r) - mul_on_power(mu, r, d)

    entries.append(collect("QT1", qt1()))
    try:
        (l2, r2), (l3, r3) = qt_sides(Q)
        entries.append(collect("QT2", [((), l2 - r2)]))
        entries.append(collect("QT3", [((), l3 - r3)]))
    except Exception as exc:  # Phi not invertible
        entries.append(AxiomEntry("QT2", False, (), Q.phi, 1, f"not evaluated: {exc}"))
        entries.append(AxiomEntry("QT3", False, (), Q.phi, 1, f"not evaluated: {exc}"))
    entries.append(collect("R_alpha_invariant", [((), apply_legs([al, al], r) - r)]))
    entries.append(r_entry)
    return AxiomReport(entries, space=Q.space)


def check_qthq(Q: QTHQBialgebra) -> AxiomReport:
    return check_hq(Q).extend(check_qt(Q))


def check_gauge(H: HQBialgebra, F: TensorElement) -> AxiomReport:
    al, one = H.alpha, H.eta
    ident = H.identity()
    entries = [
        collect("F_alpha_invariant", [((), apply_legs([al, al], F) - F)]),
        collect("F_counit_left", [((), apply_legs([H.eps, ident], F) - one)]),
        collect("F_counit_right", [((), apply_legs([ident, H.eps], F) - one)]),
    ]
    entry, _ = _invertible_entry("F_invertible", H, F)
    entries.append(entry)
    return AxiomReport(entries, space=H.space)


def check_alpha_commutes(A: HomAlgebra) -> AxiomReport:
    """``alpha(x) x = x alpha(x)`` on basis vectors."""
    mu, al = A.mu, A.alpha

    def items():
        for i in range(A.dim):
            x = A.space.basis(i)
            yield (i,), mu(al(x).otimes(x)) - mu(x.otimes(al(x)))

    return AxiomReport([collect("alpha_x_commutes_x", items())], space=A.space)


# morphisms

LEVELS = ("algebra", "coalgebra", "bialgebra", "hq", "qthq")


def _check_domain(f: LinMap, A, B):
    if (f.source, f.target) != (1, 1):
        raise DimensionMismatch("a morphism is a map A -> B")
    for (j,), col in f.cols.items():
        if j >= A.dim:
            raise DimensionMismatch(f"column {j} outside the source dimension {A.dim}")
        for (k,) in col:
            if k >= B.dim:
                raise DimensionMismatch(f"row {k} outside the target dimension {B.dim}")


def morphism_entries(level: str, f: LinMap, A, B, weak: bool = False) -> list[AxiomEntry]:
    if level not in LEVELS:
        raise ValueError(f"unknown level {level!r}; expected one of {LEVELS}")
    _check_domain(f, A, B)
    n = A.dim
    ctx = A.ctx
    img = [f.image((i,)) for i in range(n)]
    entries = []
    algebra_side = level != "coalgebra"
    coalgebra_side = level != "algebra"
    if algebra_side:

        def mu_items():
            for i, j in itertools.product(range(n), repeat=2):
                lhs = B.mu(img[i].otimes(img[j]))
                rhs = f(TensorElement(1, A.mu.cols.get((i, j), {})))
                yield (i, j), lhs - rhs

        entries.append(collect("hom_mu", mu_items()))
        if getattr(A, "eta", None) is not None and getattr(B, "eta", None) is not None:
            entries.append(collect("hom_unit", [((), f(A.eta) - B.eta)]))
    if coalgebra_side:

        def delta_items():
            for i in range(n):
                lhs = apply_legs([f, f], A.delta.image((i,)))
                yield (i,), lhs - B.delta(img[i])

        entries.append(collect("hom_delta", delta_items()))
        if getattr(A, "eps", None) is not None and getattr(B, "eps", None) is not None:

            def eps_items():
                for i in range(n):
                    lhs = B.eps(img[i]).as_scalar(ctx)
                    rhs = A.eps.image((i,)).as_scalar(ctx)
                    yield (i,), _as_element(lhs - rhs)

            entries.append(collect("hom_eps", eps_items()))
    if not weak:
        twists = [("hom_alpha", A.alpha, B.alpha)]
        if isinstance(A, HomBialgebra) and (A.beta is not None or getattr(B, "beta", None) is not None):
            twists.append(("hom_beta", A.coalgebra_twist, B.coalgebra_twist))

        for name, a, b in twists:

            def alpha_items(a=a, b=b):
                for i in range(n):
                    yield (i,), f(a.image((i,))) - b(img[i])

            entries.append(collect(name, alpha_items()))
    if level in ("hq", "qthq"):
        entries.append(collect("hom_phi", [((), apply_legs([f, f, f], A.phi) - B.phi)]))
    if level == "qthq":
        entries.append(collect("hom_R", [((), apply_legs([f, f], A.r) - B.r)]))
    return entries


def check_morphism(level: str, f: LinMap, A, B=None, weak: bool = False) -> AxiomReport:
    """Check that ``f : A -> B`` is a morphism at ``level`` (``B`` defaults to ``A``)."""
    B = A if B is None else B
    rep = AxiomReport(morphism_entries(level, f, A, B, weak), space=A.space)
    if weak:
        rep.notes.append("weak morphism: the twist condition is not checked")
    return rep


def _to_ctx(v, ctx: ScalarContext) -> Scalar:
    if isinstance(v, Scalar):
        return v if v.ctx == ctx else v.subs({}, ctx)
    return ctx.coerce(v)


def _lift_structure(s, ext: ScalarContext):
    """Copy a structure into a context with extra parameters."""
    from .io import convert_structure

    return convert_structure(s, ext)


def search_morphisms(
    A,
    pattern: Mapping[tuple[int, int], object],
    candidates: Sequence,
    level: str = "hq",
    weak: bool = False,
    bound: int = 6,
) -> list[LinMap]:
    """Every instantiation of ``pattern`` from ``candidates`` that is a morphism ``A -> A``.

    ``pattern`` maps ``(row, column)`` to a fixed scalar or to a slot name
    (a string); slots range over ``candidates``.  Entries not listed are zero.
    """
    ctx = A.ctx
    slots = []
    for v in pattern.values():
        if isinstance(v, str) and v not in slots:
            slots.append(v)
    if len(slots) > bound:
        raise SearchSpaceTooLarge(f"{len(slots)} unknown slots exceed the bound {bound}")
    cands = [ctx.coerce(c) for c in candidates]
    clash = set(slots) & set(ctx.params)
    if clash:
        raise ValueError(f"slot names {sorted(clash)} collide with parameters")
    ext = ctx.with_params(*slots)
    B = _lift_structure(A, ext)
    cols: dict = {}
    for (k, j), v in pattern.items():
        s = ext.param(v) if isinstance(v, str) else _to_ctx(v, ext)
        cols.setdefault((j,), {})[(k,)] = s
    f = LinMap(1, 1, cols)
    constraints: list[Scalar] = []
    for entry in morphism_entries_all(level, f, B, weak):
        for _, residual in entry:
            for c in residual.coords.values():
                constraints.append(c)
    order = {name: i for i, name in enumerate(slots)}
    buckets: list[list[Scalar]] = [[] for _ in slots]
    for c in constraints:
        used = [order[u] for u in c.free_params() if u in order]
        if not used:
            if c.subs({}, ext):
                return []
            continue
        buckets[max(used)].append(c)

    found = []

    def rec(depth: int, assigned: dict):
        if depth == len(slots):
            found.append(dict(assigned))
            return
        name = slots[depth]
        for cand in cands:
            assigned[name] = cand
            ok = True
            for c in buckets[depth]:
                if c.subs(assigned, ext):
                    ok = False
                    break
            if ok:
                rec(depth + 1, assigned)
            del assigned[name]

    cands_ext = [_to_ctx(c, ext) for c in cands]
    lookup = {id(e): c for e, c in zip(cands_ext, cands)}
    cands = cands_ext
    rec(0, {})
    out = []
    for assignment in found:
        cols = {}
        for (k, j), v in pattern.items():
            s = lookup[id(assignment[v])] if isinstance(v, str) else _to_ctx(v, ctx)
            cols.setdefault((j,), {})[(k,)] = s
        out.append(LinMap(1, 1, cols))
    return out


def morphism_entries_all(level: str, f: LinMap, A, weak: bool):
    """(witness, residual) pairs for every basis tuple of every morphism condition."""
    n = A.dim
    ctx = A.ctx
    img = [f.image((i,)) for i in range(n)]
    out = []
    if level != "coalgebra":
        out.append([((i, j), A.mu(img[i].otimes(img[j])) - f(TensorElement(1, A.mu.cols.get((i, j), {}))))
                    for i, j in itertools.product(range(n), repeat=2)])
        if getattr(A, "eta", None) is not None:
            out.append([((), f(A.eta) - A.eta)])
    if level != "algebra":
        out.append([((i,), apply_legs([f, f], A.delta.image((i,))) - A.delta(img[i])) for i in range(n)])
        if getattr(A, "eps", None) is not None:
            out.append([((i,), _as_element(A.eps(img[i]).as_scalar(ctx) - A.eps.image((i,)).as_scalar(ctx)))
                        for i in range(n)])
    if not weak:
        out.append([((i,), f(A.alpha.image((i,))) - A.alpha(img[i])) for i in range(n)])
    if level in ("hq", "qthq"):
        out.append([((), apply_legs([f, f, f], A.phi) - A.phi)])
    if level == "qthq":
        out.append([((), apply_legs([f, f], A.r) - A.r)])
    return out


def check_structure(s, level: str = "auto") -> AxiomReport:
    """Full suite at ``level``; ``auto`` picks the richest level the type supports."""
    if level == "auto":
        level = auto_level(s)
    if level == "algebra":
        return check_hom_algebra(s if isinstance(s, HomAlgebra) else s.algebra())
    if level == "coalgebra":
        return check_hom_coalgebra(s if isinstance(s, HomCoalgebra) else s.coalgebra())
    if level == "bialgebra":
        return check_hom_bialgebra(s if isinstance(s, HomBialgebra) else s.bialgebra())
    if level == "hq":
        return check_hq(s)
    if level in ("qt", "qthq"):
        return check_qthq(s)
    raise ValueError(f"unknown level {level!r}")


def auto_level(s) -> str:
    if isinstance(s, QTHQBialgebra):
        return "qt"
    if isinstance(s, HQBialgebra):
        return "hq"
    if isinstance(s, HomBialgebra):
        return "bialgebra"
    if isinstance(s, HomCoalgebra):
        return "coalgebra"
    return "algebra"
