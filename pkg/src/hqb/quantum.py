"""Finite groups, normalized 3-cocycles and the twisted quantum double."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .checks import collect
from .scalar import Scalar, ScalarContext
from .structures import AxiomEntry, AxiomReport, QTHQBialgebra, counit_map
from .tensor import ComulMap, LinMap, MulMap, Space, TensorElement


class GroupError(ValueError):
    pass


class InvalidCocycle(ValueError):
    def __init__(self, message: str, report: AxiomReport | None = None):
        super().__init__(message)
        self.report = report


@dataclass(frozen=True)
class FiniteGroup:
    """Group on ``0..n-1`` with 0 the identity, given by its multiplication table."""

    table: tuple[tuple[int, ...], ...]
    names: tuple[str, ...] | None = None

    def __post_init__(self):
        table = tuple(tuple(int(v) for v in row) for row in self.table)
        object.__setattr__(self, "table", table)
        n = len(table)
        if n == 0 or any(len(row) != n for row in table):
            raise GroupError("multiplication table must be a nonempty square")
        if any(not 0 <= v < n for row in table for v in row):
            raise GroupError("table entries must be element indices")
        if list(table[0]) != list(range(n)) or [row[0] for row in table] != list(range(n)):
            raise GroupError("element 0 must be the identity")
        for a, b, c in itertools.product(range(n), repeat=3):
            if table[table[a][b]][c] != table[a][table[b][c]]:
                raise GroupError(f"table is not associative at ({a}, {b}, {c})")
        for a in range(n):
            if 0 not in table[a]:
                raise GroupError(f"element {a} has no inverse")
        if self.names is not None:
            names = tuple(self.names)
            if len(names) != n:
                raise GroupError("one name per element")
            object.__setattr__(self, "names", names)

    @property
    def order(self) -> int:
        return len(self.table)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.table[a].index(0)

    def conj(self, x: int, g: int) -> int:
        """``x^{-1} g x``."""
        return self.mul(self.mul(self.inv(x), g), x)

    def elements(self) -> range:
        return range(self.order)

    def name(self, a: int) -> str:
        return self.names[a] if self.names else str(a)

    def is_abelian(self) -> bool:
        n = self.order
        return all(self.table[a][b] == self.table[b][a] for a in range(n) for b in range(n))

    def is_endomorphism(self, phi: Sequence[int]) -> bool:
        return all(phi[self.mul(a, b)] == self.mul(phi[a], phi[b]) for a in self.elements() for b in self.elements())


def cyclic_group(n: int) -> FiniteGroup:
    """``Z_n`` with element k standing for ``x^k``."""
    if n < 1:
        raise GroupError("order must be positive")
    names = tuple("1" if k == 0 else ("x" if k == 1 else f"x^{k}") for k in range(n))
    return FiniteGroup(tuple(tuple((a + b) % n for b in range(n)) for a in range(n)), names)


@dataclass
class Cocycle3:
    """A map ``G^3 -> K^*``; missing triples default to 1."""

    group: FiniteGroup
    ctx: ScalarContext
    values: dict[tuple[int, int, int], Scalar] = field(default_factory=dict)

    def __call__(self, x: int, y: int, z: int) -> Scalar:
        v = self.values.get((x, y, z))
        return self.ctx.one() if v is None else v

    def inverse(self, x: int, y: int, z: int) -> Scalar:
        return self(x, y, z).inverse()

    def table(self) -> dict[tuple[int, int, int], Scalar]:
        return {t: self(*t) for t in itertools.product(self.group.elements(), repeat=3)}

    def subs(self, values: Mapping[str, Scalar], target: ScalarContext | None = None) -> Cocycle3:
        target = target or self.ctx
        return Cocycle3(self.group, target, {k: v.subs(values, target) for k, v in self.values.items()})


def trivial_cocycle(group: FiniteGroup, ctx: ScalarContext) -> Cocycle3:
    return Cocycle3(group, ctx, {})


def check_cocycle3(w: Cocycle3) -> AxiomReport:
    G = w.group
    one = w.ctx.one()
    els = list(G.elements())

    def identity_items():
        for t, x, y, z in itertools.product(els, repeat=4):
            m = G.mul
            lhs = w(x, y, z) * w(t, m(x, y), z) * w(t, x, y)
            rhs = w(m(t, x), y, z) * w(t, x, m(y, z))
            # Multiplied through by the inverted factors so no division is needed.
            yield (t, x, y, z), TensorElement(0, {(): lhs - rhs})

    def normal_items():
        for x, y in itertools.product(els, repeat=2):
            for t in ((0, x, y), (x, 0, y), (x, y, 0)):
                yield t, TensorElement(0, {(): w(*t) - one})

    entries = [collect("cocycle_identity", identity_items()), collect("cocycle_normalized", normal_items())]
    nonzero = [(t, TensorElement(0, {(): w.ctx.one()})) for t in itertools.product(els, repeat=3) if not w(*t)]
    entries.append(AxiomEntry("cocycle_nonzero", not nonzero, nonzero[0][0] if nonzero else None,
                              nonzero[0][1] if nonzero else None, len(nonzero)))
    return AxiomReport(entries)


def theta(w: Cocycle3, g: int, x: int, y: int) -> Scalar:
    """``omega(g,x,y) omega(x,y,(xy)^{-1} g xy) / omega(x, x^{-1} g x, y)``."""
    G = w.group
    xy = G.mul(x, y)
    return w(g, x, y) * w(x, y, G.conj(xy, g)) / w(x, G.conj(x, g), y)


def gamma(w: Cocycle3, x: int, u: int, v: int) -> Scalar:
    """``omega(u,v,x) omega(x, x^{-1}ux, x^{-1}vx) / omega(u, x, x^{-1}vx)``."""
    G = w.group
    return w(u, v, x) * w(x, G.conj(x, u), G.conj(x, v)) / w(u, x, G.conj(x, v))


def abelian_theta(w: Cocycle3, a: int, b: int, c: int) -> Scalar:
    """Closed form of theta and gamma on an abelian group."""
    return w(b, c, a) * w(a, b, c) / w(b, a, c)


def z3_cocycle(ctx: ScalarContext, p="p", q="q", r_choice: int = 1) -> Cocycle3:
    """The normalized 3-cocycles of ``Z_3`` with ``r = zeta_3^r_choice``."""
    if r_choice not in (0, 1, 2):
        raise ValueError("r_choice must be 0, 1 or 2")
    if ctx.order % 3:
        raise ValueError("cyclotomic order must be a multiple of 3 to host a cube root of unity")
    P = ctx.param(p) if isinstance(p, str) else ctx.coerce(p)
    Q = ctx.param(q) if isinstance(q, str) else ctx.coerce(q)
    r = ctx.root(ctx.order // 3 * r_choice)
    ri = r.inverse()
    x, x2 = 1, 2
    values = {
        (x, x, x): P,
        (x, x, x2): Q,
        (x, x2, x): ri / P,
        (x, x2, x2): r / Q,
        (x2, x, x): ri * P / Q,
        (x2, x, x2): r * P,
        (x2, x2, x): Q * ri / P,
        (x2, x2, x2): r / P,
    }
    return Cocycle3(cyclic_group(3), ctx, values)


def dw_index(G: FiniteGroup, g: int, x: int) -> int:
    return g * G.order + x


def dw_labels(G: FiniteGroup) -> tuple[str, ...]:
    return tuple(f"e_{G.name(g)}·{G.name(x)}" for g in G.elements() for x in G.elements())


def build_dw_double(G: FiniteGroup, w: Cocycle3, validate: bool = True) -> QTHQBialgebra:
    """The twisted quantum double on the basis ``e_g x`` (index ``g*n + x``) with identity twist."""
    if w.group != G:
        raise InvalidCocycle("cocycle lives on another group")
    if validate:
        rep = check_cocycle3(w)
        if not rep.overall:
            raise InvalidCocycle("not a normalized 3-cocycle", rep)
    ctx = w.ctx
    n = G.order
    idx = lambda g, x: g * n + x  # noqa: E731
    space = Space(ctx, dw_labels(G))
    one = ctx.one()
    els = list(G.elements())
    mu = {}
    for g, x, h, y in itertools.product(els, repeat=4):
        if g == G.mul(G.mul(x, h), G.inv(x)):
            mu[(idx(g, x), idx(h, y))] = {(idx(g, G.mul(x, y)),): theta(w, g, x, y)}
    delta = {}
    for g, x in itertools.product(els, repeat=2):
        col = {}
        for u in els:
            v = G.mul(G.inv(u), g)
            col[(idx(u, x), idx(v, x))] = gamma(w, x, u, v)
        delta[(idx(g, x),)] = col
    eps = counit_map({idx(0, x): one for x in els})
    unit = TensorElement(1, {(idx(g, 0),): one for g in els})
    phi = TensorElement(3, {(idx(a, 0), idx(b, 0), idx(c, 0)): w.inverse(a, b, c) for a, b, c in itertools.product(els, repeat=3)})
    r = TensorElement(2, {(idx(g, 0), idx(h, g)): one for g in els for h in els})
    alpha = LinMap.identity(ctx, n * n)
    return QTHQBialgebra(space, MulMap(mu), unit, ComulMap(delta), eps, alpha, phi, r)
