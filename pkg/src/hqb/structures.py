"""Structure bundles from Hom-algebras up to quasi-triangular HQ-bialgebras."""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from typing import Iterator

from .scalar import Scalar, ScalarContext
from .tensor import ComulMap, LinMap, MulMap, Space, TensorElement, invert_element, unit_power


class StructureError(Exception):
    pass


class MissingUnit(StructureError):
    pass


class MissingCounit(StructureError):
    pass


class NotInvertible(StructureError):
    pass


class DimensionMismatch(StructureError, ValueError):
    pass


EPS_NOTE = "counit read as a map A -> K (the definition's K -> A is taken as a slip)"


@dataclass
class AxiomEntry:
    axiom: str
    passed: bool
    witness: tuple | None = None
    residual: TensorElement | None = None
    failures: int = 0
    note: str | None = None

    def render_witness(self, space: Space | None) -> list[str] | None:
        if self.witness is None:
            return None
        if space is None:
            return [str(w) for w in self.witness]
        return [space.labels[w] if isinstance(w, int) else str(w) for w in self.witness]


@dataclass
class AxiomReport:
    entries: list[AxiomEntry] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    space: Space | None = None

    @property
    def overall(self) -> bool:
        return all(e.passed for e in self.entries)

    def __bool__(self) -> bool:
        return self.overall

    def __iter__(self) -> Iterator[AxiomEntry]:
        return iter(self.entries)

    def __getitem__(self, axiom: str) -> AxiomEntry:
        for e in self.entries:
            if e.axiom == axiom:
                return e
        raise KeyError(axiom)

    def __contains__(self, axiom: str) -> bool:
        return any(e.axiom == axiom for e in self.entries)

    def failed(self) -> list[AxiomEntry]:
        return [e for e in self.entries if not e.passed]

    def extend(self, other: AxiomReport, prefix: str = "") -> AxiomReport:
        for e in other.entries:
            self.entries.append(dataclasses.replace(e, axiom=prefix + e.axiom))
        for n in other.notes:
            if n not in self.notes:
                self.notes.append(n)
        if self.space is None:
            self.space = other.space
        return self

    def summary(self) -> str:
        lines = []
        for e in self.entries:
            status = "pass" if e.passed else f"FAIL ({e.failures})"
            line = f"{e.axiom}: {status}"
            if not e.passed and e.witness is not None:
                line += f" at {tuple(e.render_witness(self.space))}"
            lines.append(line)
        lines.append("overall: " + ("pass" if self.overall else "FAIL"))
        return "\n".join(lines)

    def __repr__(self):
        return f"AxiomReport(overall={self.overall}, entries={len(self.entries)}, failed={[e.axiom for e in self.failed()]})"


def counit_map(values: dict[int, Scalar]) -> LinMap:
    """Build ``eps : A -> K`` from its values on basis vectors."""
    return LinMap(1, 0, {(i,): {(): v} for i, v in values.items()})


def counit_value(eps: LinMap, x: TensorElement, ctx: ScalarContext) -> Scalar:
    return eps.apply(x).as_scalar(ctx)


class _Cached:
    """Mixin holding per-instance caches that never survive ``replace``."""

    def _cache_get(self, key, build):
        cache = self.__dict__.setdefault("_cache", {})
        if key not in cache:
            cache[key] = build()
        return cache[key]

    @property
    def ctx(self) -> ScalarContext:
        return self.space.ctx

    @property
    def dim(self) -> int:
        return self.space.dim

    def replace(self, **changes):
        return dataclasses.replace(self, **changes)

    def identity(self) -> LinMap:
        return LinMap.identity(self.ctx, self.dim)


@dataclass(eq=False)
class HomAlgebra(_Cached):
    space: Space
    mu: MulMap
    alpha: LinMap
    eta: TensorElement | None = None

    def product(self, x: TensorElement, y: TensorElement) -> TensorElement:
        return self.mu.apply(x.otimes(y))

    def unit(self) -> TensorElement:
        if self.eta is None:
            raise MissingUnit("structure has no unit")
        return self.eta

    def invert(self, v: TensorElement) -> TensorElement:
        return _invert(self, v)


@dataclass(eq=False)
class HomCoalgebra(_Cached):
    space: Space
    delta: ComulMap
    alpha: LinMap
    eps: LinMap | None = None

    def coproduct(self, x: TensorElement) -> TensorElement:
        return self.delta.apply(x)

    def counit(self) -> LinMap:
        if self.eps is None:
            raise MissingCounit("structure has no counit")
        return self.eps


@dataclass(eq=False)
class HomBialgebra(_Cached):
    space: Space
    mu: MulMap
    eta: TensorElement
    delta: ComulMap
    eps: LinMap
    alpha: LinMap
    beta: LinMap | None = None

    @property
    def coalgebra_twist(self) -> LinMap:
        return self.alpha if self.beta is None else self.beta

    def algebra(self) -> HomAlgebra:
        return HomAlgebra(self.space, self.mu, self.alpha, self.eta)

    def coalgebra(self) -> HomCoalgebra:
        return HomCoalgebra(self.space, self.delta, self.coalgebra_twist, self.eps)

    def unit(self) -> TensorElement:
        return self.eta

    def counit(self) -> LinMap:
        return self.eps


@dataclass(eq=False)
class HQBialgebra(_Cached):
    space: Space
    mu: MulMap
    eta: TensorElement
    delta: ComulMap
    eps: LinMap
    alpha: LinMap
    phi: TensorElement

    def algebra(self) -> HomAlgebra:
        return HomAlgebra(self.space, self.mu, self.alpha, self.eta)

    def coalgebra(self) -> HomCoalgebra:
        return HomCoalgebra(self.space, self.delta, self.alpha, self.eps)

    def bialgebra(self) -> HomBialgebra:
        return HomBialgebra(self.space, self.mu, self.eta, self.delta, self.eps, self.alpha)

    def unit(self) -> TensorElement:
        return self.eta

    def counit(self) -> LinMap:
        return self.eps

    @property
    def phi_inv(self) -> TensorElement:
        return self._cache_get("phi_inv", lambda: _invert(self, self.phi))

    def inverse_of(self, v: TensorElement) -> TensorElement:
        return _invert(self, v)

    def hq(self) -> HQBialgebra:
        return HQBialgebra(self.space, self.mu, self.eta, self.delta, self.eps, self.alpha, self.phi)


@dataclass(eq=False)
class QTHQBialgebra(HQBialgebra):
    r: TensorElement | None = None

    def __post_init__(self):
        if self.r is None:
            raise StructureError("a quasi-triangular structure needs R")

    @property
    def r_inv(self) -> TensorElement:
        return self._cache_get("r_inv", lambda: _invert(self, self.r))

    @classmethod
    def from_hq(cls, h: HQBialgebra, r: TensorElement) -> QTHQBialgebra:
        return cls(h.space, h.mu, h.eta, h.delta, h.eps, h.alpha, h.phi, r)


def _invert(s, v: TensorElement) -> TensorElement:
    sol = invert_element(s.mu, s.unit(), v, s.dim)
    if sol is None:
        raise NotInvertible(f"element of power {v.power} has no inverse")
    return sol.value


def phi_trivial(space: Space, unit: TensorElement) -> TensorElement:
    """``1 (x) 1 (x) 1``."""
    return unit_power(unit, 3)


def with_twist(s, alpha: LinMap):
    """Same structure constants with another twist map."""
    return s.replace(alpha=alpha)
