"""Sparse tensors over one finite-dimensional space.

Elements of ``A^{(x)k}`` are dicts from k-tuples of basis indices to
nonzero scalars.  Linear maps ``A^{(x)j} -> A^{(x)k}`` are stored by
column: ``cols[j_tuple] = {k_tuple: scalar}``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .linsolve import Solution, solve
from .scalar import Scalar, ScalarContext


class TensorError(Exception):
    pass


class PowerMismatch(TensorError, ValueError):
    pass


class IndexOutOfRange(TensorError, IndexError):
    pass


class BadPermutation(TensorError, ValueError):
    pass


class SlotConflict(TensorError, ValueError):
    pass


@dataclass(frozen=True)
class Space:
    """The underlying module A: a basis of ``dim`` labelled vectors over ``ctx``."""

    ctx: ScalarContext
    labels: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(self.labels))
        if not self.labels:
            raise ValueError("a space needs at least one basis vector")
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("basis labels must be distinct")

    @property
    def dim(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def basis(self, i: int) -> TensorElement:
        return TensorElement(1, {(i,): self.ctx.one()})

    def basis_tuples(self, k: int) -> Iterable[tuple[int, ...]]:
        return itertools.product(range(self.dim), repeat=k)

    def render(self, key: Sequence[int]) -> str:
        return "⊗".join(self.labels[i] for i in key) if key else "1"


def _drop_zeros(coords: Mapping) -> dict:
    return {k: v for k, v in coords.items() if v}


class TensorElement:
    """An element of ``A^{(x)power}``; power 0 elements are plain scalars."""

    __slots__ = ("power", "coords")

    def __init__(self, power: int, coords: Mapping[tuple, Scalar] | None = None):
        self.power = power
        self.coords = _drop_zeros(coords or {})
        for key in self.coords:
            if len(key) != power:
                raise PowerMismatch(f"key {key} does not have length {power}")

    @classmethod
    def zero(cls, power: int) -> TensorElement:
        return cls(power, {})

    @classmethod
    def scalar(cls, s: Scalar) -> TensorElement:
        return cls(0, {(): s})

    def __iter__(self):
        return iter(self.coords.items())

    def __len__(self):
        return len(self.coords)

    def __getitem__(self, key):
        return self.coords.get(tuple(key))

    def get(self, key, default=None):
        return self.coords.get(tuple(key), default)

    def is_zero(self) -> bool:
        return not self.coords

    def _check(self, other: TensorElement):
        if not isinstance(other, TensorElement):
            raise TypeError(f"expected TensorElement, got {type(other).__name__}")
        if other.power != self.power:
            raise PowerMismatch(f"powers {self.power} and {other.power} differ")

    def __add__(self, other: TensorElement) -> TensorElement:
        self._check(other)
        out = dict(self.coords)
        for k, v in other.coords.items():
            w = out[k] + v if k in out else v
            if w:
                out[k] = w
            else:
                out.pop(k, None)
        return TensorElement(self.power, out)

    def __sub__(self, other: TensorElement) -> TensorElement:
        return self + (-other)

    def __neg__(self) -> TensorElement:
        return TensorElement(self.power, {k: -v for k, v in self.coords.items()})

    def scale(self, s) -> TensorElement:
        if not s:
            return TensorElement(self.power)
        return TensorElement(self.power, {k: v * s for k, v in self.coords.items()})

    def __rmul__(self, s) -> TensorElement:
        if isinstance(s, TensorElement):
            return NotImplemented
        return self.scale(s)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TensorElement):
            return NotImplemented
        return self.power == other.power and self.coords == other.coords

    __hash__ = None

    def otimes(self, other: TensorElement) -> TensorElement:
        out = {}
        for a, s in self.coords.items():
            for b, t in other.coords.items():
                out[a + b] = s * t
        return TensorElement(self.power + other.power, out)

    def as_scalar(self, ctx: ScalarContext) -> Scalar:
        if self.power != 0:
            raise PowerMismatch("only power-0 elements are scalars")
        return self.coords.get((), ctx.zero())

    def render(self, space: Space) -> str:
        if not self.coords:
            return "0"
        parts = []
        for k in sorted(self.coords):
            parts.append(f"({self.coords[k]})*{space.render(k)}")
        return " + ".join(parts)

    def __repr__(self):
        body = ", ".join(f"{k}: {v}" for k, v in sorted(self.coords.items()))
        return f"TensorElement({self.power}, {{{body}}})"


class LinMap:
    """Sparse linear map ``A^{(x)source} -> A^{(x)target}``."""

    __slots__ = ("source", "target", "cols")

    def __init__(self, source: int, target: int, cols: Mapping[tuple, Mapping[tuple, Scalar]] | None = None):
        self.source = source
        self.target = target
        clean = {}
        for j, col in (cols or {}).items():
            j = tuple(j)
            if len(j) != source:
                raise PowerMismatch(f"column key {j} does not have length {source}")
            col = {tuple(k): v for k, v in col.items() if v}
            for k in col:
                if len(k) != target:
                    raise PowerMismatch(f"row key {k} does not have length {target}")
            if col:
                clean[j] = col
        self.cols = clean

    @classmethod
    def identity(cls, ctx: ScalarContext, dim: int, power: int = 1) -> LinMap:
        one = ctx.one()
        return cls(power, power, {k: {k: one} for k in itertools.product(range(dim), repeat=power)})

    @classmethod
    def from_images(cls, source: int, target: int, images: Mapping[tuple, TensorElement]) -> LinMap:
        return cls(source, target, {tuple(j): dict(v.coords) for j, v in images.items()})

    @classmethod
    def from_rows(cls, source: int, target: int, entries: Mapping[tuple[tuple, tuple], Scalar]) -> LinMap:
        cols: dict = {}
        for (k, j), v in entries.items():
            cols.setdefault(tuple(j), {})[tuple(k)] = v
        return cls(source, target, cols)

    @property
    def entries(self) -> dict[tuple[tuple, tuple], Scalar]:
        return {(k, j): v for j, col in self.cols.items() for k, v in col.items()}

    def image(self, j: Sequence[int]) -> TensorElement:
        return TensorElement(self.target, self.cols.get(tuple(j), {}))

    def apply(self, v: TensorElement) -> TensorElement:
        if v.power != self.source:
            raise PowerMismatch(f"map expects power {self.source}, got {v.power}")
        out: dict = {}
        for j, s in v.coords.items():
            col = self.cols.get(j)
            if not col:
                continue
            for k, t in col.items():
                w = out[k] + s * t if k in out else s * t
                if w:
                    out[k] = w
                else:
                    del out[k]
        return TensorElement(self.target, out)

    __call__ = apply

    def compose(self, g: LinMap) -> LinMap:
        """``self o g``."""
        if g.target != self.source:
            raise PowerMismatch(f"cannot compose: inner powers {g.target} and {self.source}")
        return LinMap(g.source, self.target, {j: self.apply(TensorElement(g.target, col)).coords for j, col in g.cols.items()})

    def __matmul__(self, g: LinMap) -> LinMap:
        return self.compose(g)

    def kron(self, g: LinMap) -> LinMap:
        return kron(self, g)

    def __add__(self, other: LinMap) -> LinMap:
        self._same_shape(other)
        cols = {j: dict(c) for j, c in self.cols.items()}
        for j, col in other.cols.items():
            tgt = cols.setdefault(j, {})
            for k, v in col.items():
                tgt[k] = tgt[k] + v if k in tgt else v
        return LinMap(self.source, self.target, cols)

    def __sub__(self, other: LinMap) -> LinMap:
        return self + other.scale(-1)

    def scale(self, s) -> LinMap:
        return LinMap(self.source, self.target, {j: {k: v * s for k, v in c.items()} for j, c in self.cols.items()})

    def _same_shape(self, other: LinMap):
        if (self.source, self.target) != (other.source, other.target):
            raise PowerMismatch(f"shapes {self.source}->{self.target} and {other.source}->{other.target} differ")

    def __eq__(self, other) -> bool:
        if not isinstance(other, LinMap):
            return NotImplemented
        return (self.source, self.target) == (other.source, other.target) and self.cols == other.cols

    __hash__ = None

    def is_zero(self) -> bool:
        return not self.cols

    def transpose(self) -> LinMap:
        cols: dict = {}
        for j, col in self.cols.items():
            for k, v in col.items():
                cols.setdefault(k, {})[j] = v
        return LinMap(self.target, self.source, cols)

    def power(self, n: int, ctx: ScalarContext, dim: int) -> LinMap:
        """n-fold composite of an endomorphism (``n = 0`` gives the identity)."""
        if self.source != self.target:
            raise PowerMismatch("only endomorphisms have powers")
        result = LinMap.identity(ctx, dim, self.source)
        for _ in range(n):
            result = self.compose(result)
        return result

    def __repr__(self):
        return f"LinMap({self.source}->{self.target}, {len(self.cols)} columns)"


class MulMap(LinMap):
    """Structure constants of a product ``A (x) A -> A``."""

    __slots__ = ()

    def __init__(self, cols=None):
        super().__init__(2, 1, cols)

    @classmethod
    def from_table(cls, table: Mapping[tuple[int, int], Mapping[int, Scalar] | TensorElement]) -> MulMap:
        cols = {}
        for (i, j), out in table.items():
            if isinstance(out, TensorElement):
                cols[(i, j)] = dict(out.coords)
            else:
                cols[(i, j)] = {(k,): v for k, v in out.items()}
        return cls(cols)

    @classmethod
    def of(cls, f: LinMap) -> MulMap:
        if (f.source, f.target) != (2, 1):
            raise PowerMismatch("a product is a map A⊗A -> A")
        return cls(f.cols)

    def product(self, i: int, j: int) -> TensorElement:
        return TensorElement(1, self.cols.get((i, j), {}))


class ComulMap(LinMap):
    """Structure constants of a coproduct ``A -> A (x) A``."""

    __slots__ = ()

    def __init__(self, cols=None):
        super().__init__(1, 2, cols)

    @classmethod
    def from_table(cls, table: Mapping[int, Mapping[tuple[int, int], Scalar] | TensorElement]) -> ComulMap:
        cols = {}
        for i, out in table.items():
            cols[(i,)] = dict(out.coords) if isinstance(out, TensorElement) else {tuple(k): v for k, v in out.items()}
        return cls(cols)

    @classmethod
    def of(cls, f: LinMap) -> ComulMap:
        if (f.source, f.target) != (1, 2):
            raise PowerMismatch("a coproduct is a map A -> A⊗A")
        return cls(f.cols)

    def coproduct(self, i: int) -> TensorElement:
        return TensorElement(2, self.cols.get((i,), {}))


def kron(f: LinMap, g: LinMap) -> LinMap:
    """``f (x) g`` on ``A^{(x)(f.source+g.source)}``."""
    cols = {}
    for a, fc in f.cols.items():
        for b, gc in g.cols.items():
            cols[a + b] = {x + y: s * t for x, s in fc.items() for y, t in gc.items()}
    return LinMap(f.source + g.source, f.target + g.target, cols)


def kron_all(maps: Sequence[LinMap]) -> LinMap:
    out = maps[0]
    for m in maps[1:]:
        out = kron(out, m)
    return out


def apply_legs(maps: Sequence[LinMap], v: TensorElement) -> TensorElement:
    """Apply ``maps[0] (x) maps[1] (x) ...`` to ``v`` without materializing the product."""
    widths = [m.source for m in maps]
    if sum(widths) != v.power:
        raise PowerMismatch(f"maps consume {sum(widths)} legs, element has {v.power}")
    target = sum(m.target for m in maps)
    out: dict = {}
    for key, s in v.coords.items():
        pieces = []
        pos = 0
        for m, w in zip(maps, widths):
            col = m.cols.get(key[pos:pos + w])
            pos += w
            if not col:
                break
            pieces.append(col.items())
        else:
            for combo in itertools.product(*pieces):
                k = ()
                c = s
                for kk, t in combo:
                    k += kk
                    c = c * t
                w = out[k] + c if k in out else c
                if w:
                    out[k] = w
                else:
                    del out[k]
    return TensorElement(target, out)


def compose(f: LinMap, g: LinMap) -> LinMap:
    return f.compose(g)


def apply(f: LinMap, v: TensorElement) -> TensorElement:
    return f.apply(v)


def tau(ctx: ScalarContext, dim: int, k: int, i: int, j: int) -> LinMap:
    """The leg swap ``tau_ij`` on ``A^{(x)k}`` (legs numbered from 1)."""
    if not (1 <= i < j <= k):
        raise IndexOutOfRange(f"need 1 <= i < j <= k, got i={i}, j={j}, k={k}")
    one = ctx.one()
    cols = {}
    for key in itertools.product(range(dim), repeat=k):
        new = list(key)
        new[i - 1], new[j - 1] = new[j - 1], new[i - 1]
        cols[key] = {tuple(new): one}
    return LinMap(k, k, cols)


def _parse_perm(sigma, k: int) -> tuple[int, ...]:
    if isinstance(sigma, str):
        sigma = [int(ch) for ch in sigma]
    sigma = tuple(sigma)
    if sorted(sigma) != list(range(1, k + 1)):
        raise BadPermutation(f"{sigma} is not a permutation of 1..{k}")
    return sigma


def perm_legs(v: TensorElement, sigma) -> TensorElement:
    """Permute legs: leg t of the result carries leg ``sigma[t]`` of ``v``.

    ``sigma`` may be a sequence of 1-based leg numbers or a digit string such as ``"321"``.
    """
    sigma = _parse_perm(sigma, v.power)
    idx = [s - 1 for s in sigma]
    return TensorElement(v.power, {tuple(key[i] for i in idx): c for key, c in v.coords.items()})


def embed_legs(v: TensorElement, k: int, slots: Sequence[int], unit: TensorElement) -> TensorElement:
    """Place leg i of ``v`` in slot ``slots[i]`` of ``A^{(x)k}`` and ``1_A`` in the remaining slots."""
    slots = tuple(slots)
    if len(slots) != v.power:
        raise SlotConflict(f"{len(slots)} slots for an element of power {v.power}")
    if len(set(slots)) != len(slots) or not all(1 <= s <= k for s in slots):
        raise SlotConflict(f"slots {slots} are not distinct positions in 1..{k}")
    free = [t for t in range(1, k + 1) if t not in slots]
    out: dict = {}
    unit_terms = list(unit.coords.items())
    for key, s in v.coords.items():
        for combo in itertools.product(unit_terms, repeat=len(free)):
            new = [0] * k
            c = s
            for leg, slot in zip(key, slots):
                new[slot - 1] = leg
            for ((u,), t), slot in zip(combo, free):
                new[slot - 1] = u
                c = c * t
            kk = tuple(new)
            w = out[kk] + c if kk in out else c
            if w:
                out[kk] = w
            else:
                del out[kk]
    return TensorElement(k, out)


def unit_power(unit: TensorElement, k: int) -> TensorElement:
    """``1_A^{(x)k}``."""
    out = TensorElement(0, {(): next(iter(unit.coords.values())) ** 0}) if unit.coords else TensorElement(0)
    for _ in range(k):
        out = out.otimes(unit)
    return out


def _leg_table(mu: LinMap) -> dict:
    return {ij: list(col.items()) for ij, col in mu.cols.items()}


def mul_on_power(mu: LinMap, u: TensorElement, v: TensorElement) -> TensorElement:
    """Componentwise product on ``A^{(x)k}``: ``(a1(x)..(x)ak)(b1(x)..(x)bk) = a1b1 (x) .. (x) akbk``."""
    if u.power != v.power:
        raise PowerMismatch(f"cannot multiply powers {u.power} and {v.power}")
    if u.power < 1:
        raise PowerMismatch("componentwise product needs power >= 1")
    table = mu.cols
    out: dict = {}
    for a, s in u.coords.items():
        for b, t in v.coords.items():
            pieces = []
            for x, y in zip(a, b):
                col = table.get((x, y))
                if not col:
                    break
                pieces.append(col.items())
            else:
                st = s * t
                if len(pieces) == 1:
                    combos = (((k, c),) for k, c in pieces[0])
                else:
                    combos = itertools.product(*pieces)
                for combo in combos:
                    k = ()
                    c = st
                    for kk, r in combo:
                        k += kk
                        c = c * r
                    w = out[k] + c if k in out else c
                    if w:
                        out[k] = w
                    else:
                        del out[k]
    return TensorElement(u.power, out)


def mul_chain(mu: LinMap, *factors: TensorElement) -> TensorElement:
    """Left-associated product ``((f1 f2) f3) ...``."""
    acc = factors[0]
    for f in factors[1:]:
        acc = mul_on_power(mu, acc, f)
    return acc


def _basis_products(table: dict, trie: dict, b: tuple, left: bool, one) -> dict:
    """``v e_b`` (``left``) or ``e_b v`` with v given as a leg trie; skips incompatible branches early."""
    out: dict = {}

    def walk(node, depth, key, coef):
        y = b[depth]
        last = depth == len(b) - 1
        for x, sub in node.items():
            col = table.get((x, y) if left else (y, x))
            if not col:
                continue
            for kk, r in col.items():
                c = coef * r
                if last:
                    c = c * sub
                    nk = key + kk
                    w = out[nk] + c if nk in out else c
                    if w:
                        out[nk] = w
                    else:
                        del out[nk]
                else:
                    walk(sub, depth + 1, key + kk, c)

    walk(trie, 0, (), one)
    return out


def invert_element(mu: LinMap, unit: TensorElement, v: TensorElement, dim: int | None = None) -> Solution | None:
    """Solve ``v w = w v = 1^{(x)k}`` for w in ``A^{(x)k}``.

    Returns a :class:`Solution` holding w, or None if v has no two-sided inverse.
    """
    k = v.power
    if k < 1:
        raise PowerMismatch("invert_element needs power >= 1")
    if not v.coords:
        return None
    ctx = next(iter(v.coords.values())).ctx
    if dim is None:
        dim = 1 + max(max(key) for key in list(mu.cols) + list(v.coords))
    target = unit_power(unit, k)
    unknowns = list(itertools.product(range(dim), repeat=k))
    rows: dict = {}
    one = ctx.one()
    trie: dict = {}
    for a, s in v.coords.items():
        node = trie
        for x in a[:-1]:
            node = node.setdefault(x, {})
        node[a[-1]] = s
    table = mu.cols
    for b in unknowns:
        for side in ("L", "R"):
            for c, s in _basis_products(table, trie, b, side == "L", one).items():
                rows.setdefault((side, c), {})[b] = s
    for side in ("L", "R"):
        for c in target.coords:
            rows.setdefault((side, c), {})
    zero = ctx.zero()
    eqs = ((row, target.coords.get(key[1], zero)) for key, row in sorted(rows.items()))
    sol = solve(ctx, unknowns, eqs)
    if sol is None:
        return None
    sol.value = TensorElement(k, sol.value)
    return sol
