"""Sparse exact Gaussian elimination over the scalar field."""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Hashable, Iterable, Sequence

from .scalar import Scalar, ScalarContext


@dataclass
class Solution:
    """One solution of a linear problem plus whether it is the only one."""

    value: object
    unique: bool
    nullity: int = 0


class _Echelon:
    def __init__(self, ctx: ScalarContext, unknowns: Sequence[Hashable]):
        self.ctx = ctx
        self.order = {u: i for i, u in enumerate(unknowns)}
        self.unknowns = list(unknowns)
        self.pivots: list[tuple[Hashable, dict, Scalar]] = []
        self.where: dict[Hashable, int] = {}
        self.consistent = True

    def _reduce(self, row: dict, rhs: Scalar) -> tuple[dict, Scalar]:
        where = self.where
        heap = [where[u] for u in row if u in where]
        heapq.heapify(heap)
        done = set()
        while heap:
            i = heapq.heappop(heap)
            if i in done:
                continue
            done.add(i)
            u, prow, prhs = self.pivots[i]
            c = row.get(u)
            if c is None:
                continue
            for w, a in prow.items():
                old = row.get(w)
                new = -(c * a) if old is None else old - c * a
                if new:
                    row[w] = new
                    if w in where and where[w] not in done:
                        heapq.heappush(heap, where[w])
                else:
                    row.pop(w, None)
            if prhs:
                rhs = rhs - c * prhs
        return row, rhs

    def add(self, row: dict, rhs: Scalar) -> None:
        row = {u: c for u, c in row.items() if c}
        row, rhs = self._reduce(row, rhs)
        if not row:
            if rhs:
                self.consistent = False
            return
        # unit pivots keep everything a Laurent polynomial
        pivot = min(row, key=lambda u: (not row[u].is_unit(), self.order[u]))
        inv = row[pivot].inverse()
        row = {u: (c * inv if u != pivot else self.ctx.one()) for u, c in row.items()}
        self.where[pivot] = len(self.pivots)
        self.pivots.append((pivot, row, rhs * inv))

    def free(self) -> list[Hashable]:
        return [u for u in self.unknowns if u not in self.where]

    def back_substitute(self, values: dict, homogeneous: bool = False) -> dict:
        for u, prow, prhs in reversed(self.pivots):
            acc = self.ctx.zero() if homogeneous else prhs
            for w, a in prow.items():
                if w != u:
                    v = values.get(w)
                    if v:
                        acc = acc - a * v
            if acc:
                values[u] = acc
        return values


def solve(
    ctx: ScalarContext,
    unknowns: Sequence[Hashable],
    equations: Iterable[tuple[dict, Scalar]],
) -> Solution | None:
    """Solve ``sum row[u] * x[u] = rhs`` exactly.

    Returns None if the system is inconsistent.  Free unknowns are set to
    zero; ``unique`` is False whenever any unknown is free.
    """
    ech = _Echelon(ctx, unknowns)
    for row, rhs in equations:
        ech.add(dict(row), rhs)
        if not ech.consistent:
            return None
    free = ech.free()
    values = ech.back_substitute({})
    return Solution(values, unique=not free, nullity=len(free))


def nullspace(
    ctx: ScalarContext,
    unknowns: Sequence[Hashable],
    rows: Iterable[dict],
) -> list[dict]:
    """Basis of the solutions of the homogeneous system given by ``rows``."""
    ech = _Echelon(ctx, unknowns)
    zero = ctx.zero()
    for row in rows:
        ech.add(dict(row), zero)
    basis = []
    for f in ech.free():
        basis.append(ech.back_substitute({f: ctx.one()}, homogeneous=True))
    return basis
