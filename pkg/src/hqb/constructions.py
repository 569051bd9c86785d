"""Structure-producing procedures: twisting, duality, convolution, gauge transformations.

Preconditions are checked, never assumed, and every output is re-checked
before it is returned unless ``verify=False``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from . import checks
from .linsolve import Solution, nullspace, solve
from .scalar import Scalar
from .structures import (
    AxiomReport,
    HomAlgebra,
    HomBialgebra,
    HomCoalgebra,
    HQBialgebra,
    QTHQBialgebra,
    counit_map,
)
from .tensor import (
    ComulMap,
    LinMap,
    MulMap,
    Space,
    TensorElement,
    apply_legs,
    embed_legs,
    kron,
    mul_on_power,
    perm_legs,
)


class ConstructionError(Exception):
    """A construction produced (or would produce) a structure failing its axioms."""

    def __init__(self, message: str, report: AxiomReport | None = None):
        super().__init__(message)
        self.report = report


class NotAWeakMorphism(ConstructionError):
    pass


class NotAMorphism(ConstructionError):
    pass


class NotMultiplicative(ConstructionError):
    pass


class GaugePreconditionFailed(ConstructionError):
    pass


def _require(report: AxiomReport, exc: type, what: str) -> None:
    if not report.overall:
        failed = ", ".join(e.axiom for e in report.failed())
        raise exc(f"{what} (failed: {failed})", report)


def _verify(out, level: str, what: str, verify: bool):
    if verify:
        _require(checks.check_structure(out, level), ConstructionError, f"{what} does not satisfy its axioms")
    return out


def _mul_after(beta: LinMap, mu: LinMap) -> MulMap:
    return MulMap.of(beta.compose(mu))


def _comul_before(delta: LinMap, beta: LinMap) -> ComulMap:
    return ComulMap.of(delta.compose(beta))


# twisting


def twist_algebra(A: HomAlgebra, beta: LinMap, verify: bool = True) -> HomAlgebra:
    """``(A, beta o mu, beta o alpha, eta)`` for a weak self-morphism beta."""
    _require(checks.check_morphism("algebra", beta, A, A, weak=True), NotAWeakMorphism, "beta is not a weak algebra morphism")
    out = HomAlgebra(A.space, _mul_after(beta, A.mu), beta.compose(A.alpha), A.eta)
    return _verify(out, "algebra", "twisted algebra", verify)


def twist_coalgebra(C: HomCoalgebra, beta: LinMap, verify: bool = True) -> HomCoalgebra:
    """``(A, Delta o beta, alpha o beta, eps)`` for a weak self-morphism beta."""
    _require(checks.check_morphism("coalgebra", beta, C, C, weak=True), NotAWeakMorphism, "beta is not a weak coalgebra morphism")
    out = HomCoalgebra(C.space, _comul_before(C.delta, beta), C.alpha.compose(beta), C.eps)
    return _verify(out, "coalgebra", "twisted coalgebra", verify)


def twist_bialgebra(B: HomBialgebra, beta: LinMap, verify: bool = True) -> HomBialgebra:
    _require(checks.check_morphism("bialgebra", beta, B, B), NotAMorphism, "beta is not a bialgebra morphism")
    out = HomBialgebra(
        B.space,
        _mul_after(beta, B.mu),
        B.eta,
        _comul_before(B.delta, beta),
        B.eps,
        beta.compose(B.alpha),
        None if B.beta is None else beta.compose(B.beta),
    )
    return _verify(out, "bialgebra", "twisted bialgebra", verify)


def _twist_hq_data(H: HQBialgebra, beta: LinMap) -> dict:
    return dict(
        space=H.space,
        mu=_mul_after(beta, H.mu),
        eta=H.eta,
        delta=_comul_before(H.delta, beta),
        eps=H.eps,
        alpha=beta.compose(H.alpha),
        phi=H.phi,
    )


def twist_hq(H: HQBialgebra, beta: LinMap, verify: bool = True) -> HQBialgebra:
    """``(A, beta o mu, eta, Delta o beta, eps, beta o alpha, Phi)``."""
    _require(checks.check_morphism("hq", beta, H, H), NotAMorphism, "beta is not an HQ-bialgebra morphism")
    out = HQBialgebra(**_twist_hq_data(H, beta))
    return _verify(out, "hq", "twisted HQ-bialgebra", verify)


def twist_qt(Q: QTHQBialgebra, beta: LinMap, verify: bool = True) -> QTHQBialgebra:
    """As :func:`twist_hq`, keeping R; beta must also fix R."""
    _require(checks.check_morphism("qthq", beta, Q, Q), NotAMorphism, "beta is not a quasi-triangular morphism")
    out = QTHQBialgebra(**_twist_hq_data(Q, beta), r=Q.r)
    return _verify(out, "qt", "twisted quasi-triangular HQ-bialgebra", verify)


def iterate_alpha(H: HQBialgebra, n: int, verify: bool = True) -> HQBialgebra:
    """``(A, alpha^n o mu, eta, Delta o alpha^n, eps, alpha^{n+1}, Phi)``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    rep = checks.check_multiplicative(H.algebra()).extend(checks.check_comultiplicative(H.coalgebra()))
    _require(rep, NotMultiplicative, "alpha is not multiplicative")
    if n == 0:
        return H
    return twist_hq(H, H.alpha.power(n, H.ctx, H.dim), verify)


# duality


def dual_labels(space: Space) -> tuple[str, ...]:
    return tuple(f"{lab}*" for lab in space.labels)


def dual_coalgebra_to_algebra(C: HomCoalgebra, space: Space | None = None) -> HomAlgebra:
    """Product ``(fg)(x) = sum f(x1) g(x2)`` on the dual basis; unit = eps when present."""
    space = space or Space(C.ctx, dual_labels(C.space))
    mu = MulMap.of(C.delta.transpose())
    alpha = C.alpha.transpose()
    eta = None
    if C.eps is not None:
        eta = TensorElement(1, {(i,): v for (i,), col in C.eps.cols.items() for v in col.values()})
    return HomAlgebra(space, mu, alpha, eta)


def dual_algebra_to_coalgebra(A: HomAlgebra, space: Space | None = None) -> HomCoalgebra:
    """Coproduct ``Delta(f)(x (x) y) = f(xy)``; counit ``f -> f(1)`` when unital."""
    space = space or Space(A.ctx, dual_labels(A.space))
    delta = ComulMap.of(A.mu.transpose())
    alpha = A.alpha.transpose()
    eps = None
    if A.eta is not None:
        eps = counit_map({i: v for (i,), v in A.eta.coords.items()})
    return HomCoalgebra(space, delta, alpha, eps)


def dual_bialgebra(B: HomBialgebra, verify: bool = True) -> HomBialgebra:
    """Both duals at once: product from Delta, coproduct from mu, unit eps, counit eta."""
    space = Space(B.ctx, dual_labels(B.space))
    A = dual_coalgebra_to_algebra(B.coalgebra(), space)
    C = dual_algebra_to_coalgebra(B.algebra(), space)
    beta = None if B.beta is None else B.alpha.transpose()
    out = HomBialgebra(space, A.mu, A.eta, C.delta, C.eps, B.coalgebra_twist.transpose(), beta)
    return _verify(out, "bialgebra", "dual Hom-bialgebra", verify)


# convolution


def convolution(B: HomBialgebra, f: LinMap, g: LinMap) -> LinMap:
    """``f * g = mu o (f (x) g) o Delta``."""
    return B.mu.compose(kron(f, g).compose(B.delta))


def convolution_unit(B: HomBialgebra) -> LinMap:
    """``eta o eps``."""
    cols = {}
    for (i,), col in B.eps.cols.items():
        e = col.get(())
        if e:
            cols[(i,)] = {k: v * e for k, v in B.eta.coords.items()}
    return LinMap(1, 1, cols)


def gamma_twist(B: HomBialgebra, f: LinMap) -> LinMap:
    """``alpha o f o beta``."""
    return B.alpha.compose(f.compose(B.coalgebra_twist))


@dataclass
class ConvolutionAlgebra:
    """End(A) with the convolution product, unit ``eta o eps`` and twist ``gamma``."""

    base: HomBialgebra

    @property
    def dim(self) -> int:
        return self.base.dim ** 2

    def product(self, f: LinMap, g: LinMap) -> LinMap:
        return convolution(self.base, f, g)

    def unit(self) -> LinMap:
        return convolution_unit(self.base)

    def twist(self, f: LinMap) -> LinMap:
        return gamma_twist(self.base, f)

    def matrix_unit(self, k: int, j: int) -> LinMap:
        """The map ``e_j -> e_k``."""
        return LinMap(1, 1, {(j,): {(k,): self.base.ctx.one()}})

    def _index(self, k: int, j: int) -> int:
        return k * self.base.dim + j

    def _to_vector(self, f: LinMap) -> dict:
        return {(self._index(k, j),): v for (j,), col in f.cols.items() for (k,), v in col.items()}

    def as_hom_algebra(self) -> HomAlgebra:
        """The same data as a Hom-algebra on the ``dim^2`` matrix units."""
        n = self.base.dim
        ctx = self.base.ctx
        labels = tuple(f"E{k}{j}" for k in range(n) for j in range(n))
        units = {(k, j): self.matrix_unit(k, j) for k in range(n) for j in range(n)}
        mu = {}
        for a, fa in units.items():
            for b, fb in units.items():
                v = self._to_vector(self.product(fa, fb))
                if v:
                    mu[(self._index(*a), self._index(*b))] = v
        alpha = {(self._index(*a),): self._to_vector(self.twist(fa)) for a, fa in units.items()}
        eta = TensorElement(1, self._to_vector(self.unit()))
        return HomAlgebra(Space(ctx, labels), MulMap(mu), LinMap(1, 1, alpha), eta)


def solve_antipode(B: HomBialgebra) -> Solution | None:
    """Solve ``S * id = id * S = eta o eps`` for the matrix entries of S.

    Returns a :class:`Solution` whose value is the LinMap S, or None if no antipode exists.
    """
    n = B.dim
    ctx = B.ctx
    ident = B.identity()
    target = convolution_unit(B)
    unknowns = [(k, j) for k in range(n) for j in range(n)]
    rows: dict = {}
    for k, j in unknowns:
        e = LinMap(1, 1, {(j,): {(k,): ctx.one()}})
        for side, conv in (("L", convolution(B, e, ident)), ("R", convolution(B, ident, e))):
            for (x,), col in conv.cols.items():
                for (y,), v in col.items():
                    rows.setdefault((side, y, x), {})[(k, j)] = v
    for side in ("L", "R"):
        for x in range(n):
            for y in range(n):
                rows.setdefault((side, y, x), {})
    zero = ctx.zero()

    def rhs(y, x):
        return target.cols.get((x,), {}).get((y,), zero)

    sol = solve(ctx, unknowns, ((row, rhs(key[1], key[2])) for key, row in sorted(rows.items())))
    if sol is None:
        return None
    cols: dict = {}
    for (k, j), v in sol.value.items():
        cols.setdefault((j,), {})[(k,)] = v
    sol.value = LinMap(1, 1, cols)
    return sol


# primitives and Hom-Lie


@dataclass
class PrimitiveResult:
    basis: list[TensorElement]
    report: AxiomReport


def _span_member(vectors: list[TensorElement], v: TensorElement, ctx) -> bool:
    if v.is_zero():
        return True
    if not vectors:
        return False
    unknowns = list(range(len(vectors)))
    rows: dict = {}
    for idx, b in enumerate(vectors):
        for key, c in b.coords.items():
            rows.setdefault(key, {})[idx] = c
    for key in v.coords:
        rows.setdefault(key, {})
    zero = ctx.zero()
    return solve(ctx, unknowns, ((row, v.coords.get(key, zero)) for key, row in rows.items())) is not None


def primitives(B: HomBialgebra) -> PrimitiveResult:
    """Basis of ``{x : Delta(x) = 1 (x) x + x (x) 1}`` with closure checks."""
    n = B.dim
    ctx = B.ctx
    one = B.eta
    rows: dict = {}
    for i in range(n):
        e = B.space.basis(i)
        residual = B.delta.image((i,)) - (one.otimes(e) + e.otimes(one))
        for key, c in residual.coords.items():
            rows.setdefault(key, {})[i] = c
    basis = [TensorElement(1, {(i,): v for i, v in vec.items()}) for vec in nullspace(ctx, list(range(n)), rows.values())]
    from .checks import collect

    calpha = B.alpha
    entries = [
        collect("primitive_counit_zero", (((k,), TensorElement(0, {(): B.eps(x).as_scalar(ctx)})) for k, x in enumerate(basis))),
    ]

    def not_in_span(v):
        return TensorElement(1, {}) if _span_member(basis, v, ctx) else v

    entries.append(collect("primitive_alpha_closed", (((k,), not_in_span(calpha(x))) for k, x in enumerate(basis))))

    def brackets():
        for a, b in itertools.product(range(len(basis)), repeat=2):
            x, y = basis[a], basis[b]
            br = B.mu(x.otimes(y)) - B.mu(y.otimes(x))
            yield (a, b), not_in_span(br)

    entries.append(collect("primitive_bracket_closed", brackets()))
    return PrimitiveResult(basis, AxiomReport(entries, space=B.space))


@dataclass
class HomLie:
    space: Space
    bracket: LinMap
    alpha: LinMap

    def __call__(self, x: TensorElement, y: TensorElement) -> TensorElement:
        return self.bracket(x.otimes(y))


def commutator_bracket(mu: LinMap, dim: int, ctx) -> LinMap:
    swap = LinMap(2, 2, {(i, j): {(j, i): ctx.one()} for i in range(dim) for j in range(dim)})
    return mu - mu.compose(swap)


def hlie(A: HomAlgebra, strict: bool = True) -> tuple[HomLie, AxiomReport]:
    """Bracket ``mu - mu o tau`` with antisymmetry and Hom-Jacobi checks.

    With ``strict=False`` a non-multiplicative twist is recorded in the report
    instead of raising.
    """
    mult = checks.check_multiplicative(A)
    if strict:
        _require(mult, NotMultiplicative, "alpha is not multiplicative")
    from .checks import collect

    br = commutator_bracket(A.mu, A.dim, A.ctx)
    L = HomLie(A.space, br, A.alpha)
    n = A.dim
    e = [A.space.basis(i) for i in range(n)]
    al = [A.alpha(x) for x in e]
    pair = {(i, j): br.image((i, j)) for i in range(n) for j in range(n)}

    def anti():
        for i, j in itertools.product(range(n), repeat=2):
            yield (i, j), pair[i, j] + pair[j, i]

    def jacobi():
        for i, j, k in itertools.product(range(n), repeat=3):
            total = TensorElement(1)
            for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
                if pair[b, c].coords and al[a].coords:
                    total = total + br(al[a].otimes(pair[b, c]))
            yield (i, j, k), total

    rep = AxiomReport([collect("antisymmetry", anti()), collect("hom_jacobi", jacobi())], space=A.space)
    if not strict:
        rep.extend(mult)
    return L, rep


# opposite structures


def opposite_variants(H: HQBialgebra, which: str, verify: bool = True) -> HQBialgebra:
    """``op``, ``cop`` or ``opcop``, with the matching associator."""
    n = H.dim
    ctx = H.ctx
    swap = LinMap(2, 2, {(i, j): {(j, i): ctx.one()} for i in range(n) for j in range(n)})
    if which == "op":
        out = H.hq().replace(mu=MulMap.of(H.mu.compose(swap)), phi=H.phi_inv)
    elif which == "cop":
        out = H.hq().replace(delta=ComulMap.of(swap.compose(H.delta)), phi=perm_legs(H.phi_inv, "321"))
    elif which == "opcop":
        out = H.hq().replace(
            mu=MulMap.of(H.mu.compose(swap)),
            delta=ComulMap.of(swap.compose(H.delta)),
            phi=perm_legs(H.phi, "321"),
        )
    else:
        raise ValueError("which must be op, cop or opcop")
    return _verify(out, "hq", f"{which} structure", verify)


# gauge transformations


@dataclass
class GaugeData:
    """Intermediate pieces of a gauge transformation, kept for diagnostics."""

    F: TensorElement
    F_inv: TensorElement
    delta: ComulMap
    phi: TensorElement
    phi_right: TensorElement


def gauge_data(H: HQBialgebra, F: TensorElement) -> GaugeData:
    rep = checks.check_gauge(H, F)
    _require(rep, GaugePreconditionFailed, "F is not a gauge transformation")
    mu, al, de, one = H.mu, H.alpha, H.delta, H.eta
    F_inv = H.inverse_of(F)
    cols = {}
    for i in range(H.dim):
        d = de.image((i,))
        cols[(i,)] = mul_on_power(mu, mul_on_power(mu, F, d), F_inv).coords
    f23 = embed_legs(F, 3, (2, 3), one)
    f12_inv = embed_legs(F_inv, 3, (1, 2), one)
    a_d_F = apply_legs([al, de], F)
    d_a_Finv = apply_legs([de, al], F_inv)
    inner = mul_on_power(mu, d_a_Finv, f12_inv)
    phi_F = mul_on_power(mu, f23, mul_on_power(mu, a_d_F, mul_on_power(mu, H.phi, inner)))
    phi_right = mul_on_power(mu, mul_on_power(mu, mul_on_power(mu, mul_on_power(mu, f23, a_d_F), H.phi), d_a_Finv), f12_inv)
    return GaugeData(F, F_inv, ComulMap(cols), phi_F, phi_right)


def gauge_transform(H: HQBialgebra, F: TensorElement, verify: bool = True) -> HQBialgebra:
    """``(A, mu, eta, Delta_F, eps, alpha^3, Phi_F)`` with the printed nesting."""
    g = gauge_data(H, F)
    out = HQBialgebra(H.space, H.mu, H.eta, g.delta, H.eps, H.alpha.power(3, H.ctx, H.dim), g.phi)
    return _verify(out, "hq", "gauge transform", verify)


def gauge_lemma_residual(H: HQBialgebra, F: TensorElement, x: TensorElement, y: TensorElement,
                         side: int = 1, data: GaugeData | None = None) -> TensorElement:
    """Residual of the conjugation identity for ``Delta_F`` on ``x (x) y``.

    side 1: ``(alpha^3 (x) Delta_F)(x (x) y) - F_23 ((alpha (x) Delta)(x (x) y)) F_23^{-1}``;
    side 2: ``(Delta_F (x) alpha^3)(x (x) y) - F_12 ((Delta (x) alpha)(x (x) y)) F_12^{-1}``.
    """
    g = gauge_data(H, F) if data is None else data
    one = H.eta
    a3 = H.alpha.power(3, H.ctx, H.dim)
    if side == 1:
        legs, outer, inner = (2, 3), [a3, g.delta], [H.alpha, H.delta]
    elif side == 2:
        legs, outer, inner = (1, 2), [g.delta, a3], [H.delta, H.alpha]
    else:
        raise ValueError(f"side must be 1 or 2, got {side}")
    lhs = apply_legs(outer, x.otimes(y))
    fe = embed_legs(F, 3, legs, one)
    fe_inv = embed_legs(g.F_inv, 3, legs, one)
    rhs = mul_on_power(H.mu, mul_on_power(H.mu, fe, apply_legs(inner, x.otimes(y))), fe_inv)
    return lhs - rhs


def gauge_delta_residual(H: HQBialgebra, F: TensorElement, x: TensorElement, y: TensorElement,
                         data: GaugeData | None = None) -> TensorElement:
    """``Delta_F(xy) - Delta_F(x) Delta_F(y)``; zero when ``Delta_F`` is multiplicative."""
    g = gauge_data(H, F) if data is None else data
    return g.delta(H.mu(x.otimes(y))) - mul_on_power(H.mu, g.delta(x), g.delta(y))
