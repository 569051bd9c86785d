"""JSON structure files and report documents.

Scalars are strings in the scalar grammar; sparse sections are keyed by
comma-joined 0-based basis indices and omitted entries are zero.
"""

from __future__ import annotations

import json
import os
from typing import Any

from .scalar import ParseError, Scalar, ScalarContext, format_scalar
from .structures import (
    AxiomReport,
    HomAlgebra,
    HomBialgebra,
    HomCoalgebra,
    HQBialgebra,
    QTHQBialgebra,
    counit_map,
)
from .tensor import ComulMap, LinMap, MulMap, Space, TensorElement

ENV_ORDER = "HQB_CYCLOTOMIC_ORDER"

KINDS = {
    "hom_algebra": HomAlgebra,
    "hom_coalgebra": HomCoalgebra,
    "hom_bialgebra": HomBialgebra,
    "hq_bialgebra": HQBialgebra,
    "qt_hq_bialgebra": QTHQBialgebra,
}
OTHER_KINDS = ("morphism", "element", "group", "cocycle")


class InputError(ValueError):
    """A structure file that does not parse; ``path`` names the offending JSON member."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


def kind_of(s) -> str:
    for name, cls in reversed(list(KINDS.items())):
        if type(s) is cls:
            return name
    raise TypeError(f"cannot serialize {type(s).__name__}")


# writing


def _key(t) -> str:
    return ",".join(str(i) for i in t)


def _sorted(items):
    return sorted(items, key=lambda kv: kv[0])


def linmap_section(f: LinMap) -> dict:
    out = {}
    for j, col in _sorted(f.cols.items()):
        out[_key(j)] = {_key(k): format_scalar(v) for k, v in _sorted(col.items())}
    return out


def element_section(v: TensorElement) -> dict:
    return {_key(k): format_scalar(c) for k, c in _sorted(v.coords.items())}


def counit_section(eps: LinMap) -> dict:
    return {_key(j): format_scalar(col[()]) for j, col in _sorted(eps.cols.items())}


def header(kind: str, ctx: ScalarContext, space: Space | None = None) -> dict:
    doc: dict[str, Any] = {"kind": kind, "cyclotomic_order": ctx.order, "parameters": list(ctx.params)}
    if space is not None:
        doc["dim"] = space.dim
        doc["basis"] = list(space.labels)
    return doc


def structure_to_doc(s) -> dict:
    doc = header(kind_of(s), s.ctx, s.space)
    if hasattr(s, "mu"):
        doc["mu"] = linmap_section(s.mu)
    if hasattr(s, "delta"):
        doc["delta"] = linmap_section(s.delta)
    doc["alpha"] = linmap_section(s.alpha)
    if isinstance(s, HomBialgebra) and s.beta is not None:
        doc["beta"] = linmap_section(s.beta)
    if getattr(s, "eta", None) is not None:
        doc["unit"] = element_section(s.eta)
    if getattr(s, "eps", None) is not None:
        doc["counit"] = counit_section(s.eps)
    if isinstance(s, HQBialgebra):
        doc["phi"] = element_section(s.phi)
    if isinstance(s, QTHQBialgebra):
        doc["r"] = element_section(s.r)
    return doc


def morphism_to_doc(f: LinMap, ctx: ScalarContext, space: Space | None = None) -> dict:
    doc = header("morphism", ctx, space)
    doc["map"] = linmap_section(f)
    return doc


def element_to_doc(v: TensorElement, ctx: ScalarContext, space: Space | None = None) -> dict:
    doc = header("element", ctx, space)
    doc["power"] = v.power
    doc["coords"] = element_section(v)
    return doc


def group_to_doc(G) -> dict:
    doc: dict[str, Any] = {"kind": "group", "table": [list(row) for row in G.table]}
    if G.names:
        doc["names"] = list(G.names)
    return doc


def cocycle_to_doc(w) -> dict:
    doc = header("cocycle", w.ctx)
    doc["group"] = group_to_doc(w.group)
    doc["values"] = {_key(t): format_scalar(v) for t, v in _sorted(w.values.items()) if v != w.ctx.one()}
    return doc


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=1, ensure_ascii=False) + "\n"


def save(doc: dict, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(doc))


# reading


def load(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise InputError(path, f"cannot read file ({exc.strerror})") from exc
    except json.JSONDecodeError as exc:
        raise InputError(path, f"invalid JSON at line {exc.lineno} column {exc.colno}") from exc
    if not isinstance(doc, dict):
        raise InputError("$", "top level must be an object")
    return doc


def context_from_doc(doc: dict, path: str = "$") -> ScalarContext:
    order = doc.get("cyclotomic_order")
    if order is None:
        order = int(os.environ.get(ENV_ORDER, "24"))
    if not isinstance(order, int) or order < 1:
        raise InputError(f"{path}.cyclotomic_order", "must be a positive integer")
    params = doc.get("parameters", [])
    if not isinstance(params, list) or not all(isinstance(p, str) for p in params):
        raise InputError(f"{path}.parameters", "must be a list of names")
    try:
        return ScalarContext(order, tuple(params))
    except ValueError as exc:
        raise InputError(f"{path}.parameters", str(exc)) from exc


def _scalar(ctx: ScalarContext, text, path: str) -> Scalar:
    if isinstance(text, int) and not isinstance(text, bool):
        return ctx.const(text)
    if not isinstance(text, str):
        raise InputError(path, "scalar must be a string in the scalar grammar")
    try:
        return ctx.parse(text)
    except ParseError as exc:
        raise InputError(path, f"{exc}") from exc


def _index_tuple(key: str, length: int, dim: int, path: str) -> tuple[int, ...]:
    parts = key.split(",") if key != "" else []
    if len(parts) != length:
        raise InputError(path, f"key {key!r} needs {length} comma-separated indices")
    try:
        t = tuple(int(p) for p in parts)
    except ValueError as exc:
        raise InputError(path, f"key {key!r} is not made of integers") from exc
    for i in t:
        if not 0 <= i < dim:
            raise InputError(path, f"index {i} out of range 0..{dim - 1}")
    return t


def _obj(doc: dict, name: str, path: str, required: bool = True):
    if name not in doc:
        if required:
            raise InputError(f"{path}.{name}", "missing section")
        return None
    sec = doc[name]
    if not isinstance(sec, dict):
        raise InputError(f"{path}.{name}", "must be an object")
    return sec


def linmap_from_section(ctx, sec: dict, source: int, target: int, dim: int, path: str) -> LinMap:
    cols = {}
    for jk, col in sec.items():
        p = f"{path}[{jk!r}]"
        j = _index_tuple(jk, source, dim, p)
        if not isinstance(col, dict):
            raise InputError(p, "must be an object")
        cols[j] = {_index_tuple(kk, target, dim, f"{p}[{kk!r}]"): _scalar(ctx, v, f"{p}[{kk!r}]") for kk, v in col.items()}
    return LinMap(source, target, cols)


def element_from_section(ctx, sec: dict, power: int, dim: int, path: str) -> TensorElement:
    return TensorElement(power, {_index_tuple(k, power, dim, f"{path}[{k!r}]"): _scalar(ctx, v, f"{path}[{k!r}]") for k, v in sec.items()})


def _space(doc: dict, ctx: ScalarContext, path: str = "$") -> Space:
    dim = doc.get("dim")
    if not isinstance(dim, int) or dim < 1:
        raise InputError(f"{path}.dim", "must be a positive integer")
    labels = doc.get("basis") or [f"e{i + 1}" for i in range(dim)]
    if not isinstance(labels, list) or len(labels) != dim:
        raise InputError(f"{path}.basis", f"needs {dim} labels")
    try:
        return Space(ctx, tuple(str(x) for x in labels))
    except ValueError as exc:
        raise InputError(f"{path}.basis", str(exc)) from exc


def structure_from_doc(doc: dict, path: str = "$"):
    kind = doc.get("kind")
    if kind not in KINDS:
        raise InputError(f"{path}.kind", f"expected one of {sorted(KINDS)}, got {kind!r}")
    ctx = context_from_doc(doc, path)
    space = _space(doc, ctx, path)
    n = space.dim

    def lm(name, s, t, required=True):
        sec = _obj(doc, name, path, required)
        return None if sec is None else linmap_from_section(ctx, sec, s, t, n, f"{path}.{name}")

    def el(name, power, required=True):
        sec = _obj(doc, name, path, required)
        return None if sec is None else element_from_section(ctx, sec, power, n, f"{path}.{name}")

    def eps(required=True):
        sec = _obj(doc, "counit", path, required)
        if sec is None:
            return None
        vals = {}
        for k, v in sec.items():
            (i,) = _index_tuple(k, 1, n, f"{path}.counit[{k!r}]")
            vals[i] = _scalar(ctx, v, f"{path}.counit[{k!r}]")
        return counit_map(vals)

    alpha = lm("alpha", 1, 1, required=False) or LinMap.identity(ctx, n)
    if kind == "hom_algebra":
        return HomAlgebra(space, MulMap.of(lm("mu", 2, 1)), alpha, el("unit", 1, False))
    if kind == "hom_coalgebra":
        return HomCoalgebra(space, ComulMap.of(lm("delta", 1, 2)), alpha, eps(False))
    mu = MulMap.of(lm("mu", 2, 1))
    delta = ComulMap.of(lm("delta", 1, 2))
    unit = el("unit", 1)
    counit = eps()
    if kind == "hom_bialgebra":
        return HomBialgebra(space, mu, unit, delta, counit, alpha, lm("beta", 1, 1, False))
    phi = el("phi", 3)
    if kind == "hq_bialgebra":
        return HQBialgebra(space, mu, unit, delta, counit, alpha, phi)
    return QTHQBialgebra(space, mu, unit, delta, counit, alpha, phi, el("r", 2))


def morphism_from_doc(doc: dict, dim: int, ctx: ScalarContext | None = None, path: str = "$") -> LinMap:
    if doc.get("kind") != "morphism":
        raise InputError(f"{path}.kind", "expected 'morphism'")
    ctx = ctx_for(doc, ctx, path)
    return linmap_from_section(ctx, _obj(doc, "map", path), 1, 1, dim, f"{path}.map")


def element_from_doc(doc: dict, dim: int, ctx: ScalarContext | None = None, path: str = "$") -> TensorElement:
    if doc.get("kind") != "element":
        raise InputError(f"{path}.kind", "expected 'element'")
    ctx = ctx_for(doc, ctx, path)
    power = doc.get("power")
    if not isinstance(power, int) or power < 0:
        raise InputError(f"{path}.power", "must be a nonnegative integer")
    return element_from_section(ctx, _obj(doc, "coords", path), power, dim, f"{path}.coords")


def ctx_for(doc: dict, ctx: ScalarContext | None, path: str) -> ScalarContext:
    """Context of an auxiliary file; it must agree with the structure it acts on."""
    own = context_from_doc(doc, path) if ("cyclotomic_order" in doc or "parameters" in doc) else None
    if ctx is None:
        return own or context_from_doc(doc, path)
    if own is not None and own.order != ctx.order:
        raise InputError(f"{path}.cyclotomic_order", f"{own.order} differs from the structure's {ctx.order}")
    if own is not None and not set(own.params) <= set(ctx.params):
        extra = sorted(set(own.params) - set(ctx.params))
        raise InputError(f"{path}.parameters", f"parameters {extra} are unknown to the structure")
    return ctx


def group_from_doc(doc: dict, path: str = "$"):
    from .quantum import FiniteGroup, GroupError

    table = doc.get("table")
    if not isinstance(table, list):
        raise InputError(f"{path}.table", "must be a square integer matrix")
    try:
        return FiniteGroup(tuple(tuple(row) for row in table), tuple(doc["names"]) if doc.get("names") else None)
    except (GroupError, TypeError, ValueError) as exc:
        raise InputError(f"{path}.table", str(exc)) from exc


def cocycle_from_doc(doc: dict, group=None, path: str = "$"):
    from .quantum import Cocycle3

    if doc.get("kind") != "cocycle":
        raise InputError(f"{path}.kind", "expected 'cocycle'")
    ctx = context_from_doc(doc, path)
    if "group" in doc:
        g = doc["group"]
        if not isinstance(g, dict):
            raise InputError(f"{path}.group", "must be a group object")
        group = group_from_doc(g, f"{path}.group")
    if group is None:
        raise InputError(f"{path}.group", "missing group")
    values = {}
    for k, v in (_obj(doc, "values", path, False) or {}).items():
        t = _index_tuple(k, 3, group.order, f"{path}.values[{k!r}]")
        values[t] = _scalar(ctx, v, f"{path}.values[{k!r}]")
    return Cocycle3(group, ctx, values)


# contexts


def convert_structure(s, ctx: ScalarContext):
    """Re-express every structure constant of ``s`` in ``ctx`` (same order, more parameters allowed)."""
    def sc(v):
        return v.subs({}, ctx)

    def lm(f):
        return None if f is None else LinMap(f.source, f.target, {j: {k: sc(v) for k, v in col.items()} for j, col in f.cols.items()})

    def el(v):
        return None if v is None else TensorElement(v.power, {k: sc(c) for k, c in v.coords.items()})

    space = Space(ctx, s.space.labels)
    changes = {"space": space, "alpha": lm(s.alpha)}
    if hasattr(s, "mu"):
        changes["mu"] = MulMap.of(lm(s.mu))
    if hasattr(s, "delta"):
        changes["delta"] = ComulMap.of(lm(s.delta))
    if hasattr(s, "eta"):
        changes["eta"] = el(s.eta)
    if hasattr(s, "eps"):
        changes["eps"] = lm(s.eps)
    if isinstance(s, HomBialgebra):
        changes["beta"] = lm(s.beta)
    if isinstance(s, HQBialgebra):
        changes["phi"] = el(s.phi)
    if isinstance(s, QTHQBialgebra):
        changes["r"] = el(s.r)
    return s.replace(**changes)


# reports


def report_to_doc(rep: AxiomReport, mode: str = "full") -> dict:
    space = rep.space
    entries = []
    for e in rep.entries:
        item: dict[str, Any] = {"axiom": e.axiom, "status": "pass" if e.passed else "fail"}
        if not e.passed:
            item["witness"] = e.render_witness(space)
            item["residual"] = _residual_doc(e.residual, space)
            item["failures"] = e.failures
        if e.note:
            item["note"] = e.note
        entries.append(item)
        if mode == "first" and not e.passed:
            break
    return {"overall": "pass" if rep.overall else "fail", "entries": entries, "notes": list(rep.notes)}


def _residual_doc(v: TensorElement | None, space: Space | None):
    if v is None:
        return None
    out = {}
    for k, c in _sorted(v.coords.items()):
        label = "⊗".join(space.labels[i] for i in k) if space is not None and k else (_key(k) or "1")
        out[label] = format_scalar(c)
    return out
