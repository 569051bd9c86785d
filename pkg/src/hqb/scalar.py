"""Exact scalars: rational functions over Q(zeta_N) in named Laurent parameters.

A scalar is stored as a numerator (and optionally a denominator), each a
sparse Laurent polynomial.  A polynomial is a dict mapping
``(z_exponent, e_1, ..., e_m)`` to a rational coefficient, where
``0 <= z_exponent < phi(N)`` (powers of zeta are reduced modulo the N-th
cyclotomic polynomial) and ``e_i`` are the integer exponents of the
parameters.  With that reduction the numerator dict is canonical for
Laurent polynomials, so zero testing is exact and cheap.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from numbers import Rational
from typing import Mapping

Poly = dict  # (zexp, *pexps) -> int | Fraction

_NAME_RE = re.compile(r"[a-zA-Z][a-zA-Z0-9_]*\Z")


class ScalarError(Exception):
    pass


class DivisionByZero(ScalarError, ZeroDivisionError):
    pass


class ContextMismatch(ScalarError, ValueError):
    pass


class ParseError(ScalarError, ValueError):
    def __init__(self, message: str, position: int = 0, text: str = ""):
        self.position = position
        self.text = text
        super().__init__(f"{message} at position {position}" + (f" in {text!r}" if text else ""))


class UnknownParameter(ParseError):
    def __init__(self, name: str, position: int = 0, text: str = ""):
        self.name = name
        super().__init__(f"unknown parameter {name!r}", position, text)


# -- integer polynomial helpers (coefficient lists, lowest degree first) -----

def _ipoly_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _ipoly_divexact(a: list[int], b: list[int]) -> list[int]:
    a = list(a)
    q = [0] * (len(a) - len(b) + 1)
    lead = b[-1]
    for i in range(len(q) - 1, -1, -1):
        c, r = divmod(a[i + len(b) - 1], lead)
        assert r == 0
        q[i] = c
        for j, y in enumerate(b):
            a[i + j] -= c * y
    assert not any(a)
    return q


def _mobius(n: int) -> int:
    result, k = 1, 2
    while k * k <= n:
        if n % k == 0:
            n //= k
            if n % k == 0:
                return 0
            result = -result
        k += 1
    if n > 1:
        result = -result
    return result


def cyclotomic_polynomial(n: int) -> list[int]:
    """Coefficients of the n-th cyclotomic polynomial, lowest degree first."""
    num, den = [1], [1]
    for d in range(1, n + 1):
        if n % d:
            continue
        xd = [-1] + [0] * (d - 1) + [1]
        m = _mobius(n // d)
        if m == 1:
            num = _ipoly_mul(num, xd)
        elif m == -1:
            den = _ipoly_mul(den, xd)
    return _ipoly_divexact(num, den)


# -- context ------------------------------------------------------------------

@dataclass(frozen=True)
class ScalarContext:
    """The field K = Q(zeta_N)(p_1, ..., p_m) that scalars live in."""

    order: int = 24
    params: tuple[str, ...] = ()
    _cache: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    def __post_init__(self):
        if not isinstance(self.order, int) or self.order < 1:
            raise ValueError(f"cyclotomic order must be a positive integer, got {self.order!r}")
        params = tuple(self.params)
        object.__setattr__(self, "params", params)
        if len(set(params)) != len(params):
            raise ValueError(f"duplicate parameter names in {params}")
        for name in params:
            if not isinstance(name, str) or not _NAME_RE.match(name) or name == "z":
                raise ValueError(f"invalid parameter name {name!r}")

    @cached_property
    def cyclotomic(self) -> list[int]:
        return cyclotomic_polynomial(self.order)

    @cached_property
    def degree(self) -> int:
        return len(self.cyclotomic) - 1

    @cached_property
    def zreduce(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        """``zreduce[k]`` lists ``(j, c)`` with ``zeta^k = sum c * zeta^j``, ``j < degree``."""
        phi, deg = self.cyclotomic, self.degree
        rows = []
        cur = [0] * deg
        cur[0] = 1
        for _ in range(self.order):
            rows.append(tuple((j, c) for j, c in enumerate(cur) if c))
            top = cur[-1]
            cur = [0] + cur[:-1]
            if top:
                for j in range(deg):
                    cur[j] -= top * phi[j]
        return tuple(rows)

    @property
    def nparams(self) -> int:
        return len(self.params)

    def index(self, name: str) -> int:
        return self.params.index(name)

    def with_params(self, *names: str) -> ScalarContext:
        extra = tuple(n for n in names if n not in self.params)
        return ScalarContext(self.order, self.params + extra)

    # constructors
    def const(self, value) -> Scalar:
        value = Fraction(value)
        if not value:
            return Scalar(self, {})
        if value.denominator == 1:
            value = int(value)
        return Scalar(self, {(0,) * (1 + self.nparams): value})

    def zero(self) -> Scalar:
        return Scalar(self, {})

    def one(self) -> Scalar:
        return self.const(1)

    def root(self, k: int) -> Scalar:
        return make_root(self, k)

    def param(self, name: str) -> Scalar:
        try:
            i = self.params.index(name)
        except ValueError:
            raise UnknownParameter(name) from None
        key = [0] * (1 + self.nparams)
        key[1 + i] = 1
        return Scalar(self, {tuple(key): 1})

    def parse(self, text: str) -> Scalar:
        return parse_scalar(self, text)

    def coerce(self, value) -> Scalar:
        if isinstance(value, Scalar):
            if value.ctx != self:
                raise ContextMismatch(f"{value.ctx} vs {self}")
            return value
        if isinstance(value, str):
            return self.parse(value)
        return self.const(value)


# -- sparse Laurent polynomial kernels ----------------------------------------

def _padd(a: Poly, b: Poly, sign: int = 1) -> Poly:
    out = dict(a)
    for k, v in b.items():
        w = out.get(k, 0) + (v if sign > 0 else -v)
        if w:
            out[k] = w
        else:
            out.pop(k, None)
    return out


def _pscale(a: Poly, c) -> Poly:
    if not c:
        return {}
    return {k: v * c for k, v in a.items()}


def _pmul(ctx: ScalarContext, a: Poly, b: Poly) -> Poly:
    if len(a) > len(b):
        a, b = b, a
    red = ctx.zreduce
    n = ctx.order
    out: Poly = {}
    get = out.get
    for ka, ca in a.items():
        za = ka[0]
        pa = ka[1:]
        for kb, cb in b.items():
            c = ca * cb
            if pa:
                p = tuple([x + y for x, y in zip(pa, kb[1:])])
            else:
                p = ()
            for j, r in red[(za + kb[0]) % n]:
                key = (j,) + p
                w = get(key, 0) + c * r
                if w:
                    out[key] = w
                else:
                    del out[key]
    return out


def _is_unit(a: Poly) -> bool:
    """True when ``a`` is a nonzero cyclotomic number times one monomial."""
    if not a:
        return False
    it = iter(a)
    p0 = next(it)[1:]
    return all(k[1:] == p0 for k in it)


def _cyclo_inverse(ctx: ScalarContext, c: Poly) -> Poly:
    """Inverse of a nonzero element of Q(zeta_N), given as ``{(j,): coef}``."""
    key = frozenset(c.items())
    cache = ctx._cache.setdefault("inv", {})
    if key in cache:
        return cache[key]
    deg = ctx.degree
    # column j of the multiplication-by-c matrix is c * zeta^j
    cols = []
    for j in range(deg):
        prod = _pmul(ctx, c, {(j,): 1})
        cols.append([Fraction(prod.get((i,), 0)) for i in range(deg)])
    m = [[cols[j][i] for j in range(deg)] + [Fraction(int(i == 0))] for i in range(deg)]
    for col in range(deg):
        piv = next((r for r in range(col, deg) if m[r][col]), None)
        if piv is None:
            raise DivisionByZero("cyclotomic number is not invertible")
        m[col], m[piv] = m[piv], m[col]
        inv = 1 / m[col][col]
        m[col] = [x * inv for x in m[col]]
        for r in range(deg):
            if r != col and m[r][col]:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    out = {}
    for i in range(deg):
        v = m[i][deg]
        if v:
            out[(i,)] = int(v) if v.denominator == 1 else v
    cache[key] = out
    return out


def _unit_inverse(ctx: ScalarContext, a: Poly) -> Poly:
    p0 = next(iter(a))[1:]
    c = {(k[0],): v for k, v in a.items()}
    ci = _cyclo_inverse(ctx, c)
    neg = tuple(-e for e in p0)
    return {(k[0],) + neg: v for k, v in ci.items()}


def _shift(a: Poly, mono: tuple[int, ...]) -> Poly:
    if not any(mono):
        return a
    return {(k[0],) + tuple(x + y for x, y in zip(k[1:], mono)): v for k, v in a.items()}


def _min_exponents(a: Poly, m: int) -> tuple[int, ...]:
    return tuple(min(k[1 + i] for k in a) for i in range(m))


def _group(a: Poly) -> dict[tuple, Poly]:
    out: dict[tuple, Poly] = {}
    for k, v in a.items():
        out.setdefault(k[1:], {})[(k[0],)] = v
    return out


def _exact_div(ctx: ScalarContext, num: Poly, den: Poly) -> Poly | None:
    """Return ``num / den`` if it is a Laurent polynomial, else None."""
    m = ctx.nparams
    mn, md = _min_exponents(num, m), _min_exponents(den, m)
    num = _shift(num, tuple(-e for e in mn))
    den = _shift(den, tuple(-e for e in md))
    dg = _group(den)
    dlead = max(dg)
    dinv = _cyclo_inverse(ctx, dg[dlead])
    rem = _group(num)
    quot: Poly = {}
    while rem:
        lead = max(rem)
        t = tuple(x - y for x, y in zip(lead, dlead))
        if any(e < 0 for e in t):
            return None
        c = _pmul(ctx, rem[lead], dinv)
        for k, v in c.items():
            quot[(k[0],) + t] = v
        for mono, cd in dg.items():
            target = tuple(x + y for x, y in zip(mono, t))
            upd = _padd(rem.get(target, {}), _pmul(ctx, cd, c), -1)
            if upd:
                rem[target] = upd
            else:
                rem.pop(target, None)
        if lead in rem:
            return None  # leading term failed to cancel; cannot happen for exact arithmetic
    shift = tuple(x - y for x, y in zip(mn, md))
    return _shift(quot, shift)


# -- the scalar type ------------------------------------------------------------

class Scalar:
    """Immutable exact scalar.  ``den is None`` means the value is a Laurent polynomial."""

    __slots__ = ("ctx", "num", "den", "_hash")

    def __init__(self, ctx: ScalarContext, num: Poly, den: Poly | None = None):
        self.ctx = ctx
        self.num = num
        self.den = den
        self._hash = None

    @classmethod
    def _make(cls, ctx: ScalarContext, num: Poly, den: Poly | None) -> Scalar:
        if not num:
            return cls(ctx, {})
        if den is None:
            return cls(ctx, num)
        if not den:
            raise DivisionByZero("division by the zero rational function")
        if _is_unit(den):
            return cls(ctx, _pmul(ctx, num, _unit_inverse(ctx, den)))
        q = _exact_div(ctx, num, den)
        if q is not None:
            return cls(ctx, q)
        # fix a representative: strip monomial content of den and make its leading coefficient 1
        dg = _group(den)
        lead = max(dg)
        lc = {(k[0],) + lead: v for k, v in dg[lead].items()}
        u = _unit_inverse(ctx, lc)
        num = _pmul(ctx, num, u)
        den = _pmul(ctx, den, u)
        shift = tuple(-e for e in _min_exponents(den, ctx.nparams))
        return cls(ctx, _shift(num, shift), _shift(den, shift))

    def _coerce(self, other) -> Scalar | None:
        if isinstance(other, Scalar):
            if other.ctx is not self.ctx and other.ctx != self.ctx:
                raise ContextMismatch(f"cannot combine scalars from {self.ctx} and {other.ctx}")
            return other
        if isinstance(other, (int, Rational)):
            return self.ctx.const(other)
        return None

    # arithmetic
    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.den is None and o.den is None:
            return Scalar(self.ctx, _padd(self.num, o.num))
        return self._add_frac(o, 1)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.den is None and o.den is None:
            return Scalar(self.ctx, _padd(self.num, o.num, -1))
        return self._add_frac(o, -1)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def _add_frac(self, o: Scalar, sign: int) -> Scalar:
        ctx = self.ctx
        one = {(0,) * (1 + ctx.nparams): 1}
        d1 = self.den or one
        d2 = o.den or one
        num = _padd(_pmul(ctx, self.num, d2), _pmul(ctx, o.num, d1), sign)
        if self.den is None:
            den = d2
        elif o.den is None:
            den = d1
        else:
            den = _pmul(ctx, d1, d2)
        return Scalar._make(ctx, num, den)

    def __neg__(self):
        return Scalar(self.ctx, {k: -v for k, v in self.num.items()}, self.den)

    def __pos__(self):
        return self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        ctx = self.ctx
        if not self.num or not o.num:
            return Scalar(ctx, {})
        num = _pmul(ctx, self.num, o.num)
        if self.den is None and o.den is None:
            return Scalar(ctx, num)
        if self.den is None:
            den = o.den
        elif o.den is None:
            den = self.den
        else:
            den = _pmul(ctx, self.den, o.den)
        return Scalar._make(ctx, num, den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = self.ctx.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def inverse(self) -> Scalar:
        if not self.num:
            raise DivisionByZero("division by the zero rational function")
        if _is_unit(self.num):
            inv = _unit_inverse(self.ctx, self.num)
            if self.den is None:
                return Scalar(self.ctx, inv)
            return Scalar._make(self.ctx, _pmul(self.ctx, self.den, inv), None)
        one = {(0,) * (1 + self.ctx.nparams): 1}
        return Scalar._make(self.ctx, self.den or one, self.num)

    # predicates
    def is_zero(self) -> bool:
        return not self.num

    def __bool__(self) -> bool:
        return bool(self.num)

    def is_unit(self) -> bool:
        """True for a nonzero cyclotomic number times a parameter monomial."""
        return self.den is None and _is_unit(self.num)

    def is_polynomial(self) -> bool:
        return self.den is None

    def is_constant(self) -> bool:
        """True if no parameter occurs (the value lies in Q(zeta_N))."""
        return self.den is None and all(not any(k[1:]) for k in self.num)

    def __eq__(self, other):
        try:
            o = self._coerce(other)
        except ContextMismatch:
            return False
        if o is None:
            return NotImplemented
        if self.den is None and o.den is None:
            return self.num == o.num
        return (self - o).is_zero()

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def __hash__(self):
        if self._hash is None:
            # rational functions that are not Laurent polynomials never equal one, so a shared bucket is consistent
            self._hash = hash(frozenset(self.num.items())) if self.den is None else hash("ratfunc")
        return self._hash

    # evaluation
    def subs(self, values: Mapping[str, Scalar], target: ScalarContext | None = None) -> Scalar:
        """Substitute values for parameters.

        Parameters not in ``values`` are carried over to ``target`` (which
        defaults to the current context); every value must live in ``target``.
        """
        target = target or self.ctx
        if target.order != self.ctx.order:
            raise ContextMismatch("substitution must keep the cyclotomic order")
        cache: dict = {}

        def power(name: str, e: int) -> Scalar:
            if (name, e) not in cache:
                if name in values:
                    base = target.coerce(values[name])
                else:
                    base = target.param(name)
                cache[(name, e)] = base ** e
            return cache[(name, e)]

        def evaluate(poly: Poly) -> Scalar:
            total = target.zero()
            for k, c in poly.items():
                term = target.root(k[0]) * c
                for name, e in zip(self.ctx.params, k[1:]):
                    if e:
                        term = term * power(name, e)
                total = total + term
            return total

        num = evaluate(self.num)
        if self.den is None:
            return num
        return num / evaluate(self.den)

    def free_params(self) -> set[str]:
        used = set()
        for poly in (self.num, self.den or {}):
            for k in poly:
                used.update(n for n, e in zip(self.ctx.params, k[1:]) if e)
        return used

    # text
    def __str__(self):
        return format_scalar(self)

    def __repr__(self):
        return f"Scalar({format_scalar(self)!r})"


def make_root(ctx: ScalarContext, k: int) -> Scalar:
    """zeta_N ** k, reduced modulo the cyclotomic polynomial."""
    tail = (0,) * ctx.nparams
    return Scalar(ctx, {(j,) + tail: c for j, c in ctx.zreduce[k % ctx.order]})


def arith(a: Scalar, b: Scalar, op: str) -> Scalar:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def is_zero(a: Scalar) -> bool:
    return a.is_zero()


# -- formatting ---------------------------------------------------------------

def _format_poly(ctx: ScalarContext, poly: Poly) -> str:
    if not poly:
        return "0"
    parts = []
    for k in sorted(poly, key=lambda k: (k[1:], k[0])):
        c = Fraction(poly[k])
        factors = []
        if k[0]:
            factors.append("z" if k[0] == 1 else f"z^{k[0]}")
        for name, e in zip(ctx.params, k[1:]):
            if e:
                factors.append(name if e == 1 else f"{name}^{e}")
        mag = abs(c)
        if factors and mag == 1:
            body = "*".join(factors)
        else:
            body = "*".join([str(mag)] + factors)
        parts.append(("-" if c < 0 else "+", body))
    sign, body = parts[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def format_scalar(a: Scalar) -> str:
    if a.den is None:
        return _format_poly(a.ctx, a.num)
    return f"({_format_poly(a.ctx, a.num)})/({_format_poly(a.ctx, a.den)})"


# -- parsing --------------------------------------------------------------------

_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([a-zA-Z][a-zA-Z0-9_]*)|(.))")


class _Parser:
    def __init__(self, ctx: ScalarContext, text: str):
        self.ctx = ctx
        self.text = text
        self.tokens: list[tuple[str, str, int]] = []
        pos = 0
        while pos < len(text):
            m = _TOKEN_RE.match(text, pos)
            if m.group(0).strip() == "":
                break
            start = m.start(m.lastindex)
            if m.group(1):
                self.tokens.append(("int", m.group(1), start))
            elif m.group(2):
                self.tokens.append(("name", m.group(2), start))
            else:
                ch = m.group(3)
                if ch not in "+-*/^()":
                    raise ParseError(f"unexpected character {ch!r}", start, text)
                self.tokens.append(("op", ch, start))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else ("end", "", len(self.text))

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def error(self, message: str):
        raise ParseError(message, self.peek()[2], self.text)

    def parse(self) -> Scalar:
        if not self.tokens:
            self.error("empty expression")
        value = self.expr()
        if self.peek()[0] != "end":
            self.error(f"unexpected token {self.peek()[1]!r}")
        return value

    def expr(self) -> Scalar:
        value = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> Scalar:
        value = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] in ("*", "/"):
            op, _, pos = self.take()[1], None, self.peek()[2]
            rhs = self.unary()
            if op == "*":
                value = value * rhs
            else:
                if rhs.is_zero():
                    raise ParseError("division by zero", pos, self.text)
                value = value / rhs
        return value

    def unary(self) -> Scalar:
        tok = self.peek()
        if tok[0] == "op" and tok[1] in ("+", "-"):
            self.take()
            value = self.unary()
            return -value if tok[1] == "-" else value
        return self.power()

    def exponent(self) -> int:
        tok = self.peek()
        if tok[0] == "op" and tok[1] == "(":
            self.take()
            e = self.exponent()
            if self.take()[1] != ")":
                self.i -= 1
                self.error("expected ')'")
            return e
        sign = 1
        if tok[0] == "op" and tok[1] in ("+", "-"):
            self.take()
            sign = -1 if tok[1] == "-" else 1
        tok = self.peek()
        if tok[0] != "int":
            self.error("expected integer exponent")
        self.take()
        return sign * int(tok[1])

    def power(self) -> Scalar:
        base = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            pos = self.peek()[2]
            e = self.exponent()
            if e < 0 and base.is_zero():
                raise ParseError("zero raised to a negative power", pos, self.text)
            return base ** e
        return base

    def atom(self) -> Scalar:
        kind, val, pos = self.peek()
        if kind == "int":
            self.take()
            return self.ctx.const(int(val))
        if kind == "name":
            self.take()
            if val == "z":
                return make_root(self.ctx, 1)
            if val not in self.ctx.params:
                raise UnknownParameter(val, pos, self.text)
            return self.ctx.param(val)
        if kind == "op" and val == "(":
            self.take()
            value = self.expr()
            if self.peek()[1] != ")":
                self.error("expected ')'")
            self.take()
            return value
        self.error("expected a number, 'z', a parameter or '('")


def parse_scalar(ctx: ScalarContext, text: str) -> Scalar:
    """Parse the scalar grammar: integers, ``z`` (zeta_N), parameter names,
    ``+ - * /``, parentheses and ``^`` with integer exponents."""
    return _Parser(ctx, text).parse()
