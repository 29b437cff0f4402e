"""Sparse polynomials, rational functions and Moebius maps over F_{q^2}.

Polynomials are stored sparsely as ``(exponent, coefficient)`` pairs with
unbounded exponents; reduction modulo X^{q^2} - X only happens when
``reduce_mod_field`` is called.  Division, gcd and cross-multiplication
switch to a dense coefficient list internally.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Union

from binperm.errors import DomainError, ParameterError
from binperm.gf import FieldCtx


class _Infinity:
    __slots__ = ()

    def __repr__(self) -> str:
        return "INF"

    def __reduce__(self):
        return "INF"


INF = _Infinity()
ProjValue = Union[int, _Infinity]


@dataclass(frozen=True)
class SparsePoly:
    """Polynomial as strictly increasing exponents with nonzero coefficients."""

    terms: tuple[tuple[int, int], ...] = ()

    @classmethod
    def from_terms(cls, pairs: Iterable[tuple[int, int]]) -> "SparsePoly":
        acc: dict[int, int] = {}
        for e, c in pairs:
            if e < 0:
                raise ParameterError(f"negative exponent {e}")
            acc[e] = acc.get(e, 0) ^ c
        return cls(tuple(sorted((e, c) for e, c in acc.items() if c)))

    @classmethod
    def monomial(cls, e: int, c: int = 1) -> "SparsePoly":
        return cls.from_terms([(e, c)])

    @classmethod
    def from_exponents(cls, exps: Iterable[int]) -> "SparsePoly":
        """Sum of X^e with coefficient 1; repeated exponents cancel in pairs."""
        return cls.from_terms((e, 1) for e in exps)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return self.terms[-1][0] if self.terms else -1

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(e for e, _ in self.terms)

    @property
    def lowest(self) -> int:
        return self.terms[0][0]

    @property
    def leading_coeff(self) -> int:
        return self.terms[-1][1]

    def coeff(self, e: int) -> int:
        for ee, c in self.terms:
            if ee == e:
                return c
        return 0

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)

    def __add__(self, other: "SparsePoly") -> "SparsePoly":
        return SparsePoly.from_terms(self.terms + other.terms)

    __sub__ = __add__

    def shift(self, e: int) -> "SparsePoly":
        """Multiply by X^e."""
        return SparsePoly(tuple((ee + e, c) for ee, c in self.terms))

    def compose_power(self, n: int) -> "SparsePoly":
        """self(X^n) for n >= 0."""
        return SparsePoly.from_terms((e * n, c) for e, c in self.terms)

    def to_json(self, k: int) -> dict:
        return {"k": k, "terms": [[e, format(c, "x")] for e, c in self.terms]}

    @classmethod
    def from_json(cls, data: dict) -> "SparsePoly":
        return cls.from_terms((int(e), int(c, 16)) for e, c in data["terms"])

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.terms:
            mono = "1" if e == 0 else ("X" if e == 1 else f"X^{e}")
            parts.append(mono if c == 1 else f"0x{c:x}*{mono}" if e else f"0x{c:x}")
        return " + ".join(parts)


ZERO = SparsePoly()
ONE = SparsePoly(((0, 1),))
X = SparsePoly(((1, 1),))


def poly_eval(ctx: FieldCtx, p: SparsePoly, x: int) -> int:
    acc = 0
    if not x:
        return p.coeff(0)
    for e, c in p.terms:
        acc ^= ctx.mul(c, ctx.pow(x, e))
    return acc


def canonical_exponent(e: int, order: int) -> int:
    """Representative of e modulo ``order``: 0 stays 0, positives land in [1, order]."""
    return 0 if e == 0 else (e - 1) % order + 1


def reduce_mod_field(ctx: FieldCtx, p: SparsePoly) -> SparsePoly:
    """Reduce modulo X^{q^2} - X without changing the induced function."""
    n = ctx.order
    return SparsePoly.from_terms((canonical_exponent(e, n), c) for e, c in p.terms)


def coeff_frobenius(ctx: FieldCtx, p: SparsePoly) -> SparsePoly:
    """A^{(q)}: raise every coefficient to the q-th power."""
    return SparsePoly(tuple((e, ctx.frobenius_q(c)) for e, c in p.terms))


def scale(ctx: FieldCtx, p: SparsePoly, c: int) -> SparsePoly:
    if not c:
        return ZERO
    return SparsePoly(tuple((e, ctx.mul(cc, c)) for e, cc in p.terms))


def poly_mul(ctx: FieldCtx, a: SparsePoly, b: SparsePoly) -> SparsePoly:
    acc: dict[int, int] = {}
    for ea, ca in a.terms:
        for eb, cb in b.terms:
            e = ea + eb
            acc[e] = acc.get(e, 0) ^ ctx.mul(ca, cb)
    return SparsePoly(tuple(sorted((e, c) for e, c in acc.items() if c)))


def poly_pow(ctx: FieldCtx, p: SparsePoly, n: int) -> SparsePoly:
    if n < 0:
        raise ParameterError("negative polynomial power")
    result = ONE
    base = p
    while n:
        if n & 1:
            result = poly_mul(ctx, result, base)
        n >>= 1
        if n:
            base = poly_mul(ctx, base, base)
    return result


# -- dense helpers (coefficient lists, lowest degree first) -----------------


def to_dense(p: SparsePoly) -> list[int]:
    if p.is_zero:
        return []
    out = [0] * (p.degree + 1)
    for e, c in p.terms:
        out[e] = c
    return out


def from_dense(coeffs: list[int]) -> SparsePoly:
    return SparsePoly(tuple((e, c) for e, c in enumerate(coeffs) if c))


def _trim(a: list[int]) -> list[int]:
    while a and not a[-1]:
        a.pop()
    return a


def _dense_mul(ctx: FieldCtx, a: list[int], b: list[int]) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                if cb:
                    out[i + j] ^= ctx.mul(ca, cb)
    return _trim(out)


def _dense_divmod(ctx: FieldCtx, a: list[int], b: list[int]) -> tuple[list[int], list[int]]:
    if not b:
        raise DomainError("polynomial division by zero")
    r = list(a)
    db = len(b) - 1
    if len(r) <= db:
        return [], _trim(r)
    inv_lc = ctx.inv(b[-1])
    quot = [0] * (len(r) - db)
    for i in range(len(r) - 1, db - 1, -1):
        c = r[i]
        if not c:
            continue
        f = ctx.mul(c, inv_lc)
        quot[i - db] = f
        for j, cb in enumerate(b):
            if cb:
                r[i - db + j] ^= ctx.mul(f, cb)
    return _trim(quot), _trim(r[:db])


def _dense_monic(ctx: FieldCtx, a: list[int]) -> list[int]:
    inv_lc = ctx.inv(a[-1])
    return [ctx.mul(c, inv_lc) for c in a]


def poly_divmod(ctx: FieldCtx, a: SparsePoly, b: SparsePoly) -> tuple[SparsePoly, SparsePoly]:
    qd, rd = _dense_divmod(ctx, to_dense(a), to_dense(b))
    return from_dense(qd), from_dense(rd)


def poly_gcd(ctx: FieldCtx, a: SparsePoly, b: SparsePoly) -> SparsePoly:
    """Monic greatest common divisor via the Euclidean algorithm."""
    if a.is_zero and b.is_zero:
        raise DomainError("gcd(0, 0) is undefined")
    x, y = to_dense(a), to_dense(b)
    while y:
        _, r = _dense_divmod(ctx, x, y)
        x, y = y, r
    return from_dense(_dense_monic(ctx, x))


# -- rational functions -------------------------------------------------------


@dataclass(frozen=True)
class RatFunc:
    """num/den with gcd(num, den) = 1 and den monic; build through ``rat_new``."""

    num: SparsePoly
    den: SparsePoly = ONE

    @property
    def degree(self) -> int:
        return max(self.num.degree, self.den.degree)

    @property
    def is_constant(self) -> bool:
        return self.num.degree <= 0 and self.den.degree == 0

    def to_json(self, k: int) -> dict:
        return {"num": self.num.to_json(k), "den": self.den.to_json(k)}

    @classmethod
    def from_json(cls, ctx: FieldCtx, data: dict) -> "RatFunc":
        return rat_new(ctx, SparsePoly.from_json(data["num"]), SparsePoly.from_json(data["den"]))

    def __str__(self) -> str:
        if self.den == ONE:
            return str(self.num)
        return f"({self.num}) / ({self.den})"


def rat_new(ctx: FieldCtx, num: SparsePoly, den: SparsePoly = ONE) -> RatFunc:
    if den.is_zero:
        raise DomainError("rational function with zero denominator")
    if num.is_zero:
        return RatFunc(ZERO, ONE)
    nd, dd = to_dense(num), to_dense(den)
    g = to_dense(poly_gcd(ctx, num, den))
    if len(g) > 1:
        nd, _ = _dense_divmod(ctx, nd, g)
        dd, _ = _dense_divmod(ctx, dd, g)
    inv_lc = ctx.inv(dd[-1])
    return RatFunc(
        from_dense([ctx.mul(c, inv_lc) for c in nd]),
        from_dense([ctx.mul(c, inv_lc) for c in dd]),
    )


def power_map(n: int) -> RatFunc:
    """X^n as a normalized rational function; negative n puts X^|n| downstairs."""
    if n >= 0:
        return RatFunc(SparsePoly.monomial(n), ONE)
    return RatFunc(ONE, SparsePoly.monomial(-n))


IDENTITY = power_map(1)


def rat_eval(ctx: FieldCtx, r: RatFunc, v: ProjValue) -> ProjValue:
    if v is INF:
        dn, dd = r.num.degree, r.den.degree
        if dn > dd:
            return INF
        if dn < dd:
            return 0
        return ctx.div(r.num.leading_coeff, r.den.leading_coeff)
    d = poly_eval(ctx, r.den, v)
    if not d:
        return INF
    return ctx.div(poly_eval(ctx, r.num, v), d)


def rat_compose(ctx: FieldCtx, outer: RatFunc, inner: RatFunc) -> RatFunc:
    """outer(inner(X)), normalized."""
    if inner.is_constant:
        val = rat_eval(ctx, outer, rat_eval(ctx, inner, 0))
        if val is INF:
            raise DomainError("outer function has a pole at the constant inner value")
        return RatFunc(SparsePoly.monomial(0, val) if val else ZERO, ONE)
    d = outer.degree
    a, b = inner.num, inner.den
    exps = set(outer.num.support) | set(outer.den.support)
    a_pow = {i: poly_pow(ctx, a, i) for i in exps}
    b_pow = {i: poly_pow(ctx, b, d - i) for i in exps}

    def homogenize(p: SparsePoly) -> SparsePoly:
        acc = ZERO
        for i, c in p.terms:
            acc = acc + scale(ctx, poly_mul(ctx, a_pow[i], b_pow[i]), c)
        return acc

    return rat_new(ctx, homogenize(outer.num), homogenize(outer.den))


def rat_compose_all(ctx: FieldCtx, *funcs: RatFunc) -> RatFunc:
    """f1 o f2 o ... o fn."""
    result = funcs[-1]
    for f in reversed(funcs[:-1]):
        result = rat_compose(ctx, f, result)
    return result


def rat_equal(ctx: FieldCtx, r1: RatFunc, r2: RatFunc) -> bool:
    """Exact equality by cross-multiplication of the dense coefficient lists."""
    lhs = _dense_mul(ctx, to_dense(r1.num), to_dense(r2.den))
    rhs = _dense_mul(ctx, to_dense(r2.num), to_dense(r1.den))
    return lhs == rhs


# -- Moebius maps -------------------------------------------------------------


@dataclass(frozen=True)
class MobiusMap:
    """X -> (aX + b) / (cX + d) with ad + bc != 0."""

    a: int
    b: int
    c: int
    d: int


def mobius(ctx: FieldCtx, a: int, b: int, c: int, d: int) -> MobiusMap:
    if ctx.mul(a, d) == ctx.mul(b, c):
        raise ParameterError("degenerate Moebius map (zero determinant)")
    return MobiusMap(a, b, c, d)


def mobius_rho(ctx: FieldCtx) -> MobiusMap:
    """(X + omega) / (omega X + 1)."""
    w = ctx.omega
    return MobiusMap(1, w, w, 1)


def mobius_identity() -> MobiusMap:
    return MobiusMap(1, 0, 0, 1)


def mobius_apply(ctx: FieldCtx, mu: MobiusMap, v: ProjValue) -> ProjValue:
    if v is INF:
        return INF if not mu.c else ctx.div(mu.a, mu.c)
    den = ctx.mul(mu.c, v) ^ mu.d
    if not den:
        return INF
    return ctx.div(ctx.mul(mu.a, v) ^ mu.b, den)


def mobius_compose(ctx: FieldCtx, outer: MobiusMap, inner: MobiusMap) -> MobiusMap:
    """Matrix product outer * inner, i.e. the map outer o inner."""
    m = ctx.mul
    return MobiusMap(
        m(outer.a, inner.a) ^ m(outer.b, inner.c),
        m(outer.a, inner.b) ^ m(outer.b, inner.d),
        m(outer.c, inner.a) ^ m(outer.d, inner.c),
        m(outer.c, inner.b) ^ m(outer.d, inner.d),
    )


def mobius_inverse(mu: MobiusMap) -> MobiusMap:
    # adjugate; signs vanish in characteristic 2
    return MobiusMap(mu.d, mu.b, mu.c, mu.a)


def mobius_to_rat(ctx: FieldCtx, mu: MobiusMap) -> RatFunc:
    num = SparsePoly.from_terms([(1, mu.a), (0, mu.b)])
    den = SparsePoly.from_terms([(1, mu.c), (0, mu.d)])
    return rat_new(ctx, num, den)


def mobius_is_scalar(mu: MobiusMap) -> bool:
    """True iff the matrix is a nonzero multiple of the identity."""
    return mu.b == 0 and mu.c == 0 and mu.a == mu.d and mu.a != 0
