"""Permutation polynomials of the shape X^r A(X^{q-1}) over F_{q^2}, q = 2^k.

The pipeline is:

* ``factor_as_wrapped`` writes f = X^r A(X^{q-1});
* ``criterion_lemma1`` decides whether f permutes F_{q^2} by testing
  gcd(r, q-1) = 1 and whether x^r A(x)^{q-1} permutes mu_{q+1};
* ``rewrite_lemma2`` replaces that map by the low-degree rational function
  X^s A^{(q)}(1/X) / A(X), which agrees with it on mu_{q+1};
* ``factory_remark`` runs the construction backwards: a permutation of
  P^1(F_q) or mu_{q+1} sandwiched between degree-one maps becomes a
  permutation polynomial of F_{q^2}.

The trinomial family X^{d1} + X^{d2} + X^{d3}, its proof steps and the two
neighbouring families (``wydm_generate``, ``lh_generate``) live here too.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Optional

from binperm.circle import (
    is_perm_on,
    maps_bijectively,
    proj_line,
    unit_circle,
)
from binperm.errors import (
    ExistenceViolation,
    InvalidFactoryInput,
    NotExpressibleError,
    NotWrappableError,
    ParameterError,
    RewriteInvalidError,
)
from binperm.gf import FieldCtx
from binperm.poly import (
    ONE,
    MobiusMap,
    RatFunc,
    SparsePoly,
    canonical_exponent,
    coeff_frobenius,
    mobius,
    mobius_rho,
    mobius_to_rat,
    poly_eval,
    power_map,
    rat_compose,
    rat_compose_all,
    rat_equal,
    rat_new,
    reduce_mod_field,
    scale,
)


# -- trinomial family ---------------------------------------------------------


@dataclass(frozen=True)
class TrinomialParams:
    k: int
    ell: int
    m: int
    u: int

    def __post_init__(self):
        if self.k < 1 or self.ell < 1 or self.m < 1:
            raise ParameterError("k, ell, m must be positive")
        if self.ell == self.m:
            raise ParameterError("ell and m must differ")

    @property
    def q(self) -> int:
        return 1 << self.k

    @property
    def Q(self) -> int:
        return 1 << self.ell

    @property
    def R(self) -> int:
        return 1 << self.m

    @property
    def order(self) -> int:
        return self.q * self.q - 1

    @property
    def exponents(self) -> tuple[int, int, int]:
        return thm1_exponents(self)

    def to_json(self) -> dict:
        return {"k": self.k, "ell": self.ell, "m": self.m, "u": self.u}


def thm1_exponents(p: TrinomialParams) -> tuple[int, int, int]:
    """(d1, d2, d3) as representatives in [1, q^2 - 1]."""
    q, Q, R, u, n = p.q, p.Q, p.R, p.u, p.order
    d1 = Q - R + u * (q + 1)
    d2 = Q + R + (u - R) * (q + 1)
    d3 = -(Q + R) + (u + Q) * (q + 1)
    return tuple((d - 1) % n + 1 for d in (d1, d2, d3))


@dataclass(frozen=True)
class Thm1Instance:
    params: TrinomialParams
    exponents: tuple[int, int, int]
    poly: Optional[SparsePoly]
    accepted: bool
    degenerate: bool


def thm1_generate(p: TrinomialParams) -> Thm1Instance:
    """X^{d1} + X^{d2} + X^{d3}, or a rejection when gcd(d1, q^2 - 1) != 1.

    Colliding exponents are merged (pairs cancel) and flagged as degenerate.
    """
    ds = thm1_exponents(p)
    if gcd(ds[0], p.order) != 1:
        return Thm1Instance(p, ds, None, False, False)
    f = SparsePoly.from_exponents(ds)
    return Thm1Instance(p, ds, f, True, len(f) < 3)


# -- wrapped form and the mu_{q+1} criterion ---------------------------------


@dataclass(frozen=True)
class WrappedForm:
    """f(X) = X^r A(X^{q-1})."""

    r: int
    A: SparsePoly

    def reconstruct(self, ctx: FieldCtx) -> SparsePoly:
        if self.r < 0:
            raise ParameterError("X^r A(X^{q-1}) needs r >= 0")
        return reduce_mod_field(ctx, self.A.compose_power(ctx.q - 1).shift(self.r))


def factor_as_wrapped(ctx: FieldCtx, f: SparsePoly, anchor: Optional[int] = None) -> WrappedForm:
    """Write f as X^r A(X^{q-1}).

    r is the smallest exponent of f unless ``anchor`` names another exponent
    of f.  Exponent gaps are taken modulo q^2 - 1, so A has degree <= q.
    """
    if f.is_zero:
        raise NotWrappableError("zero polynomial")
    exps = f.support
    if exps[0] == 0:
        raise NotWrappableError("constant term present")
    step, n = ctx.q - 1, ctx.order
    if any((e - exps[0]) % step for e in exps):
        raise NotWrappableError("exponents are not all congruent modulo q - 1")
    r = exps[0] if anchor is None else anchor
    if r not in exps:
        raise ParameterError(f"anchor {anchor} is not an exponent of f")
    A = SparsePoly.from_terms((((e - r) % n) // step, c) for e, c in f.terms)
    return WrappedForm(r, A)


def g0_value(ctx: FieldCtx, w: WrappedForm, x: int) -> int:
    """x^r A(x)^{q-1}."""
    return ctx.mul(ctx.pow(x, w.r), ctx.pow(poly_eval(ctx, w.A, x), ctx.q - 1))


def criterion_lemma1(ctx: FieldCtx, w: WrappedForm) -> bool:
    """gcd(r, q-1) = 1 and x -> x^r A(x)^{q-1} permutes mu_{q+1}."""
    if w.r <= 0:
        raise ParameterError("the criterion needs a positive r")
    if gcd(w.r, ctx.q - 1) != 1:
        return False
    circle = unit_circle(ctx)
    seen = set()
    for x in circle:
        y = g0_value(ctx, w, x)
        # y == 0 exactly when A(x) == 0
        if y not in circle or y in seen:
            return False
        seen.add(y)
    return True


def no_roots_on_circle(ctx: FieldCtx, A: SparsePoly) -> bool:
    return all(poly_eval(ctx, A, x) for x in unit_circle(ctx))


def twisted_reversal(ctx: FieldCtx, A: SparsePoly) -> SparsePoly:
    """X^{deg A} A^{(q)}(1/X)."""
    d = A.degree
    return SparsePoly.from_terms((d - e, c) for e, c in coeff_frobenius(ctx, A).terms)


def quotient_form(ctx: FieldCtx, s: int, A: SparsePoly) -> RatFunc:
    """X^s A^{(q)}(1/X) / A(X), normalized."""
    shift = s - A.degree
    num = twisted_reversal(ctx, A)
    den = A
    if shift >= 0:
        num = num.shift(shift)
    else:
        den = den.shift(-shift)
    return rat_new(ctx, num, den)


def rewrite_lemma2(ctx: FieldCtx, w: WrappedForm) -> RatFunc:
    """Low-degree rational function agreeing with x^r A(x)^{q-1} on mu_{q+1}.

    Any integer r is accepted; s is r reduced into [0, q].
    """
    if not no_roots_on_circle(ctx, w.A):
        raise RewriteInvalidError("A has a root on the unit circle")
    return quotient_form(ctx, w.r % (ctx.q + 1), w.A)


# -- degree-one maps ----------------------------------------------------------


def rho_rat(ctx: FieldCtx) -> RatFunc:
    return mobius_to_rat(ctx, mobius_rho(ctx))


def lemma3_check(ctx: FieldCtx) -> bool:
    """rho permutes mu_{q+1} for even k and swaps mu_{q+1} with P^1(F_q) for odd k."""
    rho = mobius_rho(ctx)
    circle, line = unit_circle(ctx), proj_line(ctx)
    if ctx.k % 2 == 0:
        return maps_bijectively(ctx, rho, circle, circle)
    return maps_bijectively(ctx, rho, circle, line) and maps_bijectively(ctx, rho, line, circle)


def lemma4_sides(ctx: FieldCtx, ell: int, m: int) -> tuple[RatFunc, RatFunc]:
    """Both sides of X^{(-1)^m} o G = rho o X^{R -+ Q} o rho, G = (X^{Q+R}+X^Q+1)/(X^{Q+R}+X^R+1)."""
    if ell == m:
        raise ParameterError("ell and m must differ")
    Q, R = 1 << ell, 1 << m
    G = rat_new(
        ctx,
        SparsePoly.from_exponents([Q + R, Q, 0]),
        SparsePoly.from_exponents([Q + R, R, 0]),
    )
    lhs = rat_compose(ctx, power_map((-1) ** m), G)
    inner = R - Q if (ell - m) % 2 == 0 else R + Q
    rho = rho_rat(ctx)
    rhs = rat_compose_all(ctx, rho, power_map(inner), rho)
    return lhs, rhs


def lemma4_check(ctx: FieldCtx, ell: int, m: int) -> bool:
    lhs, rhs = lemma4_sides(ctx, ell, m)
    return rat_equal(ctx, lhs, rhs)


def thm1_A(p: TrinomialParams) -> SparsePoly:
    """A(X) = X^R + 1 + X^{Q+R}, so that f = X^{d2} A(X^{q-1})."""
    return SparsePoly.from_exponents([p.R, 0, p.Q + p.R])


def thm1_g(ctx: FieldCtx, p: TrinomialParams) -> RatFunc:
    """(X^{Q+R} + X^Q + 1) / (X^{Q+R} + X^R + 1)."""
    return rat_new(
        ctx,
        SparsePoly.from_exponents([p.Q + p.R, p.Q, 0]),
        SparsePoly.from_exponents([p.Q + p.R, p.R, 0]),
    )


def thm1_proof_checks(ctx: FieldCtx, p: TrinomialParams) -> dict[str, bool]:
    """Each step of the argument that an accepted trinomial permutes F_{q^2}."""
    q, Q, R, n = p.q, p.Q, p.R, p.order
    d1, d2, d3 = thm1_exponents(p)
    A = thm1_A(p)
    circle = unit_circle(ctx)
    checks = {
        "d1_from_d2": (d1 - d2 - R * (q - 1)) % n == 0,
        "d3_from_d2": (d3 - d2 - (Q + R) * (q - 1)) % n == 0,
        "d2_unit_mod_q_minus_1": gcd(d2, q - 1) == 1,
        "wrapped_at_d2": WrappedForm(d2, A).reconstruct(ctx) == SparsePoly.from_exponents((d1, d2, d3)),
        "gcd_Q_minus_R": gcd(abs(Q - R), q + 1) == 1,
        "A_at_one": poly_eval(ctx, A, 1) == 1,
        "A_no_roots": no_roots_on_circle(ctx, A),
        # A(a) + a^{Q+R} A(a)^q = a^R + a^Q holds at every a in mu_{q+1}
        "cancellation": all(
            poly_eval(ctx, A, a) ^ ctx.mul(ctx.pow(a, Q + R), ctx.frobenius_q(poly_eval(ctx, A, a)))
            == ctx.pow(a, R) ^ ctx.pow(a, Q)
            for a in circle
        ),
        "quotient_matches": rat_equal(ctx, quotient_form(ctx, Q + R, A), thm1_g(ctx, p)),
    }
    if (p.ell - p.m) % 2 == 0:
        checks["branch"] = p.k % 2 == 0 and gcd(abs(R - Q), q + 1) == 1
    elif p.k % 2:
        checks["branch"] = gcd(Q + R, q - 1) == 1 and is_perm_on(ctx, power_map(Q + R), proj_line(ctx))
    else:
        checks["branch"] = gcd(Q + R, q + 1) == 1 and is_perm_on(ctx, power_map(Q + R), circle)
    checks["g_permutes_circle"] = is_perm_on(ctx, thm1_g(ctx, p), circle)
    return checks


# -- construction factory -----------------------------------------------------


def select_exponent(s: int, q: int) -> int:
    """Smallest positive r = s mod (q+1) with gcd(r, q-1) = 1."""
    base = s % (q + 1)
    for j in range(q):
        r = base + j * (q + 1)
        if r > 0 and gcd(r, q - 1) == 1:
            return r
    raise ExistenceViolation(f"no admissible exponent for s={s}, q={q}")


def express_quotient_form(ctx: FieldCtx, g: RatFunc) -> tuple[int, SparsePoly]:
    """Find (s, A) with g = X^s A^{(q)}(1/X) / A(X), A taken from the denominator.

    A unit-circle scalar between the numerator and the twisted reversal is
    absorbed by rescaling A with c where c^{q-1} = lambda.
    """
    A = g.den
    rev = twisted_reversal(ctx, A)
    num = g.num
    if num.is_zero or len(num) != len(rev):
        raise NotExpressibleError("numerator is not a monomial multiple of the twisted reversal")
    e = num.lowest - rev.lowest
    lam = ctx.div(num.terms[0][1], rev.terms[0][1])
    if e < 0 or any(
        en != er + e or cn != ctx.mul(lam, cr) for (en, cn), (er, cr) in zip(num.terms, rev.terms)
    ):
        raise NotExpressibleError("numerator is not a monomial multiple of the twisted reversal")
    if lam != 1:
        t = ctx.log(lam)
        if t % (ctx.q - 1):
            raise NotExpressibleError("scalar factor is not on the unit circle")
        A = scale(ctx, A, ctx.exp(t // (ctx.q - 1)))
    if not no_roots_on_circle(ctx, A):
        raise NotExpressibleError("denominator has a root on the unit circle")
    return (e + g.den.degree) % (ctx.q + 1), A


def _domain_of(ctx: FieldCtx, pre_map: MobiusMap):
    circle, line = unit_circle(ctx), proj_line(ctx)
    if maps_bijectively(ctx, pre_map, circle, line):
        return line
    if maps_bijectively(ctx, pre_map, circle, circle):
        return circle
    raise InvalidFactoryInput("pre_map does not send mu_{q+1} onto P^1(F_q) or mu_{q+1}")


def factory_remark(
    ctx: FieldCtx, h: RatFunc, pre_map: MobiusMap, post_map: MobiusMap
) -> tuple[SparsePoly, WrappedForm]:
    """Permutation polynomial X^r A(X^{q-1}) from g = post_map o h o pre_map."""
    dom = _domain_of(ctx, pre_map)
    if not is_perm_on(ctx, h, dom):
        raise InvalidFactoryInput("h does not permute the image of pre_map")
    if not maps_bijectively(ctx, post_map, dom, unit_circle(ctx)):
        raise InvalidFactoryInput("post_map does not send the middle set onto mu_{q+1}")
    g = rat_compose_all(ctx, mobius_to_rat(ctx, post_map), h, mobius_to_rat(ctx, pre_map))
    s, A = express_quotient_form(ctx, g)
    w = WrappedForm(select_exponent(s, ctx.q), A)
    return w.reconstruct(ctx), w


def circle_to_line_map(ctx: FieldCtx, a: int, b: int) -> MobiusMap:
    """X -> (aX + a^q) / (bX + b^q), which sends mu_{q+1} onto P^1(F_q).

    Needs a/b outside F_q (this is exactly the nondegeneracy condition).
    """
    return mobius(ctx, a, ctx.frobenius_q(a), b, ctx.frobenius_q(b))


# -- neighbouring trinomial families -----------------------------------------


@dataclass(frozen=True)
class WydmParams:
    """X^r (X^{(S+T)(q-1)} + X^{T(q-1)} + 1), S = 2^s (s odd), T = 2^t (t even)."""

    k: int
    s: int
    t: int
    r: int

    def __post_init__(self):
        if min(self.k, self.s, self.t, self.r) < 1:
            raise ParameterError("k, s, t, r must be positive")
        if self.s % 2 != 1 or self.t % 2 != 0:
            raise ParameterError("s must be odd and t even")
        if (self.r - self.S - self.T) % (self.q + 1):
            raise ParameterError("r must be congruent to S + T modulo q + 1")

    @property
    def q(self) -> int:
        return 1 << self.k

    @property
    def S(self) -> int:
        return 1 << self.s

    @property
    def T(self) -> int:
        return 1 << self.t

    @property
    def predicts_permutation(self) -> bool:
        return gcd(self.r, self.q - 1) == 1

    def to_json(self) -> dict:
        return {"k": self.k, "s": self.s, "t": self.t, "r": self.r}


def wydm_generate(p: WydmParams) -> SparsePoly:
    q, n = p.q, p.q * p.q - 1
    exps = (p.r + (p.S + p.T) * (q - 1), p.r + p.T * (q - 1), p.r)
    return SparsePoly.from_exponents(canonical_exponent(e, n) for e in exps)


@dataclass(frozen=True)
class LhParams:
    """X + X^{1+r(q-1)} + X^{1+s(q-1)} with r(T-1) = T, s(T-1) = -1 mod q+1, T = 2^n."""

    k: int
    n: int
    r: int
    s: int

    @property
    def q(self) -> int:
        return 1 << self.k

    @property
    def T(self) -> int:
        return 1 << self.n

    def to_json(self) -> dict:
        return {"k": self.k, "n": self.n, "r": self.r, "s": self.s}


def lh_generate(k: int, n: int) -> tuple[LhParams, SparsePoly]:
    if k < 1 or n < 1:
        raise ParameterError("k and n must be positive")
    q = 1 << k
    T = 1 << n
    mod = q + 1
    if gcd(T - 1, mod) != 1:
        raise ParameterError(f"gcd(2^{n} - 1, {mod}) != 1")
    inv = pow(T - 1, -1, mod)
    r = (T * inv) % mod or mod
    s = (-inv) % mod or mod
    order = q * q - 1
    exps = (1, 1 + r * (q - 1), 1 + s * (q - 1))
    return LhParams(k, n, r, s), SparsePoly.from_exponents(canonical_exponent(e, order) for e in exps)
