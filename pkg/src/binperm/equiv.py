"""Multiplicative equivalence over F_{q^2}.

f and g are equivalent when f(X) = alpha * g(beta * X^n) mod X^{q^2} - X with
alpha, beta nonzero and gcd(n, q^2 - 1) = 1.  Such a substitution permutes
the nonzero exponents, so it never changes the number of terms of a reduced
polynomial, and it preserves being a permutation polynomial.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Iterable, Optional

from binperm.errors import ParameterError
from binperm.framework import (
    TrinomialParams,
    WydmParams,
    lh_generate,
    thm1_exponents,
    wydm_generate,
)
from binperm.gf import FieldCtx
from binperm.poly import SparsePoly, canonical_exponent, reduce_mod_field

DEFAULT_SEARCH_MAX_K = 4


@dataclass(frozen=True)
class EquivWitness:
    alpha: int
    beta: int
    n: int

    def to_json(self) -> dict:
        return {"alpha": format(self.alpha, "x"), "beta": format(self.beta, "x"), "n": self.n}


IDENTITY_WITNESS = EquivWitness(1, 1, 1)


def check_witness(ctx: FieldCtx, w: EquivWitness) -> None:
    if not w.alpha or not w.beta:
        raise ParameterError("alpha and beta must be nonzero")
    if w.n < 1 or gcd(w.n, ctx.order) != 1:
        raise ParameterError(f"n={w.n} is not a positive unit modulo {ctx.order}")


def apply_witness(ctx: FieldCtx, g: SparsePoly, w: EquivWitness) -> SparsePoly:
    """alpha * g(beta * X^n), reduced modulo X^{q^2} - X."""
    check_witness(ctx, w)
    terms = ((e * w.n, ctx.mul(w.alpha, ctx.mul(c, ctx.pow(w.beta, e)))) for e, c in g.terms)
    return reduce_mod_field(ctx, SparsePoly.from_terms(terms))


def compose_witness(ctx: FieldCtx, outer: EquivWitness, inner: EquivWitness) -> EquivWitness:
    """If f = outer(g) and g = inner(h), return the witness with f = result(h)."""
    return EquivWitness(
        ctx.mul(outer.alpha, inner.alpha),
        ctx.mul(inner.beta, ctx.pow(outer.beta, inner.n)),
        (outer.n * inner.n) % ctx.order,
    )


def invert_witness(ctx: FieldCtx, w: EquivWitness) -> EquivWitness:
    """If f = w(g), return the witness with g = result(f)."""
    n_inv = pow(w.n, -1, ctx.order)
    return EquivWitness(ctx.inv(w.alpha), ctx.pow(w.beta, -n_inv), n_inv)


def _maps_support(n: int, src: tuple[int, ...], dst: frozenset, order: int) -> bool:
    return all(canonical_exponent(e * n, order) in dst for e in src)


def are_equivalent(
    ctx: FieldCtx,
    f: SparsePoly,
    g: SparsePoly,
    n_candidates: Optional[Iterable[int]] = None,
) -> Optional[EquivWitness]:
    """Smallest witness (by n, then beta's enumeration index) with f = alpha g(beta X^n).

    Without ``n_candidates`` the search is limited to k <= 4.
    """
    order = ctx.order
    if len(f) != len(g):
        return None
    if f.is_zero:
        return IDENTITY_WITNESS
    if n_candidates is None:
        if ctx.k > DEFAULT_SEARCH_MAX_K:
            raise ParameterError(f"witness search needs n candidates for k > {DEFAULT_SEARCH_MAX_K}")
        n_candidates = range(1, order)
    dst = frozenset(f.support)
    src = g.support
    e0, c0 = g.terms[0]
    for n in sorted(set(n_candidates)):
        if n < 1 or gcd(n, order) != 1 or not _maps_support(n, src, dst, order):
            continue
        target0 = f.coeff(canonical_exponent(e0 * n, order))
        for j in range(order):
            beta = ctx.exp(j)
            alpha = ctx.div(target0, ctx.mul(c0, ctx.pow(beta, e0)))
            w = EquivWitness(alpha, beta, n)
            if apply_witness(ctx, g, w) == f:
                return w
    return None


# -- explicit correspondences for the trinomial family -----------------------


@dataclass
class Sec3Record:
    case: str
    params: dict
    witness: Optional[EquivWitness]
    verified: bool
    lift_i: int = 0
    checks: dict = field(default_factory=dict)
    partner: Optional[dict] = None

    def to_json(self) -> dict:
        return {
            "case": self.case,
            "params": self.params,
            "witness": self.witness.to_json() if self.witness else None,
            "verified": self.verified,
            "lift_i": self.lift_i,
            "checks": self.checks,
            "partner": self.partner,
        }


def trinomial_poly(tp: TrinomialParams) -> SparsePoly:
    """X^{d1} + X^{d2} + X^{d3} without the gcd gate."""
    return SparsePoly.from_exponents(thm1_exponents(tp))


def wydm_reciprocal_exponent(tp: TrinomialParams) -> int:
    """r with r = -d2 - (Q+R)(q-1) mod q^2 - 1, in [1, q^2 - 1]."""
    _, d2, _ = thm1_exponents(tp)
    n = tp.order
    return (-d2 - (tp.Q + tp.R) * (tp.q - 1) - 1) % n + 1


def sec3_wydm_match(ctx: FieldCtx, tp: TrinomialParams) -> Sec3Record:
    """Match the trinomial with the (S+T, T) family when ell and m have mixed parity.

    ell odd, m even: the two polynomials coincide after reduction.
    ell even, m odd: f(X) = g(X^{q^2 - 2}).
    """
    f = trinomial_poly(tp)
    if tp.ell % 2 == 1 and tp.m % 2 == 0:
        _, d2, _ = thm1_exponents(tp)
        wp = WydmParams(tp.k, tp.ell, tp.m, d2)
        case, w = "wydm-direct", IDENTITY_WITNESS
    elif tp.ell % 2 == 0 and tp.m % 2 == 1:
        wp = WydmParams(tp.k, tp.m, tp.ell, wydm_reciprocal_exponent(tp))
        case, w = "wydm-reciprocal", EquivWitness(1, 1, ctx.order - 1)
    else:
        return Sec3Record("not-applicable", tp.to_json(), None, False)
    g = wydm_generate(wp)
    ok = apply_witness(ctx, g, w) == f
    return Sec3Record(case, tp.to_json(), w, ok, 0, {"congruence": ok}, wp.to_json())


def sec3_lh_match(ctx: FieldCtx, tp: TrinomialParams) -> Sec3Record:
    """Verify g(X^v) = f with v = d1 and g from the X + X^{1+r(q-1)} + X^{1+s(q-1)} family."""
    q, n = tp.q, tp.order
    d1, _, _ = thm1_exponents(tp)
    if gcd(d1, n) != 1:
        raise ParameterError("needs gcd(d1, q^2 - 1) = 1")
    i = 0
    while (1 << (tp.ell + 2 * tp.k * i)) <= tp.R:
        i += 1
    lifted = TrinomialParams(tp.k, tp.ell + 2 * tp.k * i, tp.m, tp.u)
    shift = lifted.ell - lifted.m
    T = 1 << shift
    checks = {"gcd_T_minus_1": gcd(T - 1, q + 1) == 1}
    if not checks["gcd_T_minus_1"]:
        return Sec3Record("lh", tp.to_json(), None, False, i, checks)
    lp, g = lh_generate(tp.k, shift)
    v = d1
    checks["r_congruence"] = (lp.r * v * (q - 1) - lifted.Q * (q - 1)) % n == 0
    checks["s_congruence"] = (lp.s * v * (q - 1) + lifted.R * (q - 1)) % n == 0
    w = EquivWitness(1, 1, v)
    checks["congruence"] = apply_witness(ctx, g, w) == trinomial_poly(tp)
    return Sec3Record("lh", tp.to_json(), w, all(checks.values()), i, checks, lp.to_json())
