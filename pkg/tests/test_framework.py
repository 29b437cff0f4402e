from math import gcd

import pytest

from gen import random_factory_inputs, random_poly, random_wrapped
from binperm.circle import is_perm_on, unit_circle
from binperm.errors import (
    InvalidFactoryInput,
    NotExpressibleError,
    NotWrappableError,
    ParameterError,
    RewriteInvalidError,
)
from binperm.framework import (
    TrinomialParams,
    WrappedForm,
    WydmParams,
    criterion_lemma1,
    express_quotient_form,
    factor_as_wrapped,
    factory_remark,
    g0_value,
    lemma3_check,
    lemma4_check,
    lemma4_sides,
    lh_generate,
    no_roots_on_circle,
    quotient_form,
    rewrite_lemma2,
    rho_rat,
    select_exponent,
    thm1_A,
    thm1_exponents,
    thm1_g,
    thm1_generate,
    thm1_proof_checks,
    wydm_generate,
)
from binperm.gf import ctx_new
from binperm.oracle import brute_force_is_permutation, same_function
from binperm.poly import (
    IDENTITY,
    RatFunc,
    SparsePoly,
    mobius_rho,
    poly_eval,
    power_map,
    rat_eval,
    rat_new,
    scale,
)

F = SparsePoly.from_exponents
TRI = F([8, 11, 14])


# -- exponents and generation -------------------------------------------------


def oracle_exponents(k, ell, m, u):
    q, Q, R = 2**k, 2**ell, 2**m
    n = q * q - 1
    raw = (Q - R + u * (q + 1), Q + R + (u - R) * (q + 1), -(Q + R) + (u + Q) * (q + 1))
    return tuple(next(e for e in range(1, n + 1) if (e - d) % n == 0) for d in raw)


def test_thm1_exponent_examples():
    assert thm1_exponents(TrinomialParams(2, 1, 2, 2)) == (8, 11, 14)
    assert thm1_exponents(TrinomialParams(2, 1, 2, 1))[0] == 3
    assert thm1_exponents(TrinomialParams(2, 1, 3, 1)) == (14, 5, 5)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_thm1_exponent_invariants(k):
    q = 2**k
    n = q * q - 1
    for ell in range(1, 2 * k + 3):
        for m in range(1, 2 * k + 3):
            if ell == m:
                continue
            for u in range(-2, q + 2):
                tp = TrinomialParams(k, ell, m, u)
                d1, d2, d3 = thm1_exponents(tp)
                assert (d1, d2, d3) == oracle_exponents(k, ell, m, u)
                assert all(1 <= d <= n for d in (d1, d2, d3))
                assert (d1 - d2 - tp.R * (q - 1)) % n == 0
                assert (d3 - d2 - (tp.Q + tp.R) * (q - 1)) % n == 0
                assert d1 % (q - 1) == d2 % (q - 1) == d3 % (q - 1) if q > 2 else True


def test_trinomial_params_validation():
    with pytest.raises(ParameterError):
        TrinomialParams(2, 3, 3, 0)
    with pytest.raises(ParameterError):
        TrinomialParams(0, 1, 2, 0)


def test_thm1_generate_examples(ctx2):
    inst = thm1_generate(TrinomialParams(2, 1, 2, 2))
    assert inst.accepted and not inst.degenerate
    assert inst.poly == TRI
    assert brute_force_is_permutation(ctx2, inst.poly)

    inst = thm1_generate(TrinomialParams(2, 1, 3, 1))
    assert inst.exponents == (14, 5, 5)
    assert inst.poly == F([14]) and inst.degenerate
    assert brute_force_is_permutation(ctx2, inst.poly)

    inst = thm1_generate(TrinomialParams(2, 1, 2, 1))
    assert not inst.accepted and inst.poly is None


# -- wrapped form ---------------------------------------------------------------


def test_factor_minimal_anchor(ctx2):
    w = factor_as_wrapped(ctx2, TRI)
    assert w == WrappedForm(8, F([0, 1, 2]))
    assert w.reconstruct(ctx2) == TRI


def test_factor_d2_anchor(ctx2):
    w = factor_as_wrapped(ctx2, TRI, anchor=11)
    assert w.r == 11
    assert w.reconstruct(ctx2) == TRI
    # the hand-derived A(X) = X^R + 1 + X^{Q+R} with (Q, R) = (2, 4)
    paper_form = WrappedForm(11, F([0, 4, 6]))
    assert same_function(ctx2, paper_form.reconstruct(ctx2), TRI)
    assert same_function(ctx2, paper_form.reconstruct(ctx2), w.reconstruct(ctx2))


def test_factor_errors(ctx2):
    with pytest.raises(NotWrappableError):
        factor_as_wrapped(ctx2, F([1, 2]))
    with pytest.raises(NotWrappableError):
        factor_as_wrapped(ctx2, F([0, 3]))
    with pytest.raises(ParameterError):
        factor_as_wrapped(ctx2, TRI, anchor=9)


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_factor_round_trip(k, rng):
    ctx = ctx_new(k)
    for _ in range(30):
        w = random_wrapped(ctx, rng)
        f = w.reconstruct(ctx)
        if f.is_zero:
            continue
        for anchor in (None, f.support[-1]):
            w2 = factor_as_wrapped(ctx, f, anchor=anchor)
            assert w2.reconstruct(ctx) == f
            assert w2.A.degree <= ctx.q


def test_criterion_examples(ctx2):
    assert criterion_lemma1(ctx2, WrappedForm(8, F([0, 1, 2])))
    assert not criterion_lemma1(ctx2, WrappedForm(3, F([0])))
    for k in range(1, 5):
        assert criterion_lemma1(ctx_new(k), WrappedForm(1, F([0])))
    with pytest.raises(ParameterError):
        criterion_lemma1(ctx2, WrappedForm(0, F([0])))


@pytest.mark.parametrize("k", [1, 2, 3])
def test_criterion_matches_brute_force(k, rng):
    ctx = ctx_new(k)
    for _ in range(60):
        w = random_wrapped(ctx, rng)
        assert criterion_lemma1(ctx, w) == brute_force_is_permutation(ctx, w.reconstruct(ctx))


# -- rewrite --------------------------------------------------------------------


def test_rewrite_matches_proof_quotient(ctx2):
    w = WrappedForm(11, F([0, 4, 6]))
    g = rewrite_lemma2(ctx2, w)
    proof_g = rat_new(ctx2, F([6, 2, 0]), F([6, 4, 0]))
    for x in unit_circle(ctx2):
        assert rat_eval(ctx2, g, x) == rat_eval(ctx2, proof_g, x) == g0_value(ctx2, w, x)


def test_rewrite_power_map(ctx2):
    assert rewrite_lemma2(ctx2, WrappedForm(7, F([0]))) == power_map(2)
    assert rewrite_lemma2(ctx2, WrappedForm(-4, F([0]))) == power_map(1)


def test_rewrite_root_on_circle(ctx2):
    z = unit_circle(ctx2).elements[2]
    A = SparsePoly.from_terms([(1, 1), (0, z)])
    assert not no_roots_on_circle(ctx2, A)
    with pytest.raises(RewriteInvalidError):
        rewrite_lemma2(ctx2, WrappedForm(3, A))


@pytest.mark.parametrize("k", [1, 2, 3])
def test_rewrite_fidelity(k, rng):
    ctx = ctx_new(k)
    done = 0
    while done < 30:
        A = random_poly(ctx, rng, ctx.q + 2)
        if not no_roots_on_circle(ctx, A):
            continue
        r = rng.randint(-3 * ctx.q, ctx.order)
        g = rewrite_lemma2(ctx, WrappedForm(r, A))
        for x in unit_circle(ctx):
            assert rat_eval(ctx, g, x) == g0_value(ctx, WrappedForm(r, A), x)
        done += 1


def test_no_roots_examples(ctx2):
    for k in range(1, 5):
        ctx = ctx_new(k)
        A = F([2, 0, 6])
        assert poly_eval(ctx, A, 1) == 1
    assert no_roots_on_circle(ctx2, F([0, 4, 6]))


# -- degree-one maps --------------------------------------------------------------


@pytest.mark.parametrize("k", range(1, 9))
def test_lemma3(k):
    assert lemma3_check(ctx_new(k))
    assert lemma3_check(ctx_new(k, omega_alt=True))


def test_lemma4_examples(ctx2):
    assert lemma4_check(ctx2, 1, 2)
    assert lemma4_check(ctx2, 1, 3)
    assert lemma4_check(ctx2, 2, 1)
    lhs, rhs = lemma4_sides(ctx2, 1, 2)
    rho = rho_rat(ctx2)
    from binperm.poly import rat_compose_all
    assert rhs == rat_compose_all(ctx2, rho, power_map(6), rho)
    _, rhs13 = lemma4_sides(ctx2, 1, 3)
    assert rhs13 == rat_compose_all(ctx2, rho, power_map(6), rho)  # R - Q = 8 - 2
    lhs21, _ = lemma4_sides(ctx2, 2, 1)
    assert lhs21 == RatFunc(lhs21.num, lhs21.den)
    with pytest.raises(ParameterError):
        lemma4_check(ctx2, 2, 2)


def test_lemma4_detects_wrong_branch(ctx2):
    # swapping R - Q for R + Q must break the identity for same-parity exponents
    lhs, _ = lemma4_sides(ctx2, 1, 3)
    rho = rho_rat(ctx2)
    from binperm.poly import rat_compose_all, rat_equal
    assert not rat_equal(ctx2, lhs, rat_compose_all(ctx2, rho, power_map(10), rho))


@pytest.mark.parametrize("k", [1, 2, 3, 4])
@pytest.mark.parametrize("alt", [False, True])
def test_lemma4_parity_law(k, alt):
    ctx = ctx_new(k, alt)
    for ell in range(1, 6):
        for m in range(1, 6):
            if ell != m:
                assert lemma4_check(ctx, ell, m), (ell, m)


# -- proof steps ------------------------------------------------------------------


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_proof_steps_hold_for_accepted(k):
    ctx = ctx_new(k)
    for ell in range(1, 2 * k + 2):
        for m in range(1, 2 * k + 2):
            if ell == m:
                continue
            for u in range(2**k + 1):
                tp = TrinomialParams(k, ell, m, u)
                if thm1_generate(tp).accepted:
                    checks = thm1_proof_checks(ctx, tp)
                    assert all(checks.values()), (tp, checks)


def test_thm1_quotient_pieces(ctx2):
    tp = TrinomialParams(2, 1, 2, 2)
    assert thm1_A(tp) == F([0, 4, 6])
    assert thm1_g(ctx2, tp) == rat_new(ctx2, F([6, 2, 0]), F([6, 4, 0]))
    assert quotient_form(ctx2, 6, thm1_A(tp)) == thm1_g(ctx2, tp)


# -- factory ------------------------------------------------------------------------


def test_select_exponent_examples():
    assert select_exponent(1, 4) == 1
    assert select_exponent(0, 4) == 5
    assert select_exponent(3, 4) == 8
    assert select_exponent(0, 2) == 3
    assert select_exponent(-1, 4) == 4 if gcd(4, 3) == 1 else True


@pytest.mark.parametrize("k", range(1, 7))
def test_select_exponent_linear_scan(k):
    q = 2**k
    for s in range(-q, 2 * q):
        r = select_exponent(s, q)
        expected = next(c for c in range(1, q * q) if (c - s) % (q + 1) == 0 and gcd(c, q - 1) == 1)
        assert r == expected


def test_express_quotient_examples(ctx2):
    g = rat_new(ctx2, F([6, 2, 0]), F([6, 4, 0]))
    s, A = express_quotient_form(ctx2, g)
    assert (s, A) == (1, F([6, 4, 0]))
    assert express_quotient_form(ctx2, power_map(7)) == (2, F([0]))
    s, A = express_quotient_form(ctx2, rho_rat(ctx2))
    assert quotient_form(ctx2, s, A) == rho_rat(ctx2)


def test_express_quotient_absorbs_circle_scalar(ctx2):
    lam = unit_circle(ctx2).elements[1]
    rho = rho_rat(ctx2)
    g = RatFunc(scale(ctx2, rho.num, lam), rho.den)
    s, A = express_quotient_form(ctx2, g)
    assert quotient_form(ctx2, s, A) == g
    assert no_roots_on_circle(ctx2, A)


def test_express_quotient_failures():
    ctx = ctx_new(1)
    with pytest.raises(NotExpressibleError):
        express_quotient_form(ctx, rho_rat(ctx))
    ctx2 = ctx_new(2)
    with pytest.raises(NotExpressibleError):
        express_quotient_form(ctx2, rat_new(ctx2, F([2, 0]), F([1])))
    # scalar off the unit circle
    g = RatFunc(scale(ctx2, F([0]), ctx2.exp(5)), F([0]))
    with pytest.raises(NotExpressibleError):
        express_quotient_form(ctx2, g)


def test_factory_examples(ctx2):
    rho = mobius_rho(ctx2)
    f, w = factory_remark(ctx2, power_map(3), rho, rho)
    assert brute_force_is_permutation(ctx2, f)
    assert criterion_lemma1(ctx2, w)

    ctx1 = ctx_new(1)
    rho1 = mobius_rho(ctx1)
    f1, w1 = factory_remark(ctx1, IDENTITY, rho1, rho1)
    assert len(f1) == 1 and brute_force_is_permutation(ctx1, f1)

    f6, w6 = factory_remark(ctx2, power_map(6), rho, rho)
    assert w6.A == F([0, 4, 6]) and w6.r == 1
    thm = thm1_generate(TrinomialParams(2, 1, 2, 3))
    assert same_function(ctx2, f6, thm.poly)


def test_factory_rejects_bad_inputs(ctx2):
    rho = mobius_rho(ctx2)
    with pytest.raises(InvalidFactoryInput):
        factory_remark(ctx2, power_map(5), rho, rho)
    from binperm.poly import mobius_identity, mobius
    with pytest.raises(InvalidFactoryInput):
        factory_remark(ctx2, IDENTITY, mobius(ctx2, 1, 1, 0, 1), rho)
    with pytest.raises(InvalidFactoryInput):
        factory_remark(ctx2, IDENTITY, rho, mobius(ctx2, 1, 1, 0, 1))
    assert mobius_identity()


@pytest.mark.parametrize("k", [1, 2, 3])
def test_factory_closure_small(k, rng):
    ctx = ctx_new(k)
    for _ in range(8):
        h, pre, post = random_factory_inputs(ctx, rng)
        f, w = factory_remark(ctx, h, pre, post)
        assert criterion_lemma1(ctx, w)
        assert brute_force_is_permutation(ctx, f)


# -- neighbouring families ------------------------------------------------------------


def test_wydm_examples(ctx2):
    f = wydm_generate(WydmParams(2, 1, 2, 1))
    assert f == F([1, 4, 13])
    assert brute_force_is_permutation(ctx2, f)
    bad = WydmParams(2, 1, 2, 6)
    assert not bad.predicts_permutation
    assert not brute_force_is_permutation(ctx2, wydm_generate(bad))
    with pytest.raises(ParameterError):
        WydmParams(2, 2, 2, 1)
    with pytest.raises(ParameterError):
        WydmParams(2, 1, 3, 1)
    with pytest.raises(ParameterError):
        WydmParams(2, 1, 2, 2)


def test_lh_examples(ctx2):
    lp, f = lh_generate(2, 1)
    assert (lp.r, lp.s) == (2, 4)
    assert f == F([1, 7, 13])
    assert brute_force_is_permutation(ctx2, f)
    lp, f = lh_generate(2, 3)
    assert (lp.r, lp.s) == (4, 2)
    assert (7 * lp.r - 8) % 5 == 0 and (7 * lp.s + 1) % 5 == 0
    assert f == F([1, 7, 13])
    with pytest.raises(ParameterError):
        lh_generate(1, 2)


def test_is_perm_on_factory_g(ctx2):
    rho = rho_rat(ctx2)
    from binperm.poly import rat_compose_all
    g = rat_compose_all(ctx2, rho, power_map(3), rho)
    assert is_perm_on(ctx2, g, unit_circle(ctx2))
