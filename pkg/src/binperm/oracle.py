"""Brute-force ground truth: evaluate a polynomial on every element of F_{q^2}."""

from __future__ import annotations

import numpy as np

from binperm.errors import ResourceLimitError
from binperm.gf import FieldCtx
from binperm.poly import SparsePoly

MAX_FIELD_SIZE = 1 << 24


def eval_all(ctx: FieldCtx, f: SparsePoly) -> np.ndarray:
    """Values of f at ``ctx.enumerate("full_field")``: index 0 is x = 0, index j+1 is g^j."""
    if ctx.size > MAX_FIELD_SIZE:
        raise ResourceLimitError(f"field of size {ctx.size} exceeds brute-force limit")
    n = ctx.order
    exp = ctx.exp_table
    out = np.zeros(ctx.size, dtype=np.int64)
    j = np.arange(n, dtype=np.int64)
    for e, c in f.terms:
        if e == 0:
            out ^= c
            continue
        out[1:] ^= exp[(ctx.log(c) + j * (e % n)) % n]
    return out


def brute_force_is_permutation(ctx: FieldCtx, f: SparsePoly) -> bool:
    """True iff x -> f(x) is a bijection of F_{q^2}."""
    vals = eval_all(ctx, f)
    seen = np.zeros(ctx.size, dtype=bool)
    seen[vals] = True
    return bool(seen.all())


def same_function(ctx: FieldCtx, f: SparsePoly, g: SparsePoly) -> bool:
    return bool(np.array_equal(eval_all(ctx, f), eval_all(ctx, g)))
