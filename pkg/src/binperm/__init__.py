"""Permutation polynomials over F_{q^2}, q = 2^k, via the unit circle mu_{q+1}."""

from binperm.gf import FieldCtx, ctx_new
from binperm.poly import INF, MobiusMap, RatFunc, SparsePoly

__all__ = ["FieldCtx", "ctx_new", "INF", "MobiusMap", "RatFunc", "SparsePoly"]
__version__ = "0.1.0"
