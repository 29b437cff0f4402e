"""The unit circle mu_{q+1} and the projective line P^1(F_q) inside P^1(F_{q^2}).

Both sets have q + 1 elements.  Bijection checks use a presence bitmap
indexed by the integer encoding of an element, with one extra slot for INF.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable, Iterable, Union

from binperm.gf import FieldCtx
from binperm.poly import INF, MobiusMap, ProjValue, RatFunc, mobius_apply, rat_eval


@dataclass(frozen=True)
class UnitCircle:
    """(q+1)-th roots of unity, listed as g^{(q-1)j} for j = 0..q."""

    elements: tuple[int, ...]
    q: int

    _members: frozenset = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_members", frozenset(self.elements))

    def __contains__(self, v: object) -> bool:
        return v in self._members

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)


@dataclass(frozen=True)
class ProjLine:
    """F_q (in subfield enumeration order) followed by INF."""

    elements: tuple[ProjValue, ...]
    q: int

    _members: frozenset = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_members", frozenset(self.elements))

    def __contains__(self, v: object) -> bool:
        return v in self._members

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)


PointSet = Union[UnitCircle, ProjLine]


def unit_circle(ctx: FieldCtx) -> UnitCircle:
    step = ctx.q - 1
    return UnitCircle(tuple(ctx.exp(step * j) for j in range(ctx.q + 1)), ctx.q)


def proj_line(ctx: FieldCtx) -> ProjLine:
    return ProjLine(tuple(ctx.enumerate("subfield")) + (INF,), ctx.q)


def on_unit_circle(ctx: FieldCtx, x: ProjValue) -> bool:
    if x is INF or not x:
        return False
    return ctx.pow(x, ctx.q + 1) == 1


def _slot(ctx: FieldCtx, v: ProjValue) -> int:
    return ctx.size if v is INF else v


def is_bijection(ctx: FieldCtx, func: Callable[[ProjValue], ProjValue],
                 domain: Iterable[ProjValue], target: PointSet) -> bool:
    """True iff ``func`` maps ``domain`` injectively onto ``target``."""
    seen = bytearray(ctx.size + 1)
    count = 0
    for x in domain:
        y = func(x)
        if y not in target:
            return False
        s = _slot(ctx, y)
        if seen[s]:
            return False
        seen[s] = 1
        count += 1
    return count == len(target)


def is_perm_on(ctx: FieldCtx, fn: RatFunc, pts: PointSet) -> bool:
    """Does the rational function permute ``pts`` (evaluated projectively)?"""
    return is_bijection(ctx, lambda v: rat_eval(ctx, fn, v), pts, pts)


def maps_bijectively(ctx: FieldCtx, mu: MobiusMap, src: PointSet, dst: PointSet) -> bool:
    return len(src) == len(dst) and is_bijection(ctx, lambda v: mobius_apply(ctx, mu, v), src, dst)


def dump_elements(ctx: FieldCtx, pts: PointSet) -> str:
    """JSON list of hex encodings ("inf" for the point at infinity), for debugging."""
    return json.dumps(["inf" if v is INF else ctx.to_hex(v) for v in pts])
