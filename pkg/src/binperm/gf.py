"""Arithmetic in F_{2^{2k}} together with its subfield F_q, q = 2^k.

Field elements are plain ints: bit i holds the coefficient of x^i of the
residue polynomial modulo a primitive polynomial of degree 2k.  Addition is
XOR.  The residue class of x is a multiplicative generator ``g``.

For 2k <= 16 scalar multiplication goes through log/antilog tables; for
larger fields it falls back to carry-less shift-and-reduce.  The numpy
tables are also used for whole-field vectorized evaluation.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
import numpy as np

from binperm.errors import DomainError, ParameterError

MAX_K = 12
TABLE_MUL_MAX_DEGREE = 16


def clmul(a: int, b: int) -> int:
    """Carry-less product of two GF(2)[x] polynomials encoded as ints."""
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    return r


def gf2_mod(a: int, m: int) -> int:
    """Remainder of a modulo m in GF(2)[x]."""
    dm = m.bit_length()
    while a.bit_length() >= dm:
        a ^= m << (a.bit_length() - dm)
    return a


def gf2_powmod(base: int, e: int, m: int) -> int:
    r = 1
    base = gf2_mod(base, m)
    while e:
        if e & 1:
            r = gf2_mod(clmul(r, base), m)
        base = gf2_mod(clmul(base, base), m)
        e >>= 1
    return r


def prime_factors(n: int) -> list[int]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def is_primitive(poly: int, degree: int) -> bool:
    """True iff ``poly`` has the given degree and x has order 2^degree - 1 modulo it.

    A full-order x forces the quotient ring to be a field, so this also
    certifies irreducibility.
    """
    if poly.bit_length() != degree + 1 or not poly & 1:
        return False
    order = (1 << degree) - 1
    if gf2_powmod(2, order, poly) != 1:
        return False
    return all(gf2_powmod(2, order // p, poly) != 1 for p in prime_factors(order))


@functools.lru_cache(maxsize=None)
def smallest_primitive(degree: int) -> int:
    """Smallest integer encoding of a primitive polynomial of the given degree."""
    for cand in range((1 << degree) + 1, 1 << (degree + 1), 2):
        if is_primitive(cand, degree):
            return cand
    raise ParameterError(f"no primitive polynomial of degree {degree}")


def _mul_const_vec(arr: np.ndarray, c: int, modulus: int, degree: int) -> np.ndarray:
    """Vectorized multiplication of every element of ``arr`` by constant ``c``."""
    acc = np.zeros_like(arr)
    i = 0
    while c:
        if c & 1:
            acc ^= arr << i
        c >>= 1
        i += 1
    for pos in range(2 * degree - 2, degree - 1, -1):
        bit = (acc >> pos) & 1
        acc ^= bit * (modulus << (pos - degree))
    return acc


@dataclass(frozen=True, eq=False)
class FieldCtx:
    """The field F_{q^2}, q = 2^k, with generator g = x and an order-3 element omega.

    Immutable; lazily built tables are pure functions of the modulus.
    """

    k: int
    modulus: int
    omega_alt: bool = False

    @property
    def q(self) -> int:
        return 1 << self.k

    @property
    def degree(self) -> int:
        return 2 * self.k

    @property
    def size(self) -> int:
        return 1 << self.degree

    @property
    def order(self) -> int:
        """Order of the multiplicative group, q^2 - 1."""
        return self.size - 1

    @property
    def g(self) -> int:
        return 2

    @functools.cached_property
    def omega(self) -> int:
        w = self.pow(self.g, self.order // 3)
        return self.mul(w, w) if self.omega_alt else w

    # -- tables ---------------------------------------------------------

    @functools.cached_property
    def exp_table(self) -> np.ndarray:
        """exp_table[j] = g^j for j in [0, q^2 - 2]."""
        n = self.order
        out = np.empty(n, dtype=np.int64)
        out[0] = 1
        filled = 1
        while filled < n:
            step = min(filled, n - filled)
            gf = gf2_powmod(2, filled, self.modulus)
            out[filled:filled + step] = _mul_const_vec(out[:step], gf, self.modulus, self.degree)
            filled += step
        out.setflags(write=False)
        return out

    @functools.cached_property
    def log_table(self) -> np.ndarray:
        """log_table[x] = j with g^j = x; log_table[0] = -1."""
        out = np.full(self.size, -1, dtype=np.int64)
        out[self.exp_table] = np.arange(self.order, dtype=np.int64)
        out.setflags(write=False)
        return out

    @functools.cached_property
    def _exp_list(self) -> list[int]:
        return self.exp_table.tolist()

    @functools.cached_property
    def _log_list(self) -> list[int]:
        return self.log_table.tolist()

    @property
    def uses_tables(self) -> bool:
        return self.degree <= TABLE_MUL_MAX_DEGREE

    # -- scalar arithmetic -------------------------------------------------

    @staticmethod
    def add(x: int, y: int) -> int:
        return x ^ y

    def mul_shift(self, x: int, y: int) -> int:
        return gf2_mod(clmul(x, y), self.modulus)

    def mul(self, x: int, y: int) -> int:
        if not x or not y:
            return 0
        if self.uses_tables:
            lg = self._log_list
            return self._exp_list[(lg[x] + lg[y]) % self.order]
        return self.mul_shift(x, y)

    def log(self, x: int) -> int:
        """Discrete logarithm to base g of a nonzero element."""
        if not x:
            raise DomainError("logarithm of zero")
        if self.uses_tables:
            return self._log_list[x]
        return int(self.log_table[x])

    def exp(self, j: int) -> int:
        """g^j for any integer j."""
        if self.uses_tables:
            return self._exp_list[j % self.order]
        return gf2_powmod(2, j % self.order, self.modulus)

    def pow(self, x: int, e: int) -> int:
        if not x:
            if e > 0:
                return 0
            if e == 0:
                return 1
            raise DomainError("negative power of zero")
        if self.uses_tables:
            return self._exp_list[(self._log_list[x] * e) % self.order]
        return gf2_powmod(x, e % self.order, self.modulus)

    def inv(self, x: int) -> int:
        if not x:
            raise DomainError("inverse of zero")
        return self.pow(x, -1)

    def div(self, x: int, y: int) -> int:
        return self.mul(x, self.inv(y))

    def frobenius_q(self, x: int) -> int:
        """x^q, the generator of Gal(F_{q^2}/F_q)."""
        return self.pow(x, self.q)

    def in_subfield(self, x: int) -> bool:
        return self.frobenius_q(x) == x

    def enumerate(self, which: str = "full_field") -> list[int]:
        """Zero, then ascending powers of g (full field) or of g^(q+1) (subfield)."""
        if which == "full_field":
            return [0] + [self.exp(j) for j in range(self.order)]
        if which == "subfield":
            return [0] + [self.exp(j * (self.q + 1)) for j in range(self.q - 1)]
        raise ParameterError(f"unknown element set {which!r}")

    # -- serialization -----------------------------------------------------

    @staticmethod
    def to_hex(x: int) -> str:
        return format(x, "x")

    def from_hex(self, s: str) -> int:
        x = int(s, 16)
        if not 0 <= x < self.size:
            raise ParameterError(f"element {s!r} out of range for F_{self.size}")
        return x

    def to_json(self) -> dict:
        return {"k": self.k, "modulus_bits": self.to_hex(self.modulus)}

    def __repr__(self) -> str:
        return f"FieldCtx(k={self.k}, modulus=0x{self.modulus:x}{', omega_alt' if self.omega_alt else ''})"


@functools.lru_cache(maxsize=None)
def ctx_new(k: int, omega_alt: bool = False) -> FieldCtx:
    """Field context for F_{2^{2k}}, 1 <= k <= 12.

    ``omega_alt`` swaps the canonical omega = g^((q^2-1)/3) for omega^2.
    """
    if not isinstance(k, int) or not 1 <= k <= MAX_K:
        raise ParameterError(f"k must be an integer in [1, {MAX_K}], got {k!r}")
    return FieldCtx(k=k, modulus=smallest_primitive(2 * k), omega_alt=omega_alt)


def ctx_from_json(data: dict) -> FieldCtx:
    ctx = ctx_new(int(data["k"]))
    if "modulus_bits" in data and int(data["modulus_bits"], 16) != ctx.modulus:
        raise ParameterError("modulus does not match the canonical primitive polynomial")
    return ctx
