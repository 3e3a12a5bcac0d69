"""Finite fields F_{p^n} of odd characteristic.

Elements are encoded as integers 0 <= x < p^n whose base-p digits are the
coefficients (constant term least significant) of a polynomial reduced
modulo the defining polynomial.  Scalar arithmetic works on these codes;
the ``v*`` methods operate on whole numpy arrays of codes and are what the
point counter uses.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from ..errors import EvenCharacteristic, InvalidInput, NotPrime, TooLarge
from . import polyfp
from .numtheory import factorize, is_prime

#: Default cap on the size of any field we enumerate element by element.
ENUMERATION_CAP = 2 * 10**8
_CHUNK = 1 << 20


def smallest_irreducible(p: int, n: int) -> tuple[int, ...]:
    """Monic irreducible of degree n whose lower coefficients, read as a
    base-p integer (constant term least significant), are smallest."""
    if n == 1:
        return (0, 1)
    for code in range(p**n):
        low = [(code // p**i) % p for i in range(n)]
        if low[0] == 0:
            continue
        f = low + [1]
        if polyfp.is_irreducible(f, p):
            return tuple(f)
    raise AssertionError("no irreducible polynomial found")  # unreachable


@dataclass(frozen=True)
class FieldCtx:
    p: int
    n: int
    modulus: tuple[int, ...]
    _pows: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_pows", tuple(self.p**i for i in range(self.n + 1)))

    # -- basic data -----------------------------------------------------
    @property
    def q(self) -> int:
        return self.p**self.n

    def __len__(self) -> int:
        return self.q

    def to_digits(self, x: int) -> list[int]:
        return [(x // self._pows[i]) % self.p for i in range(self.n)]

    def from_digits(self, d) -> int:
        return sum((int(c) % self.p) * self._pows[i] for i, c in enumerate(d))

    def from_int(self, a: int) -> int:
        """Image of the rational integer a."""
        return a % self.p

    # -- scalar arithmetic ---------------------------------------------
    def add(self, a: int, b: int) -> int:
        return self.from_digits(x + y for x, y in zip(self.to_digits(a), self.to_digits(b)))

    def sub(self, a: int, b: int) -> int:
        return self.from_digits(x - y for x, y in zip(self.to_digits(a), self.to_digits(b)))

    def neg(self, a: int) -> int:
        return self.from_digits(-x for x in self.to_digits(a))

    def mul(self, a: int, b: int) -> int:
        if self.n == 1:
            return a * b % self.p
        prod = polyfp.mul(polyfp.trim(self.to_digits(a), self.p),
                          polyfp.trim(self.to_digits(b), self.p), self.p)
        return self.from_digits(polyfp.mod(prod, list(self.modulus), self.p))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        result, base = 1, a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in a finite field")
        return self.pow(a, self.q - 2)

    def poly_eval(self, coeffs, x: int) -> int:
        """Evaluate an integer-coefficient polynomial (low to high) at x."""
        acc = 0
        for c in reversed(list(coeffs)):
            acc = self.add(self.mul(acc, x), self.from_int(c))
        return acc

    def elements(self) -> range:
        return range(self.q)

    @cached_property
    def generator(self) -> int:
        """Smallest code generating the multiplicative group."""
        order = self.q - 1
        primes = list(factorize(order)) if order > 1 else []
        for x in range(1, self.q):
            if all(self.pow(x, order // r) != 1 for r in primes):
                return x
        raise AssertionError("multiplicative group is not cyclic")  # unreachable

    # -- vectorized arithmetic on code arrays ---------------------------
    def vdigits(self, codes: np.ndarray) -> np.ndarray:
        codes = np.asarray(codes, dtype=np.int64)
        pw = np.asarray(self._pows[: self.n], dtype=np.int64)
        return (codes[:, None] // pw[None, :]) % self.p

    def vcodes(self, digits: np.ndarray) -> np.ndarray:
        pw = np.asarray(self._pows[: self.n], dtype=np.int64)
        return (np.asarray(digits, dtype=np.int64) % self.p) @ pw

    @cached_property
    def _reduction(self) -> np.ndarray:
        # row k: digits of X^(n+k) mod modulus, k = 0 .. n-2
        rows = []
        for k in range(max(self.n - 1, 0)):
            mono = [0] * (self.n + k) + [1]
            r = polyfp.mod(mono, list(self.modulus), self.p)
            rows.append(r + [0] * (self.n - len(r)))
        return np.asarray(rows, dtype=np.int64).reshape(-1, self.n)

    def vmul_digits(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        n, p = self.n, self.p
        if n == 1:
            return (a * b) % p
        full = np.zeros((a.shape[0], 2 * n - 1), dtype=np.int64)
        for i in range(n):
            full[:, i : i + n] += a[:, i : i + 1] * b
        full %= p
        out = full[:, :n] + full[:, n:] @ self._reduction
        return out % p

    def vpoly_eval_digits(self, coeffs, xd: np.ndarray) -> np.ndarray:
        """Evaluate an integer polynomial at every row of a digit array."""
        acc = np.zeros_like(xd)
        for c in reversed(list(coeffs)):
            acc = self.vmul_digits(acc, xd)
            acc[:, 0] = (acc[:, 0] + c) % self.p
        return acc

    @cached_property
    def chi_table(self) -> np.ndarray:
        """Quadratic character of every element, as an int8 array indexed by code."""
        table = np.full(self.q, -1, dtype=np.int8)
        for start in range(0, self.q, _CHUNK):
            codes = np.arange(start, min(self.q, start + _CHUNK), dtype=np.int64)
            d = self.vdigits(codes)
            table[self.vcodes(self.vmul_digits(d, d))] = 1
        table[0] = 0
        return table


def field_create(p: int, n: int = 1, *, modulus=None, cap: int = ENUMERATION_CAP) -> FieldCtx:
    """Build F_{p^n}; the defining polynomial defaults to the smallest irreducible."""
    if not isinstance(p, int) or not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if p == 2:
        raise EvenCharacteristic("characteristic 2 is not supported")
    if n < 1:
        raise InvalidInput(f"extension degree must be >= 1, got {n}")
    if p**n > cap:
        raise TooLarge(f"field of size {p}^{n} exceeds the enumeration cap {cap}")
    if modulus is None:
        modulus = smallest_irreducible(p, n)
    else:
        modulus = tuple(c % p for c in modulus)
        if len(modulus) != n + 1 or modulus[-1] != 1 or not polyfp.is_irreducible(list(modulus), p):
            raise InvalidInput("modulus must be monic irreducible of degree n")
    return FieldCtx(p, n, tuple(modulus))


def quadratic_character(x: int, ctx: FieldCtx) -> int:
    """Return 0, 1 or -1 according as x is zero, a nonzero square, or not a square."""
    if x == 0:
        return 0
    r = ctx.pow(x, (ctx.q - 1) // 2)
    if r == 1:
        return 1
    if r == ctx.from_int(-1):
        return -1
    raise AssertionError("Euler criterion produced neither 1 nor -1")


def embed(src: FieldCtx, dst: FieldCtx) -> list[int]:
    """Images in ``dst`` of the power basis 1, b, ..., b^(e-1) of ``src``.

    b is the smallest-code root of the defining polynomial of ``src`` inside
    ``dst``; any root gives a Galois-conjugate embedding.
    """
    if src.p != dst.p or dst.n % src.n:
        raise InvalidInput("source field is not a subfield of the destination")
    if src.n == 1:
        return [1]
    root = None
    for start in range(0, dst.q, _CHUNK):
        codes = np.arange(start, min(dst.q, start + _CHUNK), dtype=np.int64)
        vals = dst.vpoly_eval_digits(src.modulus, dst.vdigits(codes))
        hits = np.flatnonzero(~vals.any(axis=1))
        if hits.size:
            root = int(codes[hits[0]])
            break
    if root is None:
        raise AssertionError("subfield modulus has no root in the extension")
    basis = [1]
    for _ in range(src.n - 1):
        basis.append(dst.mul(basis[-1], root))
    return basis


def map_element(x: int, src: FieldCtx, basis: list[int], dst: FieldCtx) -> int:
    acc = 0
    for c, b in zip(src.to_digits(x), basis):
        if c:
            acc = dst.add(acc, dst.mul(c, b))
    return acc
