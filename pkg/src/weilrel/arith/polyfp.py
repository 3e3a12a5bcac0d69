"""Dense univariate polynomials over a prime field F_p.

A polynomial a_0 + a_1 X + ... + a_n X^n is the list [a_0, ..., a_n] of
integers in range(p) with a_n != 0; the zero polynomial is [].

Factorization follows the usual three stages: squarefree decomposition,
distinct-degree factorization, then Cantor-Zassenhaus equal-degree splitting
driven by a seeded generator so results are reproducible.
"""

from __future__ import annotations

import random
from collections.abc import Sequence

from ..errors import NotPrime, ZeroPolynomial
from .numtheory import is_prime

Poly = list[int]


def trim(a: Sequence[int], p: int) -> Poly:
    out = [c % p for c in a]
    while out and out[-1] == 0:
        out.pop()
    return out


def deg(a: Poly) -> int:
    return len(a) - 1


def add(a: Poly, b: Poly, p: int) -> Poly:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = (out[i] + c) % p
    return trim(out, p)


def sub(a: Poly, b: Poly, p: int) -> Poly:
    out = list(a) + [0] * max(0, len(b) - len(a))
    for i, c in enumerate(b):
        out[i] = (out[i] - c) % p
    return trim(out, p)


def scale(a: Poly, c: int, p: int) -> Poly:
    return trim([x * c for x in a], p)


def mul(a: Poly, b: Poly, p: int) -> Poly:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return trim(out, p)


def divmod_(a: Poly, b: Poly, p: int) -> tuple[Poly, Poly]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(a)
    db = deg(b)
    inv = pow(b[-1], -1, p)
    if len(r) < len(b):
        return [], trim(r, p)
    q = [0] * (len(r) - db)
    for i in range(len(r) - 1, db - 1, -1):
        c = r[i] * inv % p
        if c:
            q[i - db] = c
            for j in range(db + 1):
                r[i - db + j] = (r[i - db + j] - c * b[j]) % p
    return trim(q, p), trim(r[:db], p)


def mod(a: Poly, b: Poly, p: int) -> Poly:
    return divmod_(a, b, p)[1]


def monic(a: Poly, p: int) -> Poly:
    if not a:
        return []
    inv = pow(a[-1], -1, p)
    return [c * inv % p for c in a]


def gcd(a: Poly, b: Poly, p: int) -> Poly:
    a, b = trim(a, p), trim(b, p)
    while b:
        a, b = b, mod(a, b, p)
    return monic(a, p)


def derivative(a: Poly, p: int) -> Poly:
    return trim([i * c for i, c in enumerate(a)][1:], p)


def powmod(a: Poly, e: int, m: Poly, p: int) -> Poly:
    result: Poly = [1]
    base = mod(a, m, p)
    while e:
        if e & 1:
            result = mod(mul(result, base, p), m, p)
        e >>= 1
        if e:
            base = mod(mul(base, base, p), m, p)
    return result


def evaluate(a: Poly, x: int, p: int) -> int:
    acc = 0
    for c in reversed(a):
        acc = (acc * x + c) % p
    return acc


def is_irreducible(f: Poly, p: int) -> bool:
    """Ben-Or test: f has no factor of degree d <= deg f / 2."""
    f = trim(f, p)
    n = deg(f)
    if n < 1:
        return False
    if n == 1:
        return True
    f = monic(f, p)
    x = [0, 1]
    h = x
    for _ in range(n // 2):
        h = powmod(h, p, f, p)
        if deg(gcd(f, sub(h, x, p), p)) > 0:
            return False
    return True


def _pth_root(a: Poly, p: int) -> Poly:
    # a is a polynomial in X^p; coefficients are fixed by Frobenius on F_p
    return [a[i] for i in range(0, len(a), p)]


def squarefree_decomposition(f: Poly, p: int) -> list[tuple[Poly, int]]:
    """Return [(g_i, i)] with f = lc * prod g_i^i, each g_i squarefree and monic."""
    f = monic(trim(f, p), p)
    if deg(f) < 1:
        return []
    out: list[tuple[Poly, int]] = []
    df = derivative(f, p)
    if not df:
        return [(g, m * p) for g, m in squarefree_decomposition(_pth_root(f, p), p)]
    c = gcd(f, df, p)
    w = divmod_(f, c, p)[0]
    i = 1
    while deg(w) > 0:
        y = gcd(w, c, p)
        z = divmod_(w, y, p)[0]
        if deg(z) > 0:
            out.append((monic(z, p), i))
        i += 1
        w = y
        c = divmod_(c, y, p)[0]
    if deg(c) > 0:
        for g, m in squarefree_decomposition(_pth_root(c, p), p):
            out.append((g, m * p))
    return out


def distinct_degree(f: Poly, p: int) -> list[tuple[Poly, int]]:
    """Split a monic squarefree f into products of irreducibles of equal degree."""
    out = []
    x = [0, 1]
    h = x
    d = 0
    f = list(f)
    while deg(f) >= 2 * (d + 1):
        d += 1
        h = powmod(h, p, f, p)
        g = gcd(f, sub(h, x, p), p)
        if deg(g) > 0:
            out.append((g, d))
            f = divmod_(f, g, p)[0]
            h = mod(h, f, p)
    if deg(f) > 0:
        out.append((f, deg(f)))
    return out


def _trace_poly(a: Poly, d: int, f: Poly, p: int) -> Poly:
    # a + a^2 + a^4 + ... + a^(2^(d-1)) mod f, used for p = 2
    t = a
    acc = a
    for _ in range(d - 1):
        t = mod(mul(t, t, p), f, p)
        acc = add(acc, t, p)
    return acc


def equal_degree(f: Poly, d: int, p: int, rng: random.Random) -> list[Poly]:
    n = deg(f)
    if n == d:
        return [f]
    while True:
        a = trim([rng.randrange(p) for _ in range(n)], p)
        if deg(a) < 1:
            continue
        if p == 2:
            b = _trace_poly(a, d, f, p)
        else:
            b = sub(powmod(a, (p**d - 1) // 2, f, p), [1], p)
        g = gcd(f, b, p)
        if 0 < deg(g) < n:
            h = divmod_(f, g, p)[0]
            return equal_degree(g, d, p, rng) + equal_degree(monic(h, p), d, p, rng)


def factor(f: Sequence[int], p: int, seed: int = 0) -> list[tuple[Poly, int]]:
    """Factor f over F_p into monic irreducibles with multiplicities.

    The product of the returned factors equals f divided by its leading
    coefficient. Output is sorted by (degree, coefficients) so it does not
    depend on the splitting randomness.
    """
    if not is_prime(p):
        raise NotPrime(p)
    f = trim(f, p)
    if not f:
        raise ZeroPolynomial("cannot factor the zero polynomial")
    rng = random.Random(seed)
    out: list[tuple[Poly, int]] = []
    for sqf, mult in squarefree_decomposition(f, p):
        for block, d in distinct_degree(sqf, p):
            for irr in equal_degree(block, d, p, rng):
                out.append((monic(irr, p), mult))
    out.sort(key=lambda fm: (len(fm[0]), fm[0][::-1], fm[1]))
    return out


def from_int_poly(coeffs: Sequence[int], p: int) -> Poly:
    return trim(coeffs, p)
