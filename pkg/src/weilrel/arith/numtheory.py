"""Small-integer number theory helpers."""

from __future__ import annotations

from math import isqrt


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for sp in small:
        if n % sp == 0:
            return n == sp
    # deterministic Miller-Rabin for n < 3.3e24
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def factorize(n: int) -> dict[int, int]:
    """Trial-division factorization; fine for the sizes used here."""
    out: dict[int, int] = {}
    n = abs(n)
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def prime_power(q: int) -> tuple[int, int] | None:
    """Return (p, e) with q = p**e, or None."""
    f = factorize(q)
    if len(f) != 1:
        return None
    ((p, e),) = f.items()
    return p, e


def squarefree_part(n: int) -> int:
    """Largest squarefree d with n = d * m^2 (n > 0)."""
    d = 1
    for pr, e in factorize(n).items():
        if e % 2:
            d *= pr
    return d


def is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


def odd_primes(limit: int, start: int = 3):
    for n in range(max(3, start), limit + 1):
        if is_prime(n):
            yield n
