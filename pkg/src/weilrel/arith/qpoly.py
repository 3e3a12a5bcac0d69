"""Polynomials over Q and Z as coefficient lists (constant term first)."""

from __future__ import annotations

from collections.abc import Sequence
from fractions import Fraction
from functools import reduce
from math import gcd, lcm

QPoly = list[Fraction]


def qtrim(a: Sequence) -> QPoly:
    out = [Fraction(c) for c in a]
    while out and out[-1] == 0:
        out.pop()
    return out


def qdeg(a: Sequence) -> int:
    return len(a) - 1


def qmul(a: Sequence, b: Sequence) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def qdivmod(a: Sequence, b: Sequence) -> tuple[QPoly, QPoly]:
    a, b = qtrim(a), qtrim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if len(a) < len(b):
        return [], a
    q = [Fraction(0)] * (len(a) - len(b) + 1)
    r = list(a)
    for i in range(len(a) - len(b), -1, -1):
        c = r[i + len(b) - 1] / b[-1]
        q[i] = c
        if c:
            for j, y in enumerate(b):
                r[i + j] -= c * y
    return qtrim(q), qtrim(r[: len(b) - 1])


def qmonic(a: Sequence) -> QPoly:
    a = qtrim(a)
    return [c / a[-1] for c in a] if a else []


def qgcd(a: Sequence, b: Sequence) -> QPoly:
    a, b = qtrim(a), qtrim(b)
    while b:
        a, b = b, qdivmod(a, b)[1]
    return qmonic(a)


def qderiv(a: Sequence) -> QPoly:
    return qtrim([i * c for i, c in enumerate(a)][1:])


def qeval(a: Sequence, x):
    acc = 0
    for c in reversed(list(a)):
        acc = acc * x + c
    return acc


def primitive(a: Sequence) -> list[int]:
    """Integer primitive polynomial with positive leading coefficient proportional to a."""
    a = qtrim(a)
    if not a:
        return []
    den = reduce(lcm, (c.denominator for c in a), 1)
    ints = [int(c * den) for c in a]
    cont = reduce(gcd, ints)
    ints = [c // cont for c in ints]
    if ints[-1] < 0:
        ints = [-c for c in ints]
    return ints


def squarefree_decomposition(a: Sequence) -> list[tuple[list[int], int]]:
    """Yun's algorithm over Q; returns primitive integer factors with multiplicities."""
    a = qmonic(a)
    if qdeg(a) < 1:
        return []
    out = []
    b = qgcd(a, qderiv(a))
    c = qdivmod(a, b)[0]
    d = [x - y for x, y in _pad(qdivmod(qderiv(a), b)[0], qderiv(c))]
    i = 1
    while qdeg(c) > 0:
        g = qgcd(c, d)
        if qdeg(g) > 0:
            out.append((primitive(g), i))
        c = qdivmod(c, g)[0]
        y = qdivmod(d, g)[0]
        d = [x - z for x, z in _pad(y, qderiv(c))]
        i += 1
    return out


def _pad(a, b):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return list(zip(a, b))


def is_squarefree(a: Sequence) -> bool:
    return qdeg(qgcd(a, qderiv(a))) == 0
