"""Exact integer linear algebra: Hermite normal form, integer kernels, LLL."""

from __future__ import annotations

from collections.abc import Sequence
from fractions import Fraction

from ..errors import DependentRows

Matrix = list[list[int]]

LLL_DELTA = Fraction(99, 100)


def rank(rows: Sequence[Sequence[int]]) -> int:
    """Rank over Q by fraction-free Gaussian elimination."""
    m = [list(map(Fraction, r)) for r in rows if any(r)]
    if not m:
        return 0
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c] / m[r][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        r += 1
        if r == len(m):
            break
    return r


def _echelon(rows: Matrix, ncols_pivot: int) -> Matrix:
    """Unimodular row reduction to echelon form on the first ncols_pivot columns."""
    a = [list(r) for r in rows]
    r = 0
    for c in range(ncols_pivot):
        # Euclid on column c among rows r..end
        while True:
            nz = [i for i in range(r, len(a)) if a[i][c] != 0]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(a[i][c]))
            a[r], a[piv] = a[piv], a[r]
            done = True
            for i in range(r + 1, len(a)):
                if a[i][c]:
                    f = a[i][c] // a[r][c]
                    a[i] = [x - f * y for x, y in zip(a[i], a[r])]
                    if a[i][c]:
                        done = False
            if done:
                break
        if r < len(a) and a[r][c] != 0:
            r += 1
    return a


def hnf(rows: Sequence[Sequence[int]]) -> Matrix:
    """Row-style Hermite normal form of the lattice spanned by ``rows``.

    Zero rows are dropped; pivots are positive and entries above each pivot
    are reduced into [0, pivot).  Two bases span the same lattice iff their
    HNFs are equal.
    """
    if not rows:
        return []
    ncols = len(rows[0])
    a = _echelon([list(r) for r in rows], ncols)
    a = [r for r in a if any(r)]
    pivots = []
    for i, r in enumerate(a):
        c = next(j for j, x in enumerate(r) if x)
        if r[c] < 0:
            a[i] = r = [-x for x in r]
        pivots.append(c)
    for i, c in enumerate(pivots):
        for k in range(i):
            f = a[k][c] // a[i][c]
            if f:
                a[k] = [x - f * y for x, y in zip(a[k], a[i])]
    return a


def _normalize_sign(v: list[int]) -> list[int]:
    for x in v:
        if x:
            return v if x > 0 else [-y for y in v]
    return v


def integer_kernel(m: Sequence[Sequence[int]], reduce: bool = True) -> Matrix:
    """Z-basis of {n in Z^c : M n = 0}; empty list iff the kernel is zero."""
    if not m:
        return []
    r, c = len(m), len(m[0])
    # rows [ column j of M | e_j ]; a unimodular transform zeroing the left
    # block exposes the kernel in the right block
    aug = [[m[i][j] for i in range(r)] + [int(k == j) for k in range(c)] for j in range(c)]
    ech = _echelon(aug, r)
    basis = [row[r:] for row in ech if not any(row[:r])]
    if basis and reduce:
        basis = lll_reduce(basis)
    return [_normalize_sign(v) for v in basis]


def lll_reduce(basis: Sequence[Sequence[int]], delta: Fraction = LLL_DELTA) -> Matrix:
    """Integral LLL reduction (exact arithmetic throughout).

    Rows of ``basis`` must be linearly independent; the output spans the same
    lattice and satisfies the Lovasz condition with parameter ``delta``.
    """
    b = [list(map(int, r)) for r in basis]
    n = len(b)
    if n == 0:
        return []
    dot = lambda u, v: sum(x * y for x, y in zip(u, v))  # noqa: E731
    num, den = delta.numerator, delta.denominator
    d = [0] * (n + 1)  # d[0] = 1, d[i] = Gram determinant of first i rows
    lam = [[0] * n for _ in range(n)]
    d[0] = 1
    d[1] = dot(b[0], b[0])
    if d[1] == 0:
        raise DependentRows("zero vector in basis")

    def red(k, l):
        if 2 * abs(lam[k][l]) > d[l + 1]:
            qq = (2 * lam[k][l] + d[l + 1]) // (2 * d[l + 1])
            b[k] = [x - qq * y for x, y in zip(b[k], b[l])]
            lam[k][l] -= qq * d[l + 1]
            for i in range(l):
                lam[k][i] -= qq * lam[l][i]

    def swap(k, kmax):
        b[k], b[k - 1] = b[k - 1], b[k]
        for j in range(k - 1):
            lam[k][j], lam[k - 1][j] = lam[k - 1][j], lam[k][j]
        lm = lam[k][k - 1]
        bb = (d[k - 1] * d[k + 1] + lm * lm) // d[k]
        for i in range(k + 1, kmax + 1):
            t = lam[i][k]
            lam[i][k] = (d[k + 1] * lam[i][k - 1] - lm * t) // d[k]
            lam[i][k - 1] = (bb * t + lm * lam[i][k]) // d[k + 1]
        d[k] = bb

    k, kmax = 1, 0
    while k < n:
        if k > kmax:
            kmax = k
            for j in range(k + 1):
                u = dot(b[k], b[j])
                for i in range(j):
                    u = (d[i + 1] * u - lam[k][i] * lam[j][i]) // d[i]
                if j < k:
                    lam[k][j] = u
                else:
                    if u == 0:
                        raise DependentRows("basis rows are linearly dependent")
                    d[k + 1] = u
        red(k, k - 1)
        if den * d[k + 1] * d[k - 1] < num * d[k] * d[k] - den * lam[k][k - 1] ** 2:
            swap(k, kmax)
            k = max(1, k - 1)
        else:
            for l in range(k - 2, -1, -1):
                red(k, l)
            k += 1
    return b
