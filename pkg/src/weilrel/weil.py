"""q-symplectic polynomials: functional equation, exact RH test, certified roots.

A q-symplectic polynomial of degree 2g is P(T) = sum c_i T^i with c_0 = 1 and
c_{2g-i} = q^(g-i) c_i.  Its inverse roots alpha_j come in pairs alpha, q/alpha,
and once |alpha_j| = sqrt(q) is known the pairing is complex conjugation.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import isqrt

import mpmath
from mpmath import mpf

from .arith import qpoly
from .arith.interval import HPComplex
from .errors import InvalidInput, NotSymplectic, OddDegree, PrecisionExhausted

GUARD_BITS = 32
MAX_ROOT_BITS = 1 << 20


def is_q_symplectic(coeffs: Sequence[int], q: int) -> bool:
    c = [int(x) for x in coeffs]
    if len(c) % 2 == 0:
        raise OddDegree(f"degree {len(c) - 1} is odd")
    g = (len(c) - 1) // 2
    if c[0] != 1:
        return False
    return all(c[2 * g - i] == q ** (g - i) * c[i] for i in range(g + 1))


@dataclass(frozen=True)
class QSymplecticPoly:
    """Integer polynomial 1 + c_1 T + ... + q^g T^(2g) with the functional equation."""

    coeffs: tuple[int, ...]
    q: int

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))
        if not is_q_symplectic(self.coeffs, self.q):
            raise NotSymplectic(f"{self.coeffs} is not {self.q}-symplectic")

    @property
    def g(self) -> int:
        return (len(self.coeffs) - 1) // 2

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def reversed_coeffs(self) -> list[int]:
        """Coefficients (low to high) of T^(2g) P(1/T), whose roots are the alpha_j."""
        return list(reversed(self.coeffs))

    def __mul__(self, other: "QSymplecticPoly") -> "QSymplecticPoly":
        if other.q != self.q:
            raise InvalidInput("cannot multiply polynomials for different q")
        return QSymplecticPoly(tuple(qpoly.qmul(self.coeffs, other.coeffs)), self.q)

    def __str__(self) -> str:
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                mono = "" if i == 0 else ("T" if i == 1 else f"T^{i}")
                terms.append(f"{c}{mono}" if mono == "" or abs(c) != 1 else ("-" if c < 0 else "") + mono)
        return " + ".join(terms).replace("+ -", "- ")


def as_symplectic(P, q: int | None = None) -> QSymplecticPoly:
    if isinstance(P, QSymplecticPoly):
        return P
    if q is None:
        raise InvalidInput("q is required for a raw coefficient vector")
    return QSymplecticPoly(tuple(P), q)


def product(polys: Sequence[QSymplecticPoly]) -> QSymplecticPoly:
    out = polys[0]
    for P in polys[1:]:
        out = out * P
    return out


def power_sums(P, count: int, q: int | None = None) -> list[int]:
    """s_n = sum_j alpha_j^n for n = 1..count from the coefficients (Newton forward)."""
    P = as_symplectic(P, q)
    c = list(P.coeffs)
    s: list[int] = []
    for n in range(1, count + 1):
        val = -n * (c[n] if n < len(c) else 0)
        for i in range(1, n):
            if i < len(c):
                val -= c[i] * s[n - i - 1]
        s.append(val)
    return s


def real_weil_transform(P, q: int | None = None) -> list[int]:
    """Monic integer h of degree g with P(T) = T^g h(1/T + qT), low to high."""
    P = as_symplectic(P, q)
    g, q, c = P.g, P.q, P.coeffs
    # D_k(u) = T^-k + q^k T^k expressed as a polynomial in u = 1/T + qT
    dk = [[2], [0, 1]]
    for _ in range(2, g + 1):
        prev, prev2 = dk[-1], dk[-2]
        nxt = [0] + prev
        for i, x in enumerate(prev2):
            nxt[i] -= q * x
        dk.append(nxt)
    h = [0] * (g + 1)
    h[0] = c[g]
    for k in range(1, g + 1):
        for i, x in enumerate(dk[k]):
            h[i] += c[g - k] * x
    return h


def expand_from_weil_transform(h: Sequence[int], q: int) -> list[int]:
    """Inverse of real_weil_transform: coefficients of T^g h(1/T + qT)."""
    g = len(h) - 1
    out = [0] * (2 * g + 1)
    # T^g (1/T + qT)^i = sum_j binom(i, j) q^j T^(g - i + 2j)
    from math import comb

    for i, hi in enumerate(h):
        if hi:
            for j in range(i + 1):
                out[g - i + 2 * j] += hi * comb(i, j) * q**j
    return out


def _sign_at_surd(poly: Sequence[Fraction], D: int, eps: int) -> int:
    """Exact sign of poly(eps * sqrt(D)) via A + B sqrt(D)."""
    A = Fraction(0)
    B = Fraction(0)
    for i, a in enumerate(poly):
        if i % 2 == 0:
            A += a * D ** (i // 2)
        else:
            B += eps * a * D ** (i // 2)
    sa = (A > 0) - (A < 0)
    sb = (B > 0) - (B < 0)
    if sb == 0:
        return sa
    if sa == 0 or sa == sb:
        return sb if sa == 0 else sa
    lhs, rhs = A * A, B * B * D
    if lhs == rhs:
        return 0
    return sa if lhs > rhs else sb


def _sturm_chain(f: Sequence[Fraction]) -> list[list[Fraction]]:
    chain = [qpoly.qtrim(f), qpoly.qderiv(f)]
    while chain[-1] and qpoly.qdeg(chain[-1]) > 0:
        r = qpoly.qdivmod(chain[-2], chain[-1])[1]
        if not r:
            break
        chain.append([-x for x in r])
    return chain


def _variations(signs: Sequence[int]) -> int:
    nz = [s for s in signs if s]
    return sum(1 for a, b in zip(nz, nz[1:]) if a != b)


def real_roots_in_weil_interval(h: Sequence[int], q: int) -> tuple[int, int]:
    """(distinct roots of h in [-2 sqrt q, 2 sqrt q], degree of the squarefree part)."""
    f = qpoly.qtrim(h)
    sqf = qpoly.qdivmod(f, qpoly.qgcd(f, qpoly.qderiv(f)))[0]
    d = qpoly.qdeg(sqf)
    if d <= 0:
        return 0, 0
    D = 4 * q
    chain = _sturm_chain(sqf)
    lo = [_sign_at_surd(s, D, -1) for s in chain]
    hi = [_sign_at_surd(s, D, +1) for s in chain]
    count = _variations(lo) - _variations(hi)
    if lo[0] == 0:
        count += 1
    return count, d


def rh_check(P, q: int | None = None) -> bool:
    """Exact test that every inverse root has absolute value sqrt(q)."""
    P = as_symplectic(P, q)
    if P.g == 0:
        return True
    inside, d = real_roots_in_weil_interval(real_weil_transform(P), P.q)
    return inside == d


# ---------------------------------------------------------------------------
# certified roots


@dataclass(frozen=True)
class RootSystem:
    """Certified inverse roots of one or several q-symplectic polynomials.

    ``roots`` is ordered in consecutive pairs (representative, partner) where
    the representative has nonnegative imaginary part; ``pairing[i]`` is the
    index of q/roots[i].  ``angles[j]`` is (theta, radius) for the j-th
    representative, theta = arg/2pi in [0, 1).  ``blocks`` records how many
    roots came from each input polynomial.
    """

    polys: tuple[QSymplecticPoly, ...]
    roots: tuple[HPComplex, ...]
    pairing: tuple[int, ...]
    angles: tuple[tuple[mpf, mpf], ...]
    bits: int
    blocks: tuple[int, ...]

    @property
    def q(self) -> int:
        return self.polys[0].q

    @property
    def size(self) -> int:
        return len(self.roots)

    @property
    def representatives(self) -> list[int]:
        return list(range(0, len(self.roots), 2))

    @property
    def max_radius(self) -> mpf:
        return max(r.rad for r in self.roots)

    def theta(self, j: int) -> mpf:
        return self.angles[j][0]

    @staticmethod
    def concat(systems: Sequence["RootSystem"]) -> "RootSystem":
        if len({s.q for s in systems}) != 1:
            raise InvalidInput("root systems over different q")
        roots, pairing, angles, polys, blocks = [], [], [], [], []
        for s in systems:
            off = len(roots)
            roots.extend(s.roots)
            pairing.extend(i + off for i in s.pairing)
            angles.extend(s.angles)
            polys.extend(s.polys)
            blocks.extend(s.blocks)
        return RootSystem(tuple(polys), tuple(roots), tuple(pairing), tuple(angles),
                          min(s.bits for s in systems), tuple(blocks))


def _aberth(coeffs: list[int], q: int, prec: int, maxit: int = 500) -> list:
    """Simultaneous approximation of all roots of an integer polynomial."""
    n = len(coeffs) - 1
    hi_first = list(reversed(coeffs))
    dhi = [c * (n - i) for i, c in enumerate(hi_first[:-1])]
    with mpmath.workprec(prec):
        r = mpmath.sqrt(q)
        z = [r * mpmath.expj(2 * mpmath.pi * (k + mpf("0.3")) / n) for k in range(n)]
        tol = mpf(2) ** (-prec + 8) * (1 + r)
        for _ in range(maxit):
            big = mpf(0)
            for i in range(n):
                pv = mpmath.polyval(hi_first, z[i])
                dv = mpmath.polyval(dhi, z[i])
                if pv == 0:
                    continue
                ratio = pv / dv if dv != 0 else mpf(1)
                s = mpmath.fsum(1 / (z[i] - z[j]) for j in range(n) if j != i)
                w = ratio / (1 - ratio * s)
                z[i] -= w
                big = max(big, abs(w))
            if big < tol:
                break
    return z


def _newton_polish(coeffs: list[int], z: list, start: int, target: int) -> list:
    hi_first = list(reversed(coeffs))
    n = len(coeffs) - 1
    dhi = [c * (n - i) for i, c in enumerate(hi_first[:-1])]
    prec = start
    out = list(z)
    while True:
        prec = min(2 * prec, target)
        with mpmath.workprec(prec):
            for i, zi in enumerate(out):
                zi = mpmath.mpc(zi)
                for _ in range(2):
                    dv = mpmath.polyval(dhi, zi)
                    if dv == 0:
                        break
                    zi -= mpmath.polyval(hi_first, zi) / dv
                out[i] = zi
        if prec >= target:
            return out


def _weierstrass_discs(coeffs: list[int], z: list, prec: int) -> list[HPComplex] | None:
    """Inclusion discs D(z_i, n |W_i|); None unless pairwise disjoint."""
    n = len(coeffs) - 1
    with mpmath.workprec(prec):
        centers = [HPComplex(mpf(x.real), mpf(x.imag), mpf(0), prec) for x in z]
    discs = []
    for i, zi in enumerate(centers):
        val = HPComplex.exact(coeffs[-1], 0, prec)
        for c in reversed(coeffs[:-1]):
            val = val * zi + c
        den = HPComplex.exact(coeffs[-1], 0, prec)
        for j, zj in enumerate(centers):
            if j != i:
                den = den * (zi - zj)
        try:
            w = val / den
        except ZeroDivisionError:
            return None
        with mpmath.workprec(prec):
            rad = n * w.abs_upper() * (1 + mpf(2) ** (-prec + 8))
        discs.append(HPComplex(zi.re, zi.im, rad, prec))
    for i in range(n):
        for j in range(i + 1, n):
            if discs[i].overlaps(discs[j]):
                return None
    return discs


def _isolate(coeffs: list[int], q: int, bits: int) -> list[HPComplex]:
    """Certified disjoint discs for a squarefree integer polynomial."""
    target = bits + GUARD_BITS + max(8, q.bit_length())
    prec = 96
    approx = _aberth(coeffs, q, prec)
    while True:
        approx = _newton_polish(coeffs, approx, prec, target)
        discs = _weierstrass_discs(coeffs, approx, target)
        limit = mpf(2) ** (-bits)
        if discs is not None and all(d.rad < limit for d in discs):
            return discs
        if target > MAX_ROOT_BITS:
            raise PrecisionExhausted("could not separate the roots; repeated factor?")
        prec, target = target, 2 * target
        if discs is None:
            # approximations may have collapsed; restart from scratch
            approx = _aberth(coeffs, q, prec)


def _pair_up(discs: list[HPComplex], mult: int, q: int, prec: int):
    """Split discs of one squarefree factor into (rep, partner) lists with multiplicity."""
    out = []
    used = set()
    for i, d in enumerate(discs):
        if i in used:
            continue
        if abs(d.im) <= d.rad:
            # the conjugate lies in the same isolating disc, so the root is real,
            # and |alpha|^2 = q forces alpha = +-sqrt(q)
            if mult % 2:
                raise InvalidInput("real inverse root with odd multiplicity")
            with mpmath.workprec(prec):
                s = mpmath.sqrt(q)
                re = s if d.re > 0 else -s
            exact = HPComplex(re, mpf(0), mpf(2) ** (4 - prec) * (1 + abs(re)), prec)
            used.add(i)
            out.extend([(exact, exact)] * (mult // 2))
            continue
        conj = d.conj()
        j = next((k for k in range(len(discs)) if k not in used and k != i and discs[k].overlaps(conj)), None)
        if j is None:
            raise PrecisionExhausted("conjugate root not found among the discs")
        used.update((i, j))
        rep, partner = (d, discs[j]) if d.im > 0 else (discs[j], d)
        out.extend([(rep, partner)] * mult)
    return out


@lru_cache(maxsize=512)
def _certified(coeffs: tuple[int, ...], q: int, bits: int, deflate: bool) -> RootSystem:
    P = QSymplecticPoly(coeffs, q)
    if not rh_check(P):
        raise InvalidInput("some inverse root has absolute value different from sqrt(q)")
    rev = P.reversed_coeffs()
    if qpoly.is_squarefree(rev):
        parts = [(rev, 1)]
    elif deflate:
        parts = qpoly.squarefree_decomposition(rev)
    else:
        raise PrecisionExhausted("repeated inverse roots; pass deflate=True to handle them")
    pairs = []
    prec = bits + GUARD_BITS + max(8, q.bit_length())
    for factor, mult in parts:
        discs = _isolate(list(factor), q, bits)
        pairs.extend(_pair_up(discs, mult, q, discs[0].prec if discs else prec))
    angles = []
    for rep, _ in pairs:
        if rep.im == 0:
            angles.append((mpf(0) if rep.re > 0 else mpf(1) / 2, mpf(0)))
        else:
            angles.append(rep.angle())
    order = sorted(range(len(pairs)), key=lambda k: angles[k][0])
    roots, angs = [], []
    for k in order:
        roots.extend(pairs[k])
        angs.append(angles[k])
    pairing = []
    for i in range(len(roots)):
        pairing.append(i + 1 if i % 2 == 0 else i - 1)
    return RootSystem((P,), tuple(roots), tuple(pairing), tuple(angs), bits, (len(roots),))


def certified_roots(P, bits: int = 256, *, q: int | None = None, deflate: bool = False) -> RootSystem:
    """Certified inverse roots of P with disc radii below 2^-bits."""
    P = as_symplectic(P, q)
    if bits < 64:
        raise InvalidInput("at least 64 bits of precision are required")
    return _certified(P.coeffs, P.q, int(bits), bool(deflate))


def certified_roots_many(polys: Sequence, bits: int = 256, *, deflate: bool = False) -> RootSystem:
    return RootSystem.concat([certified_roots(P, bits, deflate=deflate) for P in polys])


def sqrt_q_enclosure(q: int, prec: int) -> HPComplex:
    r = isqrt(q)
    if r * r == q:
        return HPComplex.exact(r, 0, prec)
    with mpmath.workprec(prec):
        s = mpmath.sqrt(q)
    return HPComplex(s, mpf(0), mpf(2) ** (4 - prec) * (1 + s), prec)
