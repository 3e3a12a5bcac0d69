"""Frobenius cycle types modulo auxiliary primes and maximality certificates.

If P is q-symplectic and separable, its splitting-field Galois group G sits
inside W_{2g}.  For a prime l not dividing q with P mod l squarefree, the
factorization pattern of P mod l (with factors paired by the involution
alpha -> q/alpha) is the signed cycle type of a Frobenius element of G.  If
the classes witnessed this way are not all met by any maximal proper
subgroup of W_{2g}, then G cannot be proper, so G = W_{2g}.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field

from ..arith import polyfp, qpoly
from ..arith.numtheory import is_prime, odd_primes
from ..errors import InvalidInput, InvariantViolation, NotSeparable, SharedRoots, TooLarge
from ..weil import QSymplecticPoly, as_symplectic
from .groups import MAX_LATTICE_G, SignedCycleType, format_cycle_type, product_group, w2g_enumerate
from .lattice import subgroup_lattice

DEFAULT_ELL_BUDGET = 200
PROVEN = "Proven"
UNDETERMINED = "Undetermined"


@dataclass(frozen=True)
class Rejected:
    ell: int
    reason: str  # DividesQ | NotSquarefree | DegreeDrop


@dataclass
class GaloisCertificate:
    verdict: str
    witnesses: list[tuple[int, tuple[SignedCycleType, ...]]] = field(default_factory=list)
    rejected: list[Rejected] = field(default_factory=list)
    reason: str = ""
    group: str = ""

    @property
    def proven(self) -> bool:
        return self.verdict == PROVEN

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "group": self.group,
            "reason": self.reason,
            "witnesses": [
                {"ell": ell, "cycle_types": [format_cycle_type(t) for t in types]} for ell, types in self.witnesses
            ],
            "rejected": [{"ell": r.ell, "reason": r.reason} for r in self.rejected],
        }


def _dual(h: list[int], q: int, ell: int) -> list[int]:
    d = len(h) - 1
    out = [h[d - j] * pow(q, d - j, ell) for j in range(d + 1)]
    return polyfp.monic(polyfp.trim(out, ell), ell)


def frobenius_cycle_type(P, ell: int, q: int | None = None) -> SignedCycleType | Rejected:
    """Signed cycle type of Frobenius at ell, read off from P mod ell."""
    P = as_symplectic(P, q)
    if ell == 2 or not is_prime(ell):
        raise InvalidInput(f"{ell} is not an odd prime")
    if P.q % ell == 0:
        return Rejected(ell, "DividesQ")
    rev = polyfp.trim(P.reversed_coeffs(), ell)
    if polyfp.deg(polyfp.trim(P.coeffs, ell)) != P.degree or polyfp.deg(rev) != P.degree:
        return Rejected(ell, "DegreeDrop")
    factors = polyfp.factor(rev, ell)
    if any(m > 1 for _, m in factors):
        return Rejected(ell, "NotSquarefree")
    remaining = [tuple(f) for f, _ in factors]
    parts = []
    while remaining:
        h = remaining.pop(0)
        hd = tuple(_dual(list(h), P.q, ell))
        d = len(h) - 1
        if hd == h:
            if d % 2:
                raise InvariantViolation("self-dual factor of odd degree in a squarefree reduction")
            parts.append((d // 2, -1))
        else:
            try:
                remaining.remove(hd)
            except ValueError as exc:
                raise InvariantViolation("dual factor missing from the factorization") from exc
            parts.append((d, 1))
    total = sum(d for d, _ in parts)
    if total != P.g:
        raise InvariantViolation("cycle type does not sum to g")
    return tuple(sorted(parts, key=lambda dp: (dp[0], -dp[1])))


def _is_separable(P: QSymplecticPoly) -> bool:
    return qpoly.is_squarefree(P.reversed_coeffs())


def _meets_all(class_set: frozenset[int], witnessed: set[int]) -> bool:
    return witnessed <= class_set


def _verdict(group, lattice, witnessed: set[int]) -> bool:
    """True iff every maximal proper subgroup misses some witnessed class."""
    sets = lattice.class_sets()
    return all(not _meets_all(sets[i], witnessed) for i in lattice.maximal)


def maximality_certificate(P, ell_budget: int = DEFAULT_ELL_BUDGET, *, q: int | None = None,
                           stop_when_proven: bool = True) -> GaloisCertificate:
    """Proven when the witnessed Frobenius classes force Gal(P) = W_{2g}."""
    P = as_symplectic(P, q)
    if P.g > MAX_LATTICE_G:
        raise TooLarge(f"subgroup lattices are only available for g <= {MAX_LATTICE_G}")
    if not _is_separable(P):
        raise NotSeparable("P has a repeated factor over Q")
    W = w2g_enumerate(P.g)
    lat = W.lattice()
    cert = GaloisCertificate(UNDETERMINED, group=f"W{2 * P.g}")
    witnessed: set[int] = set()
    for ell in odd_primes(ell_budget):
        res = frobenius_cycle_type(P, ell)
        if isinstance(res, Rejected):
            cert.rejected.append(res)
            continue
        cert.witnesses.append((ell, (res,)))
        witnessed.add(W.group.class_of_label((res,)))
        if stop_when_proven and _verdict(W.group, lat, witnessed):
            break
    if _verdict(W.group, lat, witnessed):
        cert.verdict = PROVEN
    else:
        cert.reason = "witnessed classes are all met by some maximal subgroup"
    return cert


def _shares_roots(a: QSymplecticPoly, b: QSymplecticPoly) -> bool:
    return qpoly.qdeg(qpoly.qgcd(a.reversed_coeffs(), b.reversed_coeffs())) > 0


def tuple_certificate(polys: Sequence, ell_budget: int = DEFAULT_ELL_BUDGET, *, q: int | None = None,
                      extended: bool = False, stop_when_proven: bool = True) -> GaloisCertificate:
    """Certificate that the compositum of the splitting fields has group W_{2g}^k.

    The default build handles products of W_2 (g = 1, k <= 4); with
    ``extended`` any k g <= 4 is attempted.  Larger cases come back
    Undetermined with reason TooLarge.
    """
    polys = [as_symplectic(P, q) for P in polys]
    if not polys:
        raise InvalidInput("no polynomials given")
    if len({P.q for P in polys}) != 1 or len({P.g for P in polys}) != 1:
        raise InvalidInput("all polynomials must share q and g")
    for P in polys:
        if not _is_separable(P):
            raise NotSeparable("a factor has a repeated root")
    for i in range(len(polys)):
        for j in range(i + 1, len(polys)):
            if _shares_roots(polys[i], polys[j]):
                raise SharedRoots(f"factors {i} and {j} share inverse roots")
    k, g = len(polys), polys[0].g
    if k == 1:
        return maximality_certificate(polys[0], ell_budget, stop_when_proven=stop_when_proven)
    name = f"W{2 * g}^{k}"
    allowed = (g == 1 and k <= 4) or (extended and k * g <= 4)
    if not allowed:
        return GaloisCertificate(UNDETERMINED, group=name, reason="TooLarge")
    G = product_group(g, k)
    lat = subgroup_lattice(G, key=f"w{2 * g}x{k}")
    cert = GaloisCertificate(UNDETERMINED, group=name)
    witnessed: set[int] = set()
    for ell in odd_primes(ell_budget):
        types = []
        bad = None
        for P in polys:
            res = frobenius_cycle_type(P, ell)
            if isinstance(res, Rejected):
                bad = res
                break
            types.append(res)
        if bad is not None:
            cert.rejected.append(bad)
            continue
        cert.witnesses.append((ell, tuple(types)))
        witnessed.add(G.class_of_label(tuple(types)))
        if stop_when_proven and _verdict(G, lat, witnessed):
            break
    if _verdict(G, lat, witnessed):
        cert.verdict = PROVEN
    else:
        cert.reason = "witnessed classes are all met by some maximal subgroup"
    return cert


def trace_is_zero(P, q: int | None = None) -> bool:
    """True iff the inverse roots of P (or of some factor in a list) sum to zero."""
    if isinstance(P, (list, tuple)) and P and isinstance(P[0], (QSymplecticPoly, list, tuple)):
        return any(trace_is_zero(F, q) for F in P)
    coeffs = P.coeffs if isinstance(P, QSymplecticPoly) else tuple(P)
    return len(coeffs) > 1 and coeffs[1] == 0


def witnessed_classes(cert: GaloisCertificate, g: int, k: int = 1) -> set[int]:
    G = w2g_enumerate(g).group if k == 1 else product_group(g, k)
    return {G.class_of_label(tuple(types)) for _, types in cert.witnesses}
