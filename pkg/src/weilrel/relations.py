"""Additive and multiplicative relations among inverse roots.

Detection is heuristic (lattice reduction on high-precision approximations)
and only proposes candidates.  Every candidate is settled by a norm-bound
argument: if delta is an algebraic integer of degree at most D whose
conjugates are all bounded by B, and delta != 0, then |N(delta)| >= 1 forces
|delta| >= B^(1-D).  So a certified enclosure of delta below that bound
proves delta = 0, and an enclosure excluding 0 proves delta != 0.

Coordinates: the ambient set M is the list of roots of a RootSystem, in
consecutive (representative, partner) pairs.  Multiplicative relations are
exponent vectors n with prod (alpha/sqrt q)^n = 1; the angle coordinates
are (theta_1, ..., theta_m, 1) for the m representatives.
"""

from __future__ import annotations

import itertools
import json
import math
from collections.abc import Sequence
from dataclasses import dataclass, field
from math import factorial, isqrt

import mpmath
import numpy as np
from mpmath import mpf

from .arith.interval import HPComplex
from .arith.intlinalg import hnf, integer_kernel, lll_reduce, rank
from .errors import InvalidInput, PrecisionExhausted, TooLarge
from .weil import QSymplecticPoly, RootSystem, as_symplectic, certified_roots_many

PROVEN_TRUE = "ProvenTrue"
PROVEN_FALSE = "ProvenFalse"
DEFAULT_DETECT_BITS = 256
DEFAULT_HEIGHT = 3
#: verification gives up (PrecisionExhausted) beyond this many bits
PRECISION_CEILING = 1 << 21
#: largest number of coefficient vectors small_relations will enumerate
BRUTE_FORCE_CAP = 2_000_000


# ---------------------------------------------------------------------------
# exact verification


@dataclass
class VerificationResult:
    kind: str
    exponents: tuple[int, ...]
    verdict: str
    precision_used: int
    bound_B: int
    degree_D: int
    inputs: tuple[tuple[int, ...], ...] = ()
    q: int = 0

    @property
    def holds(self) -> bool:
        return self.verdict == PROVEN_TRUE

    def to_dict(self) -> dict:
        return {
            "inputs": {"q": self.q, "polynomials": [list(c) for c in self.inputs]},
            "kind": self.kind,
            "exponents": list(self.exponents),
            "verdict": self.verdict,
            "precision_used": self.precision_used,
            "bound_B": str(self.bound_B),
            "degree_D": self.degree_D,
        }


def _as_poly_list(polys, q: int | None = None) -> list[QSymplecticPoly]:
    if isinstance(polys, QSymplecticPoly):
        return [polys]
    if isinstance(polys, RootSystem):
        return list(polys.polys)
    out = []
    for P in polys:
        out.append(as_symplectic(P, q))
    if not out:
        raise InvalidInput("no polynomials given")
    if len({P.q for P in out}) != 1:
        raise InvalidInput("polynomials over different q")
    return out


def degree_bound(polys: Sequence[QSymplecticPoly]) -> int:
    """Upper bound prod 2^g g! for the degree of the compositum of splitting fields."""
    D = 1
    for coeffs in sorted({P.coeffs for P in polys}):
        g = (len(coeffs) - 1) // 2
        D *= 2**g * factorial(g)
    return D


def _roots(polys: Sequence[QSymplecticPoly], bits: int) -> RootSystem:
    return certified_roots_many(polys, bits, deflate=True)


def _lower_bound(B: int, D: int) -> mpf:
    """A number certainly <= B^(1-D)."""
    with mpmath.workprec(80):
        return mpmath.power(mpf(B), 1 - D) * (1 - mpf(2) ** -60)


def _check_cost(log2_bound: int, D: int) -> None:
    if (D - 1) * log2_bound > PRECISION_CEILING:
        raise PrecisionExhausted(f"verification would need about {(D - 1) * log2_bound} bits")


def _settle(kind, polys, exps, B, D, evaluate, magnitude_bits: int, start_bits: int | None) -> VerificationResult:
    q = polys[0].q
    inputs = tuple(P.coeffs for P in polys)
    bound = _lower_bound(B, D)
    need = math.ceil((D - 1) * math.log2(max(B, 2))) + magnitude_bits + 24
    bits = start_bits or 128
    tried_full = False
    while True:
        delta = evaluate(bits)
        if not delta.contains_zero():
            return VerificationResult(kind, tuple(exps), PROVEN_FALSE, bits, B, D, inputs, q)
        if delta.abs_upper() < bound:
            return VerificationResult(kind, tuple(exps), PROVEN_TRUE, bits, B, D, inputs, q)
        if bits >= PRECISION_CEILING:
            raise PrecisionExhausted(f"verification needs more than {PRECISION_CEILING} bits")
        bits = min(PRECISION_CEILING, need if not tried_full and need > bits else 2 * bits)
        tried_full = tried_full or bits >= need


def verify_additive_exact(polys, exponents: Sequence[int], *, q: int | None = None,
                          start_bits: int | None = None) -> VerificationResult:
    """Decide sum n_alpha alpha = 0 exactly for an integer vector n on M."""
    polys = _as_poly_list(polys, q)
    n = [int(x) for x in exponents]
    size = sum(P.degree for P in polys)
    if len(n) != size:
        raise InvalidInput(f"expected {size} coefficients, got {len(n)}")
    q = polys[0].q
    _check_cost(sum(abs(x) for x in n).bit_length() + q.bit_length(), degree_bound(polys))
    B = max(1, sum(abs(x) for x in n) * (isqrt(q) + 1))
    D = degree_bound(polys)

    def evaluate(bits):
        rs = _roots(polys, bits)
        acc = HPComplex.exact(0, 0, rs.roots[0].prec)
        for c, a in zip(n, rs.roots):
            if c:
                acc = acc + a * c
        return acc

    if not any(n):
        return VerificationResult("additive", tuple(n), PROVEN_TRUE, 0, B, D, tuple(P.coeffs for P in polys), q)
    return _settle("additive", polys, n, B, D, evaluate, B.bit_length(), start_bits)


def positive_form(exponents: Sequence[int], pairing: Sequence[int]) -> tuple[list[int], int]:
    """Rewrite prod (alpha/sqrt q)^n = 1 as prod alpha^k = q^t with k >= 0, t integer.

    alpha^-1 = partner/q moves negative exponents onto partners; the total
    sum(k) = sum|n| = K and the relation becomes prod alpha^k = q^(K/2).
    If K is odd every exponent is doubled.
    """
    k = [0] * len(exponents)
    for i, x in enumerate(exponents):
        if x >= 0:
            k[i] += x
        else:
            k[pairing[i]] += -x
    K = sum(k)
    if K % 2:
        k = [2 * x for x in k]
        K *= 2
    return k, K // 2


def verify_multiplicative_exact(polys, exponents: Sequence[int], *, q: int | None = None,
                                start_bits: int | None = None) -> VerificationResult:
    """Decide prod (alpha/sqrt q)^n = 1 exactly for an exponent vector n on M."""
    polys = _as_poly_list(polys, q)
    n = [int(x) for x in exponents]
    size = sum(P.degree for P in polys)
    if len(n) != size:
        raise InvalidInput(f"expected {size} exponents, got {len(n)}")
    q = polys[0].q
    pairing = _roots(polys, 64).pairing
    k, t = positive_form(n, pairing)
    _check_cost(t * q.bit_length(), degree_bound(polys))
    qt = q**t
    B = 2 * qt + 1
    D = degree_bound(polys)

    def evaluate(bits):
        rs = _roots(polys, bits)
        prec = rs.roots[0].prec
        acc = HPComplex.exact(1, 0, prec)
        for e, a in zip(k, rs.roots):
            if e:
                acc = acc * (a**e)
        return acc - HPComplex.exact(qt, 0, prec)

    if not any(n):
        return VerificationResult("multiplicative", tuple(n), PROVEN_TRUE, 0, B, D,
                                  tuple(P.coeffs for P in polys), q)
    return _settle("multiplicative", polys, n, B, D, evaluate, qt.bit_length(), start_bits)


# ---------------------------------------------------------------------------
# lattices


@dataclass
class RelationLattice:
    """Integer relations on M, with the part forced by the pairing split off.

    For multiplicative lattices ``basis`` holds the lifts of angle relations
    (exponents on representatives only) and the trivial relations
    n_alpha = n_partner are implicit; ``full_basis`` adds them.  For
    additive lattices the forced part is spanned by trace-balancing
    combinations of the block sums psi_j.
    """

    kind: str
    size: int
    pairing: tuple[int, ...]
    blocks: tuple[int, ...]
    traces: tuple[int, ...]
    basis: list[list[int]] = field(default_factory=list)
    angle_basis: list[list[int]] = field(default_factory=list)
    trivial_basis: list[list[int]] = field(default_factory=list)
    nontrivial_rank: int = 0
    verified: bool = True
    candidates_rejected: int = 0

    @property
    def rank(self) -> int:
        return rank(self.basis) if self.basis else 0

    def rep_coordinates(self, v: Sequence[int]) -> list[int]:
        """Exponent differences n_rep - n_partner, one per pair."""
        return [v[i] - v[self.pairing[i]] for i in range(0, self.size, 2)]

    def trivial_generators(self) -> list[list[int]]:
        out = []
        for i in range(0, self.size, 2):
            v = [0] * self.size
            v[i] += 1
            v[self.pairing[i]] += 1
            out.append(v)
        return out

    def full_basis(self) -> list[list[int]]:
        if self.kind == "multiplicative":
            return hnf(self.trivial_generators() + self.basis)
        return self.basis

    def contains(self, v: Sequence[int]) -> bool:
        """Exact Z-membership.

        Additive lattices are saturated, but multiplicative ones need not be
        when some normalized root is a root of unity, so Q-span would be wrong.
        """
        if not any(v):
            return True
        base = self.full_basis()
        if not base:
            return False
        return hnf(base + [list(v)]) == hnf(base)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "size": self.size,
            "basis": self.basis,
            "angle_basis": self.angle_basis,
            "trivial_basis": self.trivial_basis,
            "nontrivial_rank": self.nontrivial_rank,
            "verified": self.verified,
        }


def saturate(vectors: Sequence[Sequence[int]], dim: int) -> list[list[int]]:
    """Basis of (Q-span of vectors) intersected with Z^dim, LLL-reduced."""
    vecs = [list(v) for v in vectors if any(v)]
    if not vecs:
        return []
    complement = integer_kernel(vecs)
    if not complement:
        return [[int(i == j) for j in range(dim)] for i in range(dim)]
    return integer_kernel(complement)


def _block_traces(polys: Sequence[QSymplecticPoly]) -> tuple[int, ...]:
    return tuple(-P.coeffs[1] for P in polys)


def _block_sums(blocks: Sequence[int]) -> list[list[int]]:
    size = sum(blocks)
    out, off = [], 0
    for b in blocks:
        v = [0] * size
        for i in range(off, off + b):
            v[i] = 1
        out.append(v)
        off += b
    return out


def classify_trivial(lat: RelationLattice) -> RelationLattice:
    """Fill trivial_basis and nontrivial_rank."""
    if not lat.basis:
        lat.trivial_basis = []
        lat.nontrivial_rank = 0
        return lat
    if lat.kind == "multiplicative":
        lat.trivial_basis = [v for v in lat.basis if all(x == 0 for x in lat.rep_coordinates(v))]
        reps = [lat.rep_coordinates(v) for v in lat.basis]
        lat.nontrivial_rank = rank(reps)
        return lat
    psi = _block_sums(lat.blocks)
    coeffs = integer_kernel([list(lat.traces)]) if any(lat.traces) else \
        [[int(i == j) for j in range(len(lat.blocks))] for i in range(len(lat.blocks))]
    forced = []
    for c in coeffs:
        v = [sum(cj * pj[i] for cj, pj in zip(c, psi)) for i in range(lat.size)]
        forced.append(v)
    lat.trivial_basis = forced
    lat.nontrivial_rank = rank(lat.basis + psi) - rank(psi) if psi else lat.rank
    return lat


def _scaled(x: mpf, K: int) -> int:
    return int(mpmath.nint(x * K))


def _reduce_candidates(values: Sequence, imag: bool, bits: int) -> list[list[int]]:
    """LLL on [I | K Re v | K Im v] and return the coefficient parts of short rows."""
    n = len(values)
    K = 2 ** max(bits - 32, 16)
    rows = []
    with mpmath.workprec(bits + 32):
        for i, v in enumerate(values):
            row = [int(i == j) for j in range(n)]
            row.append(_scaled(mpmath.re(v), K))
            if imag:
                row.append(_scaled(mpmath.im(v), K))
            rows.append(row)
    red = lll_reduce(rows)
    return [r[:n] for r in red]


def _height_cap(bits: int, n: int, ncols: int) -> int:
    """Coefficient ceiling for candidates: half the log-size of generic short vectors.

    A lattice of n rows with ncols scaled real columns has reduced vectors
    of size about K^(ncols/n) that are not relations; anything that large
    is noise.
    """
    return 2 ** max(8, (bits - 32) * ncols // (2 * n))


def _residual_ok(values, v, bits, cap: int) -> bool:
    if max(abs(c) for c in v) > cap:
        return False
    with mpmath.workprec(bits + 32):
        s = mpmath.fsum(c * x for c, x in zip(v, values) if c)
        return abs(s) < mpf(2) ** (-bits // 2)


def _try_verify(fn, polys, v):
    # a candidate too tall to settle within the precision ceiling is dropped
    try:
        return fn(polys, v)
    except PrecisionExhausted:
        return None


def detect_additive(source, *, bits: int = DEFAULT_DETECT_BITS, q: int | None = None,
                    verify: bool = True) -> RelationLattice:
    """Candidate additive relations by lattice reduction, kept only if proven."""
    rs = source if isinstance(source, RootSystem) else _roots(_as_poly_list(source, q), bits)
    polys = list(rs.polys)
    values = [r.center for r in rs.roots]
    lat = RelationLattice("additive", rs.size, rs.pairing, rs.blocks, _block_traces(polys))
    found, rejected = [], 0
    cap = _height_cap(bits, len(values), 2)
    for v in _reduce_candidates(values, True, bits):
        if not any(v) or not _residual_ok(values, v, bits, cap):
            continue
        if verify:
            res = _try_verify(verify_additive_exact, polys, v)
            if res is None or not res.holds:
                rejected += 1
                continue
        found.append(v)
    lat.basis = saturate(found, rs.size) if found else []
    lat.verified = verify
    lat.candidates_rejected = rejected
    return classify_trivial(lat)


def angle_vector_to_exponents(v: Sequence[int], size: int) -> list[int]:
    """Put the angle-relation coefficients on representatives, zero on partners."""
    out = [0] * size
    for j, c in enumerate(v[: size // 2]):
        out[2 * j] = int(c)
    return out


def detect_multiplicative(source, *, bits: int = DEFAULT_DETECT_BITS, q: int | None = None,
                          verify: bool = True) -> RelationLattice:
    """Candidate relations among (theta_1, ..., theta_m, 1), lifted to M and proven."""
    rs = source if isinstance(source, RootSystem) else _roots(_as_poly_list(source, q), bits)
    polys = list(rs.polys)
    thetas = [a[0] for a in rs.angles] + [mpf(1)]
    m = len(rs.angles)
    lat = RelationLattice("multiplicative", rs.size, rs.pairing, rs.blocks, _block_traces(polys))
    found, rejected = [], 0
    cap = _height_cap(bits, len(thetas), 1)
    for v in _reduce_candidates(thetas, False, bits):
        if not any(v[:m]) or not _residual_ok(thetas, v, bits, cap):
            continue
        if verify:
            res = _try_verify(verify_multiplicative_exact, polys, angle_vector_to_exponents(v, rs.size))
            if res is None or not res.holds:
                rejected += 1
                continue
        found.append(v)
    angle = saturate(found, m + 1) if found else []
    if angle and verify:
        # saturation in angle coordinates is sound, but re-check to be safe
        for v in angle:
            if not verify_multiplicative_exact(polys, angle_vector_to_exponents(v, rs.size)).holds:
                angle = lll_reduce(hnf(found))
                break
    lat.angle_basis = angle
    lat.basis = [angle_vector_to_exponents(v, rs.size) for v in angle]
    lat.verified = verify
    lat.candidates_rejected = rejected
    return classify_trivial(lat)


# ---------------------------------------------------------------------------
# brute force oracle


def small_relations(source, kind: str, height: int = DEFAULT_HEIGHT, *, q: int | None = None,
                    bits: int = 128) -> list[list[int]]:
    """All relations with entries in [-height, height], by enumeration plus exact proof.

    Additive vectors range over M; multiplicative ones over the angle
    coordinates of the representatives (lifted to M before proving).  Only
    vectors whose first nonzero entry is positive are returned.
    """
    rs = source if isinstance(source, RootSystem) else _roots(_as_poly_list(source, q), bits)
    polys = list(rs.polys)
    rng = np.arange(-height, height + 1)
    out = []
    if kind == "additive":
        vals = np.array([complex(r.center) for r in rs.roots])
        dim = rs.size
    elif kind == "multiplicative":
        vals = np.array([float(a[0]) for a in rs.angles])
        dim = len(rs.angles)
    else:
        raise InvalidInput(f"unknown relation kind {kind!r}")
    if (2 * height + 1) ** dim > BRUTE_FORCE_CAP:
        raise TooLarge(f"{(2 * height + 1) ** dim} vectors exceed the enumeration cap {BRUTE_FORCE_CAP}")
    grid = np.array(list(itertools.product(rng, repeat=dim)), dtype=np.int64)
    grid = grid[np.any(grid != 0, axis=1)]
    first = grid[np.arange(len(grid)), np.argmax(grid != 0, axis=1)]
    grid = grid[first > 0]
    if kind == "additive":
        s = np.abs(grid @ vals)
        cand = grid[s < 1e-8]
    else:
        s = grid @ vals
        cand = grid[np.abs(s - np.round(s)) < 1e-9]
    for v in cand.tolist():
        if kind == "additive":
            if verify_additive_exact(polys, v).holds:
                out.append(v)
        else:
            if verify_multiplicative_exact(polys, angle_vector_to_exponents(v, rs.size)).holds:
                out.append(v)
    return out


# ---------------------------------------------------------------------------
# independence report

ADDITIVELY_FREE = "AdditivelyFree"
TRACE_RELATIONS_ONLY = "TraceRelationsOnly"
MULT_TRIVIAL_ONLY = "MultTrivialOnly"
HAS_RELATIONS = "HasRelations"
UNDETERMINED = "Undetermined"


@dataclass
class IndependenceReport:
    verdicts: list[str]
    path: str
    relations: list[dict] = field(default_factory=list)
    additive_rank: int | None = None
    multiplicative_rank: int | None = None
    certificate: dict | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def summary(self) -> str:
        return "+".join(self.verdicts)

    @property
    def nontrivial_rank(self) -> int:
        return (self.additive_rank or 0) + (self.multiplicative_rank or 0)

    def to_dict(self) -> dict:
        return {
            "verdicts": self.verdicts,
            "path": self.path,
            "relations": self.relations,
            "additive_nontrivial_rank": self.additive_rank,
            "multiplicative_nontrivial_rank": self.multiplicative_rank,
            "certificate": self.certificate,
            "notes": self.notes,
        }


def _normalized_root_of_unity(P: QSymplecticPoly) -> bool:
    """For g = 1: alpha/sqrt q is a root of unity iff a^2/q is 0, 1, 2, 3 or 4."""
    a, q = -P.coeffs[1], P.q
    return a * a in (0, q, 2 * q, 3 * q, 4 * q)


def _certificate_verdicts(polys, cert) -> tuple[list[str], list[str]] | None:
    """Rigorous verdicts available from a Proven certificate, or None."""
    from .galois.cert import trace_is_zero

    k, g = len(polys), polys[0].g
    notes = []
    if not cert.proven:
        return None
    if g == 1:
        if any(_normalized_root_of_unity(P) for P in polys):
            return None
        # with group W_2^k every normalized root lives in its own quadratic
        # field, and the Galois element flipping only field j kills any
        # relation with a nonzero net exponent on pair j
        notes.append("g = 1: independent quadratic fields, no normalized root of unity")
        add = ADDITIVELY_FREE if k == 1 else TRACE_RELATIONS_ONLY
        return [add, MULT_TRIVIAL_ONLY], notes
    if any(trace_is_zero(P) for P in polys):
        return None
    notes.append("maximal Galois group with nonzero traces; multiplicative part via the squares of the roots")
    add = ADDITIVELY_FREE if k == 1 else TRACE_RELATIONS_ONLY
    return [add, MULT_TRIVIAL_ONLY], notes


def _relation_dicts(add: RelationLattice, mul: RelationLattice) -> list[dict]:
    out = []
    forced = add.trivial_basis
    base_rank = rank(forced) if forced else 0
    for v in add.basis:
        if not forced or rank(forced + [v]) > base_rank:
            out.append({"kind": "additive", "exponents": v})
    for v in mul.angle_basis:
        out.append({"kind": "multiplicative", "angle_coefficients": v[:-1], "constant": v[-1],
                    "exponents": angle_vector_to_exponents(v, mul.size)})
    return out


def relation_verdicts(add: RelationLattice, mul: RelationLattice) -> list[str]:
    if add.nontrivial_rank or mul.nontrivial_rank:
        return [HAS_RELATIONS]
    return [UNDETERMINED]


def independence_report(polys, *, q: int | None = None, ell_budget: int = 200,
                        bits: int = DEFAULT_DETECT_BITS, use_certificate: bool = True) -> IndependenceReport:
    """Combine Galois certificates with detection and exact verification."""
    from .errors import NotSeparable, SharedRoots
    from .galois.cert import tuple_certificate

    polys = _as_poly_list(polys, q)
    cert = None
    notes = []
    if use_certificate:
        try:
            cert = tuple_certificate(polys, ell_budget)
        except (SharedRoots, NotSeparable) as exc:
            notes.append(f"no certificate: {type(exc).__name__}")
        except Exception as exc:  # TooLarge and friends: fall back to detection
            notes.append(f"no certificate: {exc}")
        if cert is not None:
            got = _certificate_verdicts(polys, cert)
            if got is not None:
                verdicts, more = got
                return IndependenceReport(verdicts, "certificate", [], 0, 0, cert.to_dict(), notes + more)
    rs = _roots(polys, bits)
    add = detect_additive(rs, bits=bits)
    mul = detect_multiplicative(rs, bits=bits)
    rels = _relation_dicts(add, mul)
    verdicts = relation_verdicts(add, mul)
    return IndependenceReport(verdicts, "detection", rels, add.nontrivial_rank, mul.nontrivial_rank,
                              cert.to_dict() if cert is not None else None, notes)


def relation_report_json(results: Sequence[VerificationResult]) -> str:
    return json.dumps([r.to_dict() for r in results], indent=2, sort_keys=True)
