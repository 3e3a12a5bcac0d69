"""Explicit families with planted relations.

Honda-Tate systems: for a prime p, Weil numbers (a + f sqrt(-d))/2 of norm p
with a common squarefree d all lie in one imaginary quadratic field, so the
corresponding normalized roots are multiplicatively dependent.  Multiplying
the factors 1 - a_j T + p T^2 gives a q-symplectic polynomial with planted
relations.

Fermat systems: the inverse roots of x^m + y^m + z^m = 0 over F_q
(q = 1 mod m) are products of three Gauss sums g(w^a) g(w^b) g(w^c) / q with
a + b + c = 0 mod m.  Exponent vectors n on triplet classes whose Gauss-sum
exponents cancel give relations valid for every such q.
"""

from __future__ import annotations

import itertools
import json
from collections import Counter
from dataclasses import dataclass, field
from math import isqrt

import mpmath
from mpmath import mpf

from .arith.fields import field_create
from .arith.interval import HPComplex
from .arith.intlinalg import integer_kernel
from .arith.numtheory import is_prime, prime_power, squarefree_part
from .errors import BadCongruence, BadOrder, InvalidInput, NotCongruent, NotPrime, TooSmall, WeilBoundViolated
from .weil import QSymplecticPoly, product

GUARD_BITS = 32


# ---------------------------------------------------------------------------
# Honda-Tate systems


@dataclass(frozen=True)
class HondaTateSystem:
    p: int
    d: int
    traces: tuple[int, ...]
    discriminants: tuple[int, ...] = field(init=False)
    squarefree_parts: tuple[int, ...] = field(init=False)

    def __post_init__(self):
        disc = tuple(4 * self.p - a * a for a in self.traces)
        if any(x <= 0 for x in disc):
            raise WeilBoundViolated("trace outside the open Weil interval")
        sf = tuple(squarefree_part(x) for x in disc)
        if any(s != self.d for s in sf):
            raise InvalidInput(f"4p - a^2 does not have squarefree part {self.d} for every trace")
        if len(set(self.traces)) != len(self.traces):
            raise InvalidInput("traces must be pairwise distinct")
        object.__setattr__(self, "discriminants", disc)
        object.__setattr__(self, "squarefree_parts", sf)

    @property
    def g(self) -> int:
        return len(self.traces)

    def factors(self) -> list[QSymplecticPoly]:
        return [QSymplecticPoly((1, -a, self.p), self.p) for a in self.traces]

    def polynomial(self) -> QSymplecticPoly:
        return assemble_from_traces(self.traces, self.p)

    def aligned_exponents(self, exponents) -> list[int]:
        """Exponents per trace placed on roots lying over one common prime of Q(sqrt(-d)).

        The result is indexed like the root system of ``factors()``: each
        factor contributes (root with Im > 0, root with Im < 0).  The first
        trace uses its Im > 0 root; the others use whichever root alpha_j
        has alpha_j * conj(alpha_1) divisible by p.
        """
        exponents = list(exponents)
        if len(exponents) != self.g:
            raise InvalidInput("one exponent per trace is required")
        out = [0] * (2 * self.g)
        a1, f1 = self.traces[0], _conductor(self.p, self.traces[0], self.d)
        for j, (a, n) in enumerate(zip(self.traces, exponents)):
            f = _conductor(self.p, a, self.d)
            # alpha = (a + s f sqrt(-d)) / 2 times conj(alpha_1) = (a1 - f1 sqrt(-d)) / 2
            same = [s for s in (1, -1)
                    if (a * a1 + s * f * f1 * self.d) % self.p == 0 and (s * f * a1 - a * f1) % self.p == 0]
            if j == 0:
                same = [1]
            if not same:
                raise AssertionError("root not over either prime above p")
            out[2 * j + (0 if same[0] == 1 else 1)] = n
        return out

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "d": self.d,
            "traces": list(self.traces),
            "discriminants": list(self.discriminants),
            "squarefree_parts": list(self.squarefree_parts),
            "polynomial": list(self.polynomial().coeffs),
        }


def _conductor(p: int, a: int, d: int) -> int:
    return isqrt((4 * p - a * a) // d)


def _check_prime(p: int) -> None:
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")


def honda_tate_d1(p: int) -> HondaTateSystem:
    """Traces {a, b} with 4p = a^2 + b^2; both live in Q(i)."""
    _check_prime(p)
    if p % 4 != 1:
        raise NotCongruent(f"{p} is not 1 mod 4")
    for a in range(1, isqrt(4 * p) + 1):
        b2 = 4 * p - a * a
        b = isqrt(b2)
        if b > 0 and b * b == b2:
            return HondaTateSystem(p, 1, tuple(sorted({a, b})))
    raise AssertionError("no representation 4p = a^2 + b^2")  # unreachable for p = 1 mod 4


def honda_tate_d3(p: int) -> HondaTateSystem:
    """Traces x < y < z from 4p = a^2 + 3b^2; they satisfy z = x + y."""
    _check_prime(p)
    if p % 3 != 1:
        raise NotCongruent(f"{p} is not 1 mod 3")
    for b in range(1, isqrt(4 * p // 3) + 1):
        a2 = 4 * p - 3 * b * b
        a = isqrt(a2)
        if a > 0 and a * a == a2:
            x, y, z = sorted((a, (a + 3 * b) // 2, abs(a - 3 * b) // 2))
            if z != x + y:
                raise AssertionError("d = 3 traces do not satisfy z = x + y")
            return HondaTateSystem(p, 3, (x, y, z))
    raise AssertionError("no representation 4p = a^2 + 3b^2")  # unreachable for p = 1 mod 3


def assemble_from_traces(traces, p: int) -> QSymplecticPoly:
    """prod_j (1 - a_j T + p T^2) as a q-symplectic polynomial with q = p."""
    traces = list(traces)
    if not traces:
        raise InvalidInput("at least one trace is required")
    for a in traces:
        if a * a > 4 * p:
            raise WeilBoundViolated(f"|{a}| exceeds 2 sqrt({p})")
    return product([QSymplecticPoly((1, -a, p), p) for a in traces])


def planted_ranks(traces, p: int) -> dict:
    """Relation ranks forced by the quadratic fields of the factors 1 - a T + p T^2.

    Assumes nonzero pairwise distinct traces with a^2 < 4p and no normalized
    root of unity among the roots.  Roots sharing the squarefree part d of
    4p - a^2 generate conjugate prime ideals in Q(sqrt(-d)) and so differ by
    units; roots in different fields are independent.
    """
    groups = Counter(squarefree_part(4 * p - a * a) for a in traces)
    g = len(traces)
    additive = 2 * g - (1 + len(groups))
    return {
        "multiplicative": sum(n - 1 for n in groups.values()),
        "additive": additive,
        "additive_nontrivial": additive - (g - 1),
        "fields": dict(sorted(groups.items())),
    }


def planted_instance(seed: int, *, max_g: int = 3, p_limit: int = 2000) -> tuple[list[int], int]:
    """A seeded mixture of d = 1 and d = 3 Honda-Tate traces and random traces.

    The prime is 1 mod 12 so both quadratic fields are available; traces are
    nonzero, pairwise distinct in absolute value and carry random signs.
    """
    import random

    rng = random.Random(seed)
    primes = [p for p in range(13, p_limit, 12) if is_prime(p)]
    while True:
        p = rng.choice(primes)
        pool = list(honda_tate_d1(p).traces) * rng.randint(0, 1) + list(honda_tate_d3(p).traces) * rng.randint(0, 1)
        rng.shuffle(pool)
        traces = pool[: rng.randint(0, max_g)]
        while len(traces) < max_g and rng.random() < 0.6:
            traces.append(rng.randint(1, isqrt(4 * p - 1)))
        traces = list(dict.fromkeys(traces))
        if not traces or len(traces) > max_g or any(4 * p - a * a <= 0 for a in traces):
            continue
        return [a if rng.random() < 0.5 else -a for a in traces], p


# ---------------------------------------------------------------------------
# Fermat curves


Triplet = tuple[int, int, int]


def fermat_triplets(m: int) -> list[Triplet]:
    """A_m as exponent triples (a, b, c) in [1, m-1]^3 with a + b + c = 0 mod m."""
    r = range(1, m)
    return [(a, b, c) for a, b, c in itertools.product(r, r, r) if (a + b + c) % m == 0]


def _class_key(t: Triplet, m: int) -> Triplet:
    inv = tuple(sorted((m - x) % m for x in t))
    return min(tuple(sorted(t)), inv)


@dataclass(frozen=True)
class FermatRelationSystem:
    m: int
    triplets: tuple[Triplet, ...]
    classes: tuple[Triplet, ...]
    matrix: tuple[tuple[int, ...], ...]
    kernel: tuple[tuple[int, ...], ...]

    @property
    def row_labels(self) -> list[str]:
        return ["U"] + [f"w^{j}" for j in range(1, self.m)]

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "A_size": len(self.triplets),
            "B": [list(t) for t in self.classes],
            "rows": self.row_labels,
            "matrix": [list(r) for r in self.matrix],
            "kernel": [list(v) for v in self.kernel],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def fermat_relation_system(m: int) -> FermatRelationSystem:
    """Triplet classes, the exponent matrix and its integer kernel.

    Column b is a class representative (smallest sorted triple among the
    triple and its inverse).  Row U counts the triplet once; row w^j holds
    (occurrences of j) - (occurrences of m - j), which is the exponent of
    g(w^j) left after clearing g(w^j) g(w^-j) = w^j(-1) q.  For even m the
    kernel is cut down further so the leftover signs cancel for every q.
    """
    if m < 3:
        raise TooSmall("m must be at least 3")
    A = fermat_triplets(m)
    reps = sorted({_class_key(t, m) for t in A})
    rows = [[1] * len(reps)]
    for j in range(1, m):
        rows.append([t.count(j) - t.count(m - j) for t in reps])
    kern = _kernel_all_q(rows, reps, m) if reps else []
    return FermatRelationSystem(
        m,
        tuple(A),
        tuple(reps),
        tuple(tuple(r) for r in rows),
        tuple(tuple(v) for v in kern),
    )


def _kernel_all_q(rows, reps, m: int) -> list[list[int]]:
    """Integer kernel of ``rows``, restricted for even m by two parity conditions.

    With a_j the exponent of g(w^j), the quadratic character h = m/2 has
    g(w^h)^2 = w^h(-1) q, so a_h must be even, and the product of the signs
    w^j(-1) = (-1)^(j (q-1)/m) is 1 for all q iff
    sum_{j<h} j a_j + h a_h / 2 is even.  Auxiliary columns t, s encode
    a_h = 2t and that sum = 2s; projecting the kernel drops them.
    """
    if m % 2:
        return integer_kernel(rows)
    h = m // 2
    a = [[t.count(j) for t in reps] for j in range(m)]
    ncols = len(reps)
    ext = [list(r) + [0, 0] for r in rows]
    ext.append(a[h] + [-2, 0])
    ext.append([sum(j * a[j][b] for j in range(1, h)) for b in range(ncols)] + [h, -2])
    return [v[:ncols] for v in integer_kernel(ext)]


def _character_data(q: int, generator: int | None):
    pe = prime_power(q)
    if pe is None:
        raise InvalidInput(f"{q} is not a prime power")
    p, e = pe
    F = field_create(p, e)
    gamma = F.generator if generator is None else generator
    # Tr is F_p-linear: precompute it on the power basis
    basis_tr = []
    for i in range(e):
        x = F.from_digits([int(k == i) for k in range(e)])
        t, y = 0, x
        for _ in range(e):
            t = F.add(t, y)
            y = F.pow(y, p)
        basis_tr.append(F.to_digits(t)[0])
    return F, p, gamma, basis_tr


def _trace(F, basis_tr, x: int) -> int:
    return sum(d * t for d, t in zip(F.to_digits(x), basis_tr)) % F.p


_TABLES: dict[tuple[int, int, int | None], tuple] = {}


def _log_trace_counts(q: int, m: int, generator: int | None):
    """N[k mod m][Tr(gamma^k)] for k = 0..q-2."""
    key = (q, m, generator)
    if key not in _TABLES:
        F, p, gamma, basis_tr = _character_data(q, generator)
        counts = [[0] * p for _ in range(m)]
        x = 1
        for k in range(q - 1):
            counts[k % m][_trace(F, basis_tr, x)] += 1
            x = F.mul(x, gamma)
        if x != 1:
            raise InvalidInput("generator does not have order q - 1")
        _TABLES[key] = (p, counts)
    return _TABLES[key]


def gauss_sum(j: int, m: int, q: int, *, generator: int | None = None, bits: int = 256) -> HPComplex:
    """g(w^j) = sum_{x != 0} w^j(x) e(Tr(x)/p) with w(gamma) = exp(2 pi i / m).

    ``gamma`` is ``generator`` or the smallest generator of F_q^x.
    """
    if m < 1 or (q - 1) % m:
        raise BadOrder(f"no character of order {m} on F_{q}^x")
    prec = bits + GUARD_BITS
    if j % m == 0:
        return HPComplex.exact(-1, 0, prec)
    p, counts = _log_trace_counts(q, m, generator)
    with mpmath.workprec(prec + 16):
        zeta_m = [mpmath.expjpi(mpf(2 * ((j * k) % m)) / m) for k in range(m)]
        zeta_p = [mpmath.expjpi(mpf(2 * t) / p) for t in range(p)]
        total = mpmath.mpc(0)
        for k in range(m):
            row = counts[k]
            inner = mpmath.fsum(c * zeta_p[t] for t, c in enumerate(row) if c)
            total += zeta_m[k] * inner
        rad = mpf(q) * mpf(2) ** (8 - prec)
    return HPComplex.from_mpc(total, rad, prec)


def fermat_verify_kernel(m: int, q: int, bits: int = 200, *, generator: int | None = None) -> dict:
    """Evaluate prod_b (g(a) g(b) g(c) / q^(3/2))^(n_b) for each kernel vector n.

    A numerical consistency check: the report gives an upper bound for
    |product - 1| from disc arithmetic.
    """
    if (q - 1) % m:
        raise BadCongruence(f"{q} is not 1 mod {m}")
    system = fermat_relation_system(m)
    prec = bits + GUARD_BITS
    sums = {j: gauss_sum(j, m, q, generator=generator, bits=bits) for j in range(1, m)}
    with mpmath.workprec(prec):
        q32 = HPComplex.from_mpc(mpmath.mpc(mpf(q) ** mpf(1.5)), mpf(q) ** 2 * mpf(2) ** (2 - prec), prec)
    roots = [sums[a] * sums[b] * sums[c] / q32 for a, b, c in system.classes]
    results = []
    threshold = mpf(2) ** (-(bits // 2))
    for v in system.kernel:
        prod = HPComplex.exact(1, 0, prec)
        for n, r in zip(v, roots):
            if n:
                prod = prod * r**n
        err = (prod - 1).abs_upper()
        results.append({
            "kernel_vector": list(v),
            "abs_error_upper": float(err),
            "abs_error": mpmath.nstr(err, 5),
            "consistent": bool(err < threshold),
        })
    return {
        "m": m,
        "q": q,
        "bits": bits,
        "classes": [list(t) for t in system.classes],
        "vacuous": not system.kernel,
        "results": results,
    }


def fermat_report_json(report: dict) -> str:
    return json.dumps(report, indent=2)
