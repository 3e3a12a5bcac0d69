"""Normalized point-count sequences and the limit law mu_g.

If theta_1..theta_g are the angles of the inverse roots of a curve, then
(q^n + 1 - |C(F_{q^n})|) / q^{n/2} = 2 sum_j cos(2 pi n theta_j).  When 1 and
the angles are Q-linearly independent this sequence equidistributes with
respect to the law of Y = sum_{i<=2g} 2 cos(2 pi U_i), U_i uniform, whose
characteristic function is J_0(2t)^(2g).  For a difference of two curves the
same holds with 2g angles, which is what ``mu_g_sample(g)`` draws.

Sampling uses numpy's PCG64 bit generator.  ``DEFAULT_SEED`` is the seed
quoted by the statistical tests; chunks draw from spawned child seeds so the
output does not depend on chunking.
"""

from __future__ import annotations

import csv
import io
import json
import math
from collections.abc import Sequence
from dataclasses import dataclass, field

import mpmath
import numpy as np
from mpmath import mpf

from .errors import EmptySequence, MismatchedField
from .weil import QSymplecticPoly, RootSystem, certified_roots_many

DEFAULT_SEED = 20240607
RENORMALIZE_EVERY = 64
SAMPLE_CHUNK = 1 << 18
_FIXED_BITS = 128


def _root_system(source, bits: int = 128) -> RootSystem:
    if isinstance(source, RootSystem):
        return source
    if isinstance(source, QSymplecticPoly):
        source = [source]
    return certified_roots_many(list(source), bits, deflate=True)


def _unit_powers(theta: mpf, N: int) -> np.ndarray:
    """exp(2 pi i n theta) for n = 1..N.

    Inside each block of 64 the powers come from multiplying a fresh block
    start by a fixed table of small powers; block starts are recomputed from
    an exact fixed-point multiple of theta, so no error accumulates.
    """
    with mpmath.workprec(_FIXED_BITS + 64):
        fixed = int(mpmath.nint(theta * mpf(2) ** _FIXED_BITS))
    mod = 1 << _FIXED_BITS
    step = RENORMALIZE_EVERY
    small = np.exp(2j * np.pi * (np.arange(step) * (fixed / mod) % 1.0))
    nblocks = (N + step) // step
    starts = np.array([((b * step * fixed) % mod) / mod for b in range(nblocks)])
    block = np.exp(2j * np.pi * starts)
    table = (block[:, None] * small[None, :]).ravel()
    return table[1 : N + 1]


def deviation_sequence(rs, N: int) -> np.ndarray:
    """d_n = 2 sum_j cos(2 pi n theta_j) for n = 1..N (sum over representatives)."""
    rs = _root_system(rs)
    out = np.zeros(N)
    for theta, _ in rs.angles:
        out += 2 * _unit_powers(theta, N).real
    return out


def _same_field(rs1: RootSystem, rs2: RootSystem) -> None:
    if rs1.q != rs2.q:
        raise MismatchedField(f"q = {rs1.q} and q = {rs2.q}")


def diff_sequence(rs1, rs2, N: int) -> np.ndarray:
    """(|C_1(F_{q^n})| - |C_2(F_{q^n})|) / q^{n/2} = d_n(rs2) - d_n(rs1)."""
    rs1, rs2 = _root_system(rs1), _root_system(rs2)
    _same_field(rs1, rs2)
    return deviation_sequence(rs2, N) - deviation_sequence(rs1, N)


def sign_bias(rs1, rs2, N: int) -> float:
    """Fraction of n <= N with a strictly negative difference."""
    rs1, rs2 = _root_system(rs1), _root_system(rs2)
    _same_field(rs1, rs2)
    return float(np.mean(diff_sequence(rs1, rs2, N) < 0))


def tie_fraction(rs1, rs2, N: int) -> float:
    return float(np.mean(diff_sequence(rs1, rs2, N) == 0))


# ---------------------------------------------------------------------------
# the limit law


def mu_g_sample(g: int, count: int, seed: int = DEFAULT_SEED) -> np.ndarray:
    """``count`` draws of sum_{i<=2g} 2 cos(2 pi U_i)."""
    if count < 1:
        raise ValueError("count must be positive")
    nchunks = -(-count // SAMPLE_CHUNK)
    children = np.random.SeedSequence(seed).spawn(nchunks)
    parts = []
    for c, child in enumerate(children):
        size = min(SAMPLE_CHUNK, count - c * SAMPLE_CHUNK)
        rng = np.random.Generator(np.random.PCG64(child))
        u = rng.random((size, 2 * g))
        parts.append((2 * np.cos(2 * np.pi * u)).sum(axis=1))
    return np.concatenate(parts)


_SERIES_LIMIT = 20.0


def _j0_series(x: float) -> float:
    # alternating series; extra precision absorbs the cancellation near |x| = 20
    with mpmath.workprec(53 + 64):
        h = mpf(x) ** 2 / 4
        term, total, k = mpf(1), mpf(1), 0
        while abs(term) > mpf(2) ** -80:
            k += 1
            term *= -h / (k * k)
            total += term
        return float(total)


def _j0_asymptotic(x: float) -> float:
    """Hankel expansion, truncated at its smallest term."""
    x = abs(x)
    p_sum, q_sum = 0.0, 0.0
    a = 1.0  # a_k = prod_{j<=k} (-(2j-1)^2) / (k! 8^k)
    prev = math.inf
    for k in range(0, 60):
        if k > 0:
            a *= -((2 * k - 1) ** 2) / (k * 8)
        term = a / x**k
        if abs(term) > prev:
            break
        prev = abs(term)
        if k % 2 == 0:
            p_sum += (-1) ** (k // 2) * term
        else:
            q_sum += (-1) ** (k // 2) * term
    w = x - math.pi / 4
    return math.sqrt(2 / (math.pi * x)) * (p_sum * math.cos(w) - q_sum * math.sin(w))


def bessel_j0(x: float) -> float:
    x = float(x)
    if abs(x) <= _SERIES_LIMIT:
        return _j0_series(x)
    return _j0_asymptotic(x)


def mu_g_charfn(g: int, t: float) -> float:
    """E exp(i t Y) = J_0(2t)^(2g)."""
    return bessel_j0(2 * t) ** (2 * g)


def empirical_charfn(samples: np.ndarray, t: float) -> complex:
    return complex(np.mean(np.exp(1j * t * samples)))


def ks_statistic(a: Sequence[float], b: Sequence[float]) -> float:
    """Two-sample Kolmogorov-Smirnov statistic sup |F_a - F_b|."""
    a = np.sort(np.asarray(a, dtype=float))
    b = np.sort(np.asarray(b, dtype=float))
    if len(a) == 0 or len(b) == 0:
        raise EmptySequence("empty sample")
    grid = np.concatenate([a, b])
    fa = np.searchsorted(a, grid, side="right") / len(a)
    fb = np.searchsorted(b, grid, side="right") / len(b)
    return float(np.max(np.abs(fa - fb)))


@dataclass
class DistributionModel:
    g: int
    seed: int = DEFAULT_SEED
    size: int = 100_000
    reference: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        self.reference = np.sort(mu_g_sample(self.g, self.size, self.seed))

    @property
    def mean(self) -> float:
        return 0.0

    @property
    def variance(self) -> float:
        return 4.0 * self.g

    def cdf(self, x) -> np.ndarray:
        return np.searchsorted(self.reference, np.asarray(x, dtype=float), side="right") / self.size

    def charfn(self, t: float) -> float:
        return mu_g_charfn(self.g, t)


def ks_compare(sequence: Sequence[float], g: int, reference_size: int = 100_000,
               seed: int = DEFAULT_SEED) -> float:
    seq = np.asarray(sequence, dtype=float)
    if seq.size == 0:
        raise EmptySequence("sequence is empty")
    return ks_statistic(seq, DistributionModel(g, seed, reference_size).reference)


def ks_report_json(statistic: float, *, g: int, n: int, reference_size: int, seed: int) -> str:
    return json.dumps({"ks": statistic, "g": g, "n": n, "reference_size": reference_size, "seed": seed},
                      indent=2)


def histogram_csv(values: Sequence[float], bins: int = 50, range_: tuple[float, float] | None = None) -> str:
    counts, edges = np.histogram(np.asarray(values, dtype=float), bins=bins, range=range_)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["bin_left", "bin_right", "count"])
    for c, lo, hi in zip(counts, edges[:-1], edges[1:]):
        w.writerow([f"{lo:.10g}", f"{hi:.10g}", int(c)])
    return buf.getvalue()
