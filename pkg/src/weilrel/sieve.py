"""Constants and exponents of the large-sieve bounds for exceptional sets.

The exceptional set counts have the shape q^(d - 1/gamma) log q times an
implied constant that is never made explicit, so every bound is carried with
an ``OMEGA_TAG`` marker instead of being presented as a bare number.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import InvalidInput, UnknownMethod

OMEGA_TAG = "×O(1)"
METHODS = ("prop1", "th2", "tori")


def constant_C(N: int, r: int, delta: int) -> int:
    """C = 12 N 2^r (3 + r delta)^(N+1)."""
    for name, v in (("N", N), ("r", r), ("delta", delta)):
        if not isinstance(v, int) or v < 1:
            raise InvalidInput(f"{name} must be a positive integer")
    return 12 * N * 2**r * (3 + r * delta) ** (N + 1)


def exponent_gamma(method: str, g: int, k: int = 1) -> int:
    """Saving exponent: the exceptional set is << q^(k - 1/gamma) log q."""
    if g < 1 or k < 1:
        raise InvalidInput("g and k must be >= 1")
    if method == "prop1":
        return 4 * g * g + 2 * g + 4
    if method == "th2":
        return 29 * k * g * g
    if method == "tori":
        return 2 * (6 * g * g * k + 1)
    raise UnknownMethod(f"unknown method {method!r}; expected one of {METHODS}")


def choose_L(q: float, C: float, A: float) -> float:
    """The sieve length L with C L^A = q^(1/2)."""
    if q <= 0 or C <= 0 or A <= 0:
        raise InvalidInput("q, C and A must be positive")
    ratio = Fraction(q) / (Fraction(C) ** 2)
    try:
        r = float(ratio)
    except OverflowError:
        r = 0.0
    if r > 0:
        return r ** (1 / (2 * A))
    # logs keep huge integer C and q out of float range
    return math.exp((math.log(q) - 2 * math.log(C)) / (2 * A))


def sieve_bound(q: float, d: int, gamma: float) -> float:
    """q^(d - 1/gamma) log q, without its implied constant."""
    if q < 2 or gamma <= 0:
        raise InvalidInput("need q >= 2 and gamma > 0")
    if math.isinf(gamma):
        return q**d * math.log(q)
    return math.exp((d - 1 / gamma) * math.log(q)) * math.log(q)


def tagged(value: float) -> str:
    return f"{value:.6g} {OMEGA_TAG}"


def large_sieve_bound(q: int, d: int, C: int, A: float, L: float, H: float) -> float:
    """(q^d + C L^A q^(d - 1/2)) / H."""
    if H <= 0:
        raise InvalidInput("H must be positive")
    return (q**d + C * L**A * q ** (d - 0.5)) / H


#: largest L for which prime_count sieves exactly
PRIME_COUNT_EXACT_LIMIT = 10**7


def prime_count(L: float) -> int:
    """pi(L) exactly for L up to PRIME_COUNT_EXACT_LIMIT."""
    n = int(math.floor(L))
    if n < 2:
        return 0
    if n > PRIME_COUNT_EXACT_LIMIT:
        raise InvalidInput(f"L = {L} is beyond the exact prime-count limit")
    flags = np.ones(n + 1, dtype=bool)
    flags[:2] = False
    for i in range(2, math.isqrt(n) + 1):
        if flags[i]:
            flags[i * i :: i] = False
    return int(flags.sum())


def lower_bound_H(L: float, k: int, c_g: float) -> float:
    """c_g^(-k) pi(L), the sieve denominator with a caller-chosen c_g.

    Past the exact limit pi(L) is replaced by L / log L, which stays a lower
    bound for L >= 17.
    """
    if not 0 < c_g <= 1 or k < 1:
        raise InvalidInput("need 0 < c_g <= 1 and k >= 1")
    if L <= PRIME_COUNT_EXACT_LIMIT:
        count = prime_count(L)
    else:
        count = L / math.log(L)
    return c_g ** (-k) * count


def explicit_sieve_bound(q: float, d: int, k: int, C: float, A: float, c_g: float) -> float:
    """4 k c_g^(-k) q^(d - 1/(2A)) log q C^(1/A), the bound after choosing C L^A = q^(1/2)."""
    if q < 2 or A <= 0 or C <= 0:
        raise InvalidInput("need q >= 2 and positive C, A")
    if not 0 < c_g <= 1 or k < 1:
        raise InvalidInput("need 0 < c_g <= 1 and k >= 1")
    log_value = (math.log(4 * k) - k * math.log(c_g) + (d - 1 / (2 * A)) * math.log(q)
                 + math.log(math.log(q)) + math.log(C) / A)
    return math.exp(log_value)


@dataclass
class SieveParams:
    """Embedding data (N, r, delta) with the derived sieve constants.

    A is gamma/2 so that choosing C L^A = q^(1/2) turns the large-sieve
    inequality into the q^(d - 1/gamma) shape.  The bound is trivial when
    L < 2, which ``trivial`` flags.  ``c_g`` has no known explicit value; when
    given, the summary adds the H lower bound and the explicit bound.
    """

    N: int
    r: int
    delta: int
    g: int
    k: int
    q: int
    d: int = 1
    method: str = "th2"
    c_g: float | None = None
    C: int = field(init=False)
    gamma: int = field(init=False)
    A_bound: Fraction = field(init=False)
    L: float = field(init=False)

    def __post_init__(self):
        self.C = constant_C(self.N, self.r, self.delta)
        self.gamma = exponent_gamma(self.method, self.g, self.k)
        self.A_bound = Fraction(self.gamma, 2)
        self.L = choose_L(self.q, self.C, float(self.A_bound))

    @property
    def trivial(self) -> bool:
        return self.L < 2

    @property
    def bound(self) -> float:
        return sieve_bound(self.q, self.d, self.gamma)

    def summary(self) -> dict:
        out = {
            "method": self.method, "g": self.g, "k": self.k, "q": self.q, "d": self.d,
            "C": self.C, "gamma": self.gamma, "A": str(self.A_bound), "L": self.L,
            "trivial": self.trivial, "bound": tagged(self.bound),
        }
        if self.c_g is not None:
            out["c_g"] = self.c_g
            out["H_lower"] = lower_bound_H(self.L, self.k, self.c_g)
            out["explicit_bound"] = tagged(
                explicit_sieve_bound(self.q, self.d, self.k, self.C, float(self.A_bound), self.c_g))
        return out


def comparison_rows(gs, ks, qs, *, d: int | None = None, c_g: float | None = None) -> list[dict]:
    """Theorem-style exponent 29 k g^2 against the torus exponent 2(6 g^2 k + 1).

    With ``c_g`` each row also carries the th2 bound times 4 k c_g^(-k).
    """
    if c_g is not None and not 0 < c_g <= 1:
        raise InvalidInput("need 0 < c_g <= 1")
    rows = []
    for g in gs:
        for k in ks:
            for q in qs:
                dd = k if d is None else d
                g_th2, g_tori = exponent_gamma("th2", g, k), exponent_gamma("tori", g, k)
                b_th2, b_tori = sieve_bound(q, dd, g_th2), sieve_bound(q, dd, g_tori)
                rows.append({
                    "g": g, "k": k, "q": q, "d": dd,
                    "gamma_th2": g_th2, "bound_th2": tagged(b_th2),
                    "gamma_tori": g_tori, "bound_tori": tagged(b_tori),
                    "ratio_tori_over_th2": f"{b_tori / b_th2:.6g}",
                })
                if c_g is not None:
                    rows[-1]["bound_th2_c_g"] = tagged(4 * k * c_g ** (-k) * b_th2)
    return rows


def comparison_csv(gs, ks, qs, *, d: int | None = None, c_g: float | None = None) -> str:
    rows = comparison_rows(gs, ks, qs, d=d, c_g=c_g)
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    return buf.getvalue()
