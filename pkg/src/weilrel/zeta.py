"""Point counts and L-polynomials of y^2 = f(x)(x - t) over finite fields.

The affine count over F_{q^n} is q^n + sum_x chi(h(x)); an odd-degree model
has one point at infinity.  Writing chi(h(x)) = chi(f(x)) chi(x - t) lets a
survey over many t reuse the table chi(f(x)): the second factor is the
quadratic-character table translated by t, which for base-p digit codes is a
cyclic roll along each digit axis.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .arith import polyfp
from .arith.fields import _CHUNK, ENUMERATION_CAP, FieldCtx, embed, field_create, map_element
from .arith.numtheory import is_prime
from .errors import (
    EvenCharacteristic,
    InvalidInput,
    NonIntegralCoefficient,
    NotPrime,
    SingularCurve,
    TooLarge,
)
from .weil import QSymplecticPoly


@dataclass(frozen=True)
class CurveSpec:
    """The curve y^2 = f(x)(x - t) over F_q, q = p^e.

    ``f`` is a monic integer polynomial (low to high) of even degree 2g and
    ``t`` is the code of an element of F_q in the default field model.
    """

    f: tuple[int, ...]
    t: int
    p: int
    e: int = 1

    def __post_init__(self):
        object.__setattr__(self, "f", tuple(int(c) for c in self.f))
        if not is_prime(self.p):
            raise NotPrime(f"{self.p} is not prime")
        if self.p == 2:
            raise EvenCharacteristic("characteristic 2 is not supported")
        if len(self.f) < 3 or (len(self.f) - 1) % 2:
            raise InvalidInput("f must have even degree >= 2")
        if self.f[-1] != 1:
            raise InvalidInput("f must be monic")
        if not 0 <= self.t < self.p**self.e:
            raise InvalidInput("t is not an element code of F_q")

    @property
    def q(self) -> int:
        return self.p**self.e

    @property
    def g(self) -> int:
        return (len(self.f) - 1) // 2

    def check(self) -> None:
        """Raise SingularCurve unless h = f (x - t) is squarefree over F_q."""
        if not discriminant_is_unit(self.f, self.p):
            raise SingularCurve("p divides the discriminant of f")
        base = _field(self.p, self.e)
        if base.poly_eval(self.f, self.t) == 0:
            raise SingularCurve("f(t) = 0, so x - t divides f")


def discriminant_is_unit(f: Sequence[int], p: int) -> bool:
    fp = polyfp.trim(f, p)
    if polyfp.deg(fp) != len(f) - 1:
        return False
    return polyfp.deg(polyfp.gcd(fp, polyfp.derivative(fp, p), p)) == 0


@lru_cache(maxsize=64)
def _field(p: int, n: int, modulus: tuple[int, ...] | None = None) -> FieldCtx:
    return field_create(p, n, modulus=modulus, cap=max(ENUMERATION_CAP, p**n))


def _digit_tensor(table: np.ndarray, ctx: FieldCtx) -> np.ndarray:
    # C-order reshape puts digit i of the code on axis n-1-i
    return table.reshape((ctx.p,) * ctx.n)


@lru_cache(maxsize=32)
def _chi_of_poly(coeffs: tuple[int, ...], ctx: FieldCtx) -> np.ndarray:
    """chi(f(x)) for every code x of the field, as int8."""
    out = np.empty(ctx.q, dtype=np.int8)
    chi = ctx.chi_table
    for start in range(0, ctx.q, _CHUNK):
        codes = np.arange(start, min(ctx.q, start + _CHUNK), dtype=np.int64)
        vals = ctx.vcodes(ctx.vpoly_eval_digits(coeffs, ctx.vdigits(codes)))
        out[start : start + codes.size] = chi[vals]
    return out


@lru_cache(maxsize=32)
def _embedding(p: int, e: int, m: int, modulus: tuple[int, ...] | None):
    return embed(_field(p, e), _field(p, m, modulus))


def character_sum(f: Sequence[int], t: int, p: int, e: int, n: int,
                  *, modulus: Sequence[int] | None = None, cap: int = ENUMERATION_CAP) -> int:
    """sum over x in F_{q^n} of chi(f(x)(x - t)), t a code of F_{p^e}."""
    m = e * n
    if p**m > cap:
        raise TooLarge(f"{p}^{m} exceeds the enumeration cap {cap}")
    mod = tuple(modulus) if modulus is not None else None
    ctx = _field(p, m, mod)
    t_img = map_element(t, _field(p, e), _embedding(p, e, m, mod), ctx)
    chi_f = _digit_tensor(_chi_of_poly(tuple(f), ctx), ctx)
    shifts = ctx.to_digits(t_img)
    axes = tuple(m - 1 - i for i in range(m))
    shifted = np.roll(_digit_tensor(ctx.chi_table, ctx), shift=shifts, axis=axes)
    total = 0
    flat_f, flat_s = chi_f.reshape(-1), shifted.reshape(-1)
    for start in range(0, ctx.q, _CHUNK):
        a = flat_f[start : start + _CHUNK].astype(np.int32)
        b = flat_s[start : start + _CHUNK].astype(np.int32)
        total += int(np.dot(a, b))
    return total


def curve_count(spec: CurveSpec, n: int = 1, *, modulus: Sequence[int] | None = None,
                cap: int = ENUMERATION_CAP) -> int:
    """Number of points on the smooth projective model over F_{q^n}."""
    spec.check()
    if n < 1:
        raise InvalidInput("n must be >= 1")
    qn = spec.q**n
    return qn + 1 + character_sum(spec.f, spec.t, spec.p, spec.e, n, modulus=modulus, cap=cap)


def count_odd_model(h: Sequence[int], p: int, n: int = 1, *, cap: int = ENUMERATION_CAP) -> int:
    """Point count of y^2 = h(x) for an odd-degree integer polynomial h over F_{p^n}.

    Smoothness is not checked; this is the raw character-sum count that the
    curve specification reduces to.
    """
    if not is_prime(p) or p == 2:
        raise InvalidInput("p must be an odd prime")
    hp = polyfp.trim(h, p)
    if not hp or polyfp.deg(hp) % 2 == 0:
        raise InvalidInput("h must have odd degree mod p")
    if p**n > cap:
        raise TooLarge(f"{p}^{n} exceeds the enumeration cap {cap}")
    ctx = _field(p, n)
    return ctx.q + 1 + int(_chi_of_poly(tuple(h), ctx).astype(np.int64).sum())


def newton_reconstruct(power_sums: Sequence, q: int, g: int) -> list[int]:
    """Coefficients c_0..c_2g from s_1..s_g and the functional equation."""
    if g < 1:
        raise InvalidInput("g must be >= 1")
    if len(power_sums) < g:
        raise InvalidInput(f"need {g} power sums, got {len(power_sums)}")
    s = []
    for v in power_sums[:g]:
        if isinstance(v, (int, np.integer)) and not isinstance(v, bool):
            s.append(int(v))
        elif isinstance(v, Fraction) and v.denominator == 1:
            s.append(int(v))
        else:
            raise NonIntegralCoefficient(f"power sum {v!r} is not an integer")
    e = [Fraction(1)]
    for k in range(1, g + 1):
        acc = sum((-1) ** (i - 1) * e[k - i] * s[i - 1] for i in range(1, k + 1))
        ek = Fraction(acc, k)
        if ek.denominator != 1:
            raise NonIntegralCoefficient(f"e_{k} = {ek} is not an integer")
        e.append(ek)
    c = [0] * (2 * g + 1)
    for i in range(g + 1):
        c[i] = int((-1) ** i * e[i])
    for i in range(g):
        c[2 * g - i] = q ** (g - i) * c[i]
    return c


def lpolynomial(spec: CurveSpec, *, modulus_for: dict[int, Sequence[int]] | None = None,
                cap: int = ENUMERATION_CAP) -> QSymplecticPoly:
    """L-polynomial from the counts over F_{q^n}, n = 1..g."""
    spec.check()
    if spec.q**spec.g > cap:
        raise TooLarge(f"q^g = {spec.q}^{spec.g} exceeds the enumeration cap {cap}")
    sums = []
    for n in range(1, spec.g + 1):
        mod = (modulus_for or {}).get(n)
        count = curve_count(spec, n, modulus=mod, cap=cap)
        sums.append(spec.q**n + 1 - count)
    return QSymplecticPoly(tuple(newton_reconstruct(sums, spec.q, spec.g)), spec.q)


def parameter_set(f: Sequence[int], p: int, e: int) -> list[int]:
    """Codes t of F_q with f(t) != 0, in increasing order."""
    base = _field(p, e)
    vals = base.vcodes(base.vpoly_eval_digits(tuple(f), base.vdigits(np.arange(base.q))))
    return [int(t) for t in np.flatnonzero(vals != 0)]
