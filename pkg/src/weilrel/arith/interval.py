"""Complex discs with arbitrary-precision centers and certified radii.

Every operation returns a disc that contains the exact result of the same
operation applied to any points of the input discs.  Rounding of the center
computation is absorbed by inflating the radius by a few ulps.
"""

from __future__ import annotations

from dataclasses import dataclass

import mpmath
from mpmath import mpf

DEFAULT_BITS = 256


def _ulp_pad(mag, prec: int):
    return mag * mpf(2) ** (3 - prec)


@dataclass(frozen=True)
class HPComplex:
    re: mpf
    im: mpf
    rad: mpf
    prec: int = DEFAULT_BITS

    @classmethod
    def exact(cls, re, im=0, prec: int = DEFAULT_BITS) -> "HPComplex":
        with mpmath.workprec(prec):
            r, i = mpf(re), mpf(im)
            # conversion of a rational or large integer may round
            pad = _ulp_pad(abs(r) + abs(i), prec)
        return cls(r, i, pad, prec)

    @classmethod
    def from_mpc(cls, z, rad=0, prec: int = DEFAULT_BITS) -> "HPComplex":
        with mpmath.workprec(prec):
            return cls(mpf(z.real), mpf(z.imag), mpf(rad), prec)

    # -- helpers ---------------------------------------------------------
    @property
    def center(self):
        with mpmath.workprec(self.prec):
            return mpmath.mpc(self.re, self.im)

    def abs_upper(self):
        with mpmath.workprec(self.prec + 10):
            return mpmath.hypot(self.re, self.im) * (1 + mpf(2) ** (4 - self.prec)) + self.rad

    def abs_lower(self):
        with mpmath.workprec(self.prec + 10):
            v = mpmath.hypot(self.re, self.im) * (1 - mpf(2) ** (4 - self.prec)) - self.rad
        return v if v > 0 else mpf(0)

    def contains(self, other: "HPComplex") -> bool:
        with mpmath.workprec(max(self.prec, other.prec) + 10):
            dist = mpmath.hypot(self.re - other.re, self.im - other.im)
            return dist + other.rad < self.rad

    def overlaps(self, other: "HPComplex") -> bool:
        with mpmath.workprec(max(self.prec, other.prec) + 10):
            dist = mpmath.hypot(self.re - other.re, self.im - other.im)
            return dist <= (self.rad + other.rad) * (1 + mpf(2) ** (-20))

    def contains_zero(self) -> bool:
        return self.abs_lower() == 0

    def _lift(self, other) -> "HPComplex":
        if isinstance(other, HPComplex):
            return other
        if isinstance(other, complex):
            return HPComplex.exact(other.real, other.imag, self.prec)
        return HPComplex.exact(other, 0, self.prec)

    # -- arithmetic ------------------------------------------------------
    def __add__(self, other):
        o = self._lift(other)
        prec = min(self.prec, o.prec)
        with mpmath.workprec(prec):
            re, im = self.re + o.re, self.im + o.im
            rad = self.rad + o.rad + _ulp_pad(abs(re) + abs(im), prec)
        return HPComplex(re, im, rad, prec)

    __radd__ = __add__

    def __neg__(self):
        with mpmath.workprec(self.prec):
            return HPComplex(-self.re, -self.im, self.rad, self.prec)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        prec = min(self.prec, o.prec)
        with mpmath.workprec(prec):
            re = self.re * o.re - self.im * o.im
            im = self.re * o.im + self.im * o.re
            a = abs(self.re) + abs(self.im)
            b = abs(o.re) + abs(o.im)
            rad = a * o.rad + b * self.rad + self.rad * o.rad
            rad += _ulp_pad(a * b + abs(re) + abs(im), prec)
        return HPComplex(re, im, rad, prec)

    __rmul__ = __mul__

    def reciprocal(self) -> "HPComplex":
        lo = self.abs_lower()
        if lo == 0:
            raise ZeroDivisionError("disc contains zero")
        with mpmath.workprec(self.prec):
            n2 = self.re**2 + self.im**2
            re, im = self.re / n2, -self.im / n2
            # |1/z - 1/c| <= r / (|c| (|c| - r))
            c = mpmath.sqrt(n2)
            rad = self.rad / (c * lo) + _ulp_pad(abs(re) + abs(im), self.prec)
        return HPComplex(re, im, rad, self.prec)

    def __truediv__(self, other):
        return self * self._lift(other).reciprocal()

    def __rtruediv__(self, other):
        return self._lift(other) * self.reciprocal()

    def conj(self) -> "HPComplex":
        with mpmath.workprec(self.prec):
            return HPComplex(self.re, -self.im, self.rad, self.prec)

    def __pow__(self, e: int):
        if e < 0:
            return self.reciprocal() ** (-e)
        result = HPComplex.exact(1, 0, self.prec)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def angle(self) -> tuple[mpf, mpf]:
        """Argument / 2 pi in [0, 1) with a certified radius."""
        lo = self.abs_lower()
        if lo == 0:
            raise ZeroDivisionError("argument of a disc containing zero")
        with mpmath.workprec(self.prec + 10):
            t = mpmath.atan2(self.im, self.re) / (2 * mpmath.pi)
            if t < 0:
                t += 1
            # a point within r of c differs in argument by at most asin(r/|c|)
            ratio = self.rad / (lo + self.rad)
            rad = mpmath.asin(min(ratio, mpf(1))) / (2 * mpmath.pi) * (1 + mpf(2) ** -20)
            rad += mpf(2) ** (4 - self.prec)
        return t, rad

    def __repr__(self) -> str:
        return f"HPComplex({mpmath.nstr(self.re, 20)} + {mpmath.nstr(self.im, 20)}i ± {mpmath.nstr(self.rad, 3)})"
