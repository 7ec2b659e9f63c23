"""Closed intervals with dyadic endpoints and rigorous trig enclosures.

Interval arithmetic here is exact on the endpoints (dyadics are closed under
``+ - *``), so "outward rounding" only happens where we deliberately shorten
mantissas: in :func:`trig_enclose` and :meth:`RigorousInterval.round_outward`.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd

from .dyadic import Dyadic, as_dyadic

__all__ = ["RigorousInterval", "pi_enclose", "trig_enclose"]


class RigorousInterval:
    __slots__ = ("lo", "hi")

    def __init__(self, lo, hi=None):
        lo = as_dyadic(lo)
        hi = lo if hi is None else as_dyadic(hi)
        if lo > hi:
            raise ValueError(f"empty interval [{lo}, {hi}]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    def __setattr__(self, name, value):
        raise AttributeError("RigorousInterval is immutable")

    def __reduce__(self):
        return (RigorousInterval, (self.lo, self.hi))

    @classmethod
    def point(cls, x) -> RigorousInterval:
        return cls(x, x)

    def __repr__(self) -> str:
        return f"RigorousInterval({self.lo}, {self.hi})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, RigorousInterval):
            return NotImplemented
        return self.lo == other.lo and self.hi == other.hi

    def __hash__(self) -> int:
        return hash((self.lo, self.hi))

    @property
    def is_point(self) -> bool:
        return self.lo == self.hi

    def width(self) -> Dyadic:
        return self.hi - self.lo

    def radius(self) -> Dyadic:
        return (self.hi - self.lo).scale2(-1)

    def midpoint(self) -> Dyadic:
        return (self.lo + self.hi).scale2(-1)

    def magnitude(self) -> Dyadic:
        """max |x| over the interval."""
        return max(abs(self.lo), abs(self.hi))

    def contains(self, x) -> bool:
        if isinstance(x, RigorousInterval):
            return self.lo <= x.lo and x.hi <= self.hi
        if isinstance(x, float):
            x = Fraction(x)
        if isinstance(x, Fraction) and x.denominator & (x.denominator - 1):
            return self.lo.to_fraction() <= x <= self.hi.to_fraction()
        x = as_dyadic(x)
        return self.lo <= x <= self.hi

    __contains__ = contains

    def sign(self) -> int:
        """+1 / -1 if the interval excludes zero on that side, else 0."""
        if self.lo.mantissa > 0:
            return 1
        if self.hi.mantissa < 0:
            return -1
        return 0

    def __neg__(self) -> RigorousInterval:
        return RigorousInterval(-self.hi, -self.lo)

    def __add__(self, other) -> RigorousInterval:
        if not isinstance(other, RigorousInterval):
            other = RigorousInterval.point(other)
        return RigorousInterval(self.lo + other.lo, self.hi + other.hi)

    __radd__ = __add__

    def __sub__(self, other) -> RigorousInterval:
        if not isinstance(other, RigorousInterval):
            other = RigorousInterval.point(other)
        return RigorousInterval(self.lo - other.hi, self.hi - other.lo)

    def __rsub__(self, other) -> RigorousInterval:
        return RigorousInterval.point(other) - self

    def __mul__(self, other) -> RigorousInterval:
        if not isinstance(other, RigorousInterval):
            c = as_dyadic(other)
            if c.mantissa >= 0:
                return RigorousInterval(self.lo * c, self.hi * c)
            return RigorousInterval(self.hi * c, self.lo * c)
        products = (self.lo * other.lo, self.lo * other.hi, self.hi * other.lo, self.hi * other.hi)
        return RigorousInterval(min(products), max(products))

    __rmul__ = __mul__

    def round_outward(self, bits: int) -> RigorousInterval:
        """Enlarge to endpoints on the grid ``2**-bits``."""
        lo = Dyadic(self.lo.scale2(bits).floor(), -bits)
        hi = Dyadic(self.hi.scale2(bits).ceil(), -bits)
        return RigorousInterval(lo, hi)


# -- pi ----------------------------------------------------------------------


def _atan_inv(x: int, w: int) -> tuple[int, int]:
    """floor-sum of atan(1/x) * 2**w and the number of terms summed."""
    power = (1 << w) // x
    x2 = x * x
    total = 0
    k = 0
    while power:
        term = power // (2 * k + 1)
        total += -term if k & 1 else term
        power //= x2
        k += 1
    return total, k


@lru_cache(maxsize=None)
def _pi_fixed(w: int) -> tuple[int, int]:
    """(lo, hi) integers with lo <= pi * 2**w <= hi, via Machin's formula."""
    a, na = _atan_inv(5, w)
    b, nb = _atan_inv(239, w)
    # each truncated term is off by < 1 ulp; the alternating tail is < 1 ulp
    err = 16 * (na + 2) + 4 * (nb + 2)
    mid = 16 * a - 4 * b
    return mid - err, mid + err


def pi_enclose(precision_bits: int) -> RigorousInterval:
    lo, hi = _pi_fixed(precision_bits + 16)
    return RigorousInterval(Dyadic(lo, -(precision_bits + 16)), Dyadic(hi, -(precision_bits + 16))).round_outward(
        precision_bits + 1
    )


# -- sin / cos on [0, pi/4] --------------------------------------------------


def _sin_cos_fixed(u: int, w: int) -> tuple[int, int, int]:
    """Fixed-point sin(u/2**w), cos(u/2**w) for 0 <= u/2**w < 1, with an ulp error bound."""
    one = 1 << w
    u2 = u * u
    scale2w = 1 << (2 * w)
    # sin
    term = u
    s = 0
    k = 0
    while term:
        s += -term if k & 1 else term
        k += 1
        term = term * u2 // (scale2w * (2 * k) * (2 * k + 1))
    ns = k
    # cos
    term = one
    c = 0
    k = 0
    while term:
        c += -term if k & 1 else term
        k += 1
        term = term * u2 // (scale2w * (2 * k - 1) * (2 * k))
    nc = k
    # every computed term is within 2 ulps of exact; the first dropped term is < 1 ulp
    err = 2 * max(ns, nc) + 3
    return s, c, err


def _reduce_angle(t: int, n: int) -> tuple[Fraction, bool, int, int]:
    """Reduce t*pi/n to y*pi with y in (0, 1/4].

    Returns (y, swap, cos_sign, sin_sign) such that
    cos(t pi/n) = cos_sign * (sin if swap else cos)(y pi), and likewise for sin.
    """
    x = Fraction(t % (2 * n), n)
    cs, ss = 1, 1
    if x >= 1:
        x -= 1
        cs, ss = -cs, -ss
    if x > Fraction(1, 2):
        x = 1 - x
        cs = -cs
    swap = False
    if x > Fraction(1, 4):
        x = Fraction(1, 2) - x
        swap = True
    return x, swap, cs, ss


def trig_enclose(k: int, j: int, n: int, precision_bits: int) -> tuple[RigorousInterval, RigorousInterval]:
    """Enclosures of cos(k*j*pi/n) and sin(k*j*pi/n).

    Widths are at most ``2**(1 - precision_bits)``; the four angles that are
    multiples of pi/2 come back as exact points.
    """
    if n < 1 or k < 0 or precision_bits < 1:
        raise ValueError("trig_enclose needs n >= 1, k >= 0, precision_bits >= 1")
    t = (k * j) % (2 * n)
    g = gcd(t, 2 * n)
    # key the cache on the reduced angle, many (k, j, n) share it
    return _trig_cached(t // g, (2 * n) // g, precision_bits)


@lru_cache(maxsize=65536)
def _trig_cached(t: int, two_n: int, precision_bits: int) -> tuple[RigorousInterval, RigorousInterval]:
    # angle = t * pi / (two_n / 2) = 2 t pi / two_n
    num, den = 2 * t, two_n
    if (2 * num) % den == 0:
        quarter = (2 * num // den) % 4
        cos_v, sin_v = ((1, 0), (0, 1), (-1, 0), (0, -1))[quarter]
        return RigorousInterval.point(cos_v), RigorousInterval.point(sin_v)

    y, swap, cs, ss = _reduce_angle(num, den)
    w = precision_bits + 24
    pi_lo, pi_hi = _pi_fixed(w)
    u_lo = pi_lo * y.numerator // y.denominator
    u_hi = -((-pi_hi * y.numerator) // y.denominator)
    s_lo, c_hi, e1 = _sin_cos_fixed(u_lo, w)
    s_hi, c_lo, e2 = _sin_cos_fixed(u_hi, w)
    err = max(e1, e2)
    # sin increasing, cos decreasing on [0, pi/2]
    sin_iv = RigorousInterval(Dyadic(s_lo - err, -w), Dyadic(s_hi + err, -w))
    cos_iv = RigorousInterval(Dyadic(c_lo - err, -w), Dyadic(c_hi + err, -w))
    if swap:
        cos_iv, sin_iv = sin_iv, cos_iv
    if cs < 0:
        cos_iv = -cos_iv
    if ss < 0:
        sin_iv = -sin_iv
    grid = precision_bits + 1
    return cos_iv.round_outward(grid), sin_iv.round_outward(grid)
