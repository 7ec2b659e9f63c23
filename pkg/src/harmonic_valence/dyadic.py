"""Exact dyadic rationals ``mantissa * 2**exponent``.

Dyadics are closed under ``+``, ``-`` and ``*``, which is all the
certification path needs. Division is only supported through
:func:`Dyadic.from_fraction` with explicit directed rounding.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from numbers import Rational

__all__ = ["Dyadic", "DyadicParseError", "as_dyadic"]


class DyadicParseError(ValueError):
    pass


def _trailing_zeros(x: int) -> int:
    return (x & -x).bit_length() - 1


class Dyadic:
    """An exact number ``mantissa * 2**exponent`` in canonical form.

    The mantissa is odd, or zero with exponent 0. Instances are immutable
    and hashable; equal values compare and hash equal to the corresponding
    ``int`` / ``Fraction``.
    """

    __slots__ = ("mantissa", "exponent")

    def __init__(self, mantissa: int = 0, exponent: int = 0):
        if mantissa == 0:
            exponent = 0
        else:
            tz = _trailing_zeros(mantissa)
            if tz:
                mantissa >>= tz
                exponent += tz
        object.__setattr__(self, "mantissa", mantissa)
        object.__setattr__(self, "exponent", exponent)

    def __setattr__(self, name, value):
        raise AttributeError("Dyadic is immutable")

    def __reduce__(self):
        return (Dyadic, (self.mantissa, self.exponent))

    # -- constructors -----------------------------------------------------

    @classmethod
    def from_float(cls, x: float) -> Dyadic:
        """Bit-exact reinterpretation of a finite float."""
        if not math.isfinite(x):
            raise ValueError(f"cannot represent {x!r} as a dyadic")
        m, e = math.frexp(x)
        # 53 significant bits always suffice for a double
        return cls(int(m * (1 << 53)), e - 53)

    @classmethod
    def from_fraction(cls, x: Rational, rounding: str = "exact", bits: int = 64) -> Dyadic:
        """Convert a rational.

        ``rounding="exact"`` requires a power-of-two denominator. ``"down"``
        and ``"up"`` round to a multiple of ``2**-bits`` relative to the
        leading bit of ``x`` (so ``bits`` significant bits).
        """
        x = Fraction(x)
        num, den = x.numerator, x.denominator
        if den & (den - 1) == 0:
            return cls(num, -(den.bit_length() - 1))
        if rounding == "exact":
            raise ValueError(f"{x} is not a dyadic rational")
        # scale so the quotient carries `bits` significant bits
        shift = bits - (abs(num).bit_length() - den.bit_length()) + 1
        if shift >= 0:
            q, r = divmod(num << shift, den)
        else:
            q, r = divmod(num, den << -shift)
        # divmod floors, so q is the round-down result
        if rounding == "up" and r:
            q += 1
        elif rounding not in ("down", "up"):
            raise ValueError(f"unknown rounding mode {rounding!r}")
        return cls(q, -shift)

    @classmethod
    def parse(cls, text: str) -> Dyadic:
        """Parse ``"m*2^e"``, ``"2^e"``, ``"-2^e"``, integers, or exact decimals/fractions."""
        s = text.strip().replace(" ", "").replace("−", "-")
        match = re.fullmatch(r"([+-]?\d+)\*2\^([+-]?\d+)", s)
        if match:
            return cls(int(match.group(1)), int(match.group(2)))
        match = re.fullmatch(r"([+-]?)2\^([+-]?\d+)", s)
        if match:
            return cls(-1 if match.group(1) == "-" else 1, int(match.group(2)))
        try:
            value = Fraction(s)
        except (ValueError, ZeroDivisionError):
            raise DyadicParseError(f"not a dyadic literal: {text!r}") from None
        try:
            return cls.from_fraction(value)
        except ValueError:
            raise DyadicParseError(f"{text!r} is not exactly representable as a dyadic") from None

    # -- conversions ------------------------------------------------------

    def __str__(self) -> str:
        return f"{self.mantissa}*2^{self.exponent}"

    def __repr__(self) -> str:
        return f"Dyadic({self.mantissa}, {self.exponent})"

    def to_fraction(self) -> Fraction:
        if self.exponent >= 0:
            return Fraction(self.mantissa << self.exponent)
        return Fraction(self.mantissa, 1 << -self.exponent)

    def __float__(self) -> float:
        m, e = self.mantissa, self.exponent
        excess = m.bit_length() - 60
        if excess > 0:
            # keep enough bits for correct-ish rounding, avoid int->float overflow
            m >>= excess
            e += excess
        try:
            return math.ldexp(float(m), e)
        except OverflowError:
            return math.copysign(math.inf, m)

    def __int__(self) -> int:
        if self.exponent >= 0:
            return self.mantissa << self.exponent
        # truncate toward zero like int(float)
        q = abs(self.mantissa) >> -self.exponent
        return q if self.mantissa >= 0 else -q

    def floor(self) -> int:
        if self.exponent >= 0:
            return self.mantissa << self.exponent
        return self.mantissa >> -self.exponent

    def ceil(self) -> int:
        return -((-self).floor())

    # -- predicates -------------------------------------------------------

    def sign(self) -> int:
        return (self.mantissa > 0) - (self.mantissa < 0)

    def is_zero(self) -> bool:
        return self.mantissa == 0

    def __bool__(self) -> bool:
        return self.mantissa != 0

    # -- arithmetic -------------------------------------------------------

    def __neg__(self) -> Dyadic:
        return Dyadic(-self.mantissa, self.exponent)

    def __pos__(self) -> Dyadic:
        return self

    def __abs__(self) -> Dyadic:
        return self if self.mantissa >= 0 else Dyadic(-self.mantissa, self.exponent)

    def __add__(self, other) -> Dyadic:
        other = _coerce(other)
        if other is NotImplemented:
            return other
        e1, e2 = self.exponent, other.exponent
        if e1 <= e2:
            return Dyadic(self.mantissa + (other.mantissa << (e2 - e1)), e1)
        return Dyadic((self.mantissa << (e1 - e2)) + other.mantissa, e2)

    __radd__ = __add__

    def __sub__(self, other) -> Dyadic:
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + Dyadic(-other.mantissa, other.exponent)

    def __rsub__(self, other) -> Dyadic:
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other) -> Dyadic:
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return Dyadic(self.mantissa * other.mantissa, self.exponent + other.exponent)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> Dyadic:
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        return Dyadic(self.mantissa**k, self.exponent * k)

    def scale2(self, k: int) -> Dyadic:
        """Multiply by ``2**k`` exactly."""
        return Dyadic(self.mantissa, self.exponent + k) if self.mantissa else self

    # -- comparison -------------------------------------------------------

    def _cmp(self, other: Dyadic) -> int:
        e1, e2 = self.exponent, other.exponent
        if e1 <= e2:
            d = self.mantissa - (other.mantissa << (e2 - e1))
        else:
            d = (self.mantissa << (e1 - e2)) - other.mantissa
        return (d > 0) - (d < 0)

    def __eq__(self, other) -> bool:
        if isinstance(other, Dyadic):
            return self.mantissa == other.mantissa and self.exponent == other.exponent
        coerced = _coerce(other)
        if coerced is NotImplemented:
            if isinstance(other, float):
                return math.isfinite(other) and self == Dyadic.from_float(other)
            return NotImplemented
        return self.mantissa == coerced.mantissa and self.exponent == coerced.exponent

    def __hash__(self) -> int:
        return hash(self.to_fraction())

    def __lt__(self, other) -> bool:
        other = _coerce(other)
        return NotImplemented if other is NotImplemented else self._cmp(other) < 0

    def __le__(self, other) -> bool:
        other = _coerce(other)
        return NotImplemented if other is NotImplemented else self._cmp(other) <= 0

    def __gt__(self, other) -> bool:
        other = _coerce(other)
        return NotImplemented if other is NotImplemented else self._cmp(other) > 0

    def __ge__(self, other) -> bool:
        other = _coerce(other)
        return NotImplemented if other is NotImplemented else self._cmp(other) >= 0


def _coerce(x):
    if isinstance(x, Dyadic):
        return x
    if isinstance(x, int):
        return Dyadic(x, 0)
    if isinstance(x, Fraction) and x.denominator & (x.denominator - 1) == 0:
        return Dyadic.from_fraction(x)
    return NotImplemented


def as_dyadic(x) -> Dyadic:
    """Coerce ints, floats (bit-exact), dyadic Fractions and literals."""
    if isinstance(x, Dyadic):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a number here")
    if isinstance(x, int):
        return Dyadic(x)
    if isinstance(x, float):
        return Dyadic.from_float(x)
    if isinstance(x, Fraction):
        return Dyadic.from_fraction(x)
    if isinstance(x, str):
        return Dyadic.parse(x)
    raise TypeError(f"cannot convert {type(x).__name__} to Dyadic")


ZERO = Dyadic(0)
ONE = Dyadic(1)
