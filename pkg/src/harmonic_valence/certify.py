"""Certified signs, sign-alternation lower bounds and Descartes-type upper bounds."""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .dyadic import Dyadic, as_dyadic
from .errors import ParameterError, ZeroPolynomialError
from .intervals import RigorousInterval, trig_enclose
from .polynomials import LineRestriction, RealPolynomial
from .sturm import sturm_count

__all__ = [
    "CertifiedSign",
    "POSITIVE",
    "NEGATIVE",
    "trig_enclose",
    "interval_eval",
    "certified_sign",
    "certified_signs",
    "count_alternations",
    "sign_change_lower_bound",
    "sturm_count",
    "descartes_positive_bound",
    "descartes_sign_counts",
    "family_upper_bound",
    "linear_upper_conjecture_value",
    "DEFAULT_PRECISION_CAP",
]

DEFAULT_PRECISION_CAP = 4096


@dataclass(frozen=True)
class CertifiedSign:
    """Sign of a value enclosed by an interval: +1, -1, or 0 for undetermined."""

    value: int
    width: Optional[Dyadic] = None

    @property
    def is_strict(self) -> bool:
        return self.value != 0

    @property
    def symbol(self) -> str:
        return {1: "+", -1: "-", 0: "?"}[self.value]

    @classmethod
    def undetermined(cls, width: Dyadic) -> CertifiedSign:
        return cls(0, width)

    @classmethod
    def from_symbol(cls, s: str) -> CertifiedSign:
        s = s.replace("−", "-")
        if s == "+":
            return POSITIVE
        if s == "-":
            return NEGATIVE
        if s == "?":
            return cls(0)
        raise ValueError(f"unknown sign symbol {s!r}")

    def __str__(self) -> str:
        return self.symbol


POSITIVE = CertifiedSign(1)
NEGATIVE = CertifiedSign(-1)


def interval_eval(restriction: LineRestriction, r) -> RigorousInterval:
    """Interval Horner: encloses g(r) for every coefficient vector inside the enclosures."""
    r = as_dyadic(r)
    negative = r.mantissa < 0
    coeffs = restriction.coefficients
    lo = coeffs[-1].lo
    hi = coeffs[-1].hi
    for c in reversed(coeffs[:-1]):
        # [lo, hi] * r, endpoints swap for negative r
        if negative:
            lo, hi = hi * r, lo * r
        else:
            lo, hi = lo * r, hi * r
        lo = lo + c.lo
        hi = hi + c.hi
    return RigorousInterval(lo, hi)


def certified_sign(
    restriction: LineRestriction, r, max_precision_bits: int = DEFAULT_PRECISION_CAP
) -> CertifiedSign:
    """Strict sign of g(r) when the enclosure excludes 0.

    Trig precision is doubled (re-restricting from the instance) until the sign
    is resolved or ``max_precision_bits`` would be exceeded. Exact-coefficient
    restrictions are evaluated once: more precision cannot help them.
    """
    iv = interval_eval(restriction, r)
    s = iv.sign()
    if s:
        return POSITIVE if s > 0 else NEGATIVE
    if restriction.instance is None or restriction.is_exact:
        return CertifiedSign.undetermined(iv.width())
    bits = max(restriction.precision_bits, 32)
    while bits * 2 <= max_precision_bits:
        bits *= 2
        iv = interval_eval(restriction.refined(bits), r)
        s = iv.sign()
        if s:
            return POSITIVE if s > 0 else NEGATIVE
    return CertifiedSign.undetermined(iv.width())


def certified_signs(
    restriction: LineRestriction, samples: Sequence, max_precision_bits: int = DEFAULT_PRECISION_CAP
) -> List[CertifiedSign]:
    return [certified_sign(restriction, r, max_precision_bits) for r in samples]


def count_alternations(samples: Sequence[Dyadic], signs: Sequence[CertifiedSign], barrier: Optional[Dyadic] = None) -> int:
    """Adjacent strict sign flips; pairs straddling ``barrier`` are not counted.

    The barrier lets callers exclude a root known to sit exactly at that point
    (the origin, when h(0) = 0) from every line's count.
    """
    count = 0
    for i in range(len(samples) - 1):
        s0, s1 = signs[i].value, signs[i + 1].value
        if s0 == 0 or s1 == 0 or s0 == s1:
            continue
        if barrier is not None and samples[i] < barrier < samples[i + 1]:
            continue
        count += 1
    return count


def _check_increasing(samples: Sequence[Dyadic]) -> None:
    for a, b in zip(samples, samples[1:]):
        if not a < b:
            raise ParameterError("samples must be strictly increasing")


def sign_change_lower_bound(
    restriction: LineRestriction,
    samples: Sequence,
    max_precision_bits: int = DEFAULT_PRECISION_CAP,
    barrier: Optional[Dyadic] = None,
) -> int:
    """Certified lower bound on the zeros of g in (min samples, max samples).

    Each adjacent pair with certified opposite signs brackets a zero of every
    polynomial consistent with the coefficient enclosures.
    """
    samples = [as_dyadic(s) for s in samples]
    _check_increasing(samples)
    signs = certified_signs(restriction, samples, max_precision_bits)
    return count_alternations(samples, signs, barrier)


def _sign_changes(values: Sequence[int]) -> int:
    nonzero = [v for v in values if v]
    return sum(1 for a, b in zip(nonzero, nonzero[1:]) if (a > 0) != (b > 0))


def descartes_positive_bound(poly: RealPolynomial) -> int:
    """Sign changes in the nonzero coefficients: bounds positive roots with multiplicity."""
    if poly.is_zero():
        raise ZeroPolynomialError("Descartes bound of the zero polynomial")
    return _sign_changes([c.sign() for c in poly.coefficients])


def descartes_sign_counts(poly: RealPolynomial) -> Tuple[int, int, int]:
    """``(s_plus, s_minus, s_zero)``: sign changes of f(r), of f(-r), and the multiplicity of 0."""
    if poly.is_zero():
        raise ZeroPolynomialError("Descartes counts of the zero polynomial")
    signs = [c.sign() for c in poly.coefficients]
    s_zero = next(k for k, s in enumerate(signs) if s)
    s_plus = _sign_changes(signs)
    s_minus = _sign_changes([-s if k & 1 else s for k, s in enumerate(signs)])
    return s_plus, s_minus, s_zero


def linear_upper_conjecture_value(n: int, m: int) -> int:
    """``2m(n-1) + n``, the conjectured general upper bound this family is compared against."""
    return 2 * m * (n - 1) + n


def family_upper_bound(n: int, m: int) -> int:
    """``n(m+2)``: at most m+2 zeros on each of the n lines, by Descartes' rule."""
    if m < 1 or n <= m:
        raise ParameterError(f"need n > m >= 1, got n={n}, m={m}")
    bound = n * (m + 2)
    if n >= 4 and m >= 2:
        assert bound <= linear_upper_conjecture_value(n, m)
    return bound
