"""Exact polynomials, the harmonic instance ``eps*z**n + q(z) + conj(q(z))``,
and its restriction to the lines where ``Im z**n = 0``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence, Tuple

from .dyadic import Dyadic, as_dyadic
from .errors import DegeneratePolynomialError, ParameterError
from .intervals import RigorousInterval, trig_enclose

__all__ = [
    "RealPolynomial",
    "ComplexPolynomial",
    "WilmshurstInstance",
    "LineRestriction",
    "eval_real",
    "eval_harmonic",
    "restrict_to_line",
    "derivative",
    "cauchy_root_bound",
    "round_up_dyadic",
]

ZERO = Dyadic(0)


@dataclass(frozen=True)
class RealPolynomial:
    """``sum(coefficients[k] * x**k)``.

    A zero leading coefficient is only accepted with ``degenerate=True``
    (the zero polynomial ``(0,)`` is always accepted).
    """

    coefficients: Tuple[Dyadic, ...]
    degenerate: bool = False

    def __post_init__(self):
        coeffs = tuple(as_dyadic(c) for c in self.coefficients)
        if not coeffs:
            coeffs = (ZERO,)
        object.__setattr__(self, "coefficients", coeffs)
        if len(coeffs) > 1 and not coeffs[-1] and not self.degenerate:
            raise DegeneratePolynomialError("leading coefficient is zero; pass degenerate=True to allow it")

    @classmethod
    def from_values(cls, values: Sequence, degenerate: bool = False) -> RealPolynomial:
        return cls(tuple(as_dyadic(v) for v in values), degenerate)

    def degree(self) -> int:
        """Largest k with a nonzero coefficient; -1 for the zero polynomial."""
        for k in range(len(self.coefficients) - 1, -1, -1):
            if self.coefficients[k]:
                return k
        return -1

    def is_zero(self) -> bool:
        return self.degree() < 0

    def __call__(self, x) -> Dyadic:
        return eval_real(self, as_dyadic(x))

    def to_floats(self) -> list[float]:
        return [float(c) for c in self.coefficients]


@dataclass(frozen=True)
class ComplexPolynomial:
    """``sum((a_k + i b_k) z**k)`` with coefficient pairs ``(a_k, b_k)``."""

    coefficients: Tuple[Tuple[Dyadic, Dyadic], ...]

    def __post_init__(self):
        coeffs = tuple((as_dyadic(a), as_dyadic(b)) for a, b in self.coefficients)
        if not coeffs:
            raise ParameterError("complex polynomial needs at least one coefficient")
        a, b = coeffs[-1]
        if len(coeffs) > 1 and not a and not b:
            raise DegeneratePolynomialError("leading coefficient of q is zero")
        object.__setattr__(self, "coefficients", coeffs)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def real_parts(self) -> list[Dyadic]:
        return [a for a, _ in self.coefficients]

    @property
    def imag_parts(self) -> list[Dyadic]:
        return [b for _, b in self.coefficients]

    def to_complex(self) -> list[complex]:
        return [complex(float(a), float(b)) for a, b in self.coefficients]


@dataclass(frozen=True)
class WilmshurstInstance:
    """``h(z) = epsilon * z**n + q(z) + conj(q(z))`` with deg q = m < n."""

    n: int
    m: int
    epsilon: Dyadic
    q: ComplexPolynomial

    def __post_init__(self):
        object.__setattr__(self, "epsilon", as_dyadic(self.epsilon))
        if not isinstance(self.q, ComplexPolynomial):
            object.__setattr__(self, "q", ComplexPolynomial(tuple(self.q)))
        if self.m < 1:
            raise ParameterError(f"m must be >= 1, got m={self.m}")
        if self.n <= self.m:
            raise ParameterError(f"need n > m, got n={self.n}, m={self.m}")
        if self.epsilon <= 0:
            raise ParameterError(f"epsilon must be positive, got {self.epsilon}")
        if self.q.degree != self.m:
            raise ParameterError(f"q has degree {self.q.degree}, expected m={self.m}")

    def with_epsilon(self, epsilon) -> WilmshurstInstance:
        return WilmshurstInstance(self.n, self.m, as_dyadic(epsilon), self.q)


@dataclass(frozen=True)
class LineRestriction:
    """Interval coefficients of ``g_j(r) = eps*r**n + f_j(r)`` on the line at angle j*pi/n.

    ``instance`` is kept so certification can re-restrict at higher trig
    precision; hand-built restrictions leave it ``None``.
    """

    j: int
    n: int
    coefficients: Tuple[RigorousInterval, ...]
    precision_bits: int = 0
    instance: Optional[WilmshurstInstance] = field(default=None, compare=False, repr=False)

    @property
    def theta(self) -> Tuple[int, int]:
        """Angle as the pair (j, n), meaning j*pi/n."""
        return (self.j, self.n)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def is_exact(self) -> bool:
        return all(c.is_point for c in self.coefficients)

    @classmethod
    def from_points(cls, values: Sequence, j: int = 0, n: Optional[int] = None) -> LineRestriction:
        """A restriction with exact point coefficients (testing and hand-built examples)."""
        coeffs = tuple(v if isinstance(v, RigorousInterval) else RigorousInterval.point(v) for v in values)
        return cls(j, len(coeffs) - 1 if n is None else n, coeffs)

    def midpoint_polynomial(self) -> RealPolynomial:
        return RealPolynomial(tuple(c.midpoint() for c in self.coefficients), degenerate=True)

    def refined(self, precision_bits: int) -> LineRestriction:
        if self.instance is None:
            return self
        return restrict_to_line(self.instance, self.j, precision_bits)


def eval_real(poly: RealPolynomial, x: Dyadic) -> Dyadic:
    acc = ZERO
    for c in reversed(poly.coefficients):
        acc = acc * x + c
    return acc


def _cmul(a: Tuple[Dyadic, Dyadic], b: Tuple[Dyadic, Dyadic]) -> Tuple[Dyadic, Dyadic]:
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def eval_harmonic(inst: WilmshurstInstance, z) -> Tuple[Dyadic, Dyadic]:
    """Exact ``(Re h(z), Im h(z))`` for a dyadic point ``z = (re, im)``."""
    z = (as_dyadic(z[0]), as_dyadic(z[1]))
    power = (Dyadic(1), ZERO)
    re_q = ZERO
    for k in range(inst.n):
        if k <= inst.m:
            a, b = inst.q.coefficients[k]
            # Re(c_k z^k) = a_k Re z^k - b_k Im z^k
            re_q = re_q + a * power[0] - b * power[1]
        power = _cmul(power, z)
    return inst.epsilon * power[0] + re_q.scale2(1), inst.epsilon * power[1]


def restrict_to_line(inst: WilmshurstInstance, j: int, precision_bits: int = 64) -> LineRestriction:
    """Coefficients of ``eps*r**n + 2*sum((-1)**j * (a_k cos(k t) - b_k sin(k t)) r**k)``, t = j*pi/n.

    Along ``z = r e^{i t}`` we have ``Re z**n = (-1)**j r**n``; multiplying the
    real part of h by ``(-1)**j`` makes the leading term exactly ``eps*r**n``.
    """
    n = inst.n
    if not 0 <= j < n:
        raise ParameterError(f"line index j={j} outside 0..{n - 1}")
    if precision_bits < 1:
        raise ParameterError("precision_bits must be positive")
    sign = -1 if j & 1 else 1
    coeffs = []
    for k, (a, b) in enumerate(inst.q.coefficients):
        cos_iv, sin_iv = trig_enclose(k, j, n, precision_bits)
        term = cos_iv * a - sin_iv * b
        coeffs.append(term * (2 * sign))
    zero = RigorousInterval.point(0)
    coeffs.extend(zero for _ in range(inst.m + 1, n))
    coeffs.append(RigorousInterval.point(inst.epsilon))
    return LineRestriction(j, n, tuple(coeffs), precision_bits, inst)


def derivative(poly: RealPolynomial) -> RealPolynomial:
    coeffs = poly.coefficients
    if len(coeffs) <= 1:
        return RealPolynomial((ZERO,))
    return RealPolynomial(tuple(c * k for k, c in enumerate(coeffs) if k), degenerate=poly.degenerate)


def round_up_dyadic(x, bits: int = 53) -> Dyadic:
    """Smallest dyadic with ``bits`` significant bits that is >= x (x exact if already dyadic)."""
    return Dyadic.from_fraction(x, rounding="up", bits=bits)


def cauchy_root_bound(poly: RealPolynomial) -> Dyadic:
    """``1 + max_k |c_k| / |c_deg|``, rounded up to a dyadic."""
    d = poly.degree()
    if d < 1 or len(poly.coefficients) - 1 != d:
        raise DegeneratePolynomialError("Cauchy bound needs degree >= 1 and a nonzero leading coefficient")
    lead = abs(poly.coefficients[d]).to_fraction()
    biggest = max(abs(c) for c in poly.coefficients[:d]).to_fraction()
    return round_up_dyadic(1 + biggest / lead)
