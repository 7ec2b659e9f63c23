"""Certified zero counts for ``h(z) = eps*z**n + 2 Re q(z)``.

Every zero of h lies on one of the n lines ``Im z**n = 0``. On line j the
problem is a real univariate polynomial ``g_j``; floating-point roots of its
midpoint propose sample points, and interval evaluation certifies sign
alternations between them. The origin is shared by all lines and is only ever
counted through ``origin_is_zero``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence, Tuple

import numpy as np

from . import __version__
from .certify import DEFAULT_PRECISION_CAP, CertifiedSign, certified_signs, count_alternations, family_upper_bound
from .dyadic import Dyadic, as_dyadic
from .errors import CertificationError, DegeneratePolynomialError, ParameterError
from .polynomials import (
    ComplexPolynomial,
    LineRestriction,
    WilmshurstInstance,
    eval_real,
    restrict_to_line,
    round_up_dyadic,
)
from .sturm import sturm_chain, sturm_count

__all__ = [
    "LineCount",
    "ValenceCertificate",
    "float_root_estimate",
    "restriction_root_bound",
    "line_samples",
    "isolation_samples",
    "count_line_zeros",
    "certified_valence",
    "choose_epsilon",
    "DEFAULT_SCHEDULE",
    "BASE_PRECISION",
]

BASE_PRECISION = 64
DEFAULT_SCHEDULE: Tuple[Dyadic, ...] = tuple(Dyadic(1, -10 * t) for t in range(1, 7))
ORIGIN = Dyadic(0)
# bisection depth cap for exact root isolation (range 2^k needs about k + separation bits)
MAX_ISOLATION_DEPTH = 256


@dataclass(frozen=True)
class LineCount:
    j: int
    certified_lower: int
    float_estimate: int
    samples_used: Tuple[Dyadic, ...]
    signs: Tuple[CertifiedSign, ...] = ()

    def __post_init__(self):
        if self.certified_lower < 0:
            raise ValueError("negative zero count")


@dataclass(frozen=True)
class ValenceCertificate:
    instance: WilmshurstInstance
    per_line: Tuple[LineCount, ...]
    origin_is_zero: bool
    total_certified: int
    seed: Optional[int] = None
    version: str = __version__
    precision_bits: int = DEFAULT_PRECISION_CAP
    metadata: dict = field(default_factory=dict, compare=False)

    @property
    def n(self) -> int:
        return self.instance.n

    @property
    def m(self) -> int:
        return self.instance.m

    @property
    def float_total(self) -> int:
        return sum(lc.float_estimate for lc in self.per_line) + int(self.origin_is_zero)

    def check_bounds(self) -> None:
        """Raise if the total breaks a proven upper bound (that would mean an unsound count)."""
        n, m = self.instance.n, self.instance.m
        expected = sum(lc.certified_lower for lc in self.per_line) + int(self.origin_is_zero)
        if expected != self.total_certified:
            raise CertificationError(f"total {self.total_certified} != per-line sum {expected}")
        if self.total_certified > n * n:
            raise CertificationError(f"certified total {self.total_certified} exceeds n^2 = {n * n}")
        if self.total_certified > family_upper_bound(n, m):
            raise CertificationError(f"certified total {self.total_certified} exceeds n(m+2) = {n * (m + 2)}")
        for lc in self.per_line:
            if lc.certified_lower > n:
                raise CertificationError(f"line {lc.j} certifies {lc.certified_lower} > n zeros")


def float_root_estimate(restriction: LineRestriction) -> list[float]:
    """Approximate real roots of the midpoint polynomial (companion-matrix eigenvalues)."""
    if restriction.coefficients[-1].sign() == 0:
        raise DegeneratePolynomialError("leading coefficient interval contains 0")
    coeffs = [float(c.midpoint()) for c in reversed(restriction.coefficients)]
    if not all(math.isfinite(c) for c in coeffs):
        raise np.linalg.LinAlgError("coefficients overflow double precision")
    roots = np.roots(coeffs)
    if not np.all(np.isfinite(roots)):
        raise np.linalg.LinAlgError("non-finite eigenvalues")
    real = [float(z.real) for z in roots if abs(z.imag) < 1e-7 * (1.0 + abs(z.real))]
    return sorted(real)


def restriction_root_bound(restriction: LineRestriction) -> Dyadic:
    """Cauchy bound valid for every polynomial inside the coefficient enclosures."""
    lead = restriction.coefficients[-1]
    if lead.sign() == 0:
        raise DegeneratePolynomialError("leading coefficient interval contains 0")
    lead_min = min(abs(lead.lo), abs(lead.hi)).to_fraction()
    biggest = max((c.magnitude() for c in restriction.coefficients[:-1]), default=Dyadic(0)).to_fraction()
    return round_up_dyadic(1 + biggest / lead_min)


def _uniform_grid(bound: Dyadic, count: int) -> list[Dyadic]:
    b = bound.to_fraction()
    pts = []
    for i in range(count):
        pts.append(Dyadic.from_fraction(-b + 2 * b * i / (count - 1), rounding="down", bits=53))
    return pts


def line_samples(restriction: LineRestriction, bound: Optional[Dyadic] = None) -> Tuple[list[Dyadic], list[float]]:
    """Sample points -R, midpoints between consecutive root estimates, R.

    Returns ``(samples, estimates)``. Exact zero is never a sample. Falls back
    to a uniform grid of 4(n+1) points when root estimation fails.
    """
    R = restriction_root_bound(restriction) if bound is None else bound
    Rf = float(R)
    try:
        estimates = float_root_estimate(restriction)
    except (np.linalg.LinAlgError, ValueError):
        estimates = None
    if estimates is None:
        samples = _uniform_grid(R, 4 * (restriction.degree + 1))
        estimates = []
    else:
        inside = sorted({x for x in estimates if -Rf < x < Rf})
        points = [Dyadic.from_float(x) for x in inside]
        mids = [(a + b).scale2(-1) for a, b in zip(points, points[1:])]
        samples = [-R, *mids, R]
    samples = [s for s in samples if s]
    # midpoints of distinct floats are distinct, but stay defensive about ordering
    samples = sorted(set(samples))
    return samples, estimates


def isolation_samples(restriction: LineRestriction, bound: Dyadic) -> list[Dyadic]:
    """Points separating the distinct real roots of the midpoint polynomial in (-R, R).

    Exact Sturm bisection: intervals holding more than one root are split at
    dyadic midpoints (nudged off exact roots and off 0) until each holds at most one.
    Used when companion-matrix estimates are too coarse, typically when the
    roots span many orders of magnitude.
    """
    poly = restriction.midpoint_polynomial()
    chain = sturm_chain(poly)
    lo0, hi0 = -bound, bound
    points = {lo0, hi0}
    stack = [(lo0, hi0, sturm_count(poly, lo0, hi0, chain), 0)]
    while stack:
        lo, hi, count, depth = stack.pop()
        if count == 0:
            continue
        if count == 1 or depth >= MAX_ISOLATION_DEPTH:
            points.update((lo, hi))
            continue
        mid = (lo + hi).scale2(-1)
        nudge = (hi - lo).scale2(-10)
        # samples are never placed at 0 (the origin is handled separately)
        while not mid or not eval_real(poly, mid):
            mid = mid + nudge
            nudge = nudge.scale2(-1)
        left = sturm_count(poly, lo, mid, chain)
        stack.append((lo, mid, left, depth + 1))
        stack.append((mid, hi, count - left, depth + 1))
    return sorted(p for p in points if p)


def count_line_zeros(
    restriction: LineRestriction,
    max_precision_bits: int = DEFAULT_PRECISION_CAP,
    exclude_origin: bool = False,
) -> LineCount:
    """Certified lower bound (and float estimate) for the real zeros of one restriction.

    With ``exclude_origin`` the known root at r = 0 is not counted: sign flips
    between samples on opposite sides of 0 are ignored and float roots at 0
    are dropped from the estimate. If the float-proposed samples certify fewer
    alternations than the midpoint polynomial has distinct real roots, exact
    Sturm isolation proposes a second sample set and the better one is kept.
    """
    bound = restriction_root_bound(restriction)
    barrier = ORIGIN if exclude_origin else None
    samples, estimates = line_samples(restriction, bound)
    signs = certified_signs(restriction, samples, max_precision_bits)
    lower = count_alternations(samples, signs, barrier)

    midpoint = restriction.midpoint_polynomial()
    distinct = sturm_count(midpoint, -bound, bound)
    if exclude_origin and not eval_real(midpoint, ORIGIN):
        distinct -= 1
    if lower < distinct:
        alt_samples = isolation_samples(restriction, bound)
        alt_signs = certified_signs(restriction, alt_samples, max_precision_bits)
        alt_lower = count_alternations(alt_samples, alt_signs, barrier)
        if alt_lower > lower:
            samples, signs, lower = alt_samples, alt_signs, alt_lower

    if exclude_origin:
        scale = max(1.0, max((abs(x) for x in estimates), default=1.0))
        estimates = [x for x in estimates if abs(x) > 1e-9 * scale]
    return LineCount(restriction.j, lower, len(estimates), tuple(samples), tuple(signs))


def certified_valence(
    inst: WilmshurstInstance,
    max_precision_bits: int = DEFAULT_PRECISION_CAP,
    seed: Optional[int] = None,
) -> ValenceCertificate:
    if not isinstance(inst, WilmshurstInstance):
        raise ParameterError("certified_valence needs a WilmshurstInstance")
    # h(0) = 2 a_0 exactly
    origin_is_zero = not inst.q.coefficients[0][0]
    per_line = []
    for j in range(inst.n):
        restriction = restrict_to_line(inst, j, min(BASE_PRECISION, max_precision_bits))
        per_line.append(count_line_zeros(restriction, max_precision_bits, exclude_origin=origin_is_zero))
    total = sum(lc.certified_lower for lc in per_line) + int(origin_is_zero)
    cert = ValenceCertificate(inst, tuple(per_line), origin_is_zero, total, seed, __version__, max_precision_bits)
    cert.check_bounds()
    return cert


def choose_epsilon(
    q: ComplexPolynomial,
    n: int,
    schedule: Sequence = DEFAULT_SCHEDULE,
    max_precision_bits: int = DEFAULT_PRECISION_CAP,
    seed: Optional[int] = None,
) -> Tuple[Dyadic, ValenceCertificate]:
    """Best epsilon from ``schedule`` by certified total; ties go to the larger epsilon."""
    if not schedule:
        raise ParameterError("epsilon schedule is empty")
    best: Optional[Tuple[Dyadic, ValenceCertificate]] = None
    for eps in schedule:
        eps = as_dyadic(eps)
        if eps <= 0:
            raise ParameterError(f"schedule entries must be positive, got {eps}")
        cert = certified_valence(WilmshurstInstance(n, q.degree, eps, q), max_precision_bits, seed)
        if best is None:
            best = (eps, cert)
            continue
        total, best_total = cert.total_certified, best[1].total_certified
        if total > best_total or (total == best_total and eps > best[0]):
            best = (eps, cert)
    return best
