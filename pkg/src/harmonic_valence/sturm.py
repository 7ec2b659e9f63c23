"""Exact real-root counting with Sturm chains over the integers.

Dyadic coefficients are scaled by a common power of two so the whole chain
lives in ``int``. Pseudo-remainders are sign-corrected so every chain member
is a *positive* multiple of the classical Sturm remainder, and each member is
made primitive to keep coefficient growth in check.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce
from typing import List, Optional, Union

from .dyadic import Dyadic
from .errors import ZeroPolynomialError
from .polynomials import RealPolynomial

__all__ = ["sturm_chain", "sturm_count", "integer_coefficients", "sign_variations"]

Endpoint = Union[Dyadic, Fraction, int, float, None]


def integer_coefficients(poly: RealPolynomial) -> List[int]:
    """Coefficients times a positive power of two, trailing zeros stripped."""
    coeffs = list(poly.coefficients)
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    if not coeffs:
        raise ZeroPolynomialError("zero polynomial has no finite root count")
    emin = min(c.exponent for c in coeffs if c)
    return [c.mantissa << (c.exponent - emin) if c else 0 for c in coeffs]


def _primitive(p: List[int]) -> List[int]:
    g = reduce(math.gcd, p)
    return [c // g for c in p] if g > 1 else p


def _strip(p: List[int]) -> List[int]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _positive_prem(a: List[int], b: List[int]) -> List[int]:
    """Remainder of ``lc(b)**s * a`` by ``b`` with the sign of ``lc(b)**s`` removed."""
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    steps = 0
    while len(r) - 1 >= db and r:
        lead = r[-1]
        shift = len(r) - 1 - db
        r = [c * lb for c in r]
        for i, bc in enumerate(b):
            r[i + shift] -= lead * bc
        r.pop()  # leading term cancels exactly
        _strip(r)
        steps += 1
    if lb < 0 and steps & 1:
        r = [-c for c in r]
    return r


def sturm_chain(poly: RealPolynomial) -> List[List[int]]:
    p0 = _primitive(integer_coefficients(poly))
    chain = [p0]
    if len(p0) == 1:
        return chain
    p1 = _primitive([k * c for k, c in enumerate(p0) if k])
    chain.append(p1)
    while len(chain[-1]) > 1:
        rem = _positive_prem(chain[-2], chain[-1])
        if not rem:
            break
        chain.append(_primitive([-c for c in rem]))
    return chain


def _eval_homogeneous(p: List[int], u: int, v: int) -> int:
    """``p(u/v) * v**deg`` for ``v > 0``; same sign as ``p(u/v)``."""
    acc = p[-1]
    vpow = 1
    for c in reversed(p[:-1]):
        vpow *= v
        acc = acc * u + c * vpow
    return acc


def _sign_right_of(p: List[int], x: Optional[Fraction], side: int) -> int:
    """Sign of p just to the right of x (x=None with side=+1/-1 means +/- infinity)."""
    if x is None:
        lead = (p[-1] > 0) - (p[-1] < 0)
        return lead if side > 0 or (len(p) - 1) % 2 == 0 else -lead
    u, v = x.numerator, x.denominator
    q = p
    while q:
        val = _eval_homogeneous(q, u, v)
        if val:
            return (val > 0) - (val < 0)
        # p(x) = 0: the sign just right of x is that of the first nonzero derivative
        q = [k * c for k, c in enumerate(q) if k]
    return 0


def sign_variations(signs) -> int:
    last = 0
    count = 0
    for s in signs:
        if s == 0:
            continue
        if last and s != last:
            count += 1
        last = s
    return count


def _as_endpoint(x: Endpoint, default_side: int):
    if x is None:
        return None, default_side
    if isinstance(x, float):
        if math.isinf(x):
            return None, 1 if x > 0 else -1
        return Fraction(x), 0
    if isinstance(x, Dyadic):
        return x.to_fraction(), 0
    return Fraction(x), 0


def sturm_count(poly: RealPolynomial, a: Endpoint = None, b: Endpoint = None, chain=None) -> int:
    """Number of distinct real roots in ``(a, b]``.

    ``None`` or ``+-inf`` endpoints mean the corresponding end of the real
    line. Endpoints that are themselves roots are handled exactly (signs are
    taken immediately to the right of each endpoint), so no perturbation is
    needed.
    """
    fa, side_a = _as_endpoint(a, -1)
    fb, side_b = _as_endpoint(b, 1)
    if fa is not None and fb is not None and fa >= fb:
        raise ValueError(f"need a < b, got a={a}, b={b}")
    if fa is None and side_a > 0:
        raise ValueError("left endpoint cannot be +inf")
    if chain is None:
        chain = sturm_chain(poly)
    va = sign_variations(_sign_right_of(p, fa, side_a) for p in chain)
    vb = sign_variations(_sign_right_of(p, fb, side_b) for p in chain)
    return va - vb
