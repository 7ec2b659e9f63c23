"""Real and complex Kostlan ensembles, plus the expected real-zero count.

Randomness comes from NumPy's Philox generator, a counter-based PRNG keyed
here by ``(seed, stream_index)``. Each trial owns its own stream, so results
do not depend on the order or process in which trials run. Gaussians are
drawn with NumPy's ziggurat ``standard_normal`` and the snapped float values
become exact dyadic coefficients.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dyadic import Dyadic
from .errors import ParameterError
from .polynomials import ComplexPolynomial, RealPolynomial

__all__ = [
    "KostlanSampler",
    "sample_real_kostlan",
    "sample_complex_kostlan",
    "ek_expected_count",
    "kostlan_scales",
]

_U64 = (1 << 64) - 1


@dataclass(frozen=True)
class KostlanSampler:
    m: int
    seed: int
    stream_index: int = 0

    def __post_init__(self):
        if self.m < 1:
            raise ParameterError(f"Kostlan degree must be >= 1, got {self.m}")
        if not 0 <= self.seed <= _U64:
            raise ParameterError("seed must be an unsigned 64-bit integer")
        if not 0 <= self.stream_index <= _U64:
            raise ParameterError("stream_index must be an unsigned 64-bit integer")

    def generator(self) -> np.random.Generator:
        return np.random.Generator(np.random.Philox(key=(self.seed << 64) | self.stream_index))

    def stream(self, stream_index: int) -> KostlanSampler:
        return KostlanSampler(self.m, self.seed, stream_index)


def kostlan_scales(m: int, halve: bool = False) -> list[float]:
    """Standard deviations sqrt(C(m,k)) (or sqrt(C(m,k)/2)) in double precision."""
    scales = []
    for k in range(m + 1):
        if m <= 60:
            var = float(math.comb(m, k))
            if halve:
                var /= 2
            scales.append(math.sqrt(var))
        else:
            log_var = math.lgamma(m + 1) - math.lgamma(k + 1) - math.lgamma(m - k + 1)
            if halve:
                log_var -= math.log(2)
            scales.append(math.exp(0.5 * log_var))
    return scales


def sample_real_kostlan(sampler: KostlanSampler) -> RealPolynomial:
    gen = sampler.generator()
    scales = kostlan_scales(sampler.m)
    while True:
        z = gen.standard_normal(sampler.m + 1)
        coeffs = tuple(Dyadic.from_float(float(s * x)) for s, x in zip(scales, z))
        if coeffs[-1]:
            return RealPolynomial(coeffs)


def sample_complex_kostlan(sampler: KostlanSampler) -> ComplexPolynomial:
    """Coefficients a_k + i b_k with a_k, b_k ~ N(0, C(m,k)/2), drawn in the order a0, b0, a1, b1, ..."""
    gen = sampler.generator()
    m = sampler.m
    scales = kostlan_scales(m, halve=True)
    z = gen.standard_normal(2 * (m + 1))
    coeffs = [
        (Dyadic.from_float(float(s * z[2 * k])), Dyadic.from_float(float(s * z[2 * k + 1])))
        for k, s in enumerate(scales)
    ]
    while not coeffs[-1][0] and not coeffs[-1][1]:
        extra = gen.standard_normal(2)
        coeffs[-1] = (Dyadic.from_float(float(scales[-1] * extra[0])), Dyadic.from_float(float(scales[-1] * extra[1])))
    return ComplexPolynomial(tuple(coeffs))


def ek_expected_count(m: int, a: float = -math.inf, b: float = math.inf) -> float:
    """Expected number of real zeros in (a, b) of a degree-m real Kostlan polynomial."""
    if m < 1:
        raise ParameterError(f"m must be >= 1, got {m}")
    a, b = float(a), float(b)
    if math.isnan(a) or math.isnan(b) or not a < b:
        raise ParameterError(f"invalid interval ({a}, {b})")
    return math.sqrt(m) * ((math.atan(b) - math.atan(a)) / math.pi)
