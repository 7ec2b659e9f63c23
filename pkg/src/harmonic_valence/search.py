"""Witness search: random restarts over complex Kostlan q plus hill climbing,
and independent re-verification of certificates.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt
from typing import Optional, Sequence, Tuple, Union

import numpy as np

from .certify import DEFAULT_PRECISION_CAP, certified_sign, count_alternations
from .dyadic import Dyadic
from .ensembles import KostlanSampler, kostlan_scales, sample_complex_kostlan
from .errors import DegeneratePolynomialError, ParameterError
from .polynomials import ComplexPolynomial, WilmshurstInstance, restrict_to_line
from .valence import BASE_PRECISION, DEFAULT_SCHEDULE, ValenceCertificate, certified_valence, choose_epsilon

__all__ = [
    "SearchReport",
    "target_valence",
    "wilmshurst_conjecture_value",
    "hunt_witness",
    "local_refine",
    "verify_certificate",
    "REFINE_STREAM",
    "DEFAULT_SIGMA_SCALE",
]

# stream index reserved for hill-climbing randomness, far from trial streams
REFINE_STREAM = 1 << 63
# initial step size as a fraction of each coefficient's ensemble standard deviation
DEFAULT_SIGMA_SCALE = 0.1


def _check_nm(n: int, m: int) -> None:
    if m < 1 or n <= m:
        raise ParameterError(f"need n > m >= 1, got n={n}, m={m}")


def target_valence(n: int, m: int) -> int:
    """ceil(n * sqrt(m)) in exact integer arithmetic."""
    _check_nm(n, m)
    v = isqrt(n * n * m)
    return v if v * v == n * n * m else v + 1


def wilmshurst_conjecture_value(n: int, m: int) -> int:
    _check_nm(n, m)
    return 3 * n - 2 + m * (m - 1)


@dataclass(frozen=True)
class SearchReport:
    n: int
    m: int
    target: int
    best_certificate: ValenceCertificate
    trials_used: int
    improvement_steps: int
    achieved: bool
    seed: int
    budget: int

    @property
    def best_total(self) -> int:
        return self.best_certificate.total_certified

    @property
    def stretch_target(self) -> int:
        return self.n * self.m

    @property
    def stretch_reached(self) -> bool:
        return self.best_total >= self.stretch_target


def _refine_with_certificate(
    inst: WilmshurstInstance,
    steps: int,
    rng: np.random.Generator,
    schedule: Sequence = DEFAULT_SCHEDULE,
    max_precision_bits: int = DEFAULT_PRECISION_CAP,
    seed: Optional[int] = None,
    sigma_scale: float = DEFAULT_SIGMA_SCALE,
) -> Tuple[WilmshurstInstance, ValenceCertificate]:
    if steps < 1:
        raise ParameterError("local_refine needs steps >= 1")
    if not sigma_scale > 0:
        raise ParameterError("sigma_scale must be positive")
    m, n = inst.m, inst.n
    cert = certified_valence(inst, max_precision_bits, seed)
    sigma0 = [sigma_scale * s for s in kostlan_scales(m, halve=True)]
    coords = [list(pair) for pair in inst.q.coefficients]
    for t in range(steps):
        idx = t % (2 * (m + 1))
        k, part = divmod(idx, 2)
        sigma = sigma0[k] * 2.0 ** (-t / 10)
        step = float(rng.standard_normal()) * sigma
        trial = [list(pair) for pair in coords]
        trial[k][part] = Dyadic.from_float(float(coords[k][part]) + step)
        try:
            q = ComplexPolynomial(tuple(tuple(pair) for pair in trial))
        except DegeneratePolynomialError:
            continue
        eps, cand = choose_epsilon(q, n, schedule, max_precision_bits, seed)
        if cand.total_certified > cert.total_certified:
            coords, cert, inst = trial, cand, cand.instance
    return inst, cert


def local_refine(
    inst: WilmshurstInstance,
    steps: int,
    rng: np.random.Generator,
    schedule: Sequence = DEFAULT_SCHEDULE,
    max_precision_bits: int = DEFAULT_PRECISION_CAP,
    sigma_scale: float = DEFAULT_SIGMA_SCALE,
) -> WilmshurstInstance:
    """Coordinate-wise Gaussian hill climbing on (a_0, b_0, ..., a_m, b_m).

    Step t perturbs one coordinate with standard deviation
    ``sigma_scale * sqrt(C(m,k)/2) * 2**(-t/10)``. A move is kept only if the
    certified total strictly increases (epsilon is re-chosen from ``schedule``
    for every candidate), so the result never has a smaller total than the
    input. The default scale is conservative: small moves rarely change an
    integer zero count, so larger scales explore more.
    """
    return _refine_with_certificate(inst, steps, rng, schedule, max_precision_bits, sigma_scale=sigma_scale)[0]


def _restart_trial(args) -> Tuple[int, ValenceCertificate]:
    n, m, seed, t, schedule, max_bits = args
    q = sample_complex_kostlan(KostlanSampler(m, seed, t))
    _, cert = choose_epsilon(q, n, schedule, max_bits, seed)
    return t, cert


def hunt_witness(
    n: int,
    m: int,
    budget_trials: int,
    seed: int = 0,
    schedule: Sequence = DEFAULT_SCHEDULE,
    refine_steps: int = 0,
    max_precision_bits: int = DEFAULT_PRECISION_CAP,
    threads: int = 1,
    sigma_scale: float = DEFAULT_SIGMA_SCALE,
) -> SearchReport:
    """Random restarts until a certificate reaches ceil(n*sqrt(m)) or the budget runs out.

    Restart t uses Kostlan stream t, so reports are reproducible and do not
    depend on ``threads``. If the restarts miss the target and ``refine_steps``
    is positive, the incumbent is hill-climbed.
    """
    _check_nm(n, m)
    if budget_trials < 1:
        raise ParameterError("budget_trials must be >= 1")
    target = target_valence(n, m)
    best: Optional[ValenceCertificate] = None
    improvements = 0
    used = 0
    pool = None
    batch = 1
    if threads > 1:
        from concurrent.futures import ProcessPoolExecutor

        pool = ProcessPoolExecutor(max_workers=threads)
        batch = threads * 4
    try:
        for start in range(0, budget_trials, batch):
            jobs = [(n, m, seed, t, tuple(schedule), max_precision_bits)
                    for t in range(start, min(start + batch, budget_trials))]
            # results are consumed in trial order, so early stopping matches the serial run
            results = pool.map(_restart_trial, jobs) if pool else map(_restart_trial, jobs)
            done = False
            for t, cert in results:
                used = t + 1
                if best is None or cert.total_certified > best.total_certified:
                    best = cert
                    improvements += 1
                if best.total_certified >= target:
                    done = True
                    break
            if done:
                break
    finally:
        if pool is not None:
            pool.shutdown()

    if best.total_certified < target and refine_steps > 0:
        rng = KostlanSampler(m, seed, REFINE_STREAM).generator()
        _, refined = _refine_with_certificate(
            best.instance, refine_steps, rng, schedule, max_precision_bits, seed, sigma_scale
        )
        if refined.total_certified > best.total_certified:
            best = refined
            improvements += 1
    return SearchReport(n, m, target, best, used, improvements, best.total_certified >= target, seed, budget_trials)


def verify_certificate(cert: Union[ValenceCertificate, dict]) -> bool:
    """Re-derive every claim in a certificate from (n, m, epsilon, q) alone.

    Each recorded strict sign must re-certify at the recorded precision cap;
    alternations and the total are recounted from those signs. Returns False on
    any mismatch or if precision runs out. Malformed input raises
    CertificateSchemaError.
    """
    if isinstance(cert, dict):
        from .serialization import certificate_from_dict

        cert = certificate_from_dict(cert.get("certificate", cert))
    inst = cert.instance
    n = inst.n
    if sorted(lc.j for lc in cert.per_line) != list(range(n)):
        return False
    origin_is_zero = not inst.q.coefficients[0][0]
    if cert.origin_is_zero != origin_is_zero:
        return False
    cap = cert.precision_bits
    recomputed_total = int(origin_is_zero)
    for lc in cert.per_line:
        samples = lc.samples_used
        if len(samples) != len(lc.signs):
            return False
        if any(not a < b for a, b in zip(samples, samples[1:])):
            return False
        restriction = restrict_to_line(inst, lc.j, min(BASE_PRECISION, cap))
        for r, claimed in zip(samples, lc.signs):
            if not claimed.is_strict:
                continue
            if certified_sign(restriction, r, cap).value != claimed.value:
                return False
        lower = count_alternations(samples, lc.signs, Dyadic(0) if origin_is_zero else None)
        if lc.certified_lower > lower:
            return False
        recomputed_total += lower
    if recomputed_total > n * n:
        return False
    return recomputed_total >= cert.total_certified
