"""Monte Carlo experiments: expected zero counts and comparison with known bounds."""

from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Iterable, List, NamedTuple, Sequence, Tuple

from .certify import DEFAULT_PRECISION_CAP, family_upper_bound, linear_upper_conjecture_value
from .dyadic import Dyadic, as_dyadic
from .ensembles import KostlanSampler, ek_expected_count, sample_complex_kostlan, sample_real_kostlan
from .errors import ParameterError
from .polynomials import WilmshurstInstance
from .search import target_valence, wilmshurst_conjecture_value
from .sturm import sturm_count
from .valence import certified_valence

__all__ = [
    "ZeroCountStats",
    "BoundsReport",
    "EKResult",
    "run_expectation_experiment",
    "run_ek_experiment",
    "compare_to_bounds",
    "stats_to_csv",
]


@dataclass(frozen=True)
class ZeroCountStats:
    n: int
    m: int
    epsilon: Dyadic
    trials: int
    seed: int
    mean_total: float
    se_total: float
    mean_per_line: Tuple[float, ...]
    se_per_line: Tuple[float, ...]
    certified_fraction: float
    origin_frequency: float
    max_total: int


class EKResult(NamedTuple):
    mean: float
    oracle: float
    se: float
    trials: int


def _mean_se(total: int, total_sq: int, count: int) -> Tuple[float, float]:
    """Mean and standard error from exact integer moments (order-independent)."""
    mean = Fraction(total, count)
    if count < 2:
        return float(mean), math.nan
    var = (Fraction(total_sq) - total * mean) / (count - 1)
    return float(mean), math.sqrt(float(var) / count)


def _expectation_trial(args) -> Tuple[Tuple[int, ...], bool, int, int]:
    n, m, eps, seed, t, max_bits = args
    q = sample_complex_kostlan(KostlanSampler(m, seed, t))
    cert = certified_valence(WilmshurstInstance(n, m, eps, q), max_bits, seed)
    lowers = tuple(lc.certified_lower for lc in cert.per_line)
    return lowers, cert.origin_is_zero, cert.total_certified, cert.float_total


def _map_trials(func, jobs: Sequence, threads: int) -> List:
    if threads <= 1:
        return [func(job) for job in jobs]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        # map preserves input order, so aggregation is schedule-independent
        return list(pool.map(func, jobs, chunksize=max(1, len(jobs) // (8 * threads))))


def run_expectation_experiment(
    n: int,
    m: int,
    epsilon,
    trials: int,
    seed: int,
    threads: int = 1,
    max_precision_bits: int = DEFAULT_PRECISION_CAP,
) -> ZeroCountStats:
    """Certified zero counts of eps*z^n + 2 Re q(z) over complex Kostlan q, one stream per trial."""
    if m < 1 or n <= m:
        raise ParameterError(f"need n > m >= 1, got n={n}, m={m}")
    if trials < 1:
        raise ParameterError("trials must be >= 1")
    eps = as_dyadic(epsilon)
    if eps <= 0:
        raise ParameterError("epsilon must be positive")
    jobs = [(n, m, eps, seed, t, max_precision_bits) for t in range(trials)]
    results = _map_trials(_expectation_trial, jobs, threads)

    line_sum = [0] * n
    line_sq = [0] * n
    total_sum = total_sq = 0
    origin_hits = agree = 0
    max_total = 0
    for lowers, origin, total, float_total in results:
        for j, c in enumerate(lowers):
            line_sum[j] += c
            line_sq[j] += c * c
        total_sum += total
        total_sq += total * total
        origin_hits += origin
        agree += total == float_total
        max_total = max(max_total, total)
    mean_total, se_total = _mean_se(total_sum, total_sq, trials)
    per_line = [_mean_se(line_sum[j], line_sq[j], trials) for j in range(n)]
    return ZeroCountStats(
        n=n,
        m=m,
        epsilon=eps,
        trials=trials,
        seed=seed,
        mean_total=mean_total,
        se_total=se_total,
        mean_per_line=tuple(mu for mu, _ in per_line),
        se_per_line=tuple(se for _, se in per_line),
        certified_fraction=agree / trials,
        origin_frequency=origin_hits / trials,
        max_total=max_total,
    )


def _ek_trial(args) -> int:
    m, seed, t, a, b = args
    f = sample_real_kostlan(KostlanSampler(m, seed, t))
    return sturm_count(f, a, b)


def run_ek_experiment(
    m: int,
    trials: int,
    seed: int,
    interval: Tuple[float, float] = (-math.inf, math.inf),
    threads: int = 1,
) -> EKResult:
    """Empirical mean of exact real-root counts of real Kostlan polynomials in (a, b), and the oracle value."""
    a, b = interval
    oracle = ek_expected_count(m, a, b)
    if trials < 1:
        raise ParameterError("trials must be >= 1")
    counts = _map_trials(_ek_trial, [(m, seed, t, a, b) for t in range(trials)], threads)
    mean, se = _mean_se(sum(counts), sum(c * c for c in counts), trials)
    return EKResult(mean, oracle, se, trials)


@dataclass(frozen=True)
class BoundsReport:
    n: int
    m: int
    mean_total: float
    max_total: int
    target: int
    wilmshurst_conjecture: int
    n_squared: int
    family_upper_bound: int
    linear_upper_conjecture: int
    quadratic_m_bound: int
    stretch_nm: int

    def comparison_values(self) -> List[Tuple[str, int]]:
        return [
            ("ceil(n*sqrt(m))", self.target),
            ("3n-2+m(m-1)", self.wilmshurst_conjecture),
            ("n^2", self.n_squared),
            ("n(m+2)", self.family_upper_bound),
            ("2m(n-1)+n", self.linear_upper_conjecture),
            ("m^2+n+m", self.quadratic_m_bound),
            ("n*m", self.stretch_nm),
        ]

    @property
    def exceeds(self) -> dict:
        """Which comparison values the observed maximum strictly exceeds."""
        return {name: self.max_total > value for name, value in self.comparison_values()}

    def to_dict(self) -> dict:
        out = asdict(self)
        out["exceeds"] = self.exceeds
        return out

    def to_text(self) -> str:
        rows = [("bound", "value", "max observed exceeds")]
        for name, value in self.comparison_values():
            rows.append((name, str(value), "yes" if self.max_total > value else "no"))
        width = [max(len(r[i]) for r in rows) for i in range(3)]
        lines = [f"n={self.n} m={self.m} mean_total={self.mean_total!r} max_total={self.max_total}"]
        for r in rows:
            lines.append("  ".join(cell.ljust(width[i]) for i, cell in enumerate(r)).rstrip())
        return "\n".join(lines) + "\n"


def compare_to_bounds(stats) -> BoundsReport:
    """Tabulate observed totals against the named bounds. Accepts ZeroCountStats or an (n, m) pair."""
    if isinstance(stats, ZeroCountStats):
        n, m, mean, mx = stats.n, stats.m, stats.mean_total, stats.max_total
    else:
        n, m = stats
        mean, mx = math.nan, 0
    return BoundsReport(
        n=n,
        m=m,
        mean_total=mean,
        max_total=mx,
        target=target_valence(n, m),
        wilmshurst_conjecture=wilmshurst_conjecture_value(n, m),
        n_squared=n * n,
        family_upper_bound=family_upper_bound(n, m),
        linear_upper_conjecture=linear_upper_conjecture_value(n, m),
        quadratic_m_bound=m * m + n + m,
        stretch_nm=n * m,
    )


CSV_COLUMNS = [
    "n", "m", "epsilon", "trials", "seed", "mean_total", "se_total", "mean_per_line", "se_per_line",
    "certified_fraction", "origin_frequency", "max_total",
]


def stats_to_csv(rows: Iterable[ZeroCountStats], header_lines: Sequence[str] = ()) -> str:
    """CSV text with '#'-prefixed provenance lines first."""
    buf = io.StringIO()
    for line in header_lines:
        buf.write(f"# {line}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for s in rows:
        writer.writerow([
            s.n, s.m, str(s.epsilon), s.trials, s.seed, repr(s.mean_total), repr(s.se_total),
            ";".join(repr(x) for x in s.mean_per_line), ";".join(repr(x) for x in s.se_per_line),
            repr(s.certified_fraction), repr(s.origin_frequency), s.max_total,
        ])
    return buf.getvalue()


def provenance_line(config: dict) -> str:
    from . import __version__

    return f"harmonic_valence {__version__} config={json.dumps(config, sort_keys=True)}"
