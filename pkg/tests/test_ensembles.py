import math

import numpy as np
import pytest

from harmonic_valence.ensembles import (
    KostlanSampler,
    ek_expected_count,
    kostlan_scales,
    sample_complex_kostlan,
    sample_real_kostlan,
)
from harmonic_valence.errors import ParameterError

DRAWS = 100_000


def _real_matrix(m, seed, draws=DRAWS):
    return np.array([[float(c) for c in sample_real_kostlan(KostlanSampler(m, seed, t)).coefficients] for t in range(draws)])


def _complex_matrix(m, seed, draws=DRAWS):
    return np.array([sample_complex_kostlan(KostlanSampler(m, seed, t)).to_complex() for t in range(draws)])


def test_determinism():
    a = sample_real_kostlan(KostlanSampler(3, 42, 0))
    b = sample_real_kostlan(KostlanSampler(3, 42, 0))
    assert a == b
    assert sample_complex_kostlan(KostlanSampler(5, 9, 17)) == sample_complex_kostlan(KostlanSampler(5, 9, 17))
    assert sample_real_kostlan(KostlanSampler(3, 42, 1)) != a
    assert sample_real_kostlan(KostlanSampler(3, 43, 0)) != a


def test_sampler_validation():
    with pytest.raises(ParameterError):
        KostlanSampler(0, 1)
    with pytest.raises(ParameterError):
        KostlanSampler(2, -1)
    assert KostlanSampler(2, 1).stream(5) == KostlanSampler(2, 1, 5)


def test_real_variances():
    x1 = _real_matrix(1, 11)
    assert np.var(x1[:, 0]) == pytest.approx(1, rel=0.05)
    assert np.var(x1[:, 1]) == pytest.approx(1, rel=0.05)
    x4 = _real_matrix(4, 12)
    assert np.var(x4[:, 2]) == pytest.approx(6, rel=0.05)


def test_complex_variances():
    z = _complex_matrix(2, 13)
    assert np.var(z[:, 1].real) == pytest.approx(1, rel=0.05)
    assert np.var(z[:, 1].imag) == pytest.approx(1, rel=0.05)
    assert np.var(z[:, 0].real) == pytest.approx(0.5, rel=0.05)


def test_scales_large_degree_log_space():
    s = kostlan_scales(80)
    assert s[40] == pytest.approx(math.sqrt(math.comb(80, 40)), rel=1e-10)
    assert kostlan_scales(4, halve=True)[2] == pytest.approx(math.sqrt(3))


@pytest.mark.parametrize("m", [1, 2, 3, 4, 5, 6])
def test_restricted_coefficients_are_real_kostlan(m):
    """alpha_{k,j} = (-1)^j [a_k cos(k theta_j) - b_k sin(k theta_j)] has variance C(m,k)/2 and is uncorrelated across k."""
    n = 7
    z = _complex_matrix(m, 1000 + m)
    se_corr = 1 / math.sqrt(len(z))
    for j in range(n):
        k = np.arange(m + 1)
        angle = k * j * math.pi / n
        alpha = (-1) ** j * (z.real * np.cos(angle) - z.imag * np.sin(angle))
        for kk in range(m + 1):
            assert np.var(alpha[:, kk]) == pytest.approx(math.comb(m, kk) / 2, rel=0.05)
        if m in (2, 4, 6):
            corr = np.corrcoef(alpha, rowvar=False)
            for a in range(m + 1):
                for b in range(a + 1, m + 1):
                    assert abs(corr[a, b]) <= 3 * se_corr, (j, a, b, corr[a, b])


def test_ek_examples():
    assert ek_expected_count(9) == 3.0
    assert ek_expected_count(4, -1, 1) == pytest.approx(1.0, abs=1e-15)
    assert ek_expected_count(1, 0, 1e-12) == pytest.approx(0, abs=1e-12)
    with pytest.raises(ParameterError):
        ek_expected_count(0)
    with pytest.raises(ParameterError):
        ek_expected_count(3, 1, 1)


def test_ek_monotone():
    for m in (1, 4, 9):
        edges = [-math.inf, -10, -1, 0, 0.5, 2, math.inf]
        vals = [ek_expected_count(m, -math.inf, b) for b in edges[1:]]
        assert all(x < y for x, y in zip(vals, vals[1:]))
        assert ek_expected_count(m + 1) > ek_expected_count(m)
