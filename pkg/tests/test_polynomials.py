import cmath
import math
import random
from fractions import Fraction

import mpmath
import numpy as np
import pytest

from harmonic_valence.dyadic import Dyadic
from harmonic_valence.errors import DegeneratePolynomialError, ParameterError
from harmonic_valence.certify import interval_eval
from harmonic_valence.polynomials import (
    ComplexPolynomial,
    RealPolynomial,
    WilmshurstInstance,
    cauchy_root_bound,
    derivative,
    eval_harmonic,
    eval_real,
    restrict_to_line,
)
from harmonic_valence.ensembles import KostlanSampler, sample_complex_kostlan


def P(*c):
    return RealPolynomial.from_values(c)


def Q(*pairs):
    return ComplexPolynomial(tuple((Fraction(a), Fraction(b)) for a, b in pairs))


def test_eval_real_examples():
    assert eval_real(P(-1, 0, 1), Dyadic(2)) == 3
    assert eval_real(P(0), Dyadic(5)) == 0
    assert eval_real(P(0, -1, 0, 3), Dyadic(1, -1)).to_fraction() == Fraction(-1, 8)


def test_eval_harmonic_examples():
    inst = WilmshurstInstance(2, 1, Dyadic(1), Q((0, 0), (1, 0)))
    assert eval_harmonic(inst, (0, 1)) == (-1, 0)
    inst4 = WilmshurstInstance(2, 1, Dyadic(1, -2), Q((0, 0), (1, 0)))
    assert eval_harmonic(inst4, (-8, 0)) == (0, 0)
    inst_c = WilmshurstInstance(3, 2, Dyadic(1), Q((Fraction(5, 4), 3), (1, 1), (2, -1)))
    assert eval_harmonic(inst_c, (0, 0)) == (Fraction(5, 2), 0)


def test_restrict_examples():
    inst = WilmshurstInstance(2, 1, Dyadic(1), Q((0, 0), (1, 0)))
    g0 = restrict_to_line(inst, 0)
    assert g0.is_exact
    assert g0.midpoint_polynomial().coefficients == P(0, 2, 1).coefficients
    g1 = restrict_to_line(inst, 1)
    assert g1.coefficients[1].contains(0)
    assert g1.coefficients[1].width() <= Dyadic(1, -62)
    inst2 = WilmshurstInstance(4, 2, Dyadic(1, -3), Q((0, 0), (0, 0), (0, 1)))
    assert restrict_to_line(inst2, 1).coefficients[2].contains(2)


def test_derivative_examples():
    assert derivative(P(-1, 0, 1)) == P(0, 2)
    assert derivative(P(7)).is_zero()
    assert derivative(P(0, -1, 0, 3)) == P(-1, 0, 9)


def test_cauchy_examples():
    assert cauchy_root_bound(P(-1, 0, 1)) == 2
    assert cauchy_root_bound(P(0, 10, 1)) == 11
    assert cauchy_root_bound(P(0, 1, 0, 2)).to_fraction() == Fraction(3, 2)
    with pytest.raises(DegeneratePolynomialError):
        cauchy_root_bound(P(0))


def test_cauchy_bounds_numpy_roots():
    rng = random.Random(5)
    for _ in range(200):
        coeffs = [Dyadic.from_float(rng.gauss(0, 3)) for _ in range(rng.randint(2, 9))]
        poly = RealPolynomial(tuple(coeffs))
        bound = float(cauchy_root_bound(poly))
        roots = np.roots([float(c) for c in reversed(coeffs)])
        assert all(abs(z) <= bound * (1 + 1e-9) for z in roots)


def test_instance_validation():
    q = Q((0, 0), (1, 0))
    with pytest.raises(ParameterError):
        WilmshurstInstance(1, 1, Dyadic(1), q)
    with pytest.raises(ParameterError):
        WilmshurstInstance(2, 1, Dyadic(0), q)
    with pytest.raises(ParameterError):
        WilmshurstInstance(3, 2, Dyadic(1), q)
    with pytest.raises(ParameterError):
        WilmshurstInstance(2, 0, Dyadic(1), Q((1, 0)))
    with pytest.raises(DegeneratePolynomialError):
        Q((1, 0), (0, 0))
    with pytest.raises(DegeneratePolynomialError):
        RealPolynomial.from_values([1, 0])
    assert RealPolynomial.from_values([1, 0], degenerate=True).degree() == 0


def _mp(d):
    return mpmath.ldexp(mpmath.mpf(d.mantissa), d.exponent)


def test_restriction_encloses_harmonic_real_part():
    """Each line restriction encloses (-1)^j Re h(r e^{i j pi/n}) at random points."""
    mpmath.mp.prec = 400
    rng = random.Random(11)
    for trial in range(12):
        m = rng.randint(1, 4)
        n = rng.randint(m + 1, 7)
        q = sample_complex_kostlan(KostlanSampler(m, 100, trial))
        inst = WilmshurstInstance(n, m, Dyadic(1, -rng.randint(0, 8)), q)
        for j in range(n):
            g = restrict_to_line(inst, j, 64)
            if j == 0:
                assert g.is_exact
            for _ in range(10):
                r = Dyadic.from_float(rng.uniform(-4, 4))
                iv = interval_eval(g, r)
                z = _mp(r) * mpmath.expjpi(mpmath.mpf(j) / n)
                qz = sum((_mp(a) + 1j * _mp(b)) * z**k for k, (a, b) in enumerate(q.coefficients))
                h = _mp(inst.epsilon) * z**n + qz + mpmath.conj(qz)
                value = (-1) ** j * mpmath.re(h)
                tol = mpmath.mpf(2) ** -300 * (1 + abs(value))
                assert _mp(iv.lo) - tol <= value <= _mp(iv.hi) + tol
                # plain floating point agrees up to the enclosure width plus rounding
                zf = float(r) * cmath.exp(1j * math.pi * j / n)
                qf = sum(complex(float(a), float(b)) * zf**k for k, (a, b) in enumerate(q.coefficients))
                hf = float(inst.epsilon) * zf**n + 2 * qf.real
                scale = 1 + sum(abs(complex(float(a), float(b))) * abs(float(r)) ** k for k, (a, b) in enumerate(q.coefficients)) + float(inst.epsilon) * abs(float(r)) ** n
                assert abs((-1) ** j * hf.real - float(iv.midpoint())) <= float(iv.width()) + 1e-12 * scale
