"""Certified zero counting for harmonic polynomials eps*z^n + q(z) + conj(q(z))."""

__version__ = "0.1.0"

from .dyadic import Dyadic
from .polynomials import (
    ComplexPolynomial,
    LineRestriction,
    RealPolynomial,
    WilmshurstInstance,
    cauchy_root_bound,
    derivative,
    eval_harmonic,
    eval_real,
    restrict_to_line,
)
from .intervals import RigorousInterval, trig_enclose
from .certify import (
    CertifiedSign,
    certified_sign,
    descartes_positive_bound,
    family_upper_bound,
    interval_eval,
    sign_change_lower_bound,
)
from .sturm import sturm_count
from .ensembles import KostlanSampler, ek_expected_count, sample_complex_kostlan, sample_real_kostlan
from .valence import (
    LineCount,
    ValenceCertificate,
    certified_valence,
    choose_epsilon,
    count_line_zeros,
    float_root_estimate,
)
from .search import SearchReport, hunt_witness, local_refine, target_valence, verify_certificate, wilmshurst_conjecture_value
from .experiments import ZeroCountStats, compare_to_bounds, run_ek_experiment, run_expectation_experiment
