import copy
import json

import pytest

from harmonic_valence.dyadic import Dyadic
from harmonic_valence.ensembles import KostlanSampler, sample_complex_kostlan
from harmonic_valence.errors import CertificateSchemaError, ParameterError
from harmonic_valence.polynomials import ComplexPolynomial, WilmshurstInstance
from harmonic_valence.search import hunt_witness, local_refine, target_valence, verify_certificate, wilmshurst_conjecture_value
from harmonic_valence.serialization import certificate_to_dict
from harmonic_valence.valence import certified_valence, choose_epsilon

HAND = WilmshurstInstance(2, 1, Dyadic(1, -2), ComplexPolynomial(((0, 0), (1, 0))))


def test_target_examples():
    assert target_valence(10, 4) == 20
    assert target_valence(4, 2) == 6
    assert target_valence(5, 1) == 5
    with pytest.raises(ParameterError):
        target_valence(2, 2)


def test_conjecture_examples():
    assert wilmshurst_conjecture_value(10, 4) == 40
    assert wilmshurst_conjecture_value(2, 1) == 4
    assert wilmshurst_conjecture_value(544, 10) == 1720


@pytest.mark.parametrize("n, m, budget, floor", [(4, 2, 500, 6), (6, 4, 500, 12), (2, 1, 50, 2)])
def test_hunt_examples(n, m, budget, floor):
    rep = hunt_witness(n, m, budget, seed=3)
    assert rep.achieved and rep.best_total >= floor
    assert 1 <= rep.trials_used <= budget
    assert verify_certificate(rep.best_certificate)


def test_hunt_parameter_errors():
    with pytest.raises(ParameterError):
        hunt_witness(4, 2, 0)
    with pytest.raises(ParameterError):
        hunt_witness(2, 3, 10)


def test_hunt_reproducible_and_thread_independent():
    a = hunt_witness(5, 3, 40, seed=11, schedule=[Dyadic(1, -4)])
    b = hunt_witness(5, 3, 40, seed=11, schedule=[Dyadic(1, -4)])
    c = hunt_witness(5, 3, 40, seed=11, schedule=[Dyadic(1, -4)], threads=2)
    assert certificate_to_dict(a.best_certificate) == certificate_to_dict(b.best_certificate) == certificate_to_dict(c.best_certificate)
    assert a.trials_used == b.trials_used == c.trials_used


def test_schedule_single_entry_hand_instance():
    eps, cert = choose_epsilon(HAND.q, 2, [Dyadic(1, -2)])
    assert eps == Dyadic(1, -2) and cert.total_certified == 2


def test_local_refine_monotone():
    q = sample_complex_kostlan(KostlanSampler(2, 9, 0))
    inst = WilmshurstInstance(4, 2, Dyadic(1, -2), q)
    before = choose_epsilon(q, 4)[1].total_certified
    rng = KostlanSampler(2, 9, 1).generator()
    out = local_refine(inst, 200, rng)
    after = certified_valence(out).total_certified
    assert after >= before
    assert after >= certified_valence(inst).total_certified
    with pytest.raises(ParameterError):
        local_refine(inst, 0, rng)


def test_refine_used_when_restarts_miss():
    # one restart at epsilon = 1 misses the target (total 6 < 12); hill climbing with full-size steps improves it
    plain = hunt_witness(6, 4, 1, seed=2, schedule=[Dyadic(1)])
    assert not plain.achieved and plain.best_total == 6
    refined = hunt_witness(6, 4, 1, seed=2, schedule=[Dyadic(1)], refine_steps=100, sigma_scale=1.0)
    assert refined.best_total > plain.best_total
    assert refined.improvement_steps == plain.improvement_steps + 1
    assert verify_certificate(refined.best_certificate)
    default = hunt_witness(6, 4, 1, seed=2, schedule=[Dyadic(1)], refine_steps=20)
    assert default.best_total >= plain.best_total
    with pytest.raises(ParameterError):
        local_refine(plain.best_certificate.instance, 5, KostlanSampler(4, 0).generator(), sigma_scale=0.0)


def test_verify_hand_certificate_and_tampering():
    cert = certified_valence(HAND)
    data = certificate_to_dict(cert)
    assert verify_certificate(cert)
    assert verify_certificate(copy.deepcopy(data))
    assert verify_certificate({"certificate": copy.deepcopy(data)})

    tampered = copy.deepcopy(data)
    tampered["total"] = 3
    assert not verify_certificate(tampered)

    flipped = copy.deepcopy(data)
    line = flipped["lines"][0]
    i = next(k for k, s in enumerate(line["signs"]) if s in "+-")
    line["signs"][i] = "-" if line["signs"][i] == "+" else "+"
    assert not verify_certificate(flipped)

    lying_line = copy.deepcopy(data)
    lying_line["lines"][1]["lower"] = 2
    assert not verify_certificate(lying_line)

    missing = copy.deepcopy(data)
    missing["lines"] = missing["lines"][:1]
    assert not verify_certificate(missing)

    wrong_origin = copy.deepcopy(data)
    wrong_origin["origin_is_zero"] = False
    assert not verify_certificate(wrong_origin)

    with pytest.raises(CertificateSchemaError):
        verify_certificate({"n": 2})


def test_verify_random_certificates():
    for t in range(20):
        q = sample_complex_kostlan(KostlanSampler(4, 17, t))
        cert = certified_valence(WilmshurstInstance(6, 4, Dyadic(1, -40), q))
        assert verify_certificate(json.loads(json.dumps(certificate_to_dict(cert))))
