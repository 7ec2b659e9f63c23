"""JSON forms of polynomials, instances and valence certificates.

Dyadics are written as ``"mantissa*2^exponent"`` strings so files round-trip
exactly. Certificates are self-contained: ``(n, m, epsilon, q)`` plus the
per-line samples and claimed signs are enough to re-check every claim.
"""

from __future__ import annotations

import json
from typing import Any, Dict

import jsonschema

from .certify import CertifiedSign
from .dyadic import Dyadic, DyadicParseError
from .errors import CertificateSchemaError, DegeneratePolynomialError, ParameterError
from .polynomials import ComplexPolynomial, RealPolynomial, WilmshurstInstance
from .valence import LineCount, ValenceCertificate

__all__ = [
    "real_poly_to_json",
    "real_poly_from_json",
    "complex_poly_to_json",
    "complex_poly_from_json",
    "instance_to_dict",
    "instance_from_dict",
    "certificate_to_dict",
    "certificate_from_dict",
    "dumps",
    "load_json",
    "CERTIFICATE_SCHEMA",
    "INSTANCE_SCHEMA",
]

_DYADIC = {"type": "string", "pattern": r"^[+-]?\d+\*2\^[+-]?\d+$"}
_PAIR = {"type": "array", "items": _DYADIC, "minItems": 2, "maxItems": 2}

INSTANCE_SCHEMA: Dict[str, Any] = {
    "type": "object",
    "required": ["n", "m", "epsilon", "q"],
    "properties": {
        "n": {"type": "integer"},
        "m": {"type": "integer"},
        "epsilon": _DYADIC,
        "q": {"type": "array", "items": _PAIR, "minItems": 1},
    },
}

CERTIFICATE_SCHEMA: Dict[str, Any] = {
    "type": "object",
    "required": [
        "n", "m", "epsilon", "q", "lines", "origin_is_zero", "total", "seed", "version", "precision_bits",
    ],
    "properties": {
        **INSTANCE_SCHEMA["properties"],
        "lines": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["j", "samples", "signs", "lower"],
                "properties": {
                    "j": {"type": "integer", "minimum": 0},
                    "samples": {"type": "array", "items": _DYADIC},
                    "signs": {"type": "array", "items": {"type": "string", "enum": ["+", "-", "?", "−"]}},
                    "lower": {"type": "integer", "minimum": 0},
                    "float_estimate": {"type": "integer", "minimum": 0},
                },
            },
        },
        "origin_is_zero": {"type": "boolean"},
        "total": {"type": "integer", "minimum": 0},
        "seed": {"type": ["integer", "null"]},
        "version": {"type": "string"},
        "precision_bits": {"type": "integer", "minimum": 1},
    },
}


def real_poly_to_json(poly: RealPolynomial) -> list:
    return [str(c) for c in poly.coefficients]


def real_poly_from_json(data: list) -> RealPolynomial:
    return RealPolynomial(tuple(Dyadic.parse(s) for s in data))


def complex_poly_to_json(poly: ComplexPolynomial) -> list:
    return [[str(a), str(b)] for a, b in poly.coefficients]


def complex_poly_from_json(data: list) -> ComplexPolynomial:
    return ComplexPolynomial(tuple((Dyadic.parse(a), Dyadic.parse(b)) for a, b in data))


def instance_to_dict(inst: WilmshurstInstance) -> dict:
    return {"n": inst.n, "m": inst.m, "epsilon": str(inst.epsilon), "q": complex_poly_to_json(inst.q)}


def _validate(data, schema, what: str) -> None:
    try:
        jsonschema.validate(data, schema)
    except jsonschema.ValidationError as exc:
        raise CertificateSchemaError(f"{what}: {exc.message}") from None


def instance_from_dict(data: dict) -> WilmshurstInstance:
    """Parse an instance; schema problems raise CertificateSchemaError, bad parameters ParameterError."""
    _validate(data, INSTANCE_SCHEMA, "instance")
    try:
        q = complex_poly_from_json(data["q"])
    except DyadicParseError as exc:
        raise CertificateSchemaError(str(exc)) from None
    except DegeneratePolynomialError as exc:
        raise ParameterError(str(exc)) from None
    return WilmshurstInstance(data["n"], data["m"], Dyadic.parse(data["epsilon"]), q)


def certificate_to_dict(cert: ValenceCertificate) -> dict:
    out = instance_to_dict(cert.instance)
    out["lines"] = [
        {
            "j": lc.j,
            "samples": [str(s) for s in lc.samples_used],
            "signs": [s.symbol for s in lc.signs],
            "lower": lc.certified_lower,
            "float_estimate": lc.float_estimate,
        }
        for lc in cert.per_line
    ]
    out["origin_is_zero"] = cert.origin_is_zero
    out["total"] = cert.total_certified
    out["seed"] = cert.seed
    out["version"] = cert.version
    out["precision_bits"] = cert.precision_bits
    return out


def certificate_from_dict(data: dict) -> ValenceCertificate:
    """Parse without re-checking any claim; see ``search.verify_certificate`` for that."""
    _validate(data, CERTIFICATE_SCHEMA, "certificate")
    inst = instance_from_dict(data)
    lines = []
    for entry in data["lines"]:
        if len(entry["samples"]) != len(entry["signs"]):
            raise CertificateSchemaError(f"line {entry['j']}: samples and signs differ in length")
        lines.append(
            LineCount(
                entry["j"],
                entry["lower"],
                entry.get("float_estimate", 0),
                tuple(Dyadic.parse(s) for s in entry["samples"]),
                tuple(CertifiedSign.from_symbol(s) for s in entry["signs"]),
            )
        )
    return ValenceCertificate(
        inst,
        tuple(lines),
        data["origin_is_zero"],
        data["total"],
        data["seed"],
        data["version"],
        data["precision_bits"],
    )


def dumps(obj) -> str:
    """Deterministic JSON text (fixed key order, trailing newline)."""
    return json.dumps(obj, indent=2) + "\n"


def load_json(path) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise CertificateSchemaError(f"{path}: malformed JSON ({exc})") from None
