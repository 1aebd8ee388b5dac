"""Certificate documents and the input-system hash.

A certificate file is a JSON object.  Scalars are strings ``"num/den"``,
polynomials are lists of ``[exponents, scalar]`` pairs in descending grevlex
order, and the degree of a zero cofactor is ``null``.  ``dumps`` is
deterministic, so ``dumps(loads(text)) == text`` for every emitted file.

The system hash is 64-bit FNV-1a over the canonical serialization::

    <names joined by ','> '|' <poly_1> '|' ... '|' <poly_n>

where each poly is its terms as ``e1,e2,...:num/den`` joined by ``;``.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Sequence

from . import __version__
from .certifier import ChartCertificate, FinitenessCertificate, SquareSystem
from .polyring import NEG_INFINITY, Polynomial, Ring

FORMAT = "finmorph-certificate"
FORMAT_VERSION = 1

_FNV_OFFSET = 0xCBF29CE484222325
_FNV_PRIME = 0x100000001B3
_MASK = (1 << 64) - 1


class CertificateFormatError(ValueError):
    pass


def fnv1a64(data: bytes) -> int:
    h = _FNV_OFFSET
    for byte in data:
        h ^= byte
        h = (h * _FNV_PRIME) & _MASK
    return h


def encode_scalar(c: Fraction) -> str:
    return f"{c.numerator}/{c.denominator}"


def decode_scalar(text: Any) -> Fraction:
    if not isinstance(text, str):
        raise CertificateFormatError(f"scalar must be a 'num/den' string, got {text!r}")
    num, sep, den = text.partition("/")
    try:
        if not sep:
            raise ValueError
        value = Fraction(int(num), int(den))
    except (ValueError, ZeroDivisionError):
        raise CertificateFormatError(f"bad scalar {text!r}") from None
    if int(den) <= 0 or value.denominator != int(den):
        raise CertificateFormatError(f"scalar {text!r} is not in lowest terms")
    return value


def encode_poly(p: Polynomial) -> list:
    return [[list(m), encode_scalar(c)] for m, c in p.sorted_terms()]


def decode_poly(data: Any, nvars: int) -> Polynomial:
    if not isinstance(data, list):
        raise CertificateFormatError("polynomial must be a term list")
    terms = {}
    for entry in data:
        if not (isinstance(entry, list) and len(entry) == 2 and isinstance(entry[0], list)):
            raise CertificateFormatError(f"bad term {entry!r}")
        exps = entry[0]
        if len(exps) != nvars or not all(isinstance(e, int) and not isinstance(e, bool) and e >= 0 for e in exps):
            raise CertificateFormatError(f"bad exponent vector {exps!r}")
        key = tuple(exps)
        if key in terms:
            raise CertificateFormatError(f"repeated monomial {exps!r}")
        coeff = decode_scalar(entry[1])
        if not coeff:
            raise CertificateFormatError("zero coefficients are not stored")
        terms[key] = coeff
    return Polynomial(nvars, terms)


def canonical_system_text(ring: Ring, polys: Sequence[Polynomial]) -> str:
    parts = [",".join(ring.names)]
    for p in polys:
        parts.append(";".join(
            ",".join(str(e) for e in m) + ":" + encode_scalar(c) for m, c in p.sorted_terms()
        ))
    return "|".join(parts)


def system_hash(ring: Ring, polys: Sequence[Polynomial]) -> str:
    digest = fnv1a64(canonical_system_text(ring, polys).encode("utf-8"))
    return f"fnv1a64:{digest:016x}"


def _encode_degree(e):
    return None if e == NEG_INFINITY else int(e)


def _decode_degree(e):
    if e is None:
        return NEG_INFINITY
    if not isinstance(e, int) or isinstance(e, bool):
        raise CertificateFormatError(f"bad degree {e!r}")
    return e


def certificate_document(sys: SquareSystem, cert: FinitenessCertificate) -> dict:
    return {
        "format": FORMAT,
        "format_version": FORMAT_VERSION,
        "tool_version": __version__,
        "system_hash": system_hash(sys.ring, sys.polys),
        "variables": list(sys.ring.names),
        "degrees": list(sys.degrees),
        "c": cert.c,
        "charts": [
            {
                "k": ch.k,
                "cofactors": [encode_poly(u) for u in ch.cofactors],
                "cofactor_degrees": [_encode_degree(e) for e in ch.degrees],
            }
            for ch in cert.charts
        ],
        "lifted": [[encode_poly(u) for u in row] for row in cert.lifted],
    }


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=1, sort_keys=True) + "\n"


def dump_certificate(sys: SquareSystem, cert: FinitenessCertificate) -> str:
    return dumps(certificate_document(sys, cert))


def loads(text: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CertificateFormatError(f"not valid JSON: {exc}") from None
    if not isinstance(doc, dict) or doc.get("format") != FORMAT:
        raise CertificateFormatError("not a finmorph certificate document")
    if doc.get("format_version") != FORMAT_VERSION:
        raise CertificateFormatError(f"unsupported format version {doc.get('format_version')!r}")
    return doc


def certificate_from_document(doc: dict) -> FinitenessCertificate:
    try:
        n = len(doc["variables"])
        c = doc["c"]
        if not isinstance(c, int) or isinstance(c, bool):
            raise CertificateFormatError("c must be an integer")
        charts = []
        for entry in doc["charts"]:
            k = entry["k"]
            cofactors = tuple(decode_poly(u, n - 1) for u in entry["cofactors"])
            degrees = tuple(_decode_degree(e) for e in entry["cofactor_degrees"])
            charts.append(ChartCertificate(k, cofactors, degrees))
        lifted = tuple(tuple(decode_poly(u, n) for u in row) for row in doc["lifted"])
    except (KeyError, TypeError) as exc:
        raise CertificateFormatError(f"malformed certificate: {exc!r}") from None
    return FinitenessCertificate(c, tuple(charts), lifted)


def load_certificate(text: str) -> tuple[FinitenessCertificate, dict]:
    doc = loads(text)
    return certificate_from_document(doc), doc
