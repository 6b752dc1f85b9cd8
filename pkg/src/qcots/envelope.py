"""Text envelopes for keys and signatures.

Each file is a JSON object::

    {"version": 1, "kind": "signature", "p": ..., "w_e": ..., "w_y": ...,
     "w_c": ..., "h_seed": ..., "payload": "<hex>"}

Payloads use the ring serialisation (little-endian bits, ceil(p/8) bytes per
polynomial). A signing key is e0 || e1, a verification key is s_e, and a
signature is c || z0 || z1.
"""

from __future__ import annotations

import json
from pathlib import Path

from .ring import RingElement, RingPair
from .scheme import ParameterSet, Signature, SigningKey, VerificationKey

VERSION = 1


class EnvelopeError(ValueError):
    pass


def _dump(kind: str, params: ParameterSet, payload: bytes) -> str:
    doc = {"version": VERSION, "kind": kind, **params.as_dict(), "payload": payload.hex()}
    return json.dumps(doc, indent=1) + "\n"


def dumps(obj, params: ParameterSet) -> str:
    if isinstance(obj, SigningKey):
        return _dump("signing-key", params, obj.e.to_bytes())
    if isinstance(obj, VerificationKey):
        return _dump("verification-key", params, obj.s_e.to_bytes())
    if isinstance(obj, Signature):
        return _dump("signature", params, obj.c.to_bytes() + obj.z.to_bytes())
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def loads(text: str, kind: str | None = None):
    """Parse an envelope; returns ``(object, ParameterSet)``."""
    try:
        doc = json.loads(text)
        if doc["version"] != VERSION:
            raise EnvelopeError(f"unsupported envelope version {doc['version']}")
        params = ParameterSet(doc["p"], doc["w_e"], doc["w_y"], doc["w_c"], doc["h_seed"])
        payload = bytes.fromhex(doc["payload"])
        found = doc["kind"]
    except EnvelopeError:
        raise
    except (ValueError, KeyError, TypeError) as exc:
        raise EnvelopeError(f"malformed envelope: {exc}") from exc
    if kind is not None and found != kind:
        raise EnvelopeError(f"expected a {kind}, found {found}")
    p, n = params.p, (params.p + 7) // 8
    try:
        if found == "signing-key":
            return SigningKey(RingPair.from_bytes(payload, p)), params
        if found == "verification-key":
            return VerificationKey(RingElement.from_bytes(payload, p)), params
        if found == "signature":
            if len(payload) != 3 * n:
                raise EnvelopeError(f"signature payload must be {3 * n} bytes, got {len(payload)}")
            c = RingElement.from_bytes(payload[:n], p)
            return Signature(c, RingPair.from_bytes(payload[n:], p)), params
    except ValueError as exc:
        raise EnvelopeError(str(exc)) from exc
    raise EnvelopeError(f"unknown envelope kind {found!r}")


def save(path, obj, params: ParameterSet) -> None:
    Path(path).write_text(dumps(obj, params))


def load(path, kind: str | None = None):
    try:
        text = Path(path).read_text()
    except UnicodeDecodeError as exc:
        raise EnvelopeError(f"{path}: not a text envelope") from exc
    return loads(text, kind)
