"""The quasi-cyclic one-time signature scheme: keygen, sign, verify."""

from __future__ import annotations

import hashlib
import struct
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .ring import ParameterError, RingElement, RingPair, random_pair


@dataclass(frozen=True)
class ParameterSet:
    p: int
    w_e: int
    w_y: int
    w_c: int
    h_seed: int = 0

    def __post_init__(self):
        self.validate()

    def validate(self) -> None:
        if self.p < 2:
            raise ParameterError(f"p must be at least 2, got {self.p}")
        for name in ("w_e", "w_y", "w_c"):
            w = getattr(self, name)
            if not 0 < w < self.p / 2:
                raise ParameterError(f"{name}={w} must lie in (0, p/2) for p={self.p}")
        if self.max_z_weight > 2 * self.p:
            raise ParameterError("w_c*w_e + w_y exceeds 2p")
        if self.h_seed < 0:
            raise ParameterError("h_seed must be non-negative")

    @property
    def max_z_weight(self) -> int:
        return self.w_c * self.w_e + self.w_y

    @cached_property
    def h(self) -> RingElement:
        return derive_h(self.p, self.h_seed)

    def as_dict(self) -> dict:
        return {"p": self.p, "w_e": self.w_e, "w_y": self.w_y, "w_c": self.w_c, "h_seed": self.h_seed}


@dataclass(frozen=True)
class SigningKey:
    e: RingPair


@dataclass(frozen=True)
class VerificationKey:
    s_e: RingElement


@dataclass(frozen=True)
class Signature:
    c: RingElement
    z: RingPair


def derive_h(p: int, h_seed: int) -> RingElement:
    """Public dense polynomial: each coefficient an unbiased SHAKE-256 bit."""
    xof = hashlib.shake_256(b"qcots-h" + struct.pack("<IQ", p, h_seed))
    bits = np.unpackbits(np.frombuffer(xof.digest((p + 7) // 8), dtype=np.uint8), bitorder="little")
    return RingElement(bits[:p])


def synd_h(a: RingPair, h: RingElement) -> RingElement:
    """a0 + a1*h, i.e. H a^T with H = [I | circ(h)]."""
    return a.a0 + a.a1 * h


def hash_to_weight(data: bytes, p: int, delta: int) -> RingElement:
    """Deterministic weight-``delta`` polynomial from arbitrary bytes.

    SHAKE-256 output is read as little-endian 32-bit words; words above the
    largest multiple of ``p`` are rejected so that ``word % p`` is unbiased,
    and repeated indices are skipped.
    """
    if not 0 <= delta <= p:
        raise ParameterError(f"delta={delta} outside [0, {p}]")
    limit = (1 << 32) // p * p
    xof = hashlib.shake_256(data)
    chosen: dict[int, None] = {}
    nwords = 2 * delta + 16
    pos = 0
    while len(chosen) < delta:
        words = np.frombuffer(xof.digest(4 * nwords), dtype="<u4")
        for word in words[pos:]:
            pos += 1
            if word < limit:
                chosen.setdefault(int(word) % p)
                if len(chosen) == delta:
                    break
        nwords *= 2
    return RingElement.from_support(p, chosen)


def challenge_input(message: bytes, s: RingElement) -> bytes:
    # length prefix keeps [m, s] unambiguous for variable-length m
    return struct.pack("<Q", len(message)) + message + s.to_bytes()


def keygen(params: ParameterSet, rng: np.random.Generator) -> tuple[SigningKey, VerificationKey]:
    e = random_pair(params.p, params.w_e, rng)
    return SigningKey(e), VerificationKey(synd_h(e, params.h))


def sign_with_ephemeral(message: bytes, sk: SigningKey, params: ParameterSet, y: RingPair) -> Signature:
    """Signing with a caller-supplied ephemeral vector ``y``."""
    s_y = synd_h(y, params.h)
    c = hash_to_weight(challenge_input(message, s_y), params.p, params.w_c)
    return Signature(c, sk.e.scale(c) + y)


def sign(message: bytes, sk: SigningKey, params: ParameterSet, rng: np.random.Generator) -> Signature:
    y = random_pair(params.p, params.w_y, rng)
    return sign_with_ephemeral(message, sk, params, y)


def verify(message: bytes, vk: VerificationKey, sig: Signature, params: ParameterSet) -> bool:
    """True iff the signature is accepted.

    Signatures are rejected when z is *heavier* than w_c*w_e + w_y; honest
    signatures can never exceed that bound.
    """
    p = params.p
    if sig.c.p != p or sig.z.p != p or vk.s_e.p != p:
        return False
    if sig.z.weight() > params.max_z_weight:
        return False
    v = sig.c * vk.s_e + synd_h(sig.z, params.h)
    return hash_to_weight(challenge_input(message, v), p, params.w_c) == sig.c
