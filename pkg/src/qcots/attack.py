"""Single-signature key recovery.

Every nonzero coefficient of c contributes a copy of e_i to z_i once z_i is
shifted back by that coefficient's position. Summing those shifted copies
over the integers and keeping the positions that recur at least ``b`` times
gives an estimate e' of the secret. The leftover e* = e + e' is usually very
light, so it is recovered by ISD from s* = s_e + synd_h(e').
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .isd import IsdConfig, IsdResult, ParityCheck, lee_brickell
from .ring import LiftedCounts, ParameterError, RingElement, RingPair, cyclic_shift, lift_accumulate
from .scheme import ParameterSet, Signature, SigningKey, VerificationKey, sign, synd_h, verify

DEFAULT_W_BAR = 40


@dataclass(frozen=True)
class AttackConfig:
    b: int
    isd: IsdConfig = field(default_factory=IsdConfig)
    w_bar: int = DEFAULT_W_BAR


@dataclass
class AttackOutcome:
    recovered_key: RingPair | None
    estimate: RingPair
    residual_weight: int | None
    used_isd: bool
    isd: IsdResult | None = None
    wall_clock: float = 0.0
    failure: str | None = None

    @property
    def success(self) -> bool:
        return self.recovered_key is not None

    def to_record(self) -> dict:
        return {
            "success": self.success,
            "residual_weight": self.residual_weight,
            "used_isd": self.used_isd,
            "iterations": self.isd.iterations if self.isd else 0,
            "isd": self.isd.summary() if self.isd else None,
            "wall_clock": round(self.wall_clock, 6),
            "failure": self.failure,
        }


def lifted_shift_sum(z: RingElement, c: RingElement) -> LiftedCounts:
    """Integer sum of x^-v z over v in support(c)."""
    acc = LiftedCounts.zeros(z.p)
    for v in c.support():
        acc = lift_accumulate(acc, cyclic_shift(z, -v))
    return acc


def estimate_secret(sig: Signature, params: ParameterSet, b: int) -> tuple[RingPair, tuple[LiftedCounts, LiftedCounts]]:
    """Threshold estimate e' of the secret key from one signature.

    ``b = w_c + 1`` is accepted and yields e' = 0.
    """
    if sig.c.weight() != params.w_c:
        raise ParameterError(f"challenge has weight {sig.c.weight()}, expected {params.w_c}")
    if not 1 <= b <= params.w_c + 1:
        raise ParameterError(f"threshold b={b} outside [1, {params.w_c + 1}]")
    d0 = lifted_shift_sum(sig.z.a0, sig.c)
    d1 = lifted_shift_sum(sig.z.a1, sig.c)
    return RingPair(d0.threshold(b), d1.threshold(b)), (d0, d1)


def residual_syndrome(e_prime: RingPair, vk: VerificationKey, h: RingElement) -> RingElement:
    return vk.s_e + synd_h(e_prime, h)


def validate_key(candidate: RingPair, vk: VerificationKey, params: ParameterSet, rng) -> str | None:
    """Reason the candidate is not the secret key, or None if it checks out."""
    if synd_h(candidate, params.h) != vk.s_e:
        return "syndrome mismatch"
    if candidate.weight() != params.w_e:
        return f"weight {candidate.weight()} != w_e={params.w_e}"
    msg = b"qcots key-recovery check"
    if not verify(msg, vk, sign(msg, SigningKey(candidate), params, rng), params):
        return "re-signed message rejected"
    return None


def recover_key(sig: Signature, vk: VerificationKey, params: ParameterSet, cfg: AttackConfig) -> AttackOutcome:
    """Estimate e', then solve for e* = e + e' by ISD when s* != 0.

    A candidate key e' + e* must match s_e, have weight w_e and produce a
    signature that verifies; ISD candidates failing these checks are
    discarded and the search continues.
    """
    t0 = time.perf_counter()
    e_prime, _ = estimate_secret(sig, params, cfg.b)
    s_star = residual_syndrome(e_prime, vk, params.h)
    rng = np.random.default_rng([cfg.isd.rng_seed, 1])
    outcome = AttackOutcome(None, e_prime, None, used_isd=not s_star.is_zero())
    reasons = []

    def accept(e_star: RingPair) -> bool:
        reason = validate_key(e_prime + e_star, vk, params, rng)
        if reason is not None:
            reasons.append(reason)
        return reason is None

    if s_star.is_zero():
        e_star = RingPair.zero(params.p) if accept(RingPair.zero(params.p)) else None
    else:
        outcome.isd = lee_brickell(s_star, ParityCheck(params.h), cfg.w_bar, cfg.isd, accept=accept)
        e_star = outcome.isd.solution
    if e_star is None:
        outcome.failure = reasons[-1] if reasons else "isd iteration cap exhausted"
        if outcome.isd is not None and reasons:
            outcome.failure += f" ({outcome.isd.rejected_candidates} candidates rejected, cap exhausted)"
    else:
        candidate = e_prime + e_star
        assert synd_h(candidate, params.h) == vk.s_e
        outcome.recovered_key = candidate
        outcome.residual_weight = e_star.weight()
    outcome.wall_clock = time.perf_counter() - t0
    return outcome
