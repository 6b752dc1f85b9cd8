"""A quasi-cyclic one-time code-based signature scheme and a single-signature
key-recovery attack against it, with the closed-form cost model."""

from .analysis import (
    SecurityReport,
    WeightDistribution,
    gv_distance,
    isd_expected_cost,
    select_threshold,
    weight_pdf,
)
from .attack import AttackConfig, AttackOutcome, estimate_secret, recover_key, residual_syndrome
from .isd import IsdConfig, IsdResult, ParityCheck, brute_force_sdp, lee_brickell
from .presets import PRESETS, preset
from .ring import LiftedCounts, RingElement, RingPair, sample_fixed_weight
from .scheme import ParameterSet, Signature, SigningKey, VerificationKey, keygen, sign, synd_h, verify

__version__ = "0.1.0"
