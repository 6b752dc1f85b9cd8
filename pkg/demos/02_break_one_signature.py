"""
Recovering a signing key from a single signature
================================================

Each shifted copy x^-v z, for v in the support of the challenge, contains a
copy of e plus noise. Counting how often every position is set and keeping
the positions seen at least b times gives an estimate e'. Whatever the
estimate got wrong, e* = e + e', has low weight and a known syndrome, so
information set decoding finishes the job.
"""

import time

import numpy as np

from qcots.attack import AttackConfig, estimate_secret, recover_key, residual_syndrome
from qcots.isd import IsdConfig
from qcots.presets import preset
from qcots.scheme import keygen, sign

params = preset("table1-row1")
rng = np.random.default_rng(7)
sk, vk = keygen(params, rng)
sig = sign(b"a one-time message", sk, params, rng)

# %%
# The estimate on its own. Lower thresholds catch more of e but also let
# noise through.
for b in range(3, params.w_c + 1):
    e_prime, _ = estimate_secret(sig, params, b)
    print(f"b={b}: |e'|={e_prime.weight():4d}  residual weight {(sk.e + e_prime).weight():4d}")

# %%
# The residual syndrome is computable from public data only.
e_prime, (d0, d1) = estimate_secret(sig, params, 5)
s_star = residual_syndrome(e_prime, vk, params.h)
print("largest lifted count:", int(max(d0.counts.max(), d1.counts.max())), "of", params.w_c)
print("residual syndrome weight:", s_star.weight())

# %%
# Full pipeline. Every candidate is checked against the public key, its
# weight and a fresh sign/verify round trip before it is accepted.
t0 = time.perf_counter()
outcome = recover_key(sig, vk, params, AttackConfig(b=5, isd=IsdConfig(j=2, max_iterations=1000, rng_seed=1)))
print(outcome.to_record())
print("recovered the planted key:", outcome.recovered_key == sk.e, f"({time.perf_counter() - t0:.1f}s)")
