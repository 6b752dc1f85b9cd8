"""
A first look at the ring and the signature scheme
=================================================

Polynomials over F2 modulo x^p + 1 are stored as dense 0/1 arrays.
"""

import numpy as np

from qcots.ring import RingElement, RingPair
from qcots.scheme import ParameterSet, keygen, sign, verify, synd_h

p = 11
a = RingElement.from_support(p, [0, 3])        # 1 + x^3
b = RingElement.from_support(p, [1, 9])        # x + x^9
print("a*b support:", (a * b).support())         # x + x^4 + x^9 + x^12, and x^12 = x cancels
print("x^10 * x =", RingElement.monomial(p, 10) * RingElement.monomial(p, 1))

# %%
# Multiplying by x^v is a cyclic shift, so products with sparse elements
# are cheap: XOR one shifted copy per nonzero coefficient.
print(a.shift(10).support(), (a * RingElement.monomial(p, 10)).support())

# %%
# The scheme. Keys and ephemeral vectors are pairs of ring elements whose
# total weight is fixed; the public syndrome is a0 + a1*h.
params = ParameterSet(p=3072, w_e=85, w_y=85, w_c=7)
rng = np.random.default_rng(2024)
sk, vk = keygen(params, rng)
print("secret key weight", sk.e.weight(), "public syndrome weight", vk.s_e.weight())

sig = sign(b"pay bob 10", sk, params, rng)
print("challenge weight", sig.c.weight(), "response weight", sig.z.weight())
print("verifies:", verify(b"pay bob 10", vk, sig, params))
print("other message:", verify(b"pay bob 99", vk, sig, params))

# %%
# The response is z = c*e + y. Linearity of the syndrome map is what makes
# verification work: synd(z) = c*s_e + synd(y).
zero_check = synd_h(sig.z, params.h) + sig.c * vk.s_e
print("synd(y) has weight", zero_check.weight())
print("RingPair round trip:", RingPair.from_bytes(sig.z.to_bytes(), p=params.p) == sig.z)
