"""
Expected attack cost for the published parameter sets
=====================================================

For each instance we compute the probability that the estimate is already
exact and the log2 cost of finishing with Lee-Brickell ISD (j = 2, residual
weights up to 40).
"""

from qcots.analysis import isd_expected_cost, weight_pdf
from qcots.presets import PUBLISHED, preset

print(f"{'instance':12s} {'b':>3s} {'log2 P0':>9s} {'published':>9s} {'log2 C_ISD':>10s} {'published':>9s}")
for name, (*_, b, p0, cisd) in PUBLISHED.items():
    rep = isd_expected_cost(preset(name), b)
    print(f"{name:12s} {b:3d} {rep.log2_p_zero:9.2f} {p0:9.2f} {rep.log2_c_isd:10.2f} {cisd:9.2f}")

# %%
# The last row is the odd one out: the printed cost is reached at b = 8,
# not at the listed b = 7.
rep8 = isd_expected_cost(preset("table2-row5"), 8)
print("table2-row5 at b=8:", round(rep8.log2_p_zero, 2), round(rep8.log2_c_isd, 2))

# %%
# Where the mass of the residual weight sits for the first instance.
pdf = weight_pdf(preset("table1-row1"), 5)
for d in range(0, 8):
    print(d, f"{pdf[d]:.4f}", "#" * int(200 * pdf[d]))
