"""Closed-form model of the attack: residual-weight distribution and ISD cost.

Binomial and hypergeometric terms are evaluated from log-gamma so that
paper-sized arguments (C(2p, p) with p near 10^4) stay finite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view
from scipy.special import gammaln, xlog1py, xlogy

from .scheme import ParameterSet

DEFAULT_DELTA_MAX = 200
DEFAULT_W_BAR = 40
DEFAULT_PRUNE = 1e-30

CSV_COLUMNS = (
    "p", "w_e", "w_y", "w_c", "b", "j", "w_bar",
    "log2_p_zero", "log2_P_iter", "log2_C_iter", "log2_C_ISD", "gv",
)


class UndefinedCost(ArithmeticError):
    """The ISD success probability is zero, so the expected cost is infinite."""


def log_comb(n, k):
    n = np.asarray(n, dtype=float)
    k = np.asarray(k, dtype=float)
    valid = (k >= 0) & (k <= n)
    with np.errstate(invalid="ignore"):
        out = gammaln(n + 1) - gammaln(k + 1) - gammaln(n - k + 1)
    return np.where(valid, out, -np.inf)


def binom_pmf(k, n: int, q: float) -> np.ndarray:
    k = np.asarray(k)
    # out-of-range k meets log(0) terms here; those become nan and are masked
    with np.errstate(invalid="ignore"):
        logp = log_comb(n, k) + xlogy(k, q) + xlog1py(n - k, -q)
    return np.exp(np.where(np.isfinite(logp), logp, -np.inf))


def binom_tail(lo: int, n: int, q: float) -> float:
    """P[X >= lo] for X ~ Binomial(n, q), summed term by term."""
    if lo > n:
        return 0.0
    return float(binom_pmf(np.arange(max(lo, 0), n + 1), n, q).sum())


@lru_cache(maxsize=None)
def gv_distance(n: int, k: int, convention: str = "radius") -> int:
    """Gilbert-Varshamov distance of a random [n, k] binary code, exactly.

    ``"radius"``: largest d with sum_{j<=d} C(n, j) < 2^(n-k), i.e. the
    largest Hamming ball smaller than the syndrome space (1058 for
    n = 9602, k = 4801). ``"shifted"``: largest d with
    sum_{j<=d-2} C(n-1, j) < 2^(n-k), the bound a code of minimum distance
    d is guaranteed to meet (1060 for the same code).
    """
    if not 0 < k < n:
        raise ValueError("need 0 < k < n")
    if convention == "radius":
        m, offset = n, 0
    elif convention == "shifted":
        m, offset = n - 1, 2
    else:
        raise ValueError(f"unknown convention {convention!r}")
    bound = 1 << (n - k)
    # find the largest top index t with sum_{j<=t} C(m, j) < bound
    t, total, term = -1, 0, 1
    while t + 1 <= m and total + term < bound:
        total += term
        t += 1
        term = term * (m - t) // (t + 1)
    return t + offset


def partition_probability(params: ParameterSet, w0_e: int, w0_y: int) -> float:
    """Probability that e has w0_e ones in e_0 and y has w0_y ones in y_0."""
    p = params.p

    def split(w0, w):
        if not 0 <= w0 <= w:
            return 0.0
        return float(np.exp(log_comb(p, w0) + log_comb(p, w - w0) - log_comb(2 * p, w)))

    return split(w0_e, params.w_e) * split(w0_y, params.w_y)


def rho_parity(params: ParameterSet, w_e_i: int) -> float:
    """Probability that w_c - 1 random shifts of e_i add to 0 at a position."""
    n = params.w_c - 1
    return float(binom_pmf(np.arange(0, n + 1, 2), n, w_e_i / params.p).sum())


def rho_null(params: ParameterSet, w_e_i: int, w_y_i: int, rho: float | None = None) -> float:
    """Probability that the noise added to e_i in one shifted copy of z_i is 0."""
    if rho is None:
        rho = rho_parity(params, w_e_i)
    q = w_y_i / params.p
    return (1 - rho) * q + rho * (1 - q)


def rho_set(params: ParameterSet, rho_null: float, b: int) -> float:
    return binom_tail(b, params.w_c, rho_null)


def rho_negset(params: ParameterSet, rho_null: float, b: int) -> float:
    return binom_tail(b, params.w_c, 1 - rho_null)


@dataclass
class WeightDistribution:
    """P{weight = d} for d = 0..len(masses)-1.

    ``pruned`` is probability mass dropped on purpose (negligible partition
    terms); everything missing beyond that lies above the truncation point.
    """

    masses: np.ndarray
    pruned: float = 0.0

    @property
    def delta_max(self) -> int:
        return len(self.masses) - 1

    @property
    def tail(self) -> float:
        return max(0.0, 1.0 - float(self.masses.sum()))

    def __getitem__(self, d: int) -> float:
        return float(self.masses[d]) if 0 <= d < len(self.masses) else 0.0

    def items(self):
        return ((d, float(m)) for d, m in enumerate(self.masses))


def _estimator_rates(p, w_c, w_e_i, w_y_i, b):
    """Vectorised (rho_set, rho_negset) for arrays of component weights."""
    w_e_i = np.asarray(w_e_i, dtype=float)[..., None]
    w_y_i = np.asarray(w_y_i, dtype=float)[..., None]
    n = w_c - 1
    rho = binom_pmf(np.arange(0, n + 1, 2), n, w_e_i / p).sum(axis=-1, keepdims=True)
    qy = w_y_i / p
    rn = (1 - rho) * qy + rho * (1 - qy)
    hits = np.arange(b, w_c + 1)
    rs = binom_pmf(hits, w_c, rn).sum(axis=-1)
    rns = binom_pmf(hits, w_c, 1 - rn).sum(axis=-1)
    return rs, rns


def _residual_masses(p, w_e_i, rs, rns, delta_max):
    """Rows of P{weight(e*_i) = d}, d <= delta_max, one per component.

    weight = t + u where t = w_e_i - u_set ones are missed and u zeros are
    wrongly set, so the pmf is a truncated convolution of two binomials.
    """
    w_e_i = np.atleast_1d(np.asarray(w_e_i))[:, None]
    rs = np.atleast_1d(rs)[:, None]
    rns = np.atleast_1d(rns)[:, None]
    t = np.arange(min(int(w_e_i.max()), delta_max) + 1)[None, :]
    missed = binom_pmf(w_e_i - t, w_e_i, rs)
    false_alarms = binom_pmf(np.arange(delta_max + 1)[None, :], p - w_e_i, rns)
    return _truncated_convolve(missed, false_alarms, delta_max)


def _truncated_convolve(a, b, delta_max, weights=None, chunk=256):
    """Row-wise ``convolve(a[k], b[k])[:delta_max + 1]``.

    With ``weights`` the rows are instead summed with those weights into a
    single vector. Works on a strided Toeplitz view of ``b``, in chunks to
    bound memory.
    """
    size = delta_max + 1
    a = np.pad(a[:, :size], ((0, 0), (0, size - min(a.shape[1], size))))[:, ::-1]
    b = np.pad(b[:, :size], ((0, 0), (delta_max, size - min(b.shape[1], size))))
    out = np.zeros(size) if weights is not None else np.empty((a.shape[0], size))
    for lo in range(0, a.shape[0], chunk):
        window = sliding_window_view(b[lo : lo + chunk], size, axis=1)
        if weights is None:
            out[lo : lo + chunk] = np.einsum("kdt,kt->kd", window, a[lo : lo + chunk])
        else:
            out += np.einsum("kdt,kt->d", window, weights[lo : lo + chunk, None] * a[lo : lo + chunk])
    return out


def component_weight_pdf(params: ParameterSet, w_e_i: int, w_y_i: int, b: int,
                         delta_max: int = DEFAULT_DELTA_MAX) -> WeightDistribution:
    """Distribution of weight(e*_i) for one component with the given split."""
    rs, rns = _estimator_rates(params.p, params.w_c, [w_e_i], [w_y_i], b)
    return WeightDistribution(_residual_masses(params.p, [w_e_i], rs, rns, delta_max)[0])


def component_pdf_from_rates(p: int, w_e_i: int, rs: float, rns: float,
                             delta_max: int = DEFAULT_DELTA_MAX) -> WeightDistribution:
    """Same as :func:`component_weight_pdf` but with the two estimator rates given directly."""
    return WeightDistribution(_residual_masses(p, [w_e_i], [rs], [rns], delta_max)[0])


def _split_probabilities(p: int, w: int) -> np.ndarray:
    k = np.arange(w + 1)
    return np.exp(log_comb(p, k) + log_comb(p, w - k) - log_comb(2 * p, w))


def weight_pdf(params: ParameterSet, b: int, delta_max: int = DEFAULT_DELTA_MAX,
               prune: float = DEFAULT_PRUNE) -> WeightDistribution:
    """Distribution of weight(e*) averaged over the weight splits of e and y.

    Splits whose probability is below ``prune`` are skipped and their mass
    is reported in ``pruned``; ``prune=0`` evaluates every term.
    """
    p, w_e, w_y = params.p, params.w_e, params.w_y
    split = np.outer(_split_probabilities(p, w_e), _split_probabilities(p, w_y))
    keep = (split > 0) & (split >= prune)
    pruned = float(split[~keep].sum())
    a, c = np.nonzero(keep)
    # component 1 of split (a, c) is component 0 of split (w_e - a, w_y - c)
    keys = np.unique(np.concatenate([a * (w_y + 1) + c, (w_e - a) * (w_y + 1) + (w_y - c)]))
    kw_e, kw_y = np.divmod(keys, w_y + 1)
    rs, rns = _estimator_rates(p, params.w_c, kw_e, kw_y, b)
    comp = _residual_masses(p, kw_e, rs, rns, delta_max)
    i0 = np.searchsorted(keys, a * (w_y + 1) + c)
    i1 = np.searchsorted(keys, (w_e - a) * (w_y + 1) + (w_y - c))
    masses = _truncated_convolve(comp[i0], comp[i1], delta_max, weights=split[a, c])
    return WeightDistribution(masses, pruned)


def isd_iteration_cost(p: int, j: int) -> float:
    """log2(p^3 + sum_{l<=j} C(p, l)), evaluated exactly."""
    if j < 0:
        raise ValueError("j must be non-negative")
    return math.log2(p**3 + sum(math.comb(p, l) for l in range(j + 1)))


def info_set_success(p: int, delta: int, j: int) -> float:
    """Probability that a random size-p subset of 2p columns holds <= j of delta errors."""
    l = np.arange(min(delta, j) + 1)
    terms = log_comb(delta, l) + log_comb(2 * p - delta, p - l) - log_comb(2 * p, p)
    return float(np.exp(terms).sum())


def isd_success_prob(params: ParameterSet, b: int, j: int, w_bar: int = DEFAULT_W_BAR,
                     pdf: WeightDistribution | None = None) -> float:
    """Per-iteration Lee-Brickell success probability against a residual of unknown weight.

    Weight 0 is excluded: those residuals never reach ISD.
    """
    if w_bar < 1:
        raise ValueError("w_bar must be at least 1")
    if pdf is None:
        pdf = weight_pdf(params, b, max(w_bar, DEFAULT_DELTA_MAX))
    return sum(pdf[d] * info_set_success(params.p, d, j) for d in range(1, w_bar + 1))


@dataclass
class SecurityReport:
    params: ParameterSet
    b: int
    j: int
    w_bar: int
    log2_p_zero: float
    log2_p_iter: float
    log2_c_iter: float
    log2_c_isd: float
    gv: int
    pdf: WeightDistribution | None = field(default=None, repr=False)

    def csv_row(self) -> dict:
        pr = self.params
        return {
            "p": pr.p, "w_e": pr.w_e, "w_y": pr.w_y, "w_c": pr.w_c, "b": self.b, "j": self.j,
            "w_bar": self.w_bar,
            "log2_p_zero": f"{self.log2_p_zero:.4f}",
            "log2_P_iter": f"{self.log2_p_iter:.4f}",
            "log2_C_iter": f"{self.log2_c_iter:.4f}",
            "log2_C_ISD": f"{self.log2_c_isd:.4f}",
            "gv": self.gv,
        }


def _log2(x: float) -> float:
    return math.log2(x) if x > 0 else -math.inf


def isd_expected_cost(params: ParameterSet, b: int, j: int = 2, w_bar: int = DEFAULT_W_BAR,
                      delta_max: int = DEFAULT_DELTA_MAX) -> SecurityReport:
    pdf = weight_pdf(params, b, max(delta_max, w_bar))
    p_iter = isd_success_prob(params, b, j, w_bar, pdf=pdf)
    if p_iter <= 0:
        raise UndefinedCost(f"P_iter = 0 for {params} at b={b}")
    c_iter = isd_iteration_cost(params.p, j)
    return SecurityReport(
        params, b, j, w_bar,
        log2_p_zero=_log2(pdf[0]),
        log2_p_iter=math.log2(p_iter),
        log2_c_iter=c_iter,
        log2_c_isd=c_iter - math.log2(p_iter),
        gv=gv_distance(2 * params.p, params.p),
        pdf=pdf,
    )


def expected_attack_cost(report: SecurityReport) -> float:
    """log2 of the ISD work averaged over signatures, counting free weight-0 residuals."""
    p_zero = 2.0**report.log2_p_zero
    if p_zero >= 1.0:
        return -math.inf
    return report.log2_c_isd + math.log2(1.0 - p_zero)


def select_threshold(params: ParameterSet, j: int = 2, w_bar: int = DEFAULT_W_BAR) -> tuple[int, SecurityReport]:
    """Threshold minimising the expected attack cost; ties go to the larger b."""
    best, best_cost = None, math.inf
    for b in range(params.w_c, 0, -1):
        try:
            report = isd_expected_cost(params, b, j, w_bar)
        except UndefinedCost:
            continue
        cost = expected_attack_cost(report)
        if best is None or cost < best_cost:
            best, best_cost = report, cost
    if best is None:
        raise UndefinedCost(f"no threshold gives a finite cost for {params}")
    return best.b, best
