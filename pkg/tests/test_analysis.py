import math
from fractions import Fraction

import numpy as np
import pytest

from qcots import analysis as an
from qcots.attack import estimate_secret
from qcots.presets import PUBLISHED, preset
from qcots.ring import RingPair, random_pair
from qcots.scheme import ParameterSet, keygen, sign_with_ephemeral

from oracles import enumerate_component, enumerate_splits, exact_rates, exact_weight_pdf

TINY = ParameterSet(13, 3, 2, 3, h_seed=0)


def test_gv_distance():
    assert an.gv_distance(9602, 4801) == 1058
    assert an.gv_distance(9602, 4801, convention="shifted") == 1060
    assert an.gv_distance(2, 1, convention="shifted") == 2
    with pytest.raises(ValueError):
        an.gv_distance(10, 4, convention="nope")


def test_binomial_helpers():
    assert an.binom_pmf(np.arange(6), 5, 0.3).sum() == pytest.approx(1.0)
    assert an.binom_tail(0, 9, 0.4) == pytest.approx(1.0)
    assert an.binom_tail(10, 9, 0.4) == 0.0
    assert math.exp(an.log_comb(30, 7)) == pytest.approx(math.comb(30, 7), rel=1e-9)


def test_partition_probabilities():
    total = sum(an.partition_probability(TINY, a, c)
                for a in range(TINY.w_e + 1) for c in range(TINY.w_y + 1))
    assert total == pytest.approx(1.0)
    assert an.partition_probability(TINY, 1, 0) == pytest.approx(an.partition_probability(TINY, 2, 2))
    split = enumerate_splits(13, 3)
    for a in range(4):
        assert an.partition_probability(TINY, a, 1) == pytest.approx(float(split[a] * Fraction(26, 50)), rel=1e-12)
    assert an.partition_probability(TINY, 4, 0) == 0.0


def test_rho_parity_closed_form():
    for p, w_c, w in [(101, 7, 5), (3072, 9, 40), (13, 1, 3)]:
        params = ParameterSet(p, max(w, 1), 1, w_c)
        q = w / p
        assert an.rho_parity(params, w) == pytest.approx((1 + (1 - 2 * q) ** (w_c - 1)) / 2)


def test_rho_parity_monte_carlo():
    params = ParameterSet(101, 5, 4, 7)
    rng = np.random.default_rng(8)
    n = 100_000
    ones = rng.random((n, params.w_c - 1)) < 5 / 101
    observed = np.mean(ones.sum(axis=1) % 2 == 0)
    expected = an.rho_parity(params, 5)
    assert abs(observed - expected) <= 3 * math.sqrt(expected * (1 - expected) / n)


def test_rates_against_exact():
    for b in (1, 2, 3):
        rs, rns = an._estimator_rates(13, 3, [2], [1], b)
        ers, erns = exact_rates(13, 3, 2, 1, b)
        assert rs[0] == pytest.approx(float(ers), abs=1e-14)
        assert rns[0] == pytest.approx(float(erns), abs=1e-14)
    params = ParameterSet(13, 3, 2, 3)
    rn = an.rho_null(params, 2, 1)
    assert an.rho_set(params, rn, 2) == pytest.approx(float(exact_rates(13, 3, 2, 1, 2)[0]))
    assert an.rho_negset(params, rn, 2) == pytest.approx(float(exact_rates(13, 3, 2, 1, 2)[1]))


def test_estimator_rates_monte_carlo():
    # per-coefficient rates of the real estimator, with the split held fixed
    params = ParameterSet(97, 6, 8, 5, h_seed=3)
    rng = np.random.default_rng(21)
    b = 3
    hit_one = hit_zero = n_one = n_zero = 0
    for k in range(3000):
        sk, _ = keygen(params, rng)
        y = random_pair(params.p, params.w_y, rng)
        sig = sign_with_ephemeral(b"%d" % k, sk, params, y)
        est, _ = estimate_secret(sig, params, b)
        e0, g0 = np.asarray(sk.e.a0.coeffs), np.asarray(est.a0.coeffs)
        we, wy = int(e0.sum()), int(y.a0.weight())
        if (we, wy) != (3, 4):
            continue
        hit_one += int(g0[e0 == 1].sum())
        n_one += we
        hit_zero += int(g0[e0 == 0].sum())
        n_zero += params.p - we
    rs, rns = an._estimator_rates(params.p, params.w_c, [3], [4], b)
    for hits, n, rate in [(hit_one, n_one, rs[0]), (hit_zero, n_zero, rns[0])]:
        assert n > 0
        assert abs(hits / n - rate) <= 4 * math.sqrt(rate * (1 - rate) / n)


def test_component_pdf_matches_enumeration():
    p = 13
    for w_e_i, rs, rns in [(3, 0.8, 0.05), (0, 0.5, 0.2), (5, 0.3, 0.4), (13, 0.9, 0.1)]:
        exact = enumerate_component(p, w_e_i, Fraction(rs), Fraction(rns))
        got = an.component_pdf_from_rates(p, w_e_i, rs, rns, delta_max=p)
        assert np.max(np.abs(got.masses - np.array([float(x) for x in exact]))) < 1e-10


def test_weight_pdf_matches_exact():
    for b in (1, 2, 3):
        exact = np.array([float(x) for x in exact_weight_pdf(13, 3, 2, 3, b)])
        got = an.weight_pdf(TINY, b, delta_max=26, prune=0).masses
        assert np.max(np.abs(got - exact)) < 1e-10
        big = exact > 1e-6
        assert np.max(np.abs(got[big] / exact[big] - 1)) < 1e-6


def test_weight_pdf_pruning_accounting():
    params = preset("table1-row1")
    pdf = an.weight_pdf(params, 5)
    assert 0 < pdf.pruned < 1e-25
    assert pdf.tail < 1e-10
    assert pdf[-1] == 0.0 and pdf[10**6] == 0.0


def test_isd_iteration_cost():
    assert an.isd_iteration_cost(13, 0) == pytest.approx(math.log2(13**3 + 1))
    assert an.isd_iteration_cost(3072, 2) == pytest.approx(34.75, abs=0.01)
    costs = [an.isd_iteration_cost(500, j) for j in range(5)]
    assert costs == sorted(costs)
    with pytest.raises(ValueError):
        an.isd_iteration_cost(10, -1)


def test_info_set_success_edges():
    assert an.info_set_success(20, 0, 0) == pytest.approx(1.0)
    assert an.info_set_success(20, 2, 2) == pytest.approx(1.0)
    # a single error falls on either half with probability 1/2
    assert an.info_set_success(20, 1, 0) == pytest.approx(0.5)


def test_isd_success_prob_edges():
    params = preset("table1-row1")
    with pytest.raises(ValueError):
        an.isd_success_prob(params, 5, 2, w_bar=0)
    pdf = an.WeightDistribution(np.array([1.0]))
    assert an.isd_success_prob(params, 5, 2, pdf=pdf) == 0.0
    # b = w_c + 1 leaves e* = e, so only weight w_e = 3 is reachable
    with pytest.raises(an.UndefinedCost):
        an.isd_expected_cost(ParameterSet(13, 3, 2, 3), 4, w_bar=2)


def test_csv_row_format():
    rep = an.isd_expected_cost(ParameterSet(257, 10, 12, 4), 2)
    row = rep.csv_row()
    assert tuple(row) == an.CSV_COLUMNS
    assert row["gv"] == an.gv_distance(514, 257)


@pytest.mark.parametrize("name", sorted(PUBLISHED))
def test_published_rows(name):
    p, w_e, w_y, w_c, b, log_p0, log_cisd = PUBLISHED[name]
    rep = an.isd_expected_cost(ParameterSet(p, w_e, w_y, w_c), b)
    assert rep.log2_p_zero == pytest.approx(log_p0, abs=0.3)
    assert rep.log2_c_isd == pytest.approx(log_cisd, abs=0.3)


def test_threshold_selection():
    assert an.select_threshold(preset("table1-row1"))[0] == 5
    assert an.select_threshold(ParameterSet(257, 10, 12, 1))[0] == 1
