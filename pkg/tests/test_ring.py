import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qcots.ring import (
    DimensionError,
    LiftedCounts,
    ParameterError,
    RingElement,
    RingPair,
    cyclic_shift,
    lift_accumulate,
    ring_add,
    ring_mul,
    sample_fixed_weight,
    support,
    weight,
)

from oracles import schoolbook_mul


def elem(p, supp):
    return RingElement.from_support(p, supp)


@st.composite
def ring_elements(draw, p=None, n=1):
    p = p or draw(st.integers(1, 64))
    return [RingElement(draw(st.lists(st.integers(0, 1), min_size=p, max_size=p))) for _ in range(n)]


def test_add_examples():
    a = elem(7, [0, 3, 5])
    assert ring_add(a, a).is_zero()
    assert ring_add(elem(3, [0]), elem(3, [1])) == elem(3, [0, 1])
    assert a + RingElement.zero(7) == a


def test_mul_examples():
    assert ring_mul(elem(3, [1]), elem(3, [2])) == RingElement.one(3)
    a = elem(11, [0, 4, 9])
    assert a * RingElement.one(11) == a
    assert (elem(2, [0, 1]) * elem(2, [0, 1])).is_zero()


def test_dimension_errors():
    with pytest.raises(DimensionError):
        elem(3, [0]) + elem(4, [0])
    with pytest.raises(DimensionError):
        elem(3, [0]) * elem(4, [0])
    with pytest.raises(DimensionError):
        lift_accumulate(LiftedCounts.zeros(5), elem(4, [0]))


def test_shift_examples():
    p = 9
    assert cyclic_shift(elem(p, [1]), -1) == RingElement.one(p)
    a = elem(p, [0, 2, 7])
    assert cyclic_shift(a, 0) == a
    assert cyclic_shift(a, p) == a
    assert cyclic_shift(a, 3) == elem(p, [3, 5, 1])
    # x^v * a, as a ring product
    assert cyclic_shift(a, -4) == a * RingElement.monomial(p, -4)


def test_weight_support():
    assert weight(RingElement.zero(5)) == 0
    a = elem(5, [0, 2])
    assert weight(a) == 2 and support(a) == (0, 2)
    assert weight(cyclic_shift(a, 3)) == 2


def test_lift_accumulate():
    a = elem(10, [1, 4, 8])
    acc = lift_accumulate(LiftedCounts.zeros(10), RingElement.zero(10))
    assert not acc.counts.any()
    acc = lift_accumulate(lift_accumulate(LiftedCounts.zeros(10), a), a)
    assert sorted(np.flatnonzero(acc.counts == 2)) == [1, 4, 8]
    assert acc.counts.sum() == 6 and acc.summands == 2


@given(st.integers(1, 30), st.integers(0, 2**32))
def test_lift_bound(k, seed):
    rng = np.random.default_rng(seed)
    acc = LiftedCounts.zeros(17)
    for _ in range(k):
        acc = lift_accumulate(acc, RingElement(rng.integers(0, 2, 17)))
    assert acc.counts.max() <= k and acc.counts.min() >= 0


def test_sample_fixed_weight_edges(rng):
    assert not sample_fixed_weight(12, 0, rng).any()
    assert sample_fixed_weight(12, 12, rng).all()
    with pytest.raises(ParameterError):
        sample_fixed_weight(5, 6, rng)


def test_sample_fixed_weight_marginals():
    # each position is set with probability w/n = 0.25; 3 sigma binomial band
    rng = np.random.default_rng(2024)
    n, w, draws = 20, 5, 100_000
    freq = np.zeros(n)
    for _ in range(draws):
        v = sample_fixed_weight(n, w, rng)
        assert v.sum() == w
        freq += v
    freq /= draws
    sigma = np.sqrt(0.25 * 0.75 / draws)
    assert np.all(np.abs(freq - 0.25) <= 3 * sigma)


def test_sample_fixed_weight_all_patterns_reachable():
    rng = np.random.default_rng(7)
    seen = {tuple(sample_fixed_weight(6, 2, rng)) for _ in range(2000)}
    assert len(seen) == 15


def test_sample_reproducible():
    a = sample_fixed_weight(6144, 85, np.random.default_rng(99))
    b = sample_fixed_weight(6144, 85, np.random.default_rng(99))
    assert np.array_equal(a, b)


@given(ring_elements(n=2))
def test_triangle_inequality(pair):
    a, b = pair
    s = a + b
    assert weight(s) <= weight(a) + weight(b)
    disjoint = not set(support(a)) & set(support(b))
    assert (weight(s) == weight(a) + weight(b)) == disjoint


@settings(max_examples=200)
@given(ring_elements(n=2))
def test_mul_matches_schoolbook(pair):
    a, b = pair
    assert list((a * b).coeffs) == schoolbook_mul(list(a.coeffs), list(b.coeffs))


@given(ring_elements(), st.integers(-200, 200))
def test_shift_inverse(a, v):
    (a,) = a
    assert cyclic_shift(cyclic_shift(a, v), -v) == a


@given(ring_elements(n=3))
def test_ring_laws(triple):
    a, b, c = triple
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)


def test_serialization():
    a = elem(10, [0, 9])
    assert a.to_bytes() == bytes([0b00000001, 0b00000010])
    assert RingElement.from_bytes(a.to_bytes(), 10) == a
    pair = RingPair(a, elem(10, [3]))
    assert pair.to_bytes() == a.to_bytes() + elem(10, [3]).to_bytes()
    assert RingPair.from_bytes(pair.to_bytes(), 10) == pair
    with pytest.raises(ParameterError):
        RingElement.from_bytes(b"\x00", 10)
    with pytest.raises(ParameterError):
        RingElement.from_bytes(bytes([0, 0b100]), 10)  # padding bit set


def test_pair_vector_layout():
    pair = RingPair(elem(4, [1]), elem(4, [0, 3]))
    assert list(pair.to_vector()) == [0, 1, 0, 0, 1, 0, 0, 1]
    assert RingPair.from_vector(pair.to_vector(), 4) == pair
    with pytest.raises(DimensionError):
        RingPair(elem(4, [1]), elem(5, [1]))


def test_immutable():
    a = elem(5, [1])
    with pytest.raises(ValueError):
        a.coeffs[0] = 1
