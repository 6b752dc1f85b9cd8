"""Arithmetic in R = F2[x]/(x^p + 1) and R^2.

Coefficients are held densely as read-only numpy ``uint8`` arrays of 0/1;
sparse supports are only materialised when multiplying by a low-weight
operand, which is where all the time goes in this package.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class DimensionError(ValueError):
    """Operands live in rings of different size."""


class ParameterError(ValueError):
    pass


def _frozen(arr) -> np.ndarray:
    out = np.array(arr, dtype=np.uint8, copy=True)
    out.setflags(write=False)
    return out


class RingElement:
    """A polynomial of degree < p with binary coefficients.

    ``coeffs[j]`` is the coefficient of ``x**j``. Instances are immutable
    and support ``+`` (XOR), ``*`` (cyclic convolution) and ``==``.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        coeffs = _frozen(coeffs)
        if coeffs.ndim != 1 or coeffs.size == 0:
            raise ParameterError("coefficients must be a non-empty 1-d sequence")
        if np.any(coeffs > 1):
            raise ParameterError("coefficients must be 0 or 1")
        self.coeffs = coeffs

    @classmethod
    def zero(cls, p: int) -> RingElement:
        return cls(np.zeros(p, dtype=np.uint8))

    @classmethod
    def one(cls, p: int) -> RingElement:
        return cls.monomial(p, 0)

    @classmethod
    def monomial(cls, p: int, v: int) -> RingElement:
        c = np.zeros(p, dtype=np.uint8)
        c[v % p] = 1
        return cls(c)

    @classmethod
    def from_support(cls, p: int, support) -> RingElement:
        c = np.zeros(p, dtype=np.uint8)
        c[np.asarray(list(support), dtype=np.int64) % p] = 1
        return cls(c)

    @property
    def p(self) -> int:
        return self.coeffs.size

    def weight(self) -> int:
        return int(np.count_nonzero(self.coeffs))

    def support(self) -> tuple[int, ...]:
        return tuple(int(i) for i in np.flatnonzero(self.coeffs))

    def is_zero(self) -> bool:
        return not self.coeffs.any()

    def shift(self, v: int) -> RingElement:
        """Return ``x**v * self``; negative ``v`` shifts the other way."""
        return RingElement(np.roll(self.coeffs, v % self.p))

    def _check(self, other: RingElement) -> None:
        if not isinstance(other, RingElement):
            raise TypeError(f"expected RingElement, got {type(other).__name__}")
        if other.p != self.p:
            raise DimensionError(f"ring size mismatch: p={self.p} vs p={other.p}")

    def __add__(self, other: RingElement) -> RingElement:
        self._check(other)
        return RingElement(self.coeffs ^ other.coeffs)

    __sub__ = __add__

    def __mul__(self, other: RingElement) -> RingElement:
        self._check(other)
        # iterate the sparser operand's support: result = XOR of its shifts
        a, b = (self, other) if self.weight() >= other.weight() else (other, self)
        return RingElement(_shift_xor(a.coeffs, np.flatnonzero(b.coeffs)))

    def __eq__(self, other) -> bool:
        if not isinstance(other, RingElement):
            return NotImplemented
        return self.p == other.p and np.array_equal(self.coeffs, other.coeffs)

    def __hash__(self) -> int:
        return hash((self.p, self.coeffs.tobytes()))

    def __repr__(self) -> str:
        supp = self.support()
        if len(supp) > 8:
            return f"RingElement(p={self.p}, weight={len(supp)})"
        return f"RingElement(p={self.p}, support={supp})"

    def to_bytes(self) -> bytes:
        """Little-endian bit order, coefficient 0 in the LSB of byte 0."""
        return np.packbits(self.coeffs, bitorder="little").tobytes()

    @classmethod
    def from_bytes(cls, data: bytes, p: int) -> RingElement:
        nbytes = (p + 7) // 8
        if len(data) != nbytes:
            raise ParameterError(f"expected {nbytes} bytes for p={p}, got {len(data)}")
        bits = np.unpackbits(np.frombuffer(data, dtype=np.uint8), bitorder="little")
        if bits[p:].any():
            raise ParameterError("non-zero padding bits")
        return cls(bits[:p])


def _shift_xor(dense: np.ndarray, shifts: np.ndarray) -> np.ndarray:
    p = dense.size
    if shifts.size == 0:
        return np.zeros(p, dtype=np.uint8)
    # row v of idx reads dense at (j - v) mod p, i.e. x^v * dense
    idx = (np.arange(p)[None, :] - shifts[:, None]) % p
    return (dense[idx].sum(axis=0, dtype=np.int64) & 1).astype(np.uint8)


def ring_add(a: RingElement, b: RingElement) -> RingElement:
    return a + b


def ring_mul(a: RingElement, b: RingElement) -> RingElement:
    return a * b


def cyclic_shift(a: RingElement, v: int) -> RingElement:
    return a.shift(v)


def weight(a) -> int:
    return a.weight()


def support(a: RingElement) -> tuple[int, ...]:
    return a.support()


@dataclass(frozen=True)
class RingPair:
    """An element ``[a0, a1]`` of R^2."""

    a0: RingElement
    a1: RingElement

    def __post_init__(self):
        if self.a0.p != self.a1.p:
            raise DimensionError("both components must share p")

    @classmethod
    def zero(cls, p: int) -> RingPair:
        return cls(RingElement.zero(p), RingElement.zero(p))

    @classmethod
    def from_vector(cls, bits, p: int) -> RingPair:
        bits = np.asarray(bits, dtype=np.uint8)
        if bits.shape != (2 * p,):
            raise DimensionError(f"expected a length-{2 * p} vector")
        return cls(RingElement(bits[:p]), RingElement(bits[p:]))

    @property
    def p(self) -> int:
        return self.a0.p

    def __iter__(self):
        return iter((self.a0, self.a1))

    def __getitem__(self, i: int) -> RingElement:
        return (self.a0, self.a1)[i]

    def to_vector(self) -> np.ndarray:
        return np.concatenate([self.a0.coeffs, self.a1.coeffs])

    def weight(self) -> int:
        return self.a0.weight() + self.a1.weight()

    def __add__(self, other: RingPair) -> RingPair:
        return RingPair(self.a0 + other.a0, self.a1 + other.a1)

    def scale(self, c: RingElement) -> RingPair:
        """Component-wise product ``c * [a0, a1]``."""
        return RingPair(c * self.a0, c * self.a1)

    def shift(self, v: int) -> RingPair:
        return RingPair(self.a0.shift(v), self.a1.shift(v))

    def to_bytes(self) -> bytes:
        return self.a0.to_bytes() + self.a1.to_bytes()

    @classmethod
    def from_bytes(cls, data: bytes, p: int) -> RingPair:
        n = (p + 7) // 8
        if len(data) != 2 * n:
            raise ParameterError(f"expected {2 * n} bytes for a pair at p={p}, got {len(data)}")
        return cls(RingElement.from_bytes(data[:n], p), RingElement.from_bytes(data[n:], p))


class LiftedCounts:
    """Integer tallies of binary polynomials added in Z (so 1 + 1 = 2)."""

    __slots__ = ("counts", "summands")

    def __init__(self, counts, summands: int = 0):
        counts = np.array(counts, dtype=np.int64, copy=True)
        counts.setflags(write=False)
        self.counts = counts
        self.summands = summands

    @classmethod
    def zeros(cls, p: int) -> LiftedCounts:
        return cls(np.zeros(p, dtype=np.int64))

    @property
    def p(self) -> int:
        return self.counts.size

    def threshold(self, b: int) -> RingElement:
        """Binary polynomial with a one wherever the count reaches ``b``."""
        return RingElement((self.counts >= b).astype(np.uint8))

    def __repr__(self) -> str:
        return f"LiftedCounts(p={self.p}, summands={self.summands}, max={int(self.counts.max())})"


def lift_accumulate(acc: LiftedCounts, a: RingElement) -> LiftedCounts:
    if acc.p != a.p:
        raise DimensionError(f"ring size mismatch: p={acc.p} vs p={a.p}")
    return LiftedCounts(acc.counts + a.coeffs, acc.summands + 1)


def sample_fixed_weight(n: int, w: int, rng: np.random.Generator) -> np.ndarray:
    """Uniform length-``n`` binary vector of weight exactly ``w``.

    Partial Fisher-Yates: the first ``w`` slots of a lazily permuted
    ``range(n)`` are the support.
    """
    if not 0 <= w <= n:
        raise ParameterError(f"weight {w} outside [0, {n}]")
    swaps = rng.integers(np.arange(w), n) if w else ()
    perm: dict[int, int] = {}
    out = np.zeros(n, dtype=np.uint8)
    for i, j in enumerate(swaps):
        j = int(j)
        pick = perm.get(j, j)
        perm[j] = perm.get(i, i)
        out[pick] = 1
    return out


def random_pair(p: int, w: int, rng: np.random.Generator) -> RingPair:
    """Draw from D_{2p,w}: a pair whose total weight is ``w``."""
    return RingPair.from_vector(sample_fixed_weight(2 * p, w, rng), p)
