"""Lee-Brickell information set decoding for H = [I | circ(h)].

One iteration draws a uniformly random size-p set of columns, brings it to
systematic form (singular draws are redrawn and not counted), and then
tests every error pattern of weight <= j on the remaining p columns.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import gf2
from .ring import ParameterError, RingElement, RingPair
from .scheme import synd_h


class EnumerationTooLarge(RuntimeError):
    pass


@dataclass(frozen=True)
class ParityCheck:
    """Implicit p x 2p matrix [I | circ(h)]; column p+j is h shifted by j."""

    h: RingElement

    @property
    def p(self) -> int:
        return self.h.p

    @cached_property
    def dense(self) -> np.ndarray:
        p = self.p
        circ = self.h.coeffs[(np.arange(p)[:, None] - np.arange(p)[None, :]) % p]
        out = np.concatenate([np.eye(p, dtype=np.uint8), circ], axis=1)
        out.setflags(write=False)
        return out

    def column(self, j: int) -> RingElement:
        return RingElement(self.dense[:, j])


@dataclass(frozen=True)
class IsdConfig:
    j: int = 2
    max_iterations: int = 1000
    rng_seed: int = 0

    def __post_init__(self):
        if self.j < 0:
            raise ParameterError("j must be non-negative")
        if self.max_iterations < 1:
            raise ParameterError("max_iterations must be at least 1")


@dataclass
class IsdResult:
    solution: RingPair | None
    iterations: int = 0
    singular_resamples: int = 0
    patterns_tested: int = 0
    rejected_candidates: int = 0

    @property
    def success(self) -> bool:
        return self.solution is not None

    def summary(self) -> dict:
        return {
            "success": self.success,
            "iterations": self.iterations,
            "singular_resamples": self.singular_resamples,
            "patterns_tested": self.patterns_tested,
            "rejected_candidates": self.rejected_candidates,
        }


@dataclass
class SystematicForm:
    """H and s after row reduction over ``pivots``.

    ``info_cols[k]`` holds the reduced column ``info[k]`` packed as p bits;
    ``s`` is the transformed syndrome. Row r of the reduced matrix has its
    unit pivot at column ``pivots[r]``.
    """

    pivots: np.ndarray
    info: np.ndarray
    info_cols: np.ndarray
    s: np.ndarray = field(repr=False)


def gf2_systematize(columns, pc: ParityCheck, s: RingElement) -> SystematicForm | None:
    p = pc.p
    pivots = np.asarray(columns, dtype=np.int64)
    if pivots.size != p or np.unique(pivots).size != p or pivots.min() < 0 or pivots.max() >= 2 * p:
        raise ParameterError("need exactly p distinct column indices in [0, 2p)")
    # identity-block pivots first: they reduce for free
    pivots = np.concatenate([np.sort(pivots[pivots < p]), np.sort(pivots[pivots >= p])])
    mask = np.ones(2 * p, dtype=bool)
    mask[pivots] = False
    info = np.flatnonzero(mask)
    order = np.concatenate([pivots, info])
    m = gf2.pack_rows(np.concatenate([pc.dense[:, order], s.coeffs[:, None]], axis=1)).copy()
    if not gf2.gauss_jordan_prefix(m, p):
        return None
    reduced = gf2.unpack_rows(m, 2 * p + 1)
    info_cols = gf2.pack_rows(np.ascontiguousarray(reduced[:, p : 2 * p].T))
    s_red = gf2.pack_rows(reduced[:, 2 * p][None, :])[0]
    return SystematicForm(pivots, info, info_cols, s_red)


def _search(sf: SystematicForm, j: int, cap: int):
    """Yield (pattern count so far, hit) pairs; hit = (info idx tuple, residual words)."""
    tested = 0
    k = sf.info.size
    base_w = int(gf2.popcount_rows(sf.s))
    tested += 1
    if base_w <= cap:
        return tested, ((), sf.s)
    for l in range(1, j + 1):
        if cap - l < 0:
            break
        for prefix in itertools.combinations(range(k), l - 1):
            start = prefix[-1] + 1 if prefix else 0
            if start >= k:
                continue
            base = sf.s.copy()
            for i in prefix:
                base ^= sf.info_cols[i]
            cand = sf.info_cols[start:] ^ base
            weights = gf2.popcount_rows(cand)
            tested += cand.shape[0]
            hit = np.flatnonzero(weights <= cap - l)
            if hit.size:
                t = int(hit[0])
                return tested, (prefix + (start + t,), cand[t])
    return tested, None


def lee_brickell(s: RingElement, pc: ParityCheck, target_weight_cap: int, cfg: IsdConfig,
                 accept=None) -> IsdResult:
    """Find e with H e^T = s and weight(e) <= target_weight_cap.

    ``accept``, if given, is called on each candidate solution; a False
    return discards it and the search goes on with the next iteration.
    Failure after ``cfg.max_iterations`` counted iterations is reported in
    the result, not raised.
    """
    p = pc.p
    if s.p != p:
        raise ParameterError(f"syndrome has p={s.p}, parity check has p={p}")
    if s.is_zero() and (accept is None or accept(RingPair.zero(p))):
        return IsdResult(RingPair.zero(p))
    rng = np.random.default_rng(cfg.rng_seed)
    result = IsdResult(None)
    max_singular = 64 * cfg.max_iterations
    while result.iterations < cfg.max_iterations:
        sf = gf2_systematize(rng.permutation(2 * p)[:p], pc, s)
        if sf is None:
            result.singular_resamples += 1
            if result.singular_resamples > max_singular:
                break
            continue
        result.iterations += 1
        tested, hit = _search(sf, cfg.j, target_weight_cap)
        result.patterns_tested += tested
        if hit is None:
            continue
        idx, residual = hit
        e = np.zeros(2 * p, dtype=np.uint8)
        e[sf.pivots] = gf2.unpack_rows(residual, p)
        e[sf.info[list(idx)]] = 1
        cand = RingPair.from_vector(e, p)
        # certificate: never trust the reduced form on its own
        if synd_h(cand, pc.h) != s:
            continue
        if accept is not None and not accept(cand):
            result.rejected_candidates += 1
            continue
        result.solution = cand
        return result
    return result


def brute_force_sdp(s: RingElement, pc: ParityCheck, w_max: int, limit: int = 10**7) -> set[RingPair]:
    """Every e with weight(e) <= w_max and H e^T = s, by enumeration."""
    n = 2 * pc.p
    total = sum(math.comb(n, w) for w in range(w_max + 1))
    if total > limit:
        raise EnumerationTooLarge(f"{total} candidates exceeds the limit of {limit}")
    cols = [int.from_bytes(pc.column(i).to_bytes(), "little") for i in range(n)]
    target = int.from_bytes(s.to_bytes(), "little")
    found = set()
    for w in range(w_max + 1):
        for combo in itertools.combinations(range(n), w):
            acc = 0
            for i in combo:
                acc ^= cols[i]
            if acc == target:
                e = np.zeros(n, dtype=np.uint8)
                e[list(combo)] = 1
                found.add(RingPair.from_vector(e, pc.p))
    return found
