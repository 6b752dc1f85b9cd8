"""Monte Carlo trials of the attack with per-trial derived random streams."""

from __future__ import annotations

import csv
import io
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass

import numpy as np

from .analysis import WeightDistribution, weight_pdf
from .attack import AttackConfig, estimate_secret, recover_key
from .isd import IsdConfig
from .scheme import ParameterSet, keygen, sign


@dataclass(frozen=True)
class ExperimentSpec:
    params: ParameterSet
    trials: int
    b: int
    seed: int
    j: int = 2
    w_bar: int = 40
    run_isd: bool = False
    max_iterations: int = 100_000

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be at least 1")


@dataclass
class TrialRecord:
    trial_index: int
    residual_weight: int
    recovered: bool
    isd_iterations: int
    wall_clock_ms: float


TRIAL_COLUMNS = ("trial_index", "residual_weight", "recovered", "isd_iterations")


def trial_rng(seed: int, index: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(index,)))


def run_trial(spec: ExperimentSpec, index: int) -> TrialRecord:
    t0 = time.perf_counter()
    rng = trial_rng(spec.seed, index)
    sk, vk = keygen(spec.params, rng)
    sig = sign(b"trial %d" % index, sk, spec.params, rng)
    e_prime, _ = estimate_secret(sig, spec.params, spec.b)
    delta = (sk.e + e_prime).weight()
    recovered, iterations = delta == 0, 0
    if spec.run_isd:
        isd = IsdConfig(spec.j, spec.max_iterations, int(rng.integers(2**63)))
        outcome = recover_key(sig, vk, spec.params, AttackConfig(spec.b, isd, spec.w_bar))
        recovered = outcome.success and outcome.recovered_key == sk.e
        iterations = outcome.isd.iterations if outcome.isd else 0
    return TrialRecord(index, delta, recovered, iterations, 1000 * (time.perf_counter() - t0))


def _run_chunk(args):
    spec, indices = args
    return [run_trial(spec, i) for i in indices]


def run_trials(spec: ExperimentSpec, threads: int = 1) -> list[TrialRecord]:
    """All trials in index order; the worker count never changes the records."""
    indices = list(range(spec.trials))
    if threads <= 1:
        return [run_trial(spec, i) for i in indices]
    chunks = [indices[k::threads] for k in range(threads)]
    with ProcessPoolExecutor(threads) as pool:
        records = [r for chunk in pool.map(_run_chunk, [(spec, c) for c in chunks]) for r in chunk]
    return sorted(records, key=lambda r: r.trial_index)


def histogram(records: list[TrialRecord]) -> np.ndarray:
    weights = np.array([r.residual_weight for r in records])
    return np.bincount(weights) / len(weights)


def total_variation(empirical: np.ndarray, theory: WeightDistribution) -> float:
    """TV distance, counting the model's truncated tail as disagreement mass."""
    n = max(len(empirical), len(theory.masses))
    a = np.zeros(n)
    a[: len(empirical)] = empirical
    t = np.zeros(n)
    t[: len(theory.masses)] = theory.masses
    return 0.5 * (np.abs(a - t).sum() + (1.0 - t.sum()))


def trials_csv(records: list[TrialRecord], timing: bool = False) -> str:
    cols = TRIAL_COLUMNS + (("wall_clock_ms",) if timing else ())
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=cols, extrasaction="ignore", lineterminator="\n")
    writer.writeheader()
    for r in records:
        row = asdict(r)
        row["recovered"] = int(r.recovered)
        row["wall_clock_ms"] = f"{r.wall_clock_ms:.3f}"
        writer.writerow(row)
    return buf.getvalue()


def histogram_csv(records: list[TrialRecord], theory: WeightDistribution) -> str:
    """Plot-ready columns: delta, empirical mass, model mass."""
    emp = histogram(records)
    top = max(len(emp) - 1, int(np.flatnonzero(theory.masses > 1e-6).max(initial=0)))
    buf = io.StringIO()
    buf.write("delta,empirical,theoretical\n")
    for d in range(top + 1):
        e = emp[d] if d < len(emp) else 0.0
        buf.write(f"{d},{e:.6f},{theory[d]:.6e}\n")
    return buf.getvalue()


def theoretical(spec: ExperimentSpec) -> WeightDistribution:
    return weight_pdf(spec.params, spec.b)
