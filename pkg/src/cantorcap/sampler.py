"""Monte Carlo sampling of random closed sets to finite depth.

Each random draw is a pure function of ``(seed, trial, depth, node index)``
(SplitMix64 finalizer applied to the chained key), so a node's branching
choice does not depend on evaluation order, batching or thread count.
Trees are grown level by level for a whole batch of trials at once.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .asymptotics import p_exact
from .capacity import capacity
from .core import ClopenSet, FiniteTree
from .measure import MeasureSpec, Regular
from .rational import decimal, fmt, mpq

__all__ = [
    "SampleConfig",
    "EmpiricalReport",
    "GrowthStats",
    "keyed_u53",
    "sample_tree",
    "sample_levels",
    "empirical_pair_hit",
    "empirical_capacity",
    "growth_stats",
    "branching_frequencies",
]

MAX_DEPTH = 48
BATCH = 1 << 14

_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)
_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_MASK64 = (1 << 64) - 1


def _mix(z: np.ndarray) -> np.ndarray:
    z = z + _GOLDEN
    z = (z ^ (z >> np.uint64(30))) * _M1
    z = (z ^ (z >> np.uint64(27))) * _M2
    return z ^ (z >> np.uint64(31))


def keyed_u53(seed: int, trial: np.ndarray, depth: int, index: np.ndarray) -> np.ndarray:
    """53-bit uniform integers keyed by (seed, trial, depth, node index)."""
    with np.errstate(over="ignore"):
        h = _mix(np.full(trial.shape, seed & _MASK64, dtype=np.uint64))
        h = _mix(h ^ trial.astype(np.uint64))
        h = _mix(h ^ np.uint64(depth))
        h = _mix(h ^ index.astype(np.uint64))
    return (h >> np.uint64(11)).astype(np.int64)


@dataclass(frozen=True)
class SampleConfig:
    spec: MeasureSpec
    depth: int
    trials: int
    seed: int = 0

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if not 1 <= self.depth <= MAX_DEPTH:
            raise ValueError(f"depth must lie in [1, {MAX_DEPTH}]")


@dataclass
class EmpiricalReport:
    estimate: float
    stderr: float
    trials: int
    exact_reference: mpq | None = None

    @classmethod
    def from_count(cls, hits: int, trials: int, exact=None) -> "EmpiricalReport":
        p = hits / trials
        return cls(p, math.sqrt(p * (1 - p) / trials), trials, exact)

    @property
    def z_score(self) -> float | None:
        if self.exact_reference is None:
            return None
        diff = self.estimate - float(self.exact_reference)
        if self.stderr == 0:
            return 0.0 if diff == 0 else math.copysign(math.inf, diff)
        return diff / self.stderr

    def within(self, sigmas: float = 4.0) -> bool:
        z = self.z_score
        return z is not None and abs(z) < sigmas

    def to_json(self) -> dict:
        out = {"estimate": repr(self.estimate), "stderr": repr(self.stderr), "trials": self.trials}
        if self.exact_reference is not None:
            out["exact"] = fmt(self.exact_reference)
            out["exact_decimal"] = decimal(self.exact_reference)
        return out

    CSV_HEADER = "estimate,stderr,trials,exact,exact_decimal"

    def to_csv_row(self) -> str:
        exact = "" if self.exact_reference is None else fmt(self.exact_reference)
        dec = "" if self.exact_reference is None else decimal(self.exact_reference)
        return f"{self.estimate!r},{self.stderr!r},{self.trials},{exact},{dec}"


def _thresholds(spec: MeasureSpec, depth: int) -> tuple[int, int]:
    b0, b1, _ = spec.weight_at(depth)
    scale = 1 << 53
    return int((b0 * scale).__floor__()), int(((b0 + b1) * scale).__floor__())


def _grow(cfg: SampleConfig, trials: np.ndarray):
    """Yield ``(trial_ids, node_index)`` arrays for levels 0..depth."""
    tid = trials.astype(np.int64)
    idx = np.zeros_like(tid)
    yield tid, idx
    for m in range(cfg.depth):
        t0, t01 = _thresholds(cfg.spec, m)
        u = keyed_u53(cfg.seed, tid, m, idx)
        keep0 = (u < t0) | (u >= t01)   # only child 0, or both
        keep1 = u >= t0                  # only child 1, or both
        tid = np.concatenate([tid[keep0], tid[keep1]])
        idx = np.concatenate([2 * idx[keep0], 2 * idx[keep1] + 1])
        yield tid, idx


def _batches(trials: int):
    for start in range(0, trials, BATCH):
        yield np.arange(start, min(start + BATCH, trials), dtype=np.int64)


def sample_levels(cfg: SampleConfig, index: int) -> list[list[int]]:
    """Node indices per level for trial ``index``."""
    return [sorted(idx.tolist()) for _, idx in _grow(cfg, np.array([index]))]


def sample_tree(cfg: SampleConfig, index: int) -> FiniteTree:
    levels = []
    for nodes in sample_levels(cfg, index):
        mask = 0
        for j in nodes:
            mask |= 1 << j
        levels.append(mask)
    return FiniteTree(tuple(levels))


def _leaves(cfg: SampleConfig, trials: np.ndarray):
    for tid, idx in _grow(cfg, trials):
        pass
    return tid, idx


def _symmetric_reference(spec: MeasureSpec, depth: int) -> mpq | None:
    if not isinstance(spec, Regular) or spec.b0 != spec.b1:
        return None
    if spec.b2 == 1:
        return mpq(1)
    if depth > 20:
        return None
    return p_exact(spec.b0, depth)[depth - 1]


def empirical_pair_hit(cfg: SampleConfig) -> EmpiricalReport:
    """Fraction of independent tree pairs whose level-``depth`` leaves meet.

    Pair i uses trials 2i and 2i + 1.
    """
    hits = 0
    shift = np.int64(cfg.depth)
    for batch in _batches(cfg.trials):
        tid, idx = _leaves(cfg, np.concatenate([2 * batch, 2 * batch + 1]))
        pair = tid >> 1
        keys = (pair << shift) | idx
        side = (tid & 1).astype(bool)
        common = np.intersect1d(keys[~side], keys[side])
        hits += np.unique(common >> shift).size
    return EmpiricalReport.from_count(hits, cfg.trials, _symmetric_reference(cfg.spec, cfg.depth))


def empirical_capacity(cfg: SampleConfig, q: ClopenSet) -> EmpiricalReport:
    """Fraction of sampled trees whose leaves meet ``q``."""
    if cfg.depth < q.height:
        raise ValueError("sampling depth is below the target's height")
    mask = q.mask(cfg.depth)
    targets = np.array([j for j in range(1 << cfg.depth) if mask >> j & 1], dtype=np.int64)
    hits = 0
    for batch in _batches(cfg.trials):
        tid, idx = _leaves(cfg, batch)
        hits += np.unique(tid[np.isin(idx, targets)]).size
    return EmpiricalReport.from_count(hits, cfg.trials, capacity(cfg.spec, q))


@dataclass
class GrowthStats:
    mean_counts: list[float]
    ratio: float
    dimension: float
    expected_ratio: float | None = None
    trials: int = 0

    def to_json(self) -> dict:
        return {
            "mean_counts": [repr(x) for x in self.mean_counts],
            "ratio": repr(self.ratio),
            "dimension": repr(self.dimension),
            "expected_ratio": None if self.expected_ratio is None else repr(self.expected_ratio),
            "trials": self.trials,
        }


def growth_stats(cfg: SampleConfig) -> GrowthStats:
    """Mean level sizes and the growth rate fitted to log2 of them.

    The dimension estimate is the least-squares slope of log2(mean count)
    against level, i.e. log2 of the per-level growth ratio.
    """
    if cfg.depth < 4:
        raise ValueError("growth statistics need depth >= 4")
    totals = np.zeros(cfg.depth + 1)
    for batch in _batches(cfg.trials):
        for m, (tid, _) in enumerate(_grow(cfg, batch)):
            totals[m] += tid.size
    means = totals / cfg.trials
    levels = np.arange(cfg.depth + 1)
    slope = float(np.polyfit(levels, np.log2(means), 1)[0])
    expected = float(1 + cfg.spec.b2) if isinstance(cfg.spec, Regular) else None
    return GrowthStats(means.tolist(), 2.0 ** slope, slope, expected, cfg.trials)


def branching_frequencies(cfg: SampleConfig) -> list[float]:
    """Observed frequencies of root digits 0, 1, 2 across trials."""
    counts = np.zeros(3, dtype=np.int64)
    for batch in _batches(cfg.trials):
        t0, t01 = _thresholds(cfg.spec, 0)
        u = keyed_u53(cfg.seed, batch, 0, np.zeros_like(batch))
        digit = np.where(u < t0, 0, np.where(u < t01, 1, 2))
        counts += np.bincount(digit, minlength=3)
    return (counts / cfg.trials).tolist()
