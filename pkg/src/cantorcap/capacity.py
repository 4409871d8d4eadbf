"""Hitting capacities T_d(Q): the probability that a random closed set meets Q.

Two independent engines are shipped. :func:`capacity_bruteforce` sums the
hyperspace measure of every height-n tree whose leaves meet Q; it is
exponential and serves as the oracle. :func:`capacity_dp` recurses over
the generator trie of Q and is the production path.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import combinations, product
from typing import Sequence

from .bounds import CapacityBound, check_width, exact_bound, step_monotone
from .core import ClopenSet, tree_table
from .errors import EmptyClopen, LevelsNotIncreasing, NotASubset
from .measure import MeasureSpec, weight_at
from .rational import mpq

__all__ = [
    "capacity",
    "capacity_bruteforce",
    "capacity_dp",
    "capacity_X",
    "constraint_clopen",
    "check_monotone",
    "check_alternating",
    "DEFAULT_EXACT_THRESHOLD",
]

DEFAULT_EXACT_THRESHOLD = 16
DEFAULT_PRECISION = 128


# --------------------------------------------------------------------------
# brute force

@lru_cache(maxsize=64)
def _cached_masses(spec: MeasureSpec, n: int) -> tuple[tuple[int, mpq], ...]:
    return _masses(spec, n)


def _masses(spec, n: int) -> tuple[tuple[int, mpq], ...]:
    return tuple((t.leaf_mask, spec.mass(code)) for t, code in tree_table(n))


def capacity_bruteforce(spec, q: ClopenSet, height: int | None = None) -> mpq:
    """Sum of mu*_d(U_A) over the height-n trees A whose leaves meet q."""
    if height is None:
        height = q.height
    if height < q.height:
        raise ValueError(f"height {height} is below the target's height {q.height}")
    if q.is_empty():
        return mpq(0)
    target = q.mask(height)
    try:
        table = _cached_masses(spec, height)
    except TypeError:  # unhashable measure object
        table = _masses(spec, height)
    return sum((m for leaves, m in table if leaves & target), mpq(0))


# --------------------------------------------------------------------------
# dynamic programming

def _both(b: tuple[mpq, mpq, mpq], c0: mpq, c1: mpq) -> mpq:
    b0, b1, b2 = b
    return b0 * c0 + b1 * c1 + b2 * (c0 + c1 - c0 * c1)


def _single(b: tuple[mpq, mpq, mpq], i: int, c: mpq) -> mpq:
    return (b[i] + b[2]) * c


def _dp(spec, depth: int, suffixes: frozenset[str]) -> mpq:
    if "" in suffixes:
        return mpq(1)
    s0 = frozenset(s[1:] for s in suffixes if s[0] == "0")
    s1 = frozenset(s[1:] for s in suffixes if s[0] == "1")
    b = weight_at(spec, depth)
    if s0 and s1:
        return _both(b, _dp(spec, depth + 1, s0), _dp(spec, depth + 1, s1))
    if s0:
        return _single(b, 0, _dp(spec, depth + 1, s0))
    return _single(b, 1, _dp(spec, depth + 1, s1))


@lru_cache(maxsize=1 << 16)
def _capacity_dp_cached(spec, q: ClopenSet) -> mpq:
    return _dp(spec, 0, frozenset(q.generators))


def capacity_dp(spec, q: ClopenSet) -> mpq:
    """Exact capacity by recursion over the target tree of ``q``.

    At a node of depth m with weights (b0, b1, b2): a target leaf has
    capacity 1; with both children in the target, cap = b0 c0 + b1 c1 +
    b2 (c0 + c1 - c0 c1); with only child i, cap = (b_i + b2) c_i. Full
    subtrees evaluate to 1, so recursing on the canonical generators gives
    the same value as recursing on the full height-n target tree.
    """
    if q.is_empty():
        raise EmptyClopen("capacity_dp needs a nonempty target; T(empty) = 0")
    try:
        return _capacity_dp_cached(spec, q)
    except TypeError:
        return _dp(spec, 0, frozenset(q.generators))


def capacity(spec, q: ClopenSet) -> mpq:
    """T_d(q) with the convention T(empty) = 0."""
    return mpq(0) if q.is_empty() else capacity_dp(spec, q)


# --------------------------------------------------------------------------
# constraint sets X_sigma = {x : x(n_i) = 0 for every listed level n_i}

def _check_levels(levels: Sequence[int]) -> tuple[int, ...]:
    levels = tuple(int(n) for n in levels)
    if any(n < 0 for n in levels):
        raise LevelsNotIncreasing("levels must be nonnegative")
    if any(a >= b for a, b in zip(levels, levels[1:])):
        raise LevelsNotIncreasing(f"levels {levels} are not strictly increasing")
    return levels


def constraint_clopen(levels: Sequence[int]) -> ClopenSet:
    """X_sigma as an explicit clopen set (exponential in the top level)."""
    levels = _check_levels(levels)
    if not levels:
        return ClopenSet.full()
    n = levels[-1] + 1
    fixed = set(levels)
    free = [m for m in range(n) if m not in fixed]
    gens = []
    for bits in product("01", repeat=len(free)):
        s = ["0"] * n
        for m, bit in zip(free, bits):
            s[m] = bit
        gens.append("".join(s))
    return ClopenSet(tuple(gens))


def _level_maps(spec, m: int, constrained: bool):
    b0, b1, b2 = weight_at(spec, m)
    if constrained:
        keep = b0 + b2
        return lambda h: keep * h
    one = b0 + b1
    return lambda h: one * h + b2 * (2 * h - h * h)


def capacity_X(
    spec,
    levels: Sequence[int],
    precision: int = DEFAULT_PRECISION,
    exact: bool | None = None,
    exact_threshold: int = DEFAULT_EXACT_THRESHOLD,
) -> CapacityBound:
    """Capacity of X_sigma by a backward sweep over levels n_k, ..., 0.

    ``h(n_k + 1) = 1``; an unconstrained level applies
    ``h -> (b0 + b1) h + b2 (2h - h^2)`` and a constrained level
    ``h -> (b0 + b2) h``. Both maps increase on [0, 1], so directed
    rounding of the endpoints yields a certified enclosure. ``exact=None``
    computes exactly when the top level is below ``exact_threshold``.
    """
    levels = _check_levels(levels)
    if not levels:
        return exact_bound(1)
    top = levels[-1]
    if exact is None:
        exact = top < exact_threshold
    fixed = set(levels)
    if exact:
        h = mpq(1)
        for m in range(top, -1, -1):
            h = _level_maps(spec, m, m in fixed)(h)
        return exact_bound(h)
    lo = hi = mpq(1)
    for m in range(top, -1, -1):
        lo, hi = step_monotone(_level_maps(spec, m, m in fixed), lo, hi, precision)
    check_width(lo, hi, precision)
    return CapacityBound(lo, hi, precision)


# --------------------------------------------------------------------------
# capacity axioms

def check_monotone(spec, q1: ClopenSet, q2: ClopenSet) -> bool:
    if not q1 <= q2:
        raise NotASubset(f"{{{q1}}} is not contained in {{{q2}}}")
    return capacity(spec, q1) <= capacity(spec, q2)


def check_alternating(spec, qs: Sequence[ClopenSet], order: int | None = None) -> bool:
    """T(q_1 & ... & q_n) <= sum over nonempty I of (-1)^{|I|+1} T(union of q_i, i in I)."""
    qs = list(qs)
    if order is None:
        order = len(qs)
    if order not in (2, 3) or len(qs) != order:
        raise ValueError("alternating checks take two or three sets")
    meet = qs[0]
    for q in qs[1:]:
        meet = meet & q
    rhs = mpq(0)
    for r in range(1, order + 1):
        sign = 1 if r % 2 else -1
        for group in combinations(qs, r):
            union = ClopenSet.empty()
            for q in group:
                union = union | q
            rhs += sign * capacity(spec, union)
    return capacity(spec, meet) <= rhs
