"""Intersection probabilities of two independent random closed sets.

For the symmetric measure (b, b, 1 - 2b), the probability p_n that the
level-n approximations of two independent random closed sets meet obeys
``p_1 = 1 - 2b^2`` and ``p_{n+1} = f(p_n)`` with

    f(p) = (2b^2 - 4b + 2) p - (1 - 4b + 4b^2) p^2.

The fixed points of f are 0 and ``m_b = g(b) / (1 - 2b)^2`` where
``g(b) = 2b^2 - 4b + 1``. The sign of g decides whether p_n tends to 0
(g <= 0, i.e. b at or above the threshold 1 - sqrt(2)/2) or to m_b > 0.
b is always rational here, so g(b) never vanishes and the comparison with
the irrational threshold is exact.
"""
from __future__ import annotations

from dataclasses import dataclass

from .bounds import CapacityBound, check_width, step_monotone
from .core import tree_table
from .errors import ExactBudgetExceeded, OutOfRange, PrecisionExhausted, WrongRegime
from .measure import Regular, symmetric
from .rational import Q, fmt, mpq

__all__ = [
    "SymmetricParam",
    "Regime",
    "f_map",
    "g",
    "p_sequence",
    "p_exact",
    "classify",
    "ml_subsequence",
    "pair_hit_bruteforce",
    "EXACT_CAP",
]

EXACT_CAP = 20
DEFAULT_PRECISION = 128
MAX_PRECISION = 1024


@dataclass(frozen=True)
class SymmetricParam:
    b: mpq

    def __post_init__(self):
        b = Q(self.b)
        if not 0 < b < mpq(1, 2):
            raise OutOfRange(f"b = {fmt(b)} must lie in (0, 1/2)")
        object.__setattr__(self, "b", b)

    @property
    def spec(self) -> Regular:
        return symmetric(self.b)

    @property
    def linear(self) -> mpq:
        return 2 * self.b ** 2 - 4 * self.b + 2

    @property
    def quadratic(self) -> mpq:
        return (1 - 2 * self.b) ** 2


def _param(b) -> SymmetricParam:
    return b if isinstance(b, SymmetricParam) else SymmetricParam(b)


@dataclass(frozen=True)
class Regime:
    zero_capacity: bool
    g: mpq
    m_b: mpq | None = None

    @property
    def tag(self) -> str:
        return "zero" if self.zero_capacity else "positive"

    def to_json(self) -> dict:
        out = {"regime": self.tag, "g": fmt(self.g)}
        if self.m_b is not None:
            out["m_b"] = fmt(self.m_b)
        return out


def g(b) -> mpq:
    b = Q(b.b if isinstance(b, SymmetricParam) else b)
    return 2 * b * b - 4 * b + 1


def f_map(b, p) -> mpq:
    b = _param(b)
    p = Q(p)
    if not 0 <= p <= 1:
        raise OutOfRange(f"p = {fmt(p)} must lie in [0, 1]")
    return b.linear * p - b.quadratic * p * p


def _f(b: SymmetricParam):
    lin, quad = b.linear, b.quadratic
    return lambda p: lin * p - quad * p * p


def p_exact(b, n: int) -> list[mpq]:
    """``[p_1, ..., p_n]`` in exact arithmetic (bit length doubles per term)."""
    b = _param(b)
    if n > EXACT_CAP:
        raise ExactBudgetExceeded(f"exact iteration is capped at n = {EXACT_CAP}; use interval mode")
    if n < 1:
        return []
    f = _f(b)
    out = [1 - 2 * b.b ** 2]
    while len(out) < n:
        out.append(f(out[-1]))
    return out


def _p_interval(b: SymmetricParam, n: int, bits: int) -> list[CapacityBound]:
    f = _f(b)
    lo = hi = 1 - 2 * b.b ** 2
    out = [CapacityBound(lo, hi, bits)]
    for _ in range(n - 1):
        # f is increasing on [0, 1]: its vertex sits at ((1 - b) / (1 - 2b))^2 > 1
        lo, hi = step_monotone(f, lo, hi, bits)
        out.append(CapacityBound(lo, hi, bits))
    return out


def p_sequence(b, n: int, mode: str = "exact", precision: int = DEFAULT_PRECISION):
    """p_1, ..., p_n: exact mpq values, or certified CapacityBounds in interval mode."""
    b = _param(b)
    if n < 1:
        raise ValueError("n must be >= 1")
    if mode == "exact":
        return p_exact(b, n)
    if mode == "interval":
        out = _p_interval(b, n, precision)
        check_width(out[-1].lower, out[-1].upper, precision)
        return out
    raise ValueError(f"unknown mode {mode!r}")


def classify(b) -> Regime:
    b = _param(b)
    gb = g(b)
    if gb <= 0:
        return Regime(True, gb)
    return Regime(False, gb, gb / b.quadratic)


def ml_subsequence(
    b,
    count: int,
    precision: int = DEFAULT_PRECISION,
    max_precision: int = MAX_PRECISION,
    max_index: int = 1_000_000,
) -> list[int]:
    """Least indices m_0 < m_1 < ... with certified ``p_{m_n} < 2^(-2n-1)``.

    Precision doubles from ``precision`` up to ``max_precision`` whenever an
    enclosure straddles a threshold.
    """
    b = _param(b)
    if not classify(b).zero_capacity:
        raise WrongRegime(f"b = {fmt(b.b)} has positive limit m_b; p_n does not tend to 0")
    bits = precision
    while True:
        try:
            return _select(b, count, bits, max_index)
        except PrecisionExhausted:
            if bits * 2 > max_precision:
                raise
            bits *= 2


def _select(b: SymmetricParam, count: int, bits: int, max_index: int) -> list[int]:
    f = _f(b)
    out: list[int] = []
    m = 1
    lo = hi = 1 - 2 * b.b ** 2
    while len(out) < count:
        threshold = mpq(1, 2 ** (2 * len(out) + 1))
        if hi < threshold and (not out or m > out[-1]):
            out.append(m)
            continue
        if lo < threshold <= hi:
            # undecided at this precision; deciding either way could miss the least index
            raise PrecisionExhausted(f"enclosure of p_{m} straddles 2^-{2 * len(out) + 1} at {bits} bits")
        if m >= max_index:
            raise PrecisionExhausted(f"no index below {max_index} meets threshold 2^-{2 * len(out) + 1}")
        lo, hi = step_monotone(f, lo, hi, bits)
        m += 1
    return out


def pair_hit_bruteforce(spec, n: int) -> mpq:
    """P(two independent level-n trees share a leaf), by double enumeration."""
    table = [(t.leaf_mask, spec.mass(code)) for t, code in tree_table(n)]
    total = mpq(0)
    for leaves_a, mass_a in table:
        hit = sum((mass_b for leaves_b, mass_b in table if leaves_a & leaves_b), mpq(0))
        total += mass_a * hit
    return total
