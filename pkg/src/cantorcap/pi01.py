"""Effectively closed sets of Lebesgue measure zero with positive capacity.

Q is presented by constraint levels ``n_0 < n_1 < ...``: the reals with
``x(n_i) = 0`` for every i. Prefix k (levels n_0..n_k) has Lebesgue measure
``2^-(k+1)``. Each level is chosen greedily as the least one whose
certified capacity lower bound reaches ``c_k = (2^(k+1) + 1) / 2^(k+2)``,
a schedule that decreases to 1/2, so the capacity of Q stays >= 1/2.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

from .asymptotics import SymmetricParam, _param
from .bounds import CapacityBound, exact_bound
from .capacity import DEFAULT_PRECISION, capacity_X
from .errors import LevelCapExceeded, LevelsNotIncreasing
from .rational import Q, decimal, fmt, mpq

__all__ = [
    "schedule_c",
    "lebesgue",
    "Pi01Construction",
    "PrefixRecord",
    "construct",
    "verify",
    "VerifyReport",
    "DEFAULT_LEVEL_CAP",
]

DEFAULT_LEVEL_CAP = 10_000


def schedule_c(k: int) -> mpq:
    if k < 0:
        raise ValueError("k must be >= 0")
    return mpq(2 ** (k + 1) + 1, 2 ** (k + 2))


def lebesgue(k: int) -> mpq:
    """Lebesgue measure of the set fixing k + 1 coordinates."""
    return mpq(1, 2 ** (k + 1))


@dataclass(frozen=True)
class PrefixRecord:
    k: int
    level: int
    c_k: mpq
    bound: CapacityBound
    lebesgue: mpq

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "level": self.level,
            "c_k": fmt(self.c_k),
            "lower": fmt(self.bound.lower),
            "upper": fmt(self.bound.upper),
            "lower_decimal": decimal(self.bound.lower),
            "lebesgue": fmt(self.lebesgue),
        }


@dataclass(frozen=True)
class Pi01Construction:
    b: SymmetricParam
    levels: tuple[int, ...]
    prefixes: tuple[PrefixRecord, ...] = field(default=())
    precision_bits: int = DEFAULT_PRECISION

    @property
    def final_bound(self) -> CapacityBound:
        return self.prefixes[-1].bound if self.prefixes else exact_bound(1)

    def to_json(self) -> dict:
        return {
            "b": fmt(self.b.b),
            "precision_bits": self.precision_bits,
            "levels": list(self.levels),
            "prefixes": [p.to_json() for p in self.prefixes],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2) + "\n"

    @classmethod
    def from_json(cls, obj: dict) -> "Pi01Construction":
        prefixes = tuple(
            PrefixRecord(
                k=int(p["k"]),
                level=int(p["level"]),
                c_k=Q(p["c_k"]),
                bound=CapacityBound(Q(p["lower"]), Q(p["upper"]), obj.get("precision_bits")),
                lebesgue=Q(p["lebesgue"]),
            )
            for p in obj.get("prefixes", [])
        )
        return cls(
            b=SymmetricParam(Q(obj["b"])),
            levels=tuple(int(n) for n in obj["levels"]),
            prefixes=prefixes,
            precision_bits=int(obj.get("precision_bits", DEFAULT_PRECISION)),
        )

    @classmethod
    def loads(cls, text: str) -> "Pi01Construction":
        return cls.from_json(json.loads(text))


def construct(
    b,
    k_max: int,
    precision: int = DEFAULT_PRECISION,
    level_cap: int = DEFAULT_LEVEL_CAP,
) -> Pi01Construction:
    """Greedy least-level choice of n_0, ..., n_{k_max}."""
    b = _param(b)
    spec = b.spec
    levels: list[int] = []
    records: list[PrefixRecord] = []
    for k in range(k_max + 1):
        c = schedule_c(k)
        start = levels[-1] + 1 if levels else 0
        for n in range(start, level_cap):
            bound = capacity_X(spec, levels + [n], precision, exact=False)
            if bound.lower >= c:
                break
        else:
            raise LevelCapExceeded(
                f"no level in [{start}, {level_cap}) certifies c_{k} = {fmt(c)}"
            )
        levels.append(n)
        records.append(PrefixRecord(k, n, c, bound, lebesgue(k)))
    return Pi01Construction(b, tuple(levels), tuple(records), precision)


@dataclass
class VerifyReport:
    entries: list[dict]
    final_lower: mpq
    final_ok: bool

    @property
    def ok(self) -> bool:
        return self.final_ok and all(e["pass"] for e in self.entries)

    def failures(self) -> list[int]:
        return [e["k"] for e in self.entries if not e["pass"]]

    def to_json(self) -> dict:
        return {
            "pass": self.ok,
            "final_lower": fmt(self.final_lower),
            "final_lower_decimal": decimal(self.final_lower),
            "final_at_least_half": self.final_ok,
            "prefixes": self.entries,
        }


def verify(construction: Pi01Construction, precision: int | None = None) -> VerifyReport:
    """Recompute every prefix capacity and Lebesgue value independently.

    Failures are report entries, never exceptions.
    """
    if precision is None:
        precision = 2 * construction.precision_bits
    spec = construction.b.spec
    levels = list(construction.levels)
    recorded = {p.k: p for p in construction.prefixes}
    entries = []
    final = mpq(1)
    for k in range(len(levels)):
        prefix = levels[: k + 1]
        c = schedule_c(k)
        entry = {"k": k, "level": levels[k], "c_k": fmt(c)}
        problems = []
        try:
            bound = capacity_X(spec, prefix, precision, exact=False)
        except LevelsNotIncreasing:
            bound = None
            problems.append("levels not strictly increasing")
        if bound is not None:
            entry["lower"] = fmt(bound.lower)
            entry["upper"] = fmt(bound.upper)
            if bound.lower < c:
                problems.append("certified lower bound below c_k")
            final = bound.lower
        else:
            final = mpq(0)
        rec = recorded.get(k)
        if rec is not None:
            if rec.lebesgue != lebesgue(k):
                problems.append("recorded Lebesgue measure is not 2^-(k+1)")
            if rec.c_k != c:
                problems.append("recorded c_k does not match the schedule")
            if bound is not None and (rec.bound.upper < bound.lower or rec.bound.lower > bound.upper):
                problems.append("recorded bound is disjoint from the recomputed one")
        entry["lebesgue"] = fmt(lebesgue(k))
        entry["pass"] = not problems
        if problems:
            entry["problems"] = problems
        entries.append(entry)
    return VerifyReport(entries, final, final >= mpq(1, 2))
