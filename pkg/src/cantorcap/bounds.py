"""Certified enclosures with dyadic endpoints.

Every map iterated in this package is monotone increasing on [0, 1], so an
enclosure ``[lo, hi]`` is pushed forward by evaluating the map exactly at
each endpoint and rounding the lower image down and the upper image up to
the working precision. No general interval arithmetic is needed.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .errors import PrecisionExhausted
from .rational import Q, ceil_dyadic, decimal, floor_dyadic, fmt, mpq

__all__ = ["CapacityBound", "exact_bound", "step_monotone"]


@dataclass(frozen=True)
class CapacityBound:
    """``lower <= value <= upper``. ``precision_bits`` is None for exact values."""

    lower: mpq
    upper: mpq
    precision_bits: int | None = None

    def __post_init__(self):
        if not self.lower <= self.upper:
            raise ValueError("lower bound exceeds upper bound")

    @property
    def is_exact(self) -> bool:
        return self.precision_bits is None and self.lower == self.upper

    @property
    def value(self) -> mpq:
        if not self.is_exact:
            raise ValueError("bound is not exact")
        return self.lower

    @property
    def width(self) -> mpq:
        return self.upper - self.lower

    def __contains__(self, x) -> bool:
        return self.lower <= Q(x) <= self.upper

    def to_json(self, decimals: bool = False) -> dict:
        if self.is_exact:
            out = {"exact": fmt(self.lower)}
            if decimals:
                out["decimal"] = decimal(self.lower)
            return out
        out = {"lower": fmt(self.lower), "upper": fmt(self.upper),
               "precision_bits": self.precision_bits}
        if decimals:
            out["lower_decimal"] = decimal(self.lower)
            out["upper_decimal"] = decimal(self.upper)
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "CapacityBound":
        if "exact" in obj:
            return exact_bound(Q(obj["exact"]))
        return cls(Q(obj["lower"]), Q(obj["upper"]), obj.get("precision_bits"))


def exact_bound(x) -> CapacityBound:
    x = Q(x)
    return CapacityBound(x, x, None)


def step_monotone(fn: Callable[[mpq], mpq], lo: mpq, hi: mpq, bits: int) -> tuple[mpq, mpq]:
    """Outward-rounded image of ``[lo, hi]`` under an increasing map."""
    return floor_dyadic(fn(lo), bits), ceil_dyadic(fn(hi), bits)


def check_width(lo: mpq, hi: mpq, bits: int) -> None:
    if hi - lo >= mpq(1, 2 ** (bits // 2)):
        raise PrecisionExhausted(
            f"enclosure width {float(hi - lo):.3g} exceeds 2^-{bits // 2} at {bits} bits"
        )
