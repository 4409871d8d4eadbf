"""Branching-weight measures on ternary codes and the induced hyperspace measure.

A measure spec assigns each tree node at depth ``m`` a triple
``(b0, b1, b2)``: the probabilities that the node keeps only child 0, only
child 1, or both. The mass of a code is the product of the weights its
digits select, each taken at the depth of the node the digit describes.

Any object with a ``mass(code)`` method can stand in for a spec in
:func:`mu_of_code` and the brute-force capacity engine; the inversion
table in :mod:`cantorcap.choquet` uses this.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Sequence

from .core import FiniteTree, code_node_depths, encode_tree
from .errors import InvalidMeasure, UsageError
from .rational import Q, fmt, mpq, parse_rational

__all__ = [
    "MeasureSpec",
    "Regular",
    "DepthDependent",
    "symmetric",
    "UNIFORM",
    "weight_at",
    "mu_of_code",
    "mu_star_basic",
    "parse_measure",
    "format_measure",
]

Triple = tuple[mpq, mpq, mpq]


def _triple(values) -> Triple:
    t = tuple(Q(v) for v in values)
    if len(t) != 3:
        raise InvalidMeasure(f"a branching triple has three components, got {len(t)}")
    if any(v < 0 for v in t):
        raise InvalidMeasure(f"negative branching weight in {tuple(map(fmt, t))}")
    if sum(t) != 1:
        raise InvalidMeasure(f"branching weights {tuple(map(fmt, t))} do not sum to 1")
    return t


class MeasureSpec:
    """Base class; subclasses implement :meth:`weight_at`."""

    def weight_at(self, depth: int) -> Triple:
        raise NotImplementedError

    def mass(self, code: Sequence[int]) -> mpq:
        out = mpq(1)
        for digit, depth in zip(code, code_node_depths(code)):
            out *= self.weight_at(depth)[digit]
            if not out:
                break
        return out

    def triples(self) -> list[Triple]:
        raise NotImplementedError

    def is_bounded(self) -> bool:
        """True when some b, c in (0, 1) bound every branching weight strictly.

        With finitely many distinct triples this holds iff every weight is
        positive: take b below the least weight and c above the greatest
        (which is < 1 once all three weights are positive).
        """
        return all(v > 0 for t in self.triples() for v in t)

    def bounded_witness(self) -> tuple[mpq, mpq] | None:
        """Constants ``(b, c)`` with ``b < w < c`` for every weight ``w``, or None."""
        if not self.is_bounded():
            return None
        weights = [v for t in self.triples() for v in t]
        return min(weights) / 2, (max(weights) + 1) / 2


@dataclass(frozen=True)
class Regular(MeasureSpec):
    b0: mpq
    b1: mpq
    b2: mpq

    def __post_init__(self):
        t = _triple((self.b0, self.b1, self.b2))
        for name, v in zip(("b0", "b1", "b2"), t):
            object.__setattr__(self, name, v)

    def weight_at(self, depth: int) -> Triple:
        return (self.b0, self.b1, self.b2)

    def triples(self) -> list[Triple]:
        return [(self.b0, self.b1, self.b2)]

    def symmetric_b(self) -> mpq | None:
        """``b`` when this is the symmetric measure (b, b, 1 - 2b), else None."""
        return self.b0 if self.b0 == self.b1 else None

    def __str__(self) -> str:
        return format_measure(self)


@dataclass(frozen=True)
class DepthDependent(MeasureSpec):
    """Weights keyed on node depth: ``levels[m]`` at depth m, ``tail`` beyond."""

    levels: tuple[Triple, ...]
    tail: Triple

    def __post_init__(self):
        object.__setattr__(self, "levels", tuple(_triple(t) for t in self.levels))
        object.__setattr__(self, "tail", _triple(self.tail))

    def weight_at(self, depth: int) -> Triple:
        if depth < len(self.levels):
            return self.levels[depth]
        return self.tail

    def triples(self) -> list[Triple]:
        return [*self.levels, self.tail]

    def __str__(self) -> str:
        return format_measure(self)


def symmetric(b) -> Regular:
    b = Q(b)
    return Regular(b, b, 1 - 2 * b)


UNIFORM = Regular(mpq(1, 3), mpq(1, 3), mpq(1, 3))


def weight_at(spec: MeasureSpec, depth: int) -> Triple:
    if depth < 0:
        raise ValueError("depth must be >= 0")
    return spec.weight_at(depth)


def mu_of_code(spec, code: Sequence[int]) -> mpq:
    """Measure of the ternary interval of ``code`` (1 for the empty code)."""
    return spec.mass(tuple(code))


def mu_star_basic(spec, a: FiniteTree) -> mpq:
    """Hyperspace measure of the basic set U_A: the mass of A's code."""
    return spec.mass(encode_tree(a))


# --------------------------------------------------------------------------
# text format:  "regular: 1/3 1/3 1/3"
#               "depth: [ (1/2 1/2 0), (1/4 1/4 1/2) ] tail: (1/3 1/3 1/3)"

_TRIPLE_RE = re.compile(r"\(([^()]*)\)")


def _parse_triple(body: str) -> Triple:
    parts = body.replace(",", " ").split()
    if len(parts) != 3:
        raise UsageError(f"expected three weights, got {body!r}")
    return _triple(parse_rational(p) for p in parts)


def parse_measure(text: str) -> MeasureSpec:
    """Syntax errors raise UsageError; well-formed weights that are not a
    probability triple raise InvalidMeasure."""
    kind, _, rest = text.strip().partition(":")
    kind = kind.strip().lower()
    if kind == "regular":
        return Regular(*_parse_triple(rest))
    if kind == "depth":
        m = re.fullmatch(r"\s*\[(.*)\]\s*tail\s*:\s*\((.*)\)\s*", rest, re.S)
        if not m:
            raise UsageError(f"malformed depth measure {text!r}")
        levels = tuple(_parse_triple(b) for b in _TRIPLE_RE.findall(m.group(1)))
        leftover = _TRIPLE_RE.sub("", m.group(1)).replace(",", "").strip()
        if leftover:
            raise UsageError(f"malformed depth table {m.group(1)!r}")
        return DepthDependent(levels, _parse_triple(m.group(2)))
    raise UsageError(f"unknown measure form {text!r}; expected 'regular:' or 'depth:'")


def _format_triple(t: Triple) -> str:
    return " ".join(fmt(v) for v in t)


def format_measure(spec: MeasureSpec) -> str:
    if isinstance(spec, Regular):
        return f"regular: {_format_triple(spec.weight_at(0))}"
    if isinstance(spec, DepthDependent):
        table = ", ".join(f"({_format_triple(t)})" for t in spec.levels)
        return f"depth: [ {table} ] tail: ({_format_triple(spec.tail)})"
    raise TypeError(f"cannot format {type(spec).__name__}")
