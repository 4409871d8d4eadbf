"""Reconstructing a branching measure from its hitting capacity.

Given capacity values on intervals, the branching triple at a node ``s``
reached through code prefix ``tau`` follows from the relative hit weights
``a_i = T(I(s i)) / T(I(s))``::

    d(tau 0) = d(tau) (1 - a_1)
    d(tau 1) = d(tau) (1 - a_0)
    d(tau 2) = d(tau) (a_0 + a_1 - 1)

Everything is exact, so reconstruction from the capacity of a shipped
measure spec reproduces that spec's table with zero error.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Callable, Iterator, Mapping

from .capacity import capacity, capacity_bruteforce
from .core import ClopenSet, format_clopen, format_code, parse_clopen, parse_code
from .errors import NegativeMass, NotACapacity, OracleIncomplete, UsageError
from .rational import Q, fmt, mpq, parse_rational

__all__ = [
    "CapacityOracle",
    "BranchTable",
    "iter_prefixes",
    "branch_table",
    "invert",
    "roundtrip_error",
    "check_consistency",
]

Triple = tuple[mpq, mpq, mpq]
Code = tuple[int, ...]


class CapacityOracle:
    """A capacity given by its values on clopen sets."""

    def __init__(self, fn: Callable[[ClopenSet], mpq], name: str = "oracle"):
        self._fn = fn
        self._cache: dict[ClopenSet, mpq] = {}
        self.name = name

    def __call__(self, q: ClopenSet) -> mpq:
        try:
            return self._cache[q]
        except KeyError:
            value = self._cache[q] = Q(self._fn(q))
            return value

    def interval(self, s: str) -> mpq:
        return self(ClopenSet((s,)))

    @classmethod
    def from_spec(cls, spec) -> "CapacityOracle":
        return cls(lambda q: capacity(spec, q), name=str(spec))

    @classmethod
    def from_table(cls, values: Mapping[ClopenSet, object]) -> "CapacityOracle":
        table = {ClopenSet.empty(): mpq(0), ClopenSet.full(): mpq(1)}
        table.update({q: Q(v) for q, v in values.items()})

        def lookup(q):
            try:
                return table[q]
            except KeyError:
                raise OracleIncomplete(f"oracle has no value for {{{format_clopen(q)}}}") from None

        return cls(lookup, name="table")

    @classmethod
    def from_text(cls, text: str) -> "CapacityOracle":
        """Lines ``<clopen> <value>``, e.g. ``00,11 20/27``; ``-`` is the full
        space, ``{}`` the empty set, ``#`` starts a comment."""
        values = {}
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 2:
                raise UsageError(f"oracle line {lineno}: expected '<clopen> <value>'")
            target = ClopenSet.empty() if parts[0] == "{}" else parse_clopen(parts[0])
            values[target] = parse_rational(parts[1])
        return cls.from_table(values)


@dataclass(frozen=True)
class BranchTable:
    """Masses ``(d(tau 0), d(tau 1), d(tau 2))`` for every code prefix ``tau``
    whose next node has depth below ``depth``."""

    depth: int
    entries: dict[Code, Triple] = field(default_factory=dict)
    unreachable: frozenset[Code] = frozenset()

    def mass(self, code) -> mpq:
        code = tuple(code)
        if not code:
            return mpq(1)
        try:
            return self.entries[code[:-1]][code[-1]]
        except KeyError:
            raise ValueError(f"code {format_code(code)} lies beyond table depth {self.depth}") from None

    def prefixes(self) -> list[Code]:
        return sorted(self.entries, key=lambda t: (len(t), t))

    def to_text(self) -> str:
        lines = [f"# depth {self.depth}"]
        for tau in self.prefixes():
            lines.append(" ".join([format_code(tau), *(fmt(v) for v in self.entries[tau])]))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "BranchTable":
        depth = None
        entries = {}
        for raw in text.splitlines():
            line = raw.strip()
            if line.startswith("# depth"):
                depth = int(line.split()[2])
                continue
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 4:
                raise UsageError(f"malformed table line {raw!r}")
            entries[parse_code(parts[0])] = tuple(parse_rational(p) for p in parts[1:])
        if depth is None:
            raise UsageError("branch table is missing its '# depth N' header")
        return cls(depth, entries)

    def capacity(self, q: ClopenSet, height: int | None = None) -> mpq:
        """Forward evaluation T_d(q) under this table (brute force)."""
        if height is None:
            height = q.height
        return capacity_bruteforce(self, q, height)


def iter_prefixes(depth: int) -> Iterator[tuple[Code, str]]:
    """``(tau, s)`` for every code prefix ``tau`` whose next node ``s`` has
    ``|s| < depth``; each prefix is yielded before its extensions."""
    stack: list[tuple[Code, tuple[str, ...]]] = [((), ("",))]
    while stack:
        tau, pending = stack.pop()
        s = pending[0]
        if len(s) >= depth:
            continue
        yield tau, s
        rest = pending[1:]
        for digit, kids in ((2, (s + "0", s + "1")), (1, (s + "1",)), (0, (s + "0",))):
            stack.append((tau + (digit,), rest + kids))


def branch_table(spec, depth: int) -> BranchTable:
    """The table a depth-keyed measure spec induces, for comparison."""
    mass = {(): mpq(1)}
    entries = {}
    for tau, s in iter_prefixes(depth):
        d = mass[tau]
        triple = tuple(d * w for w in spec.weight_at(len(s)))
        entries[tau] = triple
        for i in range(3):
            mass[tau + (i,)] = triple[i]
    return BranchTable(depth, entries)


def invert(oracle: Callable[[ClopenSet], mpq], depth: int) -> BranchTable:
    """Branch table of the unique measure whose capacity matches ``oracle``."""
    if not isinstance(oracle, CapacityOracle):
        oracle = CapacityOracle(oracle)
    if oracle(ClopenSet.empty()) != 0:
        raise NotACapacity("T(empty) must be 0")
    if oracle(ClopenSet.full()) != 1:
        raise NotACapacity("T(full space) must be 1")
    mass = {(): mpq(1)}
    entries: dict[Code, Triple] = {}
    dead = set()
    zero = (mpq(0), mpq(0), mpq(0))
    for tau, s in iter_prefixes(depth):
        d = mass[tau]
        t = oracle.interval(s)
        if t < 0:
            raise NegativeMass(f"T(I({s or '-'})) = {fmt(t)} is negative")
        if t == 0:
            triple = zero
            dead.add(tau)
        else:
            a0 = oracle.interval(s + "0") / t
            a1 = oracle.interval(s + "1") / t
            if a0 < 0 or a1 < 0 or a0 > 1 or a1 > 1:
                raise NegativeMass(
                    f"node {s or '-'}: relative hit weights {fmt(a0)}, {fmt(a1)} leave [0, 1]"
                )
            if a0 + a1 < 1:
                raise NotACapacity(
                    f"node {s or '-'}: a0 + a1 = {fmt(a0 + a1)} < 1 violates 2-alternation"
                )
            triple = (d * (1 - a1), d * (1 - a0), d * (a0 + a1 - 1))
            if d == 0:
                dead.add(tau)
        entries[tau] = triple
        for i in range(3):
            mass[tau + (i,)] = triple[i]
    return BranchTable(depth, entries, frozenset(dead))


def roundtrip_error(spec, depth: int) -> mpq:
    """Largest entry difference between ``spec``'s table and its reconstruction."""
    original = branch_table(spec, depth)
    rebuilt = invert(CapacityOracle.from_spec(spec), depth)
    worst = mpq(0)
    zero = (mpq(0),) * 3
    for tau in set(original.entries) | set(rebuilt.entries):
        a = original.entries.get(tau, zero)
        b = rebuilt.entries.get(tau, zero)
        worst = max([worst, *(abs(x - y) for x, y in zip(a, b))])
    return worst


def check_consistency(oracle, table: BranchTable, union_height: int = 2) -> list[tuple[ClopenSet, mpq, mpq]]:
    """Targets where the table's capacity differs from the oracle's.

    Tested targets: every interval I(s) with ``|s| <= table.depth`` and every
    union of two distinct intervals of height at most ``union_height``.
    Inconsistencies are reported, never repaired.
    """
    if not isinstance(oracle, CapacityOracle):
        oracle = CapacityOracle(oracle)
    strings = ["".join(bits) for m in range(table.depth + 1) for bits in product("01", repeat=m)]
    targets = {ClopenSet((s,)) for s in strings}
    short = [s for s in strings if len(s) <= min(union_height, table.depth)]
    targets |= {ClopenSet((s, t)) for s, t in combinations(short, 2)}
    bad = []
    for q in sorted(targets, key=lambda c: (c.height, c.generators)):
        want = oracle(q)
        got = table.capacity(q)
        if want != got:
            bad.append((q, want, got))
    return bad
