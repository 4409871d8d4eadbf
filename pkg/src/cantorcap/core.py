"""Binary strings, dead-end-free finite trees, ternary codes and clopen sets.

Bit strings are plain ``str`` over ``"0"``/``"1"`` (the empty string is the
root, rendered ``"-"`` in text). A node ``s`` of length ``m`` is stored as
bit ``int(s, 2)`` of the level-``m`` bitmap, so ascending bit order within a
level is lexicographic order and level-by-level traversal is the
length-then-lexicographic enumeration the ternary code is defined over.

Ternary codes are tuples of ints in {0, 1, 2}: digit 2 means both children,
1 means only child 1, 0 means only child 0.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Iterable, Iterator, Sequence

from .errors import BudgetExceeded, EmptyClopen, LengthMismatch, UndecodablePrefix, UsageError

__all__ = [
    "FiniteTree",
    "ClopenSet",
    "encode_tree",
    "decode_code",
    "enumerate_trees",
    "tree_count",
    "canonicalize",
    "tree_of_clopen",
    "basic_complement",
    "code_node_depths",
    "parse_bitstring",
    "format_bitstring",
    "parse_code",
    "format_code",
    "DEFAULT_MAX_HEIGHT",
]

DEFAULT_MAX_HEIGHT = 4

# child-pair mask (bit 0 = child 0, bit 1 = child 1) <-> code digit
_MASK_TO_DIGIT = {1: 0, 2: 1, 3: 2}
_DIGIT_TO_MASK = (1, 2, 3)


def _bits(x: int) -> Iterator[int]:
    """Indices of set bits of ``x`` in ascending order."""
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def _index(s: str) -> int:
    return int(s, 2) if s else 0


def _string(index: int, length: int) -> str:
    return format(index, f"0{length}b") if length else ""


def _parents(level: int) -> int:
    out = 0
    for j in _bits(level):
        out |= 1 << (j >> 1)
    return out


def _check_bitstring(s: str) -> str:
    if not isinstance(s, str) or s.strip("01"):
        raise UsageError(f"not a bit string: {s!r}")
    return s


# --------------------------------------------------------------------------
# finite trees

@dataclass(frozen=True)
class FiniteTree:
    """A prefix-closed tree of height ``len(levels) - 1`` with no dead ends.

    ``levels[m]`` is the bitmap of nodes of length ``m``.
    """

    levels: tuple[int, ...]

    def __post_init__(self):
        lv = self.levels
        if not lv or lv[0] != 1:
            raise ValueError("a tree must contain exactly the root at level 0")
        for m in range(len(lv) - 1):
            if lv[m + 1] >> (2 << m):
                raise ValueError(f"level {m + 1} has nodes out of range")
            if _parents(lv[m + 1]) != lv[m]:
                raise ValueError(f"level {m}: dead end or orphaned child")

    @classmethod
    def _trusted(cls, levels: tuple[int, ...]) -> "FiniteTree":
        obj = object.__new__(cls)
        object.__setattr__(obj, "levels", levels)
        return obj

    @classmethod
    def from_nodes(cls, nodes: Iterable[str], height: int | None = None) -> "FiniteTree":
        nodes = {_check_bitstring(s) for s in nodes}
        if height is None:
            height = max(map(len, nodes), default=0)
        levels = [0] * (height + 1)
        for s in nodes:
            if len(s) > height:
                raise ValueError(f"node {s!r} is deeper than height {height}")
            levels[len(s)] |= 1 << _index(s)
        return cls(tuple(levels))

    @classmethod
    def from_leaves(cls, leaves: Iterable[str], height: int | None = None) -> "FiniteTree":
        """The tree whose level-``height`` nodes are exactly ``leaves``."""
        leaves = [_check_bitstring(s) for s in leaves]
        if not leaves:
            raise EmptyClopen("a tree needs at least one leaf")
        if height is None:
            height = len(leaves[0])
        if any(len(s) != height for s in leaves):
            raise ValueError("all leaves must have length equal to the height")
        mask = 0
        for s in leaves:
            mask |= 1 << _index(s)
        return cls._from_leaf_mask(mask, height)

    @classmethod
    def _from_leaf_mask(cls, mask: int, height: int) -> "FiniteTree":
        levels = [mask]
        for _ in range(height):
            levels.append(_parents(levels[-1]))
        return cls._trusted(tuple(reversed(levels)))

    @property
    def height(self) -> int:
        return len(self.levels) - 1

    @property
    def leaf_mask(self) -> int:
        return self.levels[-1]

    def level(self, m: int) -> list[str]:
        return [_string(j, m) for j in _bits(self.levels[m])]

    def leaves(self) -> list[str]:
        return self.level(self.height)

    def nodes(self) -> list[str]:
        """All nodes, ordered by length then lexicographically."""
        return [s for m in range(len(self.levels)) for s in self.level(m)]

    def __contains__(self, s: str) -> bool:
        m = len(s)
        return m < len(self.levels) and bool(self.levels[m] >> _index(s) & 1)

    def __len__(self) -> int:
        return sum(bin(x).count("1") for x in self.levels)

    def restrict(self, height: int) -> "FiniteTree":
        if height > self.height:
            raise ValueError("cannot restrict to a greater height")
        return FiniteTree._trusted(self.levels[: height + 1])

    def __repr__(self) -> str:
        shown = ",".join(format_bitstring(s) for s in self.nodes())
        return f"FiniteTree({{{shown}}}, height={self.height})"


def encode_tree(t: FiniteTree) -> tuple[int, ...]:
    """Ternary code of ``t``; nodes at the top level emit no digit."""
    lv = t.levels
    code = []
    for m in range(len(lv) - 1):
        nxt = lv[m + 1]
        for j in _bits(lv[m]):
            code.append(_MASK_TO_DIGIT[nxt >> (2 * j) & 3])
    return tuple(code)


def decode_code(code: Sequence[int], height: int) -> FiniteTree:
    """Inverse of :func:`encode_tree` for a tree of the given height."""
    code = tuple(code)
    _check_digits(code)
    levels = [1]
    pos = 0
    for _ in range(height):
        nxt = 0
        for j in _bits(levels[-1]):
            if pos >= len(code):
                raise LengthMismatch(f"code {format_code(code)} is too short for height {height}")
            nxt |= _DIGIT_TO_MASK[code[pos]] << (2 * j)
            pos += 1
        levels.append(nxt)
    if pos != len(code):
        raise LengthMismatch(
            f"code {format_code(code)} is too long for height {height} ({pos} digits used)"
        )
    return FiniteTree._trusted(tuple(levels))


def _check_digits(code: tuple[int, ...]) -> None:
    for d in code:
        if d not in (0, 1, 2):
            raise UndecodablePrefix(f"digit {d!r} is not in {{0,1,2}}")


def code_node_depths(code: Sequence[int]) -> Iterator[int]:
    """Depth of the tree node each digit of ``code`` describes.

    Every ternary string is a prefix of some infinite code (each node has at
    least one child), so only non-ternary digits are rejected.
    """
    queue = deque([0])
    for d in code:
        if d not in (0, 1, 2):
            raise UndecodablePrefix(f"digit {d!r} is not in {{0,1,2}}")
        depth = queue.popleft()
        yield depth
        queue.append(depth + 1)
        if d == 2:
            queue.append(depth + 1)


def tree_count(height: int) -> int:
    """Number of dead-end-free trees of the given height: 2**(2**n) - 1."""
    return 2 ** (2 ** height) - 1


def enumerate_trees(height: int, max_height: int = DEFAULT_MAX_HEIGHT) -> Iterator[FiniteTree]:
    """Every tree of the given height once, in lexicographic order of codes."""
    if height < 0:
        raise ValueError("height must be >= 0")
    if height > max_height:
        raise BudgetExceeded(
            f"height {height} has {tree_count(height)} trees; cap is height {max_height}"
        )
    return _extend((1,), height)


def _extend(levels: tuple[int, ...], height: int) -> Iterator[FiniteTree]:
    if len(levels) == height + 1:
        yield FiniteTree._trusted(levels)
        return
    nodes = list(_bits(levels[-1]))
    # product() varies the last node fastest: lexicographic over this level's digits
    for masks in product(_DIGIT_TO_MASK, repeat=len(nodes)):
        nxt = 0
        for mask, j in zip(masks, nodes):
            nxt |= mask << (2 * j)
        yield from _extend(levels + (nxt,), height)


@lru_cache(maxsize=None)
def tree_table(height: int) -> tuple[tuple[FiniteTree, tuple[int, ...]], ...]:
    """Cached ``(tree, code)`` pairs for all trees of ``height``."""
    return tuple((t, encode_tree(t)) for t in enumerate_trees(height))


def basic_complement(a: FiniteTree) -> list[FiniteTree]:
    """The hyperspace complement of the basic set U_A, as the union of U_B, B != A."""
    return [t for t in enumerate_trees(a.height) if t != a]


# --------------------------------------------------------------------------
# clopen sets

def _cover(prefix: str, suffixes: set[str]) -> list[str]:
    if "" in suffixes:
        return [prefix]
    if not suffixes:
        return []
    left = _cover(prefix + "0", {s[1:] for s in suffixes if s[0] == "0"})
    right = _cover(prefix + "1", {s[1:] for s in suffixes if s[0] == "1"})
    if left == [prefix + "0"] and right == [prefix + "1"]:
        return [prefix]
    return left + right


@dataclass(frozen=True)
class ClopenSet:
    """A finite union of intervals I(s), kept as its canonical antichain.

    Any generator collection is accepted; prefixes absorb their extensions
    and sibling pairs merge into their parent, so two ClopenSets are equal
    exactly when they denote the same set of reals.
    """

    generators: tuple[str, ...] = ()

    def __post_init__(self):
        gens = self.generators
        if isinstance(gens, str):
            gens = (gens,)
        gens = {_check_bitstring(g) for g in gens}
        object.__setattr__(self, "generators", tuple(_cover("", gens)))

    @classmethod
    def full(cls) -> "ClopenSet":
        return cls(("",))

    @classmethod
    def empty(cls) -> "ClopenSet":
        return cls(())

    @classmethod
    def from_mask(cls, mask: int, n: int) -> "ClopenSet":
        return cls(tuple(_string(j, n) for j in _bits(mask)))

    @property
    def height(self) -> int:
        return max(map(len, self.generators), default=0)

    def is_empty(self) -> bool:
        return not self.generators

    def is_full(self) -> bool:
        return self.generators == ("",)

    def mask(self, n: int | None = None) -> int:
        """Bitmap of the length-``n`` strings whose intervals lie inside the set."""
        if n is None:
            n = self.height
        if n < self.height:
            raise ValueError(f"level {n} is below the set's height {self.height}")
        out = 0
        for g in self.generators:
            k = n - len(g)
            out |= ((1 << (1 << k)) - 1) << (_index(g) << k)
        return out

    def extensions(self, n: int) -> list[str]:
        return [_string(j, n) for j in _bits(self.mask(n))]

    def _level(self, other: "ClopenSet") -> int:
        return max(self.height, other.height)

    def __or__(self, other: "ClopenSet") -> "ClopenSet":
        return ClopenSet(self.generators + other.generators)

    def __and__(self, other: "ClopenSet") -> "ClopenSet":
        n = self._level(other)
        return ClopenSet.from_mask(self.mask(n) & other.mask(n), n)

    def complement(self) -> "ClopenSet":
        n = self.height
        return ClopenSet.from_mask(((1 << (1 << n)) - 1) & ~self.mask(n), n)

    def __le__(self, other: "ClopenSet") -> bool:
        n = self._level(other)
        return self.mask(n) & ~other.mask(n) == 0

    def __str__(self) -> str:
        return format_clopen(self)


def canonicalize(generators: Iterable[str]) -> ClopenSet:
    return ClopenSet(tuple(generators))


def tree_of_clopen(c: ClopenSet, height: int) -> FiniteTree:
    """The height-``height`` tree whose leaves are the extensions of ``c``."""
    if c.is_empty():
        raise EmptyClopen("the empty clopen set has no tree")
    return FiniteTree._from_leaf_mask(c.mask(height), height)


# --------------------------------------------------------------------------
# text formats

def parse_bitstring(text: str) -> str:
    s = text.strip()
    if s in ("-", "λ"):
        return ""
    if not s or s.strip("01"):
        raise UsageError(f"malformed bit string {text!r}")
    return s


def format_bitstring(s: str) -> str:
    return s if s else "-"


def parse_clopen(text: str) -> ClopenSet:
    """Comma-separated generators, e.g. ``"00,01,1"``; ``""`` is the empty set."""
    text = text.strip()
    if not text:
        return ClopenSet.empty()
    return ClopenSet(tuple(parse_bitstring(part) for part in text.split(",")))


def format_clopen(c: ClopenSet) -> str:
    return ",".join(format_bitstring(g) for g in c.generators)


def parse_code(text: str) -> tuple[int, ...]:
    s = text.strip()
    if s == "-":
        return ()
    if s.strip("012"):
        raise UsageError(f"malformed ternary code {text!r}")
    return tuple(int(ch) for ch in s)


def format_code(code: Sequence[int]) -> str:
    return "".join(map(str, code)) if code else "-"
