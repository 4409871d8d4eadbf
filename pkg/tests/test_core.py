from itertools import combinations, product

import pytest
from hypothesis import given, strategies as st

from cantorcap.core import (
    ClopenSet,
    FiniteTree,
    basic_complement,
    canonicalize,
    code_node_depths,
    decode_code,
    encode_tree,
    enumerate_trees,
    format_clopen,
    format_code,
    parse_bitstring,
    parse_clopen,
    parse_code,
    tree_count,
    tree_of_clopen,
)
from cantorcap.errors import BudgetExceeded, EmptyClopen, LengthMismatch, UndecodablePrefix, UsageError


def T(*nodes, height=None):
    return FiniteTree.from_nodes(nodes, height)


@pytest.mark.parametrize(
    "nodes, code",
    [
        (("", "0", "1"), (2,)),
        (("", "0"), (0,)),
        (("", "0", "1", "00", "11"), (2, 0, 1)),
        (("", "1", "10", "11"), (1, 2)),
    ],
)
def test_encode_examples(nodes, code):
    assert encode_tree(T(*nodes)) == code


def test_decode_examples():
    assert decode_code((2,), 1) == T("", "0", "1")
    assert decode_code((0, 1), 2) == T("", "0", "01")
    assert decode_code((), 0) == T("")


@pytest.mark.parametrize("code, height", [((2, 2), 2), ((2,), 2), ((0, 1, 1), 2), ((0,), 0)])
def test_decode_length_mismatch(code, height):
    with pytest.raises(LengthMismatch):
        decode_code(code, height)


def test_decode_rejects_non_ternary():
    with pytest.raises(UndecodablePrefix):
        decode_code((3,), 1)


def test_tree_validation():
    with pytest.raises(ValueError):
        FiniteTree((1, 0b01, 0))  # node 0 at level 1 is a dead end
    with pytest.raises(ValueError):
        FiniteTree((1, 0b01, 0b0100))  # child of the absent node 1
    with pytest.raises(ValueError):
        FiniteTree((0,))


def test_tree_queries():
    t = T("", "0", "1", "00", "11")
    assert "11" in t and "01" not in t and "" in t and "000" not in t
    assert t.leaves() == ["00", "11"]
    assert t.nodes() == ["", "0", "1", "00", "11"]
    assert len(t) == 5
    assert t.restrict(1) == T("", "0", "1")


@pytest.mark.parametrize("n, count", [(0, 1), (1, 3), (2, 15), (3, 255), (4, 65535)])
def test_enumeration_count(n, count):
    trees = list(enumerate_trees(n))
    assert len(trees) == count == tree_count(n)
    assert len(set(trees)) == count


def test_count_recurrence():
    counts = [sum(1 for _ in enumerate_trees(n)) for n in range(4)]
    for a, b in zip(counts, counts[1:]):
        assert b == a * a + 2 * a


def test_enumeration_listing_height_one():
    assert list(enumerate_trees(1)) == [T("", "0"), T("", "1"), T("", "0", "1")]


def test_enumeration_is_code_lexicographic():
    codes = [encode_tree(t) for t in enumerate_trees(3)]
    assert codes == sorted(codes)


def test_enumeration_budget():
    with pytest.raises(BudgetExceeded):
        enumerate_trees(5)
    assert sum(1 for _ in enumerate_trees(2, max_height=2)) == 15
    with pytest.raises(BudgetExceeded):
        enumerate_trees(3, max_height=2)


@pytest.mark.parametrize("n", range(4))
def test_round_trip_exhaustive(n):
    for t in enumerate_trees(n):
        assert decode_code(encode_tree(t), n) == t


def test_code_node_depths():
    assert list(code_node_depths((2, 0, 1))) == [0, 1, 1]
    assert list(code_node_depths((0, 2, 1, 0))) == [0, 1, 2, 2]
    with pytest.raises(UndecodablePrefix):
        list(code_node_depths((0, 5)))


@pytest.mark.parametrize(
    "gens, canon",
    [
        (["00", "01"], ("0",)),
        (["0", "01"], ("0",)),
        (["0", "10"], ("0", "10")),
        (["00", "01", "1"], ("",)),
        ([], ()),
        (["110", "111", "10"], ("1",)),
    ],
)
def test_canonicalize_examples(gens, canon):
    assert canonicalize(gens).generators == canon


STRINGS_LE3 = ["".join(p) for m in range(4) for p in product("01", repeat=m)]


def _extensions(gens, n=3):
    return {g + "".join(t) for g in gens for t in product("01", repeat=n - len(g))}


def test_canonical_denotation_exhaustive():
    for mask in range(1 << len(STRINGS_LE3)):
        gens = [s for i, s in enumerate(STRINGS_LE3) if mask >> i & 1]
        c = canonicalize(gens)
        assert _extensions(c.generators) == _extensions(gens)
        # antichain, and every generator is needed
        for a, b in combinations(c.generators, 2):
            assert not a.startswith(b) and not b.startswith(a)
        for g in c.generators:
            rest = [h for h in c.generators if h != g]
            assert _extensions(rest) != _extensions(c.generators)


@given(st.sets(st.text(alphabet="01", max_size=6), max_size=8))
def test_canonicalize_idempotent(gens):
    c = canonicalize(gens)
    assert canonicalize(c.generators) == c


@given(st.sets(st.text(alphabet="01", max_size=5), max_size=6),
       st.sets(st.text(alphabet="01", max_size=5), max_size=6))
def test_set_algebra_matches_point_sets(g1, g2):
    a, b = ClopenSet(tuple(g1)), ClopenSet(tuple(g2))
    ea, eb = _extensions(a.generators, 5), _extensions(b.generators, 5)
    assert _extensions((a | b).generators, 5) == ea | eb
    assert _extensions((a & b).generators, 5) == ea & eb
    assert _extensions(a.complement().generators, 5) == _extensions([""], 5) - ea
    assert (a <= b) == (ea <= eb)


def test_clopen_basics():
    assert ClopenSet.full().is_full() and ClopenSet.empty().is_empty()
    assert ClopenSet(("0", "10")).height == 2
    assert ClopenSet(("0",)).mask(2) == 0b0011
    assert ClopenSet(("0",)).extensions(2) == ["00", "01"]
    with pytest.raises(ValueError):
        ClopenSet(("010",)).mask(2)


@pytest.mark.parametrize(
    "gens, n, nodes",
    [
        (("0",), 1, ("", "0")),
        (("0",), 2, ("", "0", "00", "01")),
        (("00", "11"), 2, ("", "0", "1", "00", "11")),
    ],
)
def test_tree_of_clopen(gens, n, nodes):
    assert tree_of_clopen(ClopenSet(gens), n) == T(*nodes)


def test_tree_of_clopen_errors():
    with pytest.raises(EmptyClopen):
        tree_of_clopen(ClopenSet.empty(), 2)
    with pytest.raises(ValueError):
        tree_of_clopen(ClopenSet(("00",)), 1)


def test_basic_complement_is_union_of_other_basic_sets():
    a = T("", "0", "1")
    rest = basic_complement(a)
    assert len(rest) == 2 and a not in rest


def test_text_formats():
    assert parse_bitstring("-") == "" and parse_bitstring("0110") == "0110"
    assert parse_clopen("00,01,1") == ClopenSet.full()
    assert parse_clopen("") == ClopenSet.empty()
    assert format_clopen(parse_clopen("0,10")) == "0,10"
    assert format_clopen(ClopenSet.full()) == "-"
    assert parse_code("201") == (2, 0, 1) and format_code((2, 0, 1)) == "201"
    for bad in ("0a", "", "2"):
        with pytest.raises(UsageError):
            parse_bitstring(bad)
    with pytest.raises(UsageError):
        parse_code("13")
