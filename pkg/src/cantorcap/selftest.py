"""Exhaustive oracle-equivalence suites behind ``cantorcap selftest``."""
from __future__ import annotations

from itertools import product

from . import asymptotics, capacity, choquet, core
from .measure import DepthDependent, Regular, UNIFORM
from .rational import mpq

__all__ = ["SUITES", "SHIPPED_SPECS", "run_suites", "all_clopen_targets"]

SHIPPED_SPECS = (
    UNIFORM,
    Regular(mpq(1, 4), mpq(1, 4), mpq(1, 2)),
    DepthDependent(((mpq(1, 2), mpq(1, 2), mpq(0)),), (mpq(1, 3), mpq(1, 3), mpq(1, 3))),
)


def all_clopen_targets(height: int, nonempty: bool = True) -> list[core.ClopenSet]:
    """Every clopen set generated by length-``height`` strings."""
    width = 1 << height
    start = 1 if nonempty else 0
    return [core.ClopenSet.from_mask(mask, height) for mask in range(start, 1 << width)]


def _codec() -> tuple[bool, str]:
    checked = 0
    for n in range(4):
        trees = list(core.enumerate_trees(n))
        if len(trees) != core.tree_count(n):
            return False, f"height {n}: {len(trees)} trees"
        for t in trees:
            if core.decode_code(core.encode_tree(t), n) != t:
                return False, f"round trip failed for {t!r}"
            checked += 1
    return True, f"{checked} trees round-trip"


def _capacity() -> tuple[bool, str]:
    capacity._capacity_dp_cached.cache_clear()
    checked = 0
    for spec in SHIPPED_SPECS[:2]:
        for q in all_clopen_targets(3):
            dp = capacity.capacity_dp(spec, q)
            brute = capacity.capacity_bruteforce(spec, q, 3)
            if dp != brute:
                return False, f"{spec}: target {{{q}}} dp {dp} != brute force {brute}"
            checked += 1
    return True, f"dp == brute force on {checked} (measure, target) pairs"


def _choquet() -> tuple[bool, str]:
    for spec in SHIPPED_SPECS:
        err = choquet.roundtrip_error(spec, 3)
        if err != 0:
            return False, f"{spec}: round-trip error {err}"
        table = choquet.invert(choquet.CapacityOracle.from_spec(spec), 3)
        bad = choquet.check_consistency(choquet.CapacityOracle.from_spec(spec), table)
        if bad:
            return False, f"{spec}: {len(bad)} forward mismatches"
    return True, f"{len(SHIPPED_SPECS)} specs reconstruct exactly at depth 3"


def _recurrence() -> tuple[bool, str]:
    for b, n in product((mpq(1, 3), mpq(1, 4), mpq(2, 5)), (1, 2)):
        p = asymptotics.p_exact(b, n)[-1]
        brute = asymptotics.pair_hit_bruteforce(asymptotics.SymmetricParam(b).spec, n)
        if p != brute:
            return False, f"b={b}, n={n}: recurrence {p} != enumeration {brute}"
    return True, "p_1, p_2 match pair enumeration for b in {1/3, 1/4, 2/5}"


SUITES = {
    "codec": _codec,
    "capacity": _capacity,
    "choquet": _choquet,
    "recurrence": _recurrence,
}


def run_suites(names=None) -> list[tuple[str, bool, str]]:
    out = []
    for name in names or SUITES:
        try:
            ok, detail = SUITES[name]()
        except Exception as exc:  # a crashing suite is a failing suite
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        out.append((name, ok, detail))
    return out
