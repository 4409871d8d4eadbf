"""Acceptance criteria, one test per criterion.

Every test evaluates all of its sub-checks before asserting, records a
``ACCEPTANCE n PASS/FAIL`` line (printed in the terminal summary) and then
fails if any sub-check failed. Run with ``pytest tests/test_acceptance.py -v``.
"""
import math
import time
from itertools import combinations, product

import conftest
from cantorcap import capacity as capmod
from cantorcap.asymptotics import classify, p_exact, p_sequence, pair_hit_bruteforce
from cantorcap.capacity import capacity, capacity_X, check_alternating, check_monotone
from cantorcap.choquet import CapacityOracle, branch_table, check_consistency, invert
from cantorcap.core import ClopenSet, decode_code, encode_tree, enumerate_trees
from cantorcap.measure import UNIFORM, symmetric
from cantorcap.pi01 import construct, schedule_c, verify
from cantorcap.rational import decimal, mpq
from cantorcap.sampler import SampleConfig, empirical_capacity, empirical_pair_hit, growth_stats
from cantorcap.selftest import SHIPPED_SPECS, all_clopen_targets

from conftest import QUARTER

SEED = 20240517


class Checks:
    def __init__(self, number, title):
        self.number, self.title = number, title
        self.failed = []
        self.start = time.perf_counter()

    def check(self, ok, label):
        if not ok:
            self.failed.append(label)

    def time_limit(self, seconds):
        elapsed = time.perf_counter() - self.start
        self.check(elapsed < seconds, f"runtime {elapsed:.2f}s >= {seconds}s")
        return elapsed

    def finish(self):
        status = "FAIL" if self.failed else "PASS"
        detail = "; ".join(self.failed) if self.failed else "all sub-checks hold"
        line = f"ACCEPTANCE {self.number} {status}: {self.title} ({detail})"
        conftest.ACCEPTANCE_LINES.append(line)
        print(line)
        assert not self.failed, line


def test_criterion_1_dp_matches_bruteforce():
    c = Checks(1, "DP equals brute force on every nonempty height<=3 target")
    capmod._capacity_dp_cached.cache_clear()
    targets = all_clopen_targets(3)
    c.check(len(targets) == 255, f"{len(targets)} targets")
    for spec in (UNIFORM, QUARTER):
        bad = [q for q in targets if capmod.capacity_dp(spec, q) != capmod.capacity_bruteforce(spec, q, 3)]
        c.check(not bad, f"{spec}: {len(bad)} mismatches")
    c.time_limit(10)
    c.finish()


def test_criterion_2_constants():
    c = Checks(2, "constants 2/3, p_1 = 7/9, T(X_0) = 1 - b, c_0 = 3/4")
    third = mpq(1, 3)
    for s in ("", "0", "01", "110"):
        for i in "01":
            ratio = capacity(UNIFORM, ClopenSet((s + i,))) / capacity(UNIFORM, ClopenSet((s,)))
            c.check(ratio == mpq(2, 3), f"T(I({s or '-'}{i}) | reached) = {ratio}")
    p1 = p_exact(third, 1)[0]
    c.check(p1 == mpq(7, 9) == 1 - 2 * third ** 2, f"p_1 = {p1}")
    for b in (third, mpq(1, 4), mpq(2, 5)):
        tx0 = capacity_X(symmetric(b), [0], exact=True)
        c.check(tx0.is_exact and tx0.value == 1 - b, f"T(X_0) at b={b} is {tx0}")
    c.check(schedule_c(0) == mpq(3, 4), f"c_0 = {schedule_c(0)}")
    c.finish()


def test_criterion_3_recurrence_vs_enumeration():
    c = Checks(3, "p_2 from the recurrence equals 15x15 pair enumeration")
    for b in (mpq(1, 3), mpq(1, 4), mpq(2, 5)):
        rec = p_exact(b, 2)[1]
        brute = pair_hit_bruteforce(symmetric(b), 2)
        c.check(rec == brute, f"b={b}: {rec} != {brute}")
    c.time_limit(1)
    c.finish()


def test_criterion_4_regime_classification():
    c = Checks(4, "regime classification and limits")
    for b in (mpq(1, 3), mpq(3, 10), mpq(45, 100)):
        c.check(classify(b).zero_capacity, f"b={b} not zero-capacity")
    expected = {mpq(1, 4): mpq(1, 2), mpq(29, 100): mpq(41, 882), mpq(1, 5): mpq(7, 9)}
    for b, m_b in expected.items():
        r = classify(b)
        c.check(not r.zero_capacity and r.m_b == m_b, f"b={b}: {r}")
    p20 = p_exact(mpq(1, 4), 20)[-1]
    c.check(mpq(1, 2) <= p20 <= mpq(1, 2) + mpq(1, 1000),
            f"p_20 at b=1/4 is {decimal(p20)}, outside [1/2, 1/2 + 1e-3]")
    bounds = p_sequence(mpq(1, 3), 200, mode="interval")
    hit = next((n for n, bd in enumerate(bounds, 1) if bd.upper < mpq(1, 10 ** 6)), None)
    c.check(hit is not None, "certified p_n never below 1e-6 for n <= 200")
    c.time_limit(5)
    c.finish()


def test_criterion_5_choquet_round_trip():
    c = Checks(5, "Choquet inversion reproduces the shipped specs at depth 3")
    for spec in SHIPPED_SPECS:
        oracle = CapacityOracle.from_spec(spec)
        table = invert(oracle, 3)
        truth = branch_table(spec, 3)
        c.check(table.entries == truth.entries, f"{spec}: triples differ")
        bad = check_consistency(oracle, table, union_height=2)
        c.check(not bad, f"{spec}: {len(bad)} forward mismatches")
    c.finish()


def test_criterion_6_pi01_construction():
    c = Checks(6, "Pi01 construction at b=1/3, k_max=9")
    con = construct(mpq(1, 3), 9, precision=128, level_cap=10_000)
    levels = con.levels
    c.check(len(levels) == 10, f"{len(levels)} levels")
    c.check(all(a < b for a, b in zip(levels, levels[1:])), f"levels not increasing: {levels}")
    c.check(levels[0] == 2, f"n_0 = {levels[0]}")
    for rec in con.prefixes:
        c.check(rec.bound.lower >= rec.c_k, f"prefix {rec.k}: lower {rec.bound.lower} < c_k")
        c.check(rec.lebesgue == mpq(1, 2 ** (rec.k + 1)), f"prefix {rec.k}: Lebesgue {rec.lebesgue}")
    c.check(con.prefixes[-1].lebesgue == mpq(1, 1024), "last Lebesgue value is not 2^-10")
    c.check(con.final_bound.lower >= mpq(1, 2), f"final lower {con.final_bound.lower}")
    c.check(verify(con).ok, "verify rejects its own output")
    mutated = list(levels)
    mutated[1] -= 1
    tampered = type(con)(con.b, tuple(mutated), con.prefixes, con.precision_bits)
    c.check(not verify(tampered).ok, "verify accepts a mutated level")
    c.time_limit(30)
    c.finish()


def test_criterion_7_sampler_statistics():
    c = Checks(7, "sampler agrees with exact values at 1e5 trials")
    pair = empirical_pair_hit(SampleConfig(UNIFORM, 2, 10 ** 5, SEED))
    c.check(pair.exact_reference == mpq(455, 729), f"pair reference {pair.exact_reference}")
    c.check(pair.within(4), f"pair hit z = {pair.z_score:.2f}")
    cap = empirical_capacity(SampleConfig(UNIFORM, 1, 10 ** 5, SEED), ClopenSet(("0",)))
    c.check(cap.exact_reference == mpq(2, 3) and cap.within(4), f"capacity of {{0}} z = {cap.z_score:.2f}")
    growth = growth_stats(SampleConfig(UNIFORM, 10, 10 ** 5, SEED))
    c.check(abs(growth.ratio - 4 / 3) < 0.02 * 4 / 3, f"growth ratio {growth.ratio:.5f}")
    c.check(abs(growth.dimension - math.log2(4 / 3)) < 0.02, f"dimension {growth.dimension:.5f}")
    c.time_limit(60)
    c.finish()


def test_criterion_8_property_suites():
    c = Checks(8, "capacity axioms, codec round trip, tree counts")
    family = all_clopen_targets(2, nonempty=False)
    c.check(len(family) == 16, f"{len(family)} height-2 clopens")
    for spec in SHIPPED_SPECS:
        c.check(capacity(spec, ClopenSet.empty()) == 0, f"{spec}: T(empty) != 0")
        for q1, q2 in product(family, repeat=2):
            if q1 <= q2:
                c.check(check_monotone(spec, q1, q2), f"{spec}: monotonicity {q1} <= {q2}")
        for pair in combinations(family, 2):
            c.check(check_alternating(spec, pair), f"{spec}: 2-alternating {pair}")
        for triple in combinations(family, 3):
            c.check(check_alternating(spec, triple), f"{spec}: 3-alternating {triple}")
    for n in range(4):
        for t in enumerate_trees(n):
            code = encode_tree(t)
            c.check(decode_code(code, n) == t, f"codec round trip at height {n}")
    for n in range(5):
        count = sum(1 for _ in enumerate_trees(n))
        c.check(count == 2 ** (2 ** n) - 1, f"height {n}: {count} trees")
    c.finish()
