"""Acceptance battery: one PASS/FAIL line per criterion, numbered 1 to 13.

Each test prints its verdict straight to the terminal (bypassing capture) so
that the lines show up in a plain ``pytest -v`` run, then asserts it.
"""

import time
from math import prod

import pytest

from fusionflag import (
    build_root_system,
    check_parameter_independence,
    check_relations,
    check_surjection_order,
    even_fusion,
    graded_character,
    highest_weight_module,
    kac_dimension,
    monotonicity_scan,
    pbw_basis_osp12,
    predicted_qcharacter,
    relation_set,
    super_fusion,
    Weight,
)
from fusionflag.cli import suite_chevalley, suite_demazure, suite_half_integer, suite_truncated
from fusionflag.flags import partitions_up_to
from fusionflag.fusion import independence_tuples

CASES = [(1, m) for m in partitions_up_to(5)] + [(2, m) for m in [(1,), (1, 1), (2, 1)]]
_fusions = {}


def fusion(n, m):
    if (n, m) not in _fusions:
        _fusions[(n, m)] = super_fusion(n, m)
    return _fusions[(n, m)]


def verdict(capsys, number, ok, detail):
    with capsys.disabled():
        print(f"\ncriterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
    assert ok, detail


def test_criterion_01_kac_dimension(capsys):
    start = time.perf_counter()
    rs = build_root_system(1)
    dims = [kac_dimension(rs, Weight.of(m)) for m in range(9)]
    elapsed = time.perf_counter() - start
    ok = dims == [2 * m + 1 for m in range(9)] and elapsed < 1
    verdict(capsys, 1, ok, f"dims {dims} in {elapsed:.3f}s")


def test_criterion_02_module_construction(capsys):
    start = time.perf_counter()
    pairs = [(1, m) for m in range(6)] + [(2, m) for m in range(4)]
    bad = []
    for n, m in pairs:
        if highest_weight_module(n, m).dim != kac_dimension(build_root_system(n), Weight.delta(n, 1, m)):
            bad.append((n, m))
    elapsed = time.perf_counter() - start
    verdict(capsys, 2, not bad and elapsed < 30, f"{len(pairs)} modules, mismatches {bad}, {elapsed:.2f}s")


def test_criterion_03_chevalley(capsys):
    start = time.perf_counter()
    cases = [c for c in suite_chevalley((1, 2, 3))["cases"] if c["algebra"] == "osp"]
    elapsed = time.perf_counter() - start
    ok = all(not c["violations"] and c["integral"] for c in cases) and elapsed < 10
    verdict(capsys, 3, ok, f"n=1,2,3 violations {[len(c['violations']) for c in cases]}, {elapsed:.2f}s")


def test_criterion_04_fusion_dimension(capsys):
    start = time.perf_counter()
    bad = []
    for n, m in CASES:
        F = fusion(n, m)
        expected = prod(kac_dimension(build_root_system(n), Weight.delta(n, 1, x)) for x in m)
        if F.total_dim != expected:
            bad.append((n, m, F.total_dim, expected))
    elapsed = time.perf_counter() - start
    verdict(capsys, 4, not bad and elapsed < 300, f"{len(CASES)} fusion products, mismatches {bad}, {elapsed:.1f}s")


def test_criterion_05_local_weyl(capsys):
    sup = [super_fusion(1, (1,) * k).total_dim for k in range(1, 5)]
    even = [even_fusion(1, (1,) * k).total_dim for k in range(1, 7)]
    ok = sup == [3**k for k in range(1, 5)] and even == [2**k for k in range(1, 7)]
    verdict(capsys, 5, ok, f"osp dims {sup}, sp dims {even}")


def test_criterion_06_main_theorem(capsys):
    start = time.perf_counter()
    bad = [(n, m) for n, m in CASES if predicted_qcharacter(m, n) != graded_character(fusion(n, m))]
    elapsed = time.perf_counter() - start
    verdict(capsys, 6, not bad and elapsed < 600, f"{len(CASES)} q-characters, mismatches {bad}, {elapsed:.1f}s")


def test_criterion_07_presentation(capsys):
    checked = 0
    bad = []
    for n, m in CASES:
        S = relation_set("K", {"n": n, "m": m})
        assert S.bounds["r_max"] == sum(m) + 1 and S.bounds["s_max"] == len(m) * (sum(m) + 1)
        rep = check_relations(fusion(n, m), S)
        checked += len(rep.rows)
        if not rep.ok:
            bad.append(("K", n, m))
        E = even_fusion(n, m)
        for name in ("I", "N"):
            rep = check_relations(E, relation_set(name, {"n": n, "m": m}))
            checked += len(rep.rows)
            if not rep.ok:
                bad.append((name, n, m))
    verdict(capsys, 7, not bad, f"{checked} relations checked (K, I, N), failures {bad}")


def test_criterion_08_parameter_independence(capsys):
    bad = []
    for n, m in CASES:
        factors = [highest_weight_module(n, x) for x in m]
        if not check_parameter_independence(factors, independence_tuples(len(m))).independent:
            bad.append((n, m))
    verdict(capsys, 8, not bad, f"{len(CASES)} cases over 3 parameter tuples, dependent {bad}")


def test_criterion_09_truncated_and_demazure(capsys):
    trunc = suite_truncated(6, 4)["cases"]
    dem = suite_demazure(3, 6)["cases"]
    bad = [c for c in trunc + dem if not c["ok"]]
    verdict(capsys, 9, not bad, f"{len(trunc)} truncated Weyl and {len(dem)} Demazure cases, failures {len(bad)}")


def test_criterion_10_poset_monotonicity(capsys):
    start = time.perf_counter()
    scans = [(1, Weight.of(m), k) for m in range(7) for k in (1, 2, 3)]
    scans += [(2, Weight.of(2, 0), 2), (2, Weight.of(1, 1), 2)]
    violations = 0
    pairs = 0
    for n, lam, k in scans:
        rep = monotonicity_scan(lam, k, n)
        violations += len(rep.violations)
        pairs += len(rep.rows)
    elapsed = time.perf_counter() - start
    verdict(capsys, 10, violations == 0 and elapsed < 60, f"{pairs} pairs, {violations} violations, {elapsed:.2f}s")


def test_criterion_11_half_integer(capsys):
    cases = suite_half_integer((1, 2, 3), 3)["cases"]
    bad = [c for c in cases if not c["ok"]]
    verdict(capsys, 11, not bad, f"{len(cases)} dominant weights, non-integral {len(bad)}")


def test_criterion_12_pbw(capsys):
    rows = [pbw_basis_osp12(m) for m in partitions_up_to(5)]
    bad = [b.m for b in rows if not b.ok]
    flagged = [(b.m, b.alternative_count, b.expected) for b in rows if b.alternative_count != b.expected]
    detail = f"{len(rows)} partitions match under the upper-k reading, mismatches {bad}"
    with capsys.disabled():
        print(f"\n  known issue: the displayed index range overcounts (m, count, expected): {flagged}")
    verdict(capsys, 12, not bad, detail)


def test_criterion_13_surjections(capsys):
    checked = 0
    bad = []
    for size in range(1, 6):
        for k in (1, 2, 3):
            for a, b in monotonicity_scan(Weight.of(size), k, 1).comparable_pairs():
                if a == b:
                    continue
                lo = [int(w.coords[0]) for w in a]
                hi = [int(w.coords[0]) for w in b]
                checked += 1
                if not check_surjection_order(lo, hi).ok:
                    bad.append((lo, hi))
    verdict(capsys, 13, checked > 0 and not bad, f"{checked} comparable pairs, failures {bad}")
