"""One test per acceptance criterion. Each prints a PASS/FAIL line and enforces its time limit.

Run with ``pytest -v -s tests/test_acceptance.py`` to see the lines.
"""
import functools
import time

import pytest

from gentle_kit import catalog
from gentle_kit.constructions import bd, cma
from gentle_kit.core import BoundQuiver, isomorphic, nonzero_paths
from gentle_kit.dissection import algebra_of, bd_dissection, blue_elementary_polygons, cma_dissection, dissection_of
from gentle_kit.dissection import surface_invariants
from gentle_kit.generator import GenConfig, enumerate_normal_forms, generate
from gentle_kit.harness import VerifyConfig, verify
from gentle_kit.normal_form import from_normal_form, matrix_dimension, to_normal_form
from gentle_kit.threads import forbidden_cycles
from gentle_kit.words import (
    DerivedType,
    RepType,
    derived_type,
    enumerate_bands,
    enumerate_homotopy_bands,
    has_band,
    has_homotopy_band,
    homotopy_letters,
    representation_type,
    string_graph,
)

from test_constructions import bd_by_surgery


def best_of(fn, repeats=5):
    """Best wall time over ``repeats`` calls, and the last result."""
    best, out = float("inf"), None
    for _ in range(repeats):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return best, out


def report(n, ok, seconds, limit, detail=""):
    within = seconds < limit
    status = "PASS" if ok and within else "FAIL"
    print(f"\n{status} criterion {n}: {detail} ({seconds * 1000:.3f} ms, limit {limit * 1000:.0f} ms)")
    assert ok, detail
    assert within, f"criterion {n} took {seconds:.4f}s, limit {limit}s"


def test_criterion_1_normal_form_e1():
    e1 = catalog.e1()
    seconds, nf = best_of(lambda: to_normal_form(e1))
    ok = nf.m == (4, 2) and nf.pairs == (((1, 2), (2, 1)), ((1, 4), (2, 2)))
    report(1, ok, seconds, 1e-3, f"m={nf.m} pairs={nf.pairs}")


def test_criterion_2_bd_e2():
    e2 = catalog.e2()
    seconds, out = best_of(lambda: bd(e2))
    paths = len(nonzero_paths(out))
    nf = to_normal_form(out)
    # the doubled chains have 4 and 6 vertices: 10 + 21 - 1 = 30
    ok = (
        out.validation.is_gentle
        and isomorphic(out, bd_by_surgery(e2)) is not None
        and set(out.relations) == {("x'", "gamma"), ("x''", "alpha")}
        and sorted(nf.m) == [4, 6]
        and paths == matrix_dimension(nf) == 10 + 21 - 1 == 30
    )
    report(2, ok, seconds, 10e-3, f"{len(out.vertices)} vertices, {paths} nonzero paths")


def test_criterion_3_bd_of_chains():
    def run():
        return [isomorphic(bd(catalog.chain(n)), catalog.chain(2 * n)) is not None for n in range(1, 9)]

    seconds, results = best_of(run, 3)
    report(3, all(results), seconds, 10e-3, f"bd(T_n) ~ T_2n for n=1..8: {results}")


def test_criterion_4_cma_goldens():
    e3, e1 = catalog.e3(), catalog.e1()
    expected = BoundQuiver.build(
        ["1", "2", "G(a)", "G(b)"],
        [("a-", "1", "G(a)"), ("a+", "G(a)", "2"), ("b-", "2", "G(b)"), ("b+", "G(b)", "1")],
        [("a+", "b-"), ("b+", "a-")],
        "CMA_E3",
    )
    t3, out3 = best_of(lambda: cma(e3))
    t1, out1 = best_of(lambda: cma(e1))
    ok = out3 == expected and isomorphic(out1, e1) is not None
    report(4, ok, max(t3, t1), 1e-3, f"cma(E3) relations {sorted(out3.relations)}; cma(E1) ~ E1")


def test_criterion_5_gentleness_closure():
    start = time.perf_counter()
    failures = []
    for seed in range(1, 501):
        a = generate(GenConfig(seed))
        for name, image in (("bd", bd(a)), ("cma", cma(a))):
            if not image.validation.is_gentle:
                failures.append((seed, name))
    report(5, not failures, time.perf_counter() - start, 30, f"500 seeds, failures={failures[:5]}")


def orbit_mismatches(kind):
    """Mismatches of one invariant over seeds 1..500 at depth 2 and seeds 1..50 at depth 3."""
    runs = [VerifyConfig(seed=1, count=500, ops_depth=2, sample_every=0),
            VerifyConfig(seed=1, count=50, ops_depth=3, sample_every=0)]
    found, words = [], 0
    for cfg in runs:
        rep = verify(cfg)
        for rec in rep.records:
            words += len(rec.types)
            found += [f"seed {rec.seed}: {m}" for m in rec.mismatches if kind in m or "type" not in m]
    return found, words


def test_criterion_6_representation_type_orbits():
    start = time.perf_counter()
    found, words = orbit_mismatches("representation type")
    report(6, not found, time.perf_counter() - start, 120, f"{words} algebras checked, mismatches={found[:5]}")


def test_criterion_7_derived_type_orbits():
    start = time.perf_counter()
    found, words = orbit_mismatches("derived type")
    report(7, not found, time.perf_counter() - start, 120, f"{words} algebras checked, mismatches={found[:5]}")


def test_criterion_8_oracle_equivalence():
    start = time.perf_counter()
    total, disagreements = 0, []
    for nf in enumerate_normal_forms(6):
        bq = from_normal_form(nf)
        total += 1
        band_bound = 2 * len(string_graph(bq).nodes)
        if has_band(bq) != bool(enumerate_bands(bq, band_bound, limit=1)):
            disagreements.append(("band", nf))
        hom_bound = 2 * len(homotopy_letters(bq))
        if has_homotopy_band(bq) != bool(enumerate_homotopy_bands(bq, hom_bound, limit=1)):
            disagreements.append(("homotopy band", nf))
    ok = total == 8557 and not disagreements
    report(8, ok, time.perf_counter() - start, 300, f"{total} algebras, disagreements={disagreements[:3]}")


def test_criterion_9_worked_decisions():
    e3, kr = catalog.e3(), catalog.kronecker()
    checks = [
        ("rep(E3) = Finite with 4 indecomposables", lambda: representation_type(e3),
         lambda r: r.kind is RepType.FINITE and r.indecomposables == 4),
        ("rep(Kronecker) = Infinite", lambda: representation_type(kr), lambda r: r.kind is RepType.INFINITE),
        ("derived(E3) = Discrete", lambda: derived_type(e3), lambda d: d is DerivedType.DISCRETE),
        ("derived(Kronecker) = NotDiscrete", lambda: derived_type(kr), lambda d: d is DerivedType.NOT_DISCRETE),
    ]
    worst, failed = 0.0, []
    for label, fn, pred in checks:
        seconds, out = best_of(fn)
        worst = max(worst, seconds)
        if not pred(out):
            failed.append(label)
    report(9, not failed, worst, 1e-3, f"4 attainable decisions, failed={failed}")


@pytest.mark.xfail(strict=True, reason="E1 carries the homotopy band (b.c)(d)^-1, so it is not derived-discrete")
def test_criterion_9_e1_derived_discrete():
    e1 = catalog.e1()
    seconds, out = best_of(lambda: derived_type(e1))
    report(9, out is DerivedType.DISCRETE, seconds, 1e-3, f"derived(E1) = {out.value}, expected Discrete")


@functools.lru_cache(maxsize=None)
def surface_run():
    """Surface checks over seeds 1..100: (problems, algebras with an infinite polygon, seconds)."""
    start = time.perf_counter()
    problems, infinite_seen = [], 0
    for seed in range(1, 101):
        bq = generate(GenConfig(seed))
        pc = dissection_of(to_normal_form(bq))
        base = algebra_of(pc)
        if isomorphic(algebra_of(bd_dissection(pc)), bd(base)) is None:
            problems.append((seed, "bd"))
        if isomorphic(algebra_of(cma_dissection(pc)), cma(base)) is None:
            problems.append((seed, "cma"))
        inv = surface_invariants(pc)
        if inv.vertices - inv.edges + inv.faces != len(pc.polygons) - len(pc.glue):
            problems.append((seed, "chi"))
        has_inf = bool(blue_elementary_polygons(pc).infinite)
        if has_inf != bool(forbidden_cycles(bq)):
            problems.append((seed, "infinite polygon"))
        infinite_seen += has_inf
    return problems, infinite_seen, time.perf_counter() - start


def test_criterion_10_surface_commutation():
    problems, _, seconds = surface_run()
    found = [p for p in problems if p[1] != "infinite polygon"]
    report(10, not found, seconds, 60, f"100 seeds, problems={found[:5]}")


def test_criterion_11_infinite_polygon():
    problems, infinite_seen, seconds = surface_run()
    found = [p for p in problems if p[1] == "infinite polygon"]
    # both outcomes must occur for the equivalence to be exercised
    ok = not found and 0 < infinite_seen < 100
    report(11, ok, seconds, 60, f"100 seeds, {infinite_seen} with an infinite polygon, problems={found[:5]}")
