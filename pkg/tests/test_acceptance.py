"""Acceptance criteria, one test each; every test prints a PASS/FAIL line."""

from __future__ import annotations

import time
from itertools import product

import pytest

from paintability.classifiers import (
    M_extremes_classifier,
    interval_scan,
    is_2_paintable_structural,
    m_classifier,
    q_small_classifier,
)
from paintability.enumeration import connected_graphs_up_to, enumerate_connected_graphs, enumerate_trees
from paintability.game import (
    COST,
    SURVIVES,
    UNBOUNDED,
    ExactRounds,
    Verdict,
    f_double_prime,
    f_prime,
    uniform,
)
from paintability.graph import contains_triangle, is_odd_cycle, make_cycle, make_K2n, make_path, make_tadpole
from paintability.referee import OPTIMAL, referee
from paintability.solver import Solver, compute_M, compute_m, compute_q, feasible_round_counts
from paintability.strategies import (
    k24_lister,
    k2n_painter,
    kernel_painter,
    path_lister_bound,
    path_splitting_lister,
)

from helpers import ACCEPTANCE_LINES


def report(number: int, title: str, ok: bool, detail: str, seconds: float) -> None:
    line = f"criterion {number:>2} {'PASS' if ok else 'FAIL'}  {title}: {detail} ({seconds:.1f}s)"
    ACCEPTANCE_LINES.append(line)
    print(line)


@pytest.fixture(scope="module")
def universe():
    """m, M and q with f = 2 for every connected non-2-paintable graph on at most 6 vertices."""
    start = time.perf_counter()
    rows = []
    for g in connected_graphs_up_to(6):
        if is_2_paintable_structural(g):
            continue
        s = Solver(g, uniform(g, 2))
        rows.append((g, compute_m(g, s.f, s), compute_M(g, s.f, s), compute_q(g, s.f, s)))
    return rows, time.perf_counter() - start


def test_criterion_01_odd_cycle_round_counts():
    start = time.perf_counter()
    bad = []
    for n in (3, 5, 7):
        g = make_cycle(n)
        s = Solver(g, uniform(g, 2))
        for t in range(2, 2 * n + 1):
            want = Verdict.LISTER_WINS if t <= n else Verdict.PAINTER_WINS
            if s.solve(ExactRounds(t)) is not want:
                bad.append((n, t))
    secs = time.perf_counter() - start
    ok = not bad and secs < 60
    report(1, "odd cycles C_3, C_5, C_7", ok, f"{len(bad)} wrong verdicts", secs)
    assert ok, bad


def test_criterion_02_k24_landmark():
    start = time.perf_counter()
    g = make_K2n(4)
    s = Solver(g, uniform(g, 2))
    m, big_m = compute_m(g, s.f, s), compute_M(g, s.f, s)
    secs = time.perf_counter() - start
    ok = (m, big_m) == (4, 7) and secs < 60
    report(2, "K_{2,4} landmark", ok, f"m={m} M={big_m}", secs)
    assert ok


def test_criterion_03_qgame_identity(universe):
    rows, build = universe
    start = time.perf_counter()
    small = 0
    for g in connected_graphs_up_to(5):
        if not is_2_paintable_structural(g):
            s = Solver(g, uniform(g, 2))
            assert compute_M(g, s.f, s) == 2 * g.n - compute_q(g, s.f, s)
            small += 1
    small_secs = time.perf_counter() - start
    bad = [g for g, _, big_m, q in rows if q is SURVIVES or big_m != 2 * g.n - q]
    ok = not bad and small_secs < 120 and build < 1800
    report(3, "M = 2n - q", ok, f"{len(rows)} graphs n<=6, {len(bad)} mismatches; n<=5 subset {small_secs:.1f}s", build)
    assert ok


def test_criterion_04_small_q_values():
    start = time.perf_counter()
    count, bad = 0, []
    for g in connected_graphs_up_to(5):
        for h in product((1, 2), repeat=g.n):
            q = compute_q(g, h)
            c = q_small_classifier(g, h)
            ok = (q is SURVIVES or q >= 1) and (q == 1) == (c == 1) and (q == 2) == (c == 2)
            if all(k == 2 for k in h):
                ok = ok and (q == 3) == contains_triangle(g)
            count += 1
            if not ok:
                bad.append((g, h))
    secs = time.perf_counter() - start
    ok = not bad and secs < 900
    report(4, "small q values (q = 0..3)", ok, f"{count} (G,h) pairs, {len(bad)} mismatches", secs)
    assert ok


def test_criterion_05_m_trichotomy(universe):
    rows, build = universe
    start = time.perf_counter()
    bad = [g for g, m, _, _ in rows if m_classifier(g).value != m]
    secs = time.perf_counter() - start
    ok = not bad
    report(5, "m trichotomy", ok, f"{len(rows)} graphs, {len(bad)} mismatches", build + secs)
    assert ok


def test_criterion_06_M_bounds_and_extremes(universe):
    rows, _ = universe
    start = time.perf_counter()
    bad = []
    for g, _, big_m, _ in rows:
        n = g.n
        ext = M_extremes_classifier(g)
        checks = [
            n <= big_m <= 2 * n - 3,
            (big_m == 2 * n - 3) == contains_triangle(g),
            (big_m == n) == is_odd_cycle(g),
            not ext.fired or big_m == ext.value,
            ext.fired or big_m not in (n, n + 1, 2 * n - 3),
        ]
        if not all(checks):
            bad.append(g)
    pendant = make_tadpole(2, 5)
    m_pendant = compute_M(pendant, uniform(pendant, 2))
    secs = time.perf_counter() - start
    ok = not bad and m_pendant == 7
    report(6, "M bounds and extremes", ok, f"{len(bad)} mismatches, M(C_5 + pendant)={m_pendant}", secs)
    assert ok


def test_criterion_07_two_paintable_characterization():
    start = time.perf_counter()
    count, bad = 0, []
    for n in range(1, 8):
        for g in enumerate_connected_graphs(n):
            count += 1
            solver_says = Solver(g, uniform(g, 2)).solve(UNBOUNDED) is Verdict.PAINTER_WINS
            if solver_says != is_2_paintable_structural(g):
                bad.append(g)
    n7 = sum(1 for _ in enumerate_connected_graphs(7))
    secs = time.perf_counter() - start
    ok = not bad and n7 == 853 and secs < 600
    report(7, "2-paintable characterization", ok, f"{count} graphs ({n7} at n=7), {len(bad)} mismatches", secs)
    assert ok


def test_criterion_08_strategies():
    start = time.perf_counter()
    games, losses = 0, []

    def play(label, g, f, variant, lister, painter, want):
        nonlocal games
        games += 1
        tr = referee(g, f, variant, lister, painter, max_n=max(10, g.n))
        if tr.verdict is not want:
            losses.append(label)

    for n in range(2, 9):
        for tree in enumerate_trees(n):
            for u in range(n):
                play(f"tree n={n}", tree, f_prime(tree, u), UNBOUNDED, OPTIMAL, kernel_painter(),
                     Verdict.PAINTER_WINS)
    for n in range(2, 9):
        p = make_path(n)
        for t in range(2, path_lister_bound(n) + 1):
            play(f"P_{n} t={t}", p, f_double_prime(p), ExactRounds(t), path_splitting_lister(), OPTIMAL,
                 Verdict.LISTER_WINS)
    for n in range(4, 10):
        k = make_K2n(n)
        play(f"K_2,{n}", k, uniform(k, 2), ExactRounds(3), OPTIMAL, k2n_painter(), Verdict.PAINTER_WINS)
    k = make_K2n(4)
    play("K_2,4 lister", k, uniform(k, 2), ExactRounds(4), k24_lister(), OPTIMAL, Verdict.LISTER_WINS)
    secs = time.perf_counter() - start
    ok = not losses and secs < 600
    report(8, "strategy validation", ok, f"{games} refereed games, {len(losses)} losses", secs)
    assert ok, losses


def test_criterion_09_dominance():
    start = time.perf_counter()
    count, bad = 0, []
    for g in connected_graphs_up_to(5):
        f = uniform(g, 2)
        a, b = Solver(g, f), Solver(g, f, maximal=False)
        for variant in [UNBOUNDED, COST] + [ExactRounds(t) for t in feasible_round_counts(f)]:
            count += 1
            if a.solve(variant) != b.solve(variant):
                bad.append((g, variant))
    secs = time.perf_counter() - start
    ok = not bad and secs < 600
    report(9, "maximal-response dominance", ok, f"{count} instances, {len(bad)} differences", secs)
    assert ok


def test_criterion_10_interval_scan():
    start = time.perf_counter()
    rep = interval_scan(5)
    [c5] = rep.rows_for(make_cycle(5))
    secs = time.perf_counter() - start
    ok = len(rep.rows) == 31 and all(r.status for r in rep.rows) and c5.losing == (2, 3, 4, 5)
    report(10, "interval scan n<=5", ok,
           f"{len(rep.rows)} instances, {len(rep.counterexamples)} non-contiguous, C_5 row {set(c5.losing)}", secs)
    assert ok
