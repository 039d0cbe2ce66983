from __future__ import annotations

from itertools import product

import pytest
from hypothesis import given, settings, strategies as hs

from paintability.enumeration import connected_graphs_up_to
from paintability.game import (
    COST,
    SURVIVES,
    UNBOUNDED,
    ExactRounds,
    Verdict,
    apply_round,
    f_double_prime,
    initial_state,
    lister_move_error,
    painter_response_error,
    uniform,
)
from paintability.graph import (
    make_complete,
    make_cycle,
    make_dumbbell,
    make_K2n,
    make_path,
    make_tadpole,
    make_theta,
)
from paintability.solver import (
    GraphTooLargeError,
    MemoCapacityError,
    Solver,
    compute_M,
    compute_m,
    compute_q,
    is_f_paintable,
    losing_round_counts,
    solve,
)
from paintability.verify import reference_value

from helpers import connected_graphs


def two(g):
    return uniform(g, 2)


@pytest.mark.parametrize("n", [3, 5, 7])
def test_odd_cycles(n):
    c = make_cycle(n)
    assert losing_round_counts(c, two(c)) == list(range(2, n + 1))


def test_known_values():
    k = make_K2n(4)
    assert (compute_m(k, two(k)), compute_M(k, two(k)), compute_q(k, two(k))) == (4, 7, 5)
    d = make_dumbbell(4, 1, 4)
    assert (compute_m(d, two(d)), compute_M(d, two(d)), compute_q(d, two(d))) == (3, 9, 5)
    t = make_theta(3, 3, 1)
    assert (compute_m(t, two(t)), compute_M(t, two(t)), compute_q(t, two(t))) == (3, 8, 4)
    assert compute_q(make_cycle(3), (2, 2, 2)) == 3
    assert compute_M(make_tadpole(2, 5), (2,) * 6) == 7


def test_path_budgets():
    p2, p3 = make_path(2), make_path(3)
    assert solve(p2, f_double_prime(p2), UNBOUNDED) is Verdict.LISTER_WINS
    assert compute_q(p3, f_double_prime(p3)) == 2


def test_paintable_instances():
    c4 = make_cycle(4)
    assert is_f_paintable(c4, two(c4))
    assert compute_q(c4, two(c4)) is SURVIVES
    assert compute_m(c4, two(c4)) is None and compute_M(c4, two(c4)) is None
    assert solve(c4, two(c4), ExactRounds(20)) is Verdict.PAINTER_WINS  # no legal schedule


@pytest.mark.parametrize("g", [make_cycle(5), make_K2n(4), make_complete(4), make_theta(2, 2, 3)])
def test_all_singletons_round_count_is_safe(g):
    assert solve(g, two(g), ExactRounds(2 * g.n)) is Verdict.PAINTER_WINS


def test_caps():
    with pytest.raises(GraphTooLargeError):
        Solver(make_cycle(11), (2,) * 11)
    Solver(make_cycle(11), (2,) * 11, max_n=11)
    s = Solver(make_cycle(7), (2,) * 7, memo_capacity=5)
    with pytest.raises(MemoCapacityError):
        s.solve(ExactRounds(8))


def test_best_moves_are_legal_and_deterministic():
    c = make_cycle(4)
    s = Solver(c, two(c))
    st = initial_state(c, two(c), ExactRounds(2))
    assert s.best_lister_move(st, ExactRounds(2)) == c.full
    x = s.best_painter_response(st, c.full, ExactRounds(2))
    assert x == 0b0101 and painter_response_error(c, st, c.full, x) is None
    p = make_path(2)
    sp = Solver(p, (1, 1))
    assert sp.best_lister_move(initial_state(p, (1, 1), UNBOUNDED), UNBOUNDED) == 0b11


def test_reference_search_agrees_on_small_graphs():
    for g in connected_graphs_up_to(3):
        for h in product((1, 2), repeat=g.n):
            s = Solver(g, h)
            for v in [UNBOUNDED, COST] + [ExactRounds(t) for t in range(max(h), sum(h) + 1)]:
                assert s.solve(v) == reference_value(g, h, v), (g, h, v)


@settings(max_examples=40)
@given(connected_graphs(max_n=5, min_n=2), hs.data())
def test_identity_M_equals_budget_minus_q(g, data):
    f = tuple(data.draw(hs.lists(hs.integers(1, 2), min_size=g.n, max_size=g.n)))
    s = Solver(g, f)
    q = compute_q(g, f, s)
    big_m = compute_M(g, f, s)
    if q is SURVIVES:
        assert big_m is None
    else:
        assert big_m == sum(f) - q


@settings(max_examples=40)
@given(connected_graphs(max_n=5, min_n=2), hs.data())
def test_maximal_restriction_is_sound(g, data):
    f = tuple(data.draw(hs.lists(hs.integers(1, 3), min_size=g.n, max_size=g.n)))
    a, b = Solver(g, f), Solver(g, f, maximal=False)
    for v in [UNBOUNDED, COST] + [ExactRounds(t) for t in range(max(f), sum(f) + 1)]:
        assert a.solve(v) == b.solve(v)


@settings(max_examples=25)
@given(connected_graphs(max_n=5, min_n=2))
def test_optimal_moves_preserve_value(g):
    f = two(g)
    s = Solver(g, f)
    for t in range(2, sum(f) + 1):
        v = ExactRounds(t)
        st = initial_state(g, f, v)
        value = s.value(st, v)
        marked = s.best_lister_move(st, v)
        assert lister_move_error(g, st, marked, v) is None
        x = s.best_painter_response(st, marked, v)
        after = apply_round(g, st, marked, x, v)
        nxt = s.value(after, v)
        # the value after both optimal moves equals the root value
        assert nxt == value
