from __future__ import annotations

from itertools import product

import pytest
from hypothesis import given, settings

from paintability.classifiers import (
    ClassifierError,
    M_extremes_classifier,
    cross_validate,
    family_of,
    has_c3_f1,
    has_p2_f2,
    has_p3_f2,
    has_p4_f2,
    interval_scan,
    is_2_paintable_structural,
    m_classifier,
    q_small_classifier,
)
from paintability.game import UNBOUNDED, Verdict, uniform
from paintability.graph import (
    Graph,
    disjoint_union,
    make_complete,
    make_cycle,
    make_dumbbell,
    make_K2n,
    make_path,
    make_tadpole,
    make_theta,
)
from paintability.solver import Solver, compute_M, compute_m, compute_q

from helpers import connected_graphs


def with_pendant(g: Graph, at: int = 0) -> Graph:
    return Graph.from_edges(g.n + 1, g.edges() + [(at, g.n)])


def test_two_paintable_structure():
    assert is_2_paintable_structural(make_path(6))
    assert is_2_paintable_structural(with_pendant(make_cycle(6)))
    assert is_2_paintable_structural(make_K2n(3))
    assert not is_2_paintable_structural(make_cycle(5))
    with pytest.raises(ClassifierError):
        is_2_paintable_structural(disjoint_union(make_path(2), make_path(2)))


def test_m_classifier_examples():
    assert m_classifier(make_cycle(9)).value == 2
    assert m_classifier(make_theta(2, 2, 4)).value == 3
    assert m_classifier(with_pendant(make_K2n(5), 2)).value == 4
    with pytest.raises(ClassifierError):
        m_classifier(make_cycle(4))


def test_M_extremes_examples():
    assert M_extremes_classifier(make_cycle(7)).value == 7
    k4 = M_extremes_classifier(make_complete(4))
    assert k4.value == 5 and set(k4.clauses) == {"triangle", "4-vertex-triangle"}
    assert M_extremes_classifier(make_tadpole(2, 5)).value == 7
    assert M_extremes_classifier(make_K2n(4)).value == 7
    assert not M_extremes_classifier(make_theta(2, 2, 4)).fired


@settings(max_examples=30)
@given(connected_graphs(max_n=6, min_n=3))
def test_classifiers_agree_with_solver(g):
    if is_2_paintable_structural(g):
        assert Solver(g, uniform(g, 2)).solve(UNBOUNDED) is Verdict.PAINTER_WINS
        return
    s = Solver(g, uniform(g, 2))
    assert m_classifier(g).value == compute_m(g, s.f, s)
    big_m = compute_M(g, s.f, s)
    assert g.n <= big_m <= 2 * g.n - 3
    ext = M_extremes_classifier(g)
    if ext.fired:
        assert big_m == ext.value
    assert big_m == 2 * g.n - compute_q(g, s.f, s)


def test_local_configurations():
    p = make_path(4)
    assert has_p2_f2(make_path(2), (1, 1))
    assert has_p3_f2(make_path(3), (1, 2, 1))
    assert not has_p3_f2(make_cycle(3), (1, 2, 1))
    assert has_p4_f2(p, (1, 2, 2, 1))
    assert not has_p4_f2(make_cycle(4), (1, 2, 2, 1))
    assert has_c3_f1(make_cycle(3), (2, 1, 2))
    assert not has_c3_f1(make_cycle(3), (1, 1, 2))


def test_q_small_values_match_solver_on_small_graphs():
    for g in (make_path(3), make_path(4), make_cycle(3), make_cycle(4), make_tadpole(2, 3)):
        for h in product((1, 2), repeat=g.n):
            c = q_small_classifier(g, h)
            q = compute_q(g, h)
            assert (q == 1) == (c == 1) and (q == 2) == (c == 2)


def test_cross_validate_small():
    for suite in ("m", "M-bounds", "M-extremes", "zhu", "qgame"):
        rep = cross_validate(suite, 5)
        assert rep.ok, rep.summary()
    assert "total" in rep.summary()
    assert rep.json_lines().count("\n") == len(rep.records)
    with pytest.raises(ValueError):
        cross_validate("nope", 4)
    with pytest.raises(ValueError):
        cross_validate("m", 8)


def test_interval_scan():
    rep = interval_scan(5)
    [c5] = rep.rows_for(make_cycle(5))
    assert c5.losing == (2, 3, 4, 5) and c5.contiguous
    [c4] = rep.rows_for(make_cycle(4))
    assert c4.paintable and c4.status == "paintable at every feasible t"
    assert not rep.counterexamples
    with pytest.raises(ValueError):
        interval_scan(6, ("uniform:2", "fprime:*"))


def test_interval_scan_k24():
    rep = interval_scan(6, family="k2n")
    [row] = rep.rows_for(make_K2n(4))
    assert min(row.losing) == 4 and max(row.losing) == 7


def test_family_of():
    assert "theta" in family_of(make_theta(2, 2, 4))
    assert "k2n" in family_of(make_K2n(4)) and "theta" in family_of(make_K2n(3))
    assert "dumbbell" in family_of(make_dumbbell(3, 1, 3))
    assert "tadpole" in family_of(make_tadpole(3, 5))
    assert {"path", "tree"} <= family_of(make_path(5))
    assert family_of(make_complete(4)) == {"complete"}
