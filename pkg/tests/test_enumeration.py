from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as hs

from paintability.enumeration import (
    all_graphs,
    are_isomorphic,
    canonical_form,
    enumerate_connected_graphs,
    enumerate_trees,
)
from paintability.graph import GraphError, make_cycle, make_path

from helpers import graphs


@pytest.mark.parametrize("n, count", [(1, 1), (2, 1), (3, 2), (4, 6), (5, 21), (6, 112)])
def test_connected_counts(n, count):
    assert sum(1 for _ in enumerate_connected_graphs(n)) == count


@pytest.mark.parametrize("n, count", [(1, 1), (2, 2), (3, 4), (4, 11), (5, 34), (6, 156)])
def test_all_graph_counts(n, count):
    assert len(all_graphs(n)) == count


def test_trees_counts():
    assert [len(enumerate_trees(n)) for n in range(1, 9)] == [1, 1, 1, 2, 3, 6, 11, 23]


def test_enumeration_cap():
    with pytest.raises(GraphError):
        all_graphs(8)


def test_representatives_pairwise_distinct():
    forms = [canonical_form(g) for g in enumerate_connected_graphs(5)]
    assert len(set(forms)) == len(forms)


def test_isomorphism():
    c = make_cycle(5)
    assert are_isomorphic(c, c.relabel([2, 4, 1, 0, 3]))
    assert not are_isomorphic(make_path(5), c)


@settings(max_examples=40)
@given(graphs(max_n=8), hs.randoms(use_true_random=False))
def test_canonical_form_is_invariant(g, rnd):
    perm = list(range(g.n))
    rnd.shuffle(perm)
    assert canonical_form(g.relabel(perm)) == canonical_form(g)
