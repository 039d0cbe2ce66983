"""Canonical labelling and isomorph-free enumeration of small graphs."""

from __future__ import annotations

from functools import lru_cache
from itertools import permutations, product
from typing import Iterator

from .graph import Graph, GraphError, bits, to_graph6

MAX_ENUMERATION_N = 7
MAX_CANONICAL_N = 10


def _refined_colours(g: Graph) -> list[int]:
    """Stable colour refinement seeded by degree.  Colours are isomorphism invariant."""
    colour = [g.degree(v) for v in range(g.n)]
    while True:
        sigs = [
            (colour[v], tuple(sorted(colour[u] for u in bits(g.adj[v]))))
            for v in range(g.n)
        ]
        ranking = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [ranking[s] for s in sigs]
        if len(set(new)) == len(set(colour)):
            return new
        colour = new


def _code(g: Graph, order: tuple[int, ...]) -> int:
    code = 0
    for j in range(1, g.n):
        row = g.adj[order[j]]
        for i in range(j):
            code = code << 1 | (row >> order[i] & 1)
    return code


def canonical_order(g: Graph) -> tuple[int, ...]:
    """Vertex order minimising the adjacency bit string among colour-respecting orders.

    Position i of the result holds the old vertex that becomes vertex i.
    """
    if g.n > MAX_CANONICAL_N:
        raise GraphError(f"canonical form limited to n <= {MAX_CANONICAL_N}")
    colour = _refined_colours(g)
    cells = [[v for v in range(g.n) if colour[v] == c] for c in sorted(set(colour))]
    best_code = None
    best_order: tuple[int, ...] = ()
    for parts in product(*(permutations(cell) for cell in cells)):
        order = tuple(v for part in parts for v in part)
        code = _code(g, order)
        if best_code is None or code < best_code:
            best_code, best_order = code, order
    return best_order


def canonical_graph(g: Graph) -> Graph:
    order = canonical_order(g)
    perm = [0] * g.n
    for new, old in enumerate(order):
        perm[old] = new
    return g.relabel(perm)


def canonical_form(g: Graph) -> bytes:
    """Relabelling-invariant byte string; equal exactly for isomorphic graphs."""
    return to_graph6(canonical_graph(g)).encode("ascii")


def are_isomorphic(a: Graph, b: Graph) -> bool:
    return a.n == b.n and a.num_edges == b.num_edges and canonical_form(a) == canonical_form(b)


@lru_cache(maxsize=None)
def all_graphs(n: int) -> tuple[Graph, ...]:
    """One canonical representative of every isomorphism class on n vertices."""
    if not 1 <= n <= MAX_ENUMERATION_N:
        raise GraphError(f"enumeration limited to 1 <= n <= {MAX_ENUMERATION_N}")
    if n == 1:
        return (Graph(1, (0,)),)
    seen: dict[bytes, Graph] = {}
    for base in all_graphs(n - 1):
        for nbrs in range(1 << (n - 1)):
            adj = list(base.adj) + [nbrs]
            for u in bits(nbrs):
                adj[u] |= 1 << (n - 1)
            g = Graph(n, tuple(adj))
            key = canonical_form(g)
            if key not in seen:
                seen[key] = canonical_graph(g)
    return tuple(seen[k] for k in sorted(seen))


def enumerate_connected_graphs(n: int) -> Iterator[Graph]:
    """Yield one representative per isomorphism class of connected n-vertex graphs."""
    for g in all_graphs(n):
        if g.is_connected():
            yield g


def connected_graphs_up_to(n_max: int) -> Iterator[Graph]:
    for n in range(1, n_max + 1):
        yield from enumerate_connected_graphs(n)


@lru_cache(maxsize=None)
def enumerate_trees(n: int) -> tuple[Graph, ...]:
    """Non-isomorphic trees on n vertices, grown one leaf at a time."""
    if not 1 <= n <= MAX_CANONICAL_N:
        raise GraphError(f"tree enumeration limited to 1 <= n <= {MAX_CANONICAL_N}")
    if n == 1:
        return (Graph(1, (0,)),)
    seen: dict[bytes, Graph] = {}
    for base in enumerate_trees(n - 1):
        for u in range(n - 1):
            adj = list(base.adj) + [1 << u]
            adj[u] |= 1 << (n - 1)
            g = Graph(n, tuple(adj))
            key = canonical_form(g)
            if key not in seen:
                seen[key] = canonical_graph(g)
    return tuple(seen[k] for k in sorted(seen))
