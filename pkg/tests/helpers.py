from __future__ import annotations

from hypothesis import strategies as hs

from paintability.graph import Graph


@hs.composite
def graphs(draw, max_n=9, min_n=1):
    n = draw(hs.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    edges = draw(hs.lists(hs.sampled_from(pairs), unique=True)) if pairs else []
    return Graph.from_edges(n, edges)


@hs.composite
def connected_graphs(draw, max_n=6, min_n=1):
    g = draw(graphs(max_n=max_n, min_n=min_n))
    # attach each component to vertex 0 to force connectivity
    edges = g.edges()
    for comp in g.components()[1:]:
        v = (comp & -comp).bit_length() - 1
        edges.append((0, v))
    return Graph.from_edges(g.n, edges)


ACCEPTANCE_LINES: list[str] = []
