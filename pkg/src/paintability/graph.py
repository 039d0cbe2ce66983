"""Small undirected graphs stored as per-vertex neighbour bitmasks.

Vertex sets are plain ``int`` bitmasks throughout the package: bit ``v`` is
set when vertex ``v`` belongs to the set.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

MAX_VERTICES = 30


class GraphError(ValueError):
    """Raised for malformed graph input or out-of-range family parameters."""


def bits(mask: int) -> Iterator[int]:
    """Yield the members of a vertex set in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def popcount(mask: int) -> int:
    return bin(mask).count("1")


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices ``0..n-1``."""

    n: int
    adj: tuple[int, ...]

    def __post_init__(self) -> None:
        if not 1 <= self.n <= MAX_VERTICES:
            raise GraphError(f"vertex count {self.n} outside 1..{MAX_VERTICES}")
        if len(self.adj) != self.n:
            raise GraphError("adjacency length does not match n")
        full = (1 << self.n) - 1
        for v, nb in enumerate(self.adj):
            if nb & ~full:
                raise GraphError(f"vertex {v} has neighbours outside 0..{self.n - 1}")
            if nb >> v & 1:
                raise GraphError(f"self-loop at {v}")
            for u in bits(nb):
                if not self.adj[u] >> v & 1:
                    raise GraphError(f"asymmetric adjacency between {u} and {v}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        adj = [0] * n
        for u, v in edges:
            if u == v:
                raise GraphError(f"self-loop at {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) outside 0..{n - 1}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, tuple(adj))

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in bits(self.adj[u]) if u < v]

    @property
    def num_edges(self) -> int:
        return sum(popcount(a) for a in self.adj) // 2

    def degree(self, v: int, within: int | None = None) -> int:
        nb = self.adj[v] if within is None else self.adj[v] & within
        return popcount(nb)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbourhood(self, mask: int) -> int:
        out = 0
        for v in bits(mask):
            out |= self.adj[v]
        return out

    def is_independent(self, mask: int) -> bool:
        return all(not (self.adj[v] & mask) for v in bits(mask))

    def induced(self, mask: int) -> Graph:
        """Induced subgraph on ``mask``, relabelled in increasing vertex order."""
        verts = list(bits(mask))
        index = {v: i for i, v in enumerate(verts)}
        adj = []
        for v in verts:
            adj.append(mask_of(index[u] for u in bits(self.adj[v] & mask)))
        return Graph(len(verts), tuple(adj))

    def relabel(self, perm: Sequence[int]) -> Graph:
        """Graph with vertex ``v`` renamed ``perm[v]``."""
        return Graph.from_edges(self.n, ((perm[u], perm[v]) for u, v in self.edges()))

    def components(self, within: int | None = None) -> list[int]:
        todo = self.full if within is None else within
        comps = []
        while todo:
            seed = todo & -todo
            comp = seed
            frontier = seed
            while frontier:
                frontier = self.neighbourhood(frontier) & todo & ~comp
                comp |= frontier
            comps.append(comp)
            todo &= ~comp
        return comps

    def is_connected(self) -> bool:
        return len(self.components()) == 1

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges()})"


def disjoint_union(a: Graph, b: Graph) -> Graph:
    shift = a.n
    edges = a.edges() + [(u + shift, v + shift) for u, v in b.edges()]
    return Graph.from_edges(a.n + b.n, edges)


# ---------------------------------------------------------------------------
# Ingestion
# ---------------------------------------------------------------------------


def from_edge_list(text: str) -> Graph:
    """Parse ``u v`` lines; an optional first line holding one integer fixes n.

    Blank lines and ``#`` comments are ignored.  Duplicate edges collapse.
    """
    lines = [ln.split("#", 1)[0].strip() for ln in text.replace("\r\n", "\n").split("\n")]
    lines = [ln for ln in lines if ln]
    declared: int | None = None
    edges: list[tuple[int, int]] = []
    for lineno, line in enumerate(lines, 1):
        parts = line.split()
        try:
            nums = [int(p) for p in parts]
        except ValueError:
            raise GraphError(f"line {lineno}: malformed line {line!r}") from None
        if lineno == 1 and len(nums) == 1:
            declared = nums[0]
            continue
        if len(nums) != 2:
            raise GraphError(f"line {lineno}: expected 'u v', got {line!r}")
        u, v = nums
        if u < 0 or v < 0:
            raise GraphError(f"line {lineno}: negative vertex id")
        if u == v:
            raise GraphError(f"line {lineno}: self-loop at {u}")
        if max(u, v) >= MAX_VERTICES:
            raise GraphError(f"line {lineno}: vertex id {max(u, v)} >= {MAX_VERTICES}")
        edges.append((u, v))
    n = max((max(e) for e in edges), default=-1) + 1
    if declared is not None:
        if declared < n:
            raise GraphError(f"header declares {declared} vertices but edges use {n}")
        n = declared
    if n == 0:
        raise GraphError("empty graph")
    return Graph.from_edges(n, edges)


def to_edge_list(g: Graph) -> str:
    return "\n".join([str(g.n)] + [f"{u} {v}" for u, v in g.edges()]) + "\n"


def to_graph6(g: Graph) -> str:
    # n <= 30 always fits the one-byte size prefix
    out = [chr(g.n + 63)]
    acc = 0
    nbits = 0
    for j in range(1, g.n):
        for i in range(j):
            acc = acc << 1 | (g.adj[i] >> j & 1)
            nbits += 1
            if nbits == 6:
                out.append(chr(acc + 63))
                acc = nbits = 0
    if nbits:
        out.append(chr((acc << (6 - nbits)) + 63))
    return "".join(out)


def from_graph6(s: str) -> Graph:
    s = s.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    if not s:
        raise GraphError("empty graph6 string")
    for ch in s:
        if not 63 <= ord(ch) <= 126:
            raise GraphError(f"invalid graph6 character {ch!r}")
    if s[0] == "~":
        raise GraphError(f"graph6 long form not supported (n > {MAX_VERTICES})")
    n = ord(s[0]) - 63
    if n == 0:
        raise GraphError("graph6 string declares 0 vertices")
    if n > MAX_VERTICES:
        raise GraphError(f"graph6 string declares {n} > {MAX_VERTICES} vertices")
    need = (n * (n - 1) // 2 + 5) // 6
    body = s[1:]
    if len(body) != need:
        raise GraphError(f"graph6 length mismatch: n={n} needs {need} data bytes, got {len(body)}")
    stream = []
    for ch in body:
        val = ord(ch) - 63
        stream.extend((val >> k) & 1 for k in range(5, -1, -1))
    edges = []
    pos = 0
    for j in range(1, n):
        for i in range(j):
            if stream[pos]:
                edges.append((i, j))
            pos += 1
    if any(stream[pos:]):
        raise GraphError("graph6 padding bits are not zero")
    return Graph.from_edges(n, edges)


# ---------------------------------------------------------------------------
# Named families
# ---------------------------------------------------------------------------


def make_path(n: int) -> Graph:
    """P_n with vertices 0..n-1 in path order."""
    if n < 1:
        raise GraphError("path needs n >= 1")
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))


def make_cycle(n: int) -> Graph:
    """C_n with vertices 0..n-1 in cyclic order."""
    if n < 3:
        raise GraphError("cycle needs n >= 3")
    return Graph.from_edges(n, ((i, (i + 1) % n) for i in range(n)))


def make_complete(n: int) -> Graph:
    return Graph.from_edges(n, ((i, j) for j in range(n) for i in range(j)))


def make_K2n(n: int) -> Graph:
    """K_{2,n}: hubs 0 and 1, the other side is 2..n+1."""
    if n < 1:
        raise GraphError("K_{2,n} needs n >= 1")
    return Graph.from_edges(n + 2, ((h, x) for h in (0, 1) for x in range(2, n + 2)))


def theta_paths(p: int, q: int, r: int) -> list[list[int]]:
    """The three hub-to-hub paths of ``make_theta(p, q, r)`` as vertex lists.

    Hubs are 0 and 1.  Interior vertices are numbered consecutively, first
    the p-path, then the q-path, then the r-path.
    """
    paths = []
    nxt = 2
    for length in (p, q, r):
        interior = list(range(nxt, nxt + length - 1))
        nxt += length - 1
        paths.append([0] + interior + [1])
    return paths


def make_theta(p: int, q: int, r: int) -> Graph:
    """Two hubs joined by internally disjoint paths with p, q and r edges.

    The parameters may come in any order; at most one may equal 1.
    """
    lengths = sorted((p, q, r))
    if lengths[0] < 1 or lengths[1] < 2:
        raise GraphError(f"theta({p},{q},{r}) needs all lengths >= 1 and at most one equal to 1")
    n = p + q + r - 1
    if n > MAX_VERTICES:
        raise GraphError(f"theta({p},{q},{r}) has {n} > {MAX_VERTICES} vertices")
    edges = []
    for path in theta_paths(p, q, r):
        edges.extend(zip(path, path[1:]))
    return Graph.from_edges(n, edges)


def dumbbell_parts(m: int, k: int, n: int) -> tuple[list[int], list[int], list[int]]:
    """Vertex lists (first cycle, connecting path, second cycle) of a dumbbell.

    The first cycle is 0..m-1 in cyclic order and its last vertex starts the
    path.  The path lists its k vertices from the first cycle to the second.
    The second cycle is listed so that its last entry is the path's far end.
    """
    cyc1 = list(range(m))
    path = [m - 1] + list(range(m, m + k - 1))
    start = m + k - 1
    cyc2 = list(range(start, start + n - 1)) + [path[-1]]
    return cyc1, path, cyc2


def make_dumbbell(m: int, k: int, n: int) -> Graph:
    """C_m and C_n joined by a path on k vertices (k = 1: one shared vertex)."""
    if m < 3 or n < 3 or k < 1:
        raise GraphError(f"dumbbell({m},{k},{n}) needs m, n >= 3 and k >= 1")
    total = m + n + k - 2
    if total > MAX_VERTICES:
        raise GraphError(f"dumbbell({m},{k},{n}) has {total} > {MAX_VERTICES} vertices")
    cyc1, path, cyc2 = dumbbell_parts(m, k, n)
    edges = list(zip(cyc1, cyc1[1:] + cyc1[:1]))
    edges += list(zip(path, path[1:]))
    edges += list(zip(cyc2, cyc2[1:] + cyc2[:1]))
    return Graph.from_edges(total, edges)


def tadpole_parts(m: int, n: int) -> tuple[list[int], list[int]]:
    """(cycle v_1..v_n, pendant path x_1..x_m) of ``make_tadpole(m, n)``; v_n is x_1."""
    cyc = list(range(n))
    path = [n - 1] + list(range(n, n + m - 1))
    return cyc, path


def make_tadpole(m: int, n: int) -> Graph:
    """Cycle C_n with a pendant path on m vertices sharing the cycle vertex n-1.

    ``make_tadpole(1, n)`` is just C_n.
    """
    if m < 1 or n < 3:
        raise GraphError(f"tadpole({m},{n}) needs m >= 1 and n >= 3")
    total = m + n - 1
    if total > MAX_VERTICES:
        raise GraphError(f"tadpole({m},{n}) has {total} > {MAX_VERTICES} vertices")
    cyc, path = tadpole_parts(m, n)
    edges = list(zip(cyc, cyc[1:] + cyc[:1])) + list(zip(path, path[1:]))
    return Graph.from_edges(total, edges)


# ---------------------------------------------------------------------------
# Structure
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CoreResult:
    core_vertices: int
    core_graph: Graph


def core(g: Graph) -> CoreResult:
    """Iteratively strip degree-1 vertices.

    A graph that would erode completely (a tree) keeps its lowest-labelled
    surviving vertex, so the core of a tree is K_1.
    """
    alive = g.full
    while True:
        leaves = mask_of(v for v in bits(alive) if g.degree(v, alive) == 1)
        if not leaves:
            break
        if leaves == alive:
            alive &= -alive
            break
        alive &= ~leaves
    return CoreResult(alive, g.induced(alive))


def bipartition(g: Graph) -> tuple[int, int] | None:
    """Partite sets (A, B) with the lowest vertex of every component in A, or None."""
    colour = [-1] * g.n
    for start in range(g.n):
        if colour[start] >= 0:
            continue
        colour[start] = 0
        queue = [start]
        for v in queue:
            for u in bits(g.adj[v]):
                if colour[u] < 0:
                    colour[u] = 1 - colour[v]
                    queue.append(u)
                elif colour[u] == colour[v]:
                    return None
    side_a = mask_of(v for v in range(g.n) if colour[v] == 0)
    return side_a, g.full & ~side_a


def is_bipartite(g: Graph) -> bool:
    return bipartition(g) is not None


def contains_triangle(g: Graph) -> bool:
    return any(g.adj[u] & g.adj[v] for u, v in g.edges())


def is_cycle(g: Graph) -> bool:
    return g.n >= 3 and all(g.degree(v) == 2 for v in range(g.n)) and g.is_connected()


def is_odd_cycle(g: Graph) -> bool:
    return is_cycle(g) and g.n % 2 == 1


def is_path(g: Graph) -> bool:
    if g.n == 1:
        return True
    degs = sorted(g.degree(v) for v in range(g.n))
    return g.is_connected() and degs.count(1) == 2 and degs[-1] <= 2


def is_tree(g: Graph) -> bool:
    return g.is_connected() and g.num_edges == g.n - 1


def _require_connected(g: Graph) -> None:
    if not g.is_connected():
        raise GraphError("graph must be connected")


def is_K2n(g: Graph) -> int | None:
    """Return n when ``g`` is isomorphic to K_{2,n} with n >= 1, else None."""
    if g.n < 3 or g.num_edges != 2 * (g.n - 2):
        return None
    for a in range(g.n):
        for b in range(a + 1, g.n):
            rest = g.full & ~(1 << a) & ~(1 << b)
            if g.adj[a] == rest and g.adj[b] == rest:
                return g.n - 2
    return None


def core_is_K2n(g: Graph) -> int | None:
    _require_connected(g)
    return is_K2n(core(g).core_graph)


def core_is_odd_cycle(g: Graph) -> int | None:
    _require_connected(g)
    h = core(g).core_graph
    return h.n if is_odd_cycle(h) else None


def core_is_even_cycle(g: Graph) -> int | None:
    _require_connected(g)
    h = core(g).core_graph
    return h.n if is_cycle(h) and h.n % 2 == 0 else None
