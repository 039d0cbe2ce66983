"""Scripted Painter and Lister players built from constructive winning strategies.

Painter strategies are functions of the position.  Lister strategies are
written as generator *plans*: a plan yields a marked set and receives the
position after Painter's answer.  A plan that hands over to a smaller
configuration does so with ``yield from``, and :func:`_embedded` keeps the
exact-rounds bookkeeping (every vertex marked exactly f(v) times, every
round nonempty) away from the plans themselves.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Generator, Sequence

from .game import (
    ExactRounds,
    GameState,
    Variant,
    initial_state,
)
from .graph import (
    Graph,
    bits,
    bipartition,
    dumbbell_parts,
    is_cycle,
    is_K2n,
    is_path,
    is_tree,
    mask_of,
    tadpole_parts,
    theta_paths,
)


class StrategyError(ValueError):
    """A strategy was asked to play outside the instances it is built for."""


class KernelError(StrategyError):
    pass


@dataclass(frozen=True)
class Game:
    graph: Graph
    f: tuple[int, ...]
    variant: Variant

    @property
    def rounds(self) -> int | None:
        return self.variant.t if isinstance(self.variant, ExactRounds) else None


# ---------------------------------------------------------------------------
# Kernels
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Orientation:
    """Arcs ``(u, v)`` meaning u -> v, each over an edge of ``graph``."""

    graph: Graph
    arcs: frozenset[tuple[int, int]]

    def __post_init__(self) -> None:
        for u, v in self.arcs:
            if not self.graph.has_edge(u, v):
                raise ValueError(f"arc {u}->{v} is not an edge")
            if (v, u) in self.arcs:
                raise ValueError(f"edge {u}{v} oriented both ways")

    def in_neighbours(self, v: int, within: int) -> int:
        return mask_of(u for u, w in self.arcs if w == v and within >> u & 1)


def out_tree(g: Graph, root: int, within: int) -> Orientation:
    """Orient the tree spanned by ``within`` away from ``root`` (in-degree 1 except the root)."""
    arcs = []
    seen = 1 << root
    queue = [root]
    for v in queue:
        for u in bits(g.adj[v] & within & ~seen):
            arcs.append((v, u))
            seen |= 1 << u
            queue.append(u)
    return Orientation(g, frozenset(arcs))


def directed_cycle(g: Graph, order: Sequence[int]) -> Orientation:
    return Orientation(g, frozenset(zip(order, list(order[1:]) + [order[0]])))


def _greedy_kernel(orientation: Orientation, marked: int, skip_into: int | None) -> int | None:
    """Topological greedy; arcs into ``skip_into`` are ignored.  None if cyclic."""
    arcs = [(u, v) for u, v in orientation.arcs if marked >> u & 1 and marked >> v & 1 and v != skip_into]
    indeg = {v: 0 for v in bits(marked)}
    for _, v in arcs:
        indeg[v] += 1
    ready = sorted(v for v, d in indeg.items() if d == 0)
    order = []
    while ready:
        v = ready.pop(0)
        order.append(v)
        for a, b in arcs:
            if a == v:
                indeg[b] -= 1
                if indeg[b] == 0:
                    ready.append(b)
        ready.sort()
    if len(order) != len(indeg):
        return None
    kernel = 0
    for v in order:
        preds = mask_of(a for a, b in arcs if b == v)
        if not preds & kernel:
            kernel |= 1 << v
    return kernel


def _is_kernel(orientation: Orientation, marked: int, cand: int) -> bool:
    g = orientation.graph
    if cand & ~marked or not g.is_independent(cand):
        return False
    return all(orientation.in_neighbours(v, cand) for v in bits(marked & ~cand))


def kernel_of(orientation: Orientation, marked: int) -> int:
    """Independent U within ``marked`` such that each other marked vertex has an in-neighbour in U."""
    if marked == 0:
        return 0
    cand = _greedy_kernel(orientation, marked, None)
    if cand is not None and _is_kernel(orientation, marked, cand):
        return cand
    for start in bits(marked):
        cand = _greedy_kernel(orientation, marked, start)
        if cand is not None and _is_kernel(orientation, marked, cand):
            return cand
    raise KernelError(f"no kernel for marked set {sorted(bits(marked))}")


# ---------------------------------------------------------------------------
# Painter strategies
# ---------------------------------------------------------------------------


def _designated_vertex(f: Sequence[int]) -> int | None:
    """The single vertex on 1 token in an otherwise all-2 assignment (None for f = 2)."""
    if any(k not in (1, 2) for k in f):
        return None
    ones = [v for v, k in enumerate(f) if k == 1]
    return ones[0] if len(ones) == 1 else None


def _is_uniform(f: Sequence[int], k: int) -> bool:
    return all(x == k for x in f)


class PainterStrategy:
    name = "painter"

    def check(self, game: Game) -> None:
        """Raise StrategyError when ``game`` is outside the strategy's envelope."""

    def respond(self, game: Game, state: GameState, marked: int) -> int:
        raise NotImplementedError

    def __call__(self, game: Game, state: GameState, marked: int) -> int:
        return self.respond(game, state, marked)

    def __repr__(self) -> str:
        return self.name


class KernelPainter(PainterStrategy):
    """Colour a kernel of the marked set under a tree or cycle orientation.

    Each uncoloured tree component is oriented away from its vertex on one
    token (if any) and Painter colours the kernel of what Lister marked
    there.  Every marked vertex left uncoloured then has a coloured parent,
    so it roots its own component and the shape repeats.  On a cycle the
    first partial marking is answered with a kernel of the directed cycle;
    a full marking is answered greedily.
    """

    name = "kernel_painter"

    def check(self, game: Game) -> None:
        g, f = game.graph, game.f
        if is_tree(g):
            if not (_is_uniform(f, 2) or _designated_vertex(f) is not None):
                raise StrategyError("kernel_painter on a tree needs f' or f = 2")
            return
        if is_cycle(g):
            if not _is_uniform(f, 2):
                raise StrategyError("kernel_painter on a cycle needs f = 2")
            if not (isinstance(game.variant, ExactRounds) and game.variant.t >= g.n + 1):
                raise StrategyError("kernel_painter on C_n needs an exact game of at least n+1 rounds")
            return
        raise StrategyError("kernel_painter supports trees and cycles only")

    def respond(self, game: Game, state: GameState, marked: int) -> int:
        g = game.graph
        unc = state.uncolored(g.n)
        live = marked & unc
        answer = 0
        for comp in g.components(unc):
            here = live & comp
            if not here:
                continue
            if comp == g.full and is_cycle(g):
                if here == comp:
                    answer |= _greedy_independent(g, here)
                else:
                    answer |= kernel_of(directed_cycle(g, range(g.n)), here)
                continue
            ones = [v for v in bits(comp) if state.tokens[v] == 1]
            root = ones[0] if ones else (comp & -comp).bit_length() - 1
            answer |= kernel_of(out_tree(g, root, comp), here)
        return answer


def _greedy_independent(g: Graph, mask: int) -> int:
    out = 0
    for v in bits(mask):
        if not g.adj[v] & out:
            out |= 1 << v
    return out


class BipartitePainter(PainterStrategy):
    """Two-round game on a bipartite graph: colour one side, then the other.

    With f' the side holding the one-token vertex goes first exactly when
    that vertex is marked in the first round.
    """

    name = "bipartite_painter"

    def check(self, game: Game) -> None:
        if bipartition(game.graph) is None:
            raise StrategyError("bipartite_painter needs a bipartite graph")
        if game.rounds != 2:
            raise StrategyError("bipartite_painter plays the exact two-round game")
        if not (_is_uniform(game.f, 2) or _designated_vertex(game.f) is not None):
            raise StrategyError("bipartite_painter needs f = 2 or f'")

    def _sides(self, game: Game) -> tuple[int, int]:
        g = game.graph
        a, b = bipartition(g)
        u = _designated_vertex(game.f)
        if u is not None and b >> u & 1:
            comp = next(c for c in g.components() if c >> u & 1)
            a, b = (a & ~comp) | (b & comp), (b & ~comp) | (a & comp)
        return a, b

    def respond(self, game: Game, state: GameState, marked: int) -> int:
        a, b = self._sides(game)
        live = marked & state.uncolored(game.graph.n)
        if state.colored == 0 and state.tokens == game.f:
            u = _designated_vertex(game.f)
            side = a if u is None or marked >> u & 1 else b
        else:
            side = b if state.colored & a else a
        return live & side


class K2nPainter(PainterStrategy):
    """Three-round game on K_{2,n}: colour both hubs the first time both are marked."""

    name = "k2n_painter"

    def check(self, game: Game) -> None:
        k = is_K2n(game.graph)
        if k is None or k < 3:
            raise StrategyError("k2n_painter needs K_{2,n} with n >= 3")
        if not _is_uniform(game.f, 2) or game.rounds != 3:
            raise StrategyError("k2n_painter plays f = 2 with exactly 3 rounds")

    def respond(self, game: Game, state: GameState, marked: int) -> int:
        g = game.graph
        hubs = mask_of(v for v in range(g.n) if g.degree(v) == g.n - 2)
        live = marked & state.uncolored(g.n)
        if live & hubs == hubs:
            return hubs
        return live & ~hubs


# ---------------------------------------------------------------------------
# Lister plans
# ---------------------------------------------------------------------------

Plan = Generator[int, GameState, None]


def path_lister_bound(n: int) -> int:
    """floor(2n - 2 - lg n), computed without floating point."""
    return 2 * n - 2 - (n - 1).bit_length()


def tadpole_lister_bound(m: int, n: int) -> int:
    """floor(2m + 2n - 4 - lg(m + floor(n/2)))."""
    return 2 * m + 2 * n - 4 - (m + n // 2 - 1).bit_length()


def _path_range(k: int) -> tuple[int, int]:
    """Round counts for which the path plan wins (P_k, f'')."""
    if k == 2:
        return 1, 1
    return 2, path_lister_bound(k)


def _tadpole_range(m: int, n: int) -> tuple[int, int]:
    """Round counts for which the tadpole plan wins (P_m . C_n, f*)."""
    if n % 2:
        return 2, max(2, tadpole_lister_bound(m, n))
    return 3, tadpole_lister_bound(m, n)


def _choose_rounds(lo: int, hi: int, rounds: int, spare: int) -> int:
    """Rounds to give a sub-plan; the rest are filled from ``spare`` padding tokens."""
    t = min(hi, rounds)
    if t < lo or rounds - t > spare:
        raise StrategyError(
            f"cannot fit {rounds} rounds: sub-plan accepts {lo}..{hi}, {spare} padding tokens"
        )
    return t


def _pad_pool(state: GameState, pool: int) -> int:
    return sum(state.tokens[v] for v in bits(pool))


def _embedded(sub: Callable[[GameState], Plan], pool: int, extra: int, state: GameState) -> Plan:
    """Run ``sub`` after ``extra`` rounds that mark only padding vertices from ``pool``.

    Every round also marks the pool vertices whose tokens equal the rounds
    left, which keeps the exact schedule completable.
    """

    def forced(st: GameState) -> int:
        return mask_of(v for v in bits(pool) if st.tokens[v] == st.rounds_left)

    for _ in range(extra):
        pad = forced(state)
        if not pad:
            live = [v for v in bits(pool) if state.tokens[v]]
            if not live:
                raise StrategyError("padding pool exhausted")
            pad = 1 << max(live, key=lambda v: (state.tokens[v], -v))
        state = yield pad
    plan = sub(state)
    move = next(plan)
    while True:
        state = yield move | forced(state)
        try:
            move = plan.send(state)
        except StopIteration:
            raise StrategyError("sub-plan ended without a dead vertex") from None


def _path_plan(path: list[int], t: int, state: GameState) -> Plan:
    """Force a dead vertex on a path whose ends hold 1 token and interior 2, in exactly t rounds."""
    k = len(path)
    lo, hi = _path_range(k)
    if not lo <= t <= hi:
        raise StrategyError(f"path plan on P_{k} cannot use {t} rounds")
    if t == 1:
        yield mask_of(path)
        return
    if t == 2:
        if k % 2 == 0:
            state = yield mask_of(path[1:-1])
            yield mask_of(path)
        else:
            state = yield mask_of(path[:-1])
            yield mask_of(path[1:])
        return
    a = k // 2
    left, right = path[a - 1], path[a]
    state = yield (1 << left) | (1 << right)
    side = path[:a] if not state.colored >> left & 1 else path[a:]
    pool = mask_of(path) & ~mask_of(side)
    sub_t = _choose_rounds(*_path_range(len(side)), state.rounds_left, _pad_pool(state, pool))
    yield from _embedded(
        lambda st: _path_plan(side, sub_t, st), pool, state.rounds_left - sub_t, state
    )


def _tadpole_plan(cycle: list[int], tail: list[int], t: int, state: GameState) -> Plan:
    """Attack a cycle v_1..v_n with tail x_1 = v_n, ..., x_m; x_m holds 1 token, the rest 2."""
    n, m = len(cycle), len(tail)
    everything = mask_of(cycle) | mask_of(tail)
    if t == 2:
        if n % 2 == 0:
            raise StrategyError("two-round tadpole plan needs an odd cycle")
        state = yield everything
        yield everything & ~(1 << tail[-1])
        return
    lo, hi = _tadpole_range(m, n)
    if not 3 <= t <= hi:
        raise StrategyError(f"tadpole plan on P_{m}.C_{n} cannot use {t} rounds")
    a = n // 2
    left, right = cycle[a - 1], cycle[a]
    state = yield (1 << left) | (1 << right)
    if not state.colored >> left & 1:
        side = cycle[a - 1::-1] + tail
    else:
        side = cycle[a:] + tail[1:]
    pool = everything & ~mask_of(side)
    sub_t = _choose_rounds(*_path_range(len(side)), state.rounds_left, _pad_pool(state, pool))
    yield from _embedded(
        lambda st: _path_plan(side, sub_t, st), pool, state.rounds_left - sub_t, state
    )


def _tadpole_handover(cycle: list[int], tail: list[int], everything: int, state: GameState) -> Plan:
    pool = everything & ~mask_of(cycle) & ~mask_of(tail)
    sub_t = _choose_rounds(*_tadpole_range(len(tail), len(cycle)), state.rounds_left, _pad_pool(state, pool))
    yield from _embedded(
        lambda st: _tadpole_plan(cycle, tail, sub_t, st), pool, state.rounds_left - sub_t, state
    )


class ListerStrategy:
    """A Lister player.  ``move`` sees the whole history of positions."""

    name = "lister"

    def check(self, game: Game) -> None:
        """Raise StrategyError when ``game`` is outside the strategy's envelope."""

    def plan(self, game: Game) -> Plan:
        raise NotImplementedError

    def move(self, game: Game, history: Sequence[GameState]) -> int:
        plan = self.plan(game)
        marked = next(plan)
        for state in history[1:]:
            try:
                marked = plan.send(state)
            except StopIteration:
                raise StrategyError(f"{self.name} has no move left") from None
        return marked

    def __call__(self, game: Game, history: Sequence[GameState]) -> int:
        return self.move(game, history)

    def __repr__(self) -> str:
        return self.name


def _need_exact(game: Game) -> int:
    if not isinstance(game.variant, ExactRounds):
        raise StrategyError("scripted Listers play the exact-rounds game")
    return game.variant.t


def _path_order(g: Graph) -> list[int]:
    ends = [v for v in range(g.n) if g.degree(v) == 1]
    order = [ends[0]]
    prev = -1
    while len(order) < g.n:
        cur = order[-1]
        nxt = next(u for u in bits(g.adj[cur]) if u != prev)
        prev = cur
        order.append(nxt)
    return order


class PathSplittingLister(ListerStrategy):
    """(P_n, f''): split the path in the middle and recurse on the half Painter left exposed."""

    name = "path_splitting_lister"

    def check(self, game: Game) -> None:
        g = game.graph
        t = _need_exact(game)
        if g.n < 2 or not is_path(g):
            raise StrategyError("path_splitting_lister needs a path on >= 2 vertices")
        if list(game.f) != [1 if g.degree(v) == 1 else 2 for v in range(g.n)]:
            raise StrategyError("path_splitting_lister needs f''")
        lo, hi = _path_range(g.n)
        if not lo <= t <= hi:
            raise StrategyError(f"t={t} outside {lo}..{hi} for P_{g.n}")

    def plan(self, game: Game) -> Plan:
        self.check(game)
        return _path_plan(_path_order(game.graph), game.variant.t, initial_state(game.graph, game.f, game.variant))


class CycleLister(ListerStrategy):
    """Odd C_n, f = 2, 2 <= t <= n: mark everything, then starve an uncoloured adjacent pair."""

    name = "cycle_lister"

    def check(self, game: Game) -> None:
        g = game.graph
        t = _need_exact(game)
        if not is_cycle(g) or g.n % 2 == 0:
            raise StrategyError("cycle_lister needs an odd cycle")
        if not _is_uniform(game.f, 2) or not 2 <= t <= g.n:
            raise StrategyError("cycle_lister needs f = 2 and 2 <= t <= n")

    def plan(self, game: Game) -> Plan:
        self.check(game)
        g = game.graph
        state = yield g.full
        unc = state.uncolored(g.n)
        u, v = next((a, b) for a, b in g.edges() if unc >> a & 1 and unc >> b & 1)
        pair = (1 << u) | (1 << v)
        yield from _embedded(
            lambda st: _path_plan([u, v], 1, st), g.full & ~pair, state.rounds_left - 1, state
        )


class TadpoleLister(ListerStrategy):
    """(P_m . C_n, f*) in make_tadpole labelling: odd-cycle two-round attack or split the cycle."""

    name = "tadpole_lister"

    def __init__(self, m: int, n: int) -> None:
        self.m, self.n = m, n

    def check(self, game: Game) -> None:
        t = _need_exact(game)
        cycle, tail = tadpole_parts(self.m, self.n)
        if game.graph.n != self.m + self.n - 1:
            raise StrategyError("graph is not the configured tadpole")
        want = tuple(1 if v == tail[-1] else 2 for v in range(game.graph.n))
        if tuple(game.f) != want:
            raise StrategyError("tadpole_lister needs f* with the tail end on 1 token")
        lo, hi = self.envelope()
        if not (lo <= t <= hi):
            raise StrategyError(f"t={t} outside {lo}..{hi} for this tadpole")

    def envelope(self) -> tuple[int, int]:
        """Round counts this plan wins."""
        return _tadpole_range(self.m, self.n)

    def plan(self, game: Game) -> Plan:
        self.check(game)
        cycle, tail = tadpole_parts(self.m, self.n)
        return _tadpole_plan(cycle, tail, game.variant.t, initial_state(game.graph, game.f, game.variant))


def tadpole_lister(m: int, n: int) -> TadpoleLister:
    return TadpoleLister(m, n)


class DumbbellLister(ListerStrategy):
    """C_r . P_k . C_s (r >= 4): split the first cycle, leaving a tadpole with a long tail."""

    name = "dumbbell_lister"

    def __init__(self, r: int, k: int, s: int) -> None:
        if r < 4 or s < 3:
            raise StrategyError("dumbbell_lister needs r >= 4 and s >= 3")
        self.r, self.k, self.s = r, k, s

    def bound(self) -> int:
        """floor(2n - 2 - lg(k + floor(r/2) + floor(s/2))) with n = r + k + s - 2."""
        r, k, s = self.r, self.k, self.s
        return 2 * (r + k + s) - 6 - (k + r // 2 + s // 2 - 1).bit_length()

    def envelope(self) -> tuple[int, int]:
        return (3 if self.s % 2 else 4), self.bound()

    def check(self, game: Game) -> None:
        t = _need_exact(game)
        if game.graph.n != self.r + self.k + self.s - 2 or not _is_uniform(game.f, 2):
            raise StrategyError("graph/f do not match the configured dumbbell with f = 2")
        low, high = self.envelope()
        if not low <= t <= high:
            raise StrategyError(f"t={t} outside {low}..{high}")

    def plan(self, game: Game) -> Plan:
        self.check(game)
        cyc1, path, cyc2 = dumbbell_parts(self.r, self.k, self.s)
        everything = game.graph.full
        a = self.r // 2
        left, right = cyc1[a - 1], cyc1[a]
        state = yield (1 << left) | (1 << right)
        stem = path[::-1]
        if not state.colored >> left & 1:
            tail = stem + cyc1[:a]
        else:
            tail = stem + cyc1[a:-1][::-1]
        yield from _tadpole_handover(cyc2, tail, everything, state)


class ThetaLister(ListerStrategy):
    """θ_{p,q,r} (p >= 3, q + r >= 4): split the p-path, leaving C_{q+r} with a tail."""

    name = "theta_lister"

    def __init__(self, p: int, q: int, r: int) -> None:
        if p < 3 or q + r < 4:
            raise StrategyError("theta_lister needs p >= 3 and q + r >= 4")
        self.p, self.q, self.r = p, q, r

    def bound(self) -> int:
        """floor(2n - 2 - lg(floor(p/2) + 1 + floor((q+r)/2))) with n = p + q + r - 1."""
        p, c = self.p, self.q + self.r
        return 2 * (p + c) - 4 - (p // 2 + c // 2).bit_length()

    def envelope(self) -> tuple[int, int]:
        return (3 if (self.q + self.r) % 2 else 4), self.bound()

    def check(self, game: Game) -> None:
        t = _need_exact(game)
        if game.graph.n != self.p + self.q + self.r - 1 or not _is_uniform(game.f, 2):
            raise StrategyError("graph/f do not match the configured theta with f = 2")
        low, high = self.envelope()
        if not low <= t <= high:
            raise StrategyError(f"t={t} outside {low}..{high}")

    def plan(self, game: Game) -> Plan:
        self.check(game)
        pp, qq, rr = theta_paths(self.p, self.q, self.r)
        u, v = pp[0], pp[-1]
        a = self.p // 2
        left, right = pp[a], pp[a + 1]
        state = yield (1 << left) | (1 << right)
        if not state.colored >> left & 1:
            cycle = qq[1:] + rr[-2:0:-1] + [u]
            tail = pp[: a + 1]
        else:
            cycle = qq[-2::-1] + rr[1:-1] + [v]
            tail = pp[a + 1:][::-1]
        yield from _tadpole_handover(cycle, tail, game.graph.full, state)


class K24Lister(ListerStrategy):
    """Replays a list assignment of K_{2,4} with lists of size 2 admitting no proper colouring."""

    name = "k24_lister"

    def check(self, game: Game) -> None:
        if is_K2n(game.graph) != 4 or not _is_uniform(game.f, 2) or game.rounds != 4:
            raise StrategyError("k24_lister plays K_{2,4} with f = 2 and exactly 4 rounds")

    def plan(self, game: Game) -> Plan:
        self.check(game)
        g = game.graph
        u, v = [h for h in range(g.n) if g.degree(h) == 4]
        x1, x2, x3, x4 = [w for w in range(g.n) if w not in (u, v)]
        for group in ((u, x1, x2), (u, x3, x4), (v, x1, x3), (v, x2, x4)):
            yield mask_of(group)


def kernel_painter() -> KernelPainter:
    return KernelPainter()


def bipartite_painter() -> BipartitePainter:
    return BipartitePainter()


def k2n_painter() -> K2nPainter:
    return K2nPainter()


def path_splitting_lister() -> PathSplittingLister:
    return PathSplittingLister()


def cycle_lister() -> CycleLister:
    return CycleLister()


def dumbbell_lister(r: int, k: int, s: int) -> DumbbellLister:
    return DumbbellLister(r, k, s)


def theta_lister(p: int, q: int, r: int) -> ThetaLister:
    return ThetaLister(p, q, r)


def k24_lister() -> K24Lister:
    return K24Lister()
