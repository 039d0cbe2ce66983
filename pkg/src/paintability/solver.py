"""Memoised minimax for the unbounded, exact-rounds and cost games.

Search positions use a compact form.  Tokens of uncoloured vertices are held
as three threshold masks ``(m1, m2, m3)``: vertex v is in ``mk`` when it has
at least k tokens left.  Marking a set S then costs three bitwise operations.
In a live position every uncoloured vertex holds a token, so ``m1`` is the
uncoloured set.  Coloured vertices can only pad rounds of the exact-rounds
game, and there they are interchangeable apart from their token counts, so
they enter the memo key as the counts ``(c1, c2, c3)`` of coloured vertices
holding 1, 2 and 3 tokens.
"""

from __future__ import annotations

import math
import sys
from typing import Sequence

from .game import (
    COST,
    SURVIVES,
    UNBOUNDED,
    CostGame,
    CostValue,
    ExactRounds,
    GameState,
    Unbounded,
    Variant,
    Verdict,
    check_tokens,
    independent_subsets,
    initial_state,
    lister_moves,
    painter_responses,
    schedule_feasible,
    terminal,
)
from .graph import Graph, GraphError, bits, popcount

DEFAULT_MAX_N = 10
INF = math.inf

sys.setrecursionlimit(max(sys.getrecursionlimit(), 10_000))


class GraphTooLargeError(GraphError):
    pass


class MemoCapacityError(RuntimeError):
    pass


class Solver:
    """Exact game values for one (graph, token assignment) pair.

    With ``maximal=True`` (the default) Painter only answers with maximal
    independent subsets of the marked uncoloured vertices that colour every
    vertex about to run out of tokens.  Any other answer leaves Painter with
    fewer coloured vertices and the same tokens, so the game value does not
    change.  ``maximal=False`` searches every independent answer, the empty
    one included.
    """

    def __init__(
        self,
        g: Graph,
        f: Sequence[int],
        *,
        maximal: bool = True,
        max_n: int = DEFAULT_MAX_N,
        memo_capacity: int | None = None,
    ) -> None:
        if g.n > max_n:
            raise GraphTooLargeError(f"graph has {g.n} vertices; solver cap is {max_n}")
        self.g = g
        self.f = check_tokens(g, f)
        self.maximal = maximal
        self.memo_capacity = memo_capacity
        self.n = g.n
        self._adj = g.adj
        self._nbr: dict[int, int] = {}
        self._indep: dict[int, bool] = {}
        self._mis: dict[int, list[int]] = {}
        self._all_indep: dict[int, list[int]] = {}
        self._unbounded: dict[int, bool] = {}
        self._exact: dict[int, bool] = {}
        self._cost: dict[int, float] = {}

    # -- set helpers -------------------------------------------------------

    def _neighbours(self, mask: int) -> int:
        out = self._nbr.get(mask)
        if out is None:
            out = 0
            for v in bits(mask):
                out |= self._adj[v]
            self._nbr[mask] = out
        return out

    def _independent(self, mask: int) -> bool:
        ok = self._indep.get(mask)
        if ok is None:
            ok = not (self._neighbours(mask) & mask)
            self._indep[mask] = ok
        return ok

    def _maximal_sets(self, mask: int) -> list[int]:
        out = self._mis.get(mask)
        if out is not None:
            return out
        if mask == 0:
            out = [0]
        else:
            low = mask & -mask
            nb = self._adj[low.bit_length() - 1]
            with_v = [low | s for s in self._maximal_sets(mask & ~low & ~nb)]
            without_v = [s for s in self._maximal_sets(mask & ~low) if s & nb]
            out = sorted(with_v + without_v)
        self._mis[mask] = out
        return out

    def _responses(self, marked: int, doomed: int) -> list[int] | None:
        """Painter answers to uncoloured marked set ``marked``.

        ``doomed`` holds the marked vertices on their last token.  In maximal
        mode only answers colouring all of them are returned, and None means
        no such answer exists.
        """
        if not self.maximal:
            out = self._all_indep.get(marked)
            if out is None:
                out = independent_subsets(self.g, marked)
                self._all_indep[marked] = out
            return out
        if not self._independent(doomed):
            return None
        free = marked & ~doomed & ~self._neighbours(doomed)
        return [doomed | s for s in self._maximal_sets(free)]

    def _store(self, memo: dict, key: int, value) -> None:
        if self.memo_capacity is not None and self.memo_size() >= self.memo_capacity:
            raise MemoCapacityError(f"memo table exceeded {self.memo_capacity} entries")
        memo[key] = value

    def memo_size(self) -> int:
        return len(self._unbounded) + len(self._exact) + len(self._cost)

    # -- unbounded game ----------------------------------------------------

    def _key3(self, m1: int, m2: int, m3: int) -> int:
        n = self.n
        return m1 | m2 << n | m3 << (2 * n)

    def _painter_wins_unbounded(self, m1: int, m2: int, m3: int) -> bool:
        if m1 == 0:
            return True
        key = self._key3(m1, m2, m3)
        hit = self._unbounded.get(key)
        if hit is not None:
            return hit
        ones = m1 & ~m2
        result = True
        s = 0
        while True:
            s = (s - m1) & m1
            if s == 0:
                break
            doomed = s & ones
            answers = self._responses(s, doomed)
            if answers is None:
                result = False
                break
            n1 = (m1 & ~s) | (m2 & s)
            n2 = (m2 & ~s) | (m3 & s)
            n3 = m3 & ~s
            for x in answers:
                if doomed & ~x:
                    continue
                keep = ~x
                if self._painter_wins_unbounded(n1 & keep, n2 & keep, n3 & keep):
                    break
            else:
                result = False
                break
        self._store(self._unbounded, key, result)
        return result

    # -- exact-rounds game -------------------------------------------------

    def _painter_wins_exact(self, m1: int, m2: int, m3: int, c1: int, c2: int, c3: int, r: int) -> bool:
        if m1 == 0:
            return True
        n = self.n
        key = m1 | m2 << n | m3 << (2 * n) | (c1 | c2 << 5 | c3 << 10 | r << 15) << (3 * n)
        hit = self._exact.get(key)
        if hit is not None:
            return hit
        total = popcount(m1) + popcount(m2) + popcount(m3) + c1 + 2 * c2 + 3 * c3
        ones = m1 & ~m2
        target = r - 1
        result = True
        s = 0
        first = True
        while first or s:
            first = False
            size = popcount(s)
            doomed = s & ones
            if s:
                answers = self._responses(s, doomed)
            else:
                answers = [0]
            n1 = (m1 & ~s) | (m2 & s)
            n2 = (m2 & ~s) | (m3 & s)
            n3 = m3 & ~s
            for c in range(c3 + 1):
                for b in range(c2 + 1):
                    for a in range(c1 + 1):
                        pad = a + b + c
                        if size + pad == 0 or total - size - pad < target:
                            continue
                        nc1, nc2, nc3 = c1 - a + b, c2 - b + c, c3 - c
                        if n3 or nc3:
                            top = 3
                        elif n2 or nc2:
                            top = 2
                        elif n1 or nc1:
                            top = 1
                        else:
                            top = 0
                        if top > target:
                            continue
                        if answers is None:
                            result = False
                            break
                        for x in answers:
                            if doomed & ~x:
                                continue
                            x1 = popcount(x & n1 & ~n2)
                            x2 = popcount(x & n2 & ~n3)
                            x3 = popcount(x & n3)
                            keep = ~x
                            if self._painter_wins_exact(
                                n1 & keep, n2 & keep, n3 & keep,
                                nc1 + x1, nc2 + x2, nc3 + x3, target,
                            ):
                                break
                        else:
                            result = False
                            break
                    if not result:
                        break
                if not result:
                    break
            if not result:
                break
            s = (s - m1) & m1
        self._store(self._exact, key, result)
        return result

    # -- cost game ---------------------------------------------------------

    def _cost_value(self, m1: int, m2: int, m3: int) -> float:
        if m1 == 0:
            return INF
        key = self._key3(m1, m2, m3)
        hit = self._cost.get(key)
        if hit is not None:
            return hit
        ones = m1 & ~m2
        best = INF
        s = 0
        while True:
            s = (s - m1) & m1
            if s == 0:
                break
            base = popcount(s) - 1
            if base >= best:
                continue
            doomed = s & ones
            answers = self._responses(s, doomed)
            if answers is None:
                best = base
                continue
            n1 = (m1 & ~s) | (m2 & s)
            n2 = (m2 & ~s) | (m3 & s)
            n3 = m3 & ~s
            worst = 0.0
            for x in answers:
                if doomed & ~x:
                    continue
                keep = ~x
                worst = max(worst, self._cost_value(n1 & keep, n2 & keep, n3 & keep))
                if base + worst >= best:
                    break
            best = min(best, base + worst)
        self._store(self._cost, key, best)
        return best

    # -- public surface ----------------------------------------------------

    def _masks(self, state: GameState) -> tuple[int, int, int]:
        m1 = m2 = m3 = 0
        for v in bits(state.uncolored(self.n)):
            k = state.tokens[v]
            if k >= 1:
                m1 |= 1 << v
            if k >= 2:
                m2 |= 1 << v
            if k >= 3:
                m3 |= 1 << v
        return m1, m2, m3

    def _raw_value(self, state: GameState, variant: Variant) -> float | bool:
        """Painter-wins flag for the verdict games, numeric cost for the cost game."""
        over = terminal(self.g, state, variant)
        if isinstance(variant, CostGame):
            if over is Verdict.LISTER_WINS:
                return 0
            if over is Verdict.PAINTER_WINS:
                return INF
            return self._cost_value(*self._masks(state))
        if over is not None:
            return over is Verdict.PAINTER_WINS
        if isinstance(variant, Unbounded):
            return self._painter_wins_unbounded(*self._masks(state))
        counts = [0, 0, 0, 0]
        for v in bits(state.colored):
            counts[state.tokens[v]] += 1
        return self._painter_wins_exact(*self._masks(state), counts[1], counts[2], counts[3], state.rounds_left)

    def value(self, state: GameState, variant: Variant) -> Verdict | CostValue:
        raw = self._raw_value(state, variant)
        if isinstance(variant, CostGame):
            return SURVIVES if raw == INF else int(raw)
        return Verdict.PAINTER_WINS if raw else Verdict.LISTER_WINS

    def solve(self, variant: Variant) -> Verdict | CostValue:
        if isinstance(variant, ExactRounds) and not schedule_feasible(self.f, variant.t):
            return Verdict.PAINTER_WINS
        return self.value(initial_state(self.g, self.f, variant), variant)

    def _after(self, state: GameState, marked: int, x: int) -> GameState:
        tokens = list(state.tokens)
        for v in bits(marked):
            tokens[v] -= 1
        rounds = None if state.rounds_left is None else state.rounds_left - 1
        return GameState(state.colored | x, tuple(tokens), rounds)

    def _move_score(self, state: GameState, marked: int, variant: Variant) -> float:
        """Lister's score for ``marked`` after Painter's best answer; lower is better."""
        answers = painter_responses(self.g, state, marked, self.maximal)
        child = [self._raw_value(self._after(state, marked, x), variant) for x in answers]
        if isinstance(variant, CostGame):
            return popcount(marked & ~state.colored) - 1 + max(child)
        return 1.0 if any(child) else 0.0

    def best_lister_move(self, state: GameState, variant: Variant) -> int:
        """A legal marked set achieving the position's value; smallest bitmask on ties."""
        best_move = None
        best_score = INF
        for move in lister_moves(self.g, state, variant):
            score = self._move_score(state, move, variant)
            if best_move is None or score < best_score:
                best_move, best_score = move, score
                if not isinstance(variant, CostGame) and score == 0:
                    break
        if best_move is None:
            raise ValueError("position is terminal")
        return best_move

    def best_painter_response(self, state: GameState, marked: int, variant: Variant) -> int:
        """Painter's value-achieving answer to ``marked``; smallest bitmask on ties."""
        best_x = None
        best_score = -INF
        for x in painter_responses(self.g, state, marked, self.maximal):
            score = self._raw_value(self._after(state, marked, x), variant)
            score = float(score)
            if best_x is None or score > best_score:
                best_x, best_score = x, score
        return best_x


def solve(g: Graph, f: Sequence[int], variant: Variant, **opts) -> Verdict | CostValue:
    return Solver(g, f, **opts).solve(variant)


def feasible_round_counts(f: Sequence[int]) -> range:
    return range(max(1, max(f, default=0)), sum(f) + 1)


def losing_round_counts(g: Graph, f: Sequence[int], solver: Solver | None = None, **opts) -> list[int]:
    """Every t for which Painter loses the exact-t game."""
    solver = solver or Solver(g, f, **opts)
    return [t for t in feasible_round_counts(f) if solver.solve(ExactRounds(t)) is Verdict.LISTER_WINS]


def compute_m(g: Graph, f: Sequence[int], solver: Solver | None = None, **opts) -> int | None:
    """Least t in [max f, sum f] at which Painter loses the exact-t game."""
    solver = solver or Solver(g, f, **opts)
    for t in feasible_round_counts(f):
        if solver.solve(ExactRounds(t)) is Verdict.LISTER_WINS:
            return t
    return None


def compute_M(g: Graph, f: Sequence[int], solver: Solver | None = None, **opts) -> int | None:
    """Greatest t in [max f, sum f] at which Painter loses the exact-t game."""
    solver = solver or Solver(g, f, **opts)
    for t in reversed(feasible_round_counts(f)):
        if solver.solve(ExactRounds(t)) is Verdict.LISTER_WINS:
            return t
    return None


def compute_q(g: Graph, f: Sequence[int], solver: Solver | None = None, **opts) -> CostValue:
    """Least total of |V_i| - 1 with which Lister can force a dead vertex."""
    solver = solver or Solver(g, f, **opts)
    return solver.solve(COST)


def is_f_paintable(g: Graph, f: Sequence[int], **opts) -> bool:
    return solve(g, f, UNBOUNDED, **opts) is Verdict.PAINTER_WINS
