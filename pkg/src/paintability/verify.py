"""Named verification suites that check structural statements against the exact solver.

Every suite yields JSON-serialisable records carrying a boolean ``match``;
a suite passes when all of its records match.
"""

from __future__ import annotations

import json
import math
import random
import time
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Callable, Iterator

from . import classifiers
from .enumeration import connected_graphs_up_to, enumerate_trees
from .game import (
    COST,
    SURVIVES,
    UNBOUNDED,
    ExactRounds,
    GameState,
    Verdict,
    apply_round,
    f_double_prime,
    f_prime,
    f_star,
    independent_subsets,
    initial_state,
    lister_move_error,
    schedule_feasible,
    schedule_feasible_bruteforce,
    terminal,
    uniform,
)
from .graph import (
    Graph,
    bits,
    disjoint_union,
    make_cycle,
    make_dumbbell,
    make_K2n,
    make_path,
    make_tadpole,
    make_theta,
    to_graph6,
)
from .referee import OPTIMAL, referee
from .solver import Solver, compute_M, compute_q, feasible_round_counts, losing_round_counts
from . import strategies as st

Record = dict


@dataclass
class SuiteResult:
    name: str
    records: list[Record] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def mismatches(self) -> list[Record]:
        return [r for r in self.records if not r["match"]]

    @property
    def ok(self) -> bool:
        return bool(self.records) and not self.mismatches

    def json_lines(self) -> str:
        return "".join(json.dumps({"suite": self.name, **r}, sort_keys=True, default=str) + "\n"
                       for r in self.records)

    def summary(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return f"{status} {self.name}: {len(self.records)} checks, {len(self.mismatches)} mismatches ({self.seconds:.1f}s)"


def _g6(g: Graph) -> str:
    return to_graph6(g)


# ---------------------------------------------------------------------------
# Suites
# ---------------------------------------------------------------------------


def suite_cycle_theorem() -> Iterator[Record]:
    """C_n with f = 2 loses exactly for 2 <= t <= n (n = 3, 5, 7)."""
    for n in (3, 5, 7):
        g = make_cycle(n)
        s = Solver(g, uniform(g, 2))
        for t in feasible_round_counts(s.f):
            got = s.solve(ExactRounds(t))
            want = Verdict.LISTER_WINS if 2 <= t <= n else Verdict.PAINTER_WINS
            yield {"check": f"C_{n} t={t}", "expected": str(want), "got": str(got), "match": got is want}


def suite_q_lemmas() -> Iterator[Record]:
    """q >= 1; q = 1 and q = 2 local characterizations; q = 3 iff triangle under h = 2 (n <= 5)."""
    for g in connected_graphs_up_to(5):
        for h in product((1, 2), repeat=g.n):
            q = compute_q(g, h)
            c = classifiers.q_small_classifier(g, h)
            ok = q is SURVIVES or q >= 1
            ok = ok and (q == 1) == (c == 1) and (q == 2) == (c == 2)
            if all(k == 2 for k in h):
                ok = ok and (q == 3) == (c == 3)
            yield {"check": "q", "graph6": _g6(g), "h": list(h), "q": str(q), "classifier": c, "match": ok}


def _cross(suite: str, n_max: int) -> Callable[..., Iterator[Record]]:
    def run(workers: int = 1) -> Iterator[Record]:
        for rec in classifiers.cross_validate(suite, n_max, workers).records:
            yield {"check": suite, "graph6": rec.graph6, "n": rec.n,
                   "classifier": rec.classifier, "solver": rec.solver, "match": rec.match}
    return run


def suite_M_extremes(workers: int = 1) -> Iterator[Record]:
    yield from _cross("M-extremes", 6)(workers)
    g = make_tadpole(2, 5)
    got = compute_M(g, uniform(g, 2))
    yield {"check": "C_5 plus pendant", "expected": 7, "got": got, "match": got == 7}


def suite_union() -> Iterator[Record]:
    """Disjoint union is f-paintable iff both parts are (f = 2, n(H) + n(M) <= 7)."""
    graphs = list(connected_graphs_up_to(6))
    paint = {i: Solver(g, uniform(g, 2)).solve(UNBOUNDED) is Verdict.PAINTER_WINS for i, g in enumerate(graphs)}
    for i, a in enumerate(graphs):
        for j in range(i, len(graphs)):
            b = graphs[j]
            if a.n + b.n > 7:
                continue
            u = disjoint_union(a, b)
            got = Solver(u, uniform(u, 2)).solve(UNBOUNDED) is Verdict.PAINTER_WINS
            want = paint[i] and paint[j]
            yield {"check": "union", "H": _g6(a), "M": _g6(b), "expected": want, "got": got, "match": got == want}


def suite_subgraph_monotonicity(samples: int = 120, seed: int = 7) -> Iterator[Record]:
    """Lister's losing window in H carries over to G with the extra budget (sampled, n(G) <= 6)."""
    rng = random.Random(seed)
    pool = [g for g in connected_graphs_up_to(6) if g.n >= 3]
    for _ in range(samples):
        g = rng.choice(pool)
        f = tuple(rng.choice((1, 2)) for _ in range(g.n))
        size = rng.randint(2, g.n - 1)
        keep = rng.sample(range(g.n), size)
        mask = sum(1 << v for v in keep)
        h_graph = g.induced(mask)
        h = tuple(f[v] for v in sorted(keep))
        outside = [f[v] for v in range(g.n) if not mask >> v & 1]
        big_k, extra = max(outside), sum(outside)
        sg = Solver(g, f)
        sh = Solver(h_graph, h)
        h_losing = losing_round_counts(h_graph, h, sh)
        g_losing = set(losing_round_counts(g, f, sg))
        need = {k for t in h_losing for k in range(max(t, big_k), t + extra + 1)}
        ok = need <= g_losing
        if h_losing:
            ok = ok and max(g_losing) >= max(h_losing) + extra
            ok = ok and min(g_losing) <= max(big_k, min(h_losing))
        yield {"check": "subgraph", "G": _g6(g), "f": list(f), "H_vertices": sorted(keep),
               "H_losing": h_losing, "G_losing": sorted(g_losing), "match": ok}


def _lister_envelopes() -> Iterator[tuple[str, Graph, tuple, int, Callable[[], st.ListerStrategy]]]:
    for n in range(2, 9):
        g = make_path(n)
        lo, hi = (1, 1) if n == 2 else (2, st.path_lister_bound(n))
        for t in range(lo, hi + 1):
            yield f"path_splitting P_{n}", g, f_double_prime(g), t, st.path_splitting_lister
    for n in (3, 5, 7, 9):
        for t in range(2, n + 1):
            yield f"cycle_lister C_{n}", make_cycle(n), uniform(make_cycle(n), 2), t, st.cycle_lister
    yield "k24_lister", make_K2n(4), uniform(make_K2n(4), 2), 4, st.k24_lister
    for n in range(3, 8):
        for m in range(2, 10 - n + 1):
            g = make_tadpole(m, n)
            lo, hi = st.tadpole_lister(m, n).envelope()
            for t in range(lo, hi + 1):
                yield f"tadpole_lister {m},{n}", g, f_star(g), t, lambda m=m, n=n: st.tadpole_lister(m, n)
    for r, k, s in ((4, 1, 3), (4, 1, 4), (4, 2, 3), (5, 1, 4), (4, 3, 4)):
        g = make_dumbbell(r, k, s)
        lo, hi = st.dumbbell_lister(r, k, s).envelope()
        for t in range(lo, hi + 1):
            yield f"dumbbell_lister {r},{k},{s}", g, uniform(g, 2), t, lambda a=(r, k, s): st.dumbbell_lister(*a)
    for p, q, r in ((3, 3, 1), (3, 2, 2), (4, 2, 2), (3, 1, 3), (5, 2, 3)):
        g = make_theta(p, q, r)
        lo, hi = st.theta_lister(p, q, r).envelope()
        for t in range(lo, hi + 1):
            yield f"theta_lister {p},{q},{r}", g, uniform(g, 2), t, lambda a=(p, q, r): st.theta_lister(*a)


def _painter_envelopes() -> Iterator[tuple[str, Graph, tuple, object, Callable[[], st.PainterStrategy]]]:
    for n in range(2, 9):
        for g in enumerate_trees(n):
            for u in range(n):
                yield f"kernel_painter tree n={n}", g, f_prime(g, u), UNBOUNDED, st.kernel_painter
    for n in (4, 5, 6):
        g = make_cycle(n)
        for t in range(n + 1, 2 * n + 1):
            yield f"kernel_painter C_{n}", g, uniform(g, 2), ExactRounds(t), st.kernel_painter
    for g in (make_cycle(6), make_K2n(3), make_theta(2, 2, 4)):
        yield "bipartite_painter f=2", g, uniform(g, 2), ExactRounds(2), st.bipartite_painter
        for u in range(g.n):
            yield "bipartite_painter f'", g, f_prime(g, u), ExactRounds(2), st.bipartite_painter
    for n in range(4, 10):
        g = make_K2n(n)
        yield f"k2n_painter K_2,{n}", g, uniform(g, 2), ExactRounds(3), st.k2n_painter


def suite_strategies() -> Iterator[Record]:
    """Every scripted strategy beats the optimal opponent on its envelope, with legal moves throughout."""
    for label, g, f, t, make in _lister_envelopes():
        rec = {"check": label, "graph6": _g6(g), "f": list(f), "variant": f"exact:{t}"}
        try:
            tr = referee(g, f, ExactRounds(t), make(), OPTIMAL)
            rec.update(verdict=str(tr.verdict), match=tr.verdict is Verdict.LISTER_WINS)
        except st.StrategyError as exc:
            rec.update(error=str(exc), match=False)
        yield rec
    for label, g, f, variant, make in _painter_envelopes():
        rec = {"check": label, "graph6": _g6(g), "f": list(f), "variant": str(variant)}
        try:
            tr = referee(g, f, variant, OPTIMAL, make(), max_n=max(g.n, 10))
            rec.update(verdict=str(tr.verdict), match=tr.verdict is Verdict.PAINTER_WINS)
        except st.StrategyError as exc:
            rec.update(error=str(exc), match=False)
        yield rec


def suite_feasibility_oracle() -> Iterator[Record]:
    """Closed-form schedule feasibility equals brute-force scheduling (n <= 4, tokens <= 3, rounds <= 8)."""
    for n in range(1, 5):
        for tokens in product(range(4), repeat=n):
            for r in range(0, 9):
                fast = schedule_feasible(tokens, r)
                slow = schedule_feasible_bruteforce(tokens, r)
                yield {"check": "schedule", "tokens": list(tokens), "rounds": r, "fast": fast,
                       "slow": slow, "match": fast == slow}


def reference_value(g: Graph, f, variant, allow_colored: bool = False):
    """Plain minimax over every legal move and every independent response.

    Independent of the bitmask solver; ``allow_colored`` lets Lister re-mark
    coloured vertices outside the exact-rounds game.
    """
    memo: dict[GameState, object] = {}
    exact = isinstance(variant, ExactRounds)
    cost = variant == COST

    def moves(state: GameState) -> Iterator[int]:
        pool = state.tokened()
        if not (exact or allow_colored):
            pool &= ~state.colored
        for k in range(1, pool.bit_length() + 1):
            for combo in combinations(list(bits(pool)), k):
                marked = sum(1 << v for v in combo)
                if exact and lister_move_error(g, state, marked, variant):
                    continue
                yield marked

    def value(state: GameState):
        if state in memo:
            return memo[state]
        over = terminal(g, state, variant)
        if over is not None:
            res = (0 if over is Verdict.LISTER_WINS else math.inf) if cost else over
            memo[state] = res
            return res
        if cost:
            best = math.inf
            for marked in moves(state):
                worst = max(value(apply_round(g, state, marked, x)) for x in
                            independent_subsets(g, marked & ~state.colored))
                best = min(best, bin(marked).count("1") - 1 + worst)
            res = best
        else:
            res = Verdict.PAINTER_WINS
            for marked in moves(state):
                if all(value(apply_round(g, state, marked, x)) is Verdict.LISTER_WINS
                       for x in independent_subsets(g, marked & ~state.colored)):
                    res = Verdict.LISTER_WINS
                    break
        memo[state] = res
        return res

    res = value(initial_state(g, f, variant))
    if cost:
        return SURVIVES if res == math.inf else int(res)
    return res


def _variants(f) -> list:
    return [UNBOUNDED, COST] + [ExactRounds(t) for t in feasible_round_counts(f)]


def suite_dominance() -> Iterator[Record]:
    """Restricting Painter to maximal responses never changes a value (connected n <= 5, f = 2).

    Also checks the solver against the plain reference search on n <= 4 with
    every h in {1, 2}^V, and that letting Lister re-mark coloured vertices in
    the unbounded and cost games changes nothing.
    """
    for g in connected_graphs_up_to(5):
        f = uniform(g, 2)
        fast, full = Solver(g, f, maximal=True), Solver(g, f, maximal=False)
        for variant in _variants(f):
            a, b = fast.solve(variant), full.solve(variant)
            yield {"check": "maximal", "graph6": _g6(g), "variant": str(variant),
                   "maximal": str(a), "all": str(b), "match": a == b}
    for g in connected_graphs_up_to(4):
        for h in product((1, 2), repeat=g.n):
            s = Solver(g, h)
            for variant in _variants(h):
                got, ref = s.solve(variant), reference_value(g, h, variant)
                yield {"check": "reference", "graph6": _g6(g), "h": list(h), "variant": str(variant),
                       "solver": str(got), "reference": str(ref), "match": got == ref}
            for variant in (UNBOUNDED, COST):
                a = reference_value(g, h, variant)
                b = reference_value(g, h, variant, allow_colored=True)
                yield {"check": "remark-colored", "graph6": _g6(g), "h": list(h), "variant": str(variant),
                       "excluded": str(a), "allowed": str(b), "match": a == b}


SUITES: dict[str, Callable[[], Iterator[Record]]] = {
    "cycle-theorem": suite_cycle_theorem,
    "q-lemmas": suite_q_lemmas,
    "m-theorem": _cross("m", 6),
    "M-bounds": _cross("M-bounds", 6),
    "M-extremes": suite_M_extremes,
    "zhu": _cross("zhu", 7),
    "qgame": _cross("qgame", 6),
    "union": suite_union,
    "subgraph-monotonicity": suite_subgraph_monotonicity,
    "strategies": suite_strategies,
    "feasibility-oracle": suite_feasibility_oracle,
    "dominance": suite_dominance,
}
SUITE_NAMES = tuple(SUITES) + ("all",)
_PARALLEL = {"m-theorem", "M-bounds", "M-extremes", "zhu", "qgame"}


def run_suite(name: str, workers: int = 1) -> list[SuiteResult]:
    """Run one suite (or every suite for ``all``); ``workers`` fans out the per-graph suites."""
    if name == "all":
        names = list(SUITES)
    elif name in SUITES:
        names = [name]
    else:
        raise KeyError(name)
    results = []
    for nm in names:
        start = time.perf_counter()
        fn = SUITES[nm]
        res = SuiteResult(nm, list(fn(workers) if nm in _PARALLEL else fn()))
        res.seconds = time.perf_counter() - start
        results.append(res)
    return results
