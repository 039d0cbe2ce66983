"""Structural classifiers for m(G) and M(G), and drivers that check them against the solver."""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Callable, Iterable, Iterator

from .enumeration import canonical_form, connected_graphs_up_to
from .game import SURVIVES, UNBOUNDED, ExactRounds, Verdict, f_prime, parse_tokens, uniform
from .graph import (
    Graph,
    GraphError,
    bits,
    contains_triangle,
    core,
    core_is_K2n,
    core_is_odd_cycle,
    from_graph6,
    is_bipartite,
    is_cycle,
    is_K2n,
    is_odd_cycle,
    is_tree,
    make_complete,
    make_cycle,
    make_dumbbell,
    make_K2n,
    make_path,
    make_tadpole,
    make_theta,
    to_graph6,
)
from .solver import Solver, compute_M, compute_m, compute_q, feasible_round_counts


class ClassifierError(ValueError):
    """Input outside a classifier's domain."""


class InconsistentClausesError(RuntimeError):
    """Two clauses fired with different values; points at a bug."""


@dataclass(frozen=True)
class MClass:
    value: int

    def __post_init__(self) -> None:
        if self.value not in (2, 3, 4):
            raise ValueError("m(G) of a non-2-paintable graph is 2, 3 or 4")


@dataclass(frozen=True)
class MExtreme:
    value: int | None
    clauses: tuple[str, ...] = ()

    @property
    def fired(self) -> bool:
        return self.value is not None


def _require_connected(g: Graph) -> None:
    if not g.is_connected():
        raise ClassifierError("classifiers take connected graphs; split a disconnected graph into components")


def is_2_paintable_structural(g: Graph) -> bool:
    """Core is K_1, an even cycle or K_{2,3}."""
    _require_connected(g)
    h = core(g).core_graph
    return h.n == 1 or (is_cycle(h) and h.n % 2 == 0) or is_K2n(h) == 3


def _require_hard(g: Graph) -> None:
    if is_2_paintable_structural(g):
        raise ClassifierError("graph is 2-paintable; m and M are not defined for it")


def m_classifier(g: Graph) -> MClass:
    _require_hard(g)
    if not is_bipartite(g):
        return MClass(2)
    k = core_is_K2n(g)
    if k is not None and k >= 4:
        return MClass(4)
    return MClass(3)


def M_extremes_classifier(g: Graph) -> MExtreme:
    """Value of M(G) when one of the extreme characterizations applies."""
    _require_hard(g)
    n = g.n
    fired: list[tuple[str, int]] = []
    if is_odd_cycle(g):
        fired.append(("odd-cycle", n))
    if contains_triangle(g):
        fired.append(("triangle", 2 * n - 3))
    if is_K2n(g) == 4:
        fired.append(("K_{2,4}", n + 1))
    if n == 4 and contains_triangle(g):
        fired.append(("4-vertex-triangle", n + 1))
    c = core_is_odd_cycle(g)
    if c is not None and c == n - 1:
        fired.append(("odd-core-C_{n-1}", n + 1))
    if not fired:
        return MExtreme(None)
    values = {v for _, v in fired}
    if len(values) > 1:
        raise InconsistentClausesError(f"clauses disagree on {to_graph6(g)}: {fired}")
    return MExtreme(values.pop(), tuple(name for name, _ in fired))


# ---------------------------------------------------------------------------
# Cross-validation against the solver
# ---------------------------------------------------------------------------

SUITES = ("m", "M-bounds", "M-extremes", "zhu", "qgame")


@dataclass
class Record:
    graph6: str
    n: int
    classifier: object
    solver: object
    match: bool

    def to_json(self) -> str:
        return json.dumps(
            {"graph6": self.graph6, "n": self.n, "classifier": self.classifier,
             "solver": self.solver, "match": self.match},
            sort_keys=True,
            default=str,
        )


@dataclass
class Report:
    suite: str
    records: list[Record] = field(default_factory=list)

    @property
    def mismatches(self) -> list[Record]:
        return [r for r in self.records if not r.match]

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def json_lines(self) -> str:
        return "".join(r.to_json() + "\n" for r in self.records)

    def summary(self) -> str:
        by_n: dict[int, list[int]] = {}
        for r in self.records:
            row = by_n.setdefault(r.n, [0, 0])
            row[0] += 1
            row[1] += not r.match
        lines = [f"suite {self.suite}", f"{'n':>3} {'graphs':>7} {'mismatch':>9}"]
        lines += [f"{n:>3} {c:>7} {bad:>9}" for n, (c, bad) in sorted(by_n.items())]
        lines.append(f"total {len(self.records)} graphs, {len(self.mismatches)} mismatches")
        return "\n".join(lines)


def _check_m(g: Graph) -> Record:
    s = Solver(g, uniform(g, 2))
    got = compute_m(g, s.f, s)
    want = m_classifier(g).value
    return Record(to_graph6(g), g.n, want, got, want == got)


def _check_M_bounds(g: Graph) -> Record:
    got = compute_M(g, uniform(g, 2))
    lo, hi = g.n, 2 * g.n - 3
    return Record(to_graph6(g), g.n, [lo, hi], got, got is not None and lo <= got <= hi)


def _check_M_extremes(g: Graph) -> Record:
    got = compute_M(g, uniform(g, 2))
    ext = M_extremes_classifier(g)
    n = g.n
    if ext.fired:
        ok = got == ext.value
    else:
        # none of the characterized values may occur when no clause fires
        ok = got not in (n, n + 1, 2 * n - 3)
    shown = {"value": ext.value, "clauses": list(ext.clauses)}
    return Record(to_graph6(g), n, shown, got, ok)


def _check_zhu(g: Graph) -> Record:
    want = is_2_paintable_structural(g)
    got = Solver(g, uniform(g, 2)).solve(UNBOUNDED) is Verdict.PAINTER_WINS
    return Record(to_graph6(g), g.n, want, got, want == got)


def _check_qgame(g: Graph) -> Record:
    s = Solver(g, uniform(g, 2))
    big_m = compute_M(g, s.f, s)
    q = compute_q(g, s.f, s)
    ok = q is not SURVIVES and big_m == 2 * g.n - q
    return Record(to_graph6(g), g.n, {"2n-q": None if q is SURVIVES else 2 * g.n - q}, big_m, ok)


_CHECKS: dict[str, Callable[[Graph], Record]] = {
    "m": _check_m,
    "M-bounds": _check_M_bounds,
    "M-extremes": _check_M_extremes,
    "zhu": _check_zhu,
    "qgame": _check_qgame,
}

SOLVER_N_MAX = 7


def _universe(suite: str, n_max: int) -> Iterator[Graph]:
    for g in connected_graphs_up_to(n_max):
        if suite == "zhu" or not is_2_paintable_structural(g):
            yield g


def _map(fn: Callable, items: Iterable, workers: int) -> Iterator:
    if workers <= 1:
        return map(fn, items)
    pool = ProcessPoolExecutor(max_workers=workers)
    try:
        return iter(list(pool.map(fn, items, chunksize=4)))
    finally:
        pool.shutdown()


def cross_validate(suite: str, n_max: int, workers: int = 1) -> Report:
    """Compare a classifier with the solver on every connected graph up to ``n_max`` vertices.

    All suites except ``zhu`` skip 2-paintable graphs.
    """
    if suite not in _CHECKS:
        raise ValueError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    if n_max > SOLVER_N_MAX:
        raise ValueError(f"n_max={n_max} exceeds the enumeration cap {SOLVER_N_MAX}")
    report = Report(suite)
    report.records.extend(_map(_CHECKS[suite], _universe(suite, n_max), workers))
    return report


# ---------------------------------------------------------------------------
# Contiguity scan of the losing round counts
# ---------------------------------------------------------------------------

SCAN_N_MAX = 6
SCAN_N_MAX_VARIANTS = 5


@dataclass(frozen=True)
class ScanRow:
    graph6: str
    n: int
    f: tuple[int, ...]
    losing: tuple[int, ...]
    paintable: bool

    @property
    def contiguous(self) -> bool:
        return not self.losing or self.losing[-1] - self.losing[0] + 1 == len(self.losing)

    @property
    def status(self) -> str:
        if self.paintable:
            return "paintable at every feasible t"
        return "contiguous" if self.contiguous else "NOT contiguous"

    def to_json(self) -> str:
        return json.dumps(
            {"graph6": self.graph6, "n": self.n, "f": list(self.f), "losing": list(self.losing),
             "contiguous": self.contiguous, "status": self.status},
            sort_keys=True,
        )


@dataclass
class ScanReport:
    rows: list[ScanRow] = field(default_factory=list)

    @property
    def counterexamples(self) -> list[ScanRow]:
        return [r for r in self.rows if not r.contiguous]

    def json_lines(self) -> str:
        return "".join(r.to_json() + "\n" for r in self.rows)

    def rows_for(self, g: Graph) -> list[ScanRow]:
        """Rows whose graph is isomorphic to ``g``."""
        want = canonical_form(g)
        return [r for r in self.rows if r.n == g.n and canonical_form(from_graph6(r.graph6)) == want]

    def summary(self, n_max: int) -> str:
        if not self.counterexamples:
            return f"all contiguous up to n_max={n_max} ({len(self.rows)} instances)"
        bad = ", ".join(f"{r.graph6} f={','.join(map(str, r.f))}" for r in self.counterexamples)
        return f"{len(self.counterexamples)} non-contiguous instances: {bad}"


def _token_variants(g: Graph, specs: Iterable[str]) -> Iterator[tuple[int, ...]]:
    seen = set()
    for spec in specs:
        if spec == "fprime:*":
            fs = [f_prime(g, u) for u in range(g.n)]
        else:
            fs = [parse_tokens(spec, g)]
        for f in fs:
            if f not in seen:
                seen.add(f)
                yield f


def _scan_graph(args: tuple[Graph, tuple[str, ...]]) -> list[ScanRow]:
    g, specs = args
    rows = []
    for f in _token_variants(g, specs):
        s = Solver(g, f)
        paintable = s.solve(UNBOUNDED) is Verdict.PAINTER_WINS
        losing: tuple[int, ...] = ()
        if not paintable:
            losing = tuple(t for t in feasible_round_counts(f)
                           if s.solve(ExactRounds(t)) is Verdict.LISTER_WINS)
        rows.append(ScanRow(to_graph6(g), g.n, f, losing, paintable))
    return rows


def interval_scan(
    n_max: int,
    f_specs: Iterable[str] = ("uniform:2",),
    family: str | None = None,
    workers: int = 1,
    allow_big: bool = False,
) -> ScanReport:
    """For every connected graph, the set of t at which Painter loses the exact-t game.

    ``f_specs`` are token specs understood by :func:`parse_tokens`, plus
    ``fprime:*`` for every single-vertex f'.  A paintable instance has an
    empty losing set.
    """
    f_specs = tuple(f_specs)
    cap = SCAN_N_MAX if f_specs == ("uniform:2",) else SCAN_N_MAX_VARIANTS
    if n_max > cap and not allow_big:
        raise ValueError(f"scan cap is n <= {cap} for these token variants")
    graphs = [g for g in connected_graphs_up_to(n_max) if family is None or family in family_of(g)]
    report = ScanReport()
    for rows in _map(_scan_graph, [(g, f_specs) for g in graphs], workers):
        report.rows.extend(rows)
    return report


# ---------------------------------------------------------------------------
# Family recognition
# ---------------------------------------------------------------------------

FAMILIES = ("path", "cycle", "complete", "k2n", "theta", "dumbbell", "tadpole", "tree")


@lru_cache(maxsize=None)
def _family_forms(n: int) -> dict[bytes, frozenset[str]]:
    found: dict[bytes, set[str]] = {}

    def add(name: str, g: Graph) -> None:
        found.setdefault(canonical_form(g), set()).add(name)

    add("path", make_path(n))
    add("complete", make_complete(n))
    if n >= 3:
        add("cycle", make_cycle(n))
        add("k2n", make_K2n(n - 2))
    for p in range(1, n + 2):
        for q in range(p, n + 2):
            for r in range(max(q, 2), n + 2):
                if p + q + r - 1 == n and q > 1:
                    add("theta", make_theta(p, q, r))
    for a in range(3, n + 1):
        for b in range(a, n + 1):
            k = n + 2 - a - b
            if k >= 1:
                add("dumbbell", make_dumbbell(a, k, b))
    for c in range(3, n + 1):
        m = n + 1 - c
        if m >= 2:
            add("tadpole", make_tadpole(m, c))
    return {k: frozenset(v) for k, v in found.items()}


def family_of(g: Graph) -> frozenset[str]:
    """Names of the named families ``g`` belongs to (up to isomorphism)."""
    if g.n > 10:
        raise GraphError("family recognition is limited to n <= 10")
    names = set(_family_forms(g.n).get(canonical_form(g), ()))
    if is_tree(g):
        names.add("tree")
    return frozenset(names)


# ---------------------------------------------------------------------------
# Small values of the cost game with budgets in {1, 2}
# ---------------------------------------------------------------------------


def has_p2_f2(g: Graph, h) -> bool:
    """An edge whose ends both hold one token."""
    return any(h[u] == 1 and h[v] == 1 for u, v in g.edges())


def has_p3_f2(g: Graph, h) -> bool:
    """Induced a-b-c with h = 1, 2, 1."""
    for b in range(g.n):
        if h[b] != 2:
            continue
        ends = [a for a in bits(g.adj[b]) if h[a] == 1]
        if any(not g.has_edge(a, c) for a, c in combinations(ends, 2)):
            return True
    return False


def has_p4_f2(g: Graph, h) -> bool:
    """Induced a-b-c-d with h = 1, 2, 2, 1."""
    for b, c in g.edges():
        if h[b] != 2 or h[c] != 2:
            continue
        for x, y in ((b, c), (c, b)):
            for a in bits(g.adj[x] & ~g.adj[y] & ~(1 << y)):
                if h[a] != 1:
                    continue
                for d in bits(g.adj[y] & ~g.adj[x] & ~(1 << x)):
                    if h[d] == 1 and d != a and not g.has_edge(a, d):
                        return True
    return False


def has_c3_f1(g: Graph, h) -> bool:
    """A triangle with exactly one vertex holding one token."""
    for u, v in g.edges():
        for w in bits(g.adj[u] & g.adj[v]):
            if w > v and sorted((h[u], h[v], h[w])) == [1, 2, 2]:
                return True
    return False


def q_small_classifier(g: Graph, h) -> int | None:
    """q(G, h) when it is 1 or 2 by the local configurations, and 3 for a triangle under h = 2.

    Returns None when none of those configurations applies; the value is then
    at least 3 (at least 4 under h = 2).
    """
    if has_p2_f2(g, h):
        return 1
    if has_p3_f2(g, h) or has_p4_f2(g, h) or has_c3_f1(g, h):
        return 2
    if all(k == 2 for k in h) and contains_triangle(g):
        return 3
    return None
