"""Rules of the online list-colouring game and its three variants.

Each round Lister marks a vertex set V (the vertices whose lists hold the
next colour) and Painter colours an independent subset X of the marked,
uncoloured vertices.  Marking costs the vertex one token; an uncoloured
vertex with no tokens left can never be coloured and hands Lister the win.

``ExactRounds(t)`` fixes the number of rounds in advance: every round is
nonempty and every vertex is marked exactly f(v) times, so coloured vertices
may be re-marked to pad rounds.  ``CostGame`` is the unbounded game scored
by the total of |V| - 1 over the rounds Lister needs to force a dead vertex.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, Sequence, Union

from .graph import Graph, bits, is_path, mask_of

MAX_TOKENS = 3


class IllegalMoveError(ValueError):
    """A move or response that the rules forbid."""


class Verdict(enum.Enum):
    PAINTER_WINS = "PainterWins"
    LISTER_WINS = "ListerWins"

    def __str__(self) -> str:
        return self.value


class Survives(enum.Enum):
    """Cost-game value when Painter colours every vertex."""

    SURVIVES = "Survives"

    def __str__(self) -> str:
        return self.value


SURVIVES = Survives.SURVIVES
CostValue = Union[int, Survives]


@dataclass(frozen=True)
class Unbounded:
    def __str__(self) -> str:
        return "unbounded"


@dataclass(frozen=True)
class ExactRounds:
    t: int

    def __post_init__(self) -> None:
        if self.t < 1:
            raise ValueError("ExactRounds needs t >= 1")

    def __str__(self) -> str:
        return f"exact:{self.t}"


@dataclass(frozen=True)
class CostGame:
    def __str__(self) -> str:
        return "cost"


Variant = Union[Unbounded, ExactRounds, CostGame]
UNBOUNDED = Unbounded()
COST = CostGame()


def parse_variant(spec: str) -> Variant:
    spec = spec.strip().lower()
    if spec == "unbounded":
        return UNBOUNDED
    if spec == "cost":
        return COST
    if spec.startswith("exact:"):
        try:
            return ExactRounds(int(spec[6:]))
        except ValueError:
            pass
    raise ValueError(f"unknown variant {spec!r} (expected unbounded, cost or exact:<t>)")


# ---------------------------------------------------------------------------
# Token assignments
# ---------------------------------------------------------------------------

TokenAssignment = tuple[int, ...]


def check_tokens(g: Graph, f: Sequence[int]) -> TokenAssignment:
    f = tuple(int(k) for k in f)
    if len(f) != g.n:
        raise ValueError(f"token assignment has {len(f)} entries for {g.n} vertices")
    if any(not 0 <= k <= MAX_TOKENS for k in f):
        raise ValueError(f"tokens must lie in 0..{MAX_TOKENS}")
    return f


def uniform(g: Graph, k: int) -> TokenAssignment:
    return check_tokens(g, [k] * g.n)


def f_prime(g: Graph, u: int) -> TokenAssignment:
    """All 2 except the designated vertex ``u`` at 1."""
    if not 0 <= u < g.n:
        raise ValueError(f"vertex {u} not in graph")
    return tuple(1 if v == u else 2 for v in range(g.n))


def f_star(g: Graph, default: int | None = None) -> TokenAssignment:
    """f' designating the unique degree-1 vertex when there is one.

    Without a unique degree-1 vertex, ``default`` is designated; it falls
    back to the highest-labelled vertex (the attachment vertex of a tadpole
    with a one-vertex tail under :func:`make_tadpole` labelling).
    """
    leaves = [v for v in range(g.n) if g.degree(v) == 1]
    if len(leaves) == 1:
        return f_prime(g, leaves[0])
    return f_prime(g, g.n - 1 if default is None else default)


def f_double_prime(g: Graph) -> TokenAssignment:
    """Path budget: endpoints 1, interior vertices 2."""
    if g.n < 2 or not is_path(g):
        raise ValueError("f'' is defined on paths with at least 2 vertices")
    return tuple(1 if g.degree(v) == 1 else 2 for v in range(g.n))


def parse_tokens(spec: str, g: Graph) -> TokenAssignment:
    """Resolve a token spec against ``g``.

    Accepts ``uniform:k``, ``fprime:v``, ``fstar``, ``fstar:v``,
    ``fdoubleprime``, a comma list ``2,2,1`` or a ``v k`` per line document.
    """
    s = spec.strip()
    low = s.lower()
    if low.startswith("uniform:"):
        return uniform(g, int(low[8:]))
    if low.startswith("fprime:"):
        return f_prime(g, int(low[7:]))
    if low == "fstar":
        return f_star(g)
    if low.startswith("fstar:"):
        return f_star(g, int(low[6:]))
    if low == "fdoubleprime":
        return f_double_prime(g)
    if "\n" in s or (" " in s and "," not in s):
        f = [None] * g.n
        for lineno, line in enumerate(s.splitlines(), 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 2:
                raise ValueError(f"line {lineno}: expected 'v k', got {line!r}")
            v, k = int(parts[0]), int(parts[1])
            if not 0 <= v < g.n:
                raise ValueError(f"line {lineno}: vertex {v} not in graph")
            f[v] = k
        missing = [v for v, k in enumerate(f) if k is None]
        if missing:
            raise ValueError(f"no token count for vertices {missing}")
        return check_tokens(g, f)
    return check_tokens(g, [int(x) for x in s.split(",")])


# ---------------------------------------------------------------------------
# States and moves
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GameState:
    colored: int
    tokens: tuple[int, ...]
    rounds_left: int | None = None

    def uncolored(self, n: int) -> int:
        return ((1 << n) - 1) & ~self.colored

    def tokened(self) -> int:
        return mask_of(v for v, k in enumerate(self.tokens) if k)


def initial_state(g: Graph, f: Sequence[int], variant: Variant) -> GameState:
    f = check_tokens(g, f)
    rounds = variant.t if isinstance(variant, ExactRounds) else None
    return GameState(0, f, rounds)


def schedule_feasible(tokens: Sequence[int], rounds: int) -> bool:
    """Can the tokens fill exactly ``rounds`` nonempty rounds, each vertex once per round?"""
    if rounds < 0:
        return False
    return sum(tokens) >= rounds and max(tokens, default=0) <= rounds


def schedule_feasible_bruteforce(tokens: Sequence[int], rounds: int) -> bool:
    """Reference for :func:`schedule_feasible`: try every assignment of rounds."""
    if rounds < 0:
        return False
    choices = [list(combinations(range(rounds), k)) for k in tokens]
    if any(not c for c in choices):
        return False
    everything = (1 << rounds) - 1

    def search(i: int, covered: int) -> bool:
        if i == len(choices):
            return covered == everything
        return any(search(i + 1, covered | mask_of(c)) for c in choices[i])

    return search(0, 0)


def dead_vertices(g: Graph, state: GameState) -> int:
    """Uncoloured vertices with no tokens left."""
    return mask_of(v for v in bits(state.uncolored(g.n)) if state.tokens[v] == 0)


def terminal(g: Graph, state: GameState, variant: Variant | None = None) -> Verdict | None:
    if dead_vertices(g, state):
        return Verdict.LISTER_WINS
    if state.colored == g.full:
        return Verdict.PAINTER_WINS
    if state.rounds_left == 0:
        # unreachable through legal play: feasibility empties every token first
        return Verdict.LISTER_WINS
    return None


def _decrement(tokens: Sequence[int], marked: int) -> list[int]:
    out = list(tokens)
    for v in bits(marked):
        out[v] -= 1
    return out


def lister_move_error(g: Graph, state: GameState, marked: int, variant: Variant) -> str | None:
    """Why ``marked`` is not a legal Lister move, or None when it is."""
    if marked == 0:
        return "marked set is empty"
    if marked & ~g.full:
        return "marked set contains vertices outside the graph"
    if any(state.tokens[v] == 0 for v in bits(marked)):
        return "a marked vertex has no tokens left"
    if isinstance(variant, ExactRounds):
        if state.rounds_left is None or state.rounds_left < 1:
            return "no rounds left"
        if not schedule_feasible(_decrement(state.tokens, marked), state.rounds_left - 1):
            return "remaining tokens cannot fill the remaining rounds exactly"
    elif marked & state.colored:
        return "coloured vertices may only be re-marked in the exact-rounds game"
    return None


def lister_moves(g: Graph, state: GameState, variant: Variant) -> Iterator[int]:
    """All legal marked sets, in increasing bitmask order."""
    if terminal(g, state, variant) is not None:
        return
    if isinstance(variant, ExactRounds):
        pool = state.tokened()
    else:
        pool = state.tokened() & ~state.colored
    sub = 0
    while True:
        sub = (sub - pool) & pool
        if sub == 0:
            return
        if lister_move_error(g, state, sub, variant) is None:
            yield sub


def painter_response_error(g: Graph, state: GameState, marked: int, response: int) -> str | None:
    if response & ~marked:
        return "response contains unmarked vertices"
    if response & state.colored:
        return "response contains coloured vertices"
    if not g.is_independent(response):
        return "not independent"
    return None


def independent_subsets(g: Graph, mask: int) -> list[int]:
    """Every independent subset of ``mask`` (including the empty set), increasing."""
    out = [0]
    for v in bits(mask):
        out += [s | 1 << v for s in out if not g.adj[v] & s]
    return sorted(out)


def maximal_independent_subsets(g: Graph, mask: int) -> list[int]:
    """Independent subsets of ``mask`` not extendable within ``mask``, increasing."""
    out = []
    for s in independent_subsets(g, mask):
        free = mask & ~s & ~g.neighbourhood(s)
        if not free:
            out.append(s)
    return out


def painter_responses(g: Graph, state: GameState, marked: int, maximal: bool = True) -> list[int]:
    avail = marked & ~state.colored
    if maximal:
        return maximal_independent_subsets(g, avail)
    return independent_subsets(g, avail)


def apply_round(g: Graph, state: GameState, marked: int, response: int, variant: Variant | None = None) -> GameState:
    if variant is not None:
        why = lister_move_error(g, state, marked, variant)
        if why:
            raise IllegalMoveError(f"illegal marked set {sorted(bits(marked))}: {why}")
    elif marked == 0 or any(state.tokens[v] == 0 for v in bits(marked)):
        raise IllegalMoveError(f"illegal marked set {sorted(bits(marked))}")
    why = painter_response_error(g, state, marked, response)
    if why:
        raise IllegalMoveError(f"illegal response {sorted(bits(response))}: {why}")
    rounds = None if state.rounds_left is None else state.rounds_left - 1
    return GameState(state.colored | response, tuple(_decrement(state.tokens, marked)), rounds)


def format_set(mask: int) -> str:
    return "{" + ",".join(str(v) for v in bits(mask)) + "}"
