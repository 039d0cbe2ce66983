"""Play games between scripted and optimal players and record transcripts."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Union

from .game import (
    GameState,
    IllegalMoveError,
    Variant,
    Verdict,
    apply_round,
    independent_subsets,
    initial_state,
    lister_move_error,
    lister_moves,
    painter_response_error,
    painter_responses,
    parse_variant,
    schedule_feasible,
    terminal,
    ExactRounds,
)
from .graph import Graph, bits, from_graph6, mask_of, to_graph6
from .solver import Solver
from .strategies import Game, ListerStrategy, PainterStrategy, StrategyError


class _Optimal:
    def __repr__(self) -> str:
        return "Optimal"


OPTIMAL = _Optimal()

ListerSide = Union[ListerStrategy, _Optimal]
PainterSide = Union[PainterStrategy, _Optimal]


class StrategyMoveError(StrategyError):
    """A scripted player produced an illegal move."""

    def __init__(self, player: str, round_no: int, state: GameState, move: int, why: str) -> None:
        self.round_no = round_no
        self.state = state
        self.move = move
        super().__init__(
            f"{player} played illegal set {sorted(bits(move))} in round {round_no} "
            f"(colored={sorted(bits(state.colored))}, tokens={list(state.tokens)}, "
            f"rounds_left={state.rounds_left}): {why}"
        )


@dataclass(frozen=True)
class Round:
    marked: int
    colored: int
    after: GameState


@dataclass
class Transcript:
    graph: Graph
    f: tuple[int, ...]
    variant: Variant
    rounds: list[Round] = field(default_factory=list)
    verdict: Verdict | None = None

    def to_text(self) -> str:
        lines = [
            f"# graph6={to_graph6(self.graph)}",
            f"# f={','.join(map(str, self.f))}",
            f"# variant={self.variant}",
        ]
        for i, rnd in enumerate(self.rounds, 1):
            lines.append(f"{i} | V={_ids(rnd.marked)} | X={_ids(rnd.colored)}")
        lines.append(f"verdict={self.verdict}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        return json.dumps(
            {
                "graph6": to_graph6(self.graph),
                "f": list(self.f),
                "variant": str(self.variant),
                "rounds": [
                    {"i": i, "V": list(bits(r.marked)), "X": list(bits(r.colored))}
                    for i, r in enumerate(self.rounds, 1)
                ],
                "verdict": str(self.verdict),
            },
            sort_keys=True,
        )

    @classmethod
    def from_text(cls, text: str) -> Transcript:
        meta: dict[str, str] = {}
        moves: list[tuple[int, int]] = []
        verdict = None
        for line in text.splitlines():
            line = line.strip()
            if not line:
                continue
            if line.startswith("#"):
                key, _, val = line[1:].strip().partition("=")
                meta[key.strip()] = val.strip()
            elif line.startswith("verdict="):
                word = line.split("=", 1)[1]
                verdict = None if word == "None" else Verdict(word)
            else:
                _, v_part, x_part = (p.strip() for p in line.split("|"))
                moves.append((_parse_ids(v_part[2:]), _parse_ids(x_part[2:])))
        g = from_graph6(meta["graph6"])
        f = tuple(int(x) for x in meta["f"].split(","))
        return _rebuild(g, f, parse_variant(meta["variant"]), moves, verdict)

    @classmethod
    def from_json(cls, text: str) -> Transcript:
        data = json.loads(text)
        g = from_graph6(data["graph6"])
        moves = [(mask_of(r["V"]), mask_of(r["X"])) for r in data["rounds"]]
        verdict = None if data["verdict"] == "None" else Verdict(data["verdict"])
        return _rebuild(g, tuple(data["f"]), parse_variant(data["variant"]), moves, verdict)


def _ids(mask: int) -> str:
    return ",".join(str(v) for v in bits(mask))


def _parse_ids(text: str) -> int:
    text = text.strip()
    return mask_of(int(x) for x in text.split(",")) if text else 0


def _rebuild(g: Graph, f, variant: Variant, moves, verdict) -> Transcript:
    tr = Transcript(g, tuple(f), variant, verdict=verdict)
    state = initial_state(g, f, variant)
    for marked, colored in moves:
        state = apply_round(g, state, marked, colored, variant)
        tr.rounds.append(Round(marked, colored, state))
    return tr


def replay(transcript: Transcript) -> Verdict | None:
    """Re-apply every round with full legality checks and return the resulting verdict."""
    g, variant = transcript.graph, transcript.variant
    state = initial_state(g, transcript.f, variant)
    for rnd in transcript.rounds:
        if terminal(g, state, variant) is not None:
            raise IllegalMoveError("transcript continues after the game ended")
        state = apply_round(g, state, rnd.marked, rnd.colored, variant)
    return terminal(g, state, variant)


def referee(
    g: Graph,
    f,
    variant: Variant,
    lister: ListerSide = OPTIMAL,
    painter: PainterSide = OPTIMAL,
    solver: Solver | None = None,
    max_n: int | None = None,
) -> Transcript:
    """Play one game to the end, checking every move of both sides."""
    game = Game(g, tuple(f), variant)
    if isinstance(variant, ExactRounds) and not schedule_feasible(game.f, variant.t):
        raise ValueError(f"no legal {variant.t}-round schedule for these tokens")
    for side in (lister, painter):
        if side is not OPTIMAL:
            side.check(game)
    if solver is None and OPTIMAL in (lister, painter):
        solver = Solver(g, f, **({} if max_n is None else {"max_n": max_n}))
    state = initial_state(g, f, variant)
    history = [state]
    tr = Transcript(g, game.f, variant)
    while terminal(g, state, variant) is None:
        i = len(tr.rounds) + 1
        if lister is OPTIMAL:
            marked = solver.best_lister_move(state, variant)
        else:
            marked = lister.move(game, history)
            why = lister_move_error(g, state, marked, variant)
            if why:
                raise StrategyMoveError(lister.name, i, state, marked, why)
        if painter is OPTIMAL:
            colored = solver.best_painter_response(state, marked, variant)
        else:
            colored = painter.respond(game, state, marked)
            why = painter_response_error(g, state, marked, colored)
            if why:
                raise StrategyMoveError(painter.name, i, state, colored, why)
        state = apply_round(g, state, marked, colored, variant)
        history.append(state)
        tr.rounds.append(Round(marked, colored, state))
    tr.verdict = terminal(g, state, variant)
    return tr


def painter_strategy_never_loses(g: Graph, f, variant: Variant, painter: PainterStrategy) -> bool:
    """Check ``painter`` against every legal Lister move sequence."""
    game = Game(g, tuple(f), variant)
    painter.check(game)
    seen: dict[GameState, bool] = {}

    def safe(state: GameState) -> bool:
        over = terminal(g, state, variant)
        if over is not None:
            return over is Verdict.PAINTER_WINS
        hit = seen.get(state)
        if hit is not None:
            return hit
        ok = True
        for marked in lister_moves(g, state, variant):
            x = painter.respond(game, state, marked)
            if painter_response_error(g, state, marked, x):
                raise StrategyMoveError(painter.name, -1, state, x, painter_response_error(g, state, marked, x))
            if not safe(apply_round(g, state, marked, x)):
                ok = False
                break
        seen[state] = ok
        return ok

    return safe(initial_state(g, f, variant))


def lister_strategy_always_wins(
    g: Graph, f, variant: Variant, lister: ListerStrategy, maximal: bool = False
) -> bool:
    """Check ``lister`` against every Painter answer (every independent set unless ``maximal``)."""
    game = Game(g, tuple(f), variant)
    lister.check(game)

    def wins(history: list[GameState]) -> bool:
        state = history[-1]
        over = terminal(g, state, variant)
        if over is not None:
            return over is Verdict.LISTER_WINS
        marked = lister.move(game, history)
        why = lister_move_error(g, state, marked, variant)
        if why:
            raise StrategyMoveError(lister.name, len(history), state, marked, why)
        avail = marked & ~state.colored
        answers = painter_responses(g, state, marked, True) if maximal else independent_subsets(g, avail)
        return all(wins(history + [apply_round(g, state, marked, x)]) for x in answers)

    return wins([initial_state(g, f, variant)])
