"""Command-line interface: solve, verify, scan and play."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence, TextIO

from .classifiers import FAMILIES, interval_scan
from .enumeration import MAX_ENUMERATION_N
from .game import (
    GameState,
    apply_round,
    format_set,
    initial_state,
    lister_move_error,
    painter_response_error,
    parse_tokens,
    parse_variant,
    terminal,
)
from .graph import (
    Graph,
    GraphError,
    from_edge_list,
    from_graph6,
    make_complete,
    make_cycle,
    make_dumbbell,
    make_K2n,
    make_path,
    make_tadpole,
    make_theta,
    mask_of,
    to_graph6,
)
from .referee import Round, Transcript
from .solver import DEFAULT_MAX_N, MemoCapacityError, Solver, compute_M, compute_m, compute_q
from .verify import SUITE_NAMES, run_suite

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_PRECONDITION = 2
EXIT_USAGE = 64

_FAMILY_BUILDERS = {
    "path": (make_path, 1),
    "cycle": (make_cycle, 1),
    "complete": (make_complete, 1),
    "k2n": (make_K2n, 1),
    "theta": (make_theta, 3),
    "dumbbell": (make_dumbbell, 3),
    "tadpole": (make_tadpole, 2),
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def parse_family(spec: str) -> Graph:
    """Build a named graph from ``name:a,b,...`` (for example ``theta:2,2,4``)."""
    name, _, args = spec.partition(":")
    name = name.strip().lower()
    if name not in _FAMILY_BUILDERS:
        raise UsageError(f"unknown family {name!r}; known: {', '.join(sorted(_FAMILY_BUILDERS))}")
    build, arity = _FAMILY_BUILDERS[name]
    try:
        nums = [int(x) for x in args.split(",")] if args.strip() else []
    except ValueError:
        raise UsageError(f"family parameters must be integers: {spec!r}") from None
    if len(nums) != arity:
        raise UsageError(f"family {name} takes {arity} parameter(s)")
    return build(*nums)


def _read_graphs(args: argparse.Namespace, stdin: TextIO) -> list[Graph]:
    if args.family:
        return [parse_family(args.family)]
    if args.graph6:
        if args.graph6 == "-":
            return [from_graph6(line) for line in stdin.read().splitlines() if line.strip()]
        return [from_graph6(args.graph6)]
    if args.file == "-" or args.file.endswith((".g6", ".graph6")):
        text = stdin.read() if args.file == "-" else Path(args.file).read_text()
        return [from_graph6(line) for line in text.splitlines() if line.strip()]
    return [from_edge_list(Path(args.file).read_text())]


def _add_graph_source(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--family", help="named family, e.g. cycle:7, theta:2,2,4, dumbbell:4,1,4, k2n:4, tadpole:3,5, path:6")
    src.add_argument("--graph6", help="graph6 string, or - to read one per line from stdin")
    src.add_argument("--file", help="edge-list file (.g6 files hold graph6 lines), or - for graph6 lines on stdin")
    p.add_argument("--f", default="uniform:2", help="token spec: uniform:k, fprime:v, fstar, fdoubleprime, or a comma list")
    p.add_argument("--variant", default="unbounded", help="unbounded, cost or exact:<t>")


def _caps(p: argparse.ArgumentParser) -> None:
    p.add_argument("--max-n", type=int, default=DEFAULT_MAX_N)
    p.add_argument("--memo-capacity", type=int, default=None)
    p.add_argument("--i-know-this-is-big", action="store_true", help="lift the default size caps")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="paintability", description="Exact solver for online list-colouring games.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("solve", help="solve one game or compute m, M or q")
    _add_graph_source(p)
    p.add_argument("--compute", choices=("m", "M", "q"))
    _caps(p)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--output", choices=("json", "text"), default="json")

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", help=", ".join(SUITE_NAMES))
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--output", choices=("json", "text"), default="text")

    p = sub.add_parser("scan", help="which round counts lose, and is that set an interval?")
    p.add_argument("--nmax", type=int, required=True)
    p.add_argument("--family-only", choices=FAMILIES)
    p.add_argument("--f", action="append", dest="f_specs", help="token spec, repeatable; fprime:* means every f'")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--output", choices=("json", "text"), default="text")
    p.add_argument("--i-know-this-is-big", action="store_true")

    p = sub.add_parser("play", help="play against the optimal engine")
    _add_graph_source(p)
    p.add_argument("--role", choices=("painter", "lister"), required=True)
    p.add_argument("--transcript", default="transcript.txt")
    _caps(p)
    return parser


def _check_caps(args: argparse.Namespace) -> None:
    if args.max_n < 1 or (args.memo_capacity is not None and args.memo_capacity < 1):
        raise UsageError("caps must be positive")
    if args.max_n > DEFAULT_MAX_N and not args.i_know_this_is_big:
        raise UsageError(f"--max-n above {DEFAULT_MAX_N} needs --i-know-this-is-big")


def _solve_one(g: Graph, args: argparse.Namespace) -> dict:
    f = parse_tokens(args.f, g)
    solver = Solver(g, f, max_n=args.max_n, memo_capacity=args.memo_capacity)
    if args.compute == "m":
        return {"m": compute_m(g, f, solver)}
    if args.compute == "M":
        return {"M": compute_M(g, f, solver)}
    if args.compute == "q":
        q = compute_q(g, f, solver)
        return {"q": q if isinstance(q, int) else str(q)}
    return {"verdict": str(solver.solve(parse_variant(args.variant)))}


def _solve_task(item: tuple[Graph, argparse.Namespace]) -> dict:
    return _solve_one(*item)


def cmd_solve(args: argparse.Namespace, stdin: TextIO, out: TextIO) -> int:
    _check_caps(args)
    parse_variant(args.variant)
    graphs = _read_graphs(args, stdin)
    if args.workers > 1 and len(graphs) > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=args.workers) as pool:
            results = list(pool.map(_solve_task, [(g, args) for g in graphs]))
    else:
        results = [_solve_one(g, args) for g in graphs]
    for g, res in zip(graphs, results):
        if len(graphs) > 1:
            res = {"graph6": to_graph6(g), **res}
        if args.output == "json":
            out.write(json.dumps(res, sort_keys=True) + "\n")
        else:
            out.write(" ".join(f"{k}={v}" for k, v in res.items()) + "\n")
    return EXIT_OK


def cmd_verify(args: argparse.Namespace, out: TextIO) -> int:
    if args.suite not in SUITE_NAMES:
        raise UsageError(f"unknown suite {args.suite!r}; known: {', '.join(SUITE_NAMES)}")
    results = run_suite(args.suite, args.workers)
    for res in results:
        if args.output == "json":
            out.write(res.json_lines())
        out.write(res.summary() + "\n")
    return EXIT_OK if all(r.ok for r in results) else EXIT_MISMATCH


def cmd_scan(args: argparse.Namespace, out: TextIO) -> int:
    specs = tuple(args.f_specs or ("uniform:2",))
    if args.nmax < 1:
        raise UsageError("--nmax must be positive")
    if args.nmax > MAX_ENUMERATION_N:
        raise ValueError(f"enumeration stops at n = {MAX_ENUMERATION_N}")
    report = interval_scan(args.nmax, specs, args.family_only, args.workers, args.i_know_this_is_big)
    if args.output == "json":
        out.write(report.json_lines())
    else:
        for row in report.rows:
            lose = "{" + ",".join(map(str, row.losing)) + "}"
            out.write(f"{row.graph6:<10} n={row.n} f={','.join(map(str, row.f))} lose={lose} {row.status}\n")
    out.write(report.summary(args.nmax) + "\n")
    return EXIT_OK


# ---------------------------------------------------------------------------
# Interactive play
# ---------------------------------------------------------------------------


def _describe(g: Graph, state: GameState) -> str:
    left = "-" if state.rounds_left is None else str(state.rounds_left)
    return f"colored={format_set(state.colored)} tokens={list(state.tokens)} rounds_left={left}"


def _ask(prompt: str, inp: TextIO, out: TextIO) -> int | None:
    out.write(prompt)
    out.flush()
    line = inp.readline()
    if not line:
        return None
    try:
        return mask_of(int(x) for x in line.replace(",", " ").split())
    except ValueError:
        return -1


def cmd_play(args: argparse.Namespace, inp: TextIO, out: TextIO) -> int:
    _check_caps(args)
    if "-" in (args.graph6, args.file):
        raise UsageError("play reads moves from stdin, so the graph cannot come from stdin")
    graphs = _read_graphs(args, inp)
    if len(graphs) != 1:
        raise UsageError("play needs exactly one graph")
    g = graphs[0]
    f = parse_tokens(args.f, g)
    variant = parse_variant(args.variant)
    solver = Solver(g, f, max_n=args.max_n, memo_capacity=args.memo_capacity)
    state = initial_state(g, f, variant)
    transcript = Transcript(g, f, variant)
    out.write(f"graph {to_graph6(g)} with edges {g.edges()}; f={list(f)}; variant {variant}\n")
    out.write("enter vertices separated by spaces (an empty line is the empty set)\n")
    aborted = False
    while terminal(g, state, variant) is None:
        out.write(_describe(g, state) + "\n")
        if args.role == "painter":
            marked = solver.best_lister_move(state, variant)
            out.write(f"marked={format_set(marked)}\n")
            while True:
                x = _ask("X> ", inp, out)
                if x is None:
                    aborted = True
                    break
                why = "could not parse vertex list" if x < 0 else painter_response_error(g, state, marked, x)
                if not why:
                    break
                out.write(f"illegal: {why}\n")
        else:
            while True:
                marked = _ask("V> ", inp, out)
                if marked is None:
                    aborted = True
                    break
                if marked < 0:
                    why = "could not parse vertex list"
                elif marked & ~g.full:
                    why = "marked set contains vertices outside the graph"
                else:
                    why = lister_move_error(g, state, marked, variant)
                if not why:
                    break
                out.write(f"illegal: {why}\n")
            if not aborted:
                x = solver.best_painter_response(state, marked, variant)
                out.write(f"painter colors {format_set(x)}\n")
        if aborted:
            break
        state = apply_round(g, state, marked, x, variant)
        transcript.rounds.append(Round(marked, x, state))
    transcript.verdict = None if aborted else terminal(g, state, variant)
    Path(args.transcript).write_text(transcript.to_text())
    if aborted:
        out.write(f"\nsession aborted; transcript saved to {args.transcript}\n")
    else:
        out.write(f"{_describe(g, state)}\nverdict={transcript.verdict}\ntranscript saved to {args.transcript}\n")
    return EXIT_OK


def main(argv: Sequence[str] | None = None, stdin: TextIO | None = None, stdout: TextIO | None = None) -> int:
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "solve":
            return cmd_solve(args, stdin, stdout)
        if args.command == "verify":
            return cmd_verify(args, stdout)
        if args.command == "scan":
            return cmd_scan(args, stdout)
        return cmd_play(args, stdin, stdout)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"paintability: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (GraphError, ValueError, MemoCapacityError, OSError) as exc:
        print(f"paintability: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
