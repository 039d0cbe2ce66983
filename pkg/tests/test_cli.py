from __future__ import annotations

import io
import json

import pytest

from paintability.cli import main, parse_family
from paintability.graph import make_cycle, to_graph6, to_edge_list
from paintability.referee import Transcript, replay
from paintability.game import Verdict


def run(argv, stdin=""):
    out = io.StringIO()
    code = main(argv, io.StringIO(stdin), out)
    return code, out.getvalue()


@pytest.mark.parametrize("argv, expected", [
    (["solve", "--family", "cycle:5", "--f", "uniform:2", "--variant", "exact:5"], {"verdict": "ListerWins"}),
    (["solve", "--family", "k2n:4", "--f", "uniform:2", "--compute", "M"], {"M": 7}),
    (["solve", "--family", "path:3", "--f", "fdoubleprime", "--compute", "q"], {"q": 2}),
    (["solve", "--family", "cycle:4", "--compute", "q"], {"q": "Survives"}),
    (["solve", "--family", "theta:2,2,4", "--compute", "m"], {"m": 3}),
    (["solve", "--family", "dumbbell:4,1,4", "--compute", "M"], {"M": 9}),
])
def test_solve(argv, expected):
    code, out = run(argv)
    assert code == 0
    assert json.loads(out) == expected


def test_solve_text_and_sources(tmp_path):
    code, out = run(["solve", "--graph6", "Bw", "--variant", "exact:3", "--output", "text"])
    assert (code, out) == (0, "verdict=ListerWins\n")
    f = tmp_path / "c5.txt"
    f.write_text(to_edge_list(make_cycle(5)))
    assert json.loads(run(["solve", "--file", str(f), "--compute", "M"])[1]) == {"M": 5}
    code, out = run(["solve", "--graph6", "-", "--compute", "m"], stdin="Bw\nCr\n")
    lines = [json.loads(x) for x in out.splitlines()]
    assert lines == [{"graph6": "Bw", "m": 2}, {"graph6": "Cr", "m": None}]


@pytest.mark.parametrize("argv", [
    ["solve", "--family", "foo:3"],
    ["solve", "--family", "cycle:5", "--bogus"],
    ["solve", "--family", "theta:2,2"],
    ["solve", "--family", "cycle:5", "--max-n", "12"],
    ["solve"],
    ["verify", "nonsense"],
    ["frobnicate"],
])
def test_usage_errors_exit_64(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        code = main(argv, io.StringIO(), io.StringIO())
        raise SystemExit(code)
    assert exc.value.code == 64


@pytest.mark.parametrize("argv", [
    ["solve", "--graph6", "!!"],
    ["solve", "--family", "complete:11"],
    ["solve", "--family", "cycle:5", "--f", "uniform:7"],
    ["solve", "--family", "cycle:5", "--variant", "exact:x"],
    ["solve", "--family", "cycle:7", "--variant", "exact:8", "--memo-capacity", "3"],
    ["scan", "--nmax", "7"],
])
def test_precondition_errors_exit_2(argv):
    assert run(argv)[0] == 2


def test_verify_suite():
    code, out = run(["verify", "cycle-theorem"])
    assert code == 0 and out.startswith("PASS cycle-theorem")
    code, out = run(["verify", "feasibility-oracle", "--output", "json"])
    assert code == 0
    first = json.loads(out.splitlines()[0])
    assert first["suite"] == "feasibility-oracle" and first["match"] is True


def test_scan():
    code, out = run(["scan", "--nmax", "4", "--family-only", "theta"])
    assert code == 0
    assert "lose={2,3,4,5}" in out and "all contiguous up to n_max=4" in out
    code, out = run(["scan", "--nmax", "5", "--output", "json"])
    rows = [json.loads(x) for x in out.splitlines()[:-1]]
    assert len(rows) == 31 and all("contiguous" in r for r in rows)


def test_play_painter_wins_c4_with_partite_sets(tmp_path):
    path = tmp_path / "t.txt"
    code, out = run(
        ["play", "--family", "cycle:4", "--variant", "exact:2", "--role", "painter", "--transcript", str(path)],
        stdin="0 1\n0 2\n1 3\n",
    )
    assert code == 0
    assert "illegal: not independent" in out
    assert "verdict=PainterWins" in out
    tr = Transcript.from_text(path.read_text())
    assert replay(tr) is Verdict.PAINTER_WINS


def test_play_lister_reprompts_and_eof(tmp_path):
    path = tmp_path / "t.txt"
    code, out = run(
        ["play", "--family", "cycle:5", "--variant", "exact:2", "--role", "lister", "--transcript", str(path)],
        stdin="0 1\n9\nx\n0 1 2 3 4\n",
    )
    assert code == 0
    assert "illegal: remaining tokens cannot fill the remaining rounds exactly" in out
    assert "outside the graph" in out and "could not parse" in out
    assert "session aborted" in out
    tr = Transcript.from_text(path.read_text())
    assert len(tr.rounds) == 1 and tr.verdict is None


def test_play_lister_wins_triangle(tmp_path):
    # two rounds force the whole triangle to be marked twice
    path = tmp_path / "t.txt"
    code, out = run(
        ["play", "--family", "cycle:3", "--variant", "exact:2", "--role", "lister", "--transcript", str(path)],
        stdin="0 1 2\n0 1 2\n",
    )
    assert code == 0 and "verdict=ListerWins" in out


def test_parse_family():
    assert parse_family("cycle:7") == make_cycle(7)
    assert to_graph6(parse_family("k2n:3")) == to_graph6(parse_family("theta:2,2,2"))
