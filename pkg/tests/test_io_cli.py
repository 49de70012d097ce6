import json
import random

import pytest

import oracles
from clutterlab import cli
from clutterlab.clutters import new_clutter, q6
from clutterlab.cuboids import ZeroOneSet
from clutterlab.errors import ParseError
from clutterlab.graphs import Graph, petersen
from clutterlab.io import (format_clutter, format_cuboid, format_graph, format_matroid,
                           format_packing, load_clutter, load_graph, load_matroid, parse_clutter,
                           parse_graph, parse_matroid)
from clutterlab.matroids import fano
from clutterlab.pg import pg_packing


@pytest.mark.parametrize("seed", range(20))
def test_clutter_round_trip(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 8)
    c = new_clutter(n, oracles.random_clutter(rng, n, 8))
    back, pairs = parse_clutter(format_clutter(c))
    assert back == c and pairs is None


def test_cuboid_format_carries_pairs():
    c, pairs = parse_clutter(format_cuboid(ZeroOneSet.from_strings(["011", "101", "110", "000"])))
    assert c == q6() and pairs == ((1, 2), (3, 4), (5, 6))


def test_graph_and_matroid_round_trip():
    g = petersen()
    assert parse_graph(format_graph(g)) == g
    assert parse_graph("p 2 1  # comment\n\ne 1 1\n") == Graph(2, ((1, 1),))
    assert parse_matroid(format_matroid(fano())) == fano()


def test_format_packing():
    text = format_packing(pg_packing(1))
    assert "value 2" in text and "denominator 2" in text and ": 1/2" in text


@pytest.mark.parametrize("text,line", [
    ("", 1),
    ("clutter x\n", 1),
    ("clutter 3\n1 2\n1 9\n", 3),
    ("clutter 3\n1 a\n", 2),
    ("# c\nclutter 2\npairs 1\n", 3),
    ("nope 3\n", 1),
])
def test_clutter_parse_errors_carry_line(text, line):
    with pytest.raises(ParseError) as exc:
        parse_clutter(text)
    assert exc.value.line == line


def test_clutter_parse_semantic_errors():
    with pytest.raises(ParseError):
        parse_clutter("clutter 3\n1 2\n1 2 3\n")
    with pytest.raises(ParseError):
        parse_clutter("clutter 2\n1 2\npairs 1 2\n")


@pytest.mark.parametrize("text,line", [
    ("p 3\n", 1),
    ("p 3 1\ne 1 4\n", 2),
    ("p 3 1\nx 1 2\n", 2),
])
def test_graph_parse_errors(text, line):
    with pytest.raises(ParseError) as exc:
        parse_graph(text)
    assert exc.value.line == line
    with pytest.raises(ParseError):
        parse_graph("p 3 2\ne 1 2\n")


def test_matroid_parse_errors():
    with pytest.raises(ParseError) as exc:
        parse_matroid("matroid 3\n0102\n")
    assert exc.value.line == 2


def test_loaders(tmp_path):
    c, pairs = load_clutter("q6")
    assert c == q6() and pairs == ((1, 2), (3, 4), (5, 6))
    f = tmp_path / "c.txt"
    f.write_text("clutter 2\n1\n2\n")
    assert load_clutter(str(f))[0] == new_clutter(2, [{1}, {2}])
    assert load_graph("petersen") == petersen()
    assert load_matroid("fano") == fano()
    with pytest.raises(ParseError):
        load_clutter("no-such-thing")


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_cli_analyze_text_and_json(capsys):
    code, out, _ = run(capsys, "analyze", "q6")
    assert code == 0 and "tau: 2" in out and "ideal: yes" in out
    code, out, _ = run(capsys, "--json", "analyze", "q6")
    r = json.loads(out)
    assert code == 0 and list(r)[:3] == ["input", "n", "members"]
    assert r["tau"] == 2 and r["nu"] == 1 and r["chi"] == 2 and r["binary"] is True


def test_cli_cover_exit_codes(capsys):
    code, out, _ = run(capsys, "--json", "cover", "petersen", "--k", "2")
    assert code == 2 and json.loads(out)["cover"] is None
    code, out, _ = run(capsys, "--json", "cover", "petersen", "--k", "3")
    assert code == 0 and json.loads(out)["verified"] is True


def test_cli_errors_exit_one(capsys, tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("clutter 2\n1 5\n")
    code, _, err = run(capsys, "analyze", str(bad))
    assert code == 1 and "line 2" in err
    code, _, err = run(capsys, "seven-four", "triangle", "missing-graph")
    assert code == 1 and "missing-graph" in err


def test_cli_seven_four_and_bridge(capsys, tmp_path):
    code, out, _ = run(capsys, "--json", "seven-four", "k4")
    r = json.loads(out)
    assert code == 0 and len(r["cycles"]) == 7 and set(r["multiplicity"]) == {4}
    g = tmp_path / "g.txt"
    g.write_text("p 2 1\ne 1 2\n")
    code, _, err = run(capsys, "seven-four", str(g))
    assert code == 1 and "bridge" in err


def test_cli_pack_and_embed(capsys):
    code, out, _ = run(capsys, "--json", "pack", "q6")
    r = json.loads(out)
    assert code == 0 and r["value"] == "2" and r["denominator"] == 2
    code, _, err = run(capsys, "pack", "t30")
    assert code == 1 and "assume" in err
    code, out, _ = run(capsys, "--json", "embed", "q6")
    assert code == 0 and json.loads(out)["geometry"] == "PG(1,2)"
    code, out, _ = run(capsys, "embed", "triangle")
    assert code == 2 and "none" in out


def test_cli_blocker_and_batch(capsys):
    code, out, _ = run(capsys, "--json", "--jobs", "2", "blocker", "q6", "singletons")
    r = json.loads(out)
    assert code == 0 and len(r["results"]) == 2
    assert len(r["results"][0]["members"]) == 7


@pytest.mark.parametrize("name", ["q6", "fano", "wagner"])
def test_cli_demos(capsys, name):
    code, out, _ = run(capsys, "--json", "demo", name)
    r = json.loads(out)
    assert code == 0 and r["demo"] == name
    if name != "q6":
        assert r["cover_verified"] is True


def test_cli_demo_pg(capsys):
    code, out, _ = run(capsys, "--json", "demo", "pg", "3")
    r = json.loads(out)
    assert code == 0 and r["cocycles"] == 8 and r["cocycle_sizes"] == [4]
    assert r["packing_denominator"] == 4 and len(r["witness"]) == 4
    code, _, _ = run(capsys, "demo", "pg")
    assert code == 1


def test_cli_version(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["--version"])
    assert exc.value.code == 0


def test_cli_t30_analyze_and_empty_file(capsys, tmp_path):
    code, out, _ = run(capsys, "--json", "analyze", "t30")
    r = json.loads(out)
    assert code == 0 and r["intersecting"]["3-wise"] and not r["intersecting"]["4-wise"]
    assert r["binary"] is True and r["ideal"] == "skipped: cap"
    empty = tmp_path / "empty.txt"
    empty.write_text("")
    code, _, err = run(capsys, "analyze", str(empty))
    assert code == 1 and "empty" in err


def test_cli_output_file_is_deterministic(capsys, tmp_path):
    a, b = tmp_path / "a.txt", tmp_path / "b.txt"
    assert cli.main(["--output", str(a), "seven-four", "petersen"]) == 0
    assert cli.main(["--output", str(b), "seven-four", "petersen"]) == 0
    assert a.read_bytes() == b.read_bytes() and b"verified: yes" in a.read_bytes()
    assert capsys.readouterr().out == ""
    assert cli.main(["--jobs", "0", "blocker", "q6"]) == 1


def _no_floats(x):
    if isinstance(x, float):
        return False
    if isinstance(x, dict):
        return all(_no_floats(v) for v in x.values())
    if isinstance(x, list):
        return all(_no_floats(v) for v in x)
    return True


@pytest.mark.parametrize("argv", [["analyze", "q6"], ["pack", "q6"], ["demo", "pg", "2"],
                                  ["demo", "petersen"], ["seven-four", "k4"]])
def test_cli_output_has_no_floats(capsys, argv):
    code, out, _ = run(capsys, "--json", *argv)
    assert code == 0 and _no_floats(json.loads(out))
