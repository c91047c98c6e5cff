import json
import subprocess
import sys

import pytest

from tokenslide.cli import run
from tokenslide.instance import fixture_text, make_instance, parse_instance, parse_witness, serialize_instance


@pytest.fixture
def fixtures(tmp_path):
    paths = {}
    for name in ("fig4a", "fig4b", "fig4c"):
        p = tmp_path / f"{name}.tsd"
        p.write_text(fixture_text(name))
        paths[name] = str(p)
    return paths


def write(tmp_path, name, inst):
    p = tmp_path / name
    p.write_text(serialize_instance(inst))
    return str(p)


def test_solve_cycle_yes(fixtures, capsys):
    assert run(["solve", "--algo", "cycle", fixtures["fig4c"]]) == 0
    assert capsys.readouterr().out == "yes\n"


def test_solve_default_no(fixtures, capsys):
    assert run(["solve", fixtures["fig4b"]]) == 1
    assert capsys.readouterr().out == "no\n"


def test_solve_exact_witness(fixtures, capsys):
    assert run(["solve", "--algo", "exact", "--witness", fixtures["fig4c"]]) == 0
    answer, moves = parse_witness(capsys.readouterr().out)
    assert answer and len(moves) == 4


@pytest.mark.parametrize("name", ["fig4a", "fig4b", "fig4c"])
def test_auto_and_exact_exit_codes_agree(fixtures, name):
    assert run(["solve", fixtures[name]]) == run(["solve", "--algo", "exact", fixtures[name]])


def test_usage_and_parse_errors(tmp_path, fixtures, capsys):
    assert run([]) == 2
    assert run(["solve", "--algo", "magic", fixtures["fig4c"]]) == 2
    bad = tmp_path / "bad.tsd"
    bad.write_text("p tsd 2 1\na 1 x\ns 0\nt 0\n")
    assert run(["solve", str(bad)]) == 2
    assert "line 2" in capsys.readouterr().err
    assert run(["solve", str(tmp_path / "missing.tsd")]) == 2
    assert run(["solve", "--algo", "cograph", fixtures["fig4c"]]) == 2


def test_state_limit_exit_code(fixtures):
    assert run(["solve", "--algo", "exact", "--max-states", "2", fixtures["fig4c"]]) == 3


def test_reduce_lift_project_round_trip(tmp_path, capsys):
    src = write(tmp_path, "in.tsd", make_instance(4, [(1, 2), (2, 3), (3, 4)], [1, 3], [2, 4]))
    out = str(tmp_path / "out.tsd")
    for kind in ("planar", "bipartite"):
        assert run(["reduce", "--kind", kind, "--policy", "seed:3", src, out]) == 0
        assert (tmp_path / "out.map").exists()
        capsys.readouterr()
        # source instances are read as undirected, so 3 -> 4 needs no arc direction
        wit = tmp_path / "orig.wit"
        wit.write_text("yes 2\n3 4\n1 2\n")
        assert run(["lift", "--map", str(tmp_path / "out.map"), src, str(wit)]) == 0
        lifted = tmp_path / "lifted.wit"
        lifted.write_text(capsys.readouterr().out)
        assert run(["project", "--map", str(tmp_path / "out.map"), out, str(lifted)]) == 0
        answer, moves = parse_witness(capsys.readouterr().out)
        assert answer and moves[-1].head in (2, 4)


def test_lift_of_a_no_witness(tmp_path, capsys):
    src = write(tmp_path, "in.tsd", make_instance(2, [(1, 2)], [1], [2]))
    out = str(tmp_path / "out.tsd")
    assert run(["reduce", "--kind", "bipartite", src, out, "--map", str(tmp_path / "m.map")]) == 0
    wit = tmp_path / "no.wit"
    wit.write_text("no\n")
    assert run(["lift", "--map", str(tmp_path / "m.map"), src, str(wit)]) == 1
    assert capsys.readouterr().out == "no\n"


def test_reduce_reports_warnings_and_bad_inputs(tmp_path, capsys):
    star = write(tmp_path, "star.tsd", make_instance(5, [(1, 2), (1, 3), (1, 4), (1, 5)], [2, 3, 4, 5], [2, 3, 4, 5]))
    assert run(["reduce", "--kind", "planar", star, str(tmp_path / "o.tsd")]) == 0
    assert "warning" in capsys.readouterr().err
    tri = write(tmp_path, "tri.tsd", make_instance(3, [(1, 2), (2, 3), (3, 1)], [1], [2]))
    assert run(["reduce", "--kind", "bipartite", tri, str(tmp_path / "o.tsd")]) == 2
    assert run(["reduce", "--kind", "split", tri, str(tmp_path / "o.tsd"), "--policy", "coin"]) == 2


def test_invalid_projection_is_an_internal_failure(tmp_path, capsys):
    # path 1-2-4-3: the reduced oracle witness projects to a slide onto a neighbor of a token
    src = write(tmp_path, "in.tsd", make_instance(4, [(1, 2), (4, 2), (4, 3)], [1, 4], [2, 3]))
    red = str(tmp_path / "red.tsd")
    assert run(["reduce", "--kind", "planar", src, red]) == 0
    assert run(["solve", "--algo", "exact", "--witness", red]) == 0
    wit = tmp_path / "red.wit"
    wit.write_text(capsys.readouterr().out)
    assert run(["project", "--map", str(tmp_path / "red.map"), red, str(wit)]) == 4
    assert "internal error" in capsys.readouterr().err


def test_gen_is_deterministic(tmp_path, capsys):
    assert run(["gen", "--class", "cycle", "--n", "7", "--k", "2", "--seed", "5"]) == 0
    first = capsys.readouterr().out
    out = tmp_path / "g.tsd"
    assert run(["gen", "--class", "cycle", "--n", "7", "--k", "2", "--seed", "5", "-o", str(out)]) == 0
    assert out.read_text() == first
    assert parse_instance(first).n == 7
    assert run(["gen", "--class", "cycle", "--n", "2", "--k", "1", "--seed", "5"]) == 2


def test_verify_prints_a_json_report(tmp_path, capsys):
    report = tmp_path / "r.json"
    code = run(["verify", "--mode", "solver", "--subject", "cograph", "--trials", "20", "--seed", "1", "--nmax", "6", "--report", str(report)])
    assert code == 0
    data = json.loads(capsys.readouterr().out)
    assert data["mismatch_count"] == 0 and data["trials_run"] == 20
    assert json.loads(report.read_text()) == data
    assert run(["verify", "--mode", "solver", "--subject", "nope", "--trials", "1", "--seed", "0"]) == 2


def test_verify_exits_1_on_mismatches(tmp_path, capsys):
    args = ["verify", "--mode", "solver", "--subject", "cycle", "--class", "path_forest", "--trials", "3", "--seed", "0", "--nmin", "3", "--nmax", "4"]
    assert run(args + ["--out-dir", str(tmp_path)]) == 1
    data = json.loads(capsys.readouterr().out)
    assert data["mismatch_count"] == len(data["mismatch_paths"]) > 0


def test_module_entry_point(fixtures):
    proc = subprocess.run([sys.executable, "-m", "tokenslide", "solve", fixtures["fig4a"]], capture_output=True, text=True)
    assert proc.returncode == 1 and proc.stdout == "no\n"
