import csv
from pathlib import Path

import pytest

from cdcsolve.cli import main
from cdcsolve.fileformat import read_pbm

NETWORKS = Path(__file__).resolve().parent.parent / "networks"


def net(name):
    return str(NETWORKS / f"{name}.cdc")


def test_check_consistent(capsys):
    assert main(["check", net("running_example")]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[0] == "consistent"
    assert out[1] == "frame 5x5"
    assert out[2].startswith("mbr v1 ")
    assert len(out) == 1 + 1 + 3 + 5


def test_check_inconsistent(capsys):
    assert main(["check", net("composition_counterexample")]) == 1
    captured = capsys.readouterr()
    assert captured.out.strip() == "inconsistent"
    assert "component-missing(v1)" in captured.err


@pytest.mark.parametrize("cmd", ["check", "solve", "simplify"])
def test_bad_input_exits_2(cmd, tmp_path, capsys):
    bad = tmp_path / "bad.cdc"
    bad.write_text("cdc 2\n1 2 000/000/000\n")
    assert main([cmd, str(bad)]) == 2
    assert "line 2" in capsys.readouterr().err
    assert main([cmd, str(tmp_path / "nope.cdc")]) == 2


def test_check_requires_basic_network(capsys):
    assert main(["check", net("west_or_east")]) == 2
    assert "disjunctive" in capsys.readouterr().err


def test_unknown_command_exits_2(capsys):
    assert main(["frobnicate"]) == 2
    assert main([]) == 2


def test_pbm_output_and_figure(tmp_path, capsys):
    code = main(["check", net("running_example"), "--out", str(tmp_path), "--format", "pbm", "--figure", "fig.png"])
    assert code == 0
    files = sorted(p.name for p in tmp_path.iterdir())
    assert files == ["fig.png", "v1.pbm", "v2.pbm", "v3.pbm"]
    assert (tmp_path / "fig.png").read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"
    assert read_pbm((tmp_path / "v1.pbm").read_text()).frame.shape == (5, 5)


def test_ascii_to_directory(tmp_path, capsys):
    assert main(["check", net("running_example"), "--out", str(tmp_path)]) == 0
    assert len((tmp_path / "solution.txt").read_text().splitlines()) == 5


def test_solve(capsys):
    assert main(["solve", net("west_or_east")]) == 0
    out = capsys.readouterr().out
    assert out.startswith("satisfiable\ncdc 2\n")
    assert main(["solve", net("unsatisfiable")]) == 1
    assert capsys.readouterr().out.strip() == "unsatisfiable"


def test_simplify(capsys, tmp_path):
    assert main(["simplify", net("ring"), "--figure", str(tmp_path / "ring.png")]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[1] == "frame 15x15"
    assert (tmp_path / "ring.png").exists()
    assert main(["simplify", net("unsatisfiable")]) == 1


def test_simplify_rejects_cdc_d(tmp_path, capsys):
    f = tmp_path / "d.cdc"
    f.write_text("cdc-d 2\n1 2 000/010/000\n2 1 111/101/111\n")
    assert main(["simplify", str(f)]) == 2


def test_tables_compose(tmp_path, capsys):
    out = tmp_path / "c.csv"
    assert main(["tables", "compose", "000/010/000", "000/010/000", "--out", str(out)]) == 0
    rows = list(csv.reader(out.open()))
    assert rows[0] == ["alpha", "beta", "gamma"]
    assert ["000/010/000", "000/010/000", "000/010/000"] in rows
    assert main(["tables", "compose", "000/010/000"]) == 2
    assert main(["tables", "compose", "101/000/000", "000/010/000"]) == 2
    assert main(["tables", "compose", "1/2/3", "000/010/000"]) == 2


@pytest.mark.slow
def test_tables_converses(tmp_path, capsys):
    fig = tmp_path / "h.png"
    assert main(["tables", "converses", "--out", str(tmp_path / "t.csv"), "--figure", str(fig)]) == 0
    out = capsys.readouterr().out
    assert "pairs=757" in out
    assert fig.exists()
    assert len((tmp_path / "t.csv").read_text().splitlines()) == 758
    assert main(["tables", "converses", "000/010/000"]) == 2


def test_tables_compose_contains_known_gamma(capsys):
    assert main(["tables", "compose", "000/100/100", "001/001/000"]) == 0
    rows = capsys.readouterr().out.splitlines()
    assert "000/100/100,001/001/000,101/101/111" in rows
    assert rows[-1] == f"relations={len(rows) - 2}"


def test_missing_pair_exits_2(tmp_path, capsys):
    f = tmp_path / "m.cdc"
    f.write_text("cdc 2\n1 2 000/010/000\n")
    assert main(["check", str(f)]) == 2
    assert main(["solve", str(f)]) == 0


def test_simplify_running_example_frame(capsys):
    assert main(["simplify", net("running_example")]) == 0
    assert capsys.readouterr().out.splitlines()[1] == "frame 25x25"
