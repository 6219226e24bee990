import subprocess
import sys

import pytest

from linforest.cli import main
from linforest.generator import gen_cycle, gen_quadrangulation
from linforest.instance import Instance, format_instance, parse_coloring
from linforest.plane_graph import format_plane_graph, parse_plane_graph


@pytest.fixture
def c4_file(tmp_path):
    p = tmp_path / "c4.graph"
    p.write_text(format_plane_graph(gen_cycle(4)))
    return p


def test_partition_c4(tmp_path, c4_file):
    out = tmp_path / "c4.col"
    dot = tmp_path / "c4.dot"
    trace = tmp_path / "c4.trace"
    code = main(["partition", str(c4_file), "-o", str(out), "--verify", "--dot", str(dot), "--trace", str(trace)])
    assert code == 0
    phi = parse_coloring(out.read_text())
    assert sorted(phi.values()) == [1, 2, 2, 2]
    assert dot.read_text().startswith("graph G {")
    assert "Boundary4Cycle" in trace.read_text()


def test_triangle_is_rejected(tmp_path, capsys):
    p = tmp_path / "tri.graph"
    p.write_text("planegraph 3\nrot 0: 1 2\nrot 1: 2 0\nrot 2: 0 1\n")
    assert main(["partition", str(p)]) == 1
    assert "triangle 0 1 2" in capsys.readouterr().err


def test_corrupt_rot_line_reports_line(tmp_path, capsys):
    p = tmp_path / "bad.graph"
    p.write_text("planegraph 4\nrot 0: 1 3\nrot 1: 0 two\nrot 2: 1 3\nrot 3: 0 2\n")
    assert main(["partition", str(p)]) == 1
    assert "line 3" in capsys.readouterr().err


def test_missing_file(tmp_path):
    assert main(["partition", str(tmp_path / "nope")]) == 1


def test_instance_file_is_checked_in_full(tmp_path, capsys):
    p = tmp_path / "c6.instance"
    p.write_text(format_instance(Instance(gen_cycle(6), (0,), frozenset({3}), 2, {0: 1})))
    assert main(["partition", str(p), "--verify"]) == 0
    err = capsys.readouterr().err
    assert "C4: pass" in err and "C5: pass" in err


def test_verify_exit_codes(tmp_path, c4_file):
    good = tmp_path / "good.col"
    good.write_text("0 1\n1 2\n2 2\n3 2\n")
    bad = tmp_path / "bad.col"
    bad.write_text("0 2\n1 2\n2 2\n3 2\n")
    short = tmp_path / "short.col"
    short.write_text("0 1\n")
    assert main(["verify", str(c4_file), str(good)]) == 0
    assert main(["verify", str(c4_file), str(bad)]) == 2
    assert main(["verify", str(c4_file), str(short)]) == 1


def test_gen_round_trips(tmp_path):
    out = tmp_path / "q.graph"
    assert main(["gen", "--kind", "quad", "--n", "20", "--seed", "3", "-o", str(out)]) == 0
    assert parse_plane_graph(out.read_text()) == gen_quadrangulation(20, 3)
    grid = tmp_path / "g.graph"
    assert main(["gen", "--kind", "grid", "--rows", "2", "--cols", "3", "-o", str(grid)]) == 0
    assert parse_plane_graph(grid.read_text()).n == 6


def test_oracle_counts(tmp_path, capsys):
    p = tmp_path / "c4.instance"
    p.write_text(format_instance(Instance(gen_cycle(4), (), frozenset(), 0, {})))
    assert main(["oracle", str(p)]) == 0
    assert "valid colorings: 13" in capsys.readouterr().out
    assert main(["oracle", str(p), "--partition-only"]) == 0
    assert "partition exists" in capsys.readouterr().out


def test_fuzz_is_deterministic(tmp_path, capsys):
    args = ["fuzz", "--count", "30", "--max-n", "20", "--seed", "4", "--out-dir", str(tmp_path)]
    assert main(args) == 0
    first = capsys.readouterr().out
    assert main(args) == 0
    assert capsys.readouterr().out == first
    assert "fail: 0" in first


def test_fuzz_zero_cases(tmp_path, capsys):
    assert main(["fuzz", "--count", "0", "--out-dir", str(tmp_path)]) == 0
    assert "cases: 0" in capsys.readouterr().out


def test_module_entry_point(c4_file):
    res = subprocess.run([sys.executable, "-m", "linforest", "partition", str(c4_file)], capture_output=True, text=True)
    assert res.returncode == 0 and len(res.stdout.splitlines()) == 4
