import os

from linforest.fuzz import case_graph, run_case, run_fuzz
from linforest.plane_graph import validate_plane_graph


def test_case_graphs_are_deterministic_and_valid():
    for i in range(20):
        g, n, p = case_graph(9, i, 30)
        assert 4 <= n <= 30 and p in (0.0, 0.1, 0.3)
        assert validate_plane_graph(g).ok and g.is_connected()
        assert case_graph(9, i, 30)[0] == g


def test_run_case_returns_coloring():
    r = run_case(0, 3, 40, keep_coloring=True)
    assert r.status == "pass" and r.coloring is not None and sum(r.histogram.values()) > 0


def test_worker_pool_matches_serial(tmp_path):
    a = run_fuzz(40, 30, 2, workers=1, out_dir=str(tmp_path))
    b = run_fuzz(40, 30, 2, workers=2, out_dir=str(tmp_path))
    assert a.summary() == b.summary() and a.ok
    assert not os.listdir(tmp_path)
