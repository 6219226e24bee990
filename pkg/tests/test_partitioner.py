import inspect
import sys

import pytest
from hypothesis import given, settings, strategies as st

from conftest import c6_chord, polygon, two_squares, wrapped_square
from linforest.generator import from_coordinates, gen_cube, gen_cycle, gen_quadrangulation, sample_instances, sparsify
from linforest.instance import Instance, validate_instance
from linforest.partitioner import (
    MICRO_THRESHOLD,
    InvalidInstance,
    ReductionCase,
    _HANDLERS,
    dispatch,
    micro_solve,
    partition,
    replay,
    valid_color,
)
from linforest.plane_graph import PlaneGraph, PreconditionError
from linforest.verifier import check_partition, check_valid


def tags(trace):
    return [st.case.tag for st in trace]


def first_sub(inst, case):
    """The first sub-instance a reduction hands to the recursion."""
    return next(_HANDLERS[case.tag](inst, case))


def solve(inst):
    phi, trace = valid_color(inst, debug=True)
    assert check_valid(inst, phi).ok
    return phi, trace


# -- worked examples ----------------------------------------------------------


def test_c4_colors_z_alone():
    phi, trace = solve(Instance(gen_cycle(4), (), frozenset(), 0, {}))
    assert phi == {0: 1, 1: 2, 2: 2, 3: 2}
    assert trace[0].case.tag == "Boundary4Cycle"


def test_c4_with_two_eta1_vertices():
    phi, _ = solve(Instance(gen_cycle(4), (0, 3), frozenset(), 1, {0: 1, 3: 1}))
    assert phi[1] == phi[2] == 2


def test_single_vertex():
    g = PlaneGraph({0: []})
    assert solve(Instance(g, (), frozenset({0}), None, {}))[0] == {0: 2}
    # with z = v both colors are valid; the micro search tries 1 first
    assert solve(Instance(g, (), frozenset(), 0, {}))[0] == {0: 1}


def test_c6_saturates_then_deletes_u2():
    phi, trace = solve(Instance(gen_cycle(6), (), frozenset(), 0, {}))
    assert tags(trace) == ["Saturate", "SqueezedDelete", "Micro"]
    assert trace[1].case.vertices == (2,)
    assert phi[2] == 1


def test_partition_examples():
    assert partition(PlaneGraph({})) == {}
    phi = partition(gen_cube())
    assert check_partition(gen_cube(), phi).ok
    with pytest.raises(InvalidInstance):
        partition(PlaneGraph({0: [1, 2], 1: [2, 0], 2: [0, 1]}))


def test_partition_handles_several_components():
    rot = {v: list(ns) for v, ns in gen_cycle(6).rotation.items()}
    rot.update({v + 6: [w + 6 for w in ns] for v, ns in gen_quadrangulation(9, 2).rotation.items()})
    rot[15] = []
    g = PlaneGraph(rot)
    phi = partition(g, debug=True)
    assert set(phi) == set(g.vertices) and check_partition(g, phi).ok


# -- dispatch -------------------------------------------------------------------


def test_dispatch_examples():
    sq = two_squares()
    assert dispatch(Instance(sq, (), frozenset(), 1, {})) == ReductionCase("CutVertex", (0,))
    assert dispatch(Instance(c6_chord(), (), frozenset(), 1, {})).tag == "Chord"
    case = dispatch(Instance(gen_cycle(6), (), frozenset({1, 3, 5}), 0, {}))
    assert (case.tag, case.vertices) == ("SqueezedDelete", (2,))


def test_micro_gate():
    g = gen_quadrangulation(MICRO_THRESHOLD, 3)
    assert dispatch(Instance(g, (), frozenset(), min(g.boundary_vertices), {})).tag == "Micro"
    with pytest.raises(PreconditionError):
        micro_solve(Instance(gen_cycle(6)))


def test_micro_examples():
    edge = from_coordinates([(0, 0), (1, 0)], [(0, 1)])
    assert micro_solve(Instance(edge, (0,), frozenset(), None, {0: 1})) == {0: 1, 1: 2}
    path = from_coordinates([(0, 0), (1, 0), (2, 0), (3, 0)], [(0, 1), (1, 2), (2, 3)])
    # residue of the first pentagon case: path 2 3 4 0 with P' = (3, 4) colored 2
    inst = Instance(path, (1, 2), frozenset({0, 3}), None, {1: 2, 2: 2})
    assert micro_solve(inst) == {0: 2, 1: 2, 2: 2, 3: 2}


# -- reductions -----------------------------------------------------------------


def test_cut_keeps_z_side_whole():
    g = two_squares()
    inst = Instance(g, (), frozenset(), 1, {})
    case = dispatch(inst)
    sub1 = first_sub(inst, case)
    assert set(sub1.graph.vertices) == {0, 1, 2, 3} and sub1.z == 1
    phi, trace = solve(inst)
    second = [s for s in trace if s.fingerprint == trace[0].children[1]][0]
    assert second.case.tag == "Boundary4Cycle"


def test_cut_puts_larger_p_side_first():
    g = two_squares()
    inst = Instance(g, (5, 6), frozenset(), 1, {5: 1, 6: 2})
    sub1 = first_sub(inst, dispatch(inst))
    assert set(sub1.graph.vertices) == {0, 4, 5, 6}
    solve(inst)


def test_cut_with_all_boundary_in_p_and_q():
    # square 0123 with P = (3, 0, 1) and 2 in Q, a second square hangs off 0
    g = two_squares()
    inst = Instance(g, (3, 0, 1), frozenset({2}), 5, {3: 1, 0: 2, 1: 2})
    assert validate_instance(inst).ok
    sub1 = first_sub(inst, dispatch(inst))
    assert set(sub1.graph.vertices) == {0, 1, 2, 3}
    # nothing on that side is free, so z1 is the Q vertex that C3 already forces to 2
    assert sub1.z == 2 and 2 not in sub1.Q
    phi, _ = solve(inst)
    assert phi[2] == 2


def test_cut_side_without_eligible_z_goes_without():
    # a leaf in Q hanging off a P vertex; the P vertex is precolored 2 so
    # nothing forces the leaf, which must stay in Q
    pts = polygon(6) + [(2.0, 0.0)]
    g = from_coordinates(pts, [(i, (i + 1) % 6) for i in range(6)] + [(0, 6)])
    inst = Instance(g, (0,), frozenset({6}), 3, {0: 2})
    phi, _ = solve(inst)
    assert phi[6] == 2


def test_chord_split_precolors_the_chord():
    inst = Instance(c6_chord(), (1,), frozenset(), 4, {1: 1})
    case = dispatch(inst)
    assert case == ReductionCase("Chord", (0, 3))
    sub1 = first_sub(inst, case)
    assert 1 in sub1.graph.vertices and set(sub1.graph.vertices) == {0, 1, 2, 3}
    phi, trace = solve(inst)
    sub2 = [s for s in trace if s.fingerprint == trace[0].children[1]]
    assert sub2


def _fan():
    """C6 on 0..5 with an internal vertex 6 joined to 0 and 3."""
    pts = polygon(6) + [(0.0, 0.0)]
    edges = [(i, (i + 1) % 6) for i in range(6)] + [(6, 0), (6, 3)]
    return from_coordinates(pts, edges)


def test_internal_path_split():
    g = _fan()
    inst = Instance(g, (), frozenset({0}), 1, {})
    case = dispatch(inst)
    assert case == ReductionCase("InternalPath", (0, 6, 3))
    phi, trace = solve(inst)
    assert phi[0] == 2


def test_separating_square():
    g = wrapped_square()
    phi, trace = solve(Instance(g, (), frozenset(), 0, {}))
    assert trace[0].case == ReductionCase("Separating4Cycle", (0, 1, 2, 3))


def test_boundary_square_with_interior():
    g = gen_quadrangulation(9, 11)
    assert len(g.boundary) == 4
    for inst in sample_instances(g, 40, 5):
        solve(inst)


def test_free_run_deletes_after_z():
    inst = Instance(gen_cycle(8), (), frozenset({3, 7}), 1, {})
    phi, trace = solve(inst)
    assert tags(trace)[:2] == ["Saturate", "FreeRunDelete"]
    assert trace[1].case.vertices == (0, 1, 2)
    assert phi[2] == 1


def test_pair_delete_keeps_y_in_q():
    g = gen_cycle(7)
    inst = Instance(g, (0,), frozenset({2, 5}), 1, {0: 1})
    case = dispatch(inst)
    assert case == ReductionCase("PairDelete", (3, 4), start=3)
    sub = first_sub(inst, case)
    # y = 5 is already in Q; it stays there so it cannot come back as color 1
    assert sub.Q == {2, 5} and sub.z == 1
    phi, _ = solve(inst)
    assert phi[3] == phi[4] == 1 and phi[5] == 2


def test_squeezed_delete_leaves_z_pair_to_pair_delete():
    # deleting 5 would push z = 4 into Q next to 3
    inst = Instance(gen_cycle(6), (2, 1), frozenset({0, 3}), 4, {2: 2, 1: 1})
    case = dispatch(inst)
    assert case.tag == "PairDelete" and set(case.vertices) == {4, 5}
    solve(inst)


def _pentagon_with_ear():
    pts = polygon(5) + [(0.1, -0.3)]
    edges = [(i, (i + 1) % 5) for i in range(5)] + [(5, 0), (5, 2)]
    return from_coordinates(pts, edges)


def test_pentagon_first_case():
    g = _pentagon_with_ear()
    inst = Instance(g, (4, 0, 1), frozenset({3}), 2, {4: 2, 0: 2, 1: 1})
    case = dispatch(inst)
    assert case.tag == "PentagonDelete" and case.data == ("i",)
    sub = first_sub(inst, case)
    assert set(sub.P) == {3, 4} and all(c == 2 for c in sub.eta.values())
    phi, _ = solve(inst)
    assert phi[1] == 1


def test_pentagon_second_case():
    g = _pentagon_with_ear()
    inst = Instance(g, (0, 1), frozenset({3}), 2, {0: 1, 1: 1})
    case = dispatch(inst)
    assert case.tag == "PentagonDelete" and case.data == ("ii",)
    sub = first_sub(inst, case)
    assert sub.P[1] == 4 and sub.eta == {3: 2, 4: 2, 0: 1}
    solve(inst)


# -- driver ---------------------------------------------------------------------


def test_invalid_instance_is_reported():
    with pytest.raises(InvalidInstance) as e:
        valid_color(Instance(gen_cycle(6), (), frozenset({0, 1}), 2, {}))
    assert "q_independent" in str(e.value)


def test_trace_replay_and_determinism():
    g = sparsify(gen_quadrangulation(40, 8), 0.1, 2)
    inst = Instance(g, (), frozenset(), min(g.boundary_vertices), {})
    phi, trace = valid_color(inst)
    phi2, trace2 = valid_color(inst)
    assert phi == phi2 and trace.format() == trace2.format()
    assert replay(inst, trace) == phi


def test_replay_rejects_foreign_trace():
    _, trace = valid_color(Instance(gen_cycle(6), (), frozenset(), 0, {}))
    with pytest.raises(ValueError):
        replay(Instance(gen_cycle(7), (), frozenset(), 0, {}), trace)


def test_reduction_depth_is_not_python_stack_depth():
    # a path is peeled one cut vertex at a time, so the reduction chain is
    # as deep as the path is long
    g = from_coordinates([(i, 0) for i in range(400)], [(i, i + 1) for i in range(399)])
    old = sys.getrecursionlimit()
    sys.setrecursionlimit(len(inspect.stack()) + 150)
    try:
        phi = partition(g)
    finally:
        sys.setrecursionlimit(old)
    assert check_partition(g, phi).ok


@settings(max_examples=40, deadline=None)
@given(st.integers(4, 30), st.integers(0, 2**32), st.sampled_from([0.0, 0.1, 0.3]), st.integers(0, 1000))
def test_random_instances_get_valid_colorings(n, seed, p, pick):
    g = sparsify(gen_quadrangulation(n, seed), p, seed)
    insts = sample_instances(g, 8, pick)
    for inst in insts:
        phi, trace = valid_color(inst, debug=True)
        assert check_valid(inst, phi).ok
        assert replay(inst, trace) == phi
