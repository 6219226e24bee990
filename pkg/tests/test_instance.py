import pytest

from linforest.generator import gen_cycle, gen_quadrangulation, sample_instances
from linforest.instance import (
    Instance,
    format_coloring,
    format_instance,
    parse_coloring,
    parse_instance,
    saturate_q,
    validate_instance,
)
from linforest.oracle import iter_valid
from linforest.plane_graph import ParseError, PreconditionError
from linforest.verifier import check_valid


def failed(inst):
    return [name for name, _ in validate_instance(inst).failures]


def test_valid_instance_passes():
    inst = Instance(gen_cycle(6), (0, 1), frozenset({3}), 4, {0: 1, 1: 2})
    assert validate_instance(inst).ok


def test_adjacent_q_reports_the_pair():
    rep = validate_instance(Instance(gen_cycle(6), (), frozenset({3, 4}), 0, {}))
    assert dict(rep.failures)["q_independent"] == (3, 4)


def test_three_vertex_p_needs_one_eta1_endpoint():
    inst = Instance(gen_cycle(5), (0, 1, 2), frozenset(), 3, {0: 2, 1: 2, 2: 2})
    assert failed(inst) == ["eta_pattern"]
    ok = Instance(gen_cycle(5), (0, 1, 2), frozenset(), 3, {0: 1, 1: 2, 2: 2})
    assert validate_instance(ok).ok


@pytest.mark.parametrize(
    "P,Q,z,eta,name",
    [
        ((0, 2), (), None, {0: 1, 2: 1}, "p_consecutive"),
        ((0,), (0,), None, {0: 1}, "pq_disjoint"),
        ((), (), None, {0: 1}, "eta_domain"),
        ((0,), (), 0, {0: 1}, "z_outside_pq"),
        ((0,), (), None, {0: 3}, "eta_values"),
    ],
)
def test_individual_failures(P, Q, z, eta, name):
    assert name in failed(Instance(gen_cycle(6), P, frozenset(Q), z, eta))


def test_interior_vertices_are_rejected():
    g = gen_quadrangulation(12, 1)
    inner = min(v for v in g.vertices if v not in g.boundary_vertices)
    assert "q_on_boundary" in failed(Instance(g, (), frozenset({inner}), None, {}))
    assert "z_on_boundary" in failed(Instance(g, (), frozenset(), inner, {}))


def _scan(g, P, Q, z):
    # independent restatement of the saturation rule
    q = set(Q)
    for u in range(g.n):
        if u in g.boundary_vertices and u not in P and u != z and u not in q:
            if all(w not in q for w in g.rotation[u]):
                q.add(u)
    return q


def test_saturation_examples():
    assert saturate_q(Instance(gen_cycle(6), (), frozenset(), 0, {})).Q == {1, 3, 5}
    assert saturate_q(Instance(gen_cycle(5), (), frozenset(), 0, {})).Q == {1, 3}


def test_saturation_rejects_invalid_input():
    with pytest.raises(PreconditionError):
        saturate_q(Instance(gen_cycle(6), (), frozenset({3, 4}), 0, {}))


def test_saturation_properties():
    for seed in range(30):
        g = gen_quadrangulation(4 + seed % 9, seed)
        for inst in sample_instances(g, 10, seed):
            sat = saturate_q(inst)
            assert validate_instance(sat).ok
            assert saturate_q(sat) == sat
            assert inst.Q <= sat.Q
            assert set(sat.Q) == _scan(g, set(inst.P), inst.Q, inst.z)
            # every coloring valid for the saturated instance is valid for the original
            for phi in iter_valid(sat):
                assert check_valid(inst, phi).ok


def test_instance_round_trip():
    inst = Instance(gen_cycle(6), (0, 1), frozenset({3}), 4, {0: 1, 1: 2})
    text = format_instance(inst)
    back = parse_instance(text)
    assert back == inst and format_instance(back) == text
    assert inst.fingerprint() == back.fingerprint()


def test_instance_parse_errors():
    base = format_instance(Instance(gen_cycle(4)))
    with pytest.raises(ParseError):
        parse_instance(base + "p: 0 1 2 3\n")
    with pytest.raises(ParseError):
        parse_instance(base + "z: 1 2\n")
    with pytest.raises(ParseError):
        parse_instance(base + "color: 1\n")


def test_coloring_round_trip_and_errors():
    phi = {0: 1, 1: 2, 2: 2}
    assert parse_coloring(format_coloring(phi)) == phi
    with pytest.raises(ParseError):
        parse_coloring("0 3\n")
    with pytest.raises(ParseError):
        parse_coloring("0 1\n0 2\n")
