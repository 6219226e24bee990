"""Precolored instances ``(G, P, Q, z, eta)`` and their text format."""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field, replace
from typing import Iterable, Mapping

from .plane_graph import (
    ParseError,
    PlaneGraph,
    PreconditionError,
    find_triangle,
    format_plane_graph,
    numbered_lines,
    parse_plane_graph_lines,
    validate_plane_graph,
)

# color 1 = linear-forest class, color 2 = forest class
Coloring = dict[int, int]


@dataclass(frozen=True)
class Instance:
    """A triangle-free plane graph with boundary constraints.

    ``P`` is stored in boundary-consecutive order; ``eta`` precolors ``P``;
    vertices of ``Q`` are forced to color 2; ``z`` (when present) may have at
    most one color-1 neighbour if it is itself colored 1.
    """

    graph: PlaneGraph
    P: tuple[int, ...] = ()
    Q: frozenset[int] = frozenset()
    z: int | None = None
    eta: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "P", tuple(self.P))
        object.__setattr__(self, "Q", frozenset(self.Q))
        object.__setattr__(self, "eta", dict(self.eta))

    @property
    def n(self) -> int:
        return self.graph.n

    def eta_one(self) -> list[int]:
        return [u for u in self.P if self.eta.get(u) == 1]

    def middle(self) -> int | None:
        """Middle vertex of ``G[P]`` when ``|P| = 3``."""
        return self.P[1] if len(self.P) == 3 else None

    def with_q(self, q: Iterable[int]) -> "Instance":
        return replace(self, Q=frozenset(q))

    @property
    def text(self) -> str:
        return format_instance(self)

    def fingerprint(self) -> str:
        return hashlib.blake2b(self.text.encode(), digest_size=8).hexdigest()


@dataclass(frozen=True)
class InstanceReport:
    failures: tuple[tuple[str, object], ...]

    @property
    def ok(self) -> bool:
        return not self.failures

    def __str__(self) -> str:
        if self.ok:
            return "instance ok"
        return "; ".join(f"{name}: {w}" for name, w in self.failures)


def validate_instance(inst: Instance) -> InstanceReport:
    g = inst.graph
    fails: list[tuple[str, object]] = []
    rep = validate_plane_graph(g)
    if not rep.ok:
        return InstanceReport((("graph", rep.witness),))
    tri = find_triangle(g)
    if tri is not None:
        fails.append(("triangle_free", tri))
    P, Q, z = inst.P, inst.Q, inst.z
    named = list(P) + sorted(Q) + ([z] if z is not None else [])
    stray = [v for v in named if v not in g]
    if stray:
        return InstanceReport(tuple(fails) + (("vertices", stray),))
    bnd = g.boundary_vertices
    if len(P) > 3:
        fails.append(("p_size", len(P)))
    if len(set(P)) != len(P):
        fails.append(("p_distinct", P))
    off = [u for u in P if u not in bnd]
    if off:
        fails.append(("p_on_boundary", off))
    for a, b in zip(P, P[1:]):
        if b not in g.boundary_neighbors(a):
            fails.append(("p_consecutive", (a, b)))
            break
    off = sorted(u for u in Q if u not in bnd)
    if off:
        fails.append(("q_on_boundary", off))
    both = sorted(set(P) & Q)
    if both:
        fails.append(("pq_disjoint", both))
    for u in sorted(Q):
        hit = sorted(g.adj[u] & Q)
        if hit:
            fails.append(("q_independent", (u, hit[0])))
            break
    if z is not None:
        if z not in bnd:
            fails.append(("z_on_boundary", z))
        if z in P or z in Q:
            fails.append(("z_outside_pq", z))
    if set(inst.eta) != set(P):
        fails.append(("eta_domain", sorted(set(inst.eta) ^ set(P))))
    bad = sorted(u for u, c in inst.eta.items() if c not in (1, 2))
    if bad:
        fails.append(("eta_values", bad))
    if len(P) == 3 and set(inst.eta) == set(P):
        ends = [inst.eta[P[0]], inst.eta[P[2]]]
        if sorted(ends) != [1, 2] or inst.eta[P[1]] != 2:
            fails.append(("eta_pattern", tuple(inst.eta[u] for u in P)))
    return InstanceReport(tuple(fails))


def saturate_q(inst: Instance) -> Instance:
    """Greedily grow ``Q`` with boundary vertices, scanning ids upward.

    A vertex joins when it is outside ``P``, ``Q`` and ``z`` and has no
    neighbour in the growing ``Q``.  Any coloring valid for the result is
    valid for ``inst``.
    """
    rep = validate_instance(inst)
    if not rep.ok:
        raise PreconditionError(f"invalid instance: {rep}")
    return _saturate(inst)


def _saturate(inst: Instance) -> Instance:
    g = inst.graph
    blocked = set(inst.P)
    if inst.z is not None:
        blocked.add(inst.z)
    q = set(inst.Q)
    for u in sorted(g.boundary_vertices):
        if u in blocked or u in q:
            continue
        if not (g.adj[u] & q):
            q.add(u)
    if len(q) == len(inst.Q):
        return inst
    return inst.with_q(q)


# -- text formats -----------------------------------------------------------


def format_instance(inst: Instance) -> str:
    lines = [format_plane_graph(inst.graph).rstrip("\n")]
    if inst.P:
        lines.append("p: " + " ".join(map(str, inst.P)))
    if inst.Q:
        lines.append("q: " + " ".join(map(str, sorted(inst.Q))))
    if inst.z is not None:
        lines.append(f"z: {inst.z}")
    for u in inst.P:
        lines.append(f"eta: {u} {inst.eta[u]}")
    return "\n".join(lines) + "\n"


def parse_instance(text: str) -> Instance:
    g, extra = parse_plane_graph_lines(numbered_lines(text))
    P: tuple[int, ...] = ()
    Q: set[int] = set()
    z = None
    eta: dict[int, int] = {}
    for no, key, val in extra:
        try:
            nums = [int(t) for t in val.split()]
        except ValueError:
            raise ParseError(no, f"expected integers after {key!r}") from None
        if key == "p":
            if not 1 <= len(nums) <= 3:
                raise ParseError(no, "p takes one to three vertices")
            P = tuple(nums)
        elif key == "q":
            Q.update(nums)
        elif key == "z":
            if len(nums) != 1:
                raise ParseError(no, "z takes one vertex")
            z = nums[0]
        elif key == "eta":
            if len(nums) != 2:
                raise ParseError(no, "eta takes a vertex and a color")
            eta[nums[0]] = nums[1]
        else:
            raise ParseError(no, f"unexpected key {key!r}")
    return Instance(g, P, frozenset(Q), z, eta)


def format_coloring(phi: Mapping[int, int]) -> str:
    return "".join(f"{v} {phi[v]}\n" for v in sorted(phi))


def parse_coloring(text: str) -> Coloring:
    phi: Coloring = {}
    for no, line in numbered_lines(text):
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(no, "expected '<vertex> <color>'")
        try:
            v, c = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(no, "expected integers") from None
        if c not in (1, 2):
            raise ParseError(no, f"color must be 1 or 2, got {c}")
        if v in phi:
            raise ParseError(no, f"vertex {v} colored twice")
        phi[v] = c
    return phi
