"""Simple plane graphs encoded as rotation systems.

A :class:`PlaneGraph` stores, for every vertex, the clockwise cyclic order of
its neighbours together with one designated outer face per connected
component.  Faces are traced with the usual successor rule: arriving at ``v``
along ``(u, v)`` we leave along ``(v, w)`` where ``w`` follows ``u`` in the
rotation of ``v``.

Everything here is immutable; derived data (faces, boundary, components) is
computed lazily and cached on the instance.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

Dart = tuple[int, int]


class StructureError(ValueError):
    """The rotation system does not describe a simple plane graph."""


class PreconditionError(ValueError):
    """An operation was called with arguments outside its contract."""


class ParseError(ValueError):
    """A text file could not be parsed; ``line_no`` is 1-based."""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


def min_rotation(seq: Sequence[int]) -> tuple[int, ...]:
    """Lexicographically smallest cyclic rotation of ``seq``."""
    seq = tuple(seq)
    if not seq:
        return seq
    lo = min(seq)
    starts = [i for i, x in enumerate(seq) if x == lo]
    if len(starts) == 1:
        i = starts[0]
        return seq[i:] + seq[:i]
    return min(seq[i:] + seq[:i] for i in starts)


@dataclass(frozen=True)
class FaceWalk:
    """One face as the closed walk of darts that traces it.

    An isolated vertex has a face with no darts; ``anchor`` names the vertex.
    """

    darts: tuple[Dart, ...]
    anchor: int | None = None

    @property
    def walk(self) -> tuple[int, ...]:
        return tuple(d[0] for d in self.darts)

    @property
    def vertices(self) -> tuple[int, ...]:
        if not self.darts:
            return (self.anchor,)
        return self.walk

    @property
    def face_id(self) -> tuple[int, ...]:
        return self.vertices

    def __len__(self) -> int:
        return len(self.darts)


@dataclass(frozen=True)
class Boundary:
    """The outer walk ``u_0 u_1 ... u_k`` with indices taken modulo ``k + 1``."""

    cycle: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.cycle)

    def __getitem__(self, i: int) -> int:
        return self.cycle[i % len(self.cycle)]

    def __iter__(self):
        return iter(self.cycle)

    def index(self, v: int) -> int:
        return self.cycle.index(v)


def _canonical_darts(darts: list[Dart]) -> tuple[Dart, ...]:
    walk = [d[0] for d in darts]
    lo = min(walk)
    starts = [i for i, x in enumerate(walk) if x == lo]
    if len(starts) == 1:
        i = starts[0]
    else:
        i = min(starts, key=lambda j: walk[j:] + walk[:j])
    return tuple(darts[i:] + darts[:i])


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, a: int) -> int:
        parent = self.parent
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if ra < rb:
            ra, rb = rb, ra
        self.parent[ra] = rb
        return True


class PlaneGraph:
    """A simple graph with a rotation system and designated outer faces.

    ``rotation`` maps each vertex to its neighbours in clockwise order.
    ``outer`` holds darts lying on the outer face, at most one per
    component; components without a hint get their longest face (ties broken
    by the smallest canonical walk).
    """

    def __init__(self, rotation: Mapping[int, Sequence[int]], outer: Iterable[Dart] | None = None):
        self._rot = {int(v): tuple(int(w) for w in ns) for v, ns in rotation.items()}
        self._outer_hint = tuple(outer) if outer is not None else ()

    # -- basic structure -------------------------------------------------

    @property
    def rotation(self) -> Mapping[int, tuple[int, ...]]:
        return MappingProxyType(self._rot)

    @cached_property
    def vertices(self) -> tuple[int, ...]:
        return tuple(sorted(self._rot))

    @property
    def n(self) -> int:
        return len(self._rot)

    @cached_property
    def m(self) -> int:
        return sum(len(ns) for ns in self._rot.values()) // 2

    @cached_property
    def adj(self) -> dict[int, frozenset[int]]:
        return {v: frozenset(ns) for v, ns in self._rot.items()}

    @cached_property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return tuple(sorted((v, w) for v, ns in self._rot.items() for w in ns if v < w))

    def __contains__(self, v: int) -> bool:
        return v in self._rot

    def degree(self, v: int) -> int:
        return len(self._rot[v])

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._rot[v]

    @cached_property
    def _pos(self) -> dict[int, dict[int, int]]:
        pos = {}
        for v, ns in self._rot.items():
            p = {w: i for i, w in enumerate(ns)}
            if len(p) != len(ns) or v in p:
                raise StructureError(f"rotation of {v} is not simple")
            pos[v] = p
        return pos

    def next_dart(self, u: int, v: int) -> Dart:
        """Face-tracing successor of the dart ``(u, v)``."""
        ns = self._rot[v]
        i = self._pos[v].get(u)
        if i is None:
            raise StructureError(f"edge {{{u},{v}}} listed at {u} but not at {v}")
        return (v, ns[(i + 1) % len(ns)])

    # -- faces -----------------------------------------------------------

    @cached_property
    def faces(self) -> tuple[FaceWalk, ...]:
        seen: set[Dart] = set()
        faces = []
        for v in self.vertices:
            ns = self._rot[v]
            if not ns:
                faces.append(FaceWalk((), v))
                continue
            for w in ns:
                if (v, w) in seen:
                    continue
                darts = []
                d = (v, w)
                while d not in seen:
                    seen.add(d)
                    darts.append(d)
                    d = self.next_dart(*d)
                if d != (v, w):
                    raise StructureError(f"face tracing from {(v, w)} does not close")
                faces.append(FaceWalk(_canonical_darts(darts)))
        faces.sort(key=lambda f: f.face_id)
        return tuple(faces)

    @cached_property
    def dart_face(self) -> dict[Dart, int]:
        return {d: i for i, f in enumerate(self.faces) for d in f.darts}

    # -- components and outer faces --------------------------------------

    @cached_property
    def components(self) -> tuple[tuple[int, ...], ...]:
        seen = set()
        comps = []
        for s in self.vertices:
            if s in seen:
                continue
            seen.add(s)
            comp = [s]
            queue = deque([s])
            while queue:
                v = queue.popleft()
                for w in self._rot[v]:
                    if w not in seen:
                        seen.add(w)
                        comp.append(w)
                        queue.append(w)
            comps.append(tuple(sorted(comp)))
        return tuple(comps)

    @cached_property
    def component_of(self) -> dict[int, int]:
        return {v: i for i, c in enumerate(self.components) for v in c}

    def is_connected(self) -> bool:
        return len(self.components) <= 1

    @cached_property
    def outer_faces(self) -> tuple[FaceWalk, ...]:
        """The designated outer face of each component, in component order."""
        chosen: dict[int, int] = {}
        dart_face = self.dart_face
        for d in self._outer_hint:
            if d not in dart_face:
                raise StructureError(f"outer dart {d} is not an edge")
            c = self.component_of[d[0]]
            f = dart_face[d]
            if chosen.setdefault(c, f) != f:
                raise StructureError(f"two outer faces designated for component {c}")
        by_comp: dict[int, list[int]] = {}
        for i, f in enumerate(self.faces):
            by_comp.setdefault(self.component_of[f.vertices[0]], []).append(i)
        out = []
        for c in range(len(self.components)):
            if c not in chosen:
                cands = by_comp[c]
                chosen[c] = min(cands, key=lambda i: (-len(self.faces[i]), self.faces[i].face_id))
            out.append(self.faces[chosen[c]])
        return tuple(out)

    @cached_property
    def outer_darts(self) -> tuple[Dart, ...]:
        """One representative dart per designated outer face (canonical start)."""
        return tuple(f.darts[0] for f in self.outer_faces if f.darts)

    @cached_property
    def boundary_darts(self) -> frozenset[Dart]:
        return frozenset(d for f in self.outer_faces for d in f.darts)

    @cached_property
    def boundary_vertices(self) -> frozenset[int]:
        return frozenset(v for f in self.outer_faces for v in f.vertices)

    def on_boundary(self, v: int) -> bool:
        return v in self.boundary_vertices

    @cached_property
    def _boundary_nbrs(self) -> dict[int, frozenset[int]]:
        nb: dict[int, set[int]] = {}
        for a, b in self.boundary_darts:
            nb.setdefault(a, set()).add(b)
            nb.setdefault(b, set()).add(a)
        return {v: frozenset(s) for v, s in nb.items()}

    def boundary_neighbors(self, v: int) -> frozenset[int]:
        """Vertices joined to ``v`` by an edge of the outer walk."""
        return self._boundary_nbrs.get(v, frozenset())

    @cached_property
    def boundary(self) -> Boundary:
        if len(self.components) != 1:
            raise PreconditionError("boundary() needs a connected graph")
        return Boundary(self.outer_faces[0].vertices)

    @cached_property
    def boundary_index(self) -> dict[int, int]:
        return {v: i for i, v in enumerate(self.boundary.cycle)}

    # -- identity --------------------------------------------------------

    @cached_property
    def text(self) -> str:
        return format_plane_graph(self)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PlaneGraph) and self.text == other.text

    def __hash__(self) -> int:
        return hash(self.text)

    def __repr__(self) -> str:
        return f"PlaneGraph(n={self.n}, m={self.m})"

    # -- surgery ---------------------------------------------------------

    def restrict(self, keep: Iterable[int], drop_edges: Iterable[tuple[int, int]] = ()) -> "PlaneGraph":
        """Subgraph on ``keep`` (minus ``drop_edges``) with inherited embedding.

        Each component of the result gets as outer face the face containing
        the outer face of the component of ``self`` it came from.
        """
        keep = set(keep)
        dropped = {frozenset(e) for e in drop_edges}
        if dropped:
            rot = {
                v: tuple(w for w in self._rot[v] if w in keep and frozenset((v, w)) not in dropped)
                for v in sorted(keep)
            }
        else:
            rot = {v: tuple(w for w in self._rot[v] if w in keep) for v in sorted(keep)}
        sub = PlaneGraph(rot)
        hints = [self._inherited_outer_dart(sub, comp) for comp in sub.components if len(comp) > 1]
        return PlaneGraph(rot, hints)

    def _inherited_outer_dart(self, sub: "PlaneGraph", comp: tuple[int, ...]) -> Dart:
        comp_set = set(comp)
        home = self.component_of[comp[0]]
        outer = self.outer_faces[home]
        dart_face = self.dart_face
        uf = _UnionFind(len(self.faces))
        sub_adj = sub.adj
        for v in self.components[home]:
            inside = v in comp_set
            for w in self._rot[v]:
                if v < w and not (inside and w in sub_adj[v]):
                    uf.union(dart_face[(v, w)], dart_face[(w, v)])
        target = uf.find(dart_face[outer.darts[0]])
        for v in comp:
            for w in sub.neighbors(v):
                if uf.find(dart_face[(v, w)]) == target:
                    return (v, w)
        raise StructureError("lost track of the outer face")  # pragma: no cover

    def delete_vertices(self, removed: Iterable[int], boundary_only: bool = True) -> "PlaneGraph":
        removed = set(removed)
        if not removed <= set(self._rot):
            raise PreconditionError(f"not vertices: {sorted(removed - set(self._rot))}")
        if boundary_only:
            inner = sorted(v for v in removed if v not in self.boundary_vertices)
            assert not inner, f"deleting non-boundary vertices {inner}"
        return self.restrict(v for v in self.vertices if v not in removed)

    # -- separators ------------------------------------------------------

    def cut_vertices(self) -> list[int]:
        """Articulation points, sorted (iterative lowpoint DFS)."""
        disc: dict[int, int] = {}
        low: dict[int, int] = {}
        cuts = set()
        t = 0
        for root in self.vertices:
            if root in disc:
                continue
            disc[root] = low[root] = t
            t += 1
            root_children = 0
            stack = [(root, -1, iter(self._rot[root]))]
            while stack:
                v, parent, it = stack[-1]
                advanced = False
                for w in it:
                    if w == parent:
                        continue
                    if w in disc:
                        if disc[w] < low[v]:
                            low[v] = disc[w]
                    else:
                        disc[w] = low[w] = t
                        t += 1
                        if v == root:
                            root_children += 1
                        stack.append((w, v, iter(self._rot[w])))
                        advanced = True
                        break
                if advanced:
                    continue
                stack.pop()
                if stack:
                    u = stack[-1][0]
                    if low[v] < low[u]:
                        low[u] = low[v]
                    if u != root and low[v] >= disc[u]:
                        cuts.add(u)
            if root_children > 1:
                cuts.add(root)
        return sorted(cuts)

    def _outer_gap(self, v: int) -> tuple[int, int]:
        """``(a, b)`` with the outer face passing ``a -> v -> b``; ``v`` must occur once."""
        walk = self.outer_faces[self.component_of[v]].vertices
        idx = [i for i, x in enumerate(walk) if x == v]
        if len(idx) != 1:
            raise PreconditionError(f"{v} is not a simple boundary vertex")
        i = idx[0]
        return walk[i - 1], walk[(i + 1) % len(walk)]

    def separator_sides(self, seq: Sequence[int], closed: bool) -> tuple[frozenset[int], frozenset[int]]:
        """Split the vertices off a path or cycle into its two sides.

        For an open path the endpoints must be simple boundary vertices and
        the path must run through the interior; for a closed cycle every
        vertex uses its two cycle neighbours.  Returns ``(left, right)``
        relative to the traversal direction; raises ``PreconditionError`` if a
        component of the remainder touches both sides.
        """
        on_path = set(seq)
        if len(on_path) != len(seq):
            raise PreconditionError("separator repeats a vertex")
        label: dict[int, int] = {}
        m = len(seq)
        for i, v in enumerate(seq):
            ns = self._rot[v]
            pos = self._pos[v]
            if closed:
                p, q = seq[i - 1], seq[(i + 1) % m]
            else:
                p = seq[i - 1] if i > 0 else None
                q = seq[i + 1] if i + 1 < m else None
            if p is None or q is None:
                ga, gb = self._outer_gap(v)
            # walk the rotation forward starting right after "prev"
            start = (pos[gb] if p is None else pos[p] + 1) % len(ns)
            side = 0
            for k in range(len(ns)):
                w = ns[(start + k) % len(ns)]
                if w == p:
                    break
                if w == q:
                    side = 1
                    continue
                if w in on_path:
                    raise PreconditionError(f"separator has a chord {v}-{w}")
                if label.setdefault(w, side) != side:
                    raise PreconditionError(f"{w} lies on both sides")
                if q is None and w == ga:
                    side = 1
        # flood fill the remainder
        queue = deque(label)
        while queue:
            v = queue.popleft()
            for w in self._rot[v]:
                if w in on_path:
                    continue
                if w not in label:
                    label[w] = label[v]
                    queue.append(w)
                elif label[w] != label[v]:
                    raise PreconditionError(f"{w} lies on both sides")
        left = frozenset(v for v, s in label.items() if s == 0)
        right = frozenset(v for v, s in label.items() if s == 1)
        return left, right


def trace_faces(g: PlaneGraph) -> list[FaceWalk]:
    return list(g.faces)


def boundary(g: PlaneGraph) -> Boundary:
    return g.boundary


@dataclass(frozen=True)
class GraphReport:
    simple: bool
    symmetric: bool
    planar_euler: bool
    triangle_free: bool
    connected: bool
    witness: tuple = ()

    @property
    def ok(self) -> bool:
        return self.simple and self.symmetric and self.planar_euler


def find_triangle(g: PlaneGraph) -> tuple[int, int, int] | None:
    adj = g.adj
    for u, v in g.edges:
        common = adj[u] & adj[v]
        if common:
            return (u, v, min(common))
    return None


def validate_plane_graph(g: PlaneGraph) -> GraphReport:
    simple = all(v not in ns and len(set(ns)) == len(ns) for v, ns in g.rotation.items())
    symmetric = all(w in g.rotation and v in g.rotation[w] for v, ns in g.rotation.items() for w in ns)
    if not (simple and symmetric):
        return GraphReport(simple, symmetric, False, False, False, ("rotation",))
    euler = True
    witness: tuple = ()
    try:
        per_comp: dict[int, int] = {}
        for f in g.faces:
            c = g.component_of[f.vertices[0]]
            per_comp[c] = per_comp.get(c, 0) + 1
        for c, comp in enumerate(g.components):
            e = sum(g.degree(v) for v in comp) // 2
            if len(comp) - e + per_comp[c] != 2:
                euler = False
                witness = ("genus", comp)
                break
        g.outer_faces
    except StructureError as exc:
        euler = False
        witness = ("structure", str(exc))
    tri = find_triangle(g)
    if tri is not None and not witness:
        witness = ("triangle", tri)
    return GraphReport(simple, symmetric, euler, tri is None, g.is_connected(), witness)


def split_along(
    g: PlaneGraph,
    *,
    vertex: int | None = None,
    chord: tuple[int, int] | None = None,
    path: tuple[int, int, int] | None = None,
    cycle: Sequence[int] | None = None,
) -> tuple[PlaneGraph, PlaneGraph]:
    """Split ``g`` into two induced subgraphs meeting in the separator.

    Exactly one separator keyword is expected.  For a cut vertex the first
    part is the branch holding the smallest other vertex; for a chord or
    path the first part is the side holding the smallest off-separator
    vertex; for a cycle the first part is the exterior.
    """
    given = [s for s in (vertex, chord, path, cycle) if s is not None]
    if len(given) != 1:
        raise PreconditionError("give exactly one separator")
    if vertex is not None:
        if vertex not in g.cut_vertices():
            raise PreconditionError(f"{vertex} is not a cut vertex")
        rest = g.restrict(v for v in g.vertices if v != vertex)
        branches = [c for c in rest.components if any(w in g.adj[vertex] for w in c)]
        first = set(branches[0]) | {vertex}
        second = set(g.components[g.component_of[vertex]]) - set(branches[0])
        return g.restrict(first), g.restrict(second)
    if cycle is not None:
        cyc = tuple(cycle)
        for i in range(len(cyc)):
            if cyc[(i + 1) % len(cyc)] not in g.adj[cyc[i]]:
                raise PreconditionError("not a cycle")
        left, right = g.separator_sides(cyc, closed=True)
        if not left or not right:
            raise PreconditionError("cycle does not separate")
        ext, inner = (left, right) if left & g.boundary_vertices else (right, left)
        return g.restrict(ext | set(cyc)), g.restrict(inner | set(cyc))
    seq = tuple(chord if chord is not None else path)
    for a, b in zip(seq, seq[1:]):
        if b not in g.adj[a]:
            raise PreconditionError("not a path")
    if not (g.on_boundary(seq[0]) and g.on_boundary(seq[-1])):
        raise PreconditionError("path ends must be on the boundary")
    if chord is not None and seq[1] in g.boundary_neighbors(seq[0]):
        raise PreconditionError("boundary edge is not a chord")
    if path is not None and g.on_boundary(seq[1]):
        raise PreconditionError("middle vertex must be internal")
    left, right = g.separator_sides(seq, closed=False)
    if not left or not right:
        raise PreconditionError("separator does not separate")
    first, second = (left, right) if min(left) < min(right) else (right, left)
    return g.restrict(first | set(seq)), g.restrict(second | set(seq))


def delete_vertices(g: PlaneGraph, removed: Iterable[int]) -> PlaneGraph:
    return g.delete_vertices(removed)


# -- text format ------------------------------------------------------------


def format_plane_graph(g: PlaneGraph) -> str:
    lines = [f"planegraph {g.n}"]
    for v in g.vertices:
        ns = g.rotation[v]
        if ns:
            i = ns.index(min(ns))
            ns = ns[i:] + ns[:i]
        lines.append(f"rot {v}: " + " ".join(map(str, ns)) if ns else f"rot {v}:")
    for f in g.outer_faces:
        if f.darts:
            lines.append("outer: " + " ".join(map(str, f.walk)))
    return "\n".join(lines) + "\n"


def _ints(text: str, line_no: int) -> list[int]:
    try:
        return [int(t) for t in text.split()]
    except ValueError:
        raise ParseError(line_no, f"expected integers, got {text.strip()!r}") from None


def parse_plane_graph_lines(lines: Iterable[tuple[int, str]]) -> tuple[PlaneGraph, list[tuple[int, str, str]]]:
    """Parse numbered, comment-stripped lines; unknown ``key: value`` lines are returned."""
    n = None
    rot: dict[int, list[int]] = {}
    outers: list[tuple[int, list[int]]] = []
    extra = []
    for no, line in lines:
        if n is None:
            parts = line.split()
            if len(parts) != 2 or parts[0] != "planegraph":
                raise ParseError(no, "expected header 'planegraph <n>'")
            n = _ints(parts[1], no)[0]
            if n < 0:
                raise ParseError(no, "negative vertex count")
            continue
        if line.startswith("rot "):
            head, sep, tail = line[4:].partition(":")
            if not sep:
                raise ParseError(no, "rot line needs ':'")
            v = _ints(head, no)
            if len(v) != 1 or not 0 <= v[0] < n:
                raise ParseError(no, f"bad vertex {head.strip()!r}")
            if v[0] in rot:
                raise ParseError(no, f"duplicate rot line for {v[0]}")
            ws = _ints(tail, no)
            for w in ws:
                if not 0 <= w < n:
                    raise ParseError(no, f"neighbor {w} out of range")
            if v[0] in ws or len(set(ws)) != len(ws):
                raise ParseError(no, f"rotation of {v[0]} is not simple")
            rot[v[0]] = ws
        else:
            key, sep, val = line.partition(":")
            if not sep:
                raise ParseError(no, f"unrecognized line {line!r}")
            key = key.strip()
            if key == "outer":
                outers.append((no, _ints(val, no)))
            else:
                extra.append((no, key, val))
    if n is None:
        raise ParseError(0, "missing header")
    missing = [v for v in range(n) if v not in rot]
    if missing:
        raise ParseError(0, f"missing rot lines for {missing[:5]}")
    for v, ns in rot.items():
        for w in ns:
            if v not in rot[w]:
                raise ParseError(0, f"edge {{{v},{w}}} listed at {v} but not at {w}")
    g = PlaneGraph(rot)
    try:
        g.faces
    except StructureError as exc:
        raise ParseError(0, str(exc)) from None
    hints = []
    by_id = {f.face_id: f for f in g.faces}
    for no, walk in outers:
        f = by_id.get(min_rotation(walk))
        if f is None or not f.darts:
            raise ParseError(no, "outer walk is not a face")
        hints.append(f.darts[0])
    try:
        g = PlaneGraph(rot, hints)
        g.outer_faces
    except StructureError as exc:
        raise ParseError(outers[0][0] if outers else 0, str(exc)) from None
    return g, extra


def numbered_lines(text: str) -> list[tuple[int, str]]:
    out = []
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append((no, line))
    return out


def parse_plane_graph(text: str) -> PlaneGraph:
    g, extra = parse_plane_graph_lines(numbered_lines(text))
    if extra:
        no, key, _ = extra[0]
        raise ParseError(no, f"unexpected key {key!r}")
    return g
