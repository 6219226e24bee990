"""Seeded constructors for triangle-free plane graphs.

All randomness comes from :class:`SplitMix64`, a 64-bit shift-xor-multiply
generator whose state update is spelled out below, so outputs are identical
across platforms and implementations:

    state = (state + 0x9E3779B97F4A7C15) mod 2**64
    z = state
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9 mod 2**64
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB mod 2**64
    output z ^ (z >> 31)
"""

from __future__ import annotations

import math
from collections import deque
from typing import Sequence

from .plane_graph import PlaneGraph, PreconditionError

_MASK = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & _MASK

    def next_u64(self) -> int:
        self.state = (self.state + _GOLDEN) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        """Integer in ``[0, n)``; plain modulo reduction."""
        if n <= 0:
            raise ValueError("n must be positive")
        return self.next_u64() % n

    def random(self) -> float:
        """Float in ``[0, 1)`` from the top 53 bits."""
        return (self.next_u64() >> 11) / float(1 << 53)


def derive_seed(seed: int, index: int) -> int:
    """Per-case seed for case ``index`` of a run seeded with ``seed``."""
    return SplitMix64((seed & _MASK) ^ ((index * _GOLDEN) & _MASK)).next_u64()


def from_coordinates(points: Sequence[tuple[float, float]], edges: Sequence[tuple[int, int]]) -> PlaneGraph:
    """Plane graph of a straight-line drawing; the unbounded face is outer."""
    nbrs: dict[int, list[int]] = {v: [] for v in range(len(points))}
    for a, b in edges:
        nbrs[a].append(b)
        nbrs[b].append(a)

    def angle(v: int, w: int) -> float:
        (x0, y0), (x1, y1) = points[v], points[w]
        return math.atan2(y1 - y0, x1 - x0)

    # clockwise = decreasing angle
    rot = {v: sorted(ns, key=lambda w: -angle(v, w)) for v, ns in nbrs.items()}
    g = PlaneGraph(rot)
    hints = []
    for comp in g.components:
        if len(comp) < 2:
            continue
        faces = [f for f in g.faces if f.darts and f.darts[0][0] in comp]
        # the unbounded face is traced against the bounded ones; with a
        # clockwise rotation it comes out with the most negative area
        best = min(faces, key=lambda f: _signed_area(points, f.walk))
        hints.append(best.darts[0])
    return PlaneGraph(rot, hints)


def _signed_area(points, walk) -> float:
    s = 0.0
    for i, v in enumerate(walk):
        x0, y0 = points[v]
        x1, y1 = points[walk[(i + 1) % len(walk)]]
        s += x0 * y1 - x1 * y0
    return s / 2


def gen_cycle(k: int) -> PlaneGraph:
    if k < 4:
        raise PreconditionError("cycles shorter than 4 are not triangle-free")
    # clockwise placement makes the boundary read 0, 1, ..., k-1
    pts = [(math.cos(2 * math.pi * i / k), -math.sin(2 * math.pi * i / k)) for i in range(k)]
    return from_coordinates(pts, [(i, (i + 1) % k) for i in range(k)])


def gen_path(k: int) -> PlaneGraph:
    if k < 1:
        raise PreconditionError("path needs a vertex")
    return from_coordinates([(i, 0) for i in range(k)], [(i, i + 1) for i in range(k - 1)])


def gen_grid(rows: int, cols: int) -> PlaneGraph:
    if rows < 1 or cols < 1:
        raise PreconditionError("grid needs at least one row and column")
    pts = [(j, -i) for i in range(rows) for j in range(cols)]
    edges = []
    for i in range(rows):
        for j in range(cols):
            v = i * cols + j
            if j + 1 < cols:
                edges.append((v, v + 1))
            if i + 1 < rows:
                edges.append((v, v + cols))
    return from_coordinates(pts, edges)


def gen_cube() -> PlaneGraph:
    """The 3-cube drawn as two nested squares; the outer face is on 0..3."""
    outer = [(-2, -2), (2, -2), (2, 2), (-2, 2)]
    inner = [(-1, -1), (1, -1), (1, 1), (-1, 1)]
    edges = [(i, (i + 1) % 4) for i in range(4)]
    edges += [(4 + i, 4 + (i + 1) % 4) for i in range(4)]
    edges += [(i, i + 4) for i in range(4)]
    return from_coordinates(outer + inner, edges)


def gen_quadrangulation(n: int, seed: int) -> PlaneGraph:
    """Grow a quadrangulation from C4 by seeded face splits.

    Faces are kept in a list, starting with the two faces of C4 in canonical
    order.  Each step picks a list index uniformly and one of the face's two
    diagonals uniformly, then adds a vertex joined to the diagonal's ends.
    The split face is replaced in place and the second half is appended.
    """
    if n < 4:
        raise PreconditionError("quadrangulations need at least 4 vertices")
    rng = SplitMix64(seed)
    g = gen_cycle(4)
    rot = {v: list(ns) for v, ns in g.rotation.items()}
    outer = g.outer_darts[0]
    faces = [f.walk for f in g.faces]
    for v in range(4, n):
        i = rng.below(len(faces))
        shift = rng.below(2)
        w = faces[i]
        a, b, c, d = (w[(shift + k) % 4] for k in range(4))
        # the walk runs d -> a -> b and b -> c -> d, so the new spoke sits
        # after d at a and after b at c
        rot[a].insert(rot[a].index(d) + 1, v)
        rot[c].insert(rot[c].index(b) + 1, v)
        rot[v] = [a, c]
        faces[i] = (a, b, c, v)
        faces.append((c, d, a, v))
    return PlaneGraph(rot, [outer])


def _connected_without(adj: dict[int, set[int]], u: int, v: int) -> bool:
    seen = {u}
    queue = deque([u])
    while queue:
        x = queue.popleft()
        for y in adj[x]:
            if (x, y) in ((u, v), (v, u)):
                continue
            if y == v:
                return True
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return False


def sparsify(g: PlaneGraph, p: float, seed: int) -> PlaneGraph:
    """Delete each edge with probability ``p`` unless it is currently a bridge.

    Edges are visited in sorted order and one random draw is consumed per
    edge, bridge or not.
    """
    if not 0 <= p <= 1:
        raise PreconditionError("p must lie in [0, 1]")
    rng = SplitMix64(seed)
    adj = {v: set(ns) for v, ns in g.rotation.items()}
    dropped = []
    for u, v in g.edges:
        r = rng.random()
        if p > 0 and r < p and _connected_without(adj, u, v):
            adj[u].discard(v)
            adj[v].discard(u)
            dropped.append((u, v))
    if not dropped:
        return g
    return g.restrict(g.vertices, drop_edges=dropped)


def sample_instances(g: PlaneGraph, count: int, seed: int, attempts: int | None = None):
    """Up to ``count`` distinct valid instances on ``g``, drawn deterministically.

    Each draw picks ``P`` as a run of 0-3 consecutive vertices of an outer
    walk, ``eta`` from the allowed patterns, each remaining boundary vertex
    into ``Q`` with probability 1/3, and ``z`` (or none) among the rest.
    Draws failing validation are discarded.
    """
    from .instance import Instance, validate_instance

    rng = SplitMix64(seed)
    walks = [f.walk for f in g.outer_faces if f.walk]
    if not walks:
        walks = [(v,) for v in g.vertices]
    bnd = sorted(g.boundary_vertices) or list(g.vertices)
    out = []
    seen = set()
    attempts = attempts if attempts is not None else 20 * count
    for _ in range(attempts):
        if len(out) >= count:
            break
        walk = walks[rng.below(len(walks))]
        k = min(rng.below(4), len(walk))
        start = rng.below(len(walk))
        step = 1 if rng.below(2) else -1
        P = tuple(walk[(start + step * i) % len(walk)] for i in range(k))
        if k == 3:
            ends = (1, 2) if rng.below(2) else (2, 1)
            eta = {P[0]: ends[0], P[1]: 2, P[2]: ends[1]}
        else:
            eta = {u: 1 + rng.below(2) for u in P}
        rest = [v for v in bnd if v not in P]
        Q = [v for v in rest if rng.below(3) == 0]
        free = [v for v in rest if v not in Q]
        pick = rng.below(len(free) + 1)
        z = free[pick] if pick < len(free) else None
        inst = Instance(g, P, frozenset(Q), z, eta)
        key = (P, inst.Q, z, tuple(sorted(eta.items())))
        if key in seen or not validate_instance(inst).ok:
            continue
        seen.add(key)
        out.append(inst)
    return out
