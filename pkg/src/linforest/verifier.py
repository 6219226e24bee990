"""Decide conditions C1-C5 for a coloring of an instance."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Mapping

from .instance import Instance
from .plane_graph import PlaneGraph, PreconditionError


def _find(parent: dict[int, int], a: int) -> int:
    while parent[a] != a:
        parent[a] = parent[parent[a]]
        a = parent[a]
    return a


def find_cycle_edge(g: PlaneGraph, S: Iterable[int]) -> tuple[int, int] | None:
    """First induced edge of ``G[S]`` that closes a cycle, via union-find."""
    S = set(S)
    parent = {v: v for v in S}
    for v in sorted(S):
        for w in g.adj[v]:
            if w > v and w in S:
                rv, rw = _find(parent, v), _find(parent, w)
                if rv == rw:
                    return (v, w)
                parent[rv] = rw
    return None


def is_forest(g: PlaneGraph, S: Iterable[int]) -> bool:
    return find_cycle_edge(g, S) is None


def is_linear_forest(g: PlaneGraph, S: Iterable[int]) -> bool:
    S = set(S)
    if any(len(g.adj[v] & S) > 2 for v in S):
        return False
    return find_cycle_edge(g, S) is None


def mono_path_exists(g: PlaneGraph, phi: Mapping[int, int], c: int, a: int, b: int) -> bool:
    """Whether ``a`` and ``b`` are joined inside the color class ``c``."""
    if a == b:
        raise PreconditionError("endpoints must differ")
    if phi[a] != c or phi[b] != c:
        return False
    seen = {a}
    queue = deque([a])
    while queue:
        v = queue.popleft()
        for w in g.adj[v]:
            if w == b:
                return True
            if w not in seen and phi[w] == c:
                seen.add(w)
                queue.append(w)
    return False


def _mono_path(g: PlaneGraph, phi: Mapping[int, int], c: int, a: int, b: int) -> list[int]:
    prev = {a: a}
    queue = deque([a])
    while queue:
        v = queue.popleft()
        if v == b:
            break
        for w in sorted(g.adj[v]):
            if w not in prev and phi[w] == c:
                prev[w] = v
                queue.append(w)
    path = [b]
    while path[-1] != a:
        path.append(prev[path[-1]])
    return path[::-1]


def _cycle_through(g: PlaneGraph, S: set[int], edge: tuple[int, int]) -> list[int]:
    v, w = edge
    prev = {v: v}
    queue = deque([v])
    while queue:
        x = queue.popleft()
        for y in sorted(g.adj[x]):
            if y in S and y not in prev and (x, y) != (v, w):
                prev[y] = x
                queue.append(y)
    path = [w]
    while path[-1] != v:
        path.append(prev[path[-1]])
    return path[::-1]


@dataclass(frozen=True)
class Condition:
    ok: bool
    witness: object = None


@dataclass(frozen=True)
class ValidityReport:
    c1: Condition
    c2: Condition
    c3: Condition
    c4: Condition
    c5: Condition

    @property
    def conditions(self) -> dict[str, Condition]:
        return {"C1": self.c1, "C2": self.c2, "C3": self.c3, "C4": self.c4, "C5": self.c5}

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.conditions.values())

    def failed(self) -> list[str]:
        return [k for k, c in self.conditions.items() if not c.ok]

    def __str__(self) -> str:
        lines = []
        for k, c in self.conditions.items():
            lines.append(f"{k}: pass" if c.ok else f"{k}: FAIL {c.witness}")
        return "\n".join(lines)


_PASS = Condition(True)


def check_partition(g: PlaneGraph, phi: Mapping[int, int]) -> Condition:
    """Color 1 induces a linear forest and color 2 a forest."""
    ones = {v for v in g.vertices if phi[v] == 1}
    twos = {v for v in g.vertices if phi[v] == 2}
    for v in sorted(ones):
        nb = sorted(g.adj[v] & ones)
        if len(nb) > 2:
            return Condition(False, ("degree", 1, v, tuple(nb)))
    for color, S in ((1, ones), (2, twos)):
        e = find_cycle_edge(g, S)
        if e is not None:
            return Condition(False, ("cycle", color, tuple(_cycle_through(g, S, e))))
    return _PASS


def check_valid(inst: Instance, phi: Mapping[int, int]) -> ValidityReport:
    g = inst.graph
    missing = [v for v in g.vertices if v not in phi]
    if missing or any(phi[v] not in (1, 2) for v in g.vertices):
        raise PreconditionError(f"coloring is not total on V(G): missing {missing[:5]}")
    P, Q, z, eta = inst.P, inst.Q, inst.z, inst.eta

    c1 = _PASS
    for u in P:
        if phi[u] != eta[u]:
            c1 = Condition(False, u)
            break
    else:
        for u in sorted(Q):
            if phi[u] != 2:
                c1 = Condition(False, u)
                break

    c2 = check_partition(g, phi)

    c3 = _PASS
    pset = set(P)
    for u in P:
        if eta[u] == 1:
            bad = sorted(v for v in g.adj[u] if v not in pset and phi[v] != 2)
            if bad:
                c3 = Condition(False, bad[0])
                break

    c4 = _PASS
    ones = [u for u in P if eta[u] == 1]
    if len(P) <= 2 and len(ones) == 1:
        u = ones[0]
        for v in sorted(g.adj[u] & Q):
            for w in sorted(g.boundary_neighbors(u)):
                if w != v and mono_path_exists(g, phi, 2, w, v):
                    c4 = Condition(False, tuple(_mono_path(g, phi, 2, w, v)))
                    break
            if not c4.ok:
                break

    c5 = _PASS
    if z is not None and phi[z] == 1:
        red = sorted(w for w in g.adj[z] if phi[w] == 1)
        if len(red) > 1:
            c5 = Condition(False, (z, tuple(red)))

    return ValidityReport(c1, c2, c3, c4, c5)


class FastChecker:
    """Boolean validity test for many colorings of one instance.

    Used by exhaustive enumeration; ``candidates`` yields only colorings that
    already satisfy C1 and C3, so :meth:`ok` checks C2, C4 and C5.
    """

    def __init__(self, inst: Instance):
        g = inst.graph
        self.inst = inst
        self.order = list(g.vertices)
        forced: dict[int, int] = {u: inst.eta[u] for u in inst.P}
        for u in inst.Q:
            forced.setdefault(u, 2)
        pset = set(inst.P)
        for u in inst.P:
            if inst.eta[u] == 1:
                for v in g.adj[u]:
                    if v not in pset:
                        forced.setdefault(v, 2)
        self.forced = forced
        self.free = [v for v in self.order if v not in forced]
        self.edges = g.edges
        self.adj = g.adj
        ones = [u for u in inst.P if inst.eta[u] == 1]
        self.c4_pairs: list[tuple[int, int]] = []
        if len(inst.P) <= 2 and len(ones) == 1:
            u = ones[0]
            for v in sorted(g.adj[u] & inst.Q):
                for w in sorted(g.boundary_neighbors(u)):
                    if w != v:
                        self.c4_pairs.append((w, v))

    def ok(self, phi: Mapping[int, int]) -> bool:
        adj = self.adj
        parent = {v: v for v in self.order}
        deg1: dict[int, int] = {}
        for v, w in self.edges:
            c = phi[v]
            if c != phi[w]:
                continue
            if c == 1:
                deg1[v] = deg1.get(v, 0) + 1
                deg1[w] = deg1.get(w, 0) + 1
                if deg1[v] > 2 or deg1[w] > 2:
                    return False
            rv, rw = _find(parent, v), _find(parent, w)
            if rv == rw:
                return False
            parent[rv] = rw
        for w, v in self.c4_pairs:
            if phi[w] == 2 and phi[v] == 2 and _find(parent, w) == _find(parent, v):
                return False
        z = self.inst.z
        if z is not None and phi[z] == 1:
            if sum(1 for w in adj[z] if phi[w] == 1) > 1:
                return False
        return True
