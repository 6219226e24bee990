"""Recursive valid-coloring algorithm for triangle-free plane graphs.

Every call inspects an instance, picks the first applicable reduction in a
fixed priority order, solves the smaller instances it produces and merges
their colorings.  Reductions are generators: they ``yield`` sub-instances
and receive the sub-colorings back, so the recursion runs on an explicit
stack and depth is not limited by Python's call stack.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Generator, Iterator, Mapping

from .instance import Coloring, Instance, _saturate, validate_instance
from .oracle import first_valid
from .plane_graph import PlaneGraph, PreconditionError, find_triangle, validate_plane_graph
from .verifier import check_partition, check_valid

MICRO_THRESHOLD = 5

MICRO = "Micro"
DISCONNECTED = "Disconnected"
CUT_VERTEX = "CutVertex"
CHORD = "Chord"
INTERNAL_PATH = "InternalPath"
SEPARATING_4CYCLE = "Separating4Cycle"
BOUNDARY_4CYCLE = "Boundary4Cycle"
SATURATE = "Saturate"
FREE_RUN = "FreeRunDelete"
SQUEEZED = "SqueezedDelete"
PAIR = "PairDelete"
PENTAGON = "PentagonDelete"

TAGS = (
    MICRO,
    DISCONNECTED,
    CUT_VERTEX,
    CHORD,
    INTERNAL_PATH,
    SEPARATING_4CYCLE,
    BOUNDARY_4CYCLE,
    SATURATE,
    FREE_RUN,
    SQUEEZED,
    PAIR,
    PENTAGON,
)


class InvalidInstance(PreconditionError):
    """The input violates a precondition; ``report`` says which."""

    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report


class InternalIncompleteness(RuntimeError):
    """No reduction applies to a valid instance.  Carries the instance."""

    def __init__(self, message: str, instance: Instance):
        super().__init__(message)
        self.instance = instance


@dataclass(frozen=True)
class ReductionCase:
    """Which reduction fired, on which vertices.

    ``vertices`` lists the involved vertices in the order the reduction uses
    them (already relabelled, so ``reflected`` and ``start`` only document
    how the boundary was rotated to reach that labelling).
    """

    tag: str
    vertices: tuple[int, ...] = ()
    start: int = 0
    reflected: bool = False
    data: tuple = ()

    def __str__(self) -> str:
        s = f"{self.tag} {' '.join(map(str, self.vertices))}".rstrip()
        if self.data:
            s += f" {self.data}"
        return s


@dataclass
class TraceStep:
    fingerprint: str
    case: ReductionCase
    children: list[str] = field(default_factory=list)


class ReductionTrace(list):
    """Reduction steps in the order they were dispatched (depth first)."""

    def format(self) -> str:
        lines = []
        for st in self:
            kids = ",".join(st.children) if st.children else "-"
            lines.append(f"{st.fingerprint} {st.case.tag} [{' '.join(map(str, st.case.vertices))}] -> {kids}")
        return "\n".join(lines) + ("\n" if lines else "")

    def histogram(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for st in self:
            out[st.case.tag] = out.get(st.case.tag, 0) + 1
        return out


# -- small helpers ----------------------------------------------------------


def _pick_z(g: PlaneGraph, excluded) -> int | None:
    """Smallest boundary vertex outside ``excluded``."""
    best = None
    for v in g.boundary_vertices:
        if v not in excluded and (best is None or v < best):
            best = v
    return best


def _merge(a: Mapping[int, int], b: Mapping[int, int]) -> Coloring:
    out = dict(a)
    for v, c in b.items():
        prev = out.setdefault(v, c)
        assert prev == c, f"sub-colorings disagree on {v}"
    return out


def _measure(inst: Instance) -> tuple[int, int]:
    g = inst.graph
    taken = set(inst.P) | inst.Q | {inst.z}
    return (g.n, sum(1 for v in g.boundary_vertices if v not in taken))


def _with_default_z(inst: Instance) -> Instance:
    if inst.z is not None:
        return inst
    z = _pick_z(inst.graph, set(inst.P) | inst.Q)
    if z is None:
        return inst
    return Instance(inst.graph, inst.P, inst.Q, z, inst.eta)


def _components_without(g: PlaneGraph, removed: set[int]) -> list[set[int]]:
    seen = set(removed)
    comps = []
    for s in g.vertices:
        if s in seen:
            continue
        seen.add(s)
        comp = {s}
        stack = [s]
        while stack:
            v = stack.pop()
            for w in g.neighbors(v):
                if w not in seen:
                    seen.add(w)
                    comp.add(w)
                    stack.append(w)
        comps.append(comp)
    return comps


def _pick_z1(g1: PlaneGraph, P1: tuple[int, ...], Q, eta: Mapping[int, int]) -> int | None:
    """z for the first side of a split when the original z lies elsewhere.

    Prefers boundary vertices outside ``P1`` and ``Q``.  A ``Q`` vertex is
    taken only if an η-1 neighbour in ``P1`` already forces it to color 2;
    otherwise the side goes without z.
    """
    pset = set(P1)
    z1 = _pick_z(g1, pset | set(Q))
    if z1 is not None:
        return z1
    forced = {w for u in P1 if eta[u] == 1 for w in g1.adj[u] if w not in pset}
    return _pick_z(g1, pset | (set(Q) - forced))


def _eta2_set(inst: Instance) -> set[int]:
    return {u for u in inst.P if inst.eta[u] == 2}


# -- detection --------------------------------------------------------------


def _find_chord(inst: Instance) -> tuple[int, int] | None:
    g = inst.graph
    bset = g.boundary_vertices
    mid = inst.middle()
    best = None
    for u in g.boundary.cycle:
        bn = g.boundary_neighbors(u)
        for w in g.adj[u]:
            if w > u and w in bset and w not in bn and mid not in (u, w):
                if best is None or (u, w) < best:
                    best = (u, w)
    return best


def _find_internal_path(inst: Instance) -> tuple[int, int, int] | None:
    g = inst.graph
    bset = g.boundary_vertices
    mid = inst.middle()
    for s in g.vertices:
        if s in bset:
            continue
        bn = sorted(w for w in g.adj[s] if w in bset)
        if len(bn) < 2:
            continue
        for x in bn:
            if x not in inst.Q:
                continue
            for y in bn:
                if y != x and y != mid:
                    return (x, s, y)
    return None


def _find_separating_4cycle(g: PlaneGraph) -> tuple[int, int, int, int] | None:
    # in a triangle-free graph a 4-cycle is determined by its vertex set, and
    # it separates iff it bounds no face (it has no chords)
    face_keys = {frozenset(f.walk) for f in g.faces if len(f) == 4 and len(set(f.walk)) == 4}
    adj = g.adj
    for a in g.vertices:
        mids: dict[int, list[int]] = {}
        for b in adj[a]:
            if b < a:
                continue
            for c in adj[b]:
                if c > a:
                    mids.setdefault(c, []).append(b)
        for c in sorted(mids):
            bs = sorted(mids[c])
            for i in range(len(bs)):
                for j in range(i + 1, len(bs)):
                    if frozenset((a, bs[i], c, bs[j])) not in face_keys:
                        return (a, bs[i], c, bs[j])
    return None


def _boundary_precoloring(inst: Instance) -> tuple[tuple[int, int, int, int], dict[int, int], str] | None:
    """Pick the labelling ``u v w x`` of a 4-vertex boundary and its precoloring."""
    B = inst.graph.boundary.cycle
    P, Q, eta, z = inst.P, inst.Q, inst.eta, inst.z
    labelings = []
    for i in range(4):
        labelings.append((B[i], B[(i + 1) % 4], B[(i + 2) % 4], B[(i + 3) % 4]))
        labelings.append((B[i], B[(i - 1) % 4], B[(i - 2) % 4], B[(i - 3) % 4]))
    pset = set(P)
    for u, v, w, x in labelings:
        if len(P) == 3 and pset == {u, x, w} and P[1] == x and eta[u] == 1:
            return (u, v, w, x), {u: 1, v: 2, w: eta[w], x: eta[x]}, "a"
    for u, v, w, x in labelings:
        if (pset == {u, x} and eta[u] == 1 and eta[x] == 2) or (pset == {u} and eta[u] == 1):
            if w in Q:
                return (u, v, w, x), {u: 1, v: 2, w: 2, x: 2}, "b"
            return (u, v, w, x), {u: 1, v: 2, w: 1, x: 2}, "b"
    for u, v, w, x in labelings:
        if pset == {u, x} and eta[u] == 1 and eta[x] == 1:
            return (u, v, w, x), {u: 1, v: 2, w: 2, x: 1}, "c"
    if all(eta[p] == 2 for p in P) and z is not None:
        for u, v, w, x in labelings:
            if z == u:
                return (u, v, w, x), {u: 1, v: 2, w: 2, x: 2}, "d"
    return None


def dispatch(inst: Instance) -> ReductionCase:
    """First applicable reduction in priority order."""
    g = inst.graph
    if g.n <= MICRO_THRESHOLD:
        # a bare 4-cycle gets its boundary rule rather than the first
        # lexicographic coloring
        if g.n == 4 and g.m == 4 and g.is_connected() and _boundary_precoloring(inst) is not None:
            return ReductionCase(BOUNDARY_4CYCLE, g.boundary.cycle)
        return ReductionCase(MICRO)
    if not g.is_connected():
        return ReductionCase(DISCONNECTED)
    cuts = g.cut_vertices()
    if cuts:
        return ReductionCase(CUT_VERTEX, (cuts[0],))
    chord = _find_chord(inst)
    if chord is not None:
        return ReductionCase(CHORD, chord)
    path = _find_internal_path(inst)
    if path is not None:
        return ReductionCase(INTERNAL_PATH, path)
    cyc = _find_separating_4cycle(g)
    if cyc is not None:
        return ReductionCase(SEPARATING_4CYCLE, cyc)
    B = g.boundary.cycle
    L = len(B)
    if L == 4:
        return ReductionCase(BOUNDARY_4CYCLE, B)
    if _saturate(inst) is not inst:
        return ReductionCase(SATURATE)

    P, Q, z = set(inst.P), inst.Q, inst.z
    taken = P | Q
    for i in range(L):
        if B[i - 1] not in taken and B[i] not in taken and B[(i + 1) % L] not in taken:
            return ReductionCase(FREE_RUN, (B[i - 1], B[i], B[(i + 1) % L]), start=i)

    soft = set(Q) | _eta2_set(inst)
    soft_z = soft | ({z} if z is not None else set())
    order6 = [i for i in range(L) if B[i] != z] + [i for i in range(L) if B[i] == z]
    for i in order6:
        u = B[i]
        if u not in taken and B[i - 1] in soft_z and B[(i + 1) % L] in soft_z:
            # z joins Q' here; if its far boundary neighbour is in Q the
            # pair (u, z) is left for the two-vertex deletion instead
            added = g.adj[u] - P - Q
            if any(g.adj[w] & Q for w in added):
                continue
            return ReductionCase(SQUEEZED, (u,), start=i)

    near_z = z is not None and any(inst.eta[p] == 1 and z in g.adj[p] for p in inst.P)
    for i in range(L):
        a, b = B[i], B[(i + 1) % L]
        if a in taken or b in taken:
            continue
        if B[i - 1] not in soft or B[(i + 2) % L] not in soft:
            continue
        if z in (a, b) or near_z:
            if z == b:
                return ReductionCase(PAIR, (b, a), start=(i + 1) % L, reflected=True)
            return ReductionCase(PAIR, (a, b), start=i)

    if L == 5 and z is not None and z in B:
        j = B.index(z)
        for reflected in (False, True):
            r = -1 if reflected else 1
            u = [B[(j + r * (k - 2)) % 5] for k in range(5)]
            pset = set(inst.P)
            eta = inst.eta
            if pset == {u[0], u[1], u[4]} and eta[u[1]] == 1 and u[3] in Q:
                return ReductionCase(PENTAGON, tuple(u), start=j, reflected=reflected, data=("i",))
            if pset == {u[0], u[1]} and eta[u[0]] == 1 and eta[u[1]] == 1:
                return ReductionCase(PENTAGON, tuple(u), start=j, reflected=reflected, data=("ii",))

    raise InternalIncompleteness("no reduction applies", inst)


# -- reductions -------------------------------------------------------------

Reduction = Generator[Instance, Coloring, Coloring]


def micro_solve(inst: Instance) -> Coloring:
    """Lexicographically first valid coloring by exhaustive search."""
    if inst.n > MICRO_THRESHOLD:
        raise PreconditionError(f"micro solver takes at most {MICRO_THRESHOLD} vertices")
    phi = first_valid(inst, cap=MICRO_THRESHOLD)
    if phi is None:
        rep = validate_instance(inst)
        if not rep.ok:
            raise InvalidInstance(f"invalid instance: {rep}", rep)
        raise InternalIncompleteness("micro instance has no valid coloring", inst)
    return phi


def _reduce_micro(inst: Instance, case: ReductionCase) -> Reduction:
    return micro_solve(inst)
    yield  # pragma: no cover


def _reduce_components(inst: Instance, case: ReductionCase) -> Reduction:
    g = inst.graph
    phi: Coloring = {}
    for comp in g.components:
        cset = set(comp)
        h = g.restrict(comp)
        P = tuple(p for p in inst.P if p in cset)
        Q = inst.Q & cset
        z = inst.z if inst.z in cset else _pick_z(h, set(P) | Q)
        sub = yield Instance(h, P, Q, z, {p: inst.eta[p] for p in P})
        phi.update(sub)
    return phi


def _reduce_cut(inst: Instance, case: ReductionCase) -> Reduction:
    g = inst.graph
    x = case.vertices[0]
    P, Q, z, eta = inst.P, inst.Q, inst.z, inst.eta
    branches = sorted(_components_without(g, {x}), key=min)
    best = None
    for br in branches:
        p2 = sum(1 for p in P if p in br or p == x)
        p1 = sum(1 for p in P if p not in br)
        if p2 > p1:
            continue
        h2 = g.restrict(br | {x})
        if p2 == 0 and x not in h2.boundary_vertices:
            continue
        # ties leave the smaller minimum id on the first side
        key = (p2, -min(br))
        if best is None or key < best[0]:
            best = (key, br, h2)
    assert best is not None, "no admissible side for the cut vertex"
    _, side2, g2 = best
    v1 = set(g.vertices) - side2
    g1 = g.restrict(v1)
    v2 = side2 | {x}
    P1 = tuple(p for p in P if p in v1)
    P2 = tuple(p for p in P if p in v2) or (x,)
    assert x in P2, "P straddles the cut vertex without containing it"
    Q2 = Q & side2
    if z is not None and z in v1:
        z1 = z
        z2 = _pick_z(g2, set(P2) | Q2)
    else:
        z2 = z
        z1 = _pick_z1(g1, P1, Q & v1, eta)
    Q1 = (Q & v1) - {z1}
    phi1 = yield Instance(g1, P1, Q1, z1, {p: eta[p] for p in P1})
    eta2 = {p: eta[p] if p in eta else phi1[p] for p in P2}
    phi2 = yield Instance(g2, P2, Q2, z2, eta2)
    return _merge(phi1, phi2)


def _choose_side(inst: Instance, sep: tuple[int, ...], left: frozenset, right: frozenset) -> tuple[frozenset, frozenset]:
    sset = set(sep)
    rest = [p for p in inst.P if p not in sset]
    if rest:
        if all(p in left for p in rest):
            return left, right
        assert all(p in right for p in rest), "P split by a separator"
        return right, left
    if inst.z is not None and inst.z not in sset:
        return (left, right) if inst.z in left else (right, left)
    return (left, right) if min(left) < min(right) else (right, left)


def _reduce_chord(inst: Instance, case: ReductionCase) -> Reduction:
    g = inst.graph
    x, y = case.vertices
    P, Q, z, eta = inst.P, inst.Q, inst.z, inst.eta
    left, right = g.separator_sides((x, y), closed=False)
    s1, s2 = _choose_side(inst, (x, y), left, right)
    v1 = set(s1) | {x, y}
    g1, g2 = g.restrict(v1), g.restrict(set(s2) | {x, y})
    Q2 = Q & s2
    if z is not None and z in v1:
        z1 = z
        z2 = _pick_z(g2, {x, y} | Q2)
    else:
        z2 = z
        z1 = _pick_z1(g1, P, Q & v1, eta)
    Q1 = (Q & v1) - {z1}
    phi1 = yield Instance(g1, P, Q1, z1, eta)
    phi2 = yield Instance(g2, (x, y), Q2, z2, {x: phi1[x], y: phi1[y]})
    return _merge(phi1, phi2)


def _reduce_internal_path(inst: Instance, case: ReductionCase) -> Reduction:
    g = inst.graph
    x, s, y = case.vertices
    P, Q, z, eta = inst.P, inst.Q, inst.z, inst.eta
    left, right = g.separator_sides((x, s, y), closed=False)
    s1, s2 = _choose_side(inst, (x, s, y), left, right)
    v1 = set(s1) | {x, s, y}
    v2 = set(s2) | {x, s, y}
    g1, g2 = g.restrict(v1), g.restrict(v2)
    Q1 = Q & v1
    Q2 = (Q & v2) - {y}
    if z is not None and z in v1:
        z1 = z
        z2 = _pick_z(g2, Q2 | {s, y})
    else:
        z1, z2 = s, z
    phi1 = yield Instance(g1, P, Q1, z1, eta)
    phi2 = yield Instance(g2, (s, y), Q2, z2, {s: phi1[s], y: phi1[y]})
    return _merge(phi1, phi2)


def _orient_cycle(cyc: tuple[int, ...], phi: Mapping[int, int]) -> tuple[int, int, int, int]:
    """Relabel a 4-cycle so that ``u1`` has color 1 and ``u2`` color 2."""
    for i in range(4):
        if phi[cyc[i]] != 1:
            continue
        if phi[cyc[(i + 1) % 4]] == 2:
            return tuple(cyc[(i + k) % 4] for k in range(4))
        if phi[cyc[(i - 1) % 4]] == 2:
            return tuple(cyc[(i - k) % 4] for k in range(4))
    raise AssertionError(f"4-cycle {cyc} is monochromatic")


def _color_inside(g: PlaneGraph, inner: set[int], u: tuple[int, int, int, int], phi1: Mapping[int, int]) -> Reduction:
    """Color ``inner`` given a coloring of the 4-cycle ``u`` around it."""
    u1, u2, u3, u4 = u
    h = g.restrict(inner | {u2, u3, u4})
    nb = {w for w in g.adj[u1] if w in inner or w in (u2, u4)}
    if phi1[u4] == 2:
        P2: tuple[int, ...] = (u3,)
        Q2 = nb
    else:
        P2 = (u3, u4)
        Q2 = nb - {u4}
    z2 = _pick_z(h, set(P2) | Q2)
    phi2 = yield Instance(h, P2, frozenset(Q2), z2, {p: phi1[p] for p in P2})
    return _merge(phi1, phi2)


def _reduce_sep4(inst: Instance, case: ReductionCase) -> Reduction:
    g = inst.graph
    cyc = case.vertices
    left, right = g.separator_sides(cyc, closed=True)
    assert left and right, "4-cycle does not separate"
    bset = g.boundary_vertices
    ext, inner = (left, right) if left & bset else (right, left)
    assert not (inner & bset), "boundary vertex inside a separating 4-cycle"
    g1 = g.restrict(set(ext) | set(cyc))
    phi1 = yield Instance(g1, inst.P, inst.Q, inst.z, inst.eta)
    u = _orient_cycle(cyc, phi1)
    phi2 = yield from _color_inside(g, set(inner), u, {v: phi1[v] for v in cyc})
    return _merge(phi1, phi2)


def _reduce_boundary4(inst: Instance, case: ReductionCase) -> Reduction:
    g = inst.graph
    picked = _boundary_precoloring(inst)
    if picked is None:
        raise InternalIncompleteness("no precoloring rule covers the 4-vertex boundary", inst)
    u, phi1, _ = picked
    inner = set(g.vertices) - set(u)
    return (yield from _color_inside(g, inner, u, phi1))


def _reduce_saturate(inst: Instance, case: ReductionCase) -> Reduction:
    return (yield _saturate(inst))


def _delete_and_extend(inst: Instance, removed: tuple[int, ...], P, Q, z, eta) -> Reduction:
    g = inst.graph
    h = g.delete_vertices(removed)
    Q = frozenset(Q)
    for q in sorted(Q):
        hit = h.adj[q] & Q
        assert not hit, f"Q' not independent: {q}-{min(hit)}"
    if z is None or z in Q or z in P or z not in h:
        z = _pick_z(h, set(P) | Q)
    phi = yield Instance(h, tuple(P), Q, z, eta)
    out = dict(phi)
    for v in removed:
        out[v] = 1
    return out


def _reduce_free_run(inst: Instance, case: ReductionCase) -> Reduction:
    g = inst.graph
    _, mid, d = case.vertices
    assert mid == inst.z, "free boundary triple not centred at z after saturation"
    pset = set(inst.P)
    Q = (inst.Q | g.adj[d]) - pset
    return (yield from _delete_and_extend(inst, (d,), inst.P, Q, None, inst.eta))


def _reduce_squeezed(inst: Instance, case: ReductionCase) -> Reduction:
    g = inst.graph
    (u,) = case.vertices
    Q = (inst.Q | g.adj[u]) - set(inst.P)
    z = inst.z if inst.z != u else None
    return (yield from _delete_and_extend(inst, (u,), inst.P, Q, z, inst.eta))


def _pair_face_ends(g: PlaneGraph, a: int, b: int) -> tuple[int, int]:
    """Neighbours ``x`` of ``a`` and ``y`` of ``b`` on the inner face at edge ``ab``."""
    d = (a, b) if (a, b) not in g.boundary_darts else (b, a)
    face = g.faces[g.dart_face[d]].darts
    i = face.index(d)
    before, after = face[i - 1], face[(i + 1) % len(face)]
    if d == (a, b):
        return before[0], after[1]
    return after[1], before[0]


def _reduce_pair(inst: Instance, case: ReductionCase) -> Reduction:
    g = inst.graph
    a, b = case.vertices
    x, y = _pair_face_ends(g, a, b)
    drop = set(inst.P) | {a, b}
    if y not in inst.Q:
        drop.add(y)
    Q = (inst.Q | g.adj[a] | g.adj[b]) - drop
    z = y if y not in inst.P and y not in Q else None
    return (yield from _delete_and_extend(inst, (a, b), inst.P, Q, z, inst.eta))


def _reduce_pentagon(inst: Instance, case: ReductionCase) -> Reduction:
    g = inst.graph
    u = case.vertices
    if case.data == ("i",):
        P2 = (u[3], u[4])
        eta2 = {u[3]: 2, u[4]: 2}
        Q2 = set(g.adj[u[1]])
    else:
        P2 = (u[3], u[4], u[0])
        eta2 = {u[0]: 1, u[3]: 2, u[4]: 2}
        Q2 = set(g.adj[u[1]]) - {u[0]}
    assert not (set(P2) & Q2), "pentagon residue has P' meeting Q'"
    return (yield from _delete_and_extend(inst, (u[1],), P2, Q2, None, eta2))


_HANDLERS: dict[str, Callable[[Instance, ReductionCase], Reduction]] = {
    MICRO: _reduce_micro,
    DISCONNECTED: _reduce_components,
    CUT_VERTEX: _reduce_cut,
    CHORD: _reduce_chord,
    INTERNAL_PATH: _reduce_internal_path,
    SEPARATING_4CYCLE: _reduce_sep4,
    BOUNDARY_4CYCLE: _reduce_boundary4,
    SATURATE: _reduce_saturate,
    FREE_RUN: _reduce_free_run,
    SQUEEZED: _reduce_squeezed,
    PAIR: _reduce_pair,
    PENTAGON: _reduce_pentagon,
}


# -- driver -----------------------------------------------------------------


def _solve(
    root: Instance,
    choose: Callable[[Instance], ReductionCase],
    trace: ReductionTrace | None,
    debug: bool,
) -> Coloring:
    def start(inst: Instance):
        inst = _with_default_z(inst)
        case = choose(inst)
        step = None
        if trace is not None:
            step = TraceStep(inst.fingerprint(), case)
            trace.append(step)
        return _HANDLERS[case.tag](inst, case), inst, step

    stack = [start(root)]
    value = None
    while stack:
        gen, inst, step = stack[-1]
        try:
            sub = gen.send(value)
        except StopIteration as stop:
            stack.pop()
            value = stop.value
            if debug:
                rep = check_valid(inst, value)
                assert rep.ok, f"{step.case if step else '?'} produced an invalid coloring:\n{rep}"
            continue
        if _measure(sub) >= _measure(inst):
            raise AssertionError(f"recursion measure did not drop: {_measure(inst)} -> {_measure(sub)}")
        if debug:
            rep = validate_instance(sub)
            assert rep.ok, f"invalid sub-instance: {rep}"
        if step is not None:
            step.children.append(sub.fingerprint())
        stack.append(start(sub))
        value = None
    return value


def valid_color(inst: Instance, *, debug: bool = False, record: bool = True) -> tuple[Coloring, ReductionTrace]:
    """A coloring satisfying C1-C5 for ``inst``, with the reductions used."""
    rep = validate_instance(inst)
    if not rep.ok:
        raise InvalidInstance(f"invalid instance: {rep}", rep)
    trace = ReductionTrace()
    phi = _solve(inst, dispatch, trace if record else None, debug)
    return phi, trace


def replay(inst: Instance, trace: ReductionTrace) -> Coloring:
    """Re-run ``inst`` taking each reduction from ``trace`` instead of detecting it."""
    steps: Iterator[TraceStep] = iter(trace)

    def choose(sub: Instance) -> ReductionCase:
        step = next(steps)
        if step.fingerprint != sub.fingerprint():
            raise ValueError(f"trace diverged at {step.fingerprint}")
        return step.case

    return _solve(inst, choose, None, False)


def partition(g: PlaneGraph, *, debug: bool = False, trace: ReductionTrace | None = None) -> Coloring:
    """Split a triangle-free plane graph into a linear forest (1) and a forest (2).

    Reduction steps are appended to ``trace`` when one is given.
    """
    rep = validate_plane_graph(g)
    if not rep.ok:
        raise InvalidInstance(f"not a simple plane graph: {rep.witness}", rep)
    tri = find_triangle(g)
    if tri is not None:
        raise InvalidInstance(f"triangle {tri[0]} {tri[1]} {tri[2]}", rep)
    phi: Coloring = {}
    for comp in g.components:
        h = g.restrict(comp) if len(g.components) > 1 else g
        z = min(h.boundary_vertices)
        sub, steps = valid_color(Instance(h, (), frozenset(), z, {}), debug=debug, record=trace is not None)
        if trace is not None:
            trace.extend(steps)
        phi.update(sub)
    res = check_partition(g, phi)
    assert res.ok, f"partition failed verification: {res.witness}"
    return phi
