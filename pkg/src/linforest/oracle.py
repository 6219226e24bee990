"""Brute-force ground truth over all 2-colorings of small instances."""

from __future__ import annotations

from itertools import product

from .instance import Coloring, Instance, validate_instance
from .plane_graph import PlaneGraph, PreconditionError, find_triangle
from .verifier import FastChecker, check_valid

DEFAULT_CAP = 16
HARD_CAP = 24


class CapExceeded(PreconditionError):
    pass


def _check_cap(n: int, cap: int) -> None:
    if n > min(cap, HARD_CAP):
        raise CapExceeded(f"{n} vertices exceeds the enumeration cap {min(cap, HARD_CAP)}")


def iter_valid(inst: Instance):
    """Valid colorings in lexicographic order (ids ascending, color 1 first)."""
    chk = FastChecker(inst)
    order = chk.order
    choices = [(chk.forced[v],) if v in chk.forced else (1, 2) for v in order]
    for combo in product(*choices):
        phi = dict(zip(order, combo))
        if chk.ok(phi):
            yield phi


def enumerate_valid(inst: Instance, cap: int = DEFAULT_CAP) -> tuple[int, Coloring | None]:
    """Count the valid colorings of ``inst`` and return the first one."""
    rep = validate_instance(inst)
    if not rep.ok:
        raise PreconditionError(f"invalid instance: {rep}")
    _check_cap(inst.n, cap)
    count = 0
    first = None
    for phi in iter_valid(inst):
        if first is None:
            first = phi
        count += 1
    if first is not None:
        assert check_valid(inst, first).ok
    return count, first


def first_valid(inst: Instance, cap: int = DEFAULT_CAP) -> Coloring | None:
    _check_cap(inst.n, cap)
    return next(iter_valid(inst), None)


def exists_partition(g: PlaneGraph, cap: int = DEFAULT_CAP) -> tuple[bool, Coloring | None]:
    """Whether some coloring splits ``g`` into a linear forest (1) and a forest (2)."""
    _check_cap(g.n, cap)
    tri = find_triangle(g)
    if tri is not None:
        raise PreconditionError(f"triangle {tri}")
    phi = next(iter_valid(Instance(g)), None)
    return phi is not None, phi
