"""Command line entry point: ``linforest partition|verify|gen|oracle|fuzz``."""

from __future__ import annotations

import argparse
import sys
from typing import Mapping, Sequence

from .fuzz import run_fuzz
from .generator import gen_cube, gen_cycle, gen_grid, gen_path, gen_quadrangulation, sparsify
from .instance import Instance, format_coloring, format_instance, parse_coloring, parse_instance
from .oracle import DEFAULT_CAP, enumerate_valid, exists_partition
from .partitioner import InternalIncompleteness, ReductionTrace, partition, valid_color
from .plane_graph import PlaneGraph, find_triangle, format_plane_graph, validate_plane_graph
from .verifier import check_partition, check_valid

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_VERIFY = 2
EXIT_INCOMPLETE = 3


class InputError(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as e:
        raise InputError(f"{path}: {e.strerror}") from None


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w") as fh:
        fh.write(text)


def _load(path: str) -> tuple[Instance, bool]:
    """Parse a graph or instance file; the flag says whether constraints were given."""
    try:
        inst = parse_instance(_read(path))
    except ValueError as e:
        raise InputError(f"{path}: {e}") from None
    g = inst.graph
    rep = validate_plane_graph(g)
    if not rep.ok:
        raise InputError(f"{path}: not a plane graph: {rep.witness}")
    tri = find_triangle(g)
    if tri is not None:
        raise InputError(f"{path}: triangle {tri[0]} {tri[1]} {tri[2]}")
    constrained = bool(inst.P or inst.Q or inst.z is not None)
    return inst, constrained


def to_dot(g: PlaneGraph, phi: Mapping[int, int] | None = None) -> str:
    """Graphviz rendering; color-1 vertices are filled red, edges inside a class are bold."""
    lines = ["graph G {", "  node [shape=circle];"]
    for v in g.vertices:
        attrs = ""
        if phi is not None and phi.get(v) == 1:
            attrs = ' [style=filled, fillcolor="#e06666"]'
        lines.append(f"  {v}{attrs};")
    for a, b in g.edges:
        attrs = ""
        if phi is not None and phi.get(a) == phi.get(b):
            attrs = " [penwidth=2.5]"
        lines.append(f"  {a} -- {b}{attrs};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def cmd_partition(args) -> int:
    inst, constrained = _load(args.file)
    trace = ReductionTrace()
    try:
        if constrained:
            phi, trace = valid_color(inst, debug=args.debug)
        else:
            phi = partition(inst.graph, debug=args.debug, trace=trace if args.trace else None)
    except InternalIncompleteness as e:
        path = args.dump or "incomplete.instance"
        _write(path, format_instance(e.instance))
        print(f"internal incompleteness: {e}; instance written to {path}", file=sys.stderr)
        return EXIT_INCOMPLETE
    except AssertionError as e:
        print(f"verification failed: {e}", file=sys.stderr)
        return EXIT_VERIFY
    _write(args.output, format_coloring(phi))
    if args.trace:
        _write(args.trace, trace.format())
    if args.dot:
        _write(args.dot, to_dot(inst.graph, phi))
    if args.verify:
        if constrained:
            rep = check_valid(inst, phi)
            ok, text = rep.ok, str(rep)
        else:
            res = check_partition(inst.graph, phi)
            ok, text = res.ok, "C2: pass" if res.ok else f"C2: FAIL {res.witness}"
        print(text, file=sys.stderr)
        if not ok:
            return EXIT_VERIFY
    return EXIT_OK


def cmd_verify(args) -> int:
    inst, constrained = _load(args.file)
    try:
        phi = parse_coloring(_read(args.coloring))
    except ValueError as e:
        raise InputError(f"{args.coloring}: {e}") from None
    missing = [v for v in inst.graph.vertices if v not in phi]
    if missing:
        raise InputError(f"{args.coloring}: no color for vertex {missing[0]}")
    if constrained:
        rep = check_valid(inst, phi)
        print(rep)
        return EXIT_OK if rep.ok else EXIT_VERIFY
    res = check_partition(inst.graph, phi)
    print("C2: pass" if res.ok else f"C2: FAIL {res.witness}")
    return EXIT_OK if res.ok else EXIT_VERIFY


def cmd_gen(args) -> int:
    kind = args.kind
    if kind == "cycle":
        g = gen_cycle(args.n)
    elif kind == "path":
        g = gen_path(args.n)
    elif kind == "grid":
        g = gen_grid(args.rows, args.cols)
    elif kind == "cube":
        g = gen_cube()
    else:
        g = gen_quadrangulation(args.n, args.seed)
    if args.sparsify:
        g = sparsify(g, args.sparsify, args.seed)
    _write(args.output, format_plane_graph(g))
    return EXIT_OK


def cmd_oracle(args) -> int:
    inst, constrained = _load(args.file)
    if args.partition_only or not constrained:
        found, phi = exists_partition(inst.graph, cap=args.cap)
        print("partition exists" if found else "no partition")
        if phi is not None:
            sys.stdout.write(format_coloring(phi))
        return EXIT_OK
    count, first = enumerate_valid(inst, cap=args.cap)
    print(f"valid colorings: {count}")
    if first is not None:
        sys.stdout.write(format_coloring(first))
    return EXIT_OK


def cmd_fuzz(args) -> int:
    report = run_fuzz(args.count, args.max_n, args.seed, workers=args.workers, out_dir=args.out_dir)
    sys.stdout.write(report.summary())
    for r in report.failed + report.incomplete:
        print(f"case {r.index} (n={r.n}, p={r.p}): {r.status} {r.detail}")
    if report.incomplete:
        return EXIT_INCOMPLETE
    if report.failed:
        return EXIT_VERIFY
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="linforest", description="Forest + linear forest partitions of triangle-free plane graphs.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("partition", help="color a graph or instance file")
    p.add_argument("file", help="graph or instance file ('-' for stdin)")
    p.add_argument("-o", "--output", help="coloring file (default stdout)")
    p.add_argument("--verify", action="store_true", help="check the result and set the exit code")
    p.add_argument("--dot", metavar="FILE", help="write a DOT rendering")
    p.add_argument("--trace", metavar="FILE", help="write the reduction trace")
    p.add_argument("--debug", action="store_true", help="validate every intermediate step")
    p.add_argument("--dump", metavar="FILE", help="where to write an instance no reduction covers")
    p.set_defaults(func=cmd_partition)

    p = sub.add_parser("verify", help="check a coloring against a graph or instance")
    p.add_argument("file")
    p.add_argument("coloring")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gen", help="generate a graph file")
    p.add_argument("--kind", choices=("cycle", "path", "grid", "cube", "quad"), default="quad")
    p.add_argument("--n", type=int, default=10)
    p.add_argument("--rows", type=int, default=3)
    p.add_argument("--cols", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--sparsify", type=float, default=0.0, metavar="P")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("oracle", help="exhaustive search on a small graph or instance")
    p.add_argument("file")
    p.add_argument("--partition-only", action="store_true", help="ignore P, Q, z and only ask for a partition")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("fuzz", help="partition and verify seeded random graphs")
    p.add_argument("--count", type=int, default=1000)
    p.add_argument("--max-n", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out-dir", default="fuzz-failures")
    p.set_defaults(func=cmd_fuzz)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
