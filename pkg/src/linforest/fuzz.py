"""Seeded fuzzing of :func:`partition` on sparsified quadrangulations."""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from multiprocessing import Pool

from .generator import SplitMix64, derive_seed, gen_quadrangulation, sparsify
from .instance import Instance, format_instance
from .partitioner import InternalIncompleteness, ReductionTrace, partition
from .plane_graph import PlaneGraph
from .verifier import check_partition

SPARSITY = (0.0, 0.1, 0.3)


def case_graph(seed: int, index: int, max_n: int) -> tuple[PlaneGraph, int, float]:
    """The graph of fuzz case ``index``, with its size and sparsity."""
    rng = SplitMix64(derive_seed(seed, index))
    n = 4 + rng.below(max_n - 3)
    p = SPARSITY[rng.below(len(SPARSITY))]
    g = gen_quadrangulation(n, rng.next_u64())
    return sparsify(g, p, rng.next_u64()), n, p


@dataclass
class CaseResult:
    index: int
    n: int
    p: float
    status: str  # "pass", "fail" or "incomplete"
    detail: str = ""
    histogram: dict[str, int] = field(default_factory=dict)
    coloring: dict[int, int] | None = None
    failing: str | None = None  # instance text to persist


def run_case(seed: int, index: int, max_n: int, keep_coloring: bool = False) -> CaseResult:
    g, n, p = case_graph(seed, index, max_n)
    trace = ReductionTrace()
    try:
        phi = partition(g, trace=trace)
    except InternalIncompleteness as e:
        return CaseResult(index, n, p, "incomplete", str(e), failing=format_instance(e.instance))
    except AssertionError as e:
        return CaseResult(index, n, p, "fail", str(e), failing=format_instance(Instance(g)))
    res = check_partition(g, phi)
    status = "pass" if res.ok else "fail"
    return CaseResult(
        index,
        n,
        p,
        status,
        "" if res.ok else str(res.witness),
        trace.histogram(),
        phi if keep_coloring else None,
        None if res.ok else format_instance(Instance(g)),
    )


def _run(args):
    return run_case(*args)


@dataclass
class FuzzReport:
    results: list[CaseResult]

    @property
    def passed(self) -> int:
        return sum(r.status == "pass" for r in self.results)

    @property
    def failed(self) -> list[CaseResult]:
        return [r for r in self.results if r.status == "fail"]

    @property
    def incomplete(self) -> list[CaseResult]:
        return [r for r in self.results if r.status == "incomplete"]

    @property
    def ok(self) -> bool:
        return not self.failed and not self.incomplete

    def histogram(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for r in self.results:
            for k, v in r.histogram.items():
                out[k] = out.get(k, 0) + v
        return dict(sorted(out.items()))

    def summary(self) -> str:
        lines = [
            f"cases: {len(self.results)}",
            f"pass: {self.passed}",
            f"fail: {len(self.failed)}",
            f"incomplete: {len(self.incomplete)}",
            "reductions:",
        ]
        lines += [f"  {k} {v}" for k, v in self.histogram().items()]
        return "\n".join(lines) + "\n"


def run_fuzz(
    count: int,
    max_n: int = 50,
    seed: int = 0,
    workers: int = 1,
    out_dir: str | None = None,
    keep_colorings: bool = False,
) -> FuzzReport:
    """Run ``count`` cases; failing instances are written to ``out_dir``."""
    if max_n < 4:
        raise ValueError("max_n must be at least 4")
    jobs = [(seed, i, max_n, keep_colorings) for i in range(count)]
    if workers > 1:
        with Pool(workers) as pool:
            results = pool.map(_run, jobs, chunksize=64)
    else:
        results = [_run(j) for j in jobs]
    results.sort(key=lambda r: r.index)
    if out_dir is not None:
        for r in results:
            if r.failing is not None:
                os.makedirs(out_dir, exist_ok=True)
                path = os.path.join(out_dir, f"fuzz-{seed}-{r.index}.instance")
                with open(path, "w") as fh:
                    fh.write(r.failing)
    return FuzzReport(results)
