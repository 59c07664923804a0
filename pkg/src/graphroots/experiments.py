"""Experiment drivers behind the CLI: deterministic task lists, optional
worker pools, and rows ready for CSV serialization.

Every driver returns plain row tuples in an order fixed by task index, so a
rerun with the same seed gives byte-identical CSV bodies regardless of the
worker count. Randomness always flows through RngSpec streams keyed by
(seed, sample index).
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import asdict, dataclass
from multiprocessing import Pool
from typing import Callable, Iterator, Sequence

from .enumeration import (
    enumerate_connected,
    enumerate_connected_indexed,
    graphs_from_file,
)
from .graphs import (
    Graph,
    RngSpec,
    add_edges,
    gen_complete,
    gen_complete_bipartite,
    gen_cycle,
    gen_empty,
    gen_er,
    gen_path,
    parse_graph6,
    write_graph6,
)
from .homexpansion import (
    default_holdout_graphs,
    default_sample_graphs,
    solve_ck,
    verify_expansion,
)
from .measures import (
    RootMeasure,
    holomorphic_moment,
    ks_distance,
    matching_measure,
    rescale,
    semicircle,
)
from .polynomials import (
    chromatic_poly,
    coloring_rate,
    matching_counts,
    matching_counts_complete,
    matching_poly,
    modified_matching_poly,
)
from .rootfind import (
    DEFAULT_IMAG_TOL,
    DEFAULT_ROOT_TOL,
    certify_real,
    find_roots,
    hermite_zeros,
)

_AUTO_FORCE_FAMILIES = {"path", "cycle", "complete", "empty"}


def _map_ordered(fn: Callable, tasks: Sequence, workers: int) -> list:
    """Order-preserving map; results merged by task index, never completion
    order, so output is independent of the worker count."""
    if workers <= 1 or len(tasks) <= 1:
        return [fn(t) for t in tasks]
    with Pool(workers) as pool:
        return pool.map(fn, tasks, chunksize=max(1, len(tasks) // (workers * 8)))


def parse_gen_spec(spec: str) -> tuple[str, Graph]:
    """`name:params` graph source, e.g. complete:5, cycle:100, er:10,0.5,7."""
    name, _, params = spec.partition(":")
    parts = [p for p in params.split(",") if p] if params else []
    if name == "path":
        return name, gen_path(int(parts[0]))
    if name == "cycle":
        return name, gen_cycle(int(parts[0]))
    if name == "complete":
        return name, gen_complete(int(parts[0]))
    if name == "empty":
        return name, gen_empty(int(parts[0]))
    if name == "complete_bipartite":
        return name, gen_complete_bipartite(int(parts[0]), int(parts[1]))
    if name == "er":
        n, p = int(parts[0]), float(parts[1])
        seed = int(parts[2]) if len(parts) > 2 else 0
        return name, gen_er(n, p, RngSpec(seed))
    raise ValueError(f"unknown generator spec {spec!r}")


# ---------------------------------------------------------------------------
# roots command
# ---------------------------------------------------------------------------

@dataclass
class RootsResult:
    root_rows: list[tuple]
    moment_rows: list[tuple]
    meta: dict


def run_roots(graph6: str | None = None, gen: str | None = None,
              poly: str = "chromatic", rescale_kind: str = "none",
              k_max: int = 8, tol: float = DEFAULT_ROOT_TOL,
              imag_tol: float = DEFAULT_IMAG_TOL,
              force: bool = False) -> RootsResult:
    if (graph6 is None) == (gen is None):
        raise ValueError("exactly one of graph6/gen must be given")
    if gen is not None:
        family, g = parse_gen_spec(gen)
        force = force or family in _AUTO_FORCE_FAMILIES
    else:
        family, g = "graph6", parse_graph6(graph6)

    n = g.n
    if poly == "chromatic":
        grouped, res_meta = _rootset_grouped(chromatic_poly(g, force=force), tol)
    elif poly == "matching":
        if n >= 42 and g.edge_count == n * (n - 1) // 2:
            grouped = [(complex(x, 0.0), 1) for x in hermite_zeros(n)]
            res_meta = {"residualBound": 0.0, "method": "hermite-jacobi", "tol": tol}
        else:
            rs = find_roots(matching_poly(g), tol=tol)
            certify_real(rs, imag_tol=imag_tol)
            grouped, res_meta = list(rs.grouped), rs.meta()
    elif poly == "modified":
        grouped, res_meta = _rootset_grouped(modified_matching_poly(g), tol)
    else:
        raise ValueError(f"unknown polynomial kind {poly!r}")

    factor = {"none": 1.0, "n": float(n), "sqrt-n": math.sqrt(n)}.get(rescale_kind)
    if factor is None:
        raise ValueError(f"unknown rescale kind {rescale_kind!r}")

    root_rows = [(z.real / factor, z.imag / factor, m) for z, m in grouped]
    points = tuple(z / factor for z, m in grouped for _ in range(m))
    measure = RootMeasure(points=points, scale=factor, source_tag=f"{poly}:{family}")
    moment_rows = []
    for k in range(k_max + 1):
        mom = holomorphic_moment(measure, k)
        moment_rows.append((k, mom.real, mom.imag))
    meta = {
        "graph6": write_graph6(g), "n": n, "edges": g.edge_count,
        "poly": poly, "rescale": rescale_kind, "scale_factor": factor,
        **res_meta,
    }
    # density-overlay consumers need the edge probability when there is one
    if family == "complete":
        meta["p"] = 1.0
    elif family == "er" and gen is not None:
        meta["p"] = float(gen.split(":")[1].split(",")[1])
    return RootsResult(root_rows, moment_rows, meta)


def _rootset_grouped(p, tol) -> tuple[list, dict]:
    rs = find_roots(p, tol=tol)
    return list(rs.grouped), rs.meta()


# ---------------------------------------------------------------------------
# conjecture verification (root modulus <= n-1)
# ---------------------------------------------------------------------------

@dataclass
class ConjectureSummary:
    n: int
    slack: float
    processed: int = 0
    violations: int = 0
    max_modulus: float = float("-inf")
    extremal_graph6: str = ""
    next_parent: int = 0
    finished: bool = False

    def to_json(self) -> dict:
        return asdict(self)

    @staticmethod
    def from_json(obj: dict) -> "ConjectureSummary":
        return ConjectureSummary(**obj)


def _conjecture_check(task: tuple[str, int, float]) -> tuple:
    g6, n, slack = task
    g = parse_graph6(g6)
    rs = find_roots(chromatic_poly(g))
    bound = n - 1 + slack
    max_mod = max(abs(z) for z in rs.points)
    reals = [z.real for z in rs.points if abs(z.imag) <= 1e-8 * (1 + abs(z))]
    max_real = max(reals) if reals else 0.0
    min_real = min(reals) if reals else 0.0
    violation = int(max_mod > bound or max_real > bound or min_real < -slack)
    return (g6, max_mod, max_real, min_real, violation)


def run_verify_conjecture(
    n: int,
    slack: float = 1e-6,
    workers: int = 1,
    checkpoint_path: str | None = None,
    from_file: str | None = None,
    parent_chunk: int = 64,
    on_rows: Callable[[list[tuple]], None] | None = None,
) -> tuple[list[tuple], ConjectureSummary]:
    """Check every connected graph of order n: all chromatic roots of modulus
    at most n-1+slack, no real root above n-1+slack, none below -slack.

    Streams the enumeration, checks in deterministic batches, and checkpoints
    (n, next parent index) so an interrupted run resumes exactly."""
    summary = ConjectureSummary(n=n, slack=slack)
    if checkpoint_path and os.path.exists(checkpoint_path):
        with open(checkpoint_path, "r", encoding="utf-8") as fh:
            summary = ConjectureSummary.from_json(json.load(fh))
        if summary.n != n or summary.slack != slack:
            raise ValueError("checkpoint does not match requested run")

    if from_file is not None:
        stream: Iterator[tuple[int, int, Graph]] = (
            (i, 0, g) for i, g in enumerate(graphs_from_file(from_file))
            if i >= summary.next_parent and g.is_connected()
        )
    else:
        stream = enumerate_connected_indexed(n, from_parent=summary.next_parent)

    rows: list[tuple] = []
    batch: list[tuple[int, str]] = []

    def flush(batch_rows: list[tuple[int, str]]) -> None:
        tasks = [(g6, n, summary.slack) for _, g6 in batch_rows]
        results = _map_ordered(_conjecture_check, tasks, workers)
        for row in results:
            summary.processed += 1
            summary.violations += row[4]
            if row[1] > summary.max_modulus:
                summary.max_modulus = row[1]
                summary.extremal_graph6 = row[0]
        rows.extend(results)
        if on_rows:
            on_rows(results)
        summary.next_parent = batch_rows[-1][0] + 1
        if checkpoint_path:
            with open(checkpoint_path, "w", encoding="utf-8") as fh:
                json.dump(summary.to_json(), fh)

    batch_parents = 0
    prev_parent: int | None = None
    for pidx, _, g in stream:
        if pidx != prev_parent:
            if batch_parents >= parent_chunk:
                flush(batch)
                batch = []
                batch_parents = 0
            batch_parents += 1
            prev_parent = pidx
        batch.append((pidx, write_graph6(g)))
    if batch:
        flush(batch)
    summary.finished = True
    if checkpoint_path:
        with open(checkpoint_path, "w", encoding="utf-8") as fh:
            json.dump(summary.to_json(), fh)
    return rows, summary


# ---------------------------------------------------------------------------
# Erdos-Renyi chromatic root clouds
# ---------------------------------------------------------------------------

def _er_chromatic_task(task: tuple[int, float, int, int, int]) -> tuple:
    n, p, seed, idx, k_max = task
    g = gen_er(n, p, RngSpec(seed), sample_index=idx)
    rs = find_roots(chromatic_poly(g))
    nu = [z / n for z in rs.points]
    moments = [complex(sum(z**k for z in nu) / len(nu)) for k in range(k_max + 1)]
    return (idx, write_graph6(g), nu, moments)


def run_er_chromatic(n: int, p: float, samples: int, seed: int,
                     workers: int = 1, k_max: int = 8):
    """Rescaled chromatic root clouds of G(n,p) samples plus per-k moment
    statistics across samples."""
    if n > 16:
        raise ValueError("er-chromatic capped at n <= 16")
    tasks = [(n, p, seed, i, k_max) for i in range(samples)]
    results = _map_ordered(_er_chromatic_task, tasks, workers)
    point_rows = []
    for idx, g6, nu, _ in results:
        for z in nu:
            point_rows.append((idx, g6, z.real, z.imag))
    moment_rows = []
    for k in range(k_max + 1):
        vals = [moms[k] for _, _, _, moms in results]
        mre = sum(v.real for v in vals) / len(vals)
        mim = sum(v.imag for v in vals) / len(vals)
        vre = sum((v.real - mre) ** 2 for v in vals) / len(vals)
        vim = sum((v.imag - mim) ** 2 for v in vals) / len(vals)
        moment_rows.append((k, mre, mim, vre, vim))
    meta = {"n": n, "p": p, "samples": samples, "seed": seed, "k_max": k_max}
    return point_rows, moment_rows, meta


# ---------------------------------------------------------------------------
# matching measures vs the semicircle
# ---------------------------------------------------------------------------

def _matching_task(task: tuple[int, float, int, int]) -> tuple:
    n, p, seed, idx = task
    g = gen_er(n, p, RngSpec(seed), sample_index=idx)
    counts = matching_counts(g)
    lam = rescale(matching_measure(g), math.sqrt(n))
    ref = semicircle(p)
    ks = ks_distance(lam, ref)
    moments = [holomorphic_moment(lam, k).real for k in (2, 4, 6)]
    ck = matching_counts_complete(n)
    ratios = []
    for k in range(1, 5):
        have = counts[k] if k < len(counts) else 0
        ratios.append(have / ck[k])
    return (n, idx, ks, *moments, *ratios)


def run_matching_semicircle(ns: Sequence[int], p: float, samples: int,
                            seed: int, workers: int = 1):
    """Per-sample KS distance to SC_p, even moments of the rescaled matching
    measure, and matching-count ratios against the complete graph."""
    for n in ns:
        if n > 26:
            raise ValueError("matching-semicircle capped at n <= 26")
    tasks = [(n, p, seed, n * 1_000_000 + s) for n in ns for s in range(samples)]
    rows = _map_ordered(_matching_task, tasks, workers)
    summary_rows = []
    for n in ns:
        sub = [r for r in rows if r[0] == n]
        means = [sum(r[i] for r in sub) / len(sub) for i in range(2, 10)]
        summary_rows.append((n, *means))
    meta = {"ns": list(ns), "p": p, "samples": samples, "seed": seed}
    return rows, summary_rows, meta


# ---------------------------------------------------------------------------
# coloring rate
# ---------------------------------------------------------------------------

def complete_rate_limit(c: float) -> float:
    """Limit of the complete-graph rate: C^C / (e (C-1)^(C-1))."""
    return math.exp(c * math.log(c) - (c - 1) * math.log(c - 1) - 1)


def run_coloring_rate(family: str, c: float, ns: Sequence[int],
                      force_c: bool = False):
    """a_n = P(G_n, C n)^(1/n) / n along a named graph family."""
    builders = {"complete": gen_complete, "empty": gen_empty,
                "path": gen_path, "cycle": gen_cycle}
    if family not in builders:
        raise ValueError(f"unknown family {family!r}; use complete|empty|path|cycle")
    rows = []
    limit = complete_rate_limit(c) if family == "complete" else ""
    for n in ns:
        g = builders[family](n)
        rate = coloring_rate(g, c, force_c=force_c, force_order=True)
        rows.append((n, rate, limit))
    meta = {"family": family, "C": c, "ns": list(ns)}
    if family == "complete":
        meta["analytic_limit"] = limit
    return rows, meta


# ---------------------------------------------------------------------------
# edge-addition displacement probe
# ---------------------------------------------------------------------------

def _measure_of(g: Graph) -> RootMeasure:
    rs = find_roots(chromatic_poly(g))
    return RootMeasure(points=rs.points, scale=1.0, source_tag=write_graph6(g))


def _perturb_task(task: tuple[str, tuple[tuple[int, int], ...]]) -> tuple:
    from .measures import bottleneck_displacement
    g6, pairs = task
    g = parse_graph6(g6)
    g2, inc = add_edges(g, pairs)
    value, _ = bottleneck_displacement(_measure_of(g), _measure_of(g2))
    label = ";".join(f"{u}-{v}" for u, v in pairs)
    return (g6, label, max(inc), value)


def run_perturb_single(graph6: str, pairs: Sequence[tuple[int, int]],
                       max_increase: int | None = None, force: bool = False):
    g = parse_graph6(graph6)
    _, inc = add_edges(g, pairs)
    if max_increase is not None and max(inc) > max_increase and not force:
        raise ValueError(
            f"degree increase {max(inc)} exceeds allowed {max_increase} "
            "(pass force to override)"
        )
    row = _perturb_task((graph6, tuple(pairs)))
    meta = {"graph6": graph6, "pairs": row[1], "max_degree_increase": row[2]}
    return [row], meta


def run_perturb_batch(n: int, workers: int = 1):
    """All single-edge additions over all connected graphs of order n;
    reports the empirical displacement maximum (exploratory; no bound is
    asserted)."""
    tasks = []
    for g in enumerate_connected(n):
        g6 = write_graph6(g)
        for u in range(n):
            for v in range(u + 1, n):
                if not g.has_edge(u, v):
                    tasks.append((g6, ((u, v),)))
    rows = _map_ordered(_perturb_task, tasks, workers)
    worst = max(rows, key=lambda r: r[3]) if rows else None
    meta = {"n": n, "edge_additions": len(rows),
            "max_displacement": worst[3] if worst else 0.0,
            "argmax_graph6": worst[0] if worst else "",
            "argmax_edge": worst[1] if worst else ""}
    return rows, meta


# ---------------------------------------------------------------------------
# expansion constants
# ---------------------------------------------------------------------------

def run_derive_ck(k: int, seed: int = 271828, holdout_count: int = 50):
    samples = default_sample_graphs(k, seed=seed)
    expansion = solve_ck(k, samples)
    holdout = default_holdout_graphs(k, count=holdout_count, seed=seed + 1,
                                     exclude=samples)
    report = verify_expansion(expansion, holdout)
    meta = {
        "k": k, "seed": seed, "samples": len(samples),
        "holdout": report.checked, "verified": report.passed,
        "failures": list(report.failures),
    }
    return expansion, report, meta
