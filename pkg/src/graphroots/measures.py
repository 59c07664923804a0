"""Root measures, rescalings, moments, semicircle references and distances.

A RootMeasure is the uniform probability measure on a root multiset, with the
rescaling divisor recorded. The chromatic measure lives in the plane; matching
measures are certified real and can be compared to the semicircle reference
by Kolmogorov-Smirnov distance. Bottleneck displacement is the exact min-max
matching distance between equal-size root multisets.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from .graphs import Graph
from .polynomials import chromatic_poly, matching_poly
from .rootfind import (
    DEFAULT_IMAG_TOL,
    DEFAULT_ROOT_TOL,
    RootSet,
    certify_real,
    find_roots,
    hermite_zeros,
)

_HERMITE_DISPATCH_MIN = 42  # complete graphs at least this big use the Jacobi route


@dataclass(frozen=True)
class RootMeasure:
    """Uniform probability measure on a multiset of complex points; `scale` is
    the divisor already applied to the raw roots."""

    points: tuple[complex, ...]
    scale: float
    source_tag: str

    def __post_init__(self):
        if self.scale <= 0:
            raise ValueError("scale must be positive")

    @property
    def size(self) -> int:
        return len(self.points)

    def is_real(self, tol: float = 1e-12) -> bool:
        return all(abs(z.imag) <= tol * (1.0 + abs(z)) for z in self.points)


@dataclass(frozen=True)
class MomentReport:
    """Holomorphic moments of a root measure: moment k is the mean of z^k."""

    moments: tuple[complex, ...]
    size: int
    scale: float
    source_tag: str


@dataclass(frozen=True)
class SemicircleRef:
    """Semicircle distribution SC_p: pushforward of the radius-2 semicircle
    law under x -> sqrt(p) x. Even moment 2k is p^k Catalan(k)."""

    p: float

    def __post_init__(self):
        if not (0.0 < self.p <= 1.0):
            raise ValueError("edge probability must lie in (0,1]")

    @property
    def radius(self) -> float:
        return 2.0 * math.sqrt(self.p)

    def density(self, x: float) -> float:
        r = self.radius
        if abs(x) >= r:
            return 0.0
        return math.sqrt(4.0 * self.p - x * x) / (2.0 * math.pi * self.p)

    def cdf(self, x: float) -> float:
        t = x / math.sqrt(self.p)
        if t <= -2.0:
            return 0.0
        if t >= 2.0:
            return 1.0
        return 0.5 + t * math.sqrt(4.0 - t * t) / (4.0 * math.pi) + math.asin(t / 2.0) / math.pi

    def moment(self, k: int) -> float:
        if k < 0:
            raise ValueError("moment index must be >= 0")
        if k % 2:
            return 0.0
        j = k // 2
        catalan = math.comb(2 * j, j) // (j + 1)
        return self.p**j * catalan


def semicircle(p: float) -> SemicircleRef:
    return SemicircleRef(p)


def sc_cdf(ref: SemicircleRef, x: float) -> float:
    return ref.cdf(x)


def sc_moment(ref: SemicircleRef, k: int) -> float:
    return ref.moment(k)


# ---------------------------------------------------------------------------
# measure constructors
# ---------------------------------------------------------------------------

def measure_from_rootset(rs: RootSet, tag: str) -> RootMeasure:
    return RootMeasure(points=rs.points, scale=1.0, source_tag=tag)


def chromatic_measure(g: Graph, tol: float = DEFAULT_ROOT_TOL,
                      force: bool = False) -> RootMeasure:
    """mu_G: uniform measure on the chromatic root multiset (scale 1)."""
    rs = find_roots(chromatic_poly(g, force=force), tol=tol)
    return measure_from_rootset(rs, f"chromatic:n={g.n},m={g.edge_count}")


def matching_measure(g: Graph, tol: float = DEFAULT_ROOT_TOL,
                     imag_tol: float = DEFAULT_IMAG_TOL) -> RootMeasure:
    """Uniform measure on the matching root multiset, certified real.

    Complete graphs of large order dispatch to the Hermite Jacobi-matrix
    zeros; expanded coefficients lose the extreme zeros to conditioning there.
    """
    n = g.n
    if n >= _HERMITE_DISPATCH_MIN and g.edge_count == n * (n - 1) // 2:
        reals = hermite_zeros(n)
    else:
        reals = certify_real(find_roots(matching_poly(g), tol=tol), imag_tol=imag_tol)
    return RootMeasure(
        points=tuple(complex(x, 0.0) for x in reals),
        scale=1.0,
        source_tag=f"matching:n={g.n},m={g.edge_count}",
    )


def rescale(m: RootMeasure, factor: float) -> RootMeasure:
    """Divide every point by `factor` and record it in the scale."""
    if factor <= 0:
        raise ValueError("rescale factor must be positive")
    return RootMeasure(
        points=tuple(z / factor for z in m.points),
        scale=m.scale * factor,
        source_tag=m.source_tag,
    )


def holomorphic_moment(m: RootMeasure, k: int) -> complex:
    """Mean of z^k over the measure; k = 0 gives 1."""
    if k < 0:
        raise ValueError("moment index must be >= 0")
    if not m.points:
        raise ValueError("empty measure has no moments")
    return sum(z**k for z in m.points) / len(m.points)


def moment_report(m: RootMeasure, k_max: int) -> MomentReport:
    return MomentReport(
        moments=tuple(holomorphic_moment(m, k) for k in range(k_max + 1)),
        size=m.size,
        scale=m.scale,
        source_tag=m.source_tag,
    )


# ---------------------------------------------------------------------------
# distances
# ---------------------------------------------------------------------------

def ks_distance(m: RootMeasure, ref: SemicircleRef) -> float:
    """Sup distance between the empirical CDF of a real-supported measure and
    the semicircle CDF, evaluated exactly at the jump points."""
    if not m.is_real():
        raise ValueError("KS distance requires a measure with certified-real points")
    xs = sorted(z.real for z in m.points)
    n = len(xs)
    worst = 0.0
    for i, x in enumerate(xs):
        f = ref.cdf(x)
        worst = max(worst, abs(f - i / n), abs((i + 1) / n - f))
    return worst


def moment_distance(a: RootMeasure, b: RootMeasure, k_max: int = 8) -> float:
    """Planar-measure comparison: sup over k <= k_max of the moment gap.
    (KS is reserved for real-supported measures; this and the bottleneck
    displacement are the comparisons available in the plane.)"""
    return max(
        abs(holomorphic_moment(a, k) - holomorphic_moment(b, k))
        for k in range(1, k_max + 1)
    )


def _perfect_matching_under(dist: list[list[float]], limit: float) -> list[int] | None:
    """Kuhn's augmenting paths on the bipartite graph of pairs with
    dist <= limit; returns right-match for each left index, or None."""
    n = len(dist)
    match_l = [-1] * n
    match_r = [-1] * n

    def try_augment(u: int, seen: list[bool]) -> bool:
        row = dist[u]
        for v in range(n):
            if row[v] <= limit and not seen[v]:
                seen[v] = True
                if match_r[v] < 0 or try_augment(match_r[v], seen):
                    match_l[u] = v
                    match_r[v] = u
                    return True
        return False

    for u in range(n):
        if not try_augment(u, [False] * n):
            return None
    return match_l


def bottleneck_displacement(a: RootMeasure, b: RootMeasure) -> tuple[float, tuple[int, ...]]:
    """Exact min over bijections of the max point displacement, with an
    optimal bijection (a-index -> b-index)."""
    if len(a.points) != len(b.points):
        raise ValueError("bottleneck displacement requires equal-size multisets")
    if a.scale != b.scale:
        raise ValueError("bottleneck displacement requires identical scales")
    n = len(a.points)
    if n == 0:
        return 0.0, ()
    dist = [[abs(p - q) for q in b.points] for p in a.points]
    values = sorted({d for row in dist for d in row})
    lo, hi = 0, len(values) - 1
    best: list[int] | None = None
    # smallest threshold admitting a perfect matching
    while lo < hi:
        mid = (lo + hi) // 2
        m = _perfect_matching_under(dist, values[mid])
        if m is not None:
            best = m
            hi = mid
        else:
            lo = mid + 1
    if best is None or lo != hi:
        best = _perfect_matching_under(dist, values[lo])
    assert best is not None
    return values[lo], tuple(best)


# ---------------------------------------------------------------------------
# root spread check (dense graphs keep a share of large roots)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SpreadReport:
    edge_ok: bool
    count_modulus: int
    count_real_part: int
    threshold: float
    passed: bool


def root_spread_check(g: Graph, delta: float, measure: RootMeasure | None = None,
                       slack: float = 1e-9) -> SpreadReport:
    """With eps = delta/9: a graph with at least delta n^2 edges must have at
    least eps n chromatic roots of modulus >= eps n, and as many with real
    part in [delta n / 9, 8 n]. Vacuously passes when the edge bound fails."""
    if delta <= 0:
        raise ValueError("delta must be positive")
    n = g.n
    edge_ok = g.edge_count >= delta * n * n
    if not edge_ok:
        return SpreadReport(False, 0, 0, delta / 9 * n, True)
    if measure is None:
        measure = chromatic_measure(g)
    eps_n = delta / 9 * n
    cm = sum(1 for z in measure.points if abs(z) >= eps_n - slack)
    cr = sum(1 for z in measure.points if eps_n - slack <= z.real <= 8 * n + slack)
    passed = (cm + slack >= eps_n) and (cr + slack >= eps_n)
    return SpreadReport(True, cm, cr, eps_n, passed)
