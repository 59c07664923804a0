"""Simple undirected graphs: bit-row adjacency, generators, sampling, graph6 IO.

Vertices are 0..n-1. Adjacency is stored as one Python int bitmask per vertex,
so any order fits, but the hot algorithms elsewhere assume desk-scale n.
Graph values are immutable after construction and safe to share across workers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

import numpy as np

RNG_ALGORITHM_ID = "pcg64-seedseq"


class Graph6Error(ValueError):
    """Malformed graph6 input; carries the byte offset of the offending byte."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices 0..n-1 with bitmask adjacency rows."""

    n: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("vertex count must be non-negative")
        if len(self.rows) != self.n:
            raise ValueError("adjacency row count must equal n")
        full = (1 << self.n) - 1
        for i, row in enumerate(self.rows):
            if row & (1 << i):
                raise ValueError(f"self-loop at vertex {i}")
            if row & ~full:
                raise ValueError(f"adjacency row {i} references vertices >= n")
        for i in range(self.n):
            for j in range(i + 1, self.n):
                if bool(self.rows[i] >> j & 1) != bool(self.rows[j] >> i & 1):
                    raise ValueError(f"adjacency not symmetric at ({i},{j})")

    @staticmethod
    def from_edges(n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        rows = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"loop at vertex {u} not allowed")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return Graph(n, tuple(rows))

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def edges(self) -> Iterator[tuple[int, int]]:
        for u in range(self.n):
            row = self.rows[u] >> (u + 1) << (u + 1)
            while row:
                v = (row & -row).bit_length() - 1
                yield (u, v)
                row &= row - 1

    @property
    def edge_count(self) -> int:
        return sum(r.bit_count() for r in self.rows) // 2

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    def degrees(self) -> list[int]:
        return [r.bit_count() for r in self.rows]

    @property
    def max_degree(self) -> int:
        return max((r.bit_count() for r in self.rows), default=0)

    def is_connected(self) -> bool:
        if self.n <= 1:
            return True
        seen = 1
        frontier = 1
        while frontier:
            nxt = 0
            while frontier:
                v = (frontier & -frontier).bit_length() - 1
                frontier &= frontier - 1
                nxt |= self.rows[v]
            frontier = nxt & ~seen
            seen |= nxt
        return seen == (1 << self.n) - 1

    def components(self) -> list[int]:
        """Vertex bitmasks of the connected components, ordered by lowest vertex."""
        out = []
        remaining = (1 << self.n) - 1
        while remaining:
            start = remaining & -remaining
            seen = start
            frontier = start
            while frontier:
                nxt = 0
                while frontier:
                    v = (frontier & -frontier).bit_length() - 1
                    frontier &= frontier - 1
                    nxt |= self.rows[v]
                frontier = nxt & ~seen
                seen |= nxt
            out.append(seen)
            remaining &= ~seen
        return out

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Image graph under vertex map i -> perm[i]."""
        perm = [int(p) for p in perm]
        rows = [0] * self.n
        for i in range(self.n):
            row = self.rows[i]
            target = 0
            while row:
                v = (row & -row).bit_length() - 1
                row &= row - 1
                target |= 1 << perm[v]
            rows[perm[i]] = target
        return Graph(self.n, tuple(rows))

    def induced(self, mask: int) -> "Graph":
        """Induced subgraph on the vertices of `mask`, relabeled to 0..k-1."""
        verts = []
        m = mask
        while m:
            verts.append((m & -m).bit_length() - 1)
            m &= m - 1
        index = {v: i for i, v in enumerate(verts)}
        rows = [0] * len(verts)
        for v in verts:
            row = self.rows[v] & mask
            while row:
                u = (row & -row).bit_length() - 1
                row &= row - 1
                rows[index[v]] |= 1 << index[u]
        return Graph(len(verts), tuple(rows))

    def delete_vertex(self, v: int) -> "Graph":
        return self.induced(((1 << self.n) - 1) & ~(1 << v))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.edge_count})"


@dataclass(frozen=True)
class RngSpec:
    """Seed policy recorded in all outputs. Identical spec + parameters give
    bit-identical samples; per-sample streams derive from (seed, sample_index)
    so parallel sampling is order-independent."""

    seed: int
    algorithm_id: str = RNG_ALGORITHM_ID

    def __post_init__(self):
        if not (0 <= self.seed < 2**64):
            raise ValueError("seed must fit in 64 bits")
        if self.algorithm_id != RNG_ALGORITHM_ID:
            raise ValueError(f"unsupported rng algorithm {self.algorithm_id!r}")

    def stream(self, sample_index: int = 0) -> np.random.Generator:
        return np.random.Generator(
            np.random.PCG64(np.random.SeedSequence((self.seed, sample_index)))
        )


@dataclass(frozen=True)
class StepGraphon:
    """Step-function graphon: k blocks, symmetric edge-probability matrix,
    block weights summing to 1."""

    values: tuple[tuple[float, ...], ...]
    block_weights: tuple[float, ...]
    k: int = field(init=False)

    def __post_init__(self):
        k = len(self.values)
        object.__setattr__(self, "k", k)
        if k == 0 or len(self.block_weights) != k:
            raise ValueError("values must be k x k and block_weights length k")
        for i, row in enumerate(self.values):
            if len(row) != k:
                raise ValueError("values must be square")
            for j, p in enumerate(row):
                if not (0.0 <= p <= 1.0):
                    raise ValueError(f"graphon value at ({i},{j}) outside [0,1]")
                if self.values[j][i] != p:
                    raise ValueError("graphon values must be symmetric")
        for w in self.block_weights:
            if w < 0:
                raise ValueError("block weights must be non-negative")
        if abs(sum(self.block_weights) - 1.0) > 1e-12:
            raise ValueError("block weights must sum to 1")

    @staticmethod
    def constant(p: float) -> "StepGraphon":
        return StepGraphon(((p,),), (1.0,))


# ---------------------------------------------------------------------------
# graph6 (bit-exact per the standard format: header chr(n+63) for n <= 62,
# column-major upper-triangle bits, zero padding to 6-bit groups)
# ---------------------------------------------------------------------------

_G6_MAX_N = 1 << 18


def _g6_check_byte(b: int, offset: int) -> int:
    if not (63 <= b <= 126):
        raise Graph6Error(f"byte {b} outside graph6 range 63..126", offset)
    return b - 63


def parse_graph6(text: str) -> Graph:
    """Decode one graph6 line (no sparse6/digraph6, no '>>graph6<<' header)."""
    data = text.rstrip("\r\n")
    if not data:
        raise Graph6Error("empty input", 0)
    raw = data.encode("ascii", errors="strict") if data.isascii() else None
    if raw is None:
        raise Graph6Error("non-ASCII byte in input", 0)

    pos = 0
    first = _g6_check_byte(raw[0], 0)
    if first < 63:
        n = first
        pos = 1
    else:
        if len(raw) < 2:
            raise Graph6Error("truncated vertex-count field", 1)
        if raw[1] != 126:  # '~': 18-bit form
            if len(raw) < 4:
                raise Graph6Error("truncated vertex-count field", len(raw))
            n = 0
            for i in range(1, 4):
                n = n << 6 | _g6_check_byte(raw[i], i)
            pos = 4
        else:  # '~~': 36-bit form
            if len(raw) < 8:
                raise Graph6Error("truncated vertex-count field", len(raw))
            n = 0
            for i in range(2, 8):
                n = n << 6 | _g6_check_byte(raw[i], i)
            pos = 8
    if n > _G6_MAX_N:
        raise Graph6Error(f"vertex count {n} exceeds supported maximum {_G6_MAX_N}", 0)

    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    if len(raw) - pos < nbytes:
        raise Graph6Error("truncated adjacency bits", len(raw))
    if len(raw) - pos > nbytes:
        raise Graph6Error("trailing garbage after adjacency bits", pos + nbytes)

    bits = 0
    for i in range(nbytes):
        bits = bits << 6 | _g6_check_byte(raw[pos + i], pos + i)
    pad = 6 * nbytes - nbits
    if bits & ((1 << pad) - 1):
        raise Graph6Error("nonzero padding bits", pos + nbytes - 1)
    bits >>= pad

    rows = [0] * n
    # column-major upper triangle: for j in 1..n-1, for i in 0..j-1, MSB first
    k = nbits - 1
    for j in range(1, n):
        for i in range(j):
            if bits >> k & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k -= 1
    return Graph(n, tuple(rows))


def write_graph6(g: Graph) -> str:
    n = g.n
    if n > _G6_MAX_N:
        raise ValueError(f"vertex count {n} exceeds supported maximum {_G6_MAX_N}")
    out = []
    if n <= 62:
        out.append(n + 63)
    elif n <= 258047:
        out.append(126)
        for shift in (12, 6, 0):
            out.append((n >> shift & 63) + 63)
    else:
        out.extend((126, 126))
        for shift in (30, 24, 18, 12, 6, 0):
            out.append((n >> shift & 63) + 63)

    bits = 0
    nbits = n * (n - 1) // 2
    for j in range(1, n):
        for i in range(j):
            bits = bits << 1 | (g.rows[i] >> j & 1)
    pad = (6 - nbits % 6) % 6
    bits <<= pad
    for shift in range(nbits + pad - 6, -1, -6):
        out.append((bits >> shift & 63) + 63)
    return bytes(out).decode("ascii")


# ---------------------------------------------------------------------------
# standard generators
# ---------------------------------------------------------------------------

def gen_empty(n: int) -> Graph:
    if n < 0:
        raise ValueError("n must be non-negative")
    return Graph(n, (0,) * n)


def gen_path(n: int) -> Graph:
    if n < 1:
        raise ValueError("path requires n >= 1")
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def gen_cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle requires n >= 3")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def gen_complete(n: int) -> Graph:
    if n < 1:
        raise ValueError("complete graph requires n >= 1")
    full = (1 << n) - 1
    return Graph(n, tuple(full & ~(1 << i) for i in range(n)))


def gen_complete_bipartite(a: int, b: int) -> Graph:
    if a < 1 or b < 1:
        raise ValueError("complete bipartite requires both sides >= 1")
    left = (1 << a) - 1
    right = ((1 << (a + b)) - 1) & ~left
    rows = [right] * a + [left] * b
    return Graph(a + b, tuple(rows))


def gen_er(n: int, p: float, rng: RngSpec, sample_index: int = 0) -> Graph:
    """Erdos-Renyi G(n,p): each pair independently with probability p.

    Pair order is lexicographic (i<j) so a given (spec, sample_index) is
    bit-identical across runs and platforms.
    """
    if not (0.0 <= p <= 1.0):
        raise ValueError("edge probability must lie in [0,1]")
    if n < 0:
        raise ValueError("n must be non-negative")
    gen = rng.stream(sample_index)
    m = n * (n - 1) // 2
    draws = gen.random(m)
    rows = [0] * n
    k = 0
    for i in range(n):
        for j in range(i + 1, n):
            if draws[k] < p:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k += 1
    return Graph(n, tuple(rows))


def sample_graphon(w: StepGraphon, n: int, rng: RngSpec, sample_index: int = 0) -> Graph:
    """Sample an n-vertex graph: i.i.d. block labels per block_weights, then
    each pair {i,j} independently with probability values[block_i][block_j]."""
    if n < 1:
        raise ValueError("n must be >= 1")
    gen = rng.stream(sample_index)
    cum = np.cumsum(w.block_weights)
    cum[-1] = 1.0  # guard against rounding when weights sum slightly below 1
    labels = np.searchsorted(cum, gen.random(n), side="right")
    draws = gen.random(n * (n - 1) // 2)
    rows = [0] * n
    k = 0
    for i in range(n):
        for j in range(i + 1, n):
            if draws[k] < w.values[labels[i]][labels[j]]:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k += 1
    return Graph(n, tuple(rows))


def add_edges(g: Graph, pairs: Iterable[tuple[int, int]]) -> tuple[Graph, tuple[int, ...]]:
    """Union of edge sets. Returns (new graph, per-vertex degree increase);
    the increase report backs the bounded-degree-growth checks downstream."""
    rows = list(g.rows)
    for u, v in pairs:
        if not (0 <= u < g.n and 0 <= v < g.n):
            raise ValueError(f"edge ({u},{v}) out of range for n={g.n}")
        if u == v:
            raise ValueError(f"loop at vertex {u} not allowed")
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    new = Graph(g.n, tuple(rows))
    inc = tuple(new.degree(v) - g.degree(v) for v in range(g.n))
    return new, inc
