"""Canonical forms and exhaustive enumeration of graphs up to isomorphism.

Canonical form: iterated neighborhood color refinement, then backtracking over
refinement-stabilized orderings, taking the lexicographically smallest
upper-triangle adjacency bit-string. Twin vertices (transposition
automorphisms) are pruned during branching, which keeps highly symmetric
graphs from exploding the search.

Enumeration: canonical vertex augmentation. A child on n vertices is kept only
if deleting its canonical-last vertex reproduces the parent it was built from;
together with per-parent dedup this emits exactly one representative per
isomorphism class, in a deterministic (parent index, child index) order.
"""

from __future__ import annotations

from typing import Iterator

from .graphs import Graph, parse_graph6, write_graph6

CANONICAL_ORDER_CAP = 16
ENUMERATION_ORDER_CAP = 10

# canonical graph6 string of the canonically relabeled graph; equal codes
# if and only if the graphs are isomorphic
CanonicalCode = str


def _refine(rows: tuple[int, ...], cells: list[list[int]]) -> list[list[int]]:
    """Equitable refinement of an ordered partition; deterministic cell order."""
    while True:
        masks = []
        for cell in cells:
            m = 0
            for v in cell:
                m |= 1 << v
            masks.append(m)
        new_cells: list[list[int]] = []
        changed = False
        for cell in cells:
            if len(cell) == 1:
                new_cells.append(cell)
                continue
            groups: dict[tuple[int, ...], list[int]] = {}
            for v in cell:
                row = rows[v]
                sig = tuple((row & m).bit_count() for m in masks)
                groups.setdefault(sig, []).append(v)
            if len(groups) > 1:
                changed = True
            for sig in sorted(groups):
                new_cells.append(groups[sig])
        if not changed:
            return new_cells
        cells = new_cells


def _twin_reps(rows: tuple[int, ...], cell: list[int]) -> list[int]:
    """One representative per twin class: u,v are twins when swapping them is
    an automorphism, i.e. their rows agree off {u,v}."""
    reps: list[int] = []
    for v in cell:
        is_twin = False
        for u in reps:
            mask = ~((1 << u) | (1 << v))
            if rows[u] & mask == rows[v] & mask:
                is_twin = True
                break
        if not is_twin:
            reps.append(v)
    return reps


def _code_of_order(rows: tuple[int, ...], order: list[int]) -> int:
    code = 0
    for i, u in enumerate(order):
        row = rows[u]
        for j in range(i + 1, len(order)):
            code = code << 1 | (row >> order[j] & 1)
    return code


def _canonical_order(g: Graph) -> tuple[int, ...]:
    """Vertex order realizing the minimal adjacency bit-string."""
    if g.n > CANONICAL_ORDER_CAP:
        raise ValueError(f"canonical form capped at n <= {CANONICAL_ORDER_CAP}")
    n = g.n
    if n <= 1:
        return tuple(range(n))
    rows = g.rows
    best: list[int | None] = [None]
    best_order: list[list[int]] = [[]]

    def search(cells: list[list[int]]) -> None:
        cells = _refine(rows, cells)
        target = -1
        for i, cell in enumerate(cells):
            if len(cell) > 1:
                target = i
                break
        if target < 0:
            order = [cell[0] for cell in cells]
            code = _code_of_order(rows, order)
            if best[0] is None or code < best[0]:
                best[0] = code
                best_order[0] = order
            return
        cell = cells[target]
        for c in _twin_reps(rows, cell):
            rest = [x for x in cell if x != c]
            search(cells[:target] + [[c], rest] + cells[target + 1:])

    search([list(range(n))])
    return tuple(best_order[0])


def canonical_relabel(g: Graph) -> Graph:
    order = _canonical_order(g)
    perm = [0] * g.n
    for pos, v in enumerate(order):
        perm[v] = pos
    return g.relabel(perm)


def canonical_form(g: Graph) -> CanonicalCode:
    return write_graph6(canonical_relabel(g))


# ---------------------------------------------------------------------------
# canonical augmentation
# ---------------------------------------------------------------------------

def _children(parent: Graph, parent_code: CanonicalCode) -> list[Graph]:
    """Accepted one-vertex extensions of a canonical parent, one per class,
    sorted by canonical code. The new vertex is attached to every subset of
    V(parent); a child survives iff removing its canonical-last vertex gives
    back the parent class."""
    n = parent.n + 1
    accepted: dict[CanonicalCode, Graph] = {}
    seen: set[CanonicalCode] = set()
    for subset in range(1 << parent.n):
        rows = list(parent.rows)
        rows.append(subset)
        s = subset
        while s:
            v = (s & -s).bit_length() - 1
            s &= s - 1
            rows[v] |= 1 << (n - 1)
        child = Graph(n, tuple(rows))
        order = _canonical_order(child)
        canon = child.relabel(_perm_of(order))
        code = write_graph6(canon)
        if code in seen:
            continue
        seen.add(code)
        deleted = child.delete_vertex(order[-1])
        if canonical_form(deleted) == parent_code:
            accepted[code] = canon
    return [accepted[c] for c in sorted(accepted)]


def _perm_of(order: tuple[int, ...]) -> list[int]:
    perm = [0] * len(order)
    for pos, v in enumerate(order):
        perm[v] = pos
    return perm


def enumerate_graphs(n: int) -> Iterator[Graph]:
    """All graphs of order n up to isomorphism (including disconnected),
    as canonical representatives in a deterministic order."""
    if not (1 <= n <= ENUMERATION_ORDER_CAP):
        raise ValueError(f"enumeration supports 1 <= n <= {ENUMERATION_ORDER_CAP}")
    if n == 1:
        yield Graph(1, (0,))
        return
    for parent in enumerate_graphs(n - 1):
        yield from _children(parent, write_graph6(parent))


def enumerate_connected(n: int) -> Iterator[Graph]:
    """One representative per isomorphism class of connected graphs of order n."""
    for g in enumerate_graphs(n):
        if g.is_connected():
            yield g


def enumerate_connected_indexed(
    n: int, from_parent: int = 0
) -> Iterator[tuple[int, int, Graph]]:
    """Connected enumeration as (parent_index, child_index, graph), restartable
    from a parent index for checkpointing. Parent indices refer to the order-
    (n-1) full enumeration stream; n=1 uses a single pseudo-parent 0."""
    if not (1 <= n <= ENUMERATION_ORDER_CAP):
        raise ValueError(f"enumeration supports 1 <= n <= {ENUMERATION_ORDER_CAP}")
    if n == 1:
        if from_parent <= 0:
            yield (0, 0, Graph(1, (0,)))
        return
    for pidx, parent in enumerate(enumerate_graphs(n - 1)):
        if pidx < from_parent:
            continue
        cidx = 0
        for child in _children(parent, write_graph6(parent)):
            if child.is_connected():
                yield (pidx, cidx, child)
                cidx += 1


def graphs_from_file(path: str) -> Iterator[Graph]:
    """Alternative stream source: one graph6 code per line (blank lines and
    lines starting with '#' skipped)."""
    with open(path, "r", encoding="ascii") as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            yield parse_graph6(line)
