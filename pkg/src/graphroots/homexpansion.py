"""Homomorphism counting and recovery of the power-sum expansion.

The k-th power sum of the chromatic roots of H expands as
p_k(H) = sum_T (-1)^(k-1) k c_k(T) hom(T,H) over connected graphs T of order
at most k+1. The constants c_k(T) are not tabulated anywhere here; they are
recovered by an exact rational solve against power sums computed from the
Newton identities, then verified on held-out graphs with exact equality.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .enumeration import CanonicalCode, canonical_form, enumerate_connected
from .graphs import Graph, RngSpec, gen_er, parse_graph6
from .polynomials import chromatic_poly, power_sums_from_coeffs

CATALOG_ORDER_CAP = 7
EXPANSION_K_CAP = 4


class RankDeficiencyError(ValueError):
    """The hom-count matrix over the catalog lacks full column rank."""

    def __init__(self, message: str, deficient: list[CanonicalCode]):
        super().__init__(message)
        self.deficient = deficient


class InconsistentSystemError(ArithmeticError):
    """The overdetermined system has no exact solution (implementation bug)."""


@dataclass(frozen=True)
class HomExpansion:
    """Exact rational coefficients c_k(T) keyed by the canonical code of T."""

    k: int
    terms: tuple[tuple[CanonicalCode, Fraction], ...]

    def coefficient(self, code: CanonicalCode) -> Fraction:
        for c, v in self.terms:
            if c == code:
                return v
        return Fraction(0)

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "terms": [
                {"graph6": code, "c": f"{v.numerator}/{v.denominator}"}
                for code, v in self.terms
            ],
        }

    @staticmethod
    def from_json(obj: dict) -> "HomExpansion":
        return HomExpansion(
            k=int(obj["k"]),
            terms=tuple(
                (t["graph6"], Fraction(t["c"])) for t in obj["terms"]
            ),
        )


@dataclass(frozen=True)
class VerificationReport:
    passed: bool
    checked: int
    failures: tuple[CanonicalCode, ...]


def connected_catalog(max_order: int) -> list[Graph]:
    """One representative per isomorphism class of connected graphs of order
    1..max_order, deterministic order."""
    if not (1 <= max_order <= CATALOG_ORDER_CAP):
        raise ValueError(f"catalog capped at order {CATALOG_ORDER_CAP}")
    out: list[Graph] = []
    for n in range(1, max_order + 1):
        out.extend(enumerate_connected(n))
    return out


def hom_count(t: Graph, h: Graph) -> int:
    """Number of adjacency-preserving maps V(T) -> V(H) (not necessarily
    injective), by backtracking along a connected elimination order."""
    if t.n > CATALOG_ORDER_CAP:
        raise ValueError(f"hom_count capped at v(T) <= {CATALOG_ORDER_CAP}")
    if t.n == 0:
        return 1
    if h.n == 0:
        return 0
    # order vertices so each one (per component) touches an earlier vertex
    order: list[int] = []
    placed = 0
    for comp in t.components():
        start = (comp & -comp).bit_length() - 1
        queue = [start]
        seen = 1 << start
        while queue:
            v = queue.pop(0)
            order.append(v)
            nb = t.rows[v] & comp & ~seen
            while nb:
                u = (nb & -nb).bit_length() - 1
                nb &= nb - 1
                seen |= 1 << u
                queue.append(u)
    pos = {v: i for i, v in enumerate(order)}
    earlier: list[list[int]] = []
    for i, v in enumerate(order):
        earlier.append([pos[w] for w in range(t.n)
                        if t.rows[v] >> w & 1 and pos[w] < i])

    full = (1 << h.n) - 1
    images = [0] * t.n
    nt = t.n

    def count_from(i: int) -> int:
        mask = full
        for j in earlier[i]:
            mask &= h.rows[images[j]]
        if i == nt - 1:
            return mask.bit_count()
        total = 0
        m = mask
        while m:
            vbit = m & -m
            m &= m - 1
            images[i] = vbit.bit_length() - 1
            total += count_from(i + 1)
        return total

    return count_from(0)


def chromatic_power_sum(h: Graph, k: int) -> Fraction:
    """p_k(H): k-th power sum of the chromatic roots, exact via Newton."""
    return power_sums_from_coeffs(chromatic_poly(h), k)[k - 1]


def expansion_rhs(e: HomExpansion, h: Graph) -> Fraction:
    sign = Fraction((-1) ** (e.k - 1) * e.k)
    acc = Fraction(0)
    for code, c in e.terms:
        if c:
            acc += c * hom_count(parse_graph6(code), h)
    return sign * acc


def default_sample_graphs(k: int, seed: int = 271828) -> list[Graph]:
    """Solve samples: all connected graphs of order <= k+2 plus 20 seeded
    random graphs of order <= 10 (overdetermined on purpose)."""
    graphs = list(connected_catalog(min(k + 2, CATALOG_ORDER_CAP)))
    rng = RngSpec(seed)
    for i in range(20):
        n = 5 + i % 6
        graphs.append(gen_er(n, 0.5, rng, sample_index=i))
    return graphs


def default_holdout_graphs(k: int, count: int = 50, seed: int = 314159,
                           exclude: Sequence[Graph] = ()) -> list[Graph]:
    """Holdout graphs disjoint (by isomorphism class) from `exclude`."""
    taken = {canonical_form(g) for g in exclude}
    rng = RngSpec(seed)
    out: list[Graph] = []
    i = 0
    while len(out) < count:
        n = 5 + i % 6
        g = gen_er(n, 0.45 + 0.02 * (i % 4), rng, sample_index=10_000 + i)
        i += 1
        code = canonical_form(g)
        if code in taken:
            continue
        taken.add(code)
        out.append(g)
    return out


def solve_ck(k: int, sample_graphs: Sequence[Graph] | None = None) -> HomExpansion:
    """Recover the expansion constants by an exact rational solve of
    p_k(H) = (-1)^(k-1) k sum_T c_k(T) hom(T,H) over the samples."""
    if not (1 <= k <= EXPANSION_K_CAP):
        raise ValueError(f"expansion solve capped at k <= {EXPANSION_K_CAP}")
    catalog = connected_catalog(k + 1)
    codes = [canonical_form(t) for t in catalog]
    if sample_graphs is None:
        sample_graphs = default_sample_graphs(k)
    sign = Fraction((-1) ** (k - 1) * k)

    rows: list[list[Fraction]] = []
    for h in sample_graphs:
        row = [Fraction(hom_count(t, h)) for t in catalog]
        row.append(chromatic_power_sum(h, k) / sign)
        rows.append(row)

    ncols = len(catalog)
    pivots: list[tuple[int, int]] = []  # (row, col)
    r = 0
    for col in range(ncols):
        pr = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        pv = rows[r][col]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append((r, col))
        r += 1
    if len(pivots) < ncols:
        pivot_cols = {c for _, c in pivots}
        deficient = [codes[c] for c in range(ncols) if c not in pivot_cols]
        raise RankDeficiencyError(
            f"hom-count matrix rank {len(pivots)} < {ncols} catalog members; "
            f"sample set cannot pin down: {deficient}", deficient,
        )
    for i in range(len(rows)):
        if i >= len(pivots) and rows[i][-1] != 0:
            raise InconsistentSystemError(
                "expansion system inconsistent; power sums disagree with any "
                "hom-count combination (implementation bug)"
            )
    solution = [Fraction(0)] * ncols
    for rr, col in pivots:
        solution[col] = rows[rr][-1]
    return HomExpansion(k=k, terms=tuple(zip(codes, solution)))


def verify_expansion(e: HomExpansion, holdout: Sequence[Graph]) -> VerificationReport:
    """Exact rational equality of both expansion sides on every holdout graph."""
    failures: list[CanonicalCode] = []
    for h in holdout:
        if expansion_rhs(e, h) != chromatic_power_sum(h, e.k):
            failures.append(canonical_form(h))
    return VerificationReport(
        passed=not failures, checked=len(holdout), failures=tuple(failures)
    )
