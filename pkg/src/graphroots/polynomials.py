"""Exact integer polynomial arithmetic and graph polynomials.

Chromatic polynomials run through deletion-contraction with an isomorphism-
keyed memo plus closed-form shortcuts (empty, complete, tree, disconnected);
beyond the memoized regime a subset DP over independent-set partitions takes
over. Matching counts use a skip-or-match subset DP with counts packed into
big-int limbs. Everything here is exact: Python ints and Fractions only.
"""

from __future__ import annotations

import math
import warnings
from collections import OrderedDict
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .enumeration import canonical_form
from .graphs import Graph

CHROMATIC_ORDER_CAP = 16
IP_ORDER_CAP = 12
MATCHING_ORDER_CAP = 26
_DC_MAX_ORDER = 10          # deletion-contraction with memo below this, subset DP above
_DP_MAX_ORDER = 25          # independent-set-partition DP packing stays carry-free
_DC_MEMO_CAP = 1 << 18
_PARTS_LIMB = 96            # per-part-count packing; Bell(25) < 2^96 keeps limbs carry-free
_MATCH_LIMB = 128


class OrderCapError(ValueError):
    """Graph order exceeds the configured cap for an exact algorithm."""


@dataclass(frozen=True)
class IntPolynomial:
    """Univariate polynomial with exact integer coefficients, low power first."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        c = tuple(int(x) for x in self.coeffs)
        while len(c) > 1 and c[-1] == 0:
            c = c[:-1]
        if not c:
            c = (0,)
        object.__setattr__(self, "coeffs", c)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return self.coeffs == (0,)

    @property
    def is_monic(self) -> bool:
        return self.coeffs[-1] == 1 and not self.is_zero

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, x in enumerate(b):
            out[i] += x
        return IntPolynomial(tuple(out))

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial(tuple(-x for x in self.coeffs))

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        return self + (-other)

    def __mul__(self, other: "IntPolynomial") -> "IntPolynomial":
        a, b = self.coeffs, other.coeffs
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return IntPolynomial(tuple(out))

    def scale(self, c: int) -> "IntPolynomial":
        return IntPolynomial(tuple(c * x for x in self.coeffs))

    def shift(self, k: int) -> "IntPolynomial":
        """Multiply by x^k."""
        return IntPolynomial((0,) * k + self.coeffs)

    def derivative(self) -> "IntPolynomial":
        if self.degree == 0:
            return IntPolynomial((0,))
        return IntPolynomial(tuple(i * c for i, c in enumerate(self.coeffs) if i))

    def evaluate(self, x):
        """Horner evaluation; exact for int/Fraction inputs, float/complex
        arithmetic otherwise (beware overflow with huge coefficients)."""
        acc = 0 if isinstance(x, (int, Fraction)) else type(x)(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def to_json(self) -> dict:
        return {"degree": self.degree, "coeffs": [str(c) for c in self.coeffs]}

    @staticmethod
    def from_json(obj: dict) -> "IntPolynomial":
        return IntPolynomial(tuple(int(s) for s in obj["coeffs"]))

    def __repr__(self):
        return f"IntPolynomial(degree={self.degree})"


def falling_factorial(k: int) -> IntPolynomial:
    """x(x-1)...(x-k+1) as a polynomial; k=0 gives 1."""
    p = IntPolynomial((1,))
    for i in range(k):
        p = p * IntPolynomial((-i, 1))
    return p


# ---------------------------------------------------------------------------
# chromatic polynomial
# ---------------------------------------------------------------------------

_dc_memo: OrderedDict[str, tuple[int, ...]] = OrderedDict()


def clear_chromatic_cache() -> None:
    _dc_memo.clear()


def _power_of_x_minus_1(n: int, k: int) -> tuple[int, ...]:
    """Coefficients of x(x-1)^(k) padded into degree... helper for tree poly."""
    # (x-1)^k
    c = [0] * (k + 1)
    for i in range(k + 1):
        c[i] = (-1) ** (k - i) * math.comb(k, i)
    return tuple(c)


def _tree_poly(n: int) -> IntPolynomial:
    return IntPolynomial(_power_of_x_minus_1(n, n - 1)).shift(1)


def _pick_dc_edge(g: Graph) -> tuple[int, int]:
    """Edge with the most common neighbors: contraction then collapses dense
    neighborhoods toward cliques quickly."""
    best = None
    best_score = -1
    for u, v in g.edges():
        score = (g.rows[u] & g.rows[v]).bit_count()
        if score > best_score:
            best_score = score
            best = (u, v)
    assert best is not None
    return best


def _contract(g: Graph, u: int, v: int) -> Graph:
    """Contract edge {u,v}: merge v into u, drop parallels, relabel."""
    rows = list(g.rows)
    rows[u] = (rows[u] | rows[v]) & ~(1 << u) & ~(1 << v)
    nb_v = rows[v]
    for w in range(g.n):
        if nb_v >> w & 1 and w != u:
            rows[w] |= 1 << u
    rows[v] = 0
    patched = tuple(r & ~(1 << v) for r in rows)
    return Graph(g.n, patched).delete_vertex(v)


def _delete_edge(g: Graph, u: int, v: int) -> Graph:
    rows = list(g.rows)
    rows[u] &= ~(1 << v)
    rows[v] &= ~(1 << u)
    return Graph(g.n, tuple(rows))


def _cycle_poly(n: int) -> IntPolynomial:
    """(x-1)^n + (-1)^n (x-1)."""
    c = [0] * (n + 1)
    for i in range(n + 1):
        c[i] = (-1) ** (n - i) * math.comb(n, i)
    c[1] += (-1) ** n
    c[0] -= (-1) ** n
    return IntPolynomial(tuple(c))


def _structural_shortcut(g: Graph) -> IntPolynomial | None:
    """Closed forms that hold at any order: empty, complete, tree, cycle."""
    n, m = g.n, g.edge_count
    if n == 0:
        return IntPolynomial((1,))
    if m == 0:
        return IntPolynomial((0,) * n + (1,))
    if m == n * (n - 1) // 2:
        return falling_factorial(n)
    if len(g.components()) == 1:
        if m == n - 1:
            return _tree_poly(n)
        if m == n and all(r.bit_count() == 2 for r in g.rows):
            return _cycle_poly(n)
    return None


def _chromatic_dc(g: Graph) -> IntPolynomial:
    """Deletion-contraction with shortcuts, memoized on canonical form
    (memo only below the canonicalization cap)."""
    p = _structural_shortcut(g)
    if p is not None:
        return p
    comps = g.components()
    if len(comps) > 1:
        p = IntPolynomial((1,))
        for mask in comps:
            p = p * _chromatic_dc(g.induced(mask))
        return p

    code = None
    if g.n <= 16:
        code = canonical_form(g)
        hit = _dc_memo.get(code)
        if hit is not None:
            _dc_memo.move_to_end(code)
            return IntPolynomial(hit)

    u, v = _pick_dc_edge(g)
    p = _chromatic_dc(_delete_edge(g, u, v)) - _chromatic_dc(_contract(g, u, v))
    if code is not None:
        _dc_memo[code] = p.coeffs
        if len(_dc_memo) > _DC_MEMO_CAP:
            _dc_memo.popitem(last=False)
    return p


def _ip_vector_dp(g: Graph) -> list[int]:
    """ip(g,k) for k=0..n by subset DP: peel the lowest vertex of each subset
    into an independent block, packing per-part-count totals into limbs."""
    n = g.n
    rows = g.rows
    memo: dict[int, int] = {0: 1}

    def rec(s: int) -> int:
        hit = memo.get(s)
        if hit is not None:
            return hit
        vbit = s & -s
        v = vbit.bit_length() - 1
        rest = s & ~vbit
        base = rest & ~rows[v]
        total = 0
        # DFS over independent subsets U of base; block = {v} | U
        stack = [(base, rest)]
        while stack:
            cand, rem = stack.pop()
            if cand == 0:
                total += rec(rem)
                continue
            ubit = cand & -cand
            u = ubit.bit_length() - 1
            stack.append((cand & ~ubit, rem))
            stack.append((cand & ~ubit & ~rows[u], rem & ~ubit))
        total <<= _PARTS_LIMB
        memo[s] = total
        return total

    packed = rec((1 << n) - 1) if n else 1
    mask = (1 << _PARTS_LIMB) - 1
    return [(packed >> (_PARTS_LIMB * k)) & mask for k in range(n + 1)]


def chromatic_poly(g: Graph, force: bool = False) -> IntPolynomial:
    """Chromatic polynomial P(G,x); P(G,t) counts proper t-colorings.

    Orders above CHROMATIC_ORDER_CAP are rejected unless force=True (closed-
    form families like trees, cycles and complete graphs stay fast at any
    order thanks to the shortcuts; arbitrary dense graphs do not)."""
    if g.n > CHROMATIC_ORDER_CAP:
        if not force:
            raise OrderCapError(
                f"chromatic polynomial capped at n <= {CHROMATIC_ORDER_CAP}; "
                "pass force=True to override"
            )
        warnings.warn(
            f"chromatic polynomial for n={g.n} above soft cap "
            f"{CHROMATIC_ORDER_CAP}; runtime may be exponential",
            RuntimeWarning,
            stacklevel=2,
        )
    return _chromatic_dispatch(g)


def _chromatic_dispatch(g: Graph) -> IntPolynomial:
    p = _structural_shortcut(g)
    if p is not None:
        return p
    comps = g.components()
    if len(comps) > 1:
        p = IntPolynomial((1,))
        for mask in comps:
            p = p * _chromatic_dispatch(g.induced(mask))
        return p
    if g.n <= _DC_MAX_ORDER or g.n > _DP_MAX_ORDER:
        # memoized D-C shines on enumeration sweeps; above the DP's packing
        # bound only shortcut-friendly (forced) graphs are viable anyway
        return _chromatic_dc(g)
    vec = _ip_vector_dp(g)
    p = IntPolynomial((0,))
    for k, cnt in enumerate(vec):
        if cnt:
            p = p + falling_factorial(k).scale(cnt)
    return p


def ip_counts(g: Graph) -> list[int]:
    """Number of partitions of V into k non-empty independent sets, k=0..n,
    recovered from the chromatic polynomial by the forward-difference change
    of basis to falling factorials."""
    if g.n > IP_ORDER_CAP:
        raise OrderCapError(f"ip_counts capped at n <= {IP_ORDER_CAP}")
    p = chromatic_poly(g)
    values = [p.evaluate(t) for t in range(g.n + 1)]
    out = []
    for k in range(g.n + 1):
        acc = 0
        for j in range(k + 1):
            acc += (-1) ** (k - j) * math.comb(k, j) * values[j]
        q, r = divmod(acc, math.factorial(k))
        if r:
            raise ArithmeticError("falling-factorial basis change left a remainder")
        out.append(q)
    return out


# ---------------------------------------------------------------------------
# matching counts and polynomials
# ---------------------------------------------------------------------------

def matching_counts_complete(n: int) -> tuple[int, ...]:
    """m_k(K_n) = n! / (2^k k! (n-2k)!)."""
    return tuple(
        math.factorial(n) // (2**k * math.factorial(k) * math.factorial(n - 2 * k))
        for k in range(n // 2 + 1)
    )


def matching_counts(g: Graph) -> tuple[int, ...]:
    """Number of k-matchings for k = 0..floor(n/2), exact.

    Complete graphs go through the closed form at any order; everything else
    uses the skip-or-match subset DP, capped at n <= 26."""
    n = g.n
    if n >= 1 and g.edge_count == n * (n - 1) // 2:
        return matching_counts_complete(n)
    if n > MATCHING_ORDER_CAP:
        raise OrderCapError(f"matching_counts capped at n <= {MATCHING_ORDER_CAP}")
    if n == 0:
        return (1,)
    rows = g.rows
    memo: dict[int, int] = {0: 1}

    def rec(s: int) -> int:
        hit = memo.get(s)
        if hit is not None:
            return hit
        vbit = s & -s
        v = vbit.bit_length() - 1
        rest = s & ~vbit
        total = rec(rest)  # v unmatched
        nb = rows[v] & rest
        while nb:
            ubit = nb & -nb
            nb &= nb - 1
            total += rec(rest & ~ubit) << _MATCH_LIMB
        memo[s] = total
        return total

    packed = rec((1 << n) - 1)
    mask = (1 << _MATCH_LIMB) - 1
    return tuple((packed >> (_MATCH_LIMB * k)) & mask for k in range(n // 2 + 1))


def matching_poly(g: Graph) -> IntPolynomial:
    """mu(G,x) = sum_k (-1)^k m_k x^(n-2k); real-rooted."""
    m = matching_counts(g)
    coeffs = [0] * (g.n + 1)
    for k, cnt in enumerate(m):
        coeffs[g.n - 2 * k] = (-1) ** k * cnt
    return IntPolynomial(tuple(coeffs))


def modified_matching_poly(g: Graph) -> IntPolynomial:
    """M(G,x) = sum_k (-1)^k m_k x^(n-k); mu(G,x) = x^-n M(G,x^2)."""
    m = matching_counts(g)
    coeffs = [0] * (g.n + 1)
    for k, cnt in enumerate(m):
        coeffs[g.n - k] = (-1) ** k * cnt
    return IntPolynomial(tuple(coeffs))


def hermite_poly(n: int) -> IntPolynomial:
    """Probabilists' Hermite He_n: He_n = x He_(n-1) - (n-1) He_(n-2);
    coefficientwise equal to the matching polynomial of K_n."""
    if n < 0:
        raise ValueError("n must be >= 0")
    prev = IntPolynomial((1,))
    if n == 0:
        return prev
    cur = IntPolynomial((0, 1))
    for k in range(2, n + 1):
        prev, cur = cur, cur.shift(1) - prev.scale(k - 1)
    return cur


# ---------------------------------------------------------------------------
# power sums and evaluation
# ---------------------------------------------------------------------------

def power_sums_from_coeffs(p: IntPolynomial, k_max: int) -> list[Fraction]:
    """Power sums p_1..p_K of the roots of a monic polynomial via the Newton
    identities, exact, no root finding."""
    if not p.is_monic:
        raise ValueError("power sums require a monic polynomial")
    n = p.degree
    # e_i = (-1)^i * coeff of x^(n-i)
    e = [Fraction((-1) ** i * p.coeffs[n - i]) if i <= n else Fraction(0)
         for i in range(k_max + 1)]
    ps: list[Fraction] = []
    for k in range(1, k_max + 1):
        acc = Fraction((-1) ** (k - 1) * k) * e[k] if k <= n else Fraction(0)
        for i in range(1, k):
            if i <= n:
                acc += (-1) ** (i - 1) * e[i] * ps[k - i - 1]
        ps.append(acc)
    return ps


def newton_power_sum(elementary: Sequence[Fraction | int], k: int) -> Fraction:
    """P_k(e_1..e_k): power sum as a polynomial in the elementary symmetric
    inputs; exposes the homogeneity law P_k(a_1 t, ..., a_k t^k) = t^k P_k."""
    e = [Fraction(0)] + [Fraction(x) for x in elementary]
    if len(e) < k + 1:
        e += [Fraction(0)] * (k + 1 - len(e))
    ps: list[Fraction] = []
    for j in range(1, k + 1):
        acc = Fraction((-1) ** (j - 1) * j) * e[j]
        for i in range(1, j):
            acc += (-1) ** (i - 1) * e[i] * ps[j - i - 1]
        ps.append(acc)
    return ps[k - 1]


def log_bigint(x: int) -> float:
    """Natural log of a positive integer of any size."""
    if x <= 0:
        raise ValueError("log of non-positive integer")
    if x.bit_length() <= 900:
        return math.log(x)
    shift = x.bit_length() - 64
    return math.log(x >> shift) + shift * math.log(2)


def log_fraction(x: Fraction) -> float:
    if x <= 0:
        raise ValueError("log of non-positive rational")
    return log_bigint(x.numerator) - log_bigint(x.denominator)


def eval_poly(p: IntPolynomial, point):
    """Exact evaluation for int/Fraction points, float otherwise."""
    return p.evaluate(point)


def coloring_rate(g: Graph, c: float, force_c: bool = False,
                  force_order: bool = False) -> float:
    """P(G, C n)^(1/n) / n, computed from exact evaluation then logarithms.

    The supporting theorem needs C > 8; smaller C is allowed only with
    force_c=True (warning)."""
    if c <= 8 and not force_c:
        raise ValueError("coloring rate requires C > 8 (pass force_c=True to override)")
    if c <= 8:
        warnings.warn("coloring rate evaluated with C <= 8, outside the "
                      "supported regime", RuntimeWarning, stacklevel=2)
    n = g.n
    if n < 1:
        raise ValueError("graph must have at least one vertex")
    p = chromatic_poly(g, force=force_order)
    point = Fraction(c) * n
    value = p.evaluate(point if point.denominator != 1 else int(point))
    value = Fraction(value)
    if value <= 0:
        raise ArithmeticError(
            f"P(G, {c}*{n}) = {float(value)} <= 0; evaluation point hit a root region"
        )
    return math.exp(log_fraction(value) / n) / n
