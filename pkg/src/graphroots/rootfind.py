"""Complex roots of exact integer polynomials with certified residuals.

Pipeline: split off trailing zero roots symbolically, deflate repeated factors
by exact square-free decomposition (Yun's algorithm over the rationals, with a
mod-p coprimality prescreen so the common square-free case never pays for
exact GCDs), rescale each factor by a power of two chosen from its root bound,
then run Aberth-Ehrlich simultaneous iteration in double precision with a
companion-matrix fallback.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .polynomials import IntPolynomial

DEFAULT_ROOT_TOL = 1e-10
DEFAULT_IMAG_TOL = 1e-8
_MAX_ITER = 400
_SCREEN_PRIMES = (2305843009213693951, 4611686018427387847)  # 2^61-1 and a 63-bit prime


class RootFindingError(RuntimeError):
    """Iteration failed to certify; carries the best iterate and its residual."""

    def __init__(self, message: str, best: tuple[complex, ...], residual: float):
        super().__init__(message)
        self.best = best
        self.residual = residual


class RealnessError(ValueError):
    """A root violated the realness tolerance where theory guarantees real roots."""


@dataclass(frozen=True)
class RootSet:
    """All roots of a polynomial, with multiplicity.

    `points` repeats each root by multiplicity (length = degree); `grouped`
    pairs each distinct root with its exact multiplicity from the square-free
    deflation."""

    points: tuple[complex, ...]
    grouped: tuple[tuple[complex, int], ...]
    residual_bound: float
    method: str
    tol: float

    def to_rows(self) -> list[tuple[float, float, int]]:
        return [(z.real, z.imag, m) for z, m in self.grouped]

    def meta(self) -> dict:
        return {"residualBound": self.residual_bound, "method": self.method,
                "tol": self.tol}


# ---------------------------------------------------------------------------
# exact polynomial helpers (lists of Fraction, low power first)
# ---------------------------------------------------------------------------

def _fnormalize(a: list[Fraction]) -> list[Fraction]:
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return a


def _fderiv(a: list[Fraction]) -> list[Fraction]:
    return _fnormalize([i * c for i, c in enumerate(a)][1:] or [Fraction(0)])


def _fsub(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * max(len(a), len(b))
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i] -= c
    return _fnormalize(out)


def _fdivmod(a: list[Fraction], b: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    if db == 0:
        return [c / lb for c in a], [Fraction(0)]
    q = [Fraction(0)] * max(len(a) - db, 1)
    while len(a) - 1 >= db and any(a):
        da = len(a) - 1
        coef = a[-1] / lb
        q[da - db] = coef
        for i in range(db + 1):
            a[da - db + i] -= coef * b[i]
        a.pop()
        _fnormalize(a)
        if a == [Fraction(0)]:
            break
    return _fnormalize(q), _fnormalize(a)


def _fgcd(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    """Monic GCD by the Euclidean algorithm; gcd(a, 0) = monic a."""
    a, b = _fnormalize(list(a)), _fnormalize(list(b))
    while b != [Fraction(0)]:
        _, r = _fdivmod(a, b)
        a, b = b, r
    if a == [Fraction(0)]:
        return a
    lead = a[-1]
    return [c / lead for c in a]


def _to_fracs(p: IntPolynomial) -> list[Fraction]:
    return [Fraction(c) for c in p.coeffs]


def _modq_trim(a: list[int]) -> list[int]:
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return a or [0]


def _modq_rem(a: list[int], b: list[int], q: int) -> list[int]:
    a = list(a)
    inv = pow(b[-1], q - 2, q)
    while len(a) >= len(b) and a != [0]:
        coef = a[-1] * inv % q
        shift = len(a) - len(b)
        for i in range(len(b)):
            a[shift + i] = (a[shift + i] - coef * b[i]) % q
        a.pop()
        a = _modq_trim(a)
    return _modq_trim(a)


def _is_squarefree_mod(coeffs: tuple[int, ...], q: int) -> bool | None:
    """True if p is certainly square-free (gcd(p, p') = 1 mod q); None when the
    modular image is degenerate and tells us nothing."""
    a = _modq_trim([c % q for c in coeffs])
    if len(a) != len(coeffs):
        return None  # leading coefficient vanished mod q
    b = _modq_trim([(i * c) % q for i, c in enumerate(a)][1:])
    if b == [0]:
        return None
    while b != [0]:
        a, b = b, _modq_rem(a, b, q)
    return len(a) == 1


def _squarefree_factors(p: IntPolynomial) -> list[tuple[list[Fraction], int]]:
    """Yun's algorithm: [(factor, multiplicity)] with factors monic rational
    and square-free; product of factor^multiplicity = p / lc."""
    f = _to_fracs(p)
    lead = f[-1]
    f = [c / lead for c in f]
    for q in _SCREEN_PRIMES:
        sf = _is_squarefree_mod(p.coeffs, q)
        if sf:
            return [(f, 1)]
        if sf is None:
            continue
        break
    fp = _fderiv(f)
    g = _fgcd(f, fp)
    if len(g) == 1:
        return [(f, 1)]
    c, _ = _fdivmod(f, g)
    dq, _ = _fdivmod(fp, g)
    d = _fsub(dq, _fderiv(c))
    out: list[tuple[list[Fraction], int]] = []
    i = 1
    while len(c) > 1:
        a = _fgcd(c, d)
        c, _ = _fdivmod(c, a)
        da, _ = _fdivmod(d, a)
        d = _fsub(da, _fderiv(c))
        if len(a) > 1:
            out.append((a, i))
        i += 1
    return out


# ---------------------------------------------------------------------------
# numeric core
# ---------------------------------------------------------------------------

def _log2_fraction(x: Fraction) -> float:
    num, den = abs(x.numerator), x.denominator
    ln = (num.bit_length() - 53, den.bit_length() - 53)
    sn = max(ln[0], 0)
    sd = max(ln[1], 0)
    return (math.log2(num >> sn) + sn) - (math.log2(den >> sd) + sd)


def _int_primitive(monic: list[Fraction]) -> tuple[int, ...]:
    """Clear denominators and content; same roots, integer coefficients."""
    den = 1
    for c in monic:
        den = den * c.denominator // math.gcd(den, c.denominator)
    ints = [int(c * den) for c in monic]
    g = 0
    for c in ints:
        g = math.gcd(g, c)
    if g > 1:
        ints = [c // g for c in ints]
    if ints[-1] < 0:
        ints = [-c for c in ints]
    return tuple(ints)


def _taylor_shift_int(coeffs: tuple[int, ...], c: int) -> tuple[int, ...]:
    """p(x) -> p(x + c), exact integer synthetic division."""
    a = list(coeffs)
    n = len(a) - 1
    for k in range(n):
        for j in range(n - 1, k - 1, -1):
            a[j] += c * a[j + 1]
    return tuple(a)


def _scaled_doubles(ints: tuple[int, ...]) -> tuple[np.ndarray, float]:
    """Rescale x -> s*y with s a power of two near the geometric mean of the
    nonzero root moduli, then return float coefficients of the monic
    polynomial in y. Keeps huge-coefficient inputs (Hermite-type) inside
    double range without distorting well-scaled ones."""
    n = len(ints) - 1
    lead = Fraction(ints[-1])
    t = 0
    while ints[t] == 0:
        t += 1
    e = 0
    if n - t > 0:
        e = int(round(_log2_fraction(Fraction(ints[t]) / lead) / (n - t)))
    e = max(e, 0)
    s = Fraction(2) ** e
    coeffs = np.array(
        [float(Fraction(ints[j]) / lead / s ** (n - j)) for j in range(n + 1)],
        dtype=np.float64,
    )
    return coeffs, float(2.0 ** e)


def _initial_points(b: np.ndarray) -> np.ndarray:
    """Newton-polygon initial points: radii from the upper convex hull of
    (k, log2|b_k|), angles spread per hull segment."""
    n = len(b) - 1
    pts = [(k, math.log2(abs(b[k]))) for k in range(n + 1) if b[k] != 0]
    hull: list[tuple[int, float]] = []
    for p in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            if (x2 - x1) * (p[1] - y1) - (y2 - y1) * (p[0] - x1) >= 0:
                hull.pop()
            else:
                break
        hull.append(p)
    z = np.empty(n, dtype=np.complex128)
    gidx = 0
    for seg in range(len(hull) - 1):
        (k1, y1), (k2, y2) = hull[seg], hull[seg + 1]
        cnt = k2 - k1
        r = 2.0 ** ((y1 - y2) / cnt)
        r = min(max(r, 1e-150), 1e150)
        for _ in range(cnt):
            theta = 2 * math.pi * gidx / n + 0.45 + 0.3 * seg
            z[gidx] = r * complex(math.cos(theta), math.sin(theta))
            gidx += 1
    return z


def _aberth(b: np.ndarray) -> tuple[np.ndarray, str]:
    """Roots of a monic, square-free float polynomial (low power first)."""
    n = len(b) - 1
    if n == 1:
        return np.array([-b[0]], dtype=np.complex128), "direct"
    db = np.array([i * b[i] for i in range(1, n + 1)])
    z = _initial_points(b)
    for _ in range(_MAX_ITER):
        pv = np.polynomial.polynomial.polyval(z, b)
        dv = np.polynomial.polynomial.polyval(z, db)
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            newton = pv / dv
            diff = z[:, None] - z[None, :]
            np.fill_diagonal(diff, np.inf)
            s = (1.0 / diff).sum(axis=1)
            step = newton / (1.0 - newton * s)
        # non-finite step means evaluation overflowed far out: contract inward
        znew = np.where(np.isfinite(step), z - step, z * 0.7)
        moved = np.abs(znew - z)
        z = znew
        if np.all(moved <= 1e-15 * (1.0 + np.abs(z))):
            return z, "aberth"
    return z, "aberth-stalled"


def _companion_roots(b: np.ndarray) -> np.ndarray:
    return np.roots(b[::-1])


def _scaled_residual(b: np.ndarray, z: np.ndarray) -> float:
    """Max over roots of |p(z)| relative to the evaluation-magnitude bound
    sum_k |b_k| |z|^k (relative backward error; ~machine eps at true roots)."""
    if len(z) == 0:
        return 0.0
    vals = np.abs(np.polynomial.polynomial.polyval(z, b))
    norm = np.polynomial.polynomial.polyval(np.abs(z), np.abs(b))
    return float(np.max(vals / np.maximum(norm, 1e-300)))


def find_roots(p: IntPolynomial, tol: float = DEFAULT_ROOT_TOL) -> RootSet:
    """All complex roots of p with multiplicity; scaled residual <= tol."""
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    if p.is_zero or p.degree < 1:
        raise ValueError("root finding requires degree >= 1")

    grouped: list[tuple[complex, int]] = []
    methods: set[str] = set()
    coeffs = p.coeffs
    t = 0
    while coeffs[t] == 0:
        t += 1
    if t:
        grouped.append((0j, t))
        methods.add("exact-zero")
        coeffs = coeffs[t:]

    residual_bound = 0.0
    if len(coeffs) > 1:
        factors = _squarefree_factors(IntPolynomial(coeffs))
        for fac, mult in factors:
            ints = _int_primitive(fac)
            n = len(ints) - 1
            # exact shift to the nearest integer to the root centroid:
            # clustered spectra (e.g. around 1) are brutally ill-conditioned
            # in the raw monomial basis
            shift = int(round(Fraction(-ints[-2], n * ints[-1]))) if n >= 1 else 0
            if shift:
                ints = _taylor_shift_int(ints, shift)
            if ints[0] == 0:
                # the shift landed exactly on a root (square-free: simple)
                grouped.append((complex(shift), mult))
                methods.add("exact-shift")
                ints = ints[1:]
                if len(ints) == 1:
                    continue
            b, s = _scaled_doubles(ints)
            z, method = _aberth(b)
            res = _scaled_residual(b, z)
            if method == "aberth-stalled" or not res <= tol:
                z2 = _companion_roots(b)
                res2 = _scaled_residual(b, z2)
                if not res <= res2:
                    z, res, method = z2, res2, "companion"
            if not res <= tol:
                raise RootFindingError(
                    f"root residual {res:.3e} above tolerance {tol:.3e} "
                    f"(degree {len(b) - 1}, method {method})",
                    tuple(complex(w) * s + shift for w in z), res,
                )
            methods.add(method)
            residual_bound = max(residual_bound, res)
            for w in sorted(z, key=lambda c: (c.real, c.imag)):
                grouped.append((complex(w) * s + shift, mult))

    grouped.sort(key=lambda zm: (zm[0].real, zm[0].imag))
    points = tuple(z for z, m in grouped for _ in range(m))
    # self-check on every run: the root sum is pinned by the coefficients
    n = p.degree
    expected_sum = float(Fraction(-p.coeffs[n - 1], p.coeffs[n]))
    got_sum = sum(points)
    if abs(got_sum - expected_sum) > 1e-6 * max(1.0, abs(expected_sum)):
        raise RootFindingError(
            f"root sum {got_sum} deviates from coefficient value "
            f"{expected_sum} beyond 1e-6 (root extraction unreliable here)",
            points, residual_bound,
        )
    return RootSet(
        points=points,
        grouped=tuple(grouped),
        residual_bound=residual_bound,
        method="+".join(sorted(methods)),
        tol=tol,
    )


def hermite_zeros(n: int) -> list[float]:
    """Zeros of the probabilists' Hermite polynomial He_n (= matching roots of
    the complete graph K_n), as eigenvalues of the symmetric tridiagonal
    Jacobi matrix of the three-term recurrence.

    Expanded-coefficient root finding loses the extreme zeros to conditioning
    once n reaches the low hundreds; the Jacobi route is machine-accurate at
    any desk-scale degree."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if n == 0:
        return []
    mat = np.zeros((n, n))
    for k in range(1, n):
        mat[k, k - 1] = mat[k - 1, k] = math.sqrt(k)
    eig = np.linalg.eigvalsh(mat)
    return [float(x) for x in eig]


def certify_real(rs: RootSet, imag_tol: float = DEFAULT_IMAG_TOL) -> list[float]:
    """Real parts sorted ascending, provided every root satisfies
    |Im z| <= imag_tol * (1 + |z|); otherwise raises naming the offender."""
    out = []
    for z in rs.points:
        if abs(z.imag) > imag_tol * (1.0 + abs(z)):
            raise RealnessError(
                f"root {z} violates realness tolerance {imag_tol} "
                "(theory guarantees real roots here; this signals a bug)"
            )
        out.append(z.real)
    out.sort()
    return out
