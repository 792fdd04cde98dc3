"""Bezout polynomials and Bezout matrices of a square system.

Two routes produce the matrices B(1), B(x_1), ..., B(x_n):

* an exact symbolic route that expands the determinant of the
  finite-difference matrix over polynomial arithmetic, and
* a fast route that evaluates that determinant numerically on a product
  grid of Fourier points and recovers the integer coefficients by inverse
  DFTs, checked afterwards at random off-grid points.

The fast route is the default; it falls back to the symbolic route when
rounding or verification fails.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm, prod

import numpy as np

from .linalg import Matrix
from .poly import Exponent, Poly, PolySystem, joint_names, multidegree, x_names, y_names

MAX_SYMBOLIC_VARS = 6

_VERIFY_SEED = 20030  # fixed: off-grid check points are part of the build contract


class BezoutBuildError(ValueError):
    """The Bezout matrices cannot be constructed for this input."""


class GridError(BezoutBuildError):
    """Degenerate or colliding Fourier grid."""


class InterpolationError(BezoutBuildError):
    """Numeric coefficients did not round cleanly to integers."""

    def __init__(self, message: str, deviation: float):
        super().__init__(message)
        self.deviation = deviation


class VerificationError(BezoutBuildError):
    """Recovered coefficients disagree with direct evaluation off the grid."""


class ExactDivisionError(ArithmeticError):
    """A finite-difference division left a remainder; indicates a bug."""


# ---------------------------------------------------------------------------
# finite differences and symbolic bezoutians


def _split_embed(f: Poly, split: int) -> Poly:
    """f with its first ``split`` variables renamed to the mirror set.

    Result lives over the joint set (x1..xn, y1..yn); variable i of f maps
    to y_i for i < split and to x_i otherwise.
    """
    n = len(f.vars)
    positions = [n + i if i < split else i for i in range(n)]
    return f.embedded(joint_names(n), positions)


def _divide_by_difference(p: Poly, xi: int, yi: int) -> Poly:
    """Exact quotient p / (v_xi - v_yi); raises if the division is inexact."""
    if p.is_zero():
        return p
    buckets: dict[int, dict[Exponent, Fraction]] = {}
    for exp, c in p.terms.items():
        base = exp[:xi] + (0,) + exp[xi + 1:]
        buckets.setdefault(exp[xi], {})[base] = c

    def shifted(d: dict[Exponent, Fraction]) -> dict[Exponent, Fraction]:
        return {e[:yi] + (e[yi] + 1,) + e[yi + 1:]: c for e, c in d.items()}

    def added(a: dict[Exponent, Fraction], b: dict[Exponent, Fraction]) -> dict[Exponent, Fraction]:
        out = dict(a)
        for e, c in b.items():
            s = out.get(e, Fraction(0)) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return out

    top = max(buckets)
    if top == 0:
        raise ExactDivisionError("finite-difference numerator has a nonzero remainder")
    levels: dict[int, dict[Exponent, Fraction]] = {top - 1: buckets[top]}
    q = buckets[top]
    for e in range(top - 1, 0, -1):
        q = added(buckets.get(e, {}), shifted(q))
        levels[e - 1] = q
    remainder = added(buckets.get(0, {}), shifted(q))
    if remainder:
        raise ExactDivisionError("finite-difference numerator has a nonzero remainder")
    terms: dict[Exponent, Fraction] = {}
    for level, coeffs in levels.items():
        for base, c in coeffs.items():
            terms[base[:xi] + (level,) + base[xi + 1:]] = c
    return Poly(p.vars, terms)


def delta_entry(f: Poly, j: int, gamma: Exponent) -> Poly:
    """Finite-difference quotient for one polynomial and variable slot j (1-based).

    Returns (y_j^g * f(y_1..y_{j-1}, x_j..x_n) - x_j^g * f(y_1..y_j, x_{j+1}..x_n))
    divided exactly by (x_j - y_j), where g is the j-th entry of gamma.
    """
    n = len(f.vars)
    if not 1 <= j <= n:
        raise ValueError(f"variable index {j} out of range 1..{n}")
    names = joint_names(n)
    g = gamma[j - 1]
    a = _split_embed(f, j - 1)
    b = _split_embed(f, j)
    if g:
        ypow = Poly.monomial(names, tuple(g if t == n + j - 1 else 0 for t in range(2 * n)))
        xpow = Poly.monomial(names, tuple(g if t == j - 1 else 0 for t in range(2 * n)))
        numerator = ypow * a - xpow * b
    else:
        numerator = a - b
    return _divide_by_difference(numerator, j - 1, n + j - 1)


@dataclass(frozen=True)
class DeltaMatrix:
    """The n x n finite-difference matrix of a monomial x^gamma."""

    entries: tuple[tuple[Poly, ...], ...]
    gamma: Exponent


def delta_matrix(f: PolySystem, gamma: Exponent) -> DeltaMatrix:
    rows = tuple(
        tuple(delta_entry(p, j, gamma) for j in range(1, f.n + 1))
        for p in f.polys
    )
    return DeltaMatrix(rows, tuple(gamma))


def _poly_det(entries) -> Poly:
    """Determinant over polynomial entries by Laplace expansion with
    column-subset minors shared across rows (no division needed)."""
    n = len(entries)
    vars = entries[0][0].vars
    minors: dict[tuple[int, ...], Poly] = {(): Poly.const(vars, 1)}
    for r in range(n):
        nxt: dict[tuple[int, ...], Poly] = {}
        for cols, minor in minors.items():
            if minor.is_zero():
                continue
            for c in range(n):
                if c in cols:
                    continue
                pos = sum(1 for cc in cols if cc < c)
                entry = entries[r][c]
                if entry.is_zero():
                    continue
                term = entry * minor
                if (r + pos) % 2:
                    term = -term
                key = tuple(sorted(cols + (c,)))
                prev = nxt.get(key)
                nxt[key] = term if prev is None else prev + term
        minors = nxt
        if not minors:
            return Poly.zero(vars)
    return minors.get(tuple(range(n)), Poly.zero(vars))


def bezoutian_symbolic(f: PolySystem, gamma: Exponent) -> Poly:
    """Exact Bezout polynomial of x^gamma over the joint variable set.

    Oracle route: expands det of the finite-difference matrix symbolically.
    Guarded to n <= 6 variables.
    """
    if f.n > MAX_SYMBOLIC_VARS:
        raise BezoutBuildError(
            f"symbolic determinant guarded to n <= {MAX_SYMBOLIC_VARS} (got n = {f.n})"
        )
    return _poly_det(delta_matrix(f, gamma).entries)


def bezout_poly_univariate(f: Poly, g: Poly) -> Poly:
    """(f(x)g(y) - f(y)g(x)) / (x - y) for univariate f, g; exact."""
    if len(f.vars) != 1 or f.vars != g.vars:
        raise ValueError("both polynomials must be univariate in the same variable")
    names = joint_names(1)
    fx = f.embedded(names, [0])
    fy = f.embedded(names, [1])
    gx = g.embedded(names, [0])
    gy = g.embedded(names, [1])
    return _divide_by_difference(fx * gy - fy * gx, 0, 1)


# ---------------------------------------------------------------------------
# degree bounds and Fourier grids


def degree_bounds(d: tuple[int, ...]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Per-variable degree bounds of the bezoutians.

    For a system of multidegree d in n variables the bezoutians have degree
    at most j*d_j in x_j and (n - j + 1)*d_j in y_j.
    """
    n = len(d)
    x_bounds = tuple((j + 1) * d[j] for j in range(n))
    y_bounds = tuple((n - j) * d[j] for j in range(n))
    return x_bounds, y_bounds


@dataclass(frozen=True, eq=False)
class FourierGrid:
    """Product evaluation grid: per-axis roots of unity for x, shifted roots
    for y so the two point sets never meet."""

    x_sizes: tuple[int, ...]
    y_sizes: tuple[int, ...]
    x_points: tuple[np.ndarray, ...]
    y_points: tuple[np.ndarray, ...]
    margin: int


def fourier_grid(d: tuple[int, ...], margin: int) -> FourierGrid:
    """Grid sized (degree bound + margin) per axis.

    x-axis j holds the roots of X^s - 1; y-axis j holds the roots of
    X^m - theta_j with theta_j = exp(i*pi/j), which keeps them off the
    x points.  Disjointness is verified numerically.
    """
    if margin < 0:
        raise GridError("margin must be non-negative")
    x_bounds, y_bounds = degree_bounds(d)
    x_sizes = tuple(b + margin for b in x_bounds)
    y_sizes = tuple(b + margin for b in y_bounds)
    if any(s < 1 for s in x_sizes) or any(s < 1 for s in y_sizes):
        raise GridError(f"degenerate grid sizes {x_sizes} x {y_sizes}; increase margin")
    x_points = tuple(
        np.exp(2j * np.pi * np.arange(s) / s) for s in x_sizes
    )
    y_points = []
    for t, m in enumerate(y_sizes):
        j = t + 1
        base = np.exp(1j * np.pi / (j * m))  # an m-th root of theta_j
        y_points.append(base * np.exp(2j * np.pi * np.arange(m) / m))
    for u, v in zip(x_points, y_points):
        if np.min(np.abs(u[:, None] - v[None, :])) <= 1e-9:
            raise GridError("x and y grid points collide; increase margin")
    return FourierGrid(x_sizes, y_sizes, x_points, tuple(y_points), margin)


@dataclass(frozen=True, eq=False)
class EvalGrid:
    """Determinant values of the finite-difference matrix on a full grid.

    ``values`` has one axis per x variable then one per y variable; its
    reshape to (|U|, |V|) is the evaluation matrix C.
    """

    k: int
    values: np.ndarray

    def as_matrix(self) -> np.ndarray:
        nx = prod(self.values.shape[: self.values.ndim // 2])
        return self.values.reshape(nx, -1)


def _unit_gamma(n: int, k: int) -> Exponent:
    return tuple(int(t == k - 1) for t in range(n)) if k else (0,) * n


def _axis_view(vec: np.ndarray, ndim: int, axis: int) -> np.ndarray:
    shape = [1] * ndim
    shape[axis] = len(vec)
    return vec.reshape(shape)


def _eval_on_split_grid(p: Poly, grid: FourierGrid, split: int) -> np.ndarray:
    """Evaluate p over the full product grid with its first ``split``
    variables drawn from the y axes and the rest from the x axes."""
    n = len(p.vars)
    ndim = 2 * n
    shape = grid.x_sizes + grid.y_sizes
    out = np.zeros(shape, dtype=complex)
    for exp, c in p.terms.items():
        arr = None
        for t, e in enumerate(exp):
            if not e:
                continue
            if t < split:
                vec, axis = grid.y_points[t], n + t
            else:
                vec, axis = grid.x_points[t], t
            powed = _axis_view(vec ** e, ndim, axis)
            arr = powed if arr is None else arr * powed
        if arr is None:
            out += complex(c)
        else:
            out += complex(c) * arr
    return out


def evaluate_determinant_grid(f: PolySystem, k: int, grid: FourierGrid) -> EvalGrid:
    """Batched determinants of the finite-difference matrix on the grid.

    Each entry is computed from the two mixed evaluations of f_i divided by
    (u_j - v_j); determinants run through LU with partial pivoting.
    """
    n = f.n
    ndim = 2 * n
    gamma = _unit_gamma(n, k)
    shape = grid.x_sizes + grid.y_sizes
    cache = {
        (i, split): _eval_on_split_grid(p, grid, split)
        for i, p in enumerate(f.polys)
        for split in range(n + 1)
    }
    entries = np.empty(shape + (n, n), dtype=complex)
    for j in range(1, n + 1):
        u = _axis_view(grid.x_points[j - 1], ndim, j - 1)
        v = _axis_view(grid.y_points[j - 1], ndim, n + j - 1)
        denom = u - v
        if np.min(np.abs(denom)) < 1e-12:
            raise GridError(f"grid axes {j} nearly collide; grid construction bug")
        g = gamma[j - 1]
        for i in range(n):
            a = cache[(i, j - 1)]
            b = cache[(i, j)]
            num = (v ** g) * a - (u ** g) * b if g else a - b
            entries[..., i, j - 1] = num / denom
    return EvalGrid(k, np.linalg.det(entries))


@dataclass(frozen=True)
class BezoutCoeffs:
    """Coefficient matrix of one bezoutian over its own monomial supports."""

    matrix: list[list[Fraction]]
    support_x: tuple[Exponent, ...]
    support_y: tuple[Exponent, ...]
    max_deviation: float = 0.0


def interpolate_bezout(c: EvalGrid, grid: FourierGrid, round_tol: float = 1e-6) -> BezoutCoeffs:
    """Recover integer bezoutian coefficients from grid values.

    Inverse DFT per x axis; per y axis an inverse DFT followed by the
    diagonal unscaling that accounts for the theta_j offset of the y roots.
    Coefficients are rounded to integers; the largest rounding deviation is
    recorded and must stay below ``round_tol``.
    """
    n = len(grid.x_sizes)
    arr = np.asarray(c.values, dtype=complex)
    ndim = arr.ndim
    for t, s in enumerate(grid.x_sizes):
        arr = np.fft.fft(arr, axis=t) / s
    for t, m in enumerate(grid.y_sizes):
        arr = np.fft.fft(arr, axis=n + t) / m
        j = t + 1
        unscale = np.exp(-1j * np.pi * np.arange(m) / (j * m))
        arr = arr * _axis_view(unscale, ndim, n + t)
    rounded = np.rint(arr.real)
    deviation = float(np.max(np.abs(arr - rounded))) if arr.size else 0.0
    if deviation > round_tol:
        raise InterpolationError(
            "interpolation unreliable: increase margin or use symbolic path",
            deviation,
        )
    ints = rounded.astype(np.int64)
    flat = ints.reshape(prod(grid.x_sizes), prod(grid.y_sizes))
    rows = np.nonzero(flat.any(axis=1))[0]
    cols = np.nonzero(flat.any(axis=0))[0]
    support_x = tuple(
        tuple(int(w) for w in np.unravel_index(r, grid.x_sizes)) for r in rows
    )
    support_y = tuple(
        tuple(int(w) for w in np.unravel_index(col, grid.y_sizes)) for col in cols
    )
    matrix = [[Fraction(int(v)) for v in flat[r, cols]] for r in rows]
    return BezoutCoeffs(matrix, support_x, support_y, deviation)


# ---------------------------------------------------------------------------
# assembling the full set


@dataclass(frozen=True)
class BezoutSet:
    """The n+1 Bezout matrices with their shared index families.

    ``matrices[k]`` is B(x_k) (k = 0 meaning B(1)); all matrices have the
    same shape, rows indexed by ``row_family`` (polynomials in x) and
    columns by ``col_family`` (polynomials in y).
    """

    n: int
    matrices: tuple[Matrix, ...]
    row_family: tuple[Poly, ...]
    col_family: tuple[Poly, ...]

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.row_family), len(self.col_family)


@dataclass(frozen=True)
class BuildOptions:
    margin: int = 1
    round_tol: float = 1e-6
    force_symbolic: bool = False
    verify_samples: int = 8


def _coeffs_from_poly(d: Poly, n: int) -> BezoutCoeffs:
    support_x = tuple(sorted({exp[:n] for exp in d.terms}))
    support_y = tuple(sorted({exp[n:] for exp in d.terms}))
    matrix = [
        [d.terms.get(a + b, Fraction(0)) for b in support_y]
        for a in support_x
    ]
    return BezoutCoeffs(matrix, support_x, support_y)


def _delta_values(f: PolySystem, k: int, u, v) -> np.ndarray:
    """Finite-difference matrix of x_k at one numeric point pair."""
    n = f.n
    gamma = _unit_gamma(n, k)
    out = np.empty((n, n), dtype=complex)
    for i, p in enumerate(f.polys):
        for j in range(1, n + 1):
            a = p.evaluate(list(v[: j - 1]) + list(u[j - 1:]))
            b = p.evaluate(list(v[:j]) + list(u[j:]))
            g = gamma[j - 1]
            num = (v[j - 1] ** g) * a - (u[j - 1] ** g) * b if g else a - b
            out[i, j - 1] = num / (u[j - 1] - v[j - 1])
    return out


def _verify_off_grid(f: PolySystem, per_k: list[BezoutCoeffs], samples: int) -> None:
    """Compare interpolated coefficients against direct determinant values at
    random unit-circle points away from the grid."""
    if samples <= 0:
        return
    n = f.n
    rng = np.random.default_rng(_VERIFY_SEED)
    checked = 0
    while checked < samples:
        u = np.exp(2j * np.pi * rng.random(n))
        v = np.exp(2j * np.pi * rng.random(n))
        if np.min(np.abs(u - v)) < 1e-6:
            continue
        checked += 1
        for k, coeffs in enumerate(per_k):
            direct = complex(np.linalg.det(_delta_values(f, k, u, v)))
            value = 0j
            for a, alpha in enumerate(coeffs.support_x):
                ua = prod(ui ** e for ui, e in zip(u, alpha) if e)
                for b, beta in enumerate(coeffs.support_y):
                    vb = prod(vi ** e for vi, e in zip(v, beta) if e)
                    value += float(coeffs.matrix[a][b]) * ua * vb
            if abs(value - direct) > 1e-6 * max(1.0, abs(direct)):
                raise VerificationError(
                    f"off-grid check failed for k={k}: |{value} - {direct}|"
                )


def _fast_path(g: PolySystem, opts: BuildOptions) -> list[BezoutCoeffs] | None:
    d = multidegree(g)
    for margin in (opts.margin, opts.margin + 1):
        try:
            grid = fourier_grid(d, margin)
            per_k = [
                interpolate_bezout(evaluate_determinant_grid(g, k, grid), grid, opts.round_tol)
                for k in range(g.n + 1)
            ]
            _verify_off_grid(g, per_k, opts.verify_samples)
            return per_k
        except (GridError, InterpolationError, VerificationError):
            continue
    return None


def build_bezout_set(f: PolySystem, opts: BuildOptions | None = None) -> BezoutSet:
    """Compute B(1), B(x_1), ..., B(x_n) with shared index families.

    Denominators are cleared first (the bezoutian is linear in each input
    polynomial, so every matrix picks up the same overall factor, which is
    divided back out at the end).  Index families are the unions of the
    per-k monomial supports, sorted; missing entries are explicit zeros.
    """
    opts = opts or BuildOptions()
    if all(p.is_zero() for p in f.polys):
        raise BezoutBuildError("zero system")
    n = f.n
    mults = [
        lcm(*(c.denominator for c in p.terms.values())) if p.terms else 1
        for p in f.polys
    ]
    g = PolySystem(n, tuple(p * m for p, m in zip(f.polys, mults)))
    scale = Fraction(prod(mults))

    per_k: list[BezoutCoeffs] | None = None
    if not opts.force_symbolic:
        per_k = _fast_path(g, opts)
    if per_k is None:
        if n > MAX_SYMBOLIC_VARS:
            raise BezoutBuildError(
                "fast path failed and the symbolic fallback is guarded to "
                f"n <= {MAX_SYMBOLIC_VARS}"
            )
        per_k = [
            _coeffs_from_poly(bezoutian_symbolic(g, _unit_gamma(n, k)), n)
            for k in range(n + 1)
        ]

    support_x = sorted(set().union(*(set(c.support_x) for c in per_k)))
    support_y = sorted(set().union(*(set(c.support_y) for c in per_k)))
    xi = {e: i for i, e in enumerate(support_x)}
    yi = {e: i for i, e in enumerate(support_y)}
    matrices = []
    for coeffs in per_k:
        m = [[Fraction(0)] * len(support_y) for _ in support_x]
        for a, alpha in enumerate(coeffs.support_x):
            row = m[xi[alpha]]
            for b, beta in enumerate(coeffs.support_y):
                value = coeffs.matrix[a][b]
                if value:
                    row[yi[beta]] = Fraction(value) / scale
        matrices.append(m)
    row_family = tuple(Poly.monomial(x_names(n), e) for e in support_x)
    col_family = tuple(Poly.monomial(y_names(n), e) for e in support_y)
    return BezoutSet(n, tuple(matrices), row_family, col_family)
