"""Numerical roots as joint eigenvalues of the companion matrices.

A random linear combination T of the X_j is diagonalized once; each
eigenvector of T pairs the coordinates of one root through Rayleigh
quotients, which stays consistent even when a single X_j has repeated
eigenvalues.  Root quality is measured by the length of one Newton step.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .companion import CompanionSet
from .poly import PolySystem, jacobian

_ZERO_RESIDUAL_LOG10 = -16.0
_COND_LIMIT = 1e12


class EigensolveError(RuntimeError):
    """The dense eigensolver failed to converge."""


@dataclass(frozen=True)
class Root:
    coords: tuple[complex, ...]
    residual_log10: float | None = None


@dataclass(frozen=True)
class RootSet:
    roots: tuple[Root, ...]
    seed: int
    combination: tuple[float, ...]


@dataclass(frozen=True)
class Histogram:
    bins: dict[int, int]
    skipped: int


def _as_float_matrices(cs: CompanionSet) -> list[np.ndarray]:
    return [np.array([[float(x) for x in row] for row in m]) for m in cs.matrices]


def eigen_roots(cs: CompanionSet, seed: int = 0) -> RootSet:
    """All dim roots of the system behind ``cs``.

    Weights for the combination are drawn from the seeded generator and
    normalized; one fresh draw is retried when the combined matrix has a
    nearly repeated spectrum.  Residual slots are left unset.
    """
    if cs.dim < 1:
        raise ValueError("companion set has dimension 0")
    xs = _as_float_matrices(cs)
    rng = np.random.default_rng(seed)
    weights = None
    eigvals = eigvecs = None
    for _ in range(2):
        t = rng.uniform(-1.0, 1.0, cs.n)
        t = t / np.linalg.norm(t)
        combined = sum(w * x for w, x in zip(t, xs))
        try:
            eigvals, eigvecs = np.linalg.eig(combined)
        except np.linalg.LinAlgError as exc:
            raise EigensolveError(f"eigendecomposition failed on {combined!r}") from exc
        weights = t
        if cs.dim == 1:
            break
        gaps = np.abs(eigvals[:, None] - eigvals[None, :])
        gap = np.min(gaps[~np.eye(cs.dim, dtype=bool)])
        if gap >= 1e-10 * np.linalg.norm(combined):
            break
    roots = []
    for idx in range(cs.dim):
        v = eigvecs[:, idx]
        vv = np.vdot(v, v)
        coords = tuple(complex(np.vdot(v, x @ v) / vv) for x in xs)
        roots.append(Root(coords))
    return RootSet(tuple(roots), seed, tuple(float(w) for w in weights))


def newton_residual(f: PolySystem, root: Root) -> float | None:
    """Infinity norm of one Newton step at the root; None when the Jacobian
    is numerically singular (condition estimate above 1e12)."""
    point = list(root.coords)
    jac = np.array(
        [[entry.evaluate(point) for entry in row] for row in jacobian(f)],
        dtype=complex,
    )
    values = np.array([p.evaluate(point) for p in f.polys], dtype=complex)
    cond = np.linalg.cond(jac)
    if not np.isfinite(cond) or cond > _COND_LIMIT:
        return None
    step = np.linalg.solve(jac, values)
    return float(np.max(np.abs(step)))


def attach_residuals(rs: RootSet, f: PolySystem) -> RootSet:
    """Fill each root's residual_log10 from a Newton-step measurement."""
    out = []
    for root in rs.roots:
        r = newton_residual(f, root)
        if r is None:
            out.append(replace(root, residual_log10=None))
        elif r == 0.0:
            out.append(replace(root, residual_log10=_ZERO_RESIDUAL_LOG10))
        else:
            out.append(replace(root, residual_log10=math.log10(r)))
    return RootSet(tuple(out), rs.seed, rs.combination)


def residual_histogram(rs: RootSet) -> Histogram:
    """Counts per floor(log10(residual)); unmeasured roots are counted apart."""
    bins: dict[int, int] = {}
    skipped = 0
    for root in rs.roots:
        if root.residual_log10 is None:
            skipped += 1
        else:
            key = math.floor(root.residual_log10)
            bins[key] = bins.get(key, 0) + 1
    return Histogram(bins, skipped)
