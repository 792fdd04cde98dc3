"""Exact reduction of a Bezout set until B(1) is square and invertible.

Each pass inspects the right kernel of B(1).  A kernel vector either
exposes a relation (a polynomial in the row family that vanishes modulo
the ideal), in which case the row family is transformed so the relation
occupies one row, that row is deleted and dead columns are dropped; or it
annihilates every matrix, in which case one column is transformed away.
Row + column count strictly decreases, so the process terminates.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .bezout import BezoutSet
from .linalg import Matrix, Vector, mat_vec, normalize_primitive, right_kernel, transpose
from .poly import Poly, x_names

__all__ = [
    "ReductionError",
    "ReductionState",
    "ReducedBezoutSet",
    "derive_relation",
    "reduction_step",
    "reduce",
]


class ReductionError(RuntimeError):
    """The reduction loop reached a state it cannot leave."""


@dataclass(frozen=True)
class ReductionState:
    bez: BezoutSet
    relations: tuple[Poly, ...]
    steps: int


@dataclass(frozen=True)
class ReducedBezoutSet:
    """Bezout set whose B(1) is square invertible; families are bases."""

    n: int
    matrices: tuple[Matrix, ...]
    row_family: tuple[Poly, ...]
    col_family: tuple[Poly, ...]
    dim: int
    relations: tuple[Poly, ...]


def derive_relation(bez: BezoutSet, w: Vector) -> tuple[Vector, int] | None:
    """Row coordinates of the relation exposed by kernel vector w, if any.

    Returns (c, k) for the smallest k >= 1 with c = B(x_k) @ w nonzero;
    the relation polynomial is row_family . c.  Returns None when every
    matrix annihilates w.  c is normalized to primitive integers with a
    positive first nonzero entry.
    """
    if any(x for x in mat_vec(bez.matrices[0], w)):
        raise ValueError("kernel vector precondition violated: B(1) @ w != 0")
    for k in range(1, bez.n + 1):
        c = mat_vec(bez.matrices[k], w)
        if any(c):
            return normalize_primitive(c), k
    return None


def _combine(family: tuple[Poly, ...], coords: Vector) -> Poly:
    acc = None
    for p, c in zip(family, coords):
        if not c:
            continue
        acc = p * c if acc is None else acc + p * c
    assert acc is not None
    return acc


def _drop_dead_columns(
    matrices: list[Matrix], col_family: list[Poly]
) -> tuple[list[Matrix], list[Poly]]:
    cols = len(col_family)
    keep = [
        q
        for q in range(cols)
        if any(m[i][q] for m in matrices for i in range(len(m)))
    ]
    if len(keep) == cols:
        return matrices, col_family
    matrices = [[[row[q] for q in keep] for row in m] for m in matrices]
    return matrices, [col_family[q] for q in keep]


def reduction_step(state: ReductionState, w: Vector) -> ReductionState:
    """One reduction pass driven by a kernel vector of B(1).

    Relation case: the pivot row (highest in the canonical order among the
    nonzero relation coordinates) is rewritten to the relation polynomial by
    an elementary column transform of the row family, deleted, and columns
    that became zero in every matrix are dropped.  No-relation case: a column
    transform moves w onto one column, which becomes zero everywhere and is
    deleted.
    """
    bez = state.bez
    matrices = [[row[:] for row in m] for m in bez.matrices]
    row_family = list(bez.row_family)
    col_family = list(bez.col_family)
    relations = state.relations

    found = derive_relation(bez, w)
    if found is not None:
        c, _k = found
        p = max(i for i, x in enumerate(c) if x)
        relation = _combine(bez.row_family, c)
        relations = relations + (relation,)
        for m in matrices:
            pivot_row = m[p]
            for i, ci in enumerate(c):
                if i != p and ci:
                    m[i] = [a - ci / c[p] * b for a, b in zip(m[i], pivot_row)]
            m[p] = [b / c[p] for b in pivot_row]
        for m in matrices:
            del m[p]
        del row_family[p]
        matrices, col_family = _drop_dead_columns(matrices, col_family)
    else:
        # w annihilates every matrix: the column transform with w in the
        # pivot column zeroes that column everywhere and leaves the other
        # columns unchanged, so only the family needs adjusting.
        wn = normalize_primitive(w)
        q = max(i for i, x in enumerate(wn) if x)
        pivot_poly = col_family[q]
        new_fam = []
        for i, y in enumerate(col_family):
            if i == q:
                continue
            new_fam.append(y + pivot_poly * (-wn[i] / wn[q]) if wn[i] else y)
        for m in matrices:
            for row in m:
                del row[q]
        col_family = new_fam

    new_bez = BezoutSet(bez.n, tuple(matrices), tuple(row_family), tuple(col_family))
    return ReductionState(new_bez, relations, state.steps + 1)


def _drop_zero_rows(bez: BezoutSet) -> BezoutSet:
    rows = len(bez.row_family)
    keep = [
        i for i in range(rows) if any(x for m in bez.matrices for x in m[i])
    ]
    if len(keep) == rows:
        return bez
    matrices = tuple([m[i][:] for i in keep] for m in bez.matrices)
    return BezoutSet(
        bez.n, matrices, tuple(bez.row_family[i] for i in keep), bez.col_family
    )


def _pick_kernel_vector(basis: list[Vector]) -> Vector:
    def key(v: Vector):
        support = tuple(i for i, x in enumerate(v) if x)
        return (len(support), support, tuple(v))

    return min(basis, key=key)


def _transposed(bez: BezoutSet) -> BezoutSet:
    """Swap the roles of rows and columns; the identity delta = x B y^T
    transposes to y B^T x^T, so this is again a valid Bezout set."""
    mats = tuple(transpose(m) if m and m[0] else [[] for _ in bez.col_family] for m in bez.matrices)
    return BezoutSet(bez.n, mats, bez.col_family, bez.row_family)


def _renamed_to_x(p: Poly) -> Poly:
    """Map a mirror-set polynomial back to the input variables."""
    return Poly(x_names(len(p.vars)), p.terms)


def reduce(bez: BezoutSet) -> ReducedBezoutSet:
    """Run reduction passes until B(1) is square with full rank.

    Rows that are zero in every matrix are dropped between passes.  The
    kernel vector with the sparsest support goes first (ties broken
    lexicographically).  When B(1) has full column rank but extra rows
    (possible for degenerate, non-zero-dimensional inputs), one mirrored
    pass on the transposed set removes a column-side relation and the loop
    resumes; mirror relations are logged mapped back to the x variables.
    An emptied set is reported as dim = 0.
    """
    state = ReductionState(bez, (), 0)
    while True:
        current = _drop_zero_rows(state.bez)
        rows, cols = current.shape
        if rows == 0 or cols == 0:
            empty = tuple([] for _ in range(current.n + 1))
            return ReducedBezoutSet(current.n, empty, (), (), 0, state.relations)
        kernel = right_kernel(current.matrices[0])
        if kernel:
            state = reduction_step(
                ReductionState(current, state.relations, state.steps),
                _pick_kernel_vector(kernel),
            )
            continue
        if rows == cols:
            return ReducedBezoutSet(
                current.n,
                current.matrices,
                current.row_family,
                current.col_family,
                rows,
                state.relations,
            )
        # rows > cols with full column rank: the rows are dependent, so the
        # transposed set has a usable kernel
        flipped = _transposed(current)
        mirror_kernel = right_kernel(flipped.matrices[0])
        if not mirror_kernel:
            raise ReductionError(
                f"B(1) is {rows}x{cols} with full rank on both sides"
            )
        mirrored = reduction_step(
            ReductionState(flipped, (), state.steps), _pick_kernel_vector(mirror_kernel)
        )
        state = ReductionState(
            _transposed(mirrored.bez),
            state.relations + tuple(_renamed_to_x(r) for r in mirrored.relations),
            state.steps + 1,
        )
