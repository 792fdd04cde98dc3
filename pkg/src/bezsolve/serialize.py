"""On-disk formats: sparse rational matrix files and the roots JSON.

Matrix files store only non-zero entries:

    BEZOUT-SPARSE v1 k=<K> rows=<R> cols=<C>
    rowfam: <poly>;<poly>;...
    colfam: <poly>;<poly>;...
    <i> <j> <num>/<den>        (0-indexed, sorted by (i, j))

Roots are a JSON array of {"coords": [{"re": .., "im": ..}, ...],
"residual_log10": number|null} objects.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Sequence

from .linalg import Matrix
from .poly import Poly, parse_poly
from .roots import RootSet

MAGIC = "BEZOUT-SPARSE v1"


class MatrixFileError(ValueError):
    """Malformed sparse matrix file."""


def _family_line(tag: str, family: Sequence[Poly]) -> str:
    return f"{tag}: " + ";".join(str(p) for p in family)


def matrix_sections(
    k: int, matrix: Matrix, row_family: Sequence[Poly], col_family: Sequence[Poly]
) -> tuple[str, str]:
    """(header+families, triplet section) as text; the second part's UTF-8
    length is what disk-usage accounting measures."""
    rows, cols = len(row_family), len(col_family)
    header = (
        f"{MAGIC} k={k} rows={rows} cols={cols}\n"
        + _family_line("rowfam", row_family)
        + "\n"
        + _family_line("colfam", col_family)
        + "\n"
    )
    lines = []
    for i in range(rows):
        for j in range(cols):
            v = matrix[i][j]
            if v:
                lines.append(f"{i} {j} {v.numerator}/{v.denominator}\n")
    return header, "".join(lines)


def write_matrix(path, k: int, matrix: Matrix, row_family, col_family) -> int:
    """Write one sparse matrix file; returns the triplet-section byte count."""
    header, triplets = matrix_sections(k, matrix, row_family, col_family)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(header)
        fh.write(triplets)
    return len(triplets.encode("utf-8"))


def triplet_bytes(k: int, matrix: Matrix, row_family, col_family) -> int:
    return len(matrix_sections(k, matrix, row_family, col_family)[1].encode("utf-8"))


def _parse_family(line: str, tag: str, var_names) -> tuple[Poly, ...]:
    prefix = f"{tag}:"
    if not line.startswith(prefix):
        raise MatrixFileError(f"expected a {tag} line, got {line!r}")
    body = line[len(prefix):].strip()
    if not body:
        return ()
    return tuple(parse_poly(part, var_names) for part in body.split(";"))


def read_matrix(path, row_vars, col_vars) -> tuple[int, Matrix, tuple[Poly, ...], tuple[Poly, ...]]:
    """Load a sparse matrix file; families are parsed over the given sets."""
    with open(path, "r", encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    if not lines or not lines[0].startswith(MAGIC):
        raise MatrixFileError(f"{path}: missing {MAGIC} header")
    fields = dict(part.split("=", 1) for part in lines[0][len(MAGIC):].split())
    try:
        k, rows, cols = int(fields["k"]), int(fields["rows"]), int(fields["cols"])
    except (KeyError, ValueError) as exc:
        raise MatrixFileError(f"{path}: bad header fields") from exc
    if len(lines) < 3:
        raise MatrixFileError(f"{path}: truncated file")
    row_family = _parse_family(lines[1], "rowfam", row_vars)
    col_family = _parse_family(lines[2], "colfam", col_vars)
    if len(row_family) != rows or len(col_family) != cols:
        raise MatrixFileError(f"{path}: family lengths disagree with the header")
    matrix = [[Fraction(0)] * cols for _ in range(rows)]
    for line in lines[3:]:
        if not line.strip():
            continue
        parts = line.split()
        if len(parts) != 3:
            raise MatrixFileError(f"{path}: bad triplet line {line!r}")
        i, j = int(parts[0]), int(parts[1])
        if not (0 <= i < rows and 0 <= j < cols):
            raise MatrixFileError(f"{path}: triplet index ({i}, {j}) out of range")
        matrix[i][j] = Fraction(parts[2])
    return k, matrix, row_family, col_family


def roots_to_json(rs: RootSet) -> str:
    payload = [
        {
            "coords": [{"re": z.real, "im": z.imag} for z in root.coords],
            "residual_log10": root.residual_log10,
        }
        for root in rs.roots
    ]
    return json.dumps(payload, indent=2) + "\n"


def empty_roots_json() -> str:
    return json.dumps([], indent=2) + "\n"
