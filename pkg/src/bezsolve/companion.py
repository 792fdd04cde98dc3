"""Companion (multiplication) matrices and their verification.

The multiplication-by-x_j maps of the quotient algebra are obtained from
the reduced Bezout matrices as the solutions of X_j B(1) = B(x_j); the
univariate case also gets the classic direct construction and the resize
route for powers beyond the degree.  Verification multiplies each input
polynomial at the matrix tuple, either exactly or probabilistically in
Z/pZ with random-vector probes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import linalg
from .bezout import BezoutSet, bezout_poly_univariate
from .linalg import Matrix
from .poly import Poly, PolySystem, univariate_divmod, x_names, y_names
from .reduction import ReducedBezoutSet, reduce


class CompanionError(ValueError):
    """Companion matrices cannot be formed from this input."""


class BadPrimeError(ValueError):
    """A denominator in the data is divisible by the working prime."""


@dataclass(frozen=True)
class CompanionSet:
    """Multiplication matrices X_1..X_n written in ``basis``."""

    n: int
    matrices: tuple[Matrix, ...]
    basis: tuple[Poly, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)


@dataclass(frozen=True)
class VerifyReport:
    prime: int
    seed: int
    per_poly: tuple[bool, ...]
    passed: bool


def companion_univariate(f: Poly) -> Matrix:
    """Companion matrix of a univariate polynomial, read off its coefficients.

    Subdiagonal of ones; last column -a_{d-k}/a_0 where a_0 is the leading
    coefficient.  Hessenberg by construction.
    """
    if len(f.vars) != 1:
        raise CompanionError("companion matrix needs a univariate polynomial")
    d = max((e[0] for e in f.terms), default=-1)
    if d < 1:
        raise CompanionError("companion matrix needs degree >= 1")
    lead = f.coeff((d,))
    m = linalg.zeros(d, d)
    for i in range(1, d):
        m[i][i - 1] = Fraction(1)
    for i in range(d):
        m[i][d - 1] = -f.coeff((i,)) / lead
    return m


def _univariate_bezout_set(f: Poly, g: Poly) -> BezoutSet:
    """B(1) and B(g) padded to the common full monomial ranges."""
    one = Poly.const(f.vars, 1)
    d1 = bezout_poly_univariate(f, one)
    dg = bezout_poly_univariate(f, g)
    df = max(e[0] for e in f.terms)
    dgg = max((e[0] for e in g.terms), default=0)
    m = max(df, dgg)
    mats = []
    for dd in (d1, dg):
        mats.append(
            [[dd.terms.get((a, b), Fraction(0)) for b in range(m)] for a in range(m)]
        )
    rows = tuple(Poly.monomial(x_names(1), (a,)) for a in range(m))
    cols = tuple(Poly.monomial(y_names(1), (b,)) for b in range(m))
    return BezoutSet(1, tuple(mats), rows, cols)


def barnett_univariate(f: Poly, g: Poly) -> Matrix:
    """g evaluated at the companion matrix of f, via B(g) B(1)^{-1}.

    When deg g exceeds deg f the padded B(1) is singular; the reduction
    pass shrinks both matrices to the common invertible size first.
    """
    if len(f.vars) != 1 or f.vars != g.vars:
        raise CompanionError("both polynomials must be univariate in the same variable")
    if max((e[0] for e in f.terms), default=-1) < 1:
        raise CompanionError("the fixed polynomial must have degree >= 1")
    red = reduce(_univariate_bezout_set(f, g))
    return linalg.solve_right(red.matrices[0], red.matrices[1])


def companion_matrices(red: ReducedBezoutSet) -> CompanionSet:
    """All X_j from the reduced set, by exact solves X_j B(1) = B(x_j)."""
    if red.dim < 1:
        raise CompanionError("reduced set has dimension 0; no companion matrices")
    try:
        xs = tuple(
            linalg.solve_right(red.matrices[0], red.matrices[j])
            for j in range(1, red.n + 1)
        )
    except linalg.SingularMatrixError as exc:  # violates the reduced invariant
        raise CompanionError(f"reduced B(1) is singular: {exc}") from exc
    return CompanionSet(red.n, xs, red.row_family)


def poly_at_matrices(g: Poly, cs: CompanionSet) -> Matrix:
    """g(X_1, ..., X_n) exactly; the constant term multiplies the identity."""
    if len(g.vars) != cs.n:
        raise CompanionError(f"polynomial has {len(g.vars)} variables, expected {cs.n}")
    dim = cs.dim
    powers: list[dict[int, Matrix]] = [{0: linalg.identity(dim)} for _ in range(cs.n)]

    def power(j: int, e: int) -> Matrix:
        cache = powers[j]
        if e not in cache:
            cache[e] = linalg.mat_mul(power(j, e - 1), cs.matrices[j])
        return cache[e]

    total = linalg.zeros(dim, dim)
    for exp, c in g.terms.items():
        term = linalg.identity(dim)
        for j, e in enumerate(exp):
            if e:
                term = linalg.mat_mul(term, power(j, e))
        total = linalg.mat_add(total, linalg.mat_scale(c, term))
    return total


_FALLBACK_PRIMES = (2003, 4001, 65537, 1000003)


def is_prime(p: int) -> bool:
    """Deterministic Miller-Rabin (the witness set covers all 64-bit inputs)."""
    if p < 2:
        return False
    for small in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if p % small == 0:
            return p == small
    d = p - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, p)
        if x in (1, p - 1):
            continue
        for _ in range(r - 1):
            x = x * x % p
            if x == p - 1:
                break
        else:
            return False
    return True


def _fraction_mod(x: Fraction, p: int) -> int:
    if x.denominator % p == 0:
        raise BadPrimeError(f"denominator {x.denominator} divisible by {p}")
    return x.numerator * pow(x.denominator, -1, p) % p


def _matrix_mod(m: Matrix, p: int) -> list[list[int]]:
    return [[_fraction_mod(x, p) for x in row] for row in m]


def verify_modp(f: PolySystem, cs: CompanionSet, prime: int = 2003, seed: int = 0) -> VerifyReport:
    """Probabilistic check that f_i(X) v = 0 in Z/pZ for a random vector v.

    Every monomial is applied through matrix-vector products only.  Raises
    BadPrimeError when a denominator in f or the matrices is divisible by
    the prime; callers retry with the next entry of fallback_primes().
    """
    if not is_prime(prime):
        raise ValueError(f"{prime} is not prime")
    if f.n != cs.n:
        raise CompanionError("system and companion set sizes differ")
    dim = cs.dim
    mats = [_matrix_mod(m, prime) for m in cs.matrices]
    rng = np.random.default_rng(seed)
    v = [int(t) for t in rng.integers(0, prime, size=dim)]

    def matvec(m: list[list[int]], w: list[int]) -> list[int]:
        return [sum(a * b for a, b in zip(row, w)) % prime for row in m]

    per_poly = []
    for p in f.polys:
        acc = [0] * dim
        for exp, c in p.terms.items():
            w = v
            for j, e in enumerate(exp):
                for _ in range(e):
                    w = matvec(mats[j], w)
            cm = _fraction_mod(c, prime)
            acc = [(a + cm * wi) % prime for a, wi in zip(acc, w)]
        per_poly.append(all(a == 0 for a in acc))
    per_poly = tuple(per_poly)
    return VerifyReport(prime, seed, per_poly, all(per_poly))


def fallback_primes(first: int = 2003) -> tuple[int, ...]:
    """The requested prime followed by the documented fallbacks."""
    rest = tuple(p for p in _FALLBACK_PRIMES if p != first)
    return (first,) + rest
