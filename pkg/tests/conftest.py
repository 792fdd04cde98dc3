import random
from fractions import Fraction

import pytest

from bezsolve.poly import Poly, PolySystem, parse_system, x_names

# f1 = x1^2 + x1*x2^2 - 1, f2 = x1^2*x2 + x1: the bivariate worked example
# used across the suite; its bezoutians, reduction trace, companion matrices
# and roots are all known in closed form.
EXAMPLE_2VAR = "x1^2+x1*x2^2-1\nx1^2*x2+x1"

# f = x1^2 - 3x1 + 2 = (x1-1)(x1-2): the univariate worked example.
EXAMPLE_UNI = "x1^2-3*x1+2"


@pytest.fixture
def sys2() -> PolySystem:
    return parse_system(EXAMPLE_2VAR)


@pytest.fixture
def sys1() -> PolySystem:
    return parse_system(EXAMPLE_UNI)


def random_system(rng: random.Random, n: int, max_deg: int = 2,
                  coeff_bound: int = 5) -> PolySystem:
    """Random square system with per-variable degrees <= max_deg and integer
    coefficients in [-coeff_bound, coeff_bound]; no polynomial is zero."""
    names = x_names(n)
    polys = []
    for _ in range(n):
        while True:
            terms: dict[tuple[int, ...], Fraction] = {}
            for _ in range(rng.randint(2, 6)):
                exp = tuple(rng.randint(0, max_deg) for _ in range(n))
                c = rng.randint(-coeff_bound, coeff_bound)
                if c:
                    terms[exp] = terms.get(exp, Fraction(0)) + c
            terms = {e: c for e, c in terms.items() if c}
            if terms:
                polys.append(Poly(names, terms))
                break
    return PolySystem(n, tuple(polys))


def random_univariate(rng: random.Random, max_deg: int, monic: bool = False) -> Poly:
    deg = rng.randint(1, max_deg)
    terms = {(e,): Fraction(rng.randint(-5, 5)) for e in range(deg)}
    terms[(deg,)] = Fraction(1) if monic else Fraction(rng.choice([-3, -2, -1, 1, 2, 3]))
    return Poly(x_names(1), {e: c for e, c in terms.items() if c})


def dense_box_system(seed: int, n: int, deg: int, coeff_bound: int = 5) -> PolySystem:
    """Every exponent box monomial present with a nonzero coefficient."""
    rng = random.Random(seed)
    names = x_names(n)
    exps = [()]
    for _ in range(n):
        exps = [e + (d,) for e in exps for d in range(deg + 1)]
    polys = []
    for _ in range(n):
        terms = {}
        for e in exps:
            c = 0
            while c == 0:
                c = rng.randint(-coeff_bound, coeff_bound)
            terms[e] = Fraction(c)
        polys.append(Poly(names, terms))
    return PolySystem(n, tuple(polys))
