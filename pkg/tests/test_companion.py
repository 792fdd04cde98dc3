import random
from fractions import Fraction

import pytest

from bezsolve import linalg
from bezsolve.bezout import build_bezout_set
from bezsolve.companion import (
    BadPrimeError,
    CompanionError,
    CompanionSet,
    barnett_univariate,
    companion_matrices,
    companion_univariate,
    fallback_primes,
    is_prime,
    poly_at_matrices,
    verify_modp,
)
from bezsolve.poly import Poly, PolySystem, parse_poly, parse_system, univariate_divmod
from bezsolve.reduction import reduce

from conftest import random_system, random_univariate

F = Fraction
X1 = ("x1",)


@pytest.fixture
def cs2(sys2):
    return companion_matrices(reduce(build_bezout_set(sys2)))


class TestCompanionUnivariate:
    def test_quadratic(self, sys1):
        assert companion_univariate(sys1.polys[0]) == [[F(0), F(-2)], [F(1), F(3)]]

    def test_linear(self):
        assert companion_univariate(parse_poly("x1-9", X1)) == [[F(9)]]

    def test_scaling_invariance(self, sys1):
        doubled = sys1.polys[0] * 2
        assert companion_univariate(doubled) == companion_univariate(sys1.polys[0])

    def test_constant_rejected(self):
        with pytest.raises(CompanionError):
            companion_univariate(Poly.const(X1, 3))
        with pytest.raises(CompanionError):
            companion_univariate(Poly.zero(X1))

    def test_hessenberg_shape(self):
        rng = random.Random(61)
        for _ in range(10):
            f = random_univariate(rng, 6)
            m = companion_univariate(f)
            d = len(m)
            for i in range(d):
                for j in range(d - 1):
                    expected_zero = j != i - 1
                    if expected_zero:
                        assert m[i][j] == 0


class TestBarnettUnivariate:
    def test_power_two(self, sys1):
        # X^2 = 3X - 2I for this f; trace 5, determinant 4
        assert barnett_univariate(sys1.polys[0], parse_poly("x1^2", X1)) == [
            [F(-2), F(-6)],
            [F(3), F(7)],
        ]

    def test_power_three(self, sys1):
        assert barnett_univariate(sys1.polys[0], parse_poly("x1^3", X1)) == [
            [F(-6), F(-14)],
            [F(7), F(15)],
        ]

    def test_identity(self, sys1):
        assert barnett_univariate(sys1.polys[0], Poly.const(X1, 1)) == linalg.identity(2)

    def test_agrees_with_direct_companion(self):
        rng = random.Random(67)
        for _ in range(15):
            f = random_univariate(rng, 5)
            assert barnett_univariate(f, Poly.variable(X1, 0)) == companion_univariate(f)

    def test_matrix_power_oracle(self):
        rng = random.Random(71)
        for _ in range(10):
            f = random_univariate(rng, 4)
            x = companion_univariate(f)
            expected = linalg.identity(len(x))
            for e in range(1, 2 * _deg(f) + 1):
                expected = linalg.mat_mul(expected, x)
                got = barnett_univariate(f, Poly.monomial(X1, (e,)))
                assert got == expected, (str(f), e)

    def test_depends_only_on_residue(self):
        rng = random.Random(73)
        for _ in range(15):
            f = random_univariate(rng, 4)
            g = random_univariate(rng, 8)
            _, r = univariate_divmod(g, f)
            assert barnett_univariate(f, g) == barnett_univariate(f, r)

    def test_charpoly_recovers_monic_input(self):
        rng = random.Random(79)
        for _ in range(20):
            f = random_univariate(rng, 6, monic=True)
            coeffs = linalg.charpoly(companion_univariate(f))
            assert coeffs == [f.coeff((e,)) for e in range(_deg(f) + 1)]


class TestCompanionMatrices:
    def test_example_pair(self, cs2):
        assert cs2.matrices[0] == [[F(0), F(-1), F(0)], [F(-1), F(0), F(-1)], [F(-1), F(0), F(0)]]
        assert cs2.matrices[1] == [[F(0), F(0), F(1)], [F(1), F(0), F(0)], [F(0), F(1), F(-1)]]
        assert [str(p) for p in cs2.basis] == ["1", "x2", "x2^2"]

    def test_univariate_system(self, sys1):
        cs = companion_matrices(reduce(build_bezout_set(sys1)))
        assert cs.matrices[0] == [[F(0), F(-2)], [F(1), F(3)]]

    def test_dim_one_system(self):
        f = parse_system("x1-3\nx2-7")
        cs = companion_matrices(reduce(build_bezout_set(f)))
        assert cs.matrices[0] == [[F(3)]]
        assert cs.matrices[1] == [[F(7)]]

    def test_dim_zero_rejected(self):
        red = reduce(build_bezout_set(parse_system("x1\nx1*x2+1")))
        with pytest.raises(CompanionError):
            companion_matrices(red)

    def test_commutativity_property(self, cs2):
        a = linalg.mat_mul(cs2.matrices[0], cs2.matrices[1])
        b = linalg.mat_mul(cs2.matrices[1], cs2.matrices[0])
        assert a == b

    def test_commutativity_on_random_systems(self):
        rng = random.Random(83)
        checked = 0
        while checked < 10:
            n = rng.randint(2, 3)
            red = reduce(build_bezout_set(random_system(rng, n)))
            if red.dim == 0:
                continue
            cs = companion_matrices(red)
            for i in range(n):
                for j in range(i + 1, n):
                    assert linalg.mat_mul(cs.matrices[i], cs.matrices[j]) == linalg.mat_mul(
                        cs.matrices[j], cs.matrices[i]
                    )
            checked += 1

    def test_basis_change_variant(self, sys2, cs2):
        # B(1)^{-1} B(j) equals B(1)^{-1} X_j B(1): the same map written in
        # the transformed basis
        red = reduce(build_bezout_set(sys2))
        b0 = red.matrices[0]
        for j in (1, 2):
            lhs = linalg.solve(b0, red.matrices[j])
            rhs = linalg.solve(b0, linalg.mat_mul(cs2.matrices[j - 1], b0))
            assert lhs == rhs


class TestPolyAtMatrices:
    def test_system_members_vanish(self, sys2, cs2):
        for p in sys2.polys:
            assert linalg.is_zero_matrix(poly_at_matrices(p, cs2))

    def test_variables_map_to_matrices(self, cs2):
        assert poly_at_matrices(parse_poly("x1", ("x1", "x2")), cs2) == cs2.matrices[0]
        assert poly_at_matrices(parse_poly("x2", ("x1", "x2")), cs2) == cs2.matrices[1]

    def test_zero_polynomial(self, cs2):
        assert linalg.is_zero_matrix(poly_at_matrices(Poly.zero(("x1", "x2")), cs2))

    def test_dimension_mismatch(self, cs2):
        with pytest.raises(CompanionError):
            poly_at_matrices(Poly.zero(("x1",)), cs2)

    def test_vanishing_on_random_systems(self):
        rng = random.Random(89)
        checked = 0
        while checked < 8:
            n = rng.randint(1, 3)
            f = random_system(rng, n)
            red = reduce(build_bezout_set(f))
            if red.dim == 0 or red.dim > 12:
                continue
            cs = companion_matrices(red)
            for p in f.polys:
                assert linalg.is_zero_matrix(poly_at_matrices(p, cs))
            checked += 1


class TestVerifyModP:
    def test_example_passes(self, sys2, cs2):
        report = verify_modp(sys2, cs2, 2003, seed=0)
        assert report.passed
        assert report.per_poly == (True, True)
        assert report.prime == 2003 and report.seed == 0

    def test_perturbation_fails(self, sys2, cs2):
        bad = [row[:] for row in cs2.matrices[0]]
        bad[0][0] += 1
        tampered = CompanionSet(2, (bad, cs2.matrices[1]), cs2.basis)
        assert not verify_modp(sys2, tampered, 2003, seed=0).passed

    def test_univariate(self, sys1):
        cs = companion_matrices(reduce(build_bezout_set(sys1)))
        assert verify_modp(sys1, cs, 2003, seed=0).passed

    def test_non_prime_rejected(self, sys2, cs2):
        with pytest.raises(ValueError, match="not prime"):
            verify_modp(sys2, cs2, 4, seed=0)

    def test_bad_denominator_raises(self, sys2):
        m = [[F(1, 2003)]]
        cs = CompanionSet(2, (m, m), (Poly.const(("x1", "x2"), 1),))
        with pytest.raises(BadPrimeError):
            verify_modp(sys2, cs, 2003, seed=0)

    def test_seed_changes_vector_not_verdict(self, sys2, cs2):
        for seed in (0, 1, 2, 12345):
            assert verify_modp(sys2, cs2, 2003, seed=seed).passed


def test_is_prime():
    assert is_prime(2) and is_prime(2003) and is_prime(65537) and is_prime(1000003)
    assert not is_prime(1) and not is_prime(4) and not is_prime(2001)


def test_fallback_primes_order():
    assert fallback_primes(2003) == (2003, 4001, 65537, 1000003)
    assert fallback_primes(7)[0] == 7
    assert 2003 in fallback_primes(7)


def _deg(f):
    return max(e[0] for e in f.terms)
