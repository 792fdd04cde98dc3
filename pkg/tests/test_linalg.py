import random
from fractions import Fraction

import pytest

from bezsolve import linalg
from bezsolve.linalg import SingularMatrixError

F = Fraction


def _mat(rows):
    return [[F(x) for x in row] for row in rows]


class TestRightKernel:
    def test_identity_has_empty_kernel(self):
        assert linalg.right_kernel(linalg.identity(4)) == []

    def test_zero_matrix_full_kernel(self):
        basis = linalg.right_kernel(linalg.zeros(2, 3))
        assert len(basis) == 3
        assert basis == [
            [F(1), F(0), F(0)],
            [F(0), F(1), F(0)],
            [F(0), F(0), F(1)],
        ]

    def test_example_bezout_b0_kernel_contains_e1(self):
        # 6x6 B(1) of the bivariate worked example; its first column is zero
        b0 = _mat([
            [0, 0, -1, 0, 0, 1],
            [0, -1, 0, 0, -1, 0],
            [0, 0, 0, 0, 0, 0],
            [0, 0, 0, 1, 0, 0],
            [0, 0, -1, 0, 0, 0],
            [0, -1, 0, 0, 0, 0],
        ])
        basis = linalg.right_kernel(b0)
        e1 = [F(1)] + [F(0)] * 5
        assert e1 in basis

    def test_kernel_vectors_annihilate(self):
        rng = random.Random(23)
        for _ in range(25):
            rows, cols = rng.randint(1, 5), rng.randint(1, 5)
            m = [[F(rng.randint(-4, 4)) for _ in range(cols)] for _ in range(rows)]
            for w in linalg.right_kernel(m):
                assert all(x == 0 for x in linalg.mat_vec(m, w))

    def test_rank_nullity(self):
        rng = random.Random(29)
        for _ in range(25):
            rows, cols = rng.randint(1, 5), rng.randint(1, 5)
            m = [[F(rng.randint(-3, 3)) for _ in range(cols)] for _ in range(rows)]
            kernel = linalg.right_kernel(m)
            ech, pivots, _ = linalg._bareiss_echelon(
                [[int(x) for x in row] for row in m]
            )
            assert len(kernel) == cols - len(pivots)

    def test_normalization(self):
        basis = linalg.right_kernel(_mat([[2, 4]]))
        assert basis == [[F(2), F(-1)]]


class TestDetSolve:
    def test_det_known(self):
        assert linalg.det(_mat([[0, 0, 1], [-1, -1, 0], [-1, 0, 0]])) == -1

    def test_det_singular(self):
        assert linalg.det(_mat([[1, 2], [2, 4]])) == 0

    def test_det_rational(self):
        m = [[F(1, 2), F(1, 3)], [F(1, 5), F(1, 7)]]
        assert linalg.det(m) == F(1, 2) * F(1, 7) - F(1, 3) * F(1, 5)

    def test_det_matches_cofactor_oracle(self):
        rng = random.Random(31)
        for _ in range(20):
            n = rng.randint(1, 4)
            m = [[F(rng.randint(-5, 5)) for _ in range(n)] for _ in range(n)]
            assert linalg.det(m) == _cofactor_det(m)

    def test_solve_right_reproduces(self):
        rng = random.Random(37)
        solved = 0
        while solved < 15:
            n = rng.randint(1, 4)
            a = [[F(rng.randint(-5, 5)) for _ in range(n)] for _ in range(n)]
            if linalg.det(a) == 0:
                continue
            x = [[F(rng.randint(-5, 5)) for _ in range(n)] for _ in range(n)]
            b = linalg.mat_mul(x, a)
            assert linalg.solve_right(a, b) == x
            solved += 1

    def test_solve_singular_raises(self):
        with pytest.raises(SingularMatrixError):
            linalg.solve(_mat([[1, 2], [2, 4]]), _mat([[1], [1]]))


class TestCharpoly:
    def test_companion_2x2(self):
        # matrix with eigenvalues 1 and 2
        assert linalg.charpoly(_mat([[0, -2], [1, 3]])) == [F(2), F(-3), F(1)]

    def test_diagonal(self):
        assert linalg.charpoly(_mat([[5]])) == [F(-5), F(1)]

    def test_matches_det_oracle(self):
        rng = random.Random(41)
        for _ in range(12):
            n = rng.randint(1, 4)
            a = [[F(rng.randint(-3, 3)) for _ in range(n)] for _ in range(n)]
            coeffs = linalg.charpoly(a)
            # det(tI - a) evaluated at a few integers
            for t in (-2, -1, 0, 1, 2, 3):
                ti = [[F(t) * (i == j) - a[i][j] for j in range(n)] for i in range(n)]
                value = sum(c * F(t) ** i for i, c in enumerate(coeffs))
                assert value == linalg.det(ti)


def _cofactor_det(m):
    n = len(m)
    if n == 1:
        return m[0][0]
    total = F(0)
    for j in range(n):
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        term = m[0][j] * _cofactor_det(minor)
        total += term if j % 2 == 0 else -term
    return total


def test_normalize_primitive():
    assert linalg.normalize_primitive([F(-2), F(3), F(-1)]) == [F(2), F(-3), F(1)]
    assert linalg.normalize_primitive([F(0), F(1, 2), F(1, 3)]) == [F(0), F(3), F(2)]
    assert linalg.normalize_primitive([F(0), F(0)]) == [F(0), F(0)]
