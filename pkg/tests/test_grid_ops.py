import numpy as np
import pytest

from viscobeam import (
    Grid,
    assemble_biharmonic,
    fourth_difference,
    inner,
    max_norm,
    norm,
    second_difference,
)


def sine_mode(grid, k=1):
    return np.sin(k * np.pi * grid.x)


def d2_eigenvalue(grid, k=1):
    return -4.0 * np.sin(k * np.pi * grid.h / 2.0) ** 2 / grid.h**2


class TestGrid:
    def test_basic_fields(self):
        g = Grid(8)
        assert g.h == 0.125
        assert g.n_interior == 7
        assert np.allclose(g.x, np.arange(1, 8) / 8.0)

    def test_rejects_small_grids(self):
        with pytest.raises(ValueError):
            Grid(3)


class TestSecondDifference:
    def test_zero(self):
        g = Grid(8)
        assert np.all(second_difference(np.zeros(7), g) == 0.0)

    def test_unit_vector_stencil(self):
        g = Grid(4)
        e2 = np.array([0.0, 1.0, 0.0])
        expected = np.array([1.0, -2.0, 1.0]) / g.h**2
        assert np.array_equal(second_difference(e2, g), expected)

    def test_sine_eigenvector(self):
        g = Grid(32)
        w = sine_mode(g)
        got = second_difference(w, g)
        assert np.allclose(got, d2_eigenvalue(g) * w, rtol=1e-12, atol=1e-12)

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            second_difference(np.zeros(5), Grid(8))


class TestFourthDifference:
    def test_boundary_row_closure(self):
        # Odd ghost extension turns the first stencil row into (5, -4, 1).
        g = Grid(8)
        e1 = np.zeros(7)
        e1[0] = 1.0
        got = fourth_difference(e1, g) * g.h**4
        assert np.array_equal(got[:4], np.array([5.0, -4.0, 1.0, 0.0]))

    def test_sine_eigenvector(self):
        g = Grid(16)
        w = sine_mode(g)
        lam = d2_eigenvalue(g) ** 2
        assert np.allclose(fourth_difference(w, g), lam * w, rtol=1e-12)

    def test_equals_second_difference_squared(self, rng):
        g = Grid(24)
        for _ in range(20):
            w = rng.standard_normal(g.n_interior)
            direct = fourth_difference(w, g)
            composed = second_difference(second_difference(w, g), g)
            assert np.allclose(direct, composed, rtol=1e-13, atol=1e-13 * g.h**-4)

    def test_mirror_symmetry_commutes(self, rng):
        g = Grid(16)
        half = rng.standard_normal(8)
        w = np.concatenate([half[:-1], half[::-1]])  # symmetric about x = 1/2
        assert np.array_equal(w, w[::-1])
        d4 = fourth_difference(w, g)
        assert np.array_equal(d4, d4[::-1])


class TestNorms:
    def test_inner_ones(self):
        g = Grid(4)
        ones = np.ones(3)
        assert inner(ones, ones, g) == pytest.approx(0.75, abs=1e-15)

    def test_norm_zero(self):
        assert norm(np.zeros(7), Grid(8)) == 0.0

    def test_max_norm(self):
        assert max_norm(np.array([-3.0, 2.0])) == 3.0

    def test_cauchy_schwarz(self, rng):
        g = Grid(32)
        for _ in range(100):
            v = rng.standard_normal(g.n_interior)
            w = rng.standard_normal(g.n_interior)
            assert abs(inner(v, w, g)) <= norm(v, g) * norm(w, g) + 1e-14


class TestBiharmonicMatrix:
    def test_j4_dense_matrix(self):
        g = Grid(4)
        dense = assemble_biharmonic(g).dense() * g.h**4
        expected = np.array([[5.0, -4.0, 1.0],
                             [-4.0, 6.0, -4.0],
                             [1.0, -4.0, 5.0]])
        assert np.array_equal(dense, expected)

    def test_symmetry_exact(self):
        dense = assemble_biharmonic(Grid(16)).dense()
        assert np.array_equal(dense, dense.T)

    @pytest.mark.parametrize("J", [4, 8, 16])
    def test_positive_definite_dense_oracle(self, J):
        dense = assemble_biharmonic(Grid(J)).dense()
        assert np.linalg.eigvalsh(dense).min() > 0.0

    def test_apply_matches_fourth_difference(self, rng):
        g = Grid(20)
        D4 = assemble_biharmonic(g)
        for _ in range(10):
            w = rng.standard_normal(g.n_interior)
            assert np.allclose(D4.apply(w), fourth_difference(w, g),
                               rtol=1e-13, atol=1e-13 * g.h**-4)

    def test_solve_roundtrip(self, rng):
        g = Grid(12)
        A = assemble_biharmonic(g).scaled_plus_identity(1.0, 10.0)
        x = rng.standard_normal(g.n_interior)
        got = A.solve(A.apply(x))
        assert np.allclose(got, x, rtol=1e-10)


class TestSummationByParts:
    def test_identity_random_vectors(self, rng):
        # <W, D4 W> = ||D2 W||^2 under the hinged ghost closure.
        g = Grid(16)
        for _ in range(100):
            w = rng.standard_normal(g.n_interior)
            lhs = inner(w, fourth_difference(w, g), g)
            rhs = norm(second_difference(w, g), g) ** 2
            tol = 1e-12 * (1.0 + norm(w, g) ** 2 * g.h**-4)
            assert abs(lhs - rhs) <= tol


class TestConsistency:
    def test_fourth_difference_second_order(self):
        # For u = sin(pi x) the truncation error scales like h^2: halving h
        # shrinks it by 4 within 10%.
        errs = []
        for J in (16, 32):
            g = Grid(J)
            u = sine_mode(g)
            errs.append(max_norm(fourth_difference(u, g) - np.pi**4 * u))
        ratio = errs[0] / errs[1]
        assert abs(ratio - 4.0) <= 0.4
