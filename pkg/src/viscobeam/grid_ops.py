"""Uniform spatial grid, difference operators and discrete norms.

Interior vectors hold values at the nodes x_1..x_{J-1} of the unit
interval.  The hinged end conditions close the stencils algebraically:
W_0 = W_J = 0 and the odd ghost extension W_{-1} = -W_1,
W_{J+1} = -W_{J-1}.  Under that closure the 5-point fourth difference is
exactly the square of the Dirichlet second difference, which is what makes
the discrete energy argument (summation by parts) work.  Ghost values are
never materialized.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import solveh_banded


@dataclass(frozen=True)
class Grid:
    """Uniform grid with J subintervals on [0, 1]; h = 1/J."""

    J: int

    def __post_init__(self):
        if self.J < 4:
            raise ValueError(
                f"need J >= 4 so the biharmonic stencil has an unclipped row "
                f"(got J={self.J})")

    @property
    def h(self) -> float:
        return 1.0 / self.J

    @property
    def x(self) -> np.ndarray:
        """Interior nodes x_j = j*h, j = 1..J-1."""
        return self.h * np.arange(1, self.J)

    @property
    def n_interior(self) -> int:
        return self.J - 1


def _check_length(W: np.ndarray, grid: Grid) -> np.ndarray:
    W = np.asarray(W, dtype=float)
    if W.shape != (grid.n_interior,):
        raise ValueError(
            f"interior vector has shape {W.shape}, expected ({grid.n_interior},)")
    return W


def second_difference(W, grid: Grid) -> np.ndarray:
    """Second difference quotient with zero boundary values.

    Neighbours are summed before the centre term is subtracted, which makes
    the operator commute with the mirror j -> J-j exactly in floating point.
    """
    W = _check_length(W, grid)
    padded = np.zeros(grid.n_interior + 2)
    padded[1:-1] = W
    return ((padded[2:] + padded[:-2]) - 2.0 * W) / grid.h**2


def fourth_difference(W, grid: Grid) -> np.ndarray:
    """Fourth difference quotient with the odd ghost extension.

    Equals second_difference applied twice; mirror-equivariant exactly (see
    second_difference).
    """
    W = _check_length(W, grid)
    m = grid.n_interior
    padded = np.zeros(m + 4)
    padded[2:-2] = W
    padded[0] = -W[0]
    padded[-1] = -W[-1]
    return ((padded[4:] + padded[:-4])
            - 4.0 * (padded[3:-1] + padded[1:-3])
            + 6.0 * padded[2:-2]) / grid.h**4


def inner(V, W, grid: Grid) -> float:
    """Discrete L2 inner product h * sum_j V_j W_j."""
    V = _check_length(V, grid)
    W = _check_length(W, grid)
    return float(grid.h * np.dot(V, W))


def norm(W, grid: Grid) -> float:
    """Discrete L2 norm."""
    W = _check_length(W, grid)
    return float(np.sqrt(grid.h) * np.linalg.norm(W))


def max_norm(W) -> float:
    W = np.asarray(W, dtype=float)
    return float(np.max(np.abs(W))) if W.size else 0.0


class BandedMatrix:
    """Symmetric pentadiagonal matrix in upper banded storage.

    Row layout follows LAPACK upper-band convention: ``ab[0]`` is the
    second superdiagonal (padded left), ``ab[1]`` the first, ``ab[2]`` the
    main diagonal.  Solves use a banded Cholesky factorization, so the
    matrix must be positive definite.
    """

    def __init__(self, ab: np.ndarray):
        ab = np.asarray(ab, dtype=float)
        if ab.ndim != 2 or ab.shape[0] != 3:
            raise ValueError("expected banded storage of shape (3, m)")
        self.ab = ab

    @property
    def size(self) -> int:
        return self.ab.shape[1]

    def apply(self, x: np.ndarray) -> np.ndarray:
        """Matrix-vector product."""
        x = np.asarray(x, dtype=float)
        sup2, sup1, diag = self.ab
        y = diag * x
        y[:-1] += sup1[1:] * x[1:]
        y[1:] += sup1[1:] * x[:-1]
        y[:-2] += sup2[2:] * x[2:]
        y[2:] += sup2[2:] * x[:-2]
        return y

    def solve(self, rhs: np.ndarray) -> np.ndarray:
        """Solve self @ x = rhs via banded Cholesky."""
        return solveh_banded(self.ab, rhs)

    def scaled_plus_identity(self, scale: float, shift: float) -> "BandedMatrix":
        """Return scale * self + shift * I."""
        ab = scale * self.ab
        ab[2] += shift
        return BandedMatrix(ab)

    def dense(self) -> np.ndarray:
        """Dense copy (test oracles only)."""
        m = self.size
        out = np.zeros((m, m))
        sup2, sup1, diag = self.ab
        out[np.arange(m), np.arange(m)] = diag
        idx = np.arange(m - 1)
        out[idx, idx + 1] = sup1[1:]
        out[idx + 1, idx] = sup1[1:]
        idx = np.arange(m - 2)
        out[idx, idx + 2] = sup2[2:]
        out[idx + 2, idx] = sup2[2:]
        return out


def assemble_biharmonic(grid: Grid) -> BandedMatrix:
    """Banded matrix of the fourth difference under the hinged closure.

    Pentadiagonal (1, -4, 6, -4, 1)/h^4 with the first and last diagonal
    entries reduced to 5/h^4 by the odd ghost extension; symmetric positive
    definite.
    """
    m = grid.n_interior
    ab = np.zeros((3, m))
    ab[0, 2:] = 1.0
    ab[1, 1:] = -4.0
    ab[2, :] = 6.0
    ab[2, 0] = ab[2, -1] = 5.0
    return BandedMatrix(ab / grid.h**4)
