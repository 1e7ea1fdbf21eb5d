"""Discrete energy functional and a long-time stability tripwire.

The monitored quantity mirrors the left-hand side of the scheme's energy
estimate: kinetic part of the newest level, the running damping
dissipation, and the weighted bending energy.  For well-posed data it must
stay below a data-dependent functional times a generous safety factor; the
sharp theoretical constant is not computable, so the monitor is a
regression tripwire rather than a proof checker.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .grid_ops import Grid, norm, second_difference
from .model import ProblemSpec
from .stepper import SolverState


@dataclass(frozen=True)
class EnergyRecord:
    """Energy components after level n: all non-negative, dissipated
    non-decreasing in n."""

    n: int
    kinetic: float
    dissipated: float
    elastic: float

    @property
    def total(self) -> float:
        return self.kinetic + self.dissipated + self.elastic


def energy(state: SolverState, running_dissipation: float,
           g0: float, mu0: float) -> EnergyRecord:
    """Energy record of the newest computed level of ``state``.

    ``running_dissipation`` is the caller-accumulated sum
    g0 * dt * sum_m ||dU^m||^2; the kinetic part is ||dU^n||^2 / 2 and the
    elastic part (mu0/4) ||D2 U^n||^2.
    """
    if state.n < 2:
        raise ValueError("energy needs at least the explicit start level")
    vel = state._history[state.n - 2]
    kinetic = 0.5 * norm(vel, state.grid) ** 2
    elastic = 0.25 * mu0 * norm(second_difference(state.U_prev, state.grid),
                                state.grid) ** 2
    return EnergyRecord(n=state.n - 1, kinetic=kinetic,
                        dissipated=running_dissipation, elastic=elastic)


def forcing_l1_norm(problem: ProblemSpec, grid: Grid, dt: float,
                    n_steps: int) -> float:
    """Composite-trapezoid integral of ||f(., t)|| over the run's time grid."""
    norms = np.array([norm(np.asarray(problem.forcing(grid.x, k * dt), dtype=float),
                           grid)
                      for k in range(n_steps + 1)])
    return float(dt * (0.5 * norms[0] + norms[1:-1].sum() + 0.5 * norms[-1]))


def data_functional(problem: ProblemSpec, grid: Grid, dt: float, n_steps: int,
                    C0: float, mu0: float) -> float:
    """Data-dependent bound shape the energy is measured against.

    ||u1||^2 + (1 + 2 C0 + 2 C0^2/mu0) ||D2 u0||^2 + dt^2 ||D2 u1||^2
    + (L1 norm of the forcing)^2, all on the solver's grid.
    """
    x = grid.x
    u0s = np.asarray(problem.u0(x), dtype=float)
    u1s = np.asarray(problem.u1(x), dtype=float)
    f1 = forcing_l1_norm(problem, grid, dt, n_steps)
    return (norm(u1s, grid) ** 2
            + (1.0 + 2.0 * C0 + 2.0 * C0**2 / mu0)
            * norm(second_difference(u0s, grid), grid) ** 2
            + dt**2 * norm(second_difference(u1s, grid), grid) ** 2
            + f1**2)


@dataclass(frozen=True)
class StabilityVerdict:
    passed: bool
    max_total: float
    bound: float
    first_violation: int | None = None

    def __str__(self) -> str:
        if self.passed:
            return (f"PASS: max energy {self.max_total:.6e} within bound "
                    f"{self.bound:.6e}")
        return (f"FAIL: energy {self.max_total:.6e} exceeds bound "
                f"{self.bound:.6e} first at step {self.first_violation}")


def stability_monitor(records: Sequence[EnergyRecord], data_functional: float,
                      safety: float = 1e3) -> StabilityVerdict:
    """PASS iff the total energy never exceeds safety * data_functional.

    Reports the first violating step otherwise.  ``safety`` stands in for
    the uncomputable constant of the underlying estimate; the default 1e3
    is deliberately loose so that only genuine blow-ups trip it.
    """
    if safety < 1.0:
        raise ValueError("safety factor must be at least 1")
    bound = safety * data_functional
    max_total = 0.0
    first = None
    for rec in records:
        if rec.total > max_total:
            max_total = rec.total
        if first is None and rec.total > bound:
            first = rec.n
    return StabilityVerdict(passed=first is None, max_total=max_total,
                            bound=bound, first_violation=first)
