"""Fully discrete time stepper: implicit two-level scheme with memory.

Each step n >= 2 solves the nonlinear system

    (U^n - 2U^{n-1} + U^{n-2})/dt^2  +  G(||D2 U^n||^2) (U^n - U^{n-1})/dt
      + mu0 * D4 U^n  +  sum_{p=1..n} w[n-p] * D4 dU^p
      =  f^n - K(t_n) * D4 U^0,

where D2/D4 are the hinged difference operators, dU^p the stored velocity
differences (U^p - U^{p-1})/dt and w the product-integration weights of the
kernel tail.  Only the scalar damping coefficient is nonlinear, so the
step is solved by fixed-point iteration: freeze G at the current iterate,
solve the resulting symmetric positive definite pentadiagonal system, and
repeat until the iterate stops moving.  The p = n weight splits off the
unknown, shifting the system matrix by w[0]/dt * D4.

History is kept as raw velocity vectors; the weighted sum is accumulated
first and D4 applied once, so each step costs one O(n * J) convolution and
O(J) per inner iteration.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field

import numpy as np

from .grid_ops import BandedMatrix, Grid, assemble_biharmonic, norm, second_difference
from .kernel import KernelTables
from .model import ProblemSpec, damping_coefficient, require_valid


class NonConvergenceError(RuntimeError):
    """Fixed-point iteration exhausted its budget at some step."""

    def __init__(self, step_index: int, last_increment: float, max_iters: int):
        super().__init__(
            f"fixed-point iteration did not converge at step {step_index}: "
            f"increment {last_increment:.3e} after {max_iters} iterations")
        self.step_index = step_index
        self.last_increment = last_increment
        self.max_iters = max_iters


@dataclass(frozen=True)
class SolverConfig:
    """Knobs of the per-step fixed-point solve and of run recording."""

    fp_tol: float = 1e-12
    fp_max_iters: int = 50
    record_energy: bool = False
    snapshot_every: int = 0

    def __post_init__(self):
        if not self.fp_tol > 0.0:
            raise ValueError("fp_tol must be positive")
        if self.fp_max_iters < 1:
            raise ValueError("fp_max_iters must be at least 1")


@dataclass
class SolverState:
    """Mutable state of one simulation between steps.

    ``n`` is the index of the next level to solve; ``U_prev``/``U_prev2``
    hold the two newest levels.  The velocity history lives in a
    preallocated buffer, row p-1 storing dU^p.  Confine a state to one
    thread; the shared tables and operators are read-only.
    """

    problem: ProblemSpec
    grid: Grid
    dt: float
    n_steps: int
    n: int
    U0: np.ndarray
    U_prev: np.ndarray
    U_prev2: np.ndarray
    tables: KernelTables
    D4: BandedMatrix
    _history: np.ndarray = field(repr=False)
    _D4U0: np.ndarray = field(repr=False)
    _rhs_base: tuple[int, np.ndarray] | None = field(default=None, repr=False)

    @property
    def velocity_history(self) -> np.ndarray:
        """Rows dU^1..dU^{n-1} (read-only view)."""
        return self._history[: self.n - 1]

    @property
    def t_prev(self) -> float:
        """Time of the newest computed level."""
        return (self.n - 1) * self.dt


@dataclass
class StepInfo:
    """Per-step diagnostics recorded by :func:`run`."""

    n: int
    t: float
    vel_norm: float
    curv_norm: float
    damping: float
    fp_iters: int


@dataclass
class TimeSeries:
    """Per-step diagnostic records of one run, with optional energy columns.

    Serializable to CSV; identical runs produce identical series.
    """

    n: np.ndarray
    t: np.ndarray
    vel_norm: np.ndarray
    curv_norm: np.ndarray
    damping: np.ndarray
    fp_iters: np.ndarray
    kinetic: np.ndarray | None = None
    dissipated: np.ndarray | None = None
    elastic: np.ndarray | None = None
    total: np.ndarray | None = None
    snapshots: dict[int, np.ndarray] = field(default_factory=dict)

    @property
    def has_energy(self) -> bool:
        return self.total is not None

    def to_csv(self, path) -> None:
        cols = ["n", "t", "vel_norm", "curv_norm", "damping", "fp_iters"]
        if self.has_energy:
            cols += ["kinetic", "dissipated", "elastic", "total"]
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(cols)
            for i in range(len(self.n)):
                row = [int(self.n[i]), repr(float(self.t[i])),
                       repr(float(self.vel_norm[i])), repr(float(self.curv_norm[i])),
                       repr(float(self.damping[i])), int(self.fp_iters[i])]
                if self.has_energy:
                    row += [repr(float(c[i])) for c in
                            (self.kinetic, self.dissipated, self.elastic, self.total)]
                writer.writerow(row)


def write_solution_csv(path, grid: Grid, U: np.ndarray) -> None:
    """Write the solution on all nodes (boundary zeros included) as x,u rows."""
    xs = np.concatenate([[0.0], grid.x, [1.0]])
    us = np.concatenate([[0.0], np.asarray(U, dtype=float), [0.0]])
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["x", "u"])
        for x, u in zip(xs, us):
            writer.writerow([repr(float(x)), repr(float(u))])


def initialize(problem: ProblemSpec, grid: Grid, dt: float) -> SolverState:
    """Set up levels 0 and 1 and precompute kernel tables and operators.

    The first level is the explicit start U^1 = U^0 + dt * u1, which pins
    the discrete initial velocity dU^1 to the samples of u1 exactly.
    """
    require_valid(problem)
    if dt <= 0.0:
        raise ValueError("dt must be positive")
    n_steps = int(round(problem.T / dt))
    if n_steps < 1 or abs(n_steps * dt - problem.T) > 1e-9 * max(1.0, problem.T):
        raise ValueError(f"dt={dt} does not divide the horizon T={problem.T}")
    x = grid.x
    U0 = np.asarray(problem.u0(x), dtype=float)
    u1_samples = np.asarray(problem.u1(x), dtype=float)
    U1 = U0 + dt * u1_samples
    tables = KernelTables.build(problem.kernel, dt, n_steps)
    D4 = assemble_biharmonic(grid)
    history = np.zeros((n_steps, grid.n_interior))
    history[0] = (U1 - U0) / dt
    return SolverState(problem=problem, grid=grid, dt=dt, n_steps=n_steps,
                       n=2, U0=U0, U_prev=U1, U_prev2=U0, tables=tables,
                       D4=D4, _history=history, _D4U0=D4.apply(U0))


def assemble_step_system(state: SolverState, G_val: float) -> tuple[BandedMatrix, np.ndarray]:
    """Linear system (A, b) for level n with the damping coefficient frozen.

    A = (1/dt^2 + G/dt) I + (mu0 + w0/dt) D4 is symmetric positive
    definite.  The G-independent part of b (forcing, initial-load source,
    inertia terms and the history convolution) is cached per step so inner
    iterations only refresh the damping contribution.
    """
    n, dt = state.n, state.dt
    w = state.tables.weights
    D4 = state.D4
    if state._rhs_base is None or state._rhs_base[0] != n:
        f_n = np.asarray(state.problem.forcing(state.grid.x, n * dt), dtype=float)
        mem = w[n - 1:0:-1] @ state._history[: n - 1]
        base = (f_n - state.tables.tail[n] * state._D4U0
                + (2.0 * state.U_prev - state.U_prev2) / dt**2
                + (w[0] / dt) * D4.apply(state.U_prev)
                - D4.apply(mem))
        state._rhs_base = (n, base)
    A = D4.scaled_plus_identity(state.tables.mu0 + w[0] / dt,
                                1.0 / dt**2 + G_val / dt)
    b = state._rhs_base[1] + (G_val / dt) * state.U_prev
    return A, b


def step(state: SolverState, config: SolverConfig) -> StepInfo:
    """Advance the state by one level via fixed-point iteration.

    Starts from the linear extrapolation of the last two levels, lags the
    damping coefficient one iterate behind, and stops when the iterate
    moves by at most ``fp_tol`` in the discrete L2 norm.
    """
    if state.n > state.n_steps:
        raise ValueError(f"run is complete (n={state.n} > N={state.n_steps})")
    grid = state.grid
    damping = state.problem.damping
    U_k = 2.0 * state.U_prev - state.U_prev2
    G_val = 0.0
    increment = np.inf
    for it in range(1, config.fp_max_iters + 1):
        G_val = damping_coefficient(damping, U_k, grid)
        A, b = assemble_step_system(state, G_val)
        U_next = A.solve(b)
        increment = norm(U_next - U_k, grid)
        U_k = U_next
        if increment <= config.fp_tol:
            break
    else:
        raise NonConvergenceError(state.n, increment, config.fp_max_iters)

    n = state.n
    state._history[n - 1] = (U_k - state.U_prev) / state.dt
    state.U_prev2 = state.U_prev
    state.U_prev = U_k
    state.n = n + 1
    state._rhs_base = None
    return StepInfo(n=n, t=n * state.dt,
                    vel_norm=norm(state._history[n - 1], grid),
                    curv_norm=norm(second_difference(U_k, grid), grid),
                    damping=G_val, fp_iters=it)


def run(problem: ProblemSpec, grid: Grid, N: int,
        config: SolverConfig | None = None) -> tuple[SolverState, TimeSeries]:
    """Initialize and solve levels 2..N; return final state and diagnostics.

    With N = 1 only the explicit start is performed.  Failures propagate
    with the failing step index attached.
    """
    from .diagnostics import energy  # local import to avoid a cycle

    config = config or SolverConfig()
    if N < 1:
        raise ValueError("N must be at least 1")
    state = initialize(problem, grid, problem.T / N)
    g0 = problem.damping.g0
    mu0 = state.tables.mu0

    infos = [StepInfo(n=1, t=state.dt,
                      vel_norm=norm(state._history[0], grid),
                      curv_norm=norm(second_difference(state.U_prev, grid), grid),
                      damping=damping_coefficient(problem.damping, state.U_prev, grid),
                      fp_iters=0)]
    snapshots: dict[int, np.ndarray] = {}
    if config.snapshot_every:
        snapshots[0] = state.U0.copy()
        snapshots[1] = state.U_prev.copy()
    records = []
    dissipated = 0.0
    if config.record_energy:
        records.append(energy(state, dissipated, g0, mu0))
    while state.n <= N:
        info = step(state, config)
        infos.append(info)
        if config.record_energy:
            dissipated += g0 * state.dt * info.vel_norm**2
            records.append(energy(state, dissipated, g0, mu0))
        if config.snapshot_every and (info.n % config.snapshot_every == 0
                                      or info.n == N):
            snapshots[info.n] = state.U_prev.copy()

    series = TimeSeries(
        n=np.array([i.n for i in infos]),
        t=np.array([i.t for i in infos]),
        vel_norm=np.array([i.vel_norm for i in infos]),
        curv_norm=np.array([i.curv_norm for i in infos]),
        damping=np.array([i.damping for i in infos]),
        fp_iters=np.array([i.fp_iters for i in infos]),
        snapshots=snapshots,
    )
    if config.record_energy:
        series.kinetic = np.array([r.kinetic for r in records])
        series.dissipated = np.array([r.dissipated for r in records])
        series.elastic = np.array([r.elastic for r in records])
        series.total = np.array([r.total for r in records])
    return state, series
