"""Problem specification: damping law, initial data, forcing, kernel choice.

The damping coefficient multiplies the velocity and is a function
G(v) >= g0 > 0 of the instantaneous discrete bending energy
v = ||second_difference(U)||^2.  The analysis behind the scheme needs G
bounded below and Lipschitz with a non-negative derivative; the built-in
kinds satisfy this by construction and declare their constants, custom
callables are only sample-checked.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .grid_ops import Grid, norm, second_difference
from .kernel import ConfigurationError, KernelSpec

#: Default upper end of the sampling range used to spot-check damping bounds.
#: The theory only needs them on the (unknowable a priori) range the solution
#: visits, so this is a pragmatic stand-in.
V_MAX_DEFAULT = 1.0e4

_BOUNDARY_TOL = 1e-12


@dataclass(frozen=True)
class DampingFunction:
    """Damping coefficient G with declared lower bound and Lipschitz constant.

    Use the constructors :meth:`affine`, :meth:`sqrt_affine`,
    :meth:`constant` or :meth:`custom`.  For custom callables the declared
    bounds are verified only by sampling.
    """

    kind: str
    fn: Callable[[float], float] = field(repr=False)
    g0: float
    g1: float
    lipschitz: float

    def __call__(self, v: float) -> float:
        return float(self.fn(v))

    @classmethod
    def affine(cls, a: float, b: float) -> "DampingFunction":
        """G(v) = a + b*v with a > 0, b >= 0."""
        return cls(kind="affine", fn=lambda v: a + b * v, g0=a,
                   g1=a + b * V_MAX_DEFAULT, lipschitz=b)

    @classmethod
    def sqrt_affine(cls, a: float, b: float) -> "DampingFunction":
        """G(v) = sqrt(a + b*v); steepest at v = 0, so L = b / (2*sqrt(a))."""
        g0 = float(np.sqrt(a))
        lip = b / (2.0 * g0) if g0 > 0 else np.inf
        return cls(kind="sqrt_affine", fn=lambda v: float(np.sqrt(a + b * v)),
                   g0=g0, g1=float(np.sqrt(a + b * V_MAX_DEFAULT)), lipschitz=lip)

    @classmethod
    def constant(cls, c: float) -> "DampingFunction":
        return cls(kind="constant", fn=lambda v: c, g0=c, g1=c, lipschitz=0.0)

    @classmethod
    def custom(cls, fn: Callable[[float], float], g0: float, g1: float,
               lipschitz: float) -> "DampingFunction":
        """Wrap an arbitrary callable; bounds are the caller's claim."""
        return cls(kind="custom", fn=fn, g0=g0, g1=g1, lipschitz=lipschitz)


@dataclass(frozen=True)
class ProblemSpec:
    """Initial data, forcing, damping law, kernel and horizon of one problem.

    ``u0``/``u1`` map node positions to initial displacement/velocity,
    ``forcing`` maps (x, t) to the load.  Both initial fields must vanish at
    the ends to be compatible with the hinged boundary.  Immutable once
    validated; safe to share across concurrent runs.
    """

    u0: Callable[[np.ndarray], np.ndarray]
    u1: Callable[[np.ndarray], np.ndarray]
    forcing: Callable[[np.ndarray, float], np.ndarray]
    damping: DampingFunction
    kernel: KernelSpec
    T: float = 1.0


def damping_coefficient(damping: DampingFunction, U, grid: Grid) -> float:
    """G evaluated at the squared norm of the second difference of U."""
    return damping(norm(second_difference(U, grid), grid) ** 2)


def _sample_values(v_max: float) -> np.ndarray:
    return np.concatenate([[0.0], np.geomspace(1e-6, v_max, 25)])


def validate(spec: ProblemSpec, v_max: float = V_MAX_DEFAULT) -> list[str]:
    """Collect violated model assumptions; an empty list means valid.

    Checks kernel parameter ranges, the damping lower bound and Lipschitz
    property on sampled arguments, and hinged-boundary compatibility of the
    initial data.
    """
    errs = list(spec.kernel.violations())

    d = spec.damping
    if not d.g0 > 0.0:
        errs.append(f"damping lower bound g0 must be positive (got {d.g0}); "
                    "the velocity term must stay dissipative")
    if d.g1 < d.g0:
        errs.append(f"declared damping bounds are inconsistent: g1={d.g1} < g0={d.g0}")
    if d.lipschitz < 0.0:
        errs.append(f"Lipschitz constant must be non-negative (got {d.lipschitz})")
    else:
        vs = _sample_values(v_max)
        try:
            gv = np.array([d(v) for v in vs])
        except Exception as exc:  # pragma: no cover - custom callables only
            errs.append(f"damping function raised on sampled input: {exc!r}")
        else:
            if d.g0 > 0.0 and np.min(gv) < d.g0 - 1e-12:
                errs.append(
                    f"damping drops to {np.min(gv):.6g} below its declared "
                    f"lower bound g0={d.g0} on sampled arguments")
            dv = np.abs(np.diff(gv))
            dx = np.diff(vs)
            bad = dv > d.lipschitz * dx + 1e-12
            if np.any(bad):
                errs.append(
                    "damping violates its declared Lipschitz constant "
                    f"L={d.lipschitz} on sampled argument pairs")

    if not spec.T > 0.0:
        errs.append(f"time horizon T must be positive (got {spec.T})")

    for name, f in (("u0", spec.u0), ("u1", spec.u1)):
        try:
            ends = np.abs(np.asarray(f(np.array([0.0, 1.0])), dtype=float))
        except Exception as exc:
            errs.append(f"initial data {name} raised on the boundary: {exc!r}")
            continue
        if np.any(ends > _BOUNDARY_TOL):
            errs.append(
                f"initial data {name} must vanish at x=0 and x=1 for the "
                f"hinged boundary (got end values {ends.tolist()})")
    return errs


def require_valid(spec: ProblemSpec, v_max: float = V_MAX_DEFAULT) -> ProblemSpec:
    """Return the problem unchanged or raise with every violation listed."""
    errs = validate(spec, v_max=v_max)
    if errs:
        raise ConfigurationError("; ".join(errs))
    return spec
