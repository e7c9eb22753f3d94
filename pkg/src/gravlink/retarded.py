"""Retarded fields of point sources.

The solver answers one question: what does a field point (x, t) see of a
source that moves?  The answer is always "the source as it was at the
retarded time t_r = t - |x - x_src(t_r)| / c", and for point sources the
field integrals collapse to closed Liénard-Wiechert forms carrying the
beaming factor kappa = 1 - n.beta.

The retarded-time equation is solved by sign-based bisection rather than a
Newton polish.  Bisection probes only the sign of
F(s) = s + |x - x_src(s)|/c - t, which for any subluminal worldline is the
sign of s - t_r; two worldlines that agree up to t_r therefore drive the
iteration through bitwise-identical steps, which is what makes the causality
guarantee ("the future does not change the field") checkable as exact
equality rather than a tolerance.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from gravlink.errors import ConvergenceError, DomainError, SingularityError
from gravlink.tensors import MINKOWSKI_METRIC, PhysicalConstants, Rank2Tensor, Variance

_BISECTION_BUDGET = 128
_BRACKET_BUDGET = 64


class WorldlineKind(enum.Enum):
    STATIC = "static"
    SAMPLED = "sampled"


def _as_position(x) -> np.ndarray:
    arr = np.array(x, dtype=float).reshape(3)
    if not np.all(np.isfinite(arr)):
        raise DomainError("positions must be finite 3-vectors")
    return arr


@dataclass(frozen=True)
class StaticWorldline:
    """A source pinned at one spatial point for all coordinate time."""

    point: np.ndarray

    def __post_init__(self):
        pt = _as_position(self.point)
        pt.setflags(write=False)
        object.__setattr__(self, "point", pt)

    kind = WorldlineKind.STATIC
    domain = (-np.inf, np.inf)

    def position(self, t: float) -> np.ndarray:
        return self.point

    def velocity(self, t: float) -> np.ndarray:
        return np.zeros(3)


@dataclass(frozen=True)
class SampledWorldline:
    """Piecewise-linear worldline through time-ordered samples.

    Construction rejects any segment faster than ``c``; outside the sampled
    interval the worldline is undefined and evaluation is a domain error.
    """

    times: np.ndarray
    positions: np.ndarray
    c: float = 1.0

    kind = WorldlineKind.SAMPLED

    def __post_init__(self):
        times = np.array(self.times, dtype=float).reshape(-1)
        positions = np.array(self.positions, dtype=float)
        if positions.shape != (times.size, 3):
            raise DomainError(
                f"positions must have shape ({times.size}, 3), got {positions.shape}"
            )
        if times.size < 2:
            raise DomainError("a sampled worldline needs at least two samples")
        if not np.all(np.isfinite(times)) or not np.all(np.isfinite(positions)):
            raise DomainError("worldline samples must be finite")
        dt = np.diff(times)
        if np.any(dt <= 0.0):
            raise DomainError("sample times must be strictly increasing")
        speeds = np.linalg.norm(np.diff(positions, axis=0), axis=1) / dt
        if np.any(speeds >= self.c):
            raise DomainError("worldline segment is not subluminal")
        times.setflags(write=False)
        positions.setflags(write=False)
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "positions", positions)

    @classmethod
    def uniform(cls, start, velocity, t_start: float, t_end: float, c: float = 1.0):
        """Constant-velocity worldline over [t_start, t_end] (two samples suffice)."""
        start = _as_position(start)
        velocity = _as_position(velocity)
        pts = np.array([start + velocity * t_start, start + velocity * t_end])
        return cls(np.array([t_start, t_end]), pts, c=c)

    @property
    def domain(self):
        return (float(self.times[0]), float(self.times[-1]))

    def _segment(self, t: float) -> int:
        idx = int(np.searchsorted(self.times, t, side="right")) - 1
        return min(max(idx, 0), self.times.size - 2)

    def position(self, t: float) -> np.ndarray:
        lo, hi = self.domain
        if not (lo <= t <= hi):
            raise DomainError(f"time {t!r} outside worldline domain [{lo}, {hi}]")
        i = self._segment(t)
        w = (t - self.times[i]) / (self.times[i + 1] - self.times[i])
        return (1.0 - w) * self.positions[i] + w * self.positions[i + 1]

    def velocity(self, t: float) -> np.ndarray:
        lo, hi = self.domain
        if not (lo <= t <= hi):
            raise DomainError(f"time {t!r} outside worldline domain [{lo}, {hi}]")
        i = self._segment(t)
        return (self.positions[i + 1] - self.positions[i]) / (
            self.times[i + 1] - self.times[i]
        )


@dataclass(frozen=True)
class PointMassTrajectory:
    mass: float
    worldline: StaticWorldline | SampledWorldline

    def __post_init__(self):
        if not (self.mass >= 0.0 and np.isfinite(self.mass)):
            raise DomainError(f"mass must be finite and non-negative, got {self.mass!r}")


@dataclass(frozen=True)
class PointChargeTrajectory:
    charge: float
    worldline: StaticWorldline | SampledWorldline

    def __post_init__(self):
        if not np.isfinite(self.charge):
            raise DomainError("charge must be finite")


def static_mass(mass: float, point) -> PointMassTrajectory:
    return PointMassTrajectory(mass, StaticWorldline(point))


def static_charge(charge: float, point) -> PointChargeTrajectory:
    return PointChargeTrajectory(charge, StaticWorldline(point))


def solve_retarded_time(
    x,
    t: float,
    src,
    constants: PhysicalConstants = PhysicalConstants(),
) -> float:
    """Retarded time t_r with t_r = t - |x - x_src(t_r)| / c.

    Residual is at most 1e-12 * max(1, |t|).  The iteration consults only
    the sign of the defect, never its magnitude; see the module docstring
    for why that matters.
    """
    return _solve_for_worldline(_as_position(x), t, src.worldline, constants)


def _solve_for_worldline(x, t, w, constants) -> float:
    c = constants.c
    if w.kind is WorldlineKind.STATIC:
        return t - float(np.linalg.norm(x - w.point)) / c

    t_min, t_max = w.domain

    def defect(s: float) -> float:
        return s + float(np.linalg.norm(x - w.position(s))) / c - t

    hi = min(t, t_max)
    if hi < t_min:
        raise DomainError("field time precedes the worldline domain")
    f_hi = defect(hi)
    if f_hi < 0.0:
        raise DomainError("worldline ends before the retarded time")
    if f_hi == 0.0:
        return hi

    # Expand downward by doubling until the defect changes sign; step sizes
    # are fixed constants so the probe sequence cannot depend on the
    # worldline's future.
    step = 1.0
    lo = None
    for _ in range(_BRACKET_BUDGET):
        candidate = hi - step
        if candidate <= t_min:
            if defect(t_min) > 0.0:
                raise DomainError("retarded time precedes the worldline domain")
            lo = t_min
            break
        if defect(candidate) <= 0.0:
            lo = candidate
            break
        step *= 2.0
    if lo is None:
        raise ConvergenceError("retarded-time bracketing budget exhausted")

    width_tol = 5e-13 * max(1.0, abs(t))
    for _ in range(_BISECTION_BUDGET):
        if hi - lo <= width_tol:
            break
        mid = 0.5 * (lo + hi)
        if defect(mid) > 0.0:
            hi = mid
        else:
            lo = mid
    else:
        raise ConvergenceError("retarded-time bisection budget exhausted")
    return 0.5 * (lo + hi)


def _retarded_kinematics(worldline, x, t, constants):
    """Common Liénard-Wiechert geometry: (u^mu, gamma, kappa, R) at t_r."""
    t_r = _solve_for_worldline(x, t, worldline, constants)
    c = constants.c
    pos = worldline.position(t_r)
    rvec = x - pos
    R = float(np.linalg.norm(rvec))
    if R == 0.0:
        raise SingularityError("field evaluated at the source point")
    v = worldline.velocity(t_r)
    beta = v / c
    b2 = float(beta @ beta)
    kappa = 1.0 - float(rvec @ beta) / R
    gamma = 1.0 / np.sqrt(1.0 - b2)
    u = np.concatenate(([c], v))
    return u, gamma, kappa, R


def hbar_field(
    sources,
    x,
    t: float,
    constants: PhysicalConstants = PhysicalConstants(),
) -> Rank2Tensor:
    """Trace-reversed metric perturbation of point masses, lower indices.

    Each source contributes (4G/c^4) m gamma u^mu u^nu / (kappa R) evaluated
    at its retarded time; a static mass reduces to 4Gm/(c^2 r) in the 00
    slot and nothing else.
    """
    x = _as_position(x)
    c = constants.c
    total = np.zeros((4, 4))
    for src in sources:
        u, gamma, kappa, R = _retarded_kinematics(src.worldline, x, t, constants)
        total += (4.0 * constants.G / c**4) * src.mass * gamma * np.outer(u, u) / (kappa * R)
    eta = MINKOWSKI_METRIC
    return Rank2Tensor(eta @ total @ eta, Variance.COVARIANT)


def em_potential(
    sources,
    x,
    t: float,
    constants: PhysicalConstants = PhysicalConstants(),
    coulomb_constant: float = 1.0,
) -> np.ndarray:
    """Liénard-Wiechert four-potential A^mu of point charges.

    The Coulomb constant rides along as its own parameter; a static charge
    gives A^0 = k q / (c r) with zero spatial part.  This exists as a
    structural cross-check for ``hbar_field``: same denominators, different
    numerator rank.
    """
    x = _as_position(x)
    c = constants.c
    total = np.zeros(4)
    for src in sources:
        u, _, kappa, R = _retarded_kinematics(src.worldline, x, t, constants)
        total += (coulomb_constant / c**2) * src.charge * u / (kappa * R)
    return total
