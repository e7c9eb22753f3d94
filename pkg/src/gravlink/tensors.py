"""Minkowski-space tensor algebra on dense 4x4 arrays.

Everything downstream (field solvers, frame transformations) is built on the
four operations here: boost construction, rank-2 transformation, trace
reversal and the Minkowski trace.

Sign conventions are fixed once, in this module:

* metric signature (-,+,+,+), so eta = diag(-1, 1, 1, 1);
* a boost with velocity ratio ``beta`` maps lab coordinates to the moving
  observer's coordinates, so the time-time entry is gamma and the time-space
  entries are -beta*gamma;
* contravariant tensors transform with the boost matrix itself, covariant
  tensors with its inverse (for a pure boost, eta @ L @ eta).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from gravlink.errors import ContractError, DomainError

#: Metric signature (-,+,+,+). Every sign-sensitive value in the package is
#: derived under this convention; change it here or nowhere.
MINKOWSKI_METRIC = np.diag([-1.0, 1.0, 1.0, 1.0])
MINKOWSKI_METRIC.setflags(write=False)

SYMMETRY_TOL = 1e-12
METRIC_PRESERVATION_TOL = 1e-12


class Variance(enum.Enum):
    """Declared index placement of a rank-2 tensor."""

    COVARIANT = "covariant"
    CONTRAVARIANT = "contravariant"
    MIXED = "mixed"


@dataclass(frozen=True)
class PhysicalConstants:
    """Gravitational constant, speed of light and reduced Planck constant.

    The default is the natural-unit preset G = c = hbar = 1 used for all
    desk-scale runs; ``si()`` gives CODATA values.
    """

    G: float = 1.0
    c: float = 1.0
    hbar: float = 1.0

    def __post_init__(self):
        for name in ("G", "c", "hbar"):
            value = getattr(self, name)
            if not (value > 0.0 and np.isfinite(value)):
                raise DomainError(f"constant {name} must be strictly positive, got {value!r}")

    @classmethod
    def natural(cls) -> "PhysicalConstants":
        return cls()

    @classmethod
    def si(cls) -> "PhysicalConstants":
        return cls(G=6.67430e-11, c=299_792_458.0, hbar=1.054_571_817e-34)


def _as_4x4(components) -> np.ndarray:
    arr = np.array(components, dtype=float)
    if arr.shape != (4, 4):
        raise ContractError(f"expected a 4x4 array, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ContractError("tensor components must be finite")
    return arr


@dataclass(frozen=True)
class Rank2Tensor:
    """Dense 4x4 real tensor with declared index variance."""

    components: np.ndarray
    variance: Variance

    def __post_init__(self):
        arr = _as_4x4(self.components)
        arr.setflags(write=False)
        object.__setattr__(self, "components", arr)

    @classmethod
    def symmetric(cls, components, variance: Variance) -> "Rank2Tensor":
        """Constructor for tensors that are symmetric by physical role (eta, h, T)."""
        arr = _as_4x4(components)
        if np.abs(arr - arr.T).max() > SYMMETRY_TOL:
            raise ContractError("symmetric constructor given an asymmetric array")
        return cls(0.5 * (arr + arr.T), variance)

    @classmethod
    def zero(cls, variance: Variance) -> "Rank2Tensor":
        return cls(np.zeros((4, 4)), variance)

    def is_symmetric(self, tol: float = SYMMETRY_TOL) -> bool:
        return bool(np.abs(self.components - self.components.T).max() <= tol)


def minkowski(variance: Variance = Variance.COVARIANT) -> Rank2Tensor:
    """The flat metric eta (numerically identical with either index placement)."""
    return Rank2Tensor(MINKOWSKI_METRIC.copy(), variance)


@dataclass(frozen=True)
class LorentzTransform:
    """A pure boost: its matrix, the velocity ratio 3-vector and gamma."""

    matrix: np.ndarray
    beta: np.ndarray
    gamma: float

    def __post_init__(self):
        object.__setattr__(self, "matrix", _as_4x4(self.matrix))
        beta = np.array(self.beta, dtype=float).reshape(3)
        object.__setattr__(self, "beta", beta)
        self.matrix.setflags(write=False)
        self.beta.setflags(write=False)
        speed = float(np.linalg.norm(beta))
        if speed >= 1.0:
            raise DomainError("superluminal boost")
        if abs(self.gamma - 1.0 / np.sqrt(1.0 - speed**2)) > 1e-12 * self.gamma:
            raise ContractError("gamma inconsistent with |beta|")
        eta = MINKOWSKI_METRIC
        if np.abs(self.matrix.T @ eta @ self.matrix - eta).max() > METRIC_PRESERVATION_TOL:
            raise ContractError("matrix does not preserve the Minkowski metric")

    def inverse_matrix(self) -> np.ndarray:
        """Exact inverse for a metric-preserving map: eta @ L^T @ eta."""
        eta = MINKOWSKI_METRIC
        return eta @ self.matrix.T @ eta


def boost(beta) -> LorentzTransform:
    """Standard boost for a dimensionless velocity 3-vector (|beta| < 1).

    For beta along x the matrix has gamma in the time-time slot and
    -beta*gamma in the time-x slots.
    """
    beta = np.array(beta, dtype=float).reshape(3)
    b2 = float(beta @ beta)
    if b2 >= 1.0:
        raise DomainError("superluminal boost")
    gamma = 1.0 / np.sqrt(1.0 - b2)
    L = np.eye(4)
    if b2 > 0.0:
        L[0, 0] = gamma
        L[0, 1:] = -gamma * beta
        L[1:, 0] = -gamma * beta
        L[1:, 1:] += (gamma - 1.0) * np.outer(beta, beta) / b2
    return LorentzTransform(matrix=L, beta=beta, gamma=gamma)


def transform_rank2(tensor: Rank2Tensor, transform: LorentzTransform) -> Rank2Tensor:
    """Apply a boost to a rank-2 tensor respecting its declared variance.

    Contravariant: T' = L T L^T.  Covariant: h' = (L^-1)^T h L^-1.
    Mixed: M' = L M L^-1.  Symmetry of the input is preserved exactly by
    the congruence transforms.
    """
    L = transform.matrix
    T = tensor.components
    if tensor.variance is Variance.CONTRAVARIANT:
        out = L @ T @ L.T
    elif tensor.variance is Variance.COVARIANT:
        Linv = transform.inverse_matrix()
        out = Linv.T @ T @ Linv
    else:
        out = L @ T @ transform.inverse_matrix()
    return Rank2Tensor(out, tensor.variance)


def minkowski_trace(h: Rank2Tensor) -> float:
    """Scalar contraction eta^{mu nu} h_{mu nu} of a covariant symmetric tensor."""
    _require_covariant_symmetric(h)
    return float(np.sum(MINKOWSKI_METRIC * h.components))


def trace_reverse(h: Rank2Tensor) -> Rank2Tensor:
    """h - (1/2) eta tr(h); its own inverse in four dimensions."""
    _require_covariant_symmetric(h)
    tr = minkowski_trace(h)
    return Rank2Tensor(h.components - 0.5 * MINKOWSKI_METRIC * tr, Variance.COVARIANT)


def lorentz_scalar(h: Rank2Tensor, T: Rank2Tensor) -> float:
    """Full contraction h_{mu nu} T^{mu nu} of a covariant/contravariant pair."""
    if h.variance is not Variance.COVARIANT or T.variance is not Variance.CONTRAVARIANT:
        raise ContractError("contraction needs a covariant first and contravariant second argument")
    return float(np.sum(h.components * T.components))


def _require_covariant_symmetric(h: Rank2Tensor) -> None:
    if h.variance is not Variance.COVARIANT:
        raise ContractError("operation defined for covariant tensors")
    if not h.is_symmetric():
        raise ContractError("operation defined for symmetric tensors")
