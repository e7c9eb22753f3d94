"""How the branch phases look from frames that move or accelerate.

The inertial question: an observer boosted at velocity ratio beta recomputes
the interaction energy h_mu'nu' T^mu'nu' from transformed components.  If
only the scalar perturbation h_00 is granted quantum degrees of freedom the
observed phase picks up gamma^4 and frames disagree about entanglement; if
the vector components h_0i come along, the contraction gains the cross term
2 h_0'1' T^0'1' = -2 beta^2 gamma^4 and the factor becomes
gamma^4 (1 - 2 beta^2) = 1 - beta^4 gamma^4, invariant through third order.
The displayed one-dimensional laws put the boost along the axis the 01
components live on; this module keeps that algebra and leaves the scenario's
spatial layout untouched.

The accelerating questions: a merely accelerated observer watches the same
proper configuration, so the phase is whatever the rest frame says.  Rigidly
accelerating the interferometers themselves (both ends following the same
acceleration profile, the two-spaceship setup) stretches every proper
separation by gamma and divides every branch phase by gamma.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from gravlink.bmv import BmvScenario, PhaseMethod, PhaseTable, phase_table
from gravlink.errors import ContractError, DomainError
from gravlink.series import TruncatedSeries, evaluate, gamma_power_series
from gravlink.tensors import Rank2Tensor, Variance, boost, transform_rank2

DEFAULT_SCAN_ORDER = 24


class QuantizationModel(enum.Enum):
    SCALAR_ONLY = "scalar_only"
    SCALAR_PLUS_VECTOR = "scalar_plus_vector"


def _check_beta(beta: float) -> float:
    beta = float(beta)
    if not abs(beta) < 1.0:
        raise DomainError("superluminal boost")
    return beta


def _gamma_squared(beta: float) -> float:
    return 1.0 / (1.0 - beta * beta)


def boost_stress_components(beta: float) -> dict:
    """Boosted dust stress components as multiples of the rest T^00.

    Returns {(0,0): g2, (0,1): -beta g2, (1,0): -beta g2, (1,1): beta^2 g2}
    with g2 = gamma^2, cross-checked entry by entry against the full tensor
    transform of diag(T00, 0, 0, 0).
    """
    beta = _check_beta(beta)
    g2 = _gamma_squared(beta)
    coefficients = {
        (0, 0): g2,
        (0, 1): -beta * g2,
        (1, 0): -beta * g2,
        (1, 1): beta * beta * g2,
    }
    dust = Rank2Tensor.symmetric(np.diag([1.0, 0.0, 0.0, 0.0]), Variance.CONTRAVARIANT)
    full = transform_rank2(dust, boost([beta, 0.0, 0.0])).components
    for (mu, nu), value in coefficients.items():
        if abs(full[mu, nu] - value) > 1e-12 * max(1.0, abs(value)):
            raise ContractError("closed-form stress coefficients disagree with the tensor transform")
    return coefficients


def boost_metric_components(beta: float, model: QuantizationModel) -> dict:
    """Boosted metric-perturbation components as multiples of the rest h_00.

    The scalar-only hypothesis transports nothing but the 00 slot; granting
    the vector part its own degrees of freedom adds the 01/10 entries with
    the covariant sign, +beta gamma^2.
    """
    beta = _check_beta(beta)
    model = QuantizationModel(model)
    g2 = _gamma_squared(beta)
    if model is QuantizationModel.SCALAR_ONLY:
        return {(0, 0): g2}
    return {(0, 0): g2, (0, 1): beta * g2, (1, 0): beta * g2}


@dataclass(frozen=True)
class FramePhaseResult:
    """Phase seen by the moving observer, and how far it strays from rest.

    ``phase_factor`` multiplies the rest-frame phase as a truncated series in
    beta; ``residual`` is that factor evaluated at the given beta, minus one.
    """

    phase_factor: TruncatedSeries
    phase_value: float
    residual: float
    rest_phase: float
    beta: float

    def __post_init__(self):
        expected = self.rest_phase * evaluate(self.phase_factor, self.beta)
        if abs(self.phase_value - expected) > 1e-12 * max(1.0, abs(expected)):
            raise ContractError("phase_value inconsistent with factor and rest phase")


def _phase_factor_series(model: QuantizationModel, order: int) -> TruncatedSeries:
    g4 = gamma_power_series(4, order)
    if model is QuantizationModel.SCALAR_ONLY:
        return g4
    correction = np.zeros(order + 1)
    correction[0] = 1.0
    correction[2] = -2.0
    return g4 * TruncatedSeries(correction, order)


def phase_in_frame(
    rest_phase: float,
    beta: float,
    model: QuantizationModel,
    order: int = 4,
) -> FramePhaseResult:
    """Observed phase through the chosen quantization hypothesis.

    scalar_only multiplies by the series of gamma^4; scalar_plus_vector by
    gamma^4 (1 - 2 beta^2), which is the contraction h_0'0' T^0'0'
    + 2 h_0'1' T^0'1' with the stress sign -beta gamma^2 T^00 meeting the
    metric sign +beta gamma^2 h_00.  Orders below 2 cannot carry the
    correction term and are rejected.
    """
    beta = _check_beta(beta)
    model = QuantizationModel(model)
    if order < 2:
        raise DomainError(f"order must be at least 2, got {order}")
    factor = _phase_factor_series(model, order)
    value = evaluate(factor, beta)
    return FramePhaseResult(
        phase_factor=factor,
        phase_value=rest_phase * value,
        residual=value - 1.0,
        rest_phase=rest_phase,
        beta=beta,
    )


def invariance_residual_scan(
    beta_grid,
    model: QuantizationModel,
    order: int = DEFAULT_SCAN_ORDER,
) -> np.ndarray:
    """Rows of (beta, phase-factor residual) over a velocity grid.

    The default order is high enough that the residual column reflects the
    closed forms (gamma^4 - 1 and -beta^4 gamma^4) to better than 1e-10 for
    beta up to 0.3, rather than series truncation.
    """
    model = QuantizationModel(model)
    rows = np.empty((len(beta_grid), 2))
    for i, beta in enumerate(beta_grid):
        result = phase_in_frame(1.0, beta, model, order)
        rows[i, 0] = result.beta
        rows[i, 1] = result.residual
    return rows


def accelerated_observer_phase(s: BmvScenario) -> float:
    """Branch-phase combination seen by an accelerated observer: the rest value.

    Acceleration of the observer changes coordinates, not the interferometers'
    proper configuration, so the entanglement-generating phase is the
    stationary delta_phi unchanged.
    """
    return phase_table(s, PhaseMethod.NEWTONIAN).delta_phi


@dataclass(frozen=True)
class BellParadoxResult:
    """Outcome of rigidly accelerating both interferometers to a final gamma.

    Every proper separation comes out stretched by gamma (the two-spaceship
    effect along the separation axis), so every branch phase drops to its
    rest value over gamma; ``scenario`` carries the dilated geometry and
    ``table`` the per-branch phases.
    """

    scenario: BmvScenario
    table: PhaseTable
    gamma: float

    @property
    def delta_phi(self) -> float:
        return self.table.delta_phi


def bell_paradox_phase(s: BmvScenario, gamma_final: float) -> BellParadoxResult:
    """Stretch the scenario by gamma_final and divide each branch phase by it."""
    gamma_final = float(gamma_final)
    if not (gamma_final >= 1.0 and np.isfinite(gamma_final)):
        raise DomainError(f"final gamma must be at least 1, got {gamma_final!r}")
    stretched = BmvScenario(
        mass=s.mass,
        tau=s.tau,
        l1=gamma_final * s.l1,
        u1=gamma_final * s.u1,
        l2=gamma_final * s.l2,
        u2=gamma_final * s.u2,
        constants=s.constants,
    )
    rest = phase_table(s, PhaseMethod.NEWTONIAN)
    return BellParadoxResult(
        scenario=stretched,
        table=rest.scaled(1.0 / gamma_final),
        gamma=gamma_final,
    )
