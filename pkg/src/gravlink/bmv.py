"""Branch geometry, gravitationally induced phases and entanglement measures.

Two masses are each split across a lower and an upper interferometer arm.
During the hold time tau every joint branch (x, y) accumulates a phase from
the mutual gravitational interaction at that branch's separation; the four
phases turn the joint state into an entangled one whenever the combination

    delta_phi = phi_ll + phi_uu - phi_lu - phi_ul

is not a multiple of 2 pi.  Phases can be computed two ways that must agree:
the closed Newtonian form G m^2 tau / (hbar d), and the action integral
(1/4 hbar) int h_mu_nu T^mu^nu d^4x fed by the retarded-field solver.  The
entanglement measures deliberately use brute-force eigendecompositions; the
known closed forms live in the tests as oracles.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from gravlink.errors import ContractError, DomainError
from gravlink.retarded import hbar_field, static_mass
from gravlink.tensors import (
    PhysicalConstants,
    Rank2Tensor,
    Variance,
    lorentz_scalar,
    trace_reverse,
)

BRANCHES = ("ll", "lu", "ul", "uu")


class PhaseMethod(enum.Enum):
    NEWTONIAN = "newtonian"
    ACTION_INTEGRAL = "action_integral"


def _position(x) -> np.ndarray:
    arr = np.array(x, dtype=float).reshape(3)
    if not np.all(np.isfinite(arr)):
        raise DomainError("branch positions must be finite 3-vectors")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class BmvScenario:
    """Two equal masses, four branch positions, one hold time.

    ``l1``/``u1`` are the lower and upper arms of the first mass, ``l2``/``u2``
    of the second.  Only cross pairings (arm of mass 1 against arm of mass 2)
    ever interact; arms of the same mass are alternatives, not neighbours.
    """

    mass: float
    tau: float
    l1: np.ndarray
    u1: np.ndarray
    l2: np.ndarray
    u2: np.ndarray
    constants: PhysicalConstants = PhysicalConstants()

    def __post_init__(self):
        if not (self.mass >= 0.0 and np.isfinite(self.mass)):
            raise DomainError(f"mass must be finite and non-negative, got {self.mass!r}")
        if not (self.tau >= 0.0 and np.isfinite(self.tau)):
            raise DomainError(f"tau must be finite and non-negative, got {self.tau!r}")
        for name in ("l1", "u1", "l2", "u2"):
            object.__setattr__(self, name, _position(getattr(self, name)))
        points = [self.l1, self.u1, self.l2, self.u2]
        for i in range(4):
            for j in range(i + 1, 4):
                if np.array_equal(points[i], points[j]):
                    raise DomainError("branch positions must be pairwise distinct")

    @classmethod
    def from_separations(
        cls,
        mass: float,
        tau: float,
        d1: float,
        d2: float,
        constants: PhysicalConstants = PhysicalConstants(),
    ) -> "BmvScenario":
        """Collinear arrangement fixed by the two canonical separations.

        All four arms sit on the x-axis with |l1 - l2| = d1 and |u1 - l2| = d2:
        l2 at the origin, u2 at d2 - d1, l1 at d1, u1 at d2.  The figure the
        separations come from leaves the remaining two pair distances open;
        this layout is one definite completion, and callers needing a
        different one pass the four positions explicitly.  Degenerate
        overlaps (d2 = d1 or d2 = 2 d1) are rejected.
        """
        if not (d1 > 0.0 and np.isfinite(d1)):
            raise DomainError(f"d1 must be positive, got {d1!r}")
        if not (d2 > 0.0 and np.isfinite(d2)):
            raise DomainError(f"d2 must be positive, got {d2!r}")
        if d2 == d1 or d2 == 2.0 * d1:
            raise DomainError("degenerate layout: d2 must differ from d1 and 2*d1")
        return cls(
            mass=mass,
            tau=tau,
            l1=[d1, 0.0, 0.0],
            u1=[d2, 0.0, 0.0],
            l2=[0.0, 0.0, 0.0],
            u2=[d2 - d1, 0.0, 0.0],
            constants=constants,
        )

    def arm(self, mass_index: int, branch: str) -> np.ndarray:
        if branch not in ("l", "u"):
            raise DomainError(f"branch must be 'l' or 'u', got {branch!r}")
        if mass_index == 1:
            return self.l1 if branch == "l" else self.u1
        if mass_index == 2:
            return self.l2 if branch == "l" else self.u2
        raise DomainError(f"mass_index must be 1 or 2, got {mass_index!r}")

    def cross_distance(self, branch1: str, branch2: str) -> float:
        return float(np.linalg.norm(self.arm(1, branch1) - self.arm(2, branch2)))

    def cross_distances(self) -> dict:
        return {b1 + b2: self.cross_distance(b1, b2) for b1 in "lu" for b2 in "lu"}


@dataclass(frozen=True)
class PhaseTable:
    """Accumulated phase of each joint branch, in radians."""

    phi_ll: float
    phi_lu: float
    phi_ul: float
    phi_uu: float

    def __post_init__(self):
        for name in ("phi_ll", "phi_lu", "phi_ul", "phi_uu"):
            if not np.isfinite(getattr(self, name)):
                raise ContractError(f"{name} must be finite")

    @property
    def delta_phi(self) -> float:
        """The only phase combination local operations cannot remove."""
        return self.phi_ll + self.phi_uu - self.phi_lu - self.phi_ul

    def as_dict(self) -> dict:
        return {
            "ll": self.phi_ll,
            "lu": self.phi_lu,
            "ul": self.phi_ul,
            "uu": self.phi_uu,
        }

    def scaled(self, factor: float) -> "PhaseTable":
        return PhaseTable(
            self.phi_ll * factor,
            self.phi_lu * factor,
            self.phi_ul * factor,
            self.phi_uu * factor,
        )


@dataclass(frozen=True)
class TwoQubitState:
    """Pure joint state over (branch of mass 1) x (branch of mass 2).

    Amplitude order is (ll, lu, ul, uu), the Kronecker convention with mass 1
    as the slow index.
    """

    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=complex).reshape(-1)
        if amps.size != 4:
            raise ContractError(f"expected 4 amplitudes, got {amps.size}")
        norm = float(np.linalg.norm(amps))
        if abs(norm - 1.0) > 1e-12:
            raise ContractError(f"state norm must be 1 within 1e-12, got {norm!r}")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    def density_matrix(self) -> np.ndarray:
        return np.outer(self.amplitudes, self.amplitudes.conj())


def newtonian_phase(
    m1: float,
    m2: float,
    tau: float,
    d: float,
    constants: PhysicalConstants = PhysicalConstants(),
) -> float:
    """G m1 m2 tau / (hbar d), the closed-form phase for one static pair."""
    if not (d > 0.0 and np.isfinite(d)):
        raise DomainError(f"separation must be positive, got {d!r}")
    if not (tau >= 0.0 and np.isfinite(tau)):
        raise DomainError(f"tau must be non-negative, got {tau!r}")
    return constants.G * m1 * m2 * tau / (constants.hbar * d)


def _action_integral_phase(s: BmvScenario, branch1: str, branch2: str) -> float:
    # (1/4 hbar) int h_mu_nu T^mu^nu over the hold time: static integrand, so
    # the time integral is a factor tau; the delta-function space integral
    # leaves the field of each mass evaluated at the other one.  Both cross
    # terms count, self-terms never enter.
    k = s.constants
    x1 = s.arm(1, branch1)
    x2 = s.arm(2, branch2)
    energy = s.mass * k.c**2
    stress = Rank2Tensor.symmetric(
        np.diag([energy, 0.0, 0.0, 0.0]), Variance.CONTRAVARIANT
    )
    phase = 0.0
    for source_point, field_point in ((x1, x2), (x2, x1)):
        hbar = hbar_field([static_mass(s.mass, source_point)], field_point, 0.0, k)
        h = trace_reverse(hbar)
        phase += lorentz_scalar(h, stress)
    return phase * s.tau / (4.0 * k.hbar)


def phase_table(s: BmvScenario, method: PhaseMethod = PhaseMethod.NEWTONIAN) -> PhaseTable:
    """Per-branch phases by either route.

    The Newtonian route divides by each cross distance directly; the action
    route sends static sources through the retarded-field solver and
    contracts against the stress tensor.  They agree to about nine digits,
    which is one of the package's acceptance checks.
    """
    method = PhaseMethod(method)
    values = {}
    for pair in BRANCHES:
        b1, b2 = pair
        if method is PhaseMethod.NEWTONIAN:
            d = s.cross_distance(b1, b2)
            values[pair] = newtonian_phase(s.mass, s.mass, s.tau, d, s.constants)
        else:
            values[pair] = _action_integral_phase(s, b1, b2)
    return PhaseTable(values["ll"], values["lu"], values["ul"], values["uu"])


def assemble_state(p: PhaseTable) -> TwoQubitState:
    """Equal-weight joint state after the hold: half of e^{i phi} per branch."""
    return TwoQubitState(
        0.5
        * np.exp(
            1j * np.array([p.phi_ll, p.phi_lu, p.phi_ul, p.phi_uu])
        )
    )


def _partial_transpose(rho: np.ndarray) -> np.ndarray:
    return rho.reshape(2, 2, 2, 2).swapaxes(1, 3).reshape(4, 4)


def negativity(state: TwoQubitState) -> float:
    """Sum of |negative eigenvalues| of the partially transposed density matrix.

    Ranges over [0, 1/2] for two qubits; 0 exactly on product states.
    """
    rho = state.density_matrix()
    eigenvalues = np.linalg.eigvalsh(_partial_transpose(rho))
    return float(-eigenvalues[eigenvalues < 0.0].sum())


def negativity_of_density_matrix(rho: np.ndarray) -> float:
    """Same measure for an explicit 4x4 density matrix (mixed states allowed)."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise ContractError(f"density matrix must be 4x4, got {rho.shape}")
    if np.abs(rho - rho.conj().T).max() > 1e-10:
        raise ContractError("density matrix must be Hermitian")
    if abs(np.trace(rho).real - 1.0) > 1e-10:
        raise ContractError("density matrix must have unit trace")
    eigenvalues = np.linalg.eigvalsh(_partial_transpose(rho))
    return float(-eigenvalues[eigenvalues < 0.0].sum())


def entanglement_entropy(state: TwoQubitState) -> float:
    """Von Neumann entropy (base 2) of either mass's reduced state."""
    M = state.amplitudes.reshape(2, 2)
    reduced = M @ M.conj().T
    eigenvalues = np.linalg.eigvalsh(reduced)
    eigenvalues = np.clip(eigenvalues.real, 0.0, 1.0)
    nonzero = eigenvalues[eigenvalues > 1e-300]
    return float(-(nonzero * np.log2(nonzero)).sum())
