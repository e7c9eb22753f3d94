"""The mediator made explicit: masses coupled to quantized field modes.

Instead of a phase formula, this module carries the full Hamiltonian

    H = sum_k hbar w_k a_k' a_k  +  2 m c^2
        + sum_k (hbar g_k / sqrt(w_k)) sum_branches P_branch
          (a_k e^{i k y} + a_k' e^{-i k y})

on a truncated Hilbert space (two branch qubits times a Fock ladder per
mode), where P_branch projects a mass onto one interferometer arm and y is
that arm's coordinate along the 1D mode axis.  Branch occupations commute
with H, so each joint branch sees an independently driven oscillator; the
closed-form solution of that driven oscillator (coherent displacement
alpha_k(t) plus an accumulated phase) is implemented side by side as an
oracle, and agreement between brute-force evolution and the oracle is what
certifies the numerics.

Everything here runs in natural units with order-1 parameters; the module
validates mediation structure and phase bookkeeping, not SI magnitudes.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from gravlink.bmv import PhaseTable
from gravlink.errors import BudgetError, ContractError, DomainError
from gravlink.tensors import PhysicalConstants

DEFAULT_DIMENSION_BUDGET = 2**14

BRANCH_PAIRS = ("ll", "lu", "ul", "uu")


@dataclass(frozen=True)
class ModeSet:
    """Field modes with frequencies and couplings derived, never chosen.

    w_k = c |k| and g_k = m c sqrt(2 pi G / (hbar w_k V)); the mass and the
    constants ride along because the coupling formula needs them.
    """

    wavenumbers: np.ndarray
    volume: float
    mass: float
    constants: PhysicalConstants = PhysicalConstants()
    frequencies: np.ndarray = field(init=False)
    couplings: np.ndarray = field(init=False)

    def __post_init__(self):
        ks = np.array(self.wavenumbers, dtype=float).reshape(-1)
        if ks.size == 0:
            raise DomainError("need at least one mode")
        if not np.all(np.isfinite(ks)) or np.any(ks == 0.0):
            raise DomainError("wavenumbers must be finite and nonzero")
        if not (self.volume > 0.0 and np.isfinite(self.volume)):
            raise DomainError(f"volume must be positive, got {self.volume!r}")
        if not (self.mass >= 0.0 and np.isfinite(self.mass)):
            raise DomainError(f"mass must be non-negative, got {self.mass!r}")
        k = self.constants
        freqs = k.c * np.abs(ks)
        coups = self.mass * k.c * np.sqrt(2.0 * np.pi * k.G / (k.hbar * freqs * self.volume))
        for name, arr in (("wavenumbers", ks), ("frequencies", freqs), ("couplings", coups)):
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    @classmethod
    def from_wavenumbers(
        cls,
        wavenumbers,
        volume: float,
        mass: float,
        constants: PhysicalConstants = PhysicalConstants(),
    ) -> "ModeSet":
        return cls(wavenumbers, volume, mass, constants)

    @property
    def mode_count(self) -> int:
        return int(self.wavenumbers.size)


@dataclass(frozen=True)
class TruncatedHilbertConfig:
    """Fock cutoff and mode count, policed against a hard dimension budget."""

    fock_cutoff: int
    mode_count: int
    budget: int = DEFAULT_DIMENSION_BUDGET

    def __post_init__(self):
        if self.fock_cutoff < 1:
            raise DomainError(f"fock_cutoff must be at least 1, got {self.fock_cutoff}")
        if self.mode_count < 1:
            raise DomainError(f"mode_count must be at least 1, got {self.mode_count}")
        if self.dimension > self.budget:
            raise BudgetError(
                f"truncated dimension 4*({self.fock_cutoff}+1)^{self.mode_count} "
                f"= {self.dimension} exceeds budget {self.budget}"
            )

    @property
    def fock_dimension(self) -> int:
        return self.fock_cutoff + 1

    @property
    def dimension(self) -> int:
        return 4 * self.fock_dimension**self.mode_count


@dataclass(frozen=True)
class QuantumState:
    """Amplitudes over (mass1 branch) x (mass2 branch) x Fock occupations.

    Kron ordering with mass 1 slowest, field modes fastest; l is branch 0.
    """

    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=complex).reshape(-1)
        norm = float(np.linalg.norm(amps))
        if abs(norm - 1.0) > 1e-10:
            raise ContractError(f"state norm must be 1 within 1e-10, got {norm!r}")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @property
    def dimension(self) -> int:
        return int(self.amplitudes.size)


def branch_vacuum_state(cfg: TruncatedHilbertConfig) -> QuantumState:
    """The protocol's start: both masses split evenly, field in vacuum."""
    mass_part = 0.5 * np.ones(4, dtype=complex)
    field_part = np.zeros(cfg.fock_dimension**cfg.mode_count, dtype=complex)
    field_part[0] = 1.0
    return QuantumState(np.kron(mass_part, field_part))


def _annihilator(fock_dimension: int) -> np.ndarray:
    a = np.zeros((fock_dimension, fock_dimension))
    n = np.arange(1, fock_dimension)
    a[n - 1, n] = np.sqrt(n)
    return a


def _embed_mode_operator(op: np.ndarray, mode: int, cfg: TruncatedHilbertConfig) -> np.ndarray:
    """Lift a single-mode operator to the full (4 * F^N)-dimensional space."""
    out = np.eye(4)
    for j in range(cfg.mode_count):
        out = np.kron(out, op if j == mode else np.eye(cfg.fock_dimension))
    return out


def _branch_projector(mass_index: int, branch: int) -> np.ndarray:
    p = np.zeros((2, 2))
    p[branch, branch] = 1.0
    return np.kron(p, np.eye(2)) if mass_index == 1 else np.kron(np.eye(2), p)


def _embed_mass_operator(op4: np.ndarray, cfg: TruncatedHilbertConfig) -> np.ndarray:
    return np.kron(op4, np.eye(cfg.fock_dimension**cfg.mode_count))


def _branch_coordinates(positions) -> tuple:
    coords = tuple(float(v) for v in positions)
    if len(coords) != 4:
        raise DomainError("positions must be the four scalars (l1, u1, l2, u2)")
    if not all(np.isfinite(v) for v in coords):
        raise DomainError("positions must be finite")
    return coords


def build_hamiltonian(
    modes: ModeSet,
    positions,
    cfg: TruncatedHilbertConfig,
    constants: PhysicalConstants = PhysicalConstants(),
) -> np.ndarray:
    """Dense Hamiltonian matrix; ``positions`` are the scalar coordinates
    (l1, u1, l2, u2) of the four arms along the mode axis."""
    if modes.mode_count != cfg.mode_count:
        raise DomainError(
            f"mode set has {modes.mode_count} modes but config expects {cfg.mode_count}"
        )
    l1, u1, l2, u2 = _branch_coordinates(positions)
    hbar = constants.hbar
    dim = cfg.dimension
    H = np.zeros((dim, dim), dtype=complex)

    # free masses: both are present in every branch, a constant 2 m c^2
    H += 2.0 * modes.mass * constants.c**2 * np.eye(dim)

    arms = {(1, 0): l1, (1, 1): u1, (2, 0): l2, (2, 1): u2}
    for mode in range(cfg.mode_count):
        w = modes.frequencies[mode]
        g = modes.couplings[mode]
        k = modes.wavenumbers[mode]
        a = _annihilator(cfg.fock_dimension)
        a_full = _embed_mode_operator(a, mode, cfg)
        H += hbar * w * (a_full.conj().T @ a_full)
        for (mass_index, branch), y in arms.items():
            proj = _embed_mass_operator(_branch_projector(mass_index, branch), cfg)
            drive = np.exp(1j * k * y) * a_full + np.exp(-1j * k * y) * a_full.conj().T
            H += (hbar * g / np.sqrt(w)) * (proj @ drive)
    return H


def evolve(
    psi0: QuantumState,
    H: np.ndarray,
    t: float,
    constants: PhysicalConstants = PhysicalConstants(),
) -> QuantumState:
    """psi(t) = exp(-i H t / hbar) psi0 by dense eigendecomposition."""
    H = np.asarray(H, dtype=complex)
    scale = max(1.0, float(np.abs(H).max()))
    if np.abs(H - H.conj().T).max() > 1e-12 * scale:
        raise ContractError("evolution requires a Hermitian Hamiltonian")
    if H.shape != (psi0.dimension, psi0.dimension):
        raise ContractError(
            f"Hamiltonian shape {H.shape} does not match state dimension {psi0.dimension}"
        )
    eigenvalues, eigenvectors = np.linalg.eigh(H)
    phases = np.exp(-1j * eigenvalues * t / constants.hbar)
    amps = eigenvectors @ (phases * (eigenvectors.conj().T @ psi0.amplitudes))
    return QuantumState(amps)


def reduced_mass_state(psi: QuantumState) -> np.ndarray:
    """4x4 density matrix of the two branch qubits, field modes traced out."""
    block = psi.amplitudes.reshape(4, -1)
    return block @ block.conj().T


def trace_distance(rho: np.ndarray, sigma: np.ndarray) -> float:
    """Half the trace norm of the difference of two density matrices."""
    diff = np.asarray(rho, dtype=complex) - np.asarray(sigma, dtype=complex)
    if np.abs(diff - diff.conj().T).max() > 1e-10 * max(1.0, np.abs(diff).max()):
        raise ContractError("trace distance needs Hermitian inputs")
    return float(0.5 * np.abs(np.linalg.eigvalsh(diff)).sum())


@dataclass(frozen=True)
class ConditionalDisplacementResult:
    """Closed-form prediction for the branch-conditioned driven oscillators.

    ``table`` holds the accumulated branch phases, ``density_matrix`` the
    predicted reduced state of the masses (off-diagonals damped by the
    field-state overlaps), and ``residual_overlap_deficit`` how far any
    branch pair's field states are from overlapping completely; the deficit
    returns to zero at every common mode recurrence.
    """

    table: PhaseTable
    density_matrix: np.ndarray
    residual_overlap_deficit: float
    displacements: dict


def conditional_displacement_oracle(
    modes: ModeSet,
    positions,
    t: float,
) -> ConditionalDisplacementResult:
    """Exact solution per joint branch: coherent displacement plus phase.

    With the branch drive lambda_k = (g_k / sqrt(w_k)) (e^{i k y1} + e^{i k y2})
    the vacuum evolves into the coherent state
    alpha_k(t) = (conj(lambda_k) / w_k)(e^{-i w_k t} - 1) while accumulating

        Phi(t) = sum_k (|lambda_k|^2 / w_k) (t - sin(w_k t) / w_k)
                 - 2 m c^2 t / hbar.

    The |lambda|^2 = (g^2/w)(2 + 2 cos k(y1 - y2)) split separates a
    branch-local self term from the cross term that carries all of delta_phi.
    """
    l1, u1, l2, u2 = _branch_coordinates(positions)
    k = modes.constants
    pair_positions = {
        "ll": (l1, l2),
        "lu": (l1, u2),
        "ul": (u1, l2),
        "uu": (u1, u2),
    }
    rest_energy_phase = 2.0 * modes.mass * k.c**2 * t / k.hbar
    phases = {}
    displacements = {}
    for pair, (y1, y2) in pair_positions.items():
        lam = (modes.couplings / np.sqrt(modes.frequencies)) * (
            np.exp(1j * modes.wavenumbers * y1) + np.exp(1j * modes.wavenumbers * y2)
        )
        w = modes.frequencies
        phases[pair] = float(
            np.sum(np.abs(lam) ** 2 / w * (t - np.sin(w * t) / w)) - rest_energy_phase
        )
        displacements[pair] = (lam.conj() / w) * (np.exp(-1j * w * t) - 1.0)

    table = PhaseTable(phases["ll"], phases["lu"], phases["ul"], phases["uu"])
    rho = np.zeros((4, 4), dtype=complex)
    deficit = 0.0
    for i, bi in enumerate(BRANCH_PAIRS):
        for j, bj in enumerate(BRANCH_PAIRS):
            overlap = _coherent_overlap(displacements[bj], displacements[bi])
            rho[i, j] = 0.25 * np.exp(1j * (phases[bi] - phases[bj])) * overlap
            if i != j:
                deficit = max(deficit, 1.0 - abs(overlap))
    return ConditionalDisplacementResult(
        table=table,
        density_matrix=rho,
        residual_overlap_deficit=float(deficit),
        displacements=displacements,
    )


def _coherent_overlap(beta: np.ndarray, alpha: np.ndarray) -> complex:
    # <beta|alpha> over independent modes
    exponent = (
        -0.5 * np.sum(np.abs(alpha) ** 2)
        - 0.5 * np.sum(np.abs(beta) ** 2)
        + np.sum(beta.conj() * alpha)
    )
    return complex(np.exp(exponent))


@dataclass(frozen=True)
class CommutatorReport:
    """Truncated-ladder algebra facts backing the mediator-quantumness claim.

    ``number_displacement_norm`` is ||[a'a, a + a']||, nonzero because the
    two observables genuinely fail to commute; the other entries measure how
    faithfully the truncated ladder reproduces the algebra: the commutator
    equals a' - a entrywise, [a, a'] is the identity below the cutoff, and
    distinct modes commute.
    """

    number_displacement_norm: float
    number_displacement_vs_ladder_difference: float
    canonical_defect_below_cutoff: float
    cross_mode_commutator_norm: float


def commutator_check(modes: ModeSet, cfg: TruncatedHilbertConfig) -> CommutatorReport:
    if modes.mode_count != cfg.mode_count:
        raise DomainError(
            f"mode set has {modes.mode_count} modes but config expects {cfg.mode_count}"
        )
    a = _annihilator(cfg.fock_dimension)
    ad = a.conj().T
    number = ad @ a
    displacement = a + ad
    comm = number @ displacement - displacement @ number
    norm = float(np.linalg.norm(comm))
    vs_ladder = float(np.abs(comm - (ad - a)).max())

    canonical = a @ ad - ad @ a
    below = cfg.fock_cutoff  # occupations 0 .. n_max - 1
    defect = float(np.abs(canonical[:below, :below] - np.eye(below)).max())

    cross = 0.0
    if cfg.mode_count >= 2:
        for i in range(cfg.mode_count):
            for j in range(cfg.mode_count):
                if i == j:
                    continue
                ai = _embed_mode_operator(a, i, cfg)
                adj = _embed_mode_operator(ad, j, cfg)
                cross = max(cross, float(np.abs(ai @ adj - adj @ ai).max()))
    return CommutatorReport(
        number_displacement_norm=norm,
        number_displacement_vs_ladder_difference=vs_ladder,
        canonical_defect_below_cutoff=defect,
        cross_mode_commutator_norm=cross,
    )
