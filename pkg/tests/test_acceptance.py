"""Acceptance gate: one test per release criterion, each printing a
pass/fail line and enforcing its runtime budget.

Run with ``pytest tests/test_acceptance.py -v`` for the per-criterion
verdicts, or ``-s`` to see the timing lines inline.
"""

import math
import time

import numpy as np

from gravlink.bmv import (
    BmvScenario,
    PhaseMethod,
    PhaseTable,
    assemble_state,
    negativity,
    phase_table,
)
from gravlink.frames import (
    QuantizationModel,
    bell_paradox_phase,
    invariance_residual_scan,
)
from gravlink.modesum import (
    ModeSet,
    TruncatedHilbertConfig,
    branch_vacuum_state,
    build_hamiltonian,
    commutator_check,
    conditional_displacement_oracle,
    evolve,
    reduced_mass_state,
    trace_distance,
)
from gravlink.bmv import negativity_of_density_matrix
from gravlink.retarded import (
    PointMassTrajectory,
    SampledWorldline,
    hbar_field,
    solve_retarded_time,
    static_mass,
)
from gravlink.tensors import (
    MINKOWSKI_METRIC,
    PhysicalConstants,
    Rank2Tensor,
    Variance,
    boost,
    lorentz_scalar,
    trace_reverse,
    transform_rank2,
)


class _Gate:
    """Context manager: times the block and prints one verdict line."""

    def __init__(self, number, label, budget_seconds):
        self.number = number
        self.label = label
        self.budget = budget_seconds

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.perf_counter() - self.start
        status = "PASS" if exc_type is None and elapsed < self.budget else "FAIL"
        print(f"criterion {self.number} [{self.label}]: {status} ({elapsed:.2f}s)")
        if exc_type is None:
            assert elapsed < self.budget, (
                f"criterion {self.number} exceeded {self.budget}s budget: {elapsed:.2f}s"
            )
        return False


def _random_scenario(rng):
    while True:
        pts = rng.uniform(-2.0, 2.0, size=(4, 3))
        gaps = [
            np.linalg.norm(pts[i] - pts[j]) for i in range(4) for j in range(i + 1, 4)
        ]
        if min(gaps) > 0.4:
            break
    return BmvScenario(
        mass=rng.uniform(0.5, 2.0),
        tau=rng.uniform(0.1, 3.0),
        l1=pts[0],
        u1=pts[1],
        l2=pts[2],
        u2=pts[3],
    )


def _table_from_delta(delta_phi):
    return PhaseTable(phi_ll=delta_phi, phi_lu=0.0, phi_ul=0.0, phi_uu=0.0)


def test_criterion_1_boost_model_discrimination():
    with _Gate(1, "frame discrimination", 1.0):
        grid = np.linspace(0.0, 0.3, 30)
        gamma4 = (1.0 - grid**2) ** -2.0

        scalar = invariance_residual_scan(grid, QuantizationModel.SCALAR_ONLY)
        assert np.allclose(scalar[:, 1], gamma4 - 1.0, rtol=0.0, atol=1e-10)
        assert np.all(scalar[:, 1] >= 2.0 * grid**2 - 1e-15)

        vector = invariance_residual_scan(grid, QuantizationModel.SCALAR_PLUS_VECTOR)
        assert np.allclose(
            vector[:, 1], gamma4 * (1.0 - 2.0 * grid**2) - 1.0, rtol=0.0, atol=1e-10
        )
        assert np.all(np.abs(vector[:, 1]) <= 2.0 * grid**4 + 1e-15)


def test_criterion_2_potential_vs_action_integral_phases():
    with _Gate(2, "phase method equivalence", 5.0):
        rng = np.random.default_rng(20260817)
        for _ in range(100):
            s = _random_scenario(rng)
            direct = phase_table(s, PhaseMethod.NEWTONIAN)
            integrated = phase_table(s, PhaseMethod.ACTION_INTEGRAL)
            for pair, value in direct.as_dict().items():
                assert math.isclose(
                    integrated.as_dict()[pair], value, rel_tol=1e-9
                ), f"pair {pair}: {integrated.as_dict()[pair]} vs {value}"


def test_criterion_3_uniform_dilation_scales_phases_by_inverse_gamma():
    with _Gate(3, "dilation phase factor", 1.0):
        s = BmvScenario.from_separations(mass=1.0, tau=1.0, d1=1.0, d2=1.5)
        rest = phase_table(s, PhaseMethod.NEWTONIAN)
        for gamma in (1.0, 1.25, 2.0, 5.0):
            out = bell_paradox_phase(s, gamma)
            inv = 1.0 / gamma
            for pair, value in rest.as_dict().items():
                assert out.table.as_dict()[pair] == value * inv

        # shrinking the relative phase can never create entanglement
        for gamma in (1.0, 1.25, 2.0, 5.0):
            for delta in np.linspace(1e-3, math.pi, 64):
                before = negativity(assemble_state(_table_from_delta(delta)))
                after = negativity(
                    assemble_state(_table_from_delta(delta).scaled(1.0 / gamma))
                )
                assert after <= before + 1e-15


def test_criterion_4_negativity_closed_form_and_local_phase_invariance():
    with _Gate(4, "entanglement closed form", 5.0):
        rng = np.random.default_rng(4)
        for delta in rng.uniform(-4.0 * math.pi, 4.0 * math.pi, 1000):
            numeric = negativity(assemble_state(_table_from_delta(delta)))
            closed = 0.5 * abs(math.sin(0.5 * delta))
            assert abs(numeric - closed) <= 1e-10

        for _ in range(1000):
            base = _table_from_delta(rng.uniform(-math.pi, math.pi))
            a1, b1, a2, b2 = rng.uniform(-10.0, 10.0, 4)
            shifted = PhaseTable(
                phi_ll=base.phi_ll + a1 + a2,
                phi_lu=base.phi_lu + a1 + b2,
                phi_ul=base.phi_ul + b1 + a2,
                phi_uu=base.phi_uu + b1 + b2,
            )
            n0 = negativity(assemble_state(base))
            n1 = negativity(assemble_state(shifted))
            assert abs(n0 - n1) <= 1e-12


def test_criterion_5_truncated_mediator_matches_displacement_oracle():
    with _Gate(5, "mediator quantumness", 60.0):
        positions = (0.9, 2.1, 0.0, 0.6)
        constants = PhysicalConstants()
        modes = ModeSet.from_wavenumbers([1.0], 640.0, 1.0, constants)
        cfg = TruncatedHilbertConfig(fock_cutoff=12, mode_count=1)
        H = build_hamiltonian(modes, positions, cfg, constants)
        psi0 = branch_vacuum_state(cfg)

        t_rec = 2.0 * math.pi / float(modes.frequencies[0])
        rho = reduced_mass_state(evolve(psi0, H, t_rec, constants))
        oracle = conditional_displacement_oracle(modes, positions, t_rec)
        assert trace_distance(rho, oracle.density_matrix) <= 1e-8

        report = commutator_check(modes, cfg)
        assert report.number_displacement_norm > 0.0

        # decoupled control: with gravity off the masses never entangle
        off = PhysicalConstants(G=1e-300, c=1.0, hbar=1.0)
        modes_off = ModeSet.from_wavenumbers([1.0], 640.0, 1.0, off)
        H_off = build_hamiltonian(modes_off, positions, cfg, off)
        for t in np.linspace(0.0, t_rec, 9):
            rho_off = reduced_mass_state(evolve(psi0, H_off, float(t), off))
            assert negativity_of_density_matrix(rho_off) <= 1e-12


def test_criterion_6_field_solver_oracles():
    with _Gate(6, "field solver oracles", 5.0):
        constants = PhysicalConstants()
        source = static_mass(2.0, [0.0, 0.0, 0.0])
        for r in np.geomspace(0.1, 10.0, 40):
            field = hbar_field([source], np.array([r, 0.0, 0.0]), 50.0, constants)
            expected = 4.0 * constants.G * 2.0 / (constants.c**2 * r)
            assert math.isclose(field.components[0, 0], expected, rel_tol=1e-10)

        rng = np.random.default_rng(6)
        for _ in range(100):
            x0 = rng.uniform(-3.0, 3.0, 3)
            v = rng.uniform(-0.6, 0.6, 3)
            if np.linalg.norm(v) >= 0.95:
                continue
            w = SampledWorldline.uniform(x0, v, t_start=-200.0, t_end=200.0)
            x = rng.uniform(-3.0, 3.0, 3)
            t = rng.uniform(-5.0, 5.0)

            # closed form: |x - x0 - v s| = c (t - s), smaller root in s
            d = x - x0
            a = v @ v - 1.0
            b = -2.0 * (d @ v - t)
            q = d @ d - t * t
            disc = b * b - 4.0 * a * q
            s_exact = (-b + math.sqrt(disc)) / (2.0 * a)

            s_solved = solve_retarded_time(
                x, t, PointMassTrajectory(1.0, w), constants
            )
            assert abs(s_solved - s_exact) <= 1e-10 * max(1.0, abs(s_exact))

        # future edits to the worldline cannot change the field bit for bit
        rng = np.random.default_rng(66)
        times = np.linspace(-40.0, 40.0, 201)
        checked = 0
        while checked < 10:
            steps = rng.uniform(-0.2, 0.2, size=(201, 3))
            steps[0] = 0.0
            positions = np.cumsum(steps, axis=0)
            w0 = SampledWorldline(times, positions)
            x = rng.normal(size=3) * 6.0
            t = rng.uniform(-8.0, 8.0)
            src = PointMassTrajectory(1.0, w0)
            t_r = solve_retarded_time(x, t, src, constants)
            first_future = int(np.searchsorted(times, t_r, side="right"))
            if first_future + 2 >= times.size:
                continue
            perturbed = positions.copy()
            for k in range(first_future + 1, times.size):
                room = 0.9 * (times[k] - times[k - 1])
                direction = rng.normal(size=3)
                direction /= np.linalg.norm(direction)
                perturbed[k] = perturbed[k - 1] + rng.uniform(0, room) * direction
            alt = PointMassTrajectory(1.0, SampledWorldline(times, perturbed))
            assert solve_retarded_time(x, t, alt, constants) == t_r
            f0 = hbar_field([src], x, t, constants).components
            f1 = hbar_field([alt], x, t, constants).components
            assert np.array_equal(f0, f1)
            checked += 1


def test_criterion_7_tensor_kernel_properties():
    with _Gate(7, "tensor kernel", 10.0):
        rng = np.random.default_rng(7)

        for _ in range(1000):
            beta = rng.uniform(-0.8, 0.8, 3)
            if np.linalg.norm(beta) >= 0.95:
                continue
            L = boost(beta).matrix
            assert np.abs(L.T @ MINKOWSKI_METRIC @ L - MINKOWSKI_METRIC).max() <= 1e-10

        for _ in range(1000):
            b1 = rng.uniform(-0.9, 0.9)
            b2 = rng.uniform(-0.9, 0.9)
            combined = boost([(b1 + b2) / (1.0 + b1 * b2), 0.0, 0.0]).matrix
            chained = boost([b2, 0.0, 0.0]).matrix @ boost([b1, 0.0, 0.0]).matrix
            assert np.abs(combined - chained).max() <= 1e-10

        for _ in range(1000):
            raw = rng.normal(0.0, 1.0, (4, 4))
            h = Rank2Tensor.symmetric(raw + raw.T, Variance.COVARIANT)
            twice = trace_reverse(trace_reverse(h))
            assert np.abs(twice.components - h.components).max() <= 1e-12

        for _ in range(1000):
            beta = rng.uniform(-0.5, 0.5, 3)
            raw_h = rng.normal(0.0, 1.0, (4, 4))
            raw_T = rng.normal(0.0, 1.0, (4, 4))
            h = Rank2Tensor.symmetric(raw_h + raw_h.T, Variance.COVARIANT)
            T = Rank2Tensor.symmetric(raw_T + raw_T.T, Variance.CONTRAVARIANT)
            Lam = boost(beta)
            before = lorentz_scalar(h, T)
            after = lorentz_scalar(
                transform_rank2(h, Lam), transform_rank2(T, Lam)
            )
            assert abs(after - before) <= 1e-10 * max(1.0, abs(before))
