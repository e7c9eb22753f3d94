"""Branch phases by both routes, state assembly and entanglement measures."""

import numpy as np
import pytest

from gravlink.bmv import (
    BmvScenario,
    PhaseMethod,
    PhaseTable,
    TwoQubitState,
    assemble_state,
    entanglement_entropy,
    negativity,
    negativity_of_density_matrix,
    newtonian_phase,
    phase_table,
)
from gravlink.errors import ContractError, DomainError
from gravlink.tensors import PhysicalConstants

NAT = PhysicalConstants()


def random_scenario(rng, tau=None):
    while True:
        points = rng.normal(size=(4, 3)) * 2.0
        distances = [
            np.linalg.norm(points[i] - points[j]) for i in range(4) for j in range(i + 1, 4)
        ]
        if min(distances) > 0.3:
            break
    return BmvScenario(
        mass=rng.uniform(0.5, 2.0),
        tau=rng.uniform(0.1, 3.0) if tau is None else tau,
        l1=points[0],
        u1=points[1],
        l2=points[2],
        u2=points[3],
    )


def table_from_delta(delta, rng=None):
    if rng is None:
        return PhaseTable(delta, 0.0, 0.0, 0.0)
    base = rng.uniform(-np.pi, np.pi, size=3)
    return PhaseTable(base[0], base[1], base[2], delta - base[0] + base[1] + base[2])


# ------------------------------------------------------------ newtonian form


def test_newtonian_phase_unit_values():
    assert newtonian_phase(1.0, 1.0, 1.0, 1.0, NAT) == 1.0


def test_newtonian_phase_zero_tau():
    assert newtonian_phase(1.0, 1.0, 0.0, 2.0, NAT) == 0.0


def test_newtonian_phase_inverse_distance():
    phi = newtonian_phase(1.0, 1.0, 1.0, 1.5, NAT)
    assert newtonian_phase(1.0, 1.0, 1.0, 3.0, NAT) == phi / 2.0


def test_newtonian_phase_rejects_bad_inputs():
    with pytest.raises(DomainError):
        newtonian_phase(1.0, 1.0, 1.0, 0.0, NAT)
    with pytest.raises(DomainError):
        newtonian_phase(1.0, 1.0, 1.0, -1.0, NAT)
    with pytest.raises(DomainError):
        newtonian_phase(1.0, 1.0, -0.5, 1.0, NAT)


# ------------------------------------------------------------------ geometry


def test_separation_constructor_layout():
    s = BmvScenario.from_separations(1.0, 1.0, d1=1.0, d2=1.5)
    d = s.cross_distances()
    assert d["ll"] == pytest.approx(1.0)
    assert d["ul"] == pytest.approx(1.5)
    assert d["uu"] == pytest.approx(1.0)
    assert d["lu"] == pytest.approx(0.5)  # |2 d1 - d2|


def test_separation_constructor_rejects_degenerate():
    for d1, d2 in ((1.0, 1.0), (1.0, 2.0), (0.0, 1.5), (1.0, -0.5)):
        with pytest.raises(DomainError):
            BmvScenario.from_separations(1.0, 1.0, d1, d2)


def test_scenario_rejects_coincident_positions():
    with pytest.raises(DomainError):
        BmvScenario(1.0, 1.0, [0, 0, 0], [1, 0, 0], [0, 0, 0], [2, 0, 0])


def test_scenario_rejects_negative_tau():
    with pytest.raises(DomainError):
        BmvScenario(1.0, -1.0, [0, 0, 0], [1, 0, 0], [2, 0, 0], [3, 0, 0])


# --------------------------------------------------------------- phase table


def test_phase_table_newtonian_from_separations():
    s = BmvScenario.from_separations(1.0, 1.0, d1=1.0, d2=1.5)
    p = phase_table(s, PhaseMethod.NEWTONIAN)
    assert p.phi_ll == pytest.approx(1.0)
    assert p.phi_ul == pytest.approx(1.0 / 1.5)
    assert p.phi_uu == pytest.approx(1.0)
    assert p.phi_lu == pytest.approx(2.0)


def test_action_integral_agrees_with_newtonian():
    rng = np.random.default_rng(53)
    for _ in range(100):
        s = random_scenario(rng)
        newt = phase_table(s, PhaseMethod.NEWTONIAN)
        act = phase_table(s, PhaseMethod.ACTION_INTEGRAL)
        for pair in ("ll", "lu", "ul", "uu"):
            a = newt.as_dict()[pair]
            b = act.as_dict()[pair]
            assert abs(a - b) < 1e-9 * abs(a)


def test_action_integral_agrees_in_si_units():
    si = PhysicalConstants.si()
    s = BmvScenario.from_separations(1e-14, 2.5, d1=4.5e-4, d2=7e-4, constants=si)
    newt = phase_table(s, PhaseMethod.NEWTONIAN)
    act = phase_table(s, PhaseMethod.ACTION_INTEGRAL)
    for pair in ("ll", "lu", "ul", "uu"):
        assert act.as_dict()[pair] == pytest.approx(newt.as_dict()[pair], rel=1e-9)


def test_equidistant_geometry_gives_equal_phases():
    # regular tetrahedron: every cross distance is 2, so all four joint
    # branches pick up the same phase and delta_phi vanishes
    t = 1.0 / np.sqrt(2.0)
    s = BmvScenario(
        1.3,
        0.7,
        l1=[1.0, 0.0, -t],
        u1=[-1.0, 0.0, -t],
        l2=[0.0, 1.0, t],
        u2=[0.0, -1.0, t],
    )
    assert max(s.cross_distances().values()) - min(s.cross_distances().values()) < 1e-15
    for method in PhaseMethod:
        p = phase_table(s, method)
        values = list(p.as_dict().values())
        assert np.ptp(values) < 1e-9 * abs(values[0])
        assert abs(p.delta_phi) < 1e-9 * abs(values[0])


def test_zero_mass_gives_zero_phases():
    s = BmvScenario(0.0, 1.0, [0, 0, 0], [1, 0, 0], [0, 1, 0], [1, 1, 0])
    for method in PhaseMethod:
        assert all(v == 0.0 for v in phase_table(s, method).as_dict().values())


def test_phase_scaling_in_tau_and_mass():
    # power-of-two factors commute with rounding, so the Newtonian route
    # scales exactly; the action route is held to 1e-10 relative
    rng = np.random.default_rng(59)
    base = random_scenario(rng, tau=1.0)
    doubled_tau = BmvScenario(base.mass, 2.0, base.l1, base.u1, base.l2, base.u2)
    doubled_mass = BmvScenario(2.0 * base.mass, 1.0, base.l1, base.u1, base.l2, base.u2)
    for method, rel in ((PhaseMethod.NEWTONIAN, 0.0), (PhaseMethod.ACTION_INTEGRAL, 1e-10)):
        p0 = phase_table(base, method)
        p_tau = phase_table(doubled_tau, method)
        p_m = phase_table(doubled_mass, method)
        for pair in ("ll", "lu", "ul", "uu"):
            v = p0.as_dict()[pair]
            assert abs(p_tau.as_dict()[pair] - 2.0 * v) <= rel * abs(v)
            assert abs(p_m.as_dict()[pair] - 4.0 * v) <= rel * abs(v)


def test_phase_table_accepts_string_method():
    s = BmvScenario.from_separations(1.0, 1.0, 1.0, 1.5)
    assert phase_table(s, "newtonian") == phase_table(s, PhaseMethod.NEWTONIAN)


# ------------------------------------------------------------ state assembly


def test_assemble_zero_phases_is_product_state():
    state = assemble_state(PhaseTable(0.0, 0.0, 0.0, 0.0))
    assert np.abs(state.amplitudes - 0.5 * np.ones(4)).max() < 1e-15
    assert negativity(state) < 1e-14  # eigvalsh noise on an exactly PPT state
    assert entanglement_entropy(state) < 1e-12


def test_assemble_pi_phase_golden():
    state = assemble_state(PhaseTable(np.pi, 0.0, 0.0, 0.0))
    expected = 0.5 * np.array([-1.0, 1.0, 1.0, 1.0], dtype=complex)
    assert np.abs(state.amplitudes - expected).max() < 1e-15


def test_assembled_states_are_normalized():
    rng = np.random.default_rng(61)
    for _ in range(200):
        p = PhaseTable(*rng.uniform(-10, 10, size=4))
        state = assemble_state(p)
        assert abs(np.linalg.norm(state.amplitudes) - 1.0) < 1e-15


def test_state_norm_enforced():
    with pytest.raises(ContractError):
        TwoQubitState(np.array([1.0, 1.0, 0.0, 0.0]))
    with pytest.raises(ContractError):
        TwoQubitState(np.ones(3))


# ------------------------------------------------------- entanglement measures


def test_negativity_maximal_at_pi():
    state = assemble_state(table_from_delta(np.pi))
    assert negativity(state) == pytest.approx(0.5, abs=1e-12)
    assert entanglement_entropy(state) == pytest.approx(1.0, abs=1e-12)


def test_negativity_closed_form_over_delta_grid():
    # brute-force partial transpose against |sin(delta/2)| / 2
    rng = np.random.default_rng(67)
    for delta in np.linspace(0.0, 2.0 * np.pi, 1000):
        state = assemble_state(table_from_delta(delta, rng))
        assert abs(negativity(state) - 0.5 * abs(np.sin(0.5 * delta))) < 1e-10


def test_measures_depend_only_on_delta_phi():
    # local offsets alpha_x on mass 1 and beta_y on mass 2 shift every phase
    # but cancel in delta_phi; both measures must not move
    rng = np.random.default_rng(71)
    for _ in range(100):
        p = PhaseTable(*rng.uniform(-np.pi, np.pi, size=4))
        a_l, a_u, b_l, b_u = rng.uniform(-5, 5, size=4)
        shifted = PhaseTable(
            p.phi_ll + a_l + b_l,
            p.phi_lu + a_l + b_u,
            p.phi_ul + a_u + b_l,
            p.phi_uu + a_u + b_u,
        )
        assert abs(shifted.delta_phi - p.delta_phi) < 1e-12
        s0, s1 = assemble_state(p), assemble_state(shifted)
        assert abs(negativity(s0) - negativity(s1)) < 1e-12
        assert abs(entanglement_entropy(s0) - entanglement_entropy(s1)) < 1e-12


def test_entropy_monotone_in_sin_half_delta():
    deltas = np.linspace(0.0, np.pi, 200)
    entropies = [entanglement_entropy(assemble_state(table_from_delta(d))) for d in deltas]
    assert all(b >= a - 1e-12 for a, b in zip(entropies, entropies[1:]))
    assert entropies[0] < 1e-12
    assert entropies[-1] == pytest.approx(1.0, abs=1e-12)


def test_negativity_range():
    rng = np.random.default_rng(73)
    for _ in range(300):
        state = assemble_state(PhaseTable(*rng.uniform(-20, 20, size=4)))
        n = negativity(state)
        assert -1e-15 <= n <= 0.5 + 1e-12


def test_density_matrix_negativity_matches_pure_state_measure():
    rng = np.random.default_rng(79)
    for _ in range(100):
        state = assemble_state(PhaseTable(*rng.uniform(-np.pi, np.pi, size=4)))
        rho = state.density_matrix()
        assert abs(negativity_of_density_matrix(rho) - negativity(state)) < 1e-12


def test_density_matrix_negativity_validates_input():
    with pytest.raises(ContractError):
        negativity_of_density_matrix(np.eye(4))  # trace 4
    bad = np.eye(4) / 4.0
    bad[0, 1] = 0.3
    with pytest.raises(ContractError):
        negativity_of_density_matrix(bad)
    with pytest.raises(ContractError):
        negativity_of_density_matrix(np.eye(3) / 3.0)


def test_separable_mixture_has_zero_negativity():
    # classically correlated diagonal mixture stays PPT
    rho = np.diag([0.4, 0.1, 0.2, 0.3]).astype(complex)
    assert negativity_of_density_matrix(rho) == 0.0
