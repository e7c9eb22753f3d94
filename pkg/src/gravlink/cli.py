"""Command-line drivers: phase, boost-scan, bell, modesum.

Reports are JSON on stdout, scan tables CSV (stdout or ``--out``).  Output
is deterministic byte for byte for a given config and flags: no wall clock,
no randomness, and every float printed with 17 significant digits so that
equality of files means equality of results.

Exit codes: 0 success, 2 config or usage error, 3 resource budget exceeded,
4 numerical non-convergence.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from gravlink.bmv import (
    PhaseMethod,
    assemble_state,
    entanglement_entropy,
    negativity,
    phase_table,
)
from gravlink.config import ScenarioConfig, load_config
from gravlink.errors import (
    BudgetError,
    ConfigError,
    ConvergenceError,
    GravlinkError,
)
from gravlink.frames import (
    DEFAULT_SCAN_ORDER,
    QuantizationModel,
    bell_paradox_phase,
    phase_in_frame,
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

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_BUDGET = 3
EXIT_NUMERICAL = 4

MODEL_FLAGS = {
    "scalar": QuantizationModel.SCALAR_ONLY,
    "full": QuantizationModel.SCALAR_PLUS_VECTOR,
}


def _format_float(value: float) -> str:
    if value != value:
        return "NaN"
    return "%.17g" % value


def _to_json(value, indent: int = 0) -> str:
    # hand-rolled so that float formatting is uniform 17 significant digits;
    # the stdlib encoder offers no hook for that
    pad = "  " * indent
    inner = "  " * (indent + 1)
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = ",\n".join(
            f'{inner}"{key}": {_to_json(item, indent + 1)}' for key, item in value.items()
        )
        return "{\n" + items + "\n" + pad + "}"
    if isinstance(value, (list, tuple)):
        if not value:
            return "[]"
        items = ", ".join(_to_json(item, indent + 1) for item in value)
        return "[" + items + "]"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return _format_float(float(value))
    if isinstance(value, str):
        return '"' + value.replace("\\", "\\\\").replace('"', '\\"') + '"'
    if value is None:
        return "null"
    raise TypeError(f"cannot serialize {type(value).__name__}")


def _emit_json(document: dict, stream) -> None:
    stream.write(_to_json(document) + "\n")


def _table_json(table) -> dict:
    return {pair: value for pair, value in table.as_dict().items()}


def _geometry_echo(cfg: ScenarioConfig) -> dict:
    s = cfg.scenario
    return {
        "mode": "positions",
        "positions": {
            name: [float(v) for v in getattr(s, name)] for name in ("l1", "u1", "l2", "u2")
        },
    }


def _constants_echo(cfg: ScenarioConfig) -> dict:
    return {"G": cfg.constants.G, "c": cfg.constants.c, "hbar": cfg.constants.hbar}


def cmd_phase(args) -> int:
    cfg = load_config(args.config)
    method = PhaseMethod.NEWTONIAN if args.method == "newtonian" else PhaseMethod.ACTION_INTEGRAL
    table = phase_table(cfg.scenario, method)
    state = assemble_state(table)
    report = {
        "command": "phase",
        "method": method.value,
        "constants": _constants_echo(cfg),
        "mass": cfg.mass,
        "tau": cfg.tau,
        "geometry": _geometry_echo(cfg),
        "cross_distances": cfg.scenario.cross_distances(),
        "phases": _table_json(table),
        "delta_phi": table.delta_phi,
        "negativity": negativity(state),
        "entanglement_entropy": entanglement_entropy(state),
    }
    _emit_json(report, sys.stdout)
    return EXIT_OK


def cmd_boost_scan(args) -> int:
    cfg = load_config(args.config)
    beta_max = args.beta_max
    if beta_max is None:
        beta_max = cfg.boost.beta if cfg.boost is not None else 0.3
    if not 0.0 <= beta_max < 1.0:
        raise ConfigError(f"--beta-max must be in [0, 1), got {beta_max}")
    if args.steps < 1:
        raise ConfigError(f"--steps must be at least 1, got {args.steps}")
    if args.model is not None:
        model = MODEL_FLAGS[args.model]
    elif cfg.boost is not None:
        model = cfg.boost.model
    else:
        model = QuantizationModel.SCALAR_PLUS_VECTOR

    rest_table = phase_table(cfg.scenario, PhaseMethod.NEWTONIAN)
    lines = ["beta,phase_factor,residual,negativity"]
    for beta in np.linspace(0.0, beta_max, args.steps):
        result = phase_in_frame(1.0, float(beta), model, DEFAULT_SCAN_ORDER)
        factor = result.phase_value
        boosted = rest_table.scaled(factor)
        row_negativity = negativity(assemble_state(boosted))
        lines.append(
            ",".join(
                _format_float(v) for v in (beta, factor, result.residual, row_negativity)
            )
        )
    text = "\n".join(lines) + "\n"
    if args.out is None:
        sys.stdout.write(text)
    else:
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(text)
    return EXIT_OK


def cmd_bell(args) -> int:
    cfg = load_config(args.config)
    if args.gamma is not None:
        gamma = args.gamma
    elif cfg.bell is not None:
        gamma = cfg.bell.gamma_final
    else:
        raise ConfigError("bell command needs a 'bell' config section or --gamma")
    if gamma < 1.0:
        raise ConfigError(f"gamma must be at least 1, got {gamma}")

    rest_table = phase_table(cfg.scenario, PhaseMethod.NEWTONIAN)
    out = bell_paradox_phase(cfg.scenario, gamma)
    rest_negativity = negativity(assemble_state(rest_table))
    stretched_negativity = negativity(assemble_state(out.table))
    ratio = out.table.delta_phi / rest_table.delta_phi if rest_table.delta_phi != 0.0 else None
    report = {
        "command": "bell",
        "gamma": gamma,
        "rest": {
            "phases": _table_json(rest_table),
            "delta_phi": rest_table.delta_phi,
            "negativity": rest_negativity,
            "cross_distances": cfg.scenario.cross_distances(),
        },
        "stretched": {
            "phases": _table_json(out.table),
            "delta_phi": out.table.delta_phi,
            "negativity": stretched_negativity,
            "cross_distances": out.scenario.cross_distances(),
        },
        "delta_phi_ratio": ratio,
    }
    _emit_json(report, sys.stdout)
    return EXIT_OK


def cmd_modesum(args) -> int:
    cfg = load_config(args.config)
    if cfg.modesum is None:
        raise ConfigError("modesum command needs a 'modesum' config section")
    ms = cfg.modesum
    modes = ModeSet.from_wavenumbers(
        ms.wavenumbers, ms.volume, cfg.mass, cfg.constants
    )
    hilbert = TruncatedHilbertConfig(
        fock_cutoff=ms.fock_cutoff, mode_count=len(ms.wavenumbers)
    )
    # the mode sum is one-dimensional: arms enter via their coordinate
    # along the mode axis (the x components of the scenario geometry)
    s = cfg.scenario
    positions = (s.l1[0], s.u1[0], s.l2[0], s.u2[0])
    H = build_hamiltonian(modes, positions, hilbert, cfg.constants)
    hermiticity_defect = float(np.abs(H - H.conj().T).max())
    psi0 = branch_vacuum_state(hilbert)

    t_end = 2.0 * np.pi / float(modes.frequencies.min())
    samples = []
    for t in np.linspace(0.0, t_end, args.samples):
        t = float(t)
        rho = reduced_mass_state(evolve(psi0, H, t, cfg.constants))
        oracle = conditional_displacement_oracle(modes, positions, t)
        samples.append(
            {
                "t": t,
                "negativity": negativity_of_density_matrix(rho),
                "trace_distance_to_oracle": trace_distance(rho, oracle.density_matrix),
                "overlap_deficit": oracle.residual_overlap_deficit,
            }
        )
    recurrence_oracle = conditional_displacement_oracle(modes, positions, t_end)
    rho_end = reduced_mass_state(evolve(psi0, H, t_end, cfg.constants))
    commutators = commutator_check(modes, hilbert)
    report = {
        "command": "modesum",
        "dimension": hilbert.dimension,
        "hermiticity_defect": hermiticity_defect,
        "mode_axis_positions": {
            "l1": positions[0],
            "u1": positions[1],
            "l2": positions[2],
            "u2": positions[3],
        },
        "samples": samples,
        "recurrence": {
            "t": t_end,
            "trace_distance_to_oracle": trace_distance(
                rho_end, recurrence_oracle.density_matrix
            ),
            "negativity_numeric": negativity_of_density_matrix(rho_end),
            "negativity_from_oracle_table": negativity(
                assemble_state(recurrence_oracle.table)
            ),
            "oracle_phases": _table_json(recurrence_oracle.table),
        },
        "commutators": {
            "number_displacement_norm": commutators.number_displacement_norm,
            "number_displacement_vs_ladder_difference": (
                commutators.number_displacement_vs_ladder_difference
            ),
            "canonical_defect_below_cutoff": commutators.canonical_defect_below_cutoff,
            "cross_mode_commutator_norm": commutators.cross_mode_commutator_norm,
        },
    }
    _emit_json(report, sys.stdout)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gravlink",
        description="Branch phases, frame transformations and entanglement "
        "measures for gravitationally mediated interferometry.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_phase = sub.add_parser("phase", help="branch phases and entanglement at rest")
    p_phase.add_argument("--config", required=True)
    p_phase.add_argument(
        "--method", choices=("newtonian", "action"), default="newtonian"
    )
    p_phase.set_defaults(func=cmd_phase)

    p_scan = sub.add_parser("boost-scan", help="phase factor and residual over a velocity grid")
    p_scan.add_argument("--config", required=True)
    p_scan.add_argument("--beta-max", type=float, default=None)
    p_scan.add_argument("--steps", type=int, default=30)
    p_scan.add_argument("--model", choices=tuple(MODEL_FLAGS), default=None)
    p_scan.add_argument("--out", default=None, help="CSV destination (default stdout)")
    p_scan.set_defaults(func=cmd_boost_scan)

    p_bell = sub.add_parser("bell", help="rigid-acceleration stretch of the scenario")
    p_bell.add_argument("--config", required=True)
    p_bell.add_argument("--gamma", type=float, default=None)
    p_bell.set_defaults(func=cmd_bell)

    p_modes = sub.add_parser("modesum", help="truncated mediator model vs oracle")
    p_modes.add_argument("--config", required=True)
    p_modes.add_argument("--samples", type=int, default=9)
    p_modes.set_defaults(func=cmd_modesum)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except BudgetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except ConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except GravlinkError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
