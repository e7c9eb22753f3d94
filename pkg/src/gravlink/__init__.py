"""Gravitationally induced entanglement toolkit for the linear weak-field regime.

Subpackage map:

* ``tensors``   - Minkowski tensor algebra (boosts, trace reversal, index care).
* ``series``    - truncated power series in the velocity ratio beta.
* ``retarded``  - retarded-potential solvers for gravitating point masses and
  their electromagnetic structural twin.
* ``bmv``       - the two-interferometer experiment: branch phases, two-qubit
  state assembly and entanglement measures.
* ``frames``    - boosted and accelerated observers, scalar-only versus
  scalar+vector quantization hypotheses.
* ``modesum``   - explicitly quantum mediator on a truncated Fock space.
* ``cli``       - the ``gravlink`` command line front end.
"""

from gravlink.bmv import (
    BmvScenario,
    PhaseMethod,
    PhaseTable,
    assemble_state,
    entanglement_entropy,
    negativity,
    phase_table,
)
from gravlink.frames import (
    QuantizationModel,
    bell_paradox_phase,
    invariance_residual_scan,
    phase_in_frame,
)
from gravlink.tensors import (
    LorentzTransform,
    PhysicalConstants,
    Rank2Tensor,
    Variance,
    boost,
    trace_reverse,
    transform_rank2,
)

__all__ = [
    "BmvScenario",
    "LorentzTransform",
    "PhaseMethod",
    "PhaseTable",
    "PhysicalConstants",
    "QuantizationModel",
    "Rank2Tensor",
    "Variance",
    "assemble_state",
    "bell_paradox_phase",
    "boost",
    "entanglement_entropy",
    "invariance_residual_scan",
    "negativity",
    "phase_in_frame",
    "phase_table",
    "trace_reverse",
    "transform_rank2",
]

__version__ = "0.1.0"
