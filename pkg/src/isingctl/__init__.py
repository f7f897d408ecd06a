"""Global-control GHZ and W state preparation on the all-to-all Ising model."""

from .simcore import (
    ContractViolation,
    Pulse,
    PulseSequence,
    StateVector,
    apply_global_rotation,
    apply_pulse,
    apply_sequence,
    apply_zz,
    fidelity,
    ghz_state,
    ising_eigenvalue,
    spin_up_count,
    w_state,
    zero_state,
)
from .symmetry import (
    boundary_states,
    dicke_basis,
    evolve_symmetric,
    parity_sector,
    symmetric_hams,
)
from .analytic import ghz_sequence, global_z_decomposition, w3_sequence, w4_sequence
from .wsearch import Ansatz, OptimizationConfig, min_params_scan, objective, optimize
from .control import commutant_dimension, connectivity_report

__version__ = "0.1.0"
