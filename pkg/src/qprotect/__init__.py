"""qprotect: density-matrix simulation of unitary pre/post-processing
protection of a multi-qubit state against identical single-qubit decoherence.
"""

from .channels import (
    ChannelKind,
    KrausChannel,
    apply_channel_to_qubit,
    apply_product_channel,
    choi_matrix,
    make_channel,
)
from .circuits import (
    CircuitDef,
    collective_rotation,
    compile_circuit,
    input_state,
    prep_circuit,
    transversal_hadamard,
    transversal_x,
)
from .estimation import (
    FidelityEstimate,
    Mode,
    fidelity_exact,
    fidelity_sampled,
    hash64,
    point_seed,
    sample_outcomes,
)
from .linalg import (
    DensityMatrix,
    GateKind,
    GateSpec,
    StateVector,
    ValidationError,
    apply_unitary,
    embed_gate,
    min_eigenvalue,
    pure_fidelity,
    tensor,
)
from .optimize import CalibrationResult, CalibrationSample, XiOptimum, calibrate_xi, optimize_xi
from .schemes import Scheme, SchemeInstance, resolve_scheme, run_protected
from .sweep import (
    FidelityCurve,
    SweepConfig,
    SweepPoint,
    TOOL_VERSION,
    curves_to_csv,
    curves_to_json,
    read_csv_rows,
    read_json_curves,
    run_sweep,
    serialize_curves,
)
from .validate import CheckResult, run_all_checks

__version__ = TOOL_VERSION

__all__ = [
    "CalibrationResult",
    "CalibrationSample",
    "ChannelKind",
    "CheckResult",
    "CircuitDef",
    "DensityMatrix",
    "FidelityCurve",
    "FidelityEstimate",
    "GateKind",
    "GateSpec",
    "KrausChannel",
    "Mode",
    "Scheme",
    "SchemeInstance",
    "StateVector",
    "SweepConfig",
    "SweepPoint",
    "ValidationError",
    "XiOptimum",
    "apply_channel_to_qubit",
    "apply_product_channel",
    "apply_unitary",
    "calibrate_xi",
    "choi_matrix",
    "collective_rotation",
    "compile_circuit",
    "curves_to_csv",
    "curves_to_json",
    "embed_gate",
    "fidelity_exact",
    "fidelity_sampled",
    "hash64",
    "input_state",
    "make_channel",
    "min_eigenvalue",
    "optimize_xi",
    "point_seed",
    "prep_circuit",
    "pure_fidelity",
    "read_csv_rows",
    "read_json_curves",
    "resolve_scheme",
    "run_all_checks",
    "run_protected",
    "run_sweep",
    "sample_outcomes",
    "serialize_curves",
    "tensor",
    "transversal_hadamard",
    "transversal_x",
]
