"""Protocol scripts, executors, gate extraction and the recovery loop."""
from .calibrate import CalibrationReport, Candidate, calibrate_script, evaluate
from .executor import (
    BranchMap,
    branch_maps,
    execute_branches,
    execute_sampled,
    extract_gate,
    fusion_weights,
    recovery_twists,
)
from .gates import (
    D_GATE,
    GATE1,
    GATE2,
    IDENTITY,
    LOGICAL_BASIS,
    OMEGA,
    T_GATE,
    ExactMatrix,
    GateMatrix,
    PaperGates,
    compare_projective,
    entangling_rank,
    is_product_vector,
    logical_vector,
    parse_logical_label,
    projective_distance,
    recovery_identities,
)
from .library import CALIBRATED, ScriptParams, default_grid, default_script, empty_script, recovery_script
from .recovery import RecoveryPath, run_recovery_algorithm, unterminated_weight_by_depth
from .script import ProtocolScript, check, load_script, parse_script, validate

__all__ = [name for name in dir() if not name.startswith("_")]
