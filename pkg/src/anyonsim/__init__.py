"""Simulator for SU(2) level-4 anyons and measurement-assisted braiding protocols."""
from .errors import (
    AdmissibilityError,
    AnyonSimError,
    DomainError,
    LeakageError,
    ScriptError,
    ShapeError,
    TerminationError,
)
from .fusionspace import QUTRITS, AnyonState, FusionPath, LogicalEncoding, enumerate_basis
from .recoupling import f_matrix, f_symbol, r_symbol, sixj, theta, tet

__version__ = "0.1.0"
