"""Exhaustive search over the free conventions of the entangling protocol."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import AnyonSimError, DomainError
from .executor import extract_gate, fusion_weights
from .gates import GATE1, GATE2, projective_distance
from .library import ScriptParams, default_grid, default_script
from .script import ProtocolScript


@dataclass(frozen=True)
class Candidate:
    params: ScriptParams
    distance_gate1: float
    distance_gate2: float
    # mean probability of each fusion outcome over the logical inputs
    weights: tuple[tuple[int, float], ...]
    # largest spread of a fusion-outcome probability across inputs
    defect: float
    error: str | None = None

    @property
    def score(self) -> tuple[float, float]:
        return (max(self.distance_gate1, self.distance_gate2), self.defect)


@dataclass(frozen=True)
class CalibrationReport:
    candidates: tuple[Candidate, ...]
    best: Candidate
    script: ProtocolScript
    tol: float
    weight_tol: float

    @property
    def meets_tolerance(self) -> bool:
        b = self.best
        return b.distance_gate1 <= self.tol and b.distance_gate2 <= self.tol and b.defect <= self.weight_tol


def evaluate(params: ScriptParams) -> Candidate:
    script = default_script(params)
    try:
        fw = fusion_weights(script)
    except AnyonSimError as exc:
        return Candidate(params, np.inf, np.inf, (), np.inf, str(exc))
    weights = tuple((c, float(w.mean())) for c, w in fw.items())
    defect = max(float(np.ptp(w)) for w in fw.values())
    dist, errors = {}, []
    for outcome, ref in ((2, GATE1), (0, GATE2)):
        try:
            dist[outcome] = projective_distance(extract_gate(script, (outcome,)), ref)
        except AnyonSimError as exc:
            dist[outcome] = np.inf
            errors.append(f"outcome {outcome}: {exc}")
    return Candidate(params, dist[2], dist[0], weights, defect, "; ".join(errors) or None)


def calibrate_script(grid=None, tol: float = 1e-6, weight_tol: float = 1e-9) -> CalibrationReport:
    """Score every grid point against the two reference gates.

    The best candidate is the first one in grid order that meets tolerance,
    so round-off never decides between exact solutions; without any, the
    lowest score wins.
    """
    grid = default_grid() if grid is None else list(grid)
    if not grid:
        raise DomainError("calibration grid is empty")
    cands = tuple(evaluate(p) for p in grid)
    within = [c for c in cands if c.score[0] <= tol and c.defect <= weight_tol]
    best = within[0] if within else min(cands, key=lambda c: c.score)
    return CalibrationReport(cands, best, default_script(best.params), tol, weight_tol)
