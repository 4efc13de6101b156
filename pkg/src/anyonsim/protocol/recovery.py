"""The repeat-until-success recovery loop around the entangling protocol.

Control flow, per protocol run, keyed by the ancilla fusion outcome:

* first attempt, outcome 2: done.
* first attempt, outcome 0: apply the recovery twists and run again.
* second attempt, outcome 0: done.
* second attempt, outcome 2: apply the recovery twists (the two runs now
  compose to the identity) and start over.

The composite map is tracked as the product of the per-word branch maps, so
every path reports the logical gate it realized.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np

from ..errors import DomainError, TerminationError
from ..fusionspace import QUTRITS, AnyonState, logical_decode
from ..operations import BranchState
from .executor import LEAKAGE_TOL, branch_maps, execute_branches, execute_sampled, recovery_twists
from .gates import GateMatrix, parse_logical_label
from .library import default_script
from .script import ProtocolScript

MAX_RESTARTS = 8
EXPLORE_DEPTH = 4


@dataclass(frozen=True, eq=False)
class RecoveryPath:
    branch: BranchState
    gate: GateMatrix
    # outcome word of each protocol run
    runs: tuple[tuple[int, ...], ...]
    terminated: bool
    restarts: int

    @property
    def weight(self) -> float:
        return self.branch.weight

    @property
    def fusion_word(self) -> tuple[int, ...]:
        return tuple(r[0] for r in self.runs)


def _fusion_outcome(b: BranchState) -> int:
    for rec in b.transcript:
        if rec.kind == "fusion":
            return rec.outcome
    raise DomainError("protocol run recorded no fusion measurement")


def _coerce_input(x) -> AnyonState:
    if isinstance(x, str):
        x = parse_logical_label(x)
    if isinstance(x, tuple):
        return QUTRITS.basis_state(x)
    _, leak = logical_decode(x, QUTRITS)
    if leak > LEAKAGE_TOL:
        raise DomainError("input is not in the logical subspace")
    return x


@dataclass
class _Node:
    branch: BranchState
    kraus: np.ndarray
    runs: tuple
    second: bool
    restarts: int


def _composite(kraus: np.ndarray) -> GateMatrix:
    return GateMatrix(kraus / np.sqrt(np.mean(np.sum(np.abs(kraus) ** 2, axis=0))))


def _advance(node: _Node, b: BranchState, maps, t_map):
    """Successor node after one protocol run, and whether the loop ended."""
    word = b.outcomes
    kraus = maps[word].kraus @ node.kraus
    branch = BranchState(b.state, node.branch.weight * b.weight, node.branch.transcript + b.transcript)
    runs = node.runs + (word,)
    outcome = _fusion_outcome(b)
    if outcome == (0 if node.second else 2):
        return _Node(branch, kraus, runs, node.second, node.restarts), True
    branch = BranchState(recovery_twists(branch.state), branch.weight, branch.transcript)
    restarts = node.restarts + (1 if node.second else 0)
    return _Node(branch, t_map @ kraus, runs, not node.second, restarts), False


def _path(node: _Node, done: bool) -> RecoveryPath:
    return RecoveryPath(node.branch, _composite(node.kraus), node.runs, done, node.restarts)


def run_recovery_algorithm(
    input,
    mode: Literal["branches", "sample"] = "branches",
    seed=None,
    script: ProtocolScript | None = None,
    depth: int = EXPLORE_DEPTH,
    max_restarts: int = MAX_RESTARTS,
):
    """Run the protocol until it has realized the outcome-2 gate.

    ``mode="sample"`` draws one execution and returns ``(BranchState, GateMatrix)``;
    more than ``max_restarts`` restarts raise :class:`TerminationError`.
    ``mode="branches"`` explores every path up to ``depth`` protocol runs and
    returns a list of :class:`RecoveryPath`, including unterminated ones.
    """
    script = script or default_script()
    state = _coerce_input(input)
    maps = branch_maps(script)
    t_map = np.stack(
        [logical_vec(recovery_twists(QUTRITS.basis_state(lab))) for lab in QUTRITS.labels], axis=1
    )
    root = _Node(BranchState(state), np.eye(9, dtype=complex), (), False, 0)
    if mode == "sample":
        rng = np.random.default_rng(seed)
        node = root
        while True:
            b = execute_sampled(script, node.branch.state, rng=rng)
            node, done = _advance(node, b, maps, t_map)
            if done:
                p = _path(node, True)
                return p.branch, p.gate
            if node.restarts > max_restarts:
                raise TerminationError(f"recovery did not finish within {max_restarts} restarts")
    if mode != "branches":
        raise DomainError(f"unknown mode {mode!r}")
    finished, frontier = [], [root]
    for _ in range(depth):
        nxt = []
        for node in frontier:
            for b in execute_branches(script, node.branch.state):
                new, done = _advance(node, b, maps, t_map)
                if done:
                    finished.append(_path(new, True))
                elif new.restarts > max_restarts:
                    finished.append(_path(new, False))
                else:
                    nxt.append(new)
        frontier = nxt
    return finished + [_path(n, False) for n in frontier]


def logical_vec(state: AnyonState) -> np.ndarray:
    amps, _ = logical_decode(state, QUTRITS)
    return np.array([amps[lab] for lab in QUTRITS.labels])


def unterminated_weight_by_depth(paths: list[RecoveryPath], depth: int = EXPLORE_DEPTH) -> list[float]:
    """Weight still running after each of ``1..depth`` protocol runs."""
    return [sum(p.weight for p in paths if not p.terminated or len(p.runs) > k) for k in range(1, depth + 1)]
