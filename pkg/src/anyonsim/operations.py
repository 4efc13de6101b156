"""Non-unitary topological primitives.

Vacuum pair creation, fusion measurement, ideal collective-charge
(interferometric) measurement, unfusion of a charge-2 anyon with
repeat-until-success retries, and the FFO move (fusing a vacuum pair of
charge-4 anyons into two targets).

Positions are 1-based leaf indices.  Measurements return every outcome
with nonzero Born weight as ``(outcome, probability, post_state)`` with
renormalized post-states; :func:`sample` draws one of them.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from .braiding import apply_braid, regroup
from .errors import DomainError, TerminationError
from .fusionspace import AnyonState, _basis, _index
from .recoupling import check_label

#: Born weights below this are treated as exactly zero.
PROB_EPS = 1e-13
UNFUSE_CAP = 64


@dataclass(frozen=True)
class MeasurementRecord:
    kind: Literal["fusion", "charge", "unfuse"]
    start: int
    stop: int
    outcome: int
    probability: float
    # full Born distribution of the measurement, ascending by label
    distribution: tuple[tuple[int, float], ...] = ()
    # attempts used (unfusion only)
    tries: int = 1


@dataclass(frozen=True)
class BranchState:
    state: AnyonState
    weight: float = 1.0
    transcript: tuple[MeasurementRecord, ...] = field(default=())

    @property
    def outcomes(self) -> tuple[int, ...]:
        return tuple(r.outcome for r in self.transcript if r.kind != "unfuse")


def _distribution(branches) -> tuple[tuple[int, float], ...]:
    return tuple((c, p) for c, p, _ in branches)


def sample(branches, rng: np.random.Generator):
    """Draw one ``(outcome, probability, post_state)`` by its Born weight."""
    probs = np.array([p for _, p, _ in branches])
    k = rng.choice(len(branches), p=probs / probs.sum())
    return branches[k]


def create_pair(state: AnyonState, position: int, charge: int) -> AnyonState:
    """Insert two ``charge`` leaves at ``position, position+1`` in the vacuum channel."""
    check_label(charge)
    n = len(state.leaves)
    if not 1 <= position <= n + 1:
        raise DomainError(f"insertion position {position} out of range for {n} leaves")
    s = position - 1
    leaves = state.leaves[:s] + (charge, charge) + state.leaves[s:]
    grp = regroup(leaves, state.total, s, s + 1)
    grouped = np.zeros(len(grp.labels), dtype=complex)
    old_idx = _index(state.leaves, state.total)
    for r, (outer, inner) in enumerate(grp.labels):
        if inner[-1] != 0:
            continue
        # outer = x_0 .. x_{s-1}, x_{s+1} (== x_{s-1}), rest
        old = outer[:s] + outer[s + 1:]
        k = old_idx.get(old)
        if k is not None:
            grouped[r] = state.vector[k]
    return AnyonState(leaves, state.total, grp.matrix.conj().T @ grouped)


def measure_total_charge(state: AnyonState, i: int, j: int):
    """Projective measurement of the collective charge of leaves ``i..j``."""
    n = len(state.leaves)
    if not 1 <= i <= j <= n:
        raise DomainError(f"charge range {i}..{j} invalid for {n} leaves")
    grp = regroup(state.leaves, state.total, i - 1, j - 1)
    coords = grp.matrix @ state.vector
    charges = grp.group_charges()
    out = []
    for c in sorted(set(charges.tolist())):
        proj = np.where(charges == c, coords, 0)
        p = float(np.vdot(proj, proj).real)
        if p > PROB_EPS:
            vec = grp.matrix.conj().T @ proj
            out.append((int(c), p, state.with_vector(vec / np.sqrt(p))))
    return out


def fuse_measure(state: AnyonState, i: int, drop_vacuum: bool = False):
    """Fuse leaves ``i`` and ``i+1`` into one leaf carrying the measured channel.

    With ``drop_vacuum`` an outcome-0 leaf is removed from the row.
    """
    n = len(state.leaves)
    if not 1 <= i < n:
        raise DomainError(f"fusion position {i} invalid for {n} leaves")
    s = i - 1
    grp = regroup(state.leaves, state.total, s, s + 1)
    coords = grp.matrix @ state.vector
    charges = grp.group_charges()
    out = []
    for c in sorted(set(charges.tolist())):
        mask = charges == c
        p = float(np.vdot(coords[mask], coords[mask]).real)
        if p <= PROB_EPS:
            continue
        if drop_vacuum and c == 0:
            leaves = state.leaves[:s] + state.leaves[s + 2:]
        else:
            leaves = state.leaves[:s] + (int(c),) + state.leaves[s + 2:]
        if not leaves:
            # the last two anyons annihilated; represent the vacuum by one 0 leaf
            leaves = (0,)
        idx = _index(leaves, state.total)
        vec = np.zeros(len(_basis(leaves, state.total)), dtype=complex)
        for r in np.flatnonzero(mask):
            outer, _ = grp.labels[r]
            if len(leaves) == len(state.leaves) - 1:
                interior = outer  # x_0..x_{s-1}, x_{s+1}, ...
            else:
                interior = outer[:s] + outer[s + 1:]
            if leaves == (0,):
                interior = (0,)
            vec[idx[interior]] += coords[r]
        out.append((int(c), p, AnyonState(leaves, state.total, vec / np.sqrt(p))))
    return out


@dataclass(frozen=True)
class UnfuseResult:
    state: AnyonState
    tries: int
    success_probability: float


def _unfuse_attempt(state: AnyonState, i: int):
    trial = create_pair(state, i + 1, 2)
    branches = fuse_measure(trial, i)
    success = next(((p, s) for c, p, s in branches if c == 2), (0.0, None))
    return success, branches


def unfuse_two_two(
    state: AnyonState,
    i: int,
    rng: np.random.Generator | None = None,
    cap: int = UNFUSE_CAP,
) -> UnfuseResult:
    """Split the charge-2 leaf ``i`` into two charge-2 leaves.

    Each try creates a (2, 2) vacuum pair to the right of leaf ``i`` and fuses
    leaf ``i`` with the nearer ancilla.  Outcome 2 succeeds.  Outcomes 0 or 4
    are fused back with the remaining ancilla, which restores the original
    state, and the try is repeated.

    Without ``rng`` the loop is resolved exhaustively: the result carries the
    success post-state, ``tries=1`` and the per-try success probability.
    With ``rng`` tries are sampled and counted; more than ``cap`` failures
    raise :class:`TerminationError`.
    """
    if state.leaves[i - 1] != 2:
        raise DomainError(f"unfuse needs a charge-2 leaf, leaf {i} is {state.leaves[i - 1]}")
    (p, ok), branches = _unfuse_attempt(state, i)
    if ok is None:
        raise DomainError("unfusion into two charge-2 anyons is impossible here")
    if rng is None:
        return UnfuseResult(ok, 1, p)
    for tries in range(1, cap + 1):
        c, _, post = sample(branches, rng)
        if c == 2:
            return UnfuseResult(post, tries, p)
        # fuse the failed outcome with the remaining ancilla; charge 2 is forced
        (back,) = fuse_measure(post, i)
        assert back[0] == 2
    raise TerminationError(f"unfusion did not succeed within {cap} tries")


def ffo(state: AnyonState, i: int, j: int, sign: int = 1) -> AnyonState:
    """Fuse a vacuum pair of charge-4 anyons into leaves ``i < j``.

    The pair is created right of leaf ``i``; its second member is braided
    rightwards until it neighbours leaf ``j``.  Both fusions have a single
    channel, so the result is deterministic: leaf charges map ``a -> 4 - a``.
    """
    n = len(state.leaves)
    if not 1 <= i < j <= n:
        raise DomainError(f"ffo positions {i}, {j} invalid for {n} leaves")
    s = create_pair(state, i + 1, 4)
    # second 4 sits at i+2 and target j has moved to j+2
    s = apply_braid(s, [(k, sign) for k in range(i + 2, j + 1)])
    (branch,) = fuse_measure(s, j + 1)
    s = branch[2]
    (branch,) = fuse_measure(s, i)
    return branch[2]
