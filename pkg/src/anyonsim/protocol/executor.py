"""Branch and sampling executors, and gate extraction from closed branches."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ..braiding import apply_braid, full_twist, pair_full_twist
from ..errors import AnyonSimError, DomainError, LeakageError, ScriptError, ShapeError, TerminationError
from ..fusionspace import QUTRITS, AnyonState, LogicalEncoding, logical_decode
from ..operations import (
    BranchState,
    MeasurementRecord,
    _distribution,
    create_pair,
    ffo,
    fuse_measure,
    measure_total_charge,
    sample,
    unfuse_two_two,
)
from .gates import GateMatrix, compare_projective
from .script import (
    FFO,
    ApplyRecoveryTwists,
    Braid,
    CreatePair,
    Expect,
    FullTwist,
    Fuse,
    MeasureCharge,
    OnOutcome,
    PairFullTwist,
    ProtocolScript,
    RepeatUntil,
    Unfuse,
    validate,
)

LOOP_CAP = 64
LEAKAGE_TOL = 1e-9
# superposition inputs used to confirm that a branch acts linearly
LINEARITY_SAMPLES = 3


def _last_outcome(b: BranchState):
    for rec in reversed(b.transcript):
        if rec.kind != "unfuse":
            return rec.outcome
    return None


def recovery_twists(state: AnyonState, enc: LogicalEncoding = QUTRITS) -> AnyonState:
    """Inverse full twist of the first pair of each block."""
    if state.leaves != enc.idle_leaves:
        raise ShapeError(f"recovery twists need the idle row, got {state.leaves}")
    for blk in range(enc.n_blocks):
        state = full_twist(state, blk * enc.block_size + 1, -1)
    return state


def _fanout(b: BranchState, results, kind, start, stop):
    dist = _distribution(results)
    return [
        BranchState(post, b.weight * p, b.transcript + (MeasurementRecord(kind, start, stop, c, p, dist),))
        for c, p, post in results
    ]


def _step(ins, b: BranchState, rng) -> list[BranchState]:
    s = b.state
    if isinstance(ins, CreatePair):
        return [BranchState(create_pair(s, ins.pos, ins.charge), b.weight, b.transcript)]
    if isinstance(ins, Braid):
        return [BranchState(apply_braid(s, [(ins.i, ins.sign)]), b.weight, b.transcript)]
    if isinstance(ins, FullTwist):
        return [BranchState(full_twist(s, ins.i, ins.sign), b.weight, b.transcript)]
    if isinstance(ins, PairFullTwist):
        return [BranchState(pair_full_twist(s, ins.i, ins.sign), b.weight, b.transcript)]
    if isinstance(ins, FFO):
        return [BranchState(ffo(s, ins.i, ins.j), b.weight, b.transcript)]
    if isinstance(ins, ApplyRecoveryTwists):
        return [BranchState(recovery_twists(s), b.weight, b.transcript)]
    if isinstance(ins, (Fuse, MeasureCharge)):
        if isinstance(ins, Fuse):
            results = fuse_measure(s, ins.i, drop_vacuum=True)
            kind, start, stop = "fusion", ins.i, ins.i + 1
        else:
            results = measure_total_charge(s, ins.i, ins.j)
            kind, start, stop = "charge", ins.i, ins.j
        if rng is not None:
            results = [sample(results, rng)]
        out = _fanout(b, results, kind, start, stop)
        if ins.expect is not None:
            out = [x for x in out if _last_outcome(x) == ins.expect]
        return out
    if isinstance(ins, Unfuse):
        res = unfuse_two_two(s, ins.i, rng=rng, cap=LOOP_CAP)
        rec = MeasurementRecord("unfuse", ins.i, ins.i + 1, 2, res.success_probability, (), res.tries)
        return [BranchState(res.state, b.weight, b.transcript + (rec,))]
    if isinstance(ins, Expect):
        return [b] if _last_outcome(b) in ins.labels else []
    raise ScriptError(f"cannot execute {ins!r}")


def _run(instrs, branches: list[BranchState], rng, loop_cap: int, drop_tol: float) -> list[BranchState]:
    for ins in instrs:
        if isinstance(ins, OnOutcome):
            out = []
            for b in branches:
                out += _run(ins.body, [b], rng, loop_cap, drop_tol) if _last_outcome(b) in ins.labels else [b]
            branches = out
        elif isinstance(ins, RepeatUntil):
            done = [b for b in branches if _last_outcome(b) in ins.labels]
            pending = [b for b in branches if _last_outcome(b) not in ins.labels]
            for _ in range(loop_cap):
                if not pending:
                    break
                cur = _run(ins.body, pending, rng, loop_cap, drop_tol)
                done += [b for b in cur if _last_outcome(b) in ins.labels]
                pending = [b for b in cur if _last_outcome(b) not in ins.labels]
            if pending:
                left = sum(b.weight for b in pending)
                if rng is not None or left > drop_tol:
                    raise TerminationError(f"repeat_until did not reach {ins.labels} within {loop_cap} rounds")
            branches = done
        else:
            branches = [x for b in branches for x in _step(ins, b, rng)]
    return branches


def _prepare(script: ProtocolScript, state: AnyonState):
    errors = validate(script)
    if errors:
        raise ScriptError(errors)
    if state.leaves != tuple(script.leaves) or state.total != script.total:
        raise DomainError(f"input row {state.leaves}/{state.total} does not match the declared row")
    return script.executable()


def execute_branches(
    script: ProtocolScript, state: AnyonState, loop_cap: int = LOOP_CAP, drop_tol: float = 1e-12
) -> list[BranchState]:
    """Every measurement outcome path with its Born weight.

    Unfusions are resolved to their success branch; a ``repeat_until`` loop is
    unrolled up to ``loop_cap`` rounds and residual weight below ``drop_tol``
    is discarded.
    """
    return _run(_prepare(script, state), [BranchState(state)], None, loop_cap, drop_tol)


def execute_sampled(script: ProtocolScript, state: AnyonState, seed=None, rng=None) -> BranchState:
    """One path drawn by Born probabilities; reproducible for a given ``seed``."""
    rng = rng if rng is not None else np.random.default_rng(seed)
    out = _run(_prepare(script, state), [BranchState(state)], rng, LOOP_CAP, 0.0)
    if not out:
        raise AnyonSimError("sampled path was rejected by an expect directive")
    (b,) = out
    return b


# gate extraction

@dataclass(frozen=True, eq=False)
class BranchMap:
    """Effective linear map of one outcome word on the logical basis.

    ``kraus`` columns are ``sqrt(weight) * output`` for each basis input;
    ``closed`` is false when some input ends outside the idle row.
    """

    word: tuple[int, ...]
    kraus: np.ndarray
    weights: np.ndarray
    leakage: float
    closed: bool
    linearity_defect: float

    def gate(self) -> GateMatrix:
        if not self.closed:
            raise ShapeError(f"branch {self.word} does not return to the idle configuration")
        if self.leakage > LEAKAGE_TOL:
            raise LeakageError(f"branch {self.word} leaks {self.leakage:.3e} out of the logical subspace")
        if self.linearity_defect > 1e-9:
            raise AnyonSimError(f"branch {self.word} is not linear (defect {self.linearity_defect:.3e})")
        mean = self.weights.mean()
        if mean <= 0:
            raise DomainError(f"branch {self.word} has zero weight")
        return GateMatrix(self.kraus / np.sqrt(mean), words=(self.word,))


def _decode(b: BranchState, enc: LogicalEncoding):
    if b.state.leaves != enc.idle_leaves or b.state.total != 0:
        return None, 0.0
    amps, leak = logical_decode(b.state, enc)
    return np.array([amps[lab] for lab in enc.labels]), leak


@lru_cache(maxsize=256)
def branch_maps(script: ProtocolScript, enc: LogicalEncoding = QUTRITS) -> dict[tuple[int, ...], BranchMap]:
    """Branch maps of every outcome word reachable from a logical input."""
    if tuple(script.leaves) != enc.idle_leaves or script.total != 0:
        raise ShapeError("gate extraction needs a script declared on the idle row")
    labels = enc.labels
    n = len(labels)
    cols: dict = {}
    for k, lab in enumerate(labels):
        for b in execute_branches(script, enc.basis_state(lab)):
            vec, leak = _decode(b, enc)
            entry = cols.setdefault(b.outcomes, {"cols": np.zeros((n, n), complex), "w": np.zeros(n), "leak": 0.0, "closed": True})
            entry["w"][k] += b.weight
            if vec is None:
                entry["closed"] = False
                continue
            entry["cols"][:, k] += np.sqrt(b.weight) * vec
            entry["leak"] = max(entry["leak"], leak)
    defect = {w: 0.0 for w in cols}
    rng = np.random.default_rng(12345)
    for _ in range(LINEARITY_SAMPLES):
        psi = rng.normal(size=n) + 1j * rng.normal(size=n)
        psi /= np.linalg.norm(psi)
        state = enc.encode(dict(zip(labels, psi)))
        seen = set()
        for b in execute_branches(script, state):
            vec, _ = _decode(b, enc)
            seen.add(b.outcomes)
            if b.outcomes not in cols or vec is None:
                defect[b.outcomes] = np.inf
                continue
            expect = cols[b.outcomes]["cols"] @ psi
            defect[b.outcomes] = max(defect[b.outcomes], float(np.abs(np.sqrt(b.weight) * vec - expect).max()))
        for w in set(cols) - seen:
            defect[w] = max(defect[w], float(np.linalg.norm(cols[w]["cols"] @ psi)))
    return {
        w: BranchMap(w, e["cols"], e["w"], e["leak"], e["closed"], defect[w])
        for w, e in sorted(cols.items())
    }


def extract_gate(script: ProtocolScript, selector: tuple[int, ...] = (), tol: float = 1e-9) -> GateMatrix:
    """Gate of the branches whose outcome word starts with ``selector``.

    When several complete words match, their gates must agree up to phase;
    the returned matrix is that of the first word in sorted order.
    """
    selector = tuple(selector)
    maps = branch_maps(script)
    matching = [m for w, m in maps.items() if w[: len(selector)] == selector]
    if not matching:
        raise DomainError(f"no branch with outcome prefix {selector}; words are {sorted(maps)}")
    gates = [m.gate() for m in matching]
    for g in gates[1:]:
        ok, _ = compare_projective(g, gates[0], tol)
        if not ok:
            raise DomainError(f"branches under prefix {selector} realize different gates")
    return GateMatrix(gates[0].matrix, words=tuple(m.word for m in matching))


def fusion_weights(script: ProtocolScript, position: int = 0) -> dict[int, np.ndarray]:
    """Per-input probability of each outcome at ``position`` in the outcome word."""
    out: dict[int, np.ndarray] = {}
    for w, m in branch_maps(script).items():
        if len(w) > position:
            out.setdefault(w[position], np.zeros(len(m.weights)))
            out[w[position]] += m.weights
    return dict(sorted(out.items()))
