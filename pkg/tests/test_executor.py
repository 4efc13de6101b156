from collections import Counter

import numpy as np
import pytest

from anyonsim.errors import DomainError, LeakageError, ScriptError, ShapeError, TerminationError
from anyonsim.fusionspace import QUTRITS, AnyonState, logical_decode
from anyonsim.operations import measure_total_charge
from anyonsim.protocol import (
    GATE1,
    GATE2,
    IDENTITY,
    T_GATE,
    branch_maps,
    compare_projective,
    default_script,
    empty_script,
    execute_branches,
    execute_sampled,
    extract_gate,
    fusion_weights,
    parse_script,
    recovery_script,
)
from anyonsim.protocol.script import ProtocolScript

DEFAULT = default_script()


def prefix(k):
    """The default script truncated to its first ``k`` executable instructions."""
    return ProtocolScript(DEFAULT.leaves, 0, tuple(DEFAULT.executable()[:k]))


def test_vacuum_pair_fusion_single_branch():
    s = parse_script("leaves 1 1\ntotal 0\nfuse 1\n")
    (b,) = execute_branches(s, AnyonState((1, 1), 0, [1]))
    assert b.outcomes == (0,) and abs(b.weight - 1) < 1e-12
    assert b.state.leaves == (0,)


def test_default_script_two_fusion_outcomes():
    branches = execute_branches(DEFAULT, QUTRITS.basis_state((0, 0)))
    assert {b.outcomes[0] for b in branches} == {0, 2}
    assert abs(sum(b.weight for b in branches) - 1) < 1e-12
    for b in branches:
        assert b.state.leaves == QUTRITS.idle_leaves


def test_fusion_weights_independent_of_input():
    for outcome, w in fusion_weights(DEFAULT).items():
        assert np.ptp(w) < 1e-9
        assert abs(w.mean() - 0.5) < 1e-9


def test_closed_branches_are_unitary_diagonal_and_linear():
    for word, m in branch_maps(DEFAULT).items():
        g = m.gate()
        assert g.is_unitary(1e-9) and g.is_diagonal(1e-9), word
        assert m.leakage < 1e-9 and m.linearity_defect < 1e-9


def test_branch_gates():
    assert compare_projective(extract_gate(DEFAULT, (2,)), GATE1, 1e-9)[0]
    assert compare_projective(extract_gate(DEFAULT, (0,)), GATE2, 1e-9)[0]
    for word in branch_maps(DEFAULT):
        ref = GATE1 if word[0] == 2 else GATE2
        assert compare_projective(extract_gate(DEFAULT, word), ref, 1e-9)[0]


def test_utility_gates():
    assert compare_projective(extract_gate(empty_script()), IDENTITY, 1e-12)[0]
    ok, _ = compare_projective(extract_gate(recovery_script()), T_GATE, 1e-12)
    assert ok


def test_extraction_errors():
    leaky = parse_script("leaves 2 2 2 2 2 2 2 2\ntotal 0\nbraid 4 +1\n")
    with pytest.raises(LeakageError):
        extract_gate(leaky)
    open_row = parse_script("leaves 2 2 2 2 2 2 2 2\ntotal 0\ncreate_pair 9 1\n")
    with pytest.raises(ShapeError):
        extract_gate(open_row)
    with pytest.raises(DomainError):
        extract_gate(DEFAULT, (3,))


def test_input_checks():
    with pytest.raises(DomainError):
        execute_branches(DEFAULT, AnyonState((2, 2), 0, [1]))
    bad = parse_script("leaves 2 2\ntotal 0\nfuse 2\n")
    with pytest.raises(ScriptError):
        execute_branches(bad, AnyonState((2, 2), 0, [1]))


def test_repeat_cap():
    stuck = parse_script("leaves 2 2\ntotal 0\nmeasure_charge 1 2\nrepeat_until 2: braid 1 +1; measure_charge 1 2\n")
    with pytest.raises(TerminationError):
        execute_branches(stuck, AnyonState((2, 2), 0, [1]))
    with pytest.raises(TerminationError):
        execute_sampled(stuck, AnyonState((2, 2), 0, [1]), seed=0)


def test_expect_prunes():
    s = parse_script("leaves 2 2 2 2\ntotal 0\nfuse 1 expect=2\n")
    (b,) = execute_branches(s, _qutrit())
    assert b.outcomes == (2,) and abs(b.weight - 0.5) < 1e-12


def _qutrit():
    # (|0> + |2>) / sqrt 2 on one block
    return AnyonState((2, 2, 2, 2), 0, np.array([1, 1, 0]) / np.sqrt(2))


def test_sampled_equals_unique_branch_when_deterministic():
    s = recovery_script()
    st = QUTRITS.basis_state((2, 4))
    (b,) = execute_branches(s, st)
    c = execute_sampled(s, st, seed=11)
    assert np.allclose(b.state.vector, c.state.vector) and c.outcomes == b.outcomes


def test_sampling_reproducible():
    st = QUTRITS.basis_state((4, 2))
    a, b = (execute_sampled(DEFAULT, st, seed=99) for _ in range(2))
    assert a.transcript == b.transcript
    assert np.array_equal(a.state.vector, b.state.vector)


def test_sampled_frequencies_match_branch_weights():
    st = QUTRITS.basis_state((2, 0))
    weights = {b.outcomes: b.weight for b in execute_branches(DEFAULT, st)}
    n = 10_000
    counts = Counter(execute_sampled(DEFAULT, st, seed=k).outcomes for k in range(n))
    assert set(counts) <= set(weights)
    for word, p in weights.items():
        sigma = np.sqrt(n * p * (1 - p))
        assert abs(counts[word] - n * p) <= 3 * sigma, (word, counts[word], n * p)


def test_charge_line_checkpoint():
    # after the first twist the ancilla pair carries charge 2, and the edge joining
    # the left block to the lower ancilla is a superposition of 1 and 3
    for lab in QUTRITS.labels:
        (b,) = execute_branches(prefix(2), QUTRITS.basis_state(lab))
        assert [(c, round(p, 12)) for c, p, _ in measure_total_charge(b.state, 5, 6)] == [(2, 1.0)]
        edge = {c: p for c, p, _ in measure_total_charge(b.state, 4, 5)}
        assert set(edge) == {1, 3} and abs(edge[1] - 0.5) < 1e-12


def test_interferometric_outcome_two_absent_after_unfusion():
    st = QUTRITS.encode({lab: 1 + k * 0.3j for k, lab in enumerate(QUTRITS.labels)})
    for b in execute_branches(DEFAULT, st):
        if b.outcomes[0] == 2:
            charge = next(r for r in b.transcript if r.kind == "charge")
            assert 2 not in dict(charge.distribution)
    _, leak = logical_decode(st)
    assert leak < 1e-12
