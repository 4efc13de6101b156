import numpy as np
import pytest

from anyonsim.errors import TerminationError
from anyonsim.fusionspace import QUTRITS, logical_decode
from anyonsim.protocol import (
    D_GATE,
    GATE1,
    GATE2,
    T_GATE,
    compare_projective,
    run_recovery_algorithm,
    unterminated_weight_by_depth,
)


@pytest.fixture(scope="module")
def paths():
    return run_recovery_algorithm((2, 0))


def test_every_terminated_path_realizes_gate1(paths):
    words = set()
    for p in paths:
        if p.terminated:
            assert compare_projective(p.gate, GATE1, 1e-9)[0], p.fusion_word
            words.add(p.fusion_word)
    assert words == {(2,), (0, 0), (0, 2, 2), (0, 2, 0, 0)}


def test_weights_and_geometric_decay(paths):
    assert abs(sum(p.weight for p in paths) - 1) < 1e-9
    open_w = unterminated_weight_by_depth(paths)
    assert np.allclose(open_w, [0.5, 0.25, 0.125, 0.0625])
    ratios = np.array(open_w[1:]) / np.array(open_w[:-1])
    assert np.allclose(ratios, ratios[0]) and ratios[0] < 1


def test_intermediate_composites(paths):
    # each completed (0, 2) cycle composes to Gate1 D T, proportional to I, and restarts
    for p in paths:
        w = p.fusion_word
        cycles = sum(1 for k in range(0, len(w) - 1, 2) if w[k:k + 2] == (0, 2))
        assert p.restarts == cycles
    ok, _ = compare_projective(GATE1 @ D_GATE @ T_GATE, np.eye(9))
    assert ok
    assert compare_projective(GATE2 @ T_GATE @ GATE2, GATE1)[0]


def test_final_state_matches_composite(paths):
    p = next(p for p in paths if p.fusion_word == (0, 2, 0, 0))
    amps, leak = logical_decode(p.branch.state)
    vec = np.array([amps[lab] for lab in QUTRITS.labels])
    inp = np.zeros(9)
    inp[QUTRITS.labels.index((2, 0))] = 1
    assert leak < 1e-9
    assert abs(abs(np.vdot(p.gate.matrix @ inp, vec)) - 1) < 1e-9


def test_sampled_mode():
    for seed in range(6):
        branch, gate = run_recovery_algorithm("22", mode="sample", seed=seed)
        assert compare_projective(gate, GATE1, 1e-9)[0]
        assert branch.state.leaves == QUTRITS.idle_leaves
    a = run_recovery_algorithm("04", mode="sample", seed=5)[0]
    b = run_recovery_algorithm("04", mode="sample", seed=5)[0]
    assert a.transcript == b.transcript


def test_restart_cap():
    with pytest.raises(TerminationError):
        # with no restarts allowed, some seed reaches the restart branch quickly
        for seed in range(200):
            run_recovery_algorithm("00", mode="sample", seed=seed, max_restarts=0)
