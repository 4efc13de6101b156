import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from _oracles import racah_f
from anyonsim.errors import DomainError, TerminationError
from anyonsim.fusionspace import QUTRITS, AnyonState, dimension
from anyonsim.operations import (
    create_pair,
    ffo,
    fuse_measure,
    measure_total_charge,
    unfuse_two_two,
)

rows = st.lists(st.sampled_from((1, 2, 3, 4)), min_size=1, max_size=6)


def random_state(leaves, total, rng):
    n = dimension(leaves, total)
    v = rng.normal(size=n) + 1j * rng.normal(size=n)
    return AnyonState(leaves, total, v / np.linalg.norm(v))


@settings(max_examples=40, deadline=None)
@given(rows, st.data())
def test_fresh_pair_fuses_to_vacuum(leaves, data):
    leaves = tuple(leaves)
    totals = [t for t in range(5) if dimension(leaves, t)]
    if not totals:
        return
    total = data.draw(st.sampled_from(totals))
    pos = data.draw(st.integers(1, len(leaves) + 1))
    charge = data.draw(st.sampled_from((1, 2, 3, 4)))
    s = random_state(leaves, total, np.random.default_rng(data.draw(st.integers(0, 99))))
    t = create_pair(s, pos, charge)
    assert abs(t.norm() - 1) < 1e-12
    (out,) = fuse_measure(t, pos)
    c, p, post = out
    assert c == 0 and abs(p - 1) < 1e-12
    # the vacuum leaf is kept here; fusing it into a neighbour restores the input
    assert post.leaves[pos - 1] == 0


def test_drop_vacuum_restores_the_input():
    s = random_state((2, 1, 3), 2, np.random.default_rng(7))
    (branch,) = fuse_measure(create_pair(s, 2, 4), 2, drop_vacuum=True)
    assert branch[2].leaves == s.leaves
    assert abs(np.vdot(branch[2].vector, s.vector) - 1) < 1e-12


def test_born_rule_on_block_pairs():
    # charge of leaves 2,3 of block |x>: |F^{222}_2[x, y]|^2
    for x in (0, 2, 4):
        s = QUTRITS.basis_state((x, 0))
        got = {c: p for c, p, _ in measure_total_charge(s, 2, 3)}
        for y in (0, 2, 4):
            assert abs(got.get(y, 0) - racah_f(2, 2, 2, 2, x, y) ** 2) < 1e-12
    got = [p for _, p, _ in measure_total_charge(QUTRITS.basis_state((0, 0)), 2, 3)]
    assert np.allclose(got, [0.25, 0.5, 0.25])


def test_measurement_probabilities_sum_to_one():
    s = random_state((2,) * 6, 0, np.random.default_rng(3))
    for i in range(1, 6):
        for j in range(i, 7):
            assert abs(sum(p for _, p, _ in measure_total_charge(s, i, j)) - 1) < 1e-12
    assert abs(sum(p for _, p, _ in fuse_measure(s, 3)) - 1) < 1e-12


def test_post_measurement_state_is_an_eigenstate():
    s = random_state((2,) * 6, 0, np.random.default_rng(4))
    for c, _, post in measure_total_charge(s, 2, 5):
        again = measure_total_charge(post, 2, 5)
        assert [x[0] for x in again] == [c]


def test_unfuse_success_rate():
    s = AnyonState((2, 2), 0, [1])
    rng = np.random.default_rng(2024)
    tries = [unfuse_two_two(s, 2, rng=rng).tries for _ in range(10_000)]
    assert abs(len(tries) / sum(tries) - 0.5) < 0.02
    res = unfuse_two_two(s, 2)
    assert abs(res.success_probability - 0.5) < 1e-12
    assert res.state.leaves == (2, 2, 2)


def test_unfuse_preserves_the_fusion_channel():
    # splitting the middle leaf of (1, 2, 1) keeps the outer structure
    s = random_state((1, 2, 1), 0, np.random.default_rng(5))
    out = unfuse_two_two(s, 2).state
    assert out.leaves == (1, 2, 2, 1)
    (branch,) = [b for b in fuse_measure(out, 2) if b[0] == 2]
    assert abs(branch[1] - 1) < 1e-12
    assert abs(abs(np.vdot(branch[2].vector, s.vector)) - 1) < 1e-12


def test_unfuse_cap():
    class Unlucky:
        def choice(self, n, p=None):
            return 0  # always the first outcome, which is channel 0

    with pytest.raises(TerminationError):
        unfuse_two_two(AnyonState((2, 2), 0, [1]), 2, rng=Unlucky(), cap=5)


def test_unfuse_needs_a_two():
    with pytest.raises(DomainError):
        unfuse_two_two(AnyonState((1, 1), 0, [1]), 1)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10_000), st.integers(1, 7), st.integers(1, 7))
def test_ffo_is_involutive_up_to_phase(seed, i, k):
    j = min(8, i + k)
    if i >= j:
        return
    s = random_state((2,) * 8, 0, np.random.default_rng(seed))
    once = ffo(s, i, j)
    assert once.leaves == s.leaves
    twice = ffo(once, i, j)
    assert abs(abs(np.vdot(s.vector, twice.vector)) - 1) < 1e-9


def test_ffo_flips_labels_deterministically():
    s = random_state((1, 2, 3, 2), 0, np.random.default_rng(6))
    out = ffo(s, 1, 3)
    assert out.leaves == (3, 2, 1, 2)
    assert abs(out.norm() - 1) < 1e-12
