import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from anyonsim.errors import DomainError
from anyonsim.protocol import (
    D_GATE,
    GATE1,
    GATE2,
    IDENTITY,
    OMEGA,
    T_GATE,
    ExactMatrix,
    PaperGates,
    compare_projective,
    entangling_rank,
    is_product_vector,
    logical_vector,
    parse_logical_label,
    recovery_identities,
)

W = np.exp(2j * np.pi / 3)


def test_reference_gates_as_printed():
    assert np.allclose(GATE1.diagonal, [W, 1, W, 1, W, 1, W, 1, W])
    wb = W.conjugate()
    assert np.allclose(GATE2.diagonal, [1, wb, 1, wb, wb, wb, 1, wb, 1])
    assert np.allclose(D_GATE.diagonal, [1, 1, 1, 1, W, 1, 1, 1, 1])
    assert np.allclose(T_GATE.diagonal, [1, W, 1, W, W**2, W, 1, W, 1])
    for g in (GATE1, GATE2, D_GATE, T_GATE):
        assert g.is_unitary() and g.is_diagonal()
        assert np.allclose(g.diagonal**3, 1)


def test_exact_matches_numeric():
    for name, g in (("gate1", GATE1), ("gate2", GATE2), ("d", D_GATE), ("t", T_GATE)):
        assert np.allclose(PaperGates.exact(name).to_numpy(), g.matrix, atol=1e-15)


def test_recovery_identities_exact():
    assert recovery_identities() == {
        "gate2*T == D": True,
        "gate2*D == conj(omega)*gate1": True,
        "gate1*D*T == omega*I": True,
    }
    # exact equality is strict: a wrong phase is detected
    g1 = PaperGates.exact("gate1")
    assert g1 @ PaperGates.exact("d") != g1
    assert ExactMatrix.identity(9).scale(PaperGates.exact_omega) != ExactMatrix.identity(9)


@given(st.floats(-np.pi, np.pi))
def test_projective_equal_under_phase(phi):
    ok, lam = compare_projective(GATE1.matrix * np.exp(1j * phi), GATE1, 1e-9)
    assert ok and abs(lam - np.exp(1j * phi)) < 1e-9


def test_projective_examples():
    g = GATE1.matrix
    assert compare_projective(g, g * np.exp(1j * np.pi / 7))[0]
    assert not compare_projective(GATE1, GATE2)[0]
    ok, lam = compare_projective(GATE2 @ D_GATE, GATE1)
    assert ok and abs(lam - W.conjugate()) < 1e-12
    with pytest.raises(DomainError):
        compare_projective(np.eye(2), np.eye(3))


def test_entangling_rank():
    assert entangling_rank(IDENTITY) == 1
    assert entangling_rank(T_GATE) == 1  # local phases only
    assert entangling_rank(GATE1) == 2
    assert entangling_rank(GATE2) == 2
    with pytest.raises(DomainError):
        entangling_rank(np.ones((9, 9)))


def test_gate1_entangles_the_test_vector():
    v = logical_vector({(0, 0): 1, (0, 2): 1, (0, 4): 1, (2, 0): 1, (2, 2): 1, (2, 4): 1})
    assert is_product_vector(v)
    assert not is_product_vector(GATE1.matrix @ v)
    # the image has coefficient rows (w, 1, w) and (1, w, 1), which are not proportional
    rows = (GATE1.matrix @ v).reshape(3, 3)[:2]
    assert np.allclose(rows, [[OMEGA, 1, OMEGA], [1, OMEGA, 1]])


def test_parse_logical_label():
    assert parse_logical_label("24") == (2, 4)
    with pytest.raises(DomainError):
        parse_logical_label("13")
