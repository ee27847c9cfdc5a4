import itertools

import numpy as np
import pytest

from scrambling.evolution import IsingParams, ising_hamiltonian
from scrambling.linalg import is_hermitian, is_unitary
from scrambling.operators import (BELL_STUDY_PAIRS, CertificationError, Pauli, custom_pair,
                                  embed_on_qubit, make_pair, parse_operator_label, parse_pair,
                                  pauli, spin_flip_operator)
from scrambling.quantifiers import compute_z
from scrambling.states import bell_state, random_pure_state


def test_pauli_definitions():
    assert np.array_equal(pauli("i"), np.eye(2))
    assert np.array_equal(pauli(Pauli.Z), np.diag([1, -1]))
    assert np.array_equal(pauli("Y"), [[0, -1j], [1j, 0]])


@pytest.mark.parametrize("label", list(Pauli))
def test_pauli_hermitian_unitary_exactly(label):
    p = pauli(label)
    assert np.array_equal(p, p.conj().T)
    assert np.array_equal(p @ p.conj().T, np.eye(2))


def test_embed_on_qubit():
    assert np.array_equal(embed_on_qubit("x", 0, 2), np.kron(pauli("x"), np.eye(2)))
    assert np.array_equal(embed_on_qubit("i", 1, 2), np.eye(4))
    assert np.array_equal(embed_on_qubit("z", 1, 2), np.diag([1, -1, 1, -1]))


@pytest.mark.parametrize("qubit", [-1, 2])
def test_embed_out_of_range(qubit):
    with pytest.raises(IndexError):
        embed_on_qubit("x", qubit, 2)


def test_embedded_operators_commute_on_different_qubits():
    for a, b in itertools.product("ixyz", repeat=2):
        for n in (2, 3):
            for q0, q1 in itertools.permutations(range(n), 2):
                A, B = embed_on_qubit(a, q0, n), embed_on_qubit(b, q1, n)
                assert np.array_equal(A @ B, B @ A)


def test_make_pair_examples():
    p = make_pair("x", "x", 0, 2)
    sx1 = np.kron(pauli("x"), np.eye(2))
    assert np.array_equal(p.w0, sx1) and np.array_equal(p.v, sx1)
    assert p.hermitian_unitary_certified
    p = make_pair("z", "z", 1, 2)
    assert np.array_equal(p.w0, np.kron(np.eye(2), pauli("z")))
    assert p.name == "z2/z2"


@pytest.mark.parametrize("i,j", BELL_STUDY_PAIRS)
def test_study_pairs_certified(i, j):
    p = make_pair(i, j, 0, 2)
    for op in (p.w0, p.v):
        assert is_hermitian(op) and is_unitary(op)


@pytest.mark.parametrize("i,j", BELL_STUDY_PAIRS)
def test_pair_order_gives_same_z(i, j):
    rng = np.random.default_rng(5)
    states = [bell_state(b) for b in ("phi+", "psi-")] + [random_pure_state(rng) for _ in range(3)]
    for state in states:
        for jz, b, t in rng.uniform(-2, 2, size=(4, 3)):
            h = ising_hamiltonian(IsingParams(jz, b))
            z_ij = compute_z(make_pair(i, j), h, t, state)
            z_ji = compute_z(make_pair(j, i), h, t, state)
            assert abs(z_ij - z_ji) <= 1e-12


def test_custom_pair_rejects_non_unitary():
    with pytest.raises(CertificationError, match="unitarity"):
        custom_pair(np.diag([1, 2]), pauli("x"))
    with pytest.raises(CertificationError, match="hermiticity"):
        custom_pair(np.diag([1, 1j]), pauli("x"))


def test_spin_flip_operator():
    yy = spin_flip_operator()
    assert np.array_equal(yy, [[0, 0, 0, -1], [0, 0, 1, 0], [0, 1, 0, 0], [-1, 0, 0, 0]])
    assert np.array_equal(yy @ yy, np.eye(4))
    assert np.trace(yy) == 0
    assert np.array_equal(yy @ [1, 0, 0, 0], [0, 0, 0, -1])


def test_parse_labels():
    assert parse_operator_label("x1") == (Pauli.X, 0)
    assert parse_operator_label("Z2") == (Pauli.Z, 1)
    assert parse_operator_label("y", default_qubit=2) == (Pauli.Y, 1)
    with pytest.raises(ValueError):
        parse_operator_label("q1")
    with pytest.raises(ValueError):
        parse_operator_label("x0")
    assert parse_pair("x1", "z1").name == "x1/z1"
    assert parse_pair("x1", "z2").name == "custom"
