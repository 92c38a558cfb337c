import itertools

import numpy as np
import pytest

from isotropic import linalg
from isotropic.errors import BadQubitIndex, DimensionMismatch, NotNormalized, NotPSD, NotUnitary
from isotropic.qstate import (
    CNOT,
    TOFFOLI,
    DensityMatrix,
    H,
    PureState,
    X,
    apply_unitary,
    embed_gate,
    orthogonal_isotropic,
    pure_to_density,
    random_density,
    random_unitary,
)

PLUS = PureState(np.array([1, 1]) / np.sqrt(2))


def basis_vec(i, n):
    v = np.zeros(2**n)
    v[i] = 1
    return v


def test_pure_to_density_examples():
    assert np.array_equal(pure_to_density(PureState.basis(0, 1)).matrix, np.diag([1, 0]))
    assert np.allclose(pure_to_density(PLUS).matrix, [[0.5, 0.5], [0.5, 0.5]])


def test_pure_to_density_phase_state():
    psi = PureState(np.array([1, np.exp(1j * np.pi / 4)]) / np.sqrt(2))
    m = pure_to_density(psi).matrix
    assert abs(abs(m[0, 1]) - 0.5) < 1e-15
    assert np.isclose(np.angle(m[0, 1]), -np.pi / 4)
    assert np.isclose(np.angle(m[1, 0]), np.pi / 4)


def test_pure_state_requires_unit_norm():
    with pytest.raises(NotNormalized):
        PureState(np.array([1.0, 1.0]))


def test_density_validation():
    with pytest.raises(NotPSD):
        DensityMatrix(np.diag([1.5, -0.5]))
    with pytest.raises(DimensionMismatch):
        DensityMatrix(np.eye(3) / 3)


def test_orthogonal_isotropic_examples():
    assert np.array_equal(orthogonal_isotropic(PureState.basis(0, 1)).matrix, np.diag([0, 1]))
    assert np.allclose(orthogonal_isotropic(PureState.basis(0, 2)).matrix, np.diag([0, 1, 1, 1]) / 3)
    # projector complement of |+>
    assert np.allclose(orthogonal_isotropic(PLUS).matrix, [[0.5, -0.5], [-0.5, 0.5]])


def test_orthogonal_isotropic_is_orthogonal_state(rng):
    for n in (1, 2, 3):
        ref = PureState.from_unnormalized(rng.standard_normal(2**n) + 1j * rng.standard_normal(2**n))
        m = orthogonal_isotropic(ref).matrix
        assert np.isclose(np.trace(m), 1)
        assert abs(np.vdot(ref.amplitudes, m @ ref.amplitudes)) < 1e-14


def test_apply_unitary_examples():
    rho = random_density(2, np.random.default_rng(0))
    assert np.allclose(apply_unitary(rho, np.eye(4)).matrix, rho.matrix)
    zero = pure_to_density(PureState.basis(0, 1))
    assert np.allclose(apply_unitary(zero, H).matrix, pure_to_density(PLUS).matrix)
    assert np.allclose(apply_unitary(zero, X).matrix, np.diag([0, 1]))


def test_apply_unitary_errors():
    zero = pure_to_density(PureState.basis(0, 1))
    with pytest.raises(NotUnitary):
        apply_unitary(zero, np.diag([1, 2]))
    with pytest.raises(DimensionMismatch):
        apply_unitary(zero, np.eye(4))


def test_apply_unitary_preserves_spectrum(rng):
    for _ in range(50):
        n = int(rng.integers(1, 4))
        rho = random_density(n, rng, rank=int(rng.integers(1, 2**n + 1)))
        out = apply_unitary(rho, random_unitary(2**n, rng)).matrix
        assert abs(np.trace(out) - 1) < 1e-12
        assert linalg.is_hermitian(out)
        assert np.allclose(linalg.eigvalsh(out), linalg.eigvalsh(rho.matrix), atol=1e-9)


def test_embed_single_qubit():
    assert np.array_equal(embed_gate(X, [1], 2), np.kron(np.eye(2), X))
    assert np.array_equal(embed_gate(X, [0], 2), np.kron(X, np.eye(2)))


def test_embed_cnot_truth_table():
    u = embed_gate(CNOT, [0, 1], 2)
    assert np.array_equal(u @ basis_vec(0b10, 2), basis_vec(0b11, 2))
    reversed_cnot = embed_gate(CNOT, [1, 0], 2)
    assert np.array_equal(reversed_cnot @ basis_vec(0b01, 2), basis_vec(0b11, 2))


def test_embed_toffoli_permutation():
    u = embed_gate(TOFFOLI, [1, 2, 0], 3)
    for b0, b1, b2 in itertools.product((0, 1), repeat=3):
        src = (b0 << 2) | (b1 << 1) | b2
        dst = ((b0 ^ (b1 & b2)) << 2) | (b1 << 1) | b2
        assert np.array_equal(u @ basis_vec(src, 3), basis_vec(dst, 3))
    assert np.array_equal(u @ basis_vec(0b011, 3), basis_vec(0b111, 3))


def test_embed_errors():
    with pytest.raises(BadQubitIndex):
        embed_gate(X, [3], 3)
    with pytest.raises(BadQubitIndex):
        embed_gate(CNOT, [1, 1], 3)
    with pytest.raises(DimensionMismatch):
        embed_gate(CNOT, [1], 3)


def test_embedded_gates_unitary_and_commuting(rng):
    for _ in range(20):
        n = int(rng.integers(3, 6))
        qs = rng.permutation(n)
        g1, g2 = random_unitary(2, rng), random_unitary(4, rng)
        a = embed_gate(g1, [qs[0]], n)
        b = embed_gate(g2, [qs[1], qs[2]], n)
        assert linalg.is_unitary(a) and linalg.is_unitary(b)
        assert np.linalg.norm(a @ b - b @ a, 2) <= 1e-10
