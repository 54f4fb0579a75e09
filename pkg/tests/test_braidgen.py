import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from unibraid.braidgen import (
    CLASSES,
    BraidSpec,
    OddBraidParams,
    block_diagonal_target,
    build_block_diagonalizer,
    build_braid,
    build_generators,
    build_odd_braid,
    build_pair_permutation,
    canonical_class,
    canonicalize_phases,
    pair_permutation_sources,
    phased_antidiagonal,
    rhat,
)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_generator_algebra(n):
    g = build_generators(n)
    I = g.I
    assert np.array_equal(g.K @ g.K, I)
    assert np.array_equal(g.J @ g.J, -I)
    assert np.array_equal(g.L @ g.L, -I)
    assert np.array_equal(g.K.T, g.K)
    assert np.array_equal(g.J.T, -g.J)


def test_n1_generators():
    g = build_generators(1)
    assert np.array_equal(g.J, g.L)
    assert np.array_equal(g.J.real, [[0, 1], [-1, 0]])


def test_generators_are_read_only():
    with pytest.raises(ValueError):
        build_generators(2).J[0, 0] = 1


def test_rhat_n1_constant():
    expected = np.array([[1, 0, 0, 1], [0, 1, -1, 0], [0, 1, 1, 0], [-1, 0, 0, 1]]) / np.sqrt(2)
    assert np.allclose(rhat(1), expected, atol=0)


def test_class_aliases_and_errors():
    assert canonical_class("I") == "KJ" and canonical_class("II") == "JK"
    with pytest.raises(ValueError, match="class"):
        canonical_class("XY")
    with pytest.raises(ValueError, match="z"):
        BraidSpec(1, "KJ", 1.5)


def test_class_two_is_P_conjugate_of_class_one():
    from unibraid.tensorcore import permutation_P

    for n in (1, 2, 3):
        P = permutation_P(n)
        assert np.allclose(P @ rhat(n, 0.3, "KJ") @ P, rhat(n, 0.3, "JK"))


@settings(max_examples=30, deadline=None)
@given(n=st.integers(1, 3), z=st.floats(-1, 1), cls=st.sampled_from(list(CLASSES)))
def test_inverse_is_negated_parameter(n, z, cls):
    spec = BraidSpec(n, cls, z)
    assert np.allclose(build_braid(spec) @ build_braid(spec.inverse()), np.eye((2 * n) ** 2), atol=1e-13)


def test_from_theta():
    assert BraidSpec.from_theta(2, 0.4).z == pytest.approx(np.tanh(0.4))


def test_pair_permutation_n2_pattern():
    assert list(pair_permutation_sources(2)) == [1, 7, 3, 5, 4, 6, 2, 8]
    U = build_pair_permutation(2)
    assert np.array_equal(U @ U, np.eye(16))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_block_diagonalizer(n):
    V = build_block_diagonalizer(n)
    assert np.allclose(V @ V.conj().T, np.eye(V.shape[0]), atol=1e-13)
    for z in (1.0, -0.3):
        assert np.allclose(V @ rhat(n, z) @ V.conj().T, block_diagonal_target(n, z), atol=1e-13)


def test_block_diagonalizer_trivial_for_n1():
    with pytest.raises(ValueError, match="trivial"):
        build_block_diagonalizer(1)


def test_odd_braid_structure():
    p = OddBraidParams(0.3, -1.1, 0.7, 0.2, -0.5, 1.4, theta=0.8)
    R = build_odd_braid(p)
    assert R[4, 4] == 1
    assert np.allclose(R, R.T)
    assert np.allclose(build_odd_braid(p, 0.0), np.eye(9))


def test_canonicalize_phases_rejects_other_matrices():
    with pytest.raises(ValueError, match="not gauge-equivalent"):
        canonicalize_phases(np.ones((4, 4)))
    A = phased_antidiagonal(0.5)
    A[1, 2] = 1j
    with pytest.raises(ValueError, match="not gauge-equivalent"):
        canonicalize_phases(A)


def test_canonicalize_phases_gauge_is_tensor_square():
    Y, _ = canonicalize_phases(phased_antidiagonal(0.9))
    assert np.allclose(Y @ Y.conj().T, np.eye(2))
