import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from unibraid.tensorcore import (
    StructuredBraidOp,
    apply_generator,
    cyclic_shift,
    default_tolerance,
    embed_two_site,
    matrix_unit,
    operator_schmidt_rank,
    partial_trace_2,
    permutation_P,
    strand_count,
    tensor_product,
)

zs = st.floats(-1.0, 1.0, allow_nan=False)
variants = st.sampled_from(["KJ", "JK", "KL", "LK"])


def test_matrix_unit_is_one_based():
    E = matrix_unit(3, 1, 3)
    assert E[0, 2] == 1 and np.count_nonzero(E) == 1


def test_tensor_product_order():
    a, b = np.diag([1.0, 2.0]), np.diag([1.0, 10.0])
    assert np.allclose(np.diag(tensor_product(a, b)), [1, 10, 2, 20])


def test_partial_trace_of_product():
    rng = np.random.default_rng(0)
    A, B = rng.standard_normal((3, 3)), rng.standard_normal((2, 2))
    assert np.allclose(partial_trace_2(np.kron(A, B), 3, 2), A * np.trace(B))


def test_partial_trace_shape_error():
    with pytest.raises(ValueError, match="shape"):
        partial_trace_2(np.eye(5), 2, 2)


def test_permutation_swaps_factors():
    rng = np.random.default_rng(1)
    A, B = rng.standard_normal((4, 4)), rng.standard_normal((4, 4))
    P = permutation_P(2)
    assert np.allclose(P @ np.kron(A, B) @ P, np.kron(B, A))


def test_strand_count():
    assert strand_count(64, 4) == 3
    with pytest.raises(ValueError, match="shape"):
        strand_count(48, 4)


def test_embed_matches_kron_on_adjacent_slots():
    rng = np.random.default_rng(2)
    op = rng.standard_normal((4, 4))
    assert np.allclose(embed_two_site(op, 2, (1, 2), 4), np.kron(np.kron(np.eye(2), op), np.eye(2)))


def test_embed_reversed_slots_is_conjugation_by_swap():
    rng = np.random.default_rng(3)
    op = rng.standard_normal((4, 4))
    P = permutation_P(1)
    assert np.allclose(embed_two_site(op, 2, (1, 0), 2), P @ op @ P)


def test_cyclic_shift_moves_slots():
    rng = np.random.default_rng(4)
    op = rng.standard_normal((9, 9))
    S = cyclic_shift(3, 3)
    assert np.allclose(S @ embed_two_site(op, 3, (0, 1), 3) @ S.T, embed_two_site(op, 3, (1, 2), 3))
    assert np.allclose(np.linalg.matrix_power(S, 3), np.eye(27))


def test_operator_schmidt_rank():
    rng = np.random.default_rng(5)
    A, B = rng.standard_normal((2, 2)), rng.standard_normal((3, 3))
    assert operator_schmidt_rank(np.kron(A, B), 2, 3) == 1
    assert operator_schmidt_rank(permutation_P(1), 2, 2) == 4


def test_default_tolerance_env(monkeypatch):
    monkeypatch.setenv("UNIBRAID_TOL", "1e-9")
    assert default_tolerance() == 1e-9
    monkeypatch.setenv("UNIBRAID_TOL", "junk")
    with pytest.raises(ValueError):
        default_tolerance()


@settings(max_examples=40, deadline=None)
@given(n=st.integers(1, 2), m=st.integers(2, 4), z=zs, variant=variants, sign=st.sampled_from([1, -1]),
       data=st.data())
def test_structured_apply_matches_dense(n, m, z, variant, sign, data):
    d = 2 * n
    slot = data.draw(st.integers(1, m - 1))
    op = StructuredBraidOp(n, sign, z, variant)
    rng = np.random.default_rng(data.draw(st.integers(0, 2**31)))
    v = rng.standard_normal((d**m, 3)) + 1j * rng.standard_normal((d**m, 3))
    dense = embed_two_site(op.dense(), d, (slot - 1, slot), m)
    assert np.max(np.abs(apply_generator(op, slot, v) - dense @ v)) <= 1e-12


@settings(max_examples=25, deadline=None)
@given(n=st.integers(1, 2), z=zs, variant=variants)
def test_structured_inverse(n, z, variant):
    op = StructuredBraidOp(n, 1, z, variant)
    v = np.arange((2 * n) ** 3, dtype=complex)
    back = apply_generator(op.inverse(), 2, apply_generator(op, 2, v))
    assert np.allclose(back, v, atol=1e-12)


def test_apply_slot_error():
    with pytest.raises(ValueError, match="slot"):
        apply_generator(StructuredBraidOp(1), 3, np.ones(8))
