import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from unibraid.braidgen import OddBraidParams
from unibraid.entangle import (
    TwoPartyState,
    act_and_analyze,
    bell_generalized,
    odd_ket_label,
    odd_superpositions,
    schmidt_profile,
    spin_index,
)


def test_spin_index_map():
    assert [spin_index(2, s) for s in (2, 1, -1, -2)] == [1, 2, 3, 4]
    with pytest.raises(ValueError, match="label"):
        spin_index(2, 3)


def test_bell_n1_z1():
    s = bell_generalized(1, 1.0, 0, 0, 1)
    assert np.allclose(s.amplitudes, np.array([1, 0, 0, 1]) / np.sqrt(2))


def test_bell_n2_amplitudes():
    s = bell_generalized(2, 0.6, 1, 0, -1)
    support = s.support()
    assert support[(2, 1)] == pytest.approx(1 / np.sqrt(1.36))
    assert support[(3, 4)] == pytest.approx(-0.6 / np.sqrt(1.36))


def test_bell_label_error():
    with pytest.raises(ValueError, match="label"):
        bell_generalized(2, 0.5, 2, 0)


def test_bell_sign_pairs_overlap():
    """Orthogonal at ``z = ±1``; in general the overlap is ``(1 - z²)/(1 + z²)``."""
    for n in (1, 2, 3):
        for j in range(n):
            for k in range(n):
                for z in (1.0, -1.0, 0.7, 0.0):
                    a, b = bell_generalized(n, z, j, k, 1), bell_generalized(n, z, j, k, -1)
                    assert abs(np.vdot(a.amplitudes, b.amplitudes) - (1 - z * z) / (1 + z * z)) <= 1e-13


def test_product_state_at_z0():
    _, p = act_and_analyze(2, 0.0, 2, 3)
    assert p.rank == 1 and p.entropy_bits == 0.0


def test_entropy_at_half():
    _, p = act_and_analyze(1, 0.5, 2, 1)
    assert p.entropy_bits == pytest.approx(-(0.8 * np.log2(0.8) + 0.2 * np.log2(0.2)))


@settings(max_examples=40, deadline=None)
@given(n=st.integers(1, 3), z=st.floats(-1, 1), data=st.data())
def test_schmidt_depends_only_on_abs_z(n, z, data):
    c = data.draw(st.integers(1, 2 * n))
    cp = data.draw(st.integers(1, 2 * n))
    s, p = act_and_analyze(n, z, c, cp)
    _, q = act_and_analyze(n, abs(z), 1, 1)
    assert np.allclose(p.coefficients, q.coefficients, atol=1e-12)
    assert np.sum(p.coefficients**2) == pytest.approx(1.0, abs=1e-12)
    assert np.linalg.norm(s.amplitudes) == pytest.approx(1.0, abs=1e-12)


def test_state_must_be_normalized():
    with pytest.raises(ValueError):
        TwoPartyState(2, np.ones(4))


def test_odd_outputs_orthonormal():
    states = odd_superpositions(OddBraidParams(0.2, 1.3, -0.4, 0.9, 1.7, -0.6, theta=1.1))
    G = np.array([[np.vdot(a.amplitudes, b.amplitudes) for b in states] for a in states])
    assert np.allclose(G, np.eye(9), atol=1e-12)


def test_odd_theta_zero_is_identity():
    states = odd_superpositions(OddBraidParams(1, 2, 3, 4, 5, 6, theta=0.0))
    assert all(np.allclose(s.amplitudes, np.eye(9)[k]) for k, s in enumerate(states))


def test_odd_pairing_pattern():
    """Each non-central ket mixes only with its mirror ``8 - k``."""
    states = odd_superpositions(OddBraidParams(0.3, -0.8, 1.1, 0.4, -0.9, 0.6, theta=0.5))
    for k, s in enumerate(states):
        assert set(np.nonzero(np.abs(s.amplitudes) > 1e-15)[0]) <= {k, 8 - k}
    assert odd_ket_label(3) == "0+" and odd_ket_label(5) == "0-"
    assert schmidt_profile(states[4]).rank == 1
