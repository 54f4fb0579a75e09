import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from unibraid.braidgen import CLASSES, BraidSpec, OddBraidParams, build_braid, rhat
from unibraid.conformance import (
    braid_difference,
    check_baxterized,
    check_braid,
    check_odd_braid,
    composed_parameter,
    local_dimension,
    residual_report,
)
from unibraid.tensorcore import permutation_P

unit = st.floats(-0.95, 0.95)


def test_report_row_and_pass():
    r = residual_report("x", np.array([[1e-14, -3e-13]]), tol=1e-12)
    assert r.passed and r.max_abs_residual == pytest.approx(3e-13)
    assert r.row().split("\t")[0] == "x" and r.row().endswith("pass")


def test_local_dimension_errors():
    with pytest.raises(ValueError, match="shape"):
        local_dimension(np.eye(5))
    with pytest.raises(ValueError, match="shape"):
        local_dimension(np.ones((4, 2)))


def test_braid_check_rejects_a_non_braid():
    rng = np.random.default_rng(0)
    assert not check_braid(rng.standard_normal((4, 4))).passed


def test_permutation_is_a_braid():
    assert check_braid(permutation_P(2)).passed


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("cls", list(CLASSES))
def test_constant_braid_equation_holds_at_unit_parameter(n, cls):
    for z in (1.0, -1.0, 0.0):
        assert check_braid(rhat(n, z, cls), tol=1e-13).passed


def test_constant_braid_equation_fails_between():
    """Away from ``z ∈ {0, ±1}`` the residual is ``z(z²-1)/(1+z²)^{3/2}`` times a fixed operator."""
    base = braid_difference(rhat(1, 0.5))
    scale = lambda z: z * (z * z - 1) / (1 + z * z) ** 1.5  # noqa: E731
    for z in (-0.9, 0.37, 0.8):
        assert np.allclose(braid_difference(rhat(1, z)) / scale(z), base / scale(0.5), atol=1e-12)
    assert np.max(np.abs(base)) > 0.1


@settings(max_examples=30, deadline=None)
@given(n=st.integers(1, 2), cls=st.sampled_from(list(CLASSES)), z=unit, zp=unit)
def test_baxterized_property(n, cls, z, zp):
    assert check_baxterized(n, cls, z, zp, tol=1e-12).passed


def test_baxterized_with_wrong_composition_fails():
    R = lambda x: build_braid(BraidSpec(1, "KJ", x))  # noqa: E731
    I = np.eye(2)
    z, zp = 0.3, 0.5
    zpp = z + zp - 0.1
    lhs = np.kron(R(z), I) @ np.kron(I, R(zpp)) @ np.kron(R(zp), I)
    rhs = np.kron(I, R(zp)) @ np.kron(R(zpp), I) @ np.kron(I, R(z))
    assert np.max(np.abs(lhs - rhs)) > 1e-3


def test_composed_parameter_pole():
    assert composed_parameter(0.5, 0.5) == pytest.approx(0.8)
    with pytest.raises(ValueError, match="pole"):
        composed_parameter(1.0, -1.0)


@settings(max_examples=5, deadline=None)
@given(vals=st.lists(st.floats(-2, 2), min_size=6, max_size=6), t=st.floats(-1, 1), tp=st.floats(-1, 1))
def test_odd_braid_property(vals, t, tp):
    assert check_odd_braid(OddBraidParams(*vals), t, tp).passed


def test_odd_braid_requires_additive_rapidity():
    from unibraid.braidgen import build_odd_braid

    p = OddBraidParams(1.0, -0.3, 0.5, 0.8, -0.7, 0.2)
    R = lambda t: build_odd_braid(p, t)  # noqa: E731
    I = np.eye(3)
    lhs = np.kron(R(0.4), I) @ np.kron(I, R(0.5)) @ np.kron(R(0.3), I)
    rhs = np.kron(I, R(0.3)) @ np.kron(R(0.5), I) @ np.kron(I, R(0.4))
    assert np.max(np.abs(lhs - rhs)) > 1e-3
