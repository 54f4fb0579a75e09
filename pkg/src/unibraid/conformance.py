"""Residual checks for the braid identities.

Each check returns a :class:`ResidualReport`; ``passed`` is keyed to the
max-abs residual, the Frobenius norm is reported alongside.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .braidgen import (
    BraidSpec,
    OddBraidParams,
    block_diagonal_target,
    build_block_diagonalizer,
    build_braid,
    build_generators,
    build_M,
    build_odd_braid,
    build_projectors,
    canonical_class,
    diagonal_form,
    rhat,
)
from .tensorcore import as_dense, default_tolerance, identity

ODD_TOLERANCE = 1e-10


@dataclass(frozen=True)
class ResidualReport:
    name: str
    max_abs_residual: float
    frobenius_residual: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.max_abs_residual <= self.tolerance

    def row(self) -> str:
        status = "pass" if self.passed else "FAIL"
        return (
            f"{self.name}\t{self.max_abs_residual:.3e}\t"
            f"{self.frobenius_residual:.3e}\t{self.tolerance:.0e}\t{status}"
        )


def residual_report(name: str, diff, tol: float | None = None) -> ResidualReport:
    diff = np.asarray(diff)
    if tol is None:
        tol = default_tolerance()
    return ResidualReport(
        name,
        float(np.max(np.abs(diff))) if diff.size else 0.0,
        float(np.linalg.norm(diff)),
        tol,
    )


def local_dimension(r) -> int:
    """``d`` such that ``r`` is ``d²``-square."""
    r = as_dense(r)
    if r.shape[0] != r.shape[1]:
        raise ValueError(f"shape: matrix is not square: {r.shape}")
    d = int(round(np.sqrt(r.shape[0])))
    if d * d != r.shape[0] or d < 2:
        raise ValueError(f"shape: dimension {r.shape[0]} is not a square d² with d >= 2")
    return d


def braid_difference(r) -> np.ndarray:
    """``R̂12 R̂23 R̂12 - R̂23 R̂12 R̂23`` with ``R̂12 = R̂⊗I``, ``R̂23 = I⊗R̂``."""
    r = as_dense(r)
    d = local_dimension(r)
    I = identity(d)
    r12, r23 = np.kron(r, I), np.kron(I, r)
    return r12 @ r23 @ r12 - r23 @ r12 @ r23


def check_braid(r, tol: float | None = None) -> ResidualReport:
    return residual_report("braid", braid_difference(r), tol)


def composed_parameter(z: float, zprime: float) -> float:
    """``(z + z') / (1 + z z')``, i.e. ``tanh(θ + θ')``."""
    den = 1.0 + z * zprime
    if abs(den) < 1e-15:
        raise ValueError(f"pole: 1 + z z' = 0 for z={z}, z'={zprime}")
    return (z + zprime) / den


def check_baxterized(
    n: int, cls: str, z: float, zprime: float, tol: float | None = None
) -> ResidualReport:
    """``R̂12(z) R̂23(z'') R̂12(z') = R̂23(z') R̂12(z'') R̂23(z)`` with ``z''`` composed."""
    cls = canonical_class(cls)
    zpp = composed_parameter(z, zprime)
    R = lambda x: build_braid(BraidSpec(n, cls, x))  # noqa: E731
    I = identity(2 * n)
    lhs = np.kron(R(z), I) @ np.kron(I, R(zpp)) @ np.kron(R(zprime), I)
    rhs = np.kron(I, R(zprime)) @ np.kron(R(zpp), I) @ np.kron(I, R(z))
    return residual_report(f"baxterized[n={n},{cls},z={z:g},z'={zprime:g}]", lhs - rhs, tol)


def check_unitarity(r, tol: float | None = None) -> ResidualReport:
    r = as_dense(r)
    return residual_report("unitarity", r.conj().T @ r - identity(r.shape[0]), tol)


def check_quadratic(spec: BraidSpec, tol: float | None = None) -> ResidualReport:
    """``R̂(z) + R̂(z)^{-1} = (2/√(1+z²)) I``."""
    R = build_braid(spec)
    Rinv = build_braid(spec.inverse())
    target = 2.0 / np.sqrt(1.0 + spec.z**2) * identity(R.shape[0])
    return residual_report("quadratic", R + Rinv - target, tol)


def check_hecke(r, tol: float | None = None) -> ResidualReport:
    """``R̂² = √2 R̂ - I`` (holds for the constant matrices, ``z = 1``)."""
    r = as_dense(r)
    return residual_report("hecke", r @ r - np.sqrt(2.0) * r + identity(r.shape[0]), tol)


def check_periodicity(r, tol: float | None = None) -> tuple[ResidualReport, ResidualReport]:
    """Residuals of ``R̂⁴ + I`` and ``R̂⁸ - I``."""
    r = as_dense(r)
    if r.shape[0] != r.shape[1]:
        raise ValueError("shape: matrix is not square")
    I = identity(r.shape[0])
    r4 = np.linalg.matrix_power(r, 4)
    r8 = r4 @ r4
    return residual_report("R^4=-I", r4 + I, tol), residual_report("R^8=I", r8 - I, tol)


def check_projectors(n: int, z: float = 0.5, tol: float | None = None) -> list[ResidualReport]:
    """Orthogonal idempotents, completeness, and the spectral forms of ``R̂`` and ``R̂(z)``."""
    Pp, Pm = build_projectors(n)
    P = {1: Pp, -1: Pm}
    I = identity(Pp.shape[0])
    worst = max(
        (P[e] @ P[f] - (P[e] if e == f else 0 * I) for e in (1, -1) for f in (1, -1)),
        key=lambda m: np.max(np.abs(m)),
    )
    reports = [
        residual_report(f"P.P=δP[n={n}]", worst, tol),
        residual_report(f"P++P-=I[n={n}]", Pp + Pm - I, tol),
    ]
    for s in (1, -1):
        for zz in (1.0, z):
            spectral = ((1 - s * 1j * zz) * Pp + (1 + s * 1j * zz) * Pm) / np.sqrt(1 + zz * zz)
            reports.append(
                residual_report(f"spectral[n={n},z={zz:g},power={s:+d}]", rhat(n, zz, "KJ", s) - spectral, tol)
            )
        # P± = ±(i/√2)(R̂ - ((1±i)/√2) I)
        form = s * 1j / np.sqrt(2) * (rhat(n) - (1 + s * 1j) / np.sqrt(2) * I)
        reports.append(residual_report(f"P{'+' if s > 0 else '-'}-from-R[n={n}]", P[s] - form, tol))
    return reports


def check_diagonalization(n: int, z: float = 0.5, tol: float | None = None) -> list[ResidualReport]:
    """``M M^{-1} = I``, ``M P_ε M^{-1} = ½(I + ε LK)⊗I``, ``M R̂(z) M^{-1}`` diagonal, and ``V`` for ``n >= 2``."""
    g = build_generators(n)
    M, Minv = build_M(n), build_M(n, inverse=True)
    I = identity(M.shape[0])
    Pp, Pm = build_projectors(n)
    LK = g.L @ g.K
    reports = [residual_report(f"M.Minv=I[n={n}]", M @ Minv - I, tol)]
    for eps, P in ((1, Pp), (-1, Pm)):
        target = np.kron(0.5 * (identity(2 * n) + eps * LK), identity(2 * n))
        reports.append(residual_report(f"M.P{'+' if eps > 0 else '-'}.Minv[n={n}]", M @ P @ Minv - target, tol))
    for zz in (1.0, -1.0, z):
        reports.append(
            residual_report(f"M.R.Minv[n={n},z={zz:g}]", M @ rhat(n, zz) @ Minv - diagonal_form(n, zz), tol)
        )
    if n >= 2:
        V = build_block_diagonalizer(n)
        Vinv = V.conj().T
        reports.append(residual_report(f"V.Vdag=I[n={n}]", V @ Vinv - I, tol))
        for zz in (1.0, z):
            reports.append(
                residual_report(
                    f"V.R.Vinv[n={n},z={zz:g}]", V @ rhat(n, zz) @ Vinv - block_diagonal_target(n, zz), tol
                )
            )
    return reports


def odd_braid_difference(params: OddBraidParams, theta: float, thetaprime: float) -> np.ndarray:
    R = lambda t: build_odd_braid(params, t)  # noqa: E731
    I = identity(3)
    t2 = theta + thetaprime
    lhs = np.kron(R(theta), I) @ np.kron(I, R(t2)) @ np.kron(R(thetaprime), I)
    rhs = np.kron(I, R(thetaprime)) @ np.kron(R(t2), I) @ np.kron(I, R(theta))
    return lhs - rhs


def check_odd_braid(
    params: OddBraidParams, theta: float, thetaprime: float, tol: float = ODD_TOLERANCE
) -> ResidualReport:
    """Rapidity-additive braid equation for the 9 × 9 family on the 729-dim space."""
    return residual_report(
        f"odd-braid[θ={theta:g},θ'={thetaprime:g}]",
        odd_braid_difference(params, theta, thetaprime),
        tol,
    )


def check_odd_unitarity(params: OddBraidParams, tol: float = 1e-12) -> ResidualReport:
    """``R̂(θ)† R̂(θ) = I`` and ``R̂(-θ) R̂(θ) = I``; reports the larger residual."""
    R = build_odd_braid(params)
    Rm = build_odd_braid(params, -params.theta)
    I = identity(9)
    a, b = R.conj().T @ R - I, Rm @ R - I
    worst = a if np.max(np.abs(a)) >= np.max(np.abs(b)) else b
    return residual_report("odd-unitarity", worst, tol)


def nonequivalence_terms() -> tuple[np.ndarray, np.ndarray]:
    """Braid difference of the block sum ``R̂' = I_4 ⊗ R̂_(2)`` and its predicted value.

    With ``R̂'_12 = I_4⊗R̂_(2)⊗I_4`` and ``R̂'_23 = I_4⊗I_4⊗R̂_(2)`` on
    ``C^4⊗C^4⊗C^4``, returns ``(R̂'_12 R̂'_23 R̂'_12 - R̂'_23 R̂'_12 R̂'_23, R̂'_12 - R̂'_23)``.
    The two agree because the factors commute and ``R̂_(2)² = √2 R̂_(2) - I``.
    """
    r2 = rhat(1)
    I4 = identity(4)
    r12 = np.kron(np.kron(I4, r2), I4)
    r23 = np.kron(np.kron(I4, I4), r2)
    return r12 @ r23 @ r12 - r23 @ r12 @ r23, r12 - r23
