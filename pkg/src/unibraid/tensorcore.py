"""Dense complex matrix helpers and matrix-free application of braid generators.

Every matrix in the package is a ``numpy.ndarray`` of dtype ``complex128``.
Strand-space vectors live on ``V^{⊗m}`` with ``dim V = 2n``; index ``i``
decodes to ``m`` base-``2n`` digits with strand 1 as the most significant
digit (the ordering used by ``numpy.kron``).
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

#: Largest strand-space dimension handled by dense or traced evaluation.
MAX_DIM = 4096

TOL_ENV = "UNIBRAID_TOL"

_VARIANTS = ("KJ", "JK", "KL", "LK")


def default_tolerance(fallback: float = 1e-12) -> float:
    """Comparison tolerance, overridable through ``$UNIBRAID_TOL``."""
    raw = os.environ.get(TOL_ENV)
    if raw is None:
        return fallback
    try:
        value = float(raw)
    except ValueError as exc:
        raise ValueError(f"tolerance: cannot parse {TOL_ENV}={raw!r}") from exc
    if not value > 0:
        raise ValueError(f"tolerance: {TOL_ENV} must be positive")
    return value


def as_dense(a) -> np.ndarray:
    """Coerce to a finite 2-D complex128 array."""
    arr = np.asarray(a, dtype=np.complex128)
    if arr.ndim != 2:
        raise ValueError(f"shape: expected a matrix, got ndim={arr.ndim}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("non-finite entries")
    return arr


def identity(dim: int) -> np.ndarray:
    return np.eye(dim, dtype=np.complex128)


def tensor_product(*factors) -> np.ndarray:
    """Kronecker product of one or more matrices, left factor most significant."""
    if not factors:
        raise ValueError("shape: tensor_product needs at least one factor")
    out = as_dense(factors[0])
    for f in factors[1:]:
        out = np.kron(out, as_dense(f))
    return out


def matrix_unit(dim: int, i: int, j: int) -> np.ndarray:
    """The ``dim``-square matrix unit ``(ij)`` (1-indexed)."""
    e = np.zeros((dim, dim), dtype=np.complex128)
    e[i - 1, j - 1] = 1.0
    return e


def partial_trace_2(c, dim1: int, dim2: int) -> np.ndarray:
    """Trace out the second tensor factor of a ``(dim1*dim2)``-square matrix.

    Entry ``(i, j)`` of the result is ``sum_k c[(i,k), (j,k)]``.
    """
    c = as_dense(c)
    if c.shape != (dim1 * dim2, dim1 * dim2):
        raise ValueError(
            f"shape: expected {(dim1 * dim2,) * 2} for dims ({dim1}, {dim2}), got {c.shape}"
        )
    return np.einsum("ikjk->ij", c.reshape(dim1, dim2, dim1, dim2))


def permutation_P(n: int) -> np.ndarray:
    """Swap operator ``sum_{a,b} (ab)⊗(ba)`` on ``V⊗V`` with ``dim V = 2n``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    d = 2 * n
    P = np.zeros((d * d, d * d), dtype=np.complex128)
    a, b = np.meshgrid(np.arange(d), np.arange(d), indexing="ij")
    P[(a * d + b).ravel(), (b * d + a).ravel()] = 1.0
    return P


def strand_count(length: int, d: int) -> int:
    """Return ``m`` with ``d**m == length``; raise if ``length`` is not a power of ``d``."""
    if length < 1:
        raise ValueError("shape: empty strand vector")
    m, size = 0, 1
    while size < length:
        size *= d
        m += 1
    if size != length:
        raise ValueError(f"shape: length {length} is not a power of {d}")
    return m


def embed_two_site(op, d: int, slots: tuple[int, int], m: int) -> np.ndarray:
    """Place a ``d²``-square operator on tensor slots ``slots`` (0-based) of ``V^{⊗m}``.

    The first tensor factor of ``op`` acts on ``slots[0]``, the second on
    ``slots[1]``. The slots need not be adjacent or ordered.
    """
    op = as_dense(op)
    p, q = slots
    if op.shape != (d * d, d * d):
        raise ValueError(f"shape: operator must be {d * d}-square")
    if p == q or not (0 <= p < m and 0 <= q < m):
        raise ValueError(f"slot: invalid slots {slots} for m={m}")
    if d**m > MAX_DIM:
        raise ValueError(f"too large: dimension {d**m} exceeds {MAX_DIM}")
    full = np.kron(op, identity(d ** (m - 2)))
    # full acts on slot order (p, q, rest...); reorder axes to canonical order
    order = [p, q] + [s for s in range(m) if s not in (p, q)]
    inv = np.argsort(order)
    t = full.reshape((d,) * (2 * m))
    axes = list(inv) + [m + k for k in inv]
    return t.transpose(axes).reshape(d**m, d**m)


def cyclic_shift(d: int, m: int, steps: int = 1) -> np.ndarray:
    """Permutation sending the content of slot ``s`` to slot ``s + steps`` (mod m)."""
    dim = d**m
    if dim > MAX_DIM:
        raise ValueError(f"too large: dimension {dim} exceeds {MAX_DIM}")
    idx = np.arange(dim).reshape((d,) * m)
    # new[..., at slot s+k] = old[..., at slot s]
    moved = np.moveaxis(idx, list(range(m)), [(s + steps) % m for s in range(m)])
    S = np.zeros((dim, dim), dtype=np.complex128)
    S[np.arange(dim), moved.ravel()] = 1.0
    return S


def operator_schmidt_rank(op, d1: int, d2: int, tol: float = 1e-12) -> int:
    """Number of singular values above ``tol`` of the realigned operator.

    The realignment maps ``op[(i1,i2),(j1,j2)]`` to ``[(i1,j1),(i2,j2)]``;
    rank 1 holds exactly when ``op`` factorizes as ``Y1 ⊗ Y2``.
    """
    op = as_dense(op)
    if op.shape != (d1 * d2, d1 * d2):
        raise ValueError("shape: operator does not match the split")
    realigned = op.reshape(d1, d2, d1, d2).transpose(0, 2, 1, 3).reshape(d1 * d1, d2 * d2)
    s = np.linalg.svd(realigned, compute_uv=False)
    return int(np.sum(s > tol))


def signed_antidiagonal(n: int, name: str) -> np.ndarray:
    """Signs ``s_i`` with ``X = sum_i s_i (i, ī)`` for ``X`` in ``{J, K, L}``."""
    d = 2 * n
    i = np.arange(1, d + 1)
    upper = i <= n
    if name == "K":
        return np.ones(d)
    if name == "L":
        return np.where(upper, 1.0, -1.0)
    if name == "J":
        # J = sum_{i<=n} (-1)^{ī} (i ī) + (-1)^i (ī i); row r carries (-1)^{r̄}
        return (-1.0) ** (d - i + 1)
    raise ValueError(f"unknown generator {name!r}")


@dataclass(frozen=True)
class StructuredBraidOp:
    """``R̂(z)^sign`` for one tensor pair, applied without forming dense matrices."""

    n: int
    sign: int = 1
    z: float = 1.0
    variant: str = "KJ"

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        if self.variant not in _VARIANTS:
            raise ValueError(f"variant must be one of {_VARIANTS}")

    @property
    def d(self) -> int:
        return 2 * self.n

    def factor_signs(self) -> tuple[np.ndarray, np.ndarray]:
        return (
            signed_antidiagonal(self.n, self.variant[0]),
            signed_antidiagonal(self.n, self.variant[1]),
        )

    def dense(self) -> np.ndarray:
        a, b = self.factor_signs()
        d = self.d
        A = np.zeros((d, d), dtype=np.complex128)
        B = np.zeros((d, d), dtype=np.complex128)
        A[np.arange(d), np.arange(d)[::-1]] = a
        B[np.arange(d), np.arange(d)[::-1]] = b
        c = 1.0 / np.sqrt(1.0 + self.z**2)
        return c * (identity(d * d) + self.sign * self.z * np.kron(A, B))

    def inverse(self) -> "StructuredBraidOp":
        return StructuredBraidOp(self.n, -self.sign, self.z, self.variant)


def apply_generator(op: StructuredBraidOp, slot: int, v) -> np.ndarray:
    """Apply ``I^{⊗slot-1} ⊗ R̂^{sign}(z) ⊗ I^{⊗m-slot-1}`` to ``v``.

    ``v`` has shape ``((2n)**m,)`` or ``((2n)**m, k)`` for a batch of ``k``
    columns. ``slot`` is 1-based. Runs in time and memory linear in ``v.size``.
    """
    v = np.asarray(v, dtype=np.complex128)
    d = op.d
    m = strand_count(v.shape[0], d)
    if not 1 <= slot <= m - 1:
        raise ValueError(f"slot: {slot} out of range 1..{m - 1}")
    batch = v.shape[1:] if v.ndim > 1 else ()
    x = v.reshape(d ** (slot - 1), d, d, d ** (m - slot - 1), -1)
    a, b = op.factor_signs()
    # (A⊗B)[i,j] pulls component (ī, j̄) weighted by a_i b_j
    w = np.outer(a, b)[None, :, :, None, None]
    c = 1.0 / np.sqrt(1.0 + op.z**2)
    out = c * (x + (op.sign * op.z) * w * x[:, ::-1, ::-1, :, :])
    return out.reshape((d**m,) + batch)
