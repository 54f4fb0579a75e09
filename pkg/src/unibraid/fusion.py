"""L- and T-operator towers from the coproduct, their traces, and the exchange relations.

A tower of order ``r`` is the block family ``{(i, j): X_ij}`` with blocks of
dimension ``(2n)^r``; as an operator it is ``sum_ij (ij) ⊗ X_ij`` on
``aux ⊗ V^{⊗r}``. Blocks are stored without the ``(1+z²)^{-r/2}`` factor.

Exchange relations are realized on ``V ⊗ V ⊗ Q`` (two auxiliary slots and
the quantum space ``Q = V^{⊗r}``)::

    R̂(z'') L_2(z) L_1(z') = L_2(z') L_1(z) R̂(z'')
    R̂(z'') T_1(z) T_2(z') = T_1(z') T_2(z) R̂(z'')

with ``R̂`` on the two auxiliary slots, ``X_1`` on aux slot 1 and ``Q``,
``X_2`` on aux slot 2 and ``Q``, and ``z'' = (z - z')/(1 - z z')`` (the
rapidity difference). This embedding was fixed by requiring the
fundamental-level residuals to vanish; the relations hold with or without
the normalization of ``R̂``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .braidgen import BraidSpec, build_braid, build_M, canonical_class, diagonal_form, rhat
from .conformance import ResidualReport, residual_report
from .tensorcore import MAX_DIM, identity, matrix_unit, permutation_P

MAX_TOWER_ENTRIES = 2**26


@dataclass(frozen=True)
class Tower:
    kind: str
    n: int
    z: float
    order: int
    blocks: dict = field(repr=False)
    cls: str = "KJ"
    normalized: bool = False

    @property
    def block_dim(self) -> int:
        return (2 * self.n) ** self.order

    def block(self, i: int, j: int) -> np.ndarray:
        return self.blocks[(i, j)]

    def dense(self) -> np.ndarray:
        """``sum_ij (ij) ⊗ X_ij`` on ``aux ⊗ V^{⊗r}``."""
        d = 2 * self.n
        return sum(np.kron(matrix_unit(d, i, j), X) for (i, j), X in self.blocks.items())

    def normalize(self) -> "Tower":
        """Tower with the ``(1+z²)^{-r/2}`` factor applied."""
        if self.normalized:
            return self
        c = (1.0 + self.z**2) ** (-self.order / 2)
        return Tower(
            self.kind, self.n, self.z, self.order,
            {k: c * v for k, v in self.blocks.items()}, self.cls, True,
        )


def _check_kind(kind: str) -> str:
    if kind not in ("L", "T"):
        raise ValueError(f"kind must be 'L' or 'T', got {kind!r}")
    return kind


def fundamental_matrix(kind: str, n: int, z: float, cls: str = "KJ") -> np.ndarray:
    """Unnormalized ``√(1+z²) R̂(z) P`` (``L``) or ``√(1+z²) P R̂(z)`` (``T``)."""
    R = build_braid(BraidSpec(n, cls, z, normalized=False))
    P = permutation_P(n)
    return R @ P if _check_kind(kind) == "L" else P @ R


def _split_blocks(F: np.ndarray, d: int) -> dict:
    b = F.shape[0] // d
    return {
        (i + 1, j + 1): F[i * b:(i + 1) * b, j * b:(j + 1) * b].copy()
        for i in range(d)
        for j in range(d)
    }


def seed_tower(kind: str, n: int, z: float, cls: str = "KJ") -> Tower:
    """Order 0: ``X_ij = δ_ij`` as ``1 × 1`` blocks."""
    d = 2 * n
    blocks = {
        (i, j): np.full((1, 1), 1.0 if i == j else 0.0, dtype=np.complex128)
        for i in range(1, d + 1)
        for j in range(1, d + 1)
    }
    return Tower(_check_kind(kind), n, z, 0, blocks, canonical_class(cls))


def fundamental_L(n: int, z: float, cls: str = "KJ") -> Tower:
    return Tower("L", n, z, 1, _split_blocks(fundamental_matrix("L", n, z, cls), 2 * n), canonical_class(cls))


def fundamental_T(n: int, z: float, cls: str = "KJ") -> Tower:
    return Tower("T", n, z, 1, _split_blocks(fundamental_matrix("T", n, z, cls), 2 * n), canonical_class(cls))


def coproduct_step(t: Tower) -> Tower:
    """``X^{(r+1)}_ij = sum_k X^{(1)}_ik ⊗ X^{(r)}_kj``."""
    if t.normalized:
        raise ValueError("coproduct_step expects an unnormalized tower")
    d = 2 * t.n
    if d * d * (2 * t.n) ** (2 * (t.order + 1)) > MAX_TOWER_ENTRIES:
        raise ValueError(f"too large: order {t.order + 1} tower exceeds {MAX_TOWER_ENTRIES} entries")
    first = _split_blocks(fundamental_matrix(t.kind, t.n, t.z, t.cls), d)
    blocks = {}
    for i in range(1, d + 1):
        for j in range(1, d + 1):
            blocks[(i, j)] = sum(np.kron(first[(i, k)], t.blocks[(k, j)]) for k in range(1, d + 1))
    return Tower(t.kind, t.n, t.z, t.order + 1, blocks, t.cls)


def build_tower(kind: str, n: int, z: float, order: int, cls: str = "KJ") -> Tower:
    if order < 0:
        raise ValueError("order must be >= 0")
    t = seed_tower(kind, n, z, cls)
    for _ in range(order):
        t = coproduct_step(t)
    return t


def block_traces(t: Tower) -> np.ndarray:
    """``Tr X_ii`` for ``i = 1..2n``."""
    return np.array([np.trace(t.blocks[(i, i)]) for i in range(1, 2 * t.n + 1)])


def trace_matrix(kind: str, n: int, z: float, order: int, cls: str = "KJ") -> np.ndarray:
    """``τ_ij = Tr X^{(r)}_ij`` without forming the tower.

    ``Tr(A ⊗ B) = Tr A Tr B`` turns the coproduct into ``τ^{(r)} = τ^{(1)} τ^{(r-1)}``,
    so ``τ^{(r)}`` is the ``r``-th power of the fundamental trace matrix.
    """
    if order < 0:
        raise ValueError("order must be >= 0")
    d = 2 * n
    first = _split_blocks(fundamental_matrix(kind, n, z, cls), d)
    tau = np.array([[np.trace(first[(i, j)]) for j in range(1, d + 1)] for i in range(1, d + 1)])
    return np.linalg.matrix_power(tau, order)


def structured_block_traces(kind: str, n: int, z: float, order: int, cls: str = "KJ") -> np.ndarray:
    """``Tr X^{(r)}_ii`` from :func:`trace_matrix`."""
    return np.diag(trace_matrix(kind, n, z, order, cls)).copy()


def tower_trace(t: Tower) -> complex:
    """``Tr sum_i X_ii``."""
    if t.order < 1:
        raise ValueError("tower_trace needs order >= 1")
    return complex(np.sum(block_traces(t)))


def closed_form_trace_n2(z: float, order: int) -> float:
    """``2((1+z)^r + (1-z)^r)``, the ``n = 2`` trace of both towers."""
    return 2.0 * ((1.0 + z) ** order + (1.0 - z) ** order)


def closed_form_trace(n: int, z: float, order: int) -> float:
    """``n((1+z)^r + (1-z)^r)``: the sum of the per-block closed forms over ``2n`` blocks."""
    return n * ((1.0 + z) ** order + (1.0 - z) ** order)


def block_trace_factor(kind: str, i: int, z: float) -> float:
    """Per-step factor of ``Tr X_ii``: ``1 + (-1)^i z`` for ``L``, ``1 - (-1)^i z`` for ``T``."""
    s = 1 if _check_kind(kind) == "L" else -1
    return 1.0 + s * (-1) ** i * z


def check_block_recursion(
    kind: str, n: int, z: float, order: int, cls: str = "KJ", tol: float | None = None
) -> ResidualReport:
    """``Tr X^{(r)}_ii = f_i Tr X^{(r-1)}_ii`` for ``r = 1..order`` and every ``i``.

    Uses the dense tower while it fits, the trace-matrix powers beyond that.
    """
    factors = np.array([block_trace_factor(kind, i, z) for i in range(1, 2 * n + 1)])
    d = 2 * n
    t = seed_tower(kind, n, z, cls)
    prev = block_traces(t)
    diffs = []
    for r in range(1, order + 1):
        if t is not None and d * d * d ** (2 * r) <= MAX_TOWER_ENTRIES:
            t = coproduct_step(t)
            cur = block_traces(t)
        else:
            t = None
            cur = structured_block_traces(kind, n, z, r, cls)
        diffs.append(cur - factors * prev)
        prev = cur
    return residual_report(f"block-recursion[{kind},n={n},z={z:g},r<={order}]", np.concatenate(diffs), tol)


def rapidity_difference(z: float, zprime: float) -> float:
    """``tanh(θ - θ')`` from ``z = tanh θ``, ``z' = tanh θ'``."""
    den = 1.0 - z * zprime
    if abs(den) < 1e-15:
        raise ValueError(f"pole: 1 - z z' = 0 for z={z}, z'={zprime}")
    return (z - zprime) / den


def _aux_embeddings(X: np.ndarray, d: int) -> tuple[np.ndarray, np.ndarray]:
    """``X`` on ``aux ⊗ Q`` lifted to ``V ⊗ V ⊗ Q`` on aux slot 1 and on aux slot 2."""
    q = X.shape[0] // d
    on_second = np.kron(identity(d), X)
    swap = np.kron(permutation_P(d // 2), identity(q))
    return swap @ on_second @ swap, on_second


def _tower_operator(kind, n, z, order, cls):
    if order == 1:
        return fundamental_matrix(kind, n, z, cls)
    return build_tower(kind, n, z, order, cls).dense()


def _exchange(kind: str, n: int, z: float, zprime: float, cls: str, order: int):
    d = 2 * n
    if d * d * d**order > MAX_DIM:
        raise ValueError(f"too large: exchange relation space exceeds {MAX_DIM}")
    zpp = rapidity_difference(z, zprime)
    Xz = _tower_operator(kind, n, z, order, cls)
    Xzp = _tower_operator(kind, n, zprime, order, cls)
    R = np.kron(rhat(n, zpp, cls), identity(d**order))
    Xz1, Xz2 = _aux_embeddings(Xz, d)
    Xzp1, Xzp2 = _aux_embeddings(Xzp, d)
    if kind == "L":
        lhs = R @ Xz2 @ Xzp1
        rhs = Xzp2 @ Xz1 @ R
    else:
        lhs = R @ Xz1 @ Xzp2
        rhs = Xzp1 @ Xz2 @ R
    return lhs, rhs


def check_rll(
    n: int, z: float, zprime: float, cls: str = "KJ", order: int = 1, tol: float | None = None
) -> ResidualReport:
    lhs, rhs = _exchange("L", n, z, zprime, cls, order)
    return residual_report(f"RLL[n={n},r={order},z={z:g},z'={zprime:g}]", lhs - rhs, tol)


def check_rtt(
    n: int, z: float, zprime: float, cls: str = "KJ", order: int = 1, tol: float | None = None
) -> ResidualReport:
    lhs, rhs = _exchange("T", n, z, zprime, cls, order)
    return residual_report(f"RTT[n={n},r={order},z={z:g},z'={zprime:g}]", lhs - rhs, tol)


def check_frt_constant(n: int, cls: str = "KJ", tol: float | None = None) -> list[ResidualReport]:
    """``R̂ L_2^ε L_1^ε' = L_2^ε' L_1^ε R̂`` for ``(ε, ε') = (+,+), (-,-), (+,-)`` at ``L^± = L(±1)``."""
    d = 2 * n
    R = np.kron(rhat(n, 1.0, cls), identity(d))
    L = {s: _aux_embeddings(rhat(n, s, cls) @ permutation_P(n), d) for s in (1, -1)}
    reports = []
    for e, ep in ((1, 1), (-1, -1), (1, -1)):
        lhs = R @ L[e][1] @ L[ep][0]
        rhs = L[ep][1] @ L[e][0] @ R
        label = "".join("+" if s > 0 else "-" for s in (e, ep))
        reports.append(residual_report(f"FRT[{label},n={n}]", lhs - rhs, tol))
    return reports


def check_diagonal_tt(n: int, z: float, zprime: float, tol: float | None = None) -> ResidualReport:
    """RTT relation conjugated by ``M`` on the auxiliary pair, with ``D = M R̂ M^{-1}``.

    ``D(z'') (M T_1(z) T_2(z') M^{-1}) = (M T_1(z') T_2(z) M^{-1}) D(z'')``.
    Defined for the KJ class, the one ``M`` diagonalizes.
    """
    d = 2 * n
    zpp = rapidity_difference(z, zprime)
    M = np.kron(build_M(n), identity(d))
    Minv = np.kron(build_M(n, inverse=True), identity(d))
    D = np.kron(diagonal_form(n, zpp), identity(d))
    Tz1, Tz2 = _aux_embeddings(fundamental_matrix("T", n, z), d)
    Tzp1, Tzp2 = _aux_embeddings(fundamental_matrix("T", n, zprime), d)
    lhs = D @ (M @ Tz1 @ Tzp2 @ Minv)
    rhs = (M @ Tzp1 @ Tz2 @ Minv) @ D
    return residual_report(f"diagonal-TT[n={n},z={z:g},z'={zprime:g}]", lhs - rhs, tol)
