"""Generalized Bell states from the braid matrix and their Schmidt data.

Spin labels map to basis indices as ``|n⟩ ↦ 1, ..., |1⟩ ↦ n, |-1⟩ ↦ n+1, ..., |-n⟩ ↦ 2n``,
so ``|n-j⟩`` is index ``j+1`` and ``|-n+j⟩`` is its mirror ``2n-j``.
For the 3-level parties the order is ``(+, 0, -)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .braidgen import BraidSpec, OddBraidParams, build_braid, build_odd_braid

SCHMIDT_CUTOFF = 1e-12
ODD_LABELS = ("+", "0", "-")


@dataclass(frozen=True)
class TwoPartyState:
    """Pure state on ``C^d ⊗ C^d`` in the product basis, first party most significant.

    ``flip_sign`` is the sign ``R̂(z)`` itself puts on the mirrored ket when it
    produces this state from a product; it is 1 where not applicable.
    """

    local_dim: int
    amplitudes: np.ndarray
    flip_sign: int = 1

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=np.complex128).reshape(-1)
        if amps.size != self.local_dim**2:
            raise ValueError(f"shape: expected {self.local_dim**2} amplitudes, got {amps.size}")
        norm = np.linalg.norm(amps)
        if abs(norm - 1.0) > 1e-12:
            raise ValueError(f"state is not normalized: |ψ| = {norm}")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @property
    def n(self) -> int | None:
        """Half the local dimension for the even families, ``None`` for odd parties."""
        return self.local_dim // 2 if self.local_dim % 2 == 0 else None

    def matrix(self) -> np.ndarray:
        """Amplitudes as the ``d × d`` coefficient matrix ``ψ[c, c']``."""
        return self.amplitudes.reshape(self.local_dim, self.local_dim)

    def support(self, tol: float = 1e-15) -> dict[tuple[int, int], complex]:
        """Nonzero amplitudes keyed by 1-based ``(c, c')``."""
        m = self.matrix()
        return {
            (int(i) + 1, int(j) + 1): complex(m[i, j])
            for i, j in zip(*np.nonzero(np.abs(m) > tol))
        }


@dataclass(frozen=True)
class SchmidtProfile:
    coefficients: np.ndarray
    rank: int
    entropy_bits: float


def schmidt_profile(state: TwoPartyState) -> SchmidtProfile:
    """Singular values of the amplitude matrix and the von Neumann entropy in bits."""
    s = np.linalg.svd(state.matrix(), compute_uv=False)
    rank = int(np.count_nonzero(s > SCHMIDT_CUTOFF))
    p = s[:rank] ** 2
    entropy = float(-np.sum(p * np.log2(p))) if rank > 1 else 0.0
    return SchmidtProfile(s, rank, max(entropy, 0.0))


def spin_index(n: int, label: int) -> int:
    """1-based basis index of the spin label ``±1..±n``."""
    if label == 0 or abs(label) > n:
        raise ValueError(f"label: spin {label} is not in ±1..±{n}")
    return n - label + 1 if label > 0 else n - label


def bell_generalized(n: int, z: float, j: int, k: int, sign: int = 1) -> TwoPartyState:
    """``(1/√(1+z²))(|n-j⟩|n-k⟩ ± z|-n+j⟩|-n+k⟩)`` with ``0 <= j, k <= n-1``.

    The returned ``flip_sign`` is ``(-1)^{k+1}``, the sign ``R̂(z)`` attaches to
    the mirrored ket, so this state equals ``R̂^{s}(z)|n-j⟩|n-k⟩`` with
    ``s = sign * flip_sign``.
    """
    if not (0 <= j <= n - 1 and 0 <= k <= n - 1):
        raise ValueError(f"label: j={j}, k={k} must lie in 0..{n - 1}")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    d = 2 * n
    c, cp = j + 1, k + 1
    psi = np.zeros((d, d), dtype=np.complex128)
    psi[c - 1, cp - 1] = 1.0
    psi[d - c, d - cp] = sign * z
    psi /= np.sqrt(1.0 + z * z)
    return TwoPartyState(d, psi, flip_sign=(-1) ** cp)


def act_and_analyze(n: int, z: float, c: int, cp: int) -> tuple[TwoPartyState, SchmidtProfile]:
    """Apply ``R̂(z)`` (class KJ) to ``e_c ⊗ e_c'`` and return the state with its Schmidt profile."""
    d = 2 * n
    if not (1 <= c <= d and 1 <= cp <= d):
        raise ValueError(f"label: (c, c')=({c}, {cp}) outside 1..{d}")
    e = np.zeros(d * d, dtype=np.complex128)
    e[(c - 1) * d + (cp - 1)] = 1.0
    out = build_braid(BraidSpec(n, "KJ", z)) @ e
    state = TwoPartyState(d, out, flip_sign=(-1) ** cp)
    return state, schmidt_profile(state)


def odd_superpositions(params: OddBraidParams) -> list[TwoPartyState]:
    """``R̂(θ)`` of the 9 × 9 family applied to each product ket, in ``(+,0,-)⊗(+,0,-)`` order."""
    R = build_odd_braid(params)
    return [TwoPartyState(3, R[:, k]) for k in range(9)]


def odd_ket_label(index: int) -> str:
    """``'+0'``-style label of the 0-based product index on two 3-level parties."""
    return ODD_LABELS[index // 3] + ODD_LABELS[index % 3]
