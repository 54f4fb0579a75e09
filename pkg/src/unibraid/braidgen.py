"""Constructors for the generator set, braid matrices, projectors and diagonalizers.

Matrix-unit convention: ``(ij)`` has a 1 at row ``i``, column ``j``
(1-indexed), and ``ī = 2n - i + 1``.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from functools import lru_cache

import numpy as np

from .tensorcore import (
    as_dense,
    identity,
    signed_antidiagonal,
    tensor_product,
)

#: Braid classes and their (left, right) tensor factors.
CLASSES = {"KJ": ("K", "J"), "JK": ("J", "K"), "KL": ("K", "L"), "LK": ("L", "K")}
CLASS_ALIASES = {"I": "KJ", "II": "JK"}


def canonical_class(cls: str) -> str:
    key = CLASS_ALIASES.get(cls, cls)
    if key not in CLASSES:
        raise ValueError(f"class: unknown braid class {cls!r}; expected one of {sorted(CLASSES)}")
    return key


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class GeneratorSet:
    n: int
    I: np.ndarray
    J: np.ndarray
    K: np.ndarray
    L: np.ndarray

    def __getitem__(self, name: str) -> np.ndarray:
        return {"I": self.I, "J": self.J, "K": self.K, "L": self.L}[name]


@lru_cache(maxsize=None)
def build_generators(n: int) -> GeneratorSet:
    """The four ``2n``-square matrices ``I, J, K, L``.

    ``K`` is the plain anti-diagonal permutation; ``J`` and ``L`` are signed
    anti-diagonals with ``J² = L² = -I``. For ``n = 1``, ``J == L``.
    The returned arrays are read-only.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    d = 2 * n
    rows, cols = np.arange(d), np.arange(d)[::-1]
    mats = {}
    for name in "JKL":
        X = np.zeros((d, d), dtype=np.complex128)
        X[rows, cols] = signed_antidiagonal(n, name)
        mats[name] = _frozen(X)
    return GeneratorSet(n, _frozen(identity(d)), mats["J"], mats["K"], mats["L"])


@dataclass(frozen=True)
class BraidSpec:
    """Symbolic braid matrix ``(1/√(1+z²))(I⊗I + z A⊗B)`` for class ``A B``.

    ``z`` ranges over ``[-1, 1]``; ``z = ±1`` gives the constant ``R̂^{±1}``.
    With ``normalized=False`` the ``1/√(1+z²)`` factor is dropped.
    """

    n: int
    cls: str = "KJ"
    z: float = 1.0
    normalized: bool = True

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")
        object.__setattr__(self, "cls", canonical_class(self.cls))
        if not np.isfinite(self.z) or abs(self.z) > 1.0:
            raise ValueError(f"z: spectral parameter {self.z} outside [-1, 1]")

    @classmethod
    def from_theta(cls, n: int, theta: float, braid_class: str = "KJ", normalized: bool = True):
        return cls(n, braid_class, float(np.tanh(theta)), normalized)

    def inverse(self) -> "BraidSpec":
        # (A⊗B)² = -I for every class, so R̂(z)^{-1} = R̂(-z)
        return replace(self, z=-self.z)


def build_braid(spec: BraidSpec) -> np.ndarray:
    g = build_generators(spec.n)
    left, right = CLASSES[spec.cls]
    d = 2 * spec.n
    R = identity(d * d) + spec.z * tensor_product(g[left], g[right])
    if spec.normalized:
        R /= np.sqrt(1.0 + spec.z**2)
    return R


def rhat(n: int, z: float = 1.0, cls: str = "KJ", power: int = 1) -> np.ndarray:
    """Shorthand for ``build_braid(BraidSpec(n, cls, z))`` raised to ``power = ±1``."""
    if power not in (1, -1):
        raise ValueError("power must be +1 or -1")
    return build_braid(BraidSpec(n, cls, power * z))


def build_projectors(n: int) -> tuple[np.ndarray, np.ndarray]:
    """``P± = ½(I⊗I ± i K⊗J)``."""
    g = build_generators(n)
    KJ = tensor_product(g.K, g.J)
    I2 = identity((2 * n) ** 2)
    return 0.5 * (I2 + 1j * KJ), 0.5 * (I2 - 1j * KJ)


def build_M(n: int, inverse: bool = False) -> np.ndarray:
    """Diagonalizer ``M^{±1} = (1/√2)(I⊗I ± i L⊗J)``; unitary, so ``M^{-1} = M†``."""
    g = build_generators(n)
    s = -1.0 if inverse else 1.0
    return (identity((2 * n) ** 2) + s * 1j * tensor_product(g.L, g.J)) / np.sqrt(2.0)


def diagonal_form(n: int, z: float) -> np.ndarray:
    """``M R̂(z) M^{-1}``: the first ``2n²`` entries are ``(1-iz)/√(1+z²)``, the rest ``(1+iz)/√(1+z²)``."""
    half = 2 * n * n
    c = 1.0 / np.sqrt(1.0 + z * z)
    diag = np.concatenate([np.full(half, (1 - 1j * z) * c), np.full(half, (1 + 1j * z) * c)])
    return np.diag(diag)


def pair_permutation_sources(n: int) -> np.ndarray:
    """Source pair for each target pair of the involution ``U`` (1-based).

    The ``(2n)²`` diagonal entries of ``diagonal_form`` are grouped in
    consecutive pairs; the first half carry ``1-iz``, the second ``1+iz``.
    ``U`` reorders them so the pattern alternates ``(1-iz)-pair, (1+iz)-pair``.
    Pairs already in a correct position stay; the misplaced ones in each half
    are swapped with each other, giving an involution.
    """
    npairs = 2 * n * n
    half = npairs // 2
    target_minus = np.arange(npairs) % 2 == 0  # wants a (1-iz) pair
    src = np.arange(npairs)
    wrong_first = [p for p in range(half) if not target_minus[p]]
    wrong_second = [p for p in range(half, npairs) if target_minus[p]]
    for p, q in zip(wrong_first, reversed(wrong_second)):
        src[p], src[q] = q, p
    return src + 1


def build_pair_permutation(n: int) -> np.ndarray:
    """The involution ``U`` acting on pairs of basis vectors (``I_(2)`` blocks)."""
    src = pair_permutation_sources(n) - 1
    npairs = src.size
    Upairs = np.zeros((npairs, npairs), dtype=np.complex128)
    Upairs[np.arange(npairs), src] = 1.0
    return np.kron(Upairs, identity(2))


def block_diagonal_target(n: int, z: float = 1.0) -> np.ndarray:
    """Direct sum of ``n²`` copies of the ``4 × 4`` braid matrix ``R̂_(2)(z)``."""
    return np.kron(identity(n * n), rhat(1, z))


def build_block_diagonalizer(n: int) -> np.ndarray:
    """``V`` with ``V R̂_(2n)(z) V^{-1} = ⊕ R̂_(2)(z)`` for every ``z``.

    Built as ``V = W U M``: diagonalize with ``M``, regroup eigenvalue pairs
    with ``U``, and undo the ``n = 1`` diagonalization on each 4-block with
    ``W = ⊕ M_(2)^{-1}``. ``V`` is unitary.
    """
    if n < 2:
        raise ValueError("trivial: block-diagonalization needs n >= 2")
    W = np.kron(identity(n * n), build_M(1, inverse=True))
    return W @ build_pair_permutation(n) @ build_M(n)


@dataclass(frozen=True)
class OddBraidParams:
    """Real parameters of the 9 × 9 complex unitary family and its rapidity ``theta``."""

    m11p: float
    m11m: float
    m12p: float
    m12m: float
    m21p: float
    m21m: float
    theta: float = 0.0

    def at(self, theta: float) -> "OddBraidParams":
        return replace(self, theta=theta)

    def coefficients(self) -> dict[str, tuple[complex, complex]]:
        """``{'a': (a+, a-), 'b': (b+, b-), 'c': (c+, c-)}`` at ``self.theta``."""
        def pair(p, m):
            ep, em = np.exp(1j * p * self.theta), np.exp(1j * m * self.theta)
            return (0.5 * (ep + em), 0.5 * (ep - em))

        return {
            "a": pair(self.m11p, self.m11m),
            "b": pair(self.m12p, self.m12m),
            "c": pair(self.m21p, self.m21m),
        }


# (row, partner) index pairs of the 9 × 9 pattern, 0-based, and the coefficient used
_ODD_PATTERN = ((0, 8, "a"), (1, 7, "b"), (2, 6, "a"), (3, 5, "c"))


def build_odd_braid(params: OddBraidParams, theta: float | None = None) -> np.ndarray:
    """The ``9 × 9`` unitary braid matrix on ``(+,0,-)⊗(+,0,-)``.

    Each coupled pair ``(k, 8-k)`` carries ``[[x+, x-], [x-, x+]]``; the
    central entry is exactly 1.
    """
    if theta is not None:
        params = params.at(theta)
    co = params.coefficients()
    R = np.zeros((9, 9), dtype=np.complex128)
    for i, j, key in _ODD_PATTERN:
        plus, minus = co[key]
        R[i, i] = R[j, j] = plus
        R[i, j] = R[j, i] = minus
    R[4, 4] = 1.0
    return R


def canonicalize_phases(r_phased, tol: float = 1e-12) -> tuple[np.ndarray, np.ndarray]:
    """Remove the spurious anti-diagonal phase of a 4 × 4 braid-type matrix.

    Returns ``(Y, r_canonical)`` with ``Y = diag(e^{-iφ/4}, e^{iφ/4})`` and
    ``r_canonical = (Y⊗Y) r (Y⊗Y)^{-1}``. The input may carry any diagonal
    (it is left unchanged); off the diagonal only the anti-diagonal may be
    populated, with ``r[1,2], r[2,1]`` real and all four anti-diagonal
    entries of one common modulus, the corner product being real.

    Raises ``ValueError('not gauge-equivalent ...')`` otherwise.
    """
    r = as_dense(r_phased)
    if r.shape != (4, 4):
        raise ValueError("shape: canonicalize_phases handles 4x4 matrices only")
    anti = np.zeros((4, 4), dtype=bool)
    anti[np.arange(4), np.arange(4)[::-1]] = True
    stray = r.copy()
    stray[anti] = 0
    stray[np.diag_indices(4)] = 0
    if np.max(np.abs(stray)) > tol:
        raise ValueError("not gauge-equivalent: entries outside the diagonal and anti-diagonal")
    corner, lower = r[0, 3], r[3, 0]
    inner = np.array([r[1, 2], r[2, 1]])
    scale = abs(inner[0])
    if (
        scale <= tol
        or abs(abs(corner) - scale) > tol
        or abs(abs(lower) - scale) > tol
        or abs(abs(inner[1]) - scale) > tol
        or np.max(np.abs(inner.imag)) > tol
        or abs((corner * lower).imag) > tol
    ):
        raise ValueError("not gauge-equivalent: anti-diagonal phases cannot be removed by Y⊗Y")
    phi = float(np.angle(corner))
    Y = np.diag([np.exp(-1j * phi / 4), np.exp(1j * phi / 4)])
    YY = np.kron(Y, Y)
    YYinv = np.kron(Y.conj(), Y.conj())
    return Y, YY @ r @ YYinv


def phased_antidiagonal(phi: float) -> np.ndarray:
    """The ``4 × 4`` anti-diagonal ``L⊗K`` with the phase ``e^{±iφ}`` on its corner entries."""
    A = np.zeros((4, 4), dtype=np.complex128)
    A[0, 3] = np.exp(1j * phi)
    A[1, 2] = 1.0
    A[2, 1] = -1.0
    A[3, 0] = -np.exp(-1j * phi)
    return A


def phased_braid(phi: float) -> np.ndarray:
    """``(1/√2)(I⊗I + A_φ)`` with ``A_φ`` from :func:`phased_antidiagonal`; a braid matrix for every ``φ``."""
    return (identity(4) + phased_antidiagonal(phi)) / np.sqrt(2.0)
