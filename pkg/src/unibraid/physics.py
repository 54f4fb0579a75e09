"""Chain Hamiltonians, Cayley-transform potentials and noncommutative-space relations."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .braidgen import CLASSES, BraidSpec, build_braid, build_generators, build_projectors, canonical_class, rhat
from .conformance import ResidualReport, residual_report
from .tensorcore import MAX_DIM, cyclic_shift, identity, permutation_P, tensor_product

SINGULAR_THRESHOLD = 1e-10


# -- chain Hamiltonians -----------------------------------------------------


def derivative_at_zero(cls: str, n: int) -> np.ndarray:
    """``∂_θ R̂(θ)`` at ``θ = 0``, which is the bare tensor pair ``A⊗B`` of the class."""
    g = build_generators(n)
    left, right = CLASSES[canonical_class(cls)]
    return tensor_product(g[left], g[right])


def finite_difference_derivative(cls: str, n: int, h: float = 1e-5) -> np.ndarray:
    """Central difference of ``R̂(θ) = R̂(tanh θ)`` at ``θ = 0``."""
    up = build_braid(BraidSpec.from_theta(n, h, cls))
    down = build_braid(BraidSpec.from_theta(n, -h, cls))
    return (up - down) / (2 * h)


@dataclass(frozen=True)
class ChainSpec:
    """Cyclic chain of ``sites`` copies of ``C^{2n}``."""

    n: int
    sites: int

    def __post_init__(self):
        if self.n < 1 or self.sites < 2:
            raise ValueError("ChainSpec needs n >= 1 and sites >= 2")

    @property
    def dim(self) -> int:
        return (2 * self.n) ** self.sites


def hamiltonian(spec, sites=None, cls: str = "KJ") -> np.ndarray:
    """Cyclic chain Hamiltonian ``sum_{k=1}^{r} Ṙ_{k,k+1}(0)`` with site ``r+1 ≡ 1``.

    Called as ``hamiltonian(ChainSpec(n, r), cls)`` or ``hamiltonian(n, r, cls)``.
    Each term is the slot-(1,2) embedding conjugated by powers of the cyclic
    shift, so the wraparound term puts the left factor on site ``r`` and the
    right factor on site 1.
    """
    if isinstance(spec, ChainSpec):
        if isinstance(sites, str):
            cls = sites
        n, sites = spec.n, spec.sites
    else:
        n = spec
    if sites is None or sites < 2:
        raise ValueError("sites must be >= 2")
    d = 2 * n
    if d**sites > MAX_DIM:
        raise ValueError(f"too large: (2n)^r = {d**sites} exceeds {MAX_DIM}")
    first = np.kron(derivative_at_zero(cls, n), identity(d ** (sites - 2)))
    S = cyclic_shift(d, sites)
    H = np.zeros_like(first)
    term = first
    for _ in range(sites):
        H = H + term
        term = S @ term @ S.T
    return H


def hamiltonian_two_site_formula(n: int) -> np.ndarray:
    """``sum_{i,j} ((-1)^{j̄} + (-1)^{ī}) (i ī)⊗(j j̄)``, the ``r = 2`` result for both classes."""
    d = 2 * n
    H = np.zeros((d * d, d * d), dtype=np.complex128)
    for i in range(1, d + 1):
        for j in range(1, d + 1):
            ib, jb = d - i + 1, d - j + 1
            coeff = (-1) ** jb + (-1) ** ib
            H[(i - 1) * d + (j - 1), (ib - 1) * d + (jb - 1)] += coeff
    return H


# -- potentials for factorizable S-matrices ---------------------------------


class SingularShiftError(ValueError):
    """The shift ``μ`` makes ``√(1+z²) R(z) - μ I`` singular."""

    def __init__(self, denominator: str, value: complex):
        self.denominator = denominator
        self.value = value
        super().__init__(f"singular shift: denominator {denominator} = {value:.3e} vanishes")


@dataclass(frozen=True)
class PotentialParams:
    n: int
    z: float
    mu: complex

    @property
    def lam(self) -> complex:
        return self.mu / np.sqrt(1.0 + self.z**2)


def shift_denominators(n: int, z: float, mu: complex) -> dict[str, complex]:
    """Scalar denominators whose zeros are the singular shifts.

    ``K1 = 1/((1-μ)² + z²)`` and ``K2 = 1/(z² - μ² + 1)`` cover ``n = 1``;
    from ``n = 2`` on, ``K3 = 1/((1+μ)² + z²)`` appears as well. Together they
    exhaust the spectrum ``{±1 ± iz, ±√(1+z²)}`` of ``√(1+z²) R(z)``.
    """
    den = {"K1": (1 - mu) ** 2 + z**2, "K2": z**2 - mu**2 + 1}
    if n >= 2:
        den["K3"] = (1 + mu) ** 2 + z**2
    return den


def _guard(n, z, mu):
    for name, value in shift_denominators(n, z, mu).items():
        if abs(value) < SINGULAR_THRESHOLD:
            raise SingularShiftError(name, value)


def yang_baxter_matrix(n: int, z: float, cls: str = "KJ") -> np.ndarray:
    """``R(z) = P R̂(z)``."""
    return permutation_P(n) @ rhat(n, z, cls)


def cayley_potential(params, z: float | None = None, mu: complex | None = None, cls: str = "KJ") -> np.ndarray:
    """``X(z) = (√(1+z²) R(z) - μ I)^{-1}`` by dense solve.

    Called as ``cayley_potential(PotentialParams(n, z, mu))`` or ``cayley_potential(n, z, mu)``.
    """
    if isinstance(params, PotentialParams):
        n, z, mu = params.n, params.z, params.mu
    else:
        n = params
    _guard(n, z, mu)
    A = np.sqrt(1.0 + z * z) * yang_baxter_matrix(n, z, cls) - mu * identity((2 * n) ** 2)
    return np.linalg.solve(A, identity(A.shape[0]))


def potential_V(n: int, z: float, mu: complex, cls: str = "KJ") -> np.ndarray:
    """``V`` from ``-iV = I + 2μX``."""
    X = cayley_potential(n, z, mu, cls)
    return 1j * (identity(X.shape[0]) + 2 * mu * X)


def potential_elements(V: np.ndarray, n: int) -> np.ndarray:
    """``V[a, b, c, d]``, the coefficient of ``(ab)⊗(cd)`` (0-based indices)."""
    d = 2 * n
    return np.asarray(V).reshape(d, d, d, d).transpose(0, 2, 1, 3)


def cayley_closed_form_n1(z: float, mu: complex) -> np.ndarray:
    _guard(1, z, mu)
    K1 = 1 / ((1 - mu) ** 2 + z**2)
    K2 = 1 / (z**2 - mu**2 + 1)
    return np.array(
        [
            [K1 * (1 - mu), 0, 0, -K1 * z],
            [0, K2 * (z + mu), K2, 0],
            [0, K2, -K2 * (z - mu), 0],
            [K1 * z, 0, 0, K1 * (1 - mu)],
        ],
        dtype=np.complex128,
    )


def cayley_closed_form_n2(z: float, mu: complex, coupling_prefactor: str = "K1K3") -> np.ndarray:
    """Entrywise closed form of ``X`` for ``n = 2``, class KJ.

    Entries are given as ``X(aj, ck)``, the coefficient of ``(aj)⊗(ck)``.
    The four families ``X(1j,3k), X(2j,4k), X(3j,1k), X(4j,2k)`` combine two
    of ``C1..C4`` with overall factor ``coupling_prefactor``. Only ``"K1K3"``
    reproduces the inverse; ``"K1K2"`` is accepted so the two can be compared.
    """
    _guard(2, z, mu)
    K1 = 1 / ((1 - mu) ** 2 + z**2)
    K2 = 1 / (z**2 - mu**2 + 1)
    K3 = 1 / ((1 + mu) ** 2 + z**2)
    try:
        pre = {"K1K3": K1 * K3, "K1K2": K1 * K2}[coupling_prefactor]
    except KeyError:
        raise ValueError(f"unknown coupling_prefactor {coupling_prefactor!r}") from None

    def unit(j, k):
        E = np.zeros((4, 4), dtype=np.complex128)
        E[j - 1, k - 1] = 1
        return E

    C1 = mu * unit(1, 3) + unit(3, 1) - z * unit(2, 4)
    C2 = mu * unit(2, 4) + unit(4, 2) + z * unit(1, 3)
    C3 = mu * unit(3, 1) + unit(1, 3) - z * unit(4, 2)
    C4 = mu * unit(4, 2) + unit(2, 4) + z * unit(3, 1)

    fam = {
        (1, 1): K1 * ((1 - mu) * unit(1, 1) - z * unit(4, 4)),
        (4, 4): K1 * ((1 - mu) * unit(4, 4) + z * unit(1, 1)),
        (1, 4): K2 * ((mu + z) * unit(1, 4) + unit(4, 1)),
        (4, 1): K2 * ((mu - z) * unit(4, 1) + unit(1, 4)),
        (2, 2): K1 * ((1 - mu) * unit(2, 2) + z * unit(3, 3)),
        (3, 3): K1 * ((1 - mu) * unit(3, 3) - z * unit(2, 2)),
        (2, 3): K2 * ((mu - z) * unit(2, 3) + unit(3, 2)),
        (3, 2): K2 * ((mu + z) * unit(3, 2) + unit(2, 3)),
        (1, 2): K2 * (mu * unit(1, 2) + unit(2, 1) + z * unit(3, 4)),
        (2, 1): K2 * (unit(1, 2) + mu * unit(2, 1) - z * unit(4, 3)),
        (3, 4): K2 * (z * unit(1, 2) + mu * unit(3, 4) + unit(4, 3)),
        (4, 3): K2 * (-z * unit(2, 1) + unit(3, 4) + mu * unit(4, 3)),
        (1, 3): pre * (C1 / K2 - 2 * mu * z * C2),
        (2, 4): pre * (C2 / K2 + 2 * mu * z * C1),
        (3, 1): pre * (C3 / K2 - 2 * mu * z * C4),
        (4, 2): pre * (C4 / K2 + 2 * mu * z * C3),
    }
    # X(aj, ck) sits at row (a, c), column (j, k)
    X = np.zeros((4, 4, 4, 4), dtype=np.complex128)
    for (a, c), block in fam.items():
        X[a - 1, :, c - 1, :] = block
    return X.transpose(0, 2, 1, 3).reshape(16, 16)


# -- noncommutative spaces ---------------------------------------------------


@dataclass(frozen=True)
class NCRelation:
    """``X_i X_j = phase · X_ī X_j̄`` (1-based labels)."""

    i: int
    j: int
    phase: complex
    ibar: int
    jbar: int
    independent: bool
    consistent: bool

    def __str__(self):
        p = {1j: "i", -1j: "-i"}.get(self.phase, f"({self.phase})")
        return f"X{self.i} X{self.j} = {p} X{self.ibar} X{self.jbar}"


def nc_relations(n: int) -> list[NCRelation]:
    """The ``(2n)²`` quadratic relations cut out by ``P₋ (X⊗X) = 0``.

    A relation is marked ``consistent`` when its image under
    ``(i, j) → (ī, j̄)`` carries the inverse phase, so the two restate each
    other; one representative per pair (``i <= n``) is marked ``independent``.
    """
    d = 2 * n
    phase = lambda j: 1j * (-1) ** (d - j + 1)  # noqa: E731  i(-1)^{j̄}
    out = []
    for i in range(1, d + 1):
        for j in range(1, d + 1):
            ib, jb = d - i + 1, d - j + 1
            consistent = phase(j) * phase(jb) == 1
            out.append(NCRelation(i, j, phase(j), ib, jb, i <= n, consistent))
    return out


def build_Q(n: int, nu: complex) -> tuple[np.ndarray, np.ndarray]:
    """``Q = ν P₊ - I`` and its closed-form inverse ``(I - ν P₋)/(ν - 1)``."""
    if nu == 0 or nu == 1:
        raise ValueError("nu must differ from 0 and 1")
    Pp, Pm = build_projectors(n)
    I = identity(Pp.shape[0])
    return nu * Pp - I, (I - nu * Pm) / (nu - 1)


def branch_nu(branch: str) -> complex:
    """``ν = 1 - i`` for branch ``+``, ``1 + i`` for branch ``-``."""
    return {"+": 1 - 1j, "-": 1 + 1j}[branch]


def conjugation_phase(branch: str, variant: str = "stated") -> complex:
    """Phase ``c`` in ``Q^{-1} P = c R̂^{±1} P``.

    ``"stated"`` is ``e^{∓iπ/4}``; ``"derived"`` is ``e^{±3iπ/4}``, which
    follows from ``1/(ν - 1) = ±i`` and ``R̂^{±1} = e^{∓iπ/4}(I - (1∓i) P₋)``.
    The two differ by an overall sign.
    """
    s = {"+": 1, "-": -1}[branch]
    if variant == "stated":
        return np.exp(-s * 1j * np.pi / 4)
    if variant == "derived":
        return np.exp(s * 3j * np.pi / 4)
    raise ValueError(f"unknown variant {variant!r}")


def check_nc_operator_identities(
    n: int, branch: str, variant: str = "stated", nu: complex | None = None, tol: float = 1e-13
) -> tuple[ResidualReport, ResidualReport]:
    """Residuals of ``Q Q^{-1} = I`` (at ``nu``, default the branch value) and of
    ``Q^{-1} P = c R̂^{±1} P`` at ``ν = 1 ∓ i``."""
    s = {"+": 1, "-": -1}[branch]
    Q, Qinv = build_Q(n, branch_nu(branch) if nu is None else nu)
    inv_report = residual_report("Q Q^-1 = I", Q @ Qinv - identity(Q.shape[0]), tol)
    _, Qinv_b = build_Q(n, branch_nu(branch))
    P = permutation_P(n)
    diff = Qinv_b @ P - conjugation_phase(branch, variant) * rhat(n, 1.0, "KJ", s) @ P
    return inv_report, residual_report(f"Q^-1 P = c L^{branch} [{variant}]", diff, tol)
