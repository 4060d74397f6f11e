"""Second-order echo expansions and the two-level avoided-crossing toy model.

The second-order echo formula used throughout is

    L(t) ~= 1 - 2 eps^2 sum_{a>=1} |V_0a|^2 (1 - cos((E_a-E_0) t)) / (E_a-E_0)^2,

with V_0a = <a|V|0> taken in the eigenbasis of the unperturbed Hamiltonian.
Terms with a vanishing denominator (degenerate ground manifold) enter with
their finite analytic limit (1 - cos(x t))/x^2 -> t^2/2, so the formulas are
usable at exact crossings as well.

Low-frequency Fourier components of the finite-time echo track the
ground-state sensitivity to the control parameter (a susceptibility-style
quantity); no transform of that kind is implemented here, the scans expose
the raw L(t) values instead.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dynamics import SpectralDecomposition
from .states import HermitianOperator

DEGENERACY_TOL = 1e-10


class DegenerateGapError(ValueError):
    """The ground level is degenerate; use the full perturbative sum."""


def _as_matrix(v: "HermitianOperator | np.ndarray") -> np.ndarray:
    # arbitrary-dimension Hermitian inputs are fine here; only the chain
    # operators carry a qubit count
    return v.matrix if isinstance(v, HermitianOperator) else np.asarray(v, dtype=complex)


def _coupling_to_ground(
    spec: SpectralDecomposition, v: "HermitianOperator | np.ndarray"
) -> np.ndarray:
    """Vector of <a|V|0> over all eigenstates a."""
    ground = spec.eigenvectors[:, 0]
    return spec.eigenvectors.conj().T @ (_as_matrix(v) @ ground)


def echo_perturbative(
    spec: SpectralDecomposition, v: "HermitianOperator | np.ndarray", epsilon: float, t: float
) -> float:
    """Second-order echo; exact ground state of the decomposed H as reference."""
    v0a = _coupling_to_ground(spec, v)
    de = spec.eigenvalues - spec.eigenvalues[0]
    safe = np.where(np.abs(de) <= DEGENERACY_TOL, 1.0, de)
    weights = np.where(
        np.abs(de) <= DEGENERACY_TOL, 0.5 * t * t, (1.0 - np.cos(de * t)) / safe**2
    )
    return float(1.0 - 2.0 * epsilon**2 * np.sum(np.abs(v0a[1:]) ** 2 * weights[1:]))


def echo_amplitude_expansion(
    spec: SpectralDecomposition, v: "HermitianOperator | np.ndarray", epsilon: float, t: float
) -> complex:
    """Second-order expansion of the echo amplitude ell(t).

    |ell|^2 agrees with echo_perturbative to third order in epsilon; a pure
    phase perturbation (V proportional to the identity) gives |ell|^2 = 1 up
    to fourth order, as it must.
    """
    v0a = _coupling_to_ground(spec, v)
    de = spec.eigenvalues - spec.eigenvalues[0]
    safe = np.where(np.abs(de) <= DEGENERACY_TOL, 1.0, de)
    weights = np.where(
        np.abs(de) <= DEGENERACY_TOL,
        0.5 * t * t + 0j,
        (1.0 - np.exp(-1j * de * t) - 1j * t * de) / safe**2,
    )
    v00 = v0a[0].real
    second = abs(v0a[0]) ** 2 * t * t + 2.0 * np.sum(np.abs(v0a[1:]) ** 2 * weights[1:])
    return complex(1.0 - 1j * t * v00 * epsilon - 0.5 * epsilon**2 * second)


def echo_two_level(
    spec: SpectralDecomposition,
    v: "HermitianOperator | np.ndarray",
    epsilon: float,
    t: float,
    group_tol: float = 1e-8,
    weight_tol: float = 1e-12,
) -> float:
    """Echo truncated to the lowest excited level that couples to the ground state.

    L ~= 1 - 2 (|V_01|^2 / Delta^2) eps^2 (1 - cos(Delta t)), with |V_01|^2
    summed over the degenerate cluster (width ``group_tol``) of the selected
    level. Clusters whose total weight is below ``weight_tol`` are skipped:
    for even chains the literal first excited state is the reflection-odd
    partner of the ground state and its coupling vanishes identically, so the
    first contributing level sits one cluster higher.
    """
    w = spec.eigenvalues
    if w[1] - w[0] <= DEGENERACY_TOL:
        raise DegenerateGapError(
            "ground level is degenerate; echo_perturbative handles this case"
        )
    v0a = np.abs(_coupling_to_ground(spec, v)) ** 2
    a = 1
    while a < len(w):
        b = a + 1
        while b < len(w) and w[b] - w[a] <= group_tol:
            b += 1
        weight = float(np.sum(v0a[a:b]))
        if weight > weight_tol:
            delta = float(w[a] - w[0])
            return float(
                1.0 - 2.0 * (weight / delta**2) * epsilon**2 * (1.0 - np.cos(delta * t))
            )
        a = b
    return 1.0


@dataclass(frozen=True)
class LandauZenerParams:
    """Two-level avoided-crossing model under transverse and longitudinal drive.

    H = delta_min * sigma_x + sign(lam) * |lam|^z_nu * sigma_z, with the
    crossing at lam = 0. z_nu generalizes how fast the gap closes; z_nu = 1
    is the plain avoided-crossing case.
    """

    delta_min: float
    lam: float
    z_nu: float = 1.0
    epsilon: float = 0.0
    t: float = 0.0

    def __post_init__(self):
        if self.delta_min <= 0:
            raise ValueError("delta_min must be positive")
        if self.z_nu <= 0:
            raise ValueError("z_nu must be positive")


def lz_hamiltonian(p: LandauZenerParams) -> HermitianOperator:
    """The 2x2 model Hamiltonian."""
    zfield = np.sign(p.lam) * abs(p.lam) ** p.z_nu
    m = np.array([[zfield, p.delta_min], [p.delta_min, -zfield]], dtype=complex)
    return HermitianOperator(m, 1)


def lz_gap(p: LandauZenerParams) -> float:
    """Level splitting 2*sqrt(|lam|^(2 z_nu) + delta_min^2)."""
    return float(2.0 * np.sqrt(abs(p.lam) ** (2 * p.z_nu) + p.delta_min**2))


def lz_matrix_element_sq(p: LandauZenerParams) -> float:
    """|<excited|sigma_z|ground>|^2; peaks at exactly 1 at the crossing."""
    return float(p.delta_min**2 / (p.delta_min**2 + abs(p.lam) ** (2 * p.z_nu)))


def lz_echo_gaussian(p: LandauZenerParams) -> float:
    """Short-time echo exp(-eps^2 delta_min^2 t^2 / (delta_min^2 + |lam|^(2 z_nu)))."""
    rate = p.epsilon**2 * p.delta_min**2 / (p.delta_min**2 + abs(p.lam) ** (2 * p.z_nu))
    return float(np.exp(-rate * p.t**2))
