"""Spectral machinery: diagonalization, propagators, the exact echo and the
single-step compiled echo operator.

Propagation goes through full spectral decomposition rather than a matrix
exponential per time point, because scans reuse the same spectrum across
many (epsilon, t) values; decompositions of chain Hamiltonians are memoized
per (N, B_z, B_x). The perturbed evolution uses H + epsilon*V with
V = -sum_i sigma_z^i, i.e. a longitudinal field shifted to B_z - epsilon.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .gates import global_z_phases
from .hamiltonian import ChainParams, build_hamiltonian
from .states import HermitianOperator, PureState, is_hermitian

HERMITIAN_TOL = 1e-12


@dataclass(frozen=True)
class SpectralDecomposition:
    """Ascending eigenvalues with aligned orthonormal eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def __post_init__(self):
        w = np.asarray(self.eigenvalues, dtype=float).copy()
        v = np.asarray(self.eigenvectors, dtype=complex).copy()
        w.setflags(write=False)
        v.setflags(write=False)
        object.__setattr__(self, "eigenvalues", w)
        object.__setattr__(self, "eigenvectors", v)

    @property
    def ground_energy(self) -> float:
        return float(self.eigenvalues[0])

    def ground_state(self, n_qubits: int) -> PureState:
        return PureState(self.eigenvectors[:, 0], n_qubits)


def _fix_phases(v: np.ndarray) -> np.ndarray:
    """Make the first largest-magnitude component of each column real positive."""
    idx = np.argmax(np.abs(v), axis=0)
    pivots = v[idx, np.arange(v.shape[1])]
    phases = pivots / np.abs(pivots)
    return v * phases.conj()[None, :]


def diagonalize(op: "HermitianOperator | np.ndarray") -> SpectralDecomposition:
    """Spectral decomposition with a deterministic eigenvector phase convention.

    Exactly diagonal inputs (the B_x = 0 chains) are handled by a stable sort
    of the diagonal, which keeps large zero-field sweeps cheap.
    """
    if isinstance(op, HermitianOperator):
        m = op.matrix  # hermiticity already validated on construction
    else:
        m = np.asarray(op, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError(f"expected a square matrix, got shape {m.shape}")
        if not is_hermitian(m, HERMITIAN_TOL * max(1.0, float(np.max(np.abs(m))))):
            raise ValueError("matrix is not Hermitian within tolerance")
    diag = np.diagonal(m)
    if np.count_nonzero(m) == np.count_nonzero(diag):
        order = np.argsort(diag.real, kind="stable")
        vecs = np.zeros_like(m)
        vecs[order, np.arange(m.shape[0])] = 1.0
        return SpectralDecomposition(diag.real[order], vecs)
    w, v = np.linalg.eigh(m)
    return SpectralDecomposition(w, _fix_phases(v))


@lru_cache(maxsize=64)
def spectral_for(params: ChainParams) -> SpectralDecomposition:
    """Memoized decomposition of the chain Hamiltonian at these parameters."""
    return diagonalize(build_hamiltonian(params))


def ground_state(params: ChainParams) -> PureState:
    """Exact ground eigenvector of the chain Hamiltonian."""
    return spectral_for(params).ground_state(params.n_qubits)


def ground_energy(params: ChainParams) -> float:
    return spectral_for(params).ground_energy


def gap(params: ChainParams) -> float:
    """E_1 - E_0, counting degenerate levels literally (0 at exact crossings)."""
    w = spectral_for(params).eigenvalues
    return float(w[1] - w[0])


def evolve(spec: SpectralDecomposition, state: PureState, t: float) -> PureState:
    """exp(-i*H*t)|state> through the decomposition of H."""
    coeffs = spec.eigenvectors.conj().T @ state.amplitudes
    out = spec.eigenvectors @ (np.exp(-1j * spec.eigenvalues * t) * coeffs)
    return PureState(out, state.n_qubits)


def propagate(state: PureState, h: HermitianOperator, t: float) -> PureState:
    """exp(-i*H*t)|state> for an arbitrary Hermitian operator."""
    if h.matrix.shape[0] != state.dim:
        raise ValueError(
            f"operator dimension {h.matrix.shape[0]} does not match state dimension {state.dim}"
        )
    return evolve(diagonalize(h), state, t)


def loschmidt_echo_exact(
    params: ChainParams,
    epsilon: float,
    t: float,
    initial: "PureState | None" = None,
) -> float:
    """L = |<initial| exp(i(H+eps*V)t) exp(-iHt) |initial>|^2, V = -sum sigma_z.

    Defaults to the exact ground state of H as the initial state.
    """
    if initial is None:
        initial = ground_state(params)
    if initial.dim != 2 ** params.n_qubits:
        raise ValueError("initial state dimension does not match the chain")
    fwd = evolve(spectral_for(params), initial, t)
    bwd = evolve(spectral_for(params.perturbed(epsilon)), initial, t)
    return float(abs(np.vdot(bwd.amplitudes, fwd.amplitudes)) ** 2)


def trotter_echo_diagonal(n_qubits: int, epsilon: float, tau: float) -> np.ndarray:
    """Diagonal of the compiled echo step exp(-i*tau*eps*sum_i sigma_z^i)."""
    return global_z_phases(n_qubits, tau * epsilon)


def trotter_echo_operator(n_qubits: int, epsilon: float, tau: float) -> np.ndarray:
    """The compiled echo step as a dense diagonal unitary."""
    return np.diag(trotter_echo_diagonal(n_qubits, epsilon, tau))
