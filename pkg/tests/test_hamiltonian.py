import numpy as np
import pytest

from isingcrit.hamiltonian import (
    ChainParams,
    ChainSizeError,
    UnsupportedChainError,
    build_hamiltonian,
    closed_form_energy,
    closed_form_ground,
    crossover_points,
    global_field_perturbation,
    hamiltonian_diagonal,
    multiphase_family,
    phase_labels,
    phase_state,
)
from isingcrit.states import fidelity


def test_two_site_coupling_only():
    h = build_hamiltonian(ChainParams(2, 0.0, 0.0)).matrix
    assert np.array_equal(h, np.diag([1, -1, -1, 1]).astype(complex))


def test_single_site_matrix():
    h = build_hamiltonian(ChainParams(1, 0.7, 0.3)).matrix
    assert np.allclose(h, [[0.7, 0.3], [0.3, -0.7]])


def test_three_site_ground_energy_at_origin():
    w = np.linalg.eigvalsh(build_hamiltonian(ChainParams(3, 0.0, 0.0)).matrix)
    assert w[0] == pytest.approx(-2.0, abs=1e-12)


def test_chain_cap_enforced():
    with pytest.raises(ChainSizeError):
        ChainParams(15, 0.0, 0.0)


def test_phase_catalog():
    odd = phase_labels(7)
    assert [lab.kets for lab in odd] == [
        ("0000000",), ("0101010",), ("1010101",), ("1111111",),
    ]
    even = phase_labels(4)
    assert [lab.kets for lab in even] == [
        ("0000",), ("0100", "0010"), ("0101", "1010"), ("1101", "1011"), ("1111",),
    ]


def test_closed_form_ground_examples():
    (g,) = closed_form_ground(ChainParams(3, -3.0, 0.0))
    assert g.amplitudes[0] == 1
    (g,) = closed_form_ground(ChainParams(3, 1.0, 0.0))
    assert g.amplitudes[0b101] == 1
    (g,) = closed_form_ground(ChainParams(4, 0.0, 0.0))
    assert g.amplitudes[0b0101] == pytest.approx(1 / np.sqrt(2))
    assert g.amplitudes[0b1010] == pytest.approx(1 / np.sqrt(2))


def test_closed_form_ground_multiphase_point():
    states = closed_form_ground(ChainParams(3, -2.0, 0.0))
    assert len(states) == 2
    indices = {int(np.argmax(np.abs(s.amplitudes))) for s in states}
    assert indices == {0b000, 0b010}


def test_closed_form_energy_examples():
    assert closed_form_energy(ChainParams(3, -3.0, 0.0)) == pytest.approx(-7.0)
    assert closed_form_energy(ChainParams(4, 0.0, 0.0)) == pytest.approx(-3.0)
    assert closed_form_energy(ChainParams(4, -1.5, 0.0)) == pytest.approx(-4.0)


def test_closed_form_rejections():
    with pytest.raises(ValueError):
        closed_form_energy(ChainParams(3, 0.0, 0.1))
    with pytest.raises(UnsupportedChainError):
        closed_form_ground(ChainParams(2, 0.0, 0.0))
    with pytest.raises(UnsupportedChainError):
        closed_form_ground(ChainParams(1, 0.0, 0.0))


def test_crossover_points():
    assert crossover_points(7) == [-2.0, 0.0, 2.0]
    assert crossover_points(8) == [-2.0, -1.0, 1.0, 2.0]
    assert crossover_points(3) == [-2.0, 0.0, 2.0]


def test_closed_form_matches_diagonalization():
    # off the crossover points: minimum eigenvalue equals the piecewise form
    # and each closed-form state lies inside the exact ground eigenspace
    rng = np.random.default_rng(1)
    for n in range(3, 9):
        for bz in rng.uniform(-3, 3, size=12):
            if min(abs(bz - c) for c in crossover_points(n)) < 1e-6:
                continue
            params = ChainParams(n, float(bz), 0.0)
            diag = hamiltonian_diagonal(params)
            emin = float(np.min(diag))
            assert emin == pytest.approx(closed_form_energy(params), abs=1e-10)
            ground_idx = np.nonzero(diag <= emin + 1e-8)[0]
            for state in closed_form_ground(params):
                weight = float(np.sum(np.abs(state.amplitudes[ground_idx]) ** 2))
                assert weight >= 1 - 1e-10


def test_energy_branches_continuous_at_crossovers():
    for n in range(3, 9):
        for bc in crossover_points(n):
            below = closed_form_energy(ChainParams(n, bc - 1e-13, 0.0))
            above = closed_form_energy(ChainParams(n, bc + 1e-13, 0.0))
            assert abs(below - above) <= 1e-11


def test_spin_flip_covariance():
    # conjugating by X on every site flips the sign of the longitudinal field
    for n, bz, bx in ((2, 0.7, 0.3), (3, -1.2, 0.45), (4, 2.2, 0.0)):
        h_pos = build_hamiltonian(ChainParams(n, bz, bx)).matrix
        h_neg = build_hamiltonian(ChainParams(n, -bz, bx)).matrix
        x_all = np.array([[1.0 + 0j]])
        for _ in range(n):
            x_all = np.kron(x_all, np.array([[0, 1], [1, 0]]))
        assert np.max(np.abs(x_all @ h_pos @ x_all - h_neg)) <= 1e-12


def _no_adjacent_interior_flip_count(n):
    # independent oracle for the multiphase-point degeneracy: flipped spins
    # must be interior and pairwise non-adjacent
    count = 0
    for b in range(2**n):
        bits = [(b >> (n - 1 - q)) & 1 for q in range(n)]
        if bits[0] or bits[-1]:
            continue
        if any(bits[i] and bits[i + 1] for i in range(n - 1)):
            continue
        count += 1
    return count


def test_multiphase_degeneracy_is_fibonacci():
    # the true eigenvalue degeneracy at B_z = +-2 grows like a Fibonacci
    # count (isolated interior flips are free); the staggered-front family
    # returned by the closed form is the (N+1)/2 / (N/2)-sized subset
    expected_counts = {3: 2, 4: 3, 5: 5, 6: 8, 7: 13, 8: 21}
    for n, expected in expected_counts.items():
        assert _no_adjacent_interior_flip_count(n) == expected
        for bc in (-2.0, 2.0):
            diag = hamiltonian_diagonal(ChainParams(n, bc, 0.0))
            measured = int(np.sum(diag <= np.min(diag) + 1e-8))
            assert measured == expected


def test_multiphase_family_members_are_exact_ground_states():
    for n in range(3, 9):
        for bc in (-2.0, 2.0):
            family = multiphase_family(n, bc)
            expected_size = (n + 1) // 2 if n % 2 else n // 2
            assert len(family) == expected_size
            diag = hamiltonian_diagonal(ChainParams(n, bc, 0.0))
            emin = float(np.min(diag))
            for state in family:
                energy = float(np.sum(np.abs(state.amplitudes) ** 2 * diag))
                assert energy == pytest.approx(emin, abs=1e-12)
            # endpoints are the two adjacent phase states
            k_lo, k_hi = (1, 2) if bc < 0 else ((3, 4) if n % 2 else (4, 5))
            fids = [
                max(fidelity(member, phase_state(n, k)) for member in family)
                for k in (k_lo, k_hi)
            ]
            assert min(fids) == pytest.approx(1.0, abs=1e-12)


def test_global_field_perturbation_diagonal():
    v = global_field_perturbation(2).matrix
    assert np.array_equal(v, np.diag([-2, 0, 0, 2]).astype(complex))
