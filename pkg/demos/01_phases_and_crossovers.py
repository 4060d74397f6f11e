"""Closed-form phases of the tilted-field chain at zero transverse field.

Walks the phase catalog for an odd and an even chain, checks the
piecewise-linear ground energies against dense diagonalization, and shows
the degeneracy structure at the multiphase points B_z = +-2 where a whole
family of staggered-front states shares the ground energy.
"""

import numpy as np

from isingcrit import (
    ChainParams,
    build_hamiltonian,
    closed_form_energy,
    crossover_points,
    diagonalize,
    multiphase_family,
    phase_labels,
)


def show_phase_catalog(n):
    print(f"\n{n}-spin chain: phases at zero transverse field")
    for lab in phase_labels(n):
        lo, hi = lab.interval
        kets = " + ".join(f"|{k}>" for k in lab.kets)
        norm = "" if len(lab.kets) == 1 else " (equal superposition)"
        print(f"  phase {lab.k}: B_z in ({lo:+.0f}, {hi:+.0f}) -> {kets}{norm}")
    print(f"  crossover fields: {crossover_points(n)}")


def check_energies(n):
    grid = np.linspace(-3, 3, 25)
    worst = 0.0
    for bz in grid:
        params = ChainParams(n, float(bz), 0.0)
        e_exact = diagonalize(build_hamiltonian(params)).ground_energy
        worst = max(worst, abs(e_exact - closed_form_energy(params)))
    print(f"  closed form vs dense diagonalization over {len(grid)} fields: "
          f"max deviation {worst:.2e}")


def show_multiphase_degeneracy(n):
    params = ChainParams(n, -2.0, 0.0)
    w = diagonalize(build_hamiltonian(params)).eigenvalues
    degeneracy = int(np.sum(w <= w[0] + 1e-8))
    family = multiphase_family(n, -2.0)
    print(f"  at B_z = -2: ground energy {w[0]:+.0f}, "
          f"{degeneracy} degenerate states in total")
    print(f"  staggered-front family ({len(family)} states):")
    for state in family:
        kets = [format(i, f"0{n}b") for i in np.nonzero(np.abs(state.amplitudes) > 1e-12)[0]]
        print(f"    {' + '.join('|' + k + '>' for k in kets)}")


if __name__ == "__main__":
    for n in (7, 8):
        show_phase_catalog(n)
        check_energies(n)
        show_multiphase_degeneracy(n)
