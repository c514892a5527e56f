"""Map states onto the discrete phase-space lattice and back.

Each basis state of either eigenbasis paints a single row or column of the
N x N grid; the maximally mixed state paints everything uniformly.  The
mapping is invertible, so an arbitrary operator survives a round trip.
"""

import numpy as np

from qclock import build_basis, build_pair, map_operator, shift_eigenvector, unmap_grid, wigner_of_density

N = 5
pair = build_pair(N)
basis = build_basis(pair)


def show(title, grid):
    print(title)
    for row in np.round(grid.real, 3):
        print("   ", "  ".join(f"{x:6.3f}" for x in row))


vec = shift_eigenvector(pair, 2)
show("shift eigenstate |s_2>: one column of ones", wigner_of_density(basis, np.outer(vec, vec.conj())))

rho = np.zeros((N, N), dtype=complex)
rho[1, 1] = 1.0
show("\nenergy eigenstate |u_1>: one row of ones", wigner_of_density(basis, rho))

show("\nmaximally mixed state: flat 1/N", wigner_of_density(basis, np.eye(N) / N))

rng = np.random.default_rng(0)
op = rng.normal(size=(N, N)) + 1j * rng.normal(size=(N, N))
back = unmap_grid(basis, map_operator(basis, op))
print("\nround trip on a random operator, max |difference| =", float(np.max(np.abs(back - op))))
