"""Shared oracles: brute-force 2^N Hamiltonians and sector projections.

The full-space construction is kept independent of the package builders so
it can serve as an oracle for them: Pauli strings are assembled by explicit
Kronecker products and projected onto fixed-excitation sectors by selecting
computational-basis states.
"""

from __future__ import annotations

from itertools import combinations

import numpy as np
import pytest

PAULI_X = np.array([[0.0, 1.0], [1.0, 0.0]])
PAULI_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]])
PAULI_Z = np.array([[1.0, 0.0], [0.0, -1.0]])


def pauli_string(n_sites: int, factors: dict[int, np.ndarray]) -> np.ndarray:
    out = np.array([[1.0 + 0.0j]])
    for site in range(n_sites):
        out = np.kron(out, factors.get(site, np.eye(2)))
    return out


def full_space_hamiltonians(spec):
    """(drift, control) on the full 2^N space, built straight from the
    coupling sum (XX + YY + kappa ZZ)/2 and the collective Z-control."""
    n = spec.node_count
    dim = 1 << n
    drift = np.zeros((dim, dim), complex)
    for m, q, g in spec.edges:
        i, j = m - 1, q - 1
        drift += 0.5 * g * (pauli_string(n, {i: PAULI_X, j: PAULI_X})
                            + pauli_string(n, {i: PAULI_Y, j: PAULI_Y})
                            + spec.kappa * pauli_string(n, {i: PAULI_Z, j: PAULI_Z}))
    control = np.zeros((dim, dim), complex)
    for k in spec.controls:
        control += pauli_string(n, {k - 1: PAULI_Z})
    return drift, control


def sector_states(n_sites: int, excitations: int) -> list[int]:
    """Computational-basis indices of the n-excitation sector, ordered to
    match the subspace builders (site 1 is the leftmost tensor factor)."""
    if excitations == 1:
        labels = [(i,) for i in range(1, n_sites + 1)]
    elif excitations == 2:
        labels = list(combinations(range(1, n_sites + 1), 2))
    else:
        raise ValueError("oracle supports 1 or 2 excitations")
    states = []
    for label in labels:
        idx = 0
        for site in label:
            idx |= 1 << (n_sites - site)
        states.append(idx)
    return states


def project_to_sector(mat: np.ndarray, states: list[int]) -> np.ndarray:
    return mat[np.ix_(states, states)]


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(20240801)
