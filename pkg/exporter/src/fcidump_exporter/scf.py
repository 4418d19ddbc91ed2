"""Restricted Hartree-Fock with DIIS for closed-shell molecules."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class ScfError(RuntimeError):
    pass


@dataclass
class RhfResult:
    energy: float               # total energy incl. nuclear repulsion
    electronic_energy: float
    nuclear_repulsion: float
    mo_coefficients: np.ndarray
    orbital_energies: np.ndarray
    n_occupied: int
    converged: bool
    n_iterations: int


def _fix_column_signs(c: np.ndarray) -> np.ndarray:
    idx = np.argmax(np.abs(c), axis=0)
    signs = np.sign(c[idx, np.arange(c.shape[1])])
    signs[signs == 0] = 1.0
    return c * signs


def restricted_hartree_fock(
    s, t, v, eri, n_electrons, nuclear_repulsion,
    max_iterations=200, energy_tol=1e-12, gradient_tol=1e-10,
) -> RhfResult:
    """Solve closed-shell RHF; eri is the chemist-notation (pq|rs) tensor."""
    if n_electrons % 2:
        raise ScfError("restricted solver needs an even electron count")
    n_occ = n_electrons // 2
    h_core = t + v

    s_vals, s_vecs = np.linalg.eigh(s)
    if s_vals.min() < 1e-10:
        raise ScfError("overlap matrix is numerically singular")
    x = s_vecs @ np.diag(s_vals ** -0.5) @ s_vecs.T

    def solve_fock(f):
        f_ortho = x.T @ f @ x
        eps, c_ortho = np.linalg.eigh(f_ortho)
        return eps, _fix_column_signs(x @ c_ortho)

    eps, c = solve_fock(h_core)
    density = 2.0 * c[:, :n_occ] @ c[:, :n_occ].T

    energy = 0.0
    converged = False
    fock_history: list[np.ndarray] = []
    error_history: list[np.ndarray] = []
    iteration = 0
    for iteration in range(1, max_iterations + 1):
        coulomb = np.einsum("pqrs,rs->pq", eri, density)
        exchange = np.einsum("prqs,rs->pq", eri, density)
        fock = h_core + coulomb - 0.5 * exchange
        electronic = np.einsum("pq,pq->", density, h_core) \
            + 0.5 * np.einsum("pq,pq->", density, coulomb - 0.5 * exchange)
        new_energy = electronic + nuclear_repulsion

        error = x.T @ (fock @ density @ s - s @ density @ fock) @ x
        gradient_norm = np.abs(error).max()
        if (iteration > 1 and abs(new_energy - energy) < energy_tol
                and gradient_norm < gradient_tol):
            energy = new_energy
            converged = True
            break
        energy = new_energy

        fock_history.append(fock)
        error_history.append(error)
        if len(fock_history) > 8:
            fock_history.pop(0)
            error_history.pop(0)
        if len(fock_history) > 1:
            fock = _diis_extrapolate(fock_history, error_history)

        eps, c = solve_fock(fock)
        density = 2.0 * c[:, :n_occ] @ c[:, :n_occ].T

    # final canonical orbitals from the unextrapolated Fock of the converged density
    coulomb = np.einsum("pqrs,rs->pq", eri, density)
    exchange = np.einsum("prqs,rs->pq", eri, density)
    fock = h_core + coulomb - 0.5 * exchange
    eps, c = solve_fock(fock)
    density = 2.0 * c[:, :n_occ] @ c[:, :n_occ].T
    electronic = np.einsum("pq,pq->", density, h_core) \
        + 0.5 * np.einsum("pq,pq->", density,
                          np.einsum("pqrs,rs->pq", eri, density)
                          - 0.5 * np.einsum("prqs,rs->pq", eri, density))

    return RhfResult(
        energy=float(electronic + nuclear_repulsion),
        electronic_energy=float(electronic),
        nuclear_repulsion=float(nuclear_repulsion),
        mo_coefficients=c,
        orbital_energies=eps,
        n_occupied=n_occ,
        converged=converged,
        n_iterations=iteration,
    )


def _diis_extrapolate(focks, errors):
    k = len(focks)
    b = -np.ones((k + 1, k + 1))
    b[k, k] = 0.0
    for i in range(k):
        for j in range(k):
            b[i, j] = np.einsum("pq,pq->", errors[i], errors[j])
    rhs = np.zeros(k + 1)
    rhs[k] = -1.0
    try:
        weights = np.linalg.solve(b, rhs)[:k]
    except np.linalg.LinAlgError:
        return focks[-1]
    return sum(w * f for w, f in zip(weights, focks))
