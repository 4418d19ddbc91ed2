"""RHF -> MO transform -> frozen core -> FCIDUMP + metadata files."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .basis import ATOMIC_NUMBERS, build_basis
from .integrals import (
    eri_tensor,
    kinetic_matrix,
    nuclear_attraction_matrix,
    overlap_matrix,
)
from .molecules import MoleculeSpec
from .scf import RhfResult, restricted_hartree_fock


class ExportError(RuntimeError):
    pass


@dataclass
class ActiveSpaceHamiltonian:
    """MO-basis active-space tensors after folding the frozen core."""

    n_active: int
    n_active_electrons: int
    core_energy: float          # nuclear repulsion + frozen-core energy
    h1: np.ndarray
    h2: np.ndarray              # chemist notation (pq|rs)
    rhf: RhfResult


def nuclear_repulsion(atoms_bohr) -> float:
    energy = 0.0
    for i, (sym_i, xyz_i) in enumerate(atoms_bohr):
        for sym_j, xyz_j in atoms_bohr[:i]:
            r = np.linalg.norm(np.subtract(xyz_i, xyz_j))
            energy += ATOMIC_NUMBERS[sym_i] * ATOMIC_NUMBERS[sym_j] / r
    return energy


def compute_active_hamiltonian(spec: MoleculeSpec) -> ActiveSpaceHamiltonian:
    atoms = spec.atoms_bohr()
    basis = build_basis(atoms, spec.basis)
    charges = [(ATOMIC_NUMBERS[sym], xyz) for sym, xyz in atoms]
    s = overlap_matrix(basis)
    t = kinetic_matrix(basis)
    v = nuclear_attraction_matrix(basis, charges)
    eri = eri_tensor(basis)
    n_electrons = sum(z for z, _ in charges)
    e_nuc = nuclear_repulsion(atoms)

    rhf = restricted_hartree_fock(s, t, v, eri, n_electrons, e_nuc)
    if not rhf.converged:
        raise ExportError(f"SCF failed to converge for {spec.name}")

    c = rhf.mo_coefficients
    h1_mo = c.T @ (t + v) @ c
    eri_mo = np.einsum("pi,pqrs->iqrs", c, eri, optimize=True)
    eri_mo = np.einsum("qj,iqrs->ijrs", c, eri_mo, optimize=True)
    eri_mo = np.einsum("rk,ijrs->ijks", c, eri_mo, optimize=True)
    eri_mo = np.einsum("sl,ijks->ijkl", c, eri_mo, optimize=True)

    n_frozen = spec.n_frozen_orbitals
    if 2 * n_frozen > n_electrons:
        raise ExportError("more frozen orbitals than occupied pairs")
    frozen = list(range(n_frozen))
    active = np.arange(n_frozen, len(basis))

    core_energy = rhf.nuclear_repulsion
    core_energy += 2.0 * sum(h1_mo[i, i] for i in frozen)
    for i in frozen:
        for j in frozen:
            core_energy += 2.0 * eri_mo[i, i, j, j] - eri_mo[i, j, j, i]

    h1_active = h1_mo[np.ix_(active, active)].copy()
    for i in frozen:
        h1_active += 2.0 * eri_mo[np.ix_(active, active)][:, :, i, i]
        h1_active -= eri_mo[:, i, i, :][np.ix_(active, active)]
    h2_active = eri_mo[np.ix_(active, active, active, active)].copy()

    return ActiveSpaceHamiltonian(
        n_active=len(active),
        n_active_electrons=n_electrons - 2 * n_frozen,
        core_energy=float(core_energy),
        h1=h1_active,
        h2=h2_active,
        rhf=rhf,
    )


def write_fcidump(ham: ActiveSpaceHamiltonian, path: Path):
    m = ham.n_active
    lines = [
        f"&FCI NORB={m},NELEC={ham.n_active_electrons},MS2=0,",
        " ORBSYM=" + ",".join(["1"] * m) + ",",
        " ISYM=1,",
        "&END",
    ]
    for i in range(m):
        for j in range(i + 1):
            for k in range(i + 1):
                lmax = j if k == i else k
                for l in range(lmax + 1):
                    value = ham.h2[i, j, k, l]
                    if abs(value) > 1e-12:
                        lines.append(
                            f"{value: .16E} {i + 1:3d} {j + 1:3d} {k + 1:3d} {l + 1:3d}")
    for i in range(m):
        for j in range(i + 1):
            value = ham.h1[i, j]
            if abs(value) > 1e-12:
                lines.append(f"{value: .16E} {i + 1:3d} {j + 1:3d}   0   0")
    lines.append(f"{ham.core_energy: .16E}   0   0   0   0")
    path.write_text("\n".join(lines) + "\n")


def write_metadata(spec: MoleculeSpec, ham: ActiveSpaceHamiltonian, path: Path):
    payload = {
        "name": spec.name,
        "geometry": spec.geometry_string,
        "basis": spec.basis,
        "n_qubits": 2 * ham.n_active,
        "n_frozen_orbitals": spec.n_frozen_orbitals,
        "n_active_electrons": ham.n_active_electrons,
        "symmetry_groups": [list(g) for g in spec.symmetry_groups],
        "core_energy": ham.core_energy,
        "rhf_total_energy": ham.rhf.energy,
        "rhf_electronic_energy": ham.rhf.energy - ham.core_energy,
        "reference_energies": spec.reference_energies,
    }
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")


def export_fcidump(spec: MoleculeSpec, out_dir) -> tuple[Path, Path]:
    """Write <name>.fcidump and <name>.json under out_dir; returns the paths."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    ham = compute_active_hamiltonian(spec)
    fcidump_path = out_dir / f"{spec.name}.fcidump"
    metadata_path = out_dir / f"{spec.name}.json"
    write_fcidump(ham, fcidump_path)
    write_metadata(spec, ham, metadata_path)
    return fcidump_path, metadata_path
