"""The benchmark molecule set: geometries, basis sets, active spaces.

Frozen orbital counts are chosen so each system's active space matches its
published qubit count; the sidecar metadata carries the reference energies
and per-molecule orbital symmetry groups used downstream.
"""

from __future__ import annotations

from dataclasses import dataclass, field

BOHR_PER_ANGSTROM = 1.0 / 0.52917721092


@dataclass(frozen=True)
class MoleculeSpec:
    name: str
    atoms: tuple[tuple[str, tuple[float, float, float]], ...]  # Angstrom
    basis: str
    n_frozen_orbitals: int
    symmetry_groups: tuple[tuple[int, ...], ...]
    reference_energies: dict = field(default_factory=dict)

    @property
    def geometry_string(self) -> str:
        return "; ".join(
            f"{sym} {x:g} {y:g} {z:g}" for sym, (x, y, z) in self.atoms)

    def atoms_bohr(self):
        return [
            (sym, tuple(c * BOHR_PER_ANGSTROM for c in xyz))
            for sym, xyz in self.atoms
        ]


MOLECULES = {
    "h2": MoleculeSpec(
        name="h2",
        atoms=(("H", (0.0, 0.0, 0.0)), ("H", (0.0, 0.0, 0.74))),
        basis="6-31g",
        n_frozen_orbitals=0,
        symmetry_groups=((1, 3), (2, 4)),
        reference_energies={
            "fci": -1.866777, "vqe": -1.848151, "wahtor": -1.861338,
            "vqe_correlation_pct": 25.25, "wahtor_correlation_pct": 78.17,
            "delta": 0.997,
        },
    ),
    "lih": MoleculeSpec(
        name="lih",
        atoms=(("Li", (0.0, 0.0, 0.0)), ("H", (0.0, 0.0, 1.595))),
        basis="sto-3g",
        n_frozen_orbitals=1,
        symmetry_groups=((1, 2, 5),),
        reference_energies={
            "fci": -1.079201, "vqe": -1.073586, "wahtor": -1.078143,
            "vqe_correlation_pct": 72.14, "wahtor_correlation_pct": 94.75,
            "delta": 0.999,
        },
    ),
    "hf": MoleculeSpec(
        name="hf",
        atoms=(("F", (0.0, 0.0, 0.0)), ("H", (0.0, 0.0, 0.917))),
        basis="sto-3g",
        n_frozen_orbitals=1,
        symmetry_groups=((1, 2, 5),),
        reference_energies={
            "fci": -27.985031, "vqe": -27.979893, "wahtor": -27.983232,
            "vqe_correlation_pct": 80.11, "wahtor_correlation_pct": 93.03,
            "delta": 0.999,
        },
    ),
    "beh2": MoleculeSpec(
        name="beh2",
        atoms=(("H", (0.0, 0.0, 0.0)), ("Be", (0.0, 0.0, 1.334)),
               ("H", (0.0, 0.0, 2.668))),
        basis="sto-3g",
        n_frozen_orbitals=1,
        symmetry_groups=((1, 5), (2, 6)),
        reference_energies={
            "fci": -3.940331, "vqe": -3.921635, "wahtor": -3.921642,
            "vqe_correlation_pct": 46.36, "wahtor_correlation_pct": 46.38,
            "delta": None, "hf_close_to_natural": True,
        },
    ),
    "h2o": MoleculeSpec(
        name="h2o",
        atoms=(("O", (0.0, 0.0, 0.0)), ("H", (0.757, 0.586, 0.0)),
               ("H", (-0.757, 0.586, 0.0))),
        basis="sto-3g",
        n_frozen_orbitals=1,
        symmetry_groups=((1, 3, 5), (2, 6)),
        reference_energies={
            "fci": -23.544497, "vqe": -23.520888, "wahtor": -23.531435,
            "vqe_correlation_pct": 52.22, "wahtor_correlation_pct": 73.56,
            "delta": 0.971,
        },
    ),
    "h2s": MoleculeSpec(
        name="h2s",
        atoms=(("S", (0.0, 0.0, 0.0)), ("H", (0.0, 0.9616, -0.9269)),
               ("H", (0.0, -0.9616, -0.9269))),
        basis="sto-3g",
        n_frozen_orbitals=5,
        symmetry_groups=((1, 3, 6), (2, 5)),
        reference_energies={
            "fci": -15.971142, "vqe": -15.949235, "wahtor": -15.953189,
            "vqe_correlation_pct": 48.34, "wahtor_correlation_pct": 57.66,
            "delta": 0.888,
        },
    ),
    "nh3": MoleculeSpec(
        name="nh3",
        atoms=(("N", (0.0, 0.0, 0.1211)), ("H", (0.0, 0.9306, -0.2826)),
               ("H", (0.8059, -0.4653, -0.2826)),
               ("H", (-0.8059, -0.4653, -0.2826))),
        basis="sto-3g",
        n_frozen_orbitals=1,
        symmetry_groups=((1, 4, 5), (2, 6), (3, 7)),
        reference_energies={
            "fci": -20.100795, "vqe": -20.060577, "wahtor": -20.060781,
            "vqe_correlation_pct": 38.87, "wahtor_correlation_pct": 39.18,
            "delta": 0.999,
        },
    ),
    # 4-qubit system used by the downstream unit tests; not a benchmark row.
    "h2_sto3g": MoleculeSpec(
        name="h2_sto3g",
        atoms=(("H", (0.0, 0.0, 0.0)), ("H", (0.0, 0.0, 0.74))),
        basis="sto-3g",
        n_frozen_orbitals=0,
        symmetry_groups=(),
        reference_energies={},
    ),
}
