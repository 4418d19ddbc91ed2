"""FCIDUMP parsing and spatial-orbital integral containers.

The FCIDUMP interchange format stores the core-energy constant, the one-body
matrix and the two-body tensor of a second-quantized electronic Hamiltonian
over m spatial orbitals, with the two-body entries in chemist notation
(pq|rs) and only one representative per 8-fold symmetry orbit.  The parser
expands every entry to all its symmetry images and converts the 1-based
FCIDUMP orbital indices to 0-based internal ones.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import ConsistencyError, GroupError, ParseError

_H2_SYMMETRY_IMAGES = (
    (0, 1, 2, 3), (1, 0, 2, 3), (0, 1, 3, 2), (1, 0, 3, 2),
    (2, 3, 0, 1), (2, 3, 1, 0), (3, 2, 0, 1), (3, 2, 1, 0),
)


@dataclass(frozen=True)
class SpatialIntegrals:
    """Spatial-orbital integral tensors of one molecular Hamiltonian.

    h1 is symmetric, h2 carries the full 8-fold real-integral symmetry
    (pq|rs) = (qp|rs) = (pq|sr) = (rs|pq) = ...  Energies are in Hartree;
    core_energy collects the nuclear-repulsion and frozen-core constants.
    Instances are immutable and safe to share across threads.
    """

    m: int
    n_electrons: int
    ms2: int
    core_energy: float
    h1: np.ndarray
    h2: np.ndarray
    orbital_symmetry_labels: tuple[int, ...] = ()

    def __post_init__(self):
        h1 = np.ascontiguousarray(np.asarray(self.h1, dtype=float))
        h2 = np.ascontiguousarray(np.asarray(self.h2, dtype=float))
        object.__setattr__(self, "h1", h1)
        object.__setattr__(self, "h2", h2)
        if not self.orbital_symmetry_labels:
            object.__setattr__(self, "orbital_symmetry_labels", (1,) * self.m)
        self.validate()
        h1.flags.writeable = False
        h2.flags.writeable = False

    def validate(self):
        m = self.m
        if m < 1:
            raise ValueError(f"need at least one orbital, got m={m}")
        if not 0 <= self.n_electrons <= 2 * m:
            raise ValueError(
                f"n_electrons={self.n_electrons} outside 0..{2 * m}")
        if self.h1.shape != (m, m) or self.h2.shape != (m, m, m, m):
            raise ValueError("tensor shapes inconsistent with m")
        if not (np.isfinite(self.core_energy)
                and np.isfinite(self.h1).all() and np.isfinite(self.h2).all()):
            raise ValueError("non-finite integral entries")
        if not np.allclose(self.h1, self.h1.T, atol=1e-12):
            raise ValueError("h1 is not symmetric")

    def replace_tensors(self, h1, h2, core_energy=None):
        """New instance with the same bookkeeping but different tensors."""
        return SpatialIntegrals(
            m=self.m,
            n_electrons=self.n_electrons,
            ms2=self.ms2,
            core_energy=self.core_energy if core_energy is None else core_energy,
            h1=h1,
            h2=h2,
            orbital_symmetry_labels=self.orbital_symmetry_labels,
        )


@dataclass(frozen=True)
class SymmetryGroups:
    """Disjoint sets of 1-based spatial orbitals allowed to mix under rotation."""

    groups: tuple[frozenset[int], ...]

    @classmethod
    def from_lists(cls, lists) -> "SymmetryGroups":
        return cls(tuple(frozenset(int(i) for i in g) for g in lists))

    def multi_member(self) -> tuple[frozenset[int], ...]:
        return tuple(g for g in self.groups if len(g) > 1)

    def rotated_orbitals(self) -> frozenset[int]:
        """1-based orbitals that belong to a multi-member group."""
        out: set[int] = set()
        for g in self.multi_member():
            out |= g
        return frozenset(out)


def validate_symmetry_groups(groups: SymmetryGroups, ints: SpatialIntegrals):
    """Check disjointness and 1..m range; raise GroupError otherwise."""
    seen: set[int] = set()
    for g in groups.groups:
        for idx in g:
            if not 1 <= idx <= ints.m:
                raise GroupError(f"orbital index {idx} outside 1..{ints.m}")
            if idx in seen:
                raise GroupError(f"orbital {idx} appears in more than one group")
            seen.add(idx)


def _canonical_two_body(i, j, k, l):
    """Representative of the 8-fold symmetry orbit of (ij|kl), 0-based."""
    ij = (i, j) if i >= j else (j, i)
    kl = (k, l) if k >= l else (l, k)
    return ij + kl if ij >= kl else kl + ij


def parse_fcidump(source) -> SpatialIntegrals:
    """Parse FCIDUMP text (str, bytes, or open file) into SpatialIntegrals.

    Lines with all four indices zero set the core energy, lines with k=l=0
    set h1 entries, the rest set chemist-notation h2 entries, each expanded
    to its full 8-fold symmetry orbit.  Unspecified entries are zero.
    Duplicate entries for the same canonical index must agree to 1e-10.
    """
    if hasattr(source, "read"):
        source = source.read()
    if isinstance(source, bytes):
        source = source.decode("ascii")

    header_end = re.search(r"(&END|/END|/)", source, flags=re.IGNORECASE)
    if header_end is None:
        raise ParseError("missing &END terminator of the &FCI namelist")
    header = source[: header_end.start()]
    body_start_line = source[: header_end.end()].count("\n") + 1
    if not re.match(r"\s*&FCI\b", header, flags=re.IGNORECASE):
        raise ParseError("input does not start with an &FCI namelist", line=1)

    def namelist_int(key, required=True):
        match = re.search(rf"{key}\s*=\s*(-?\d+)", header, flags=re.IGNORECASE)
        if match is None:
            if required:
                raise ParseError(f"namelist is missing {key}", line=1)
            return None
        return int(match.group(1))

    m = namelist_int("NORB")
    n_electrons = namelist_int("NELEC")
    ms2 = namelist_int("MS2")
    orbsym = re.search(r"ORBSYM\s*=\s*([\d,\s]+)", header, flags=re.IGNORECASE)
    labels = ()
    if orbsym is not None:
        labels = tuple(int(t) for t in re.findall(r"\d+", orbsym.group(1)))
        if len(labels) != m:
            raise ParseError(
                f"ORBSYM lists {len(labels)} labels for NORB={m}", line=1)

    core_energy = 0.0
    one_body: dict[tuple[int, int], float] = {}
    two_body: dict[tuple[int, int, int, int], float] = {}

    body = source[header_end.end():]
    for offset, raw in enumerate(body.splitlines()):
        lineno = body_start_line + offset
        line = raw.strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 5:
            raise ParseError(f"expected 'value i j k l', got {raw!r}", line=lineno)
        try:
            value = float(parts[0].replace("D", "E").replace("d", "e"))
            i, j, k, l = (int(p) for p in parts[1:])
        except ValueError as exc:
            raise ParseError(str(exc), line=lineno) from None
        for idx in (i, j, k, l):
            if not 0 <= idx <= m:
                raise IndexError(
                    f"line {lineno}: orbital index {idx} outside 0..{m}")
        if i == j == k == l == 0:
            core_energy = value
        elif k == 0 and l == 0:
            if i == 0 or j == 0:
                raise ParseError("one-body entry with a zero index", line=lineno)
            key = (max(i, j) - 1, min(i, j) - 1)
            if key in one_body and abs(one_body[key] - value) > 1e-10:
                raise ConsistencyError(
                    f"line {lineno}: h1{key} given as {one_body[key]!r} and {value!r}")
            one_body[key] = value
        else:
            if 0 in (i, j, k, l):
                raise ParseError("two-body entry with a zero index", line=lineno)
            key = _canonical_two_body(i - 1, j - 1, k - 1, l - 1)
            if key in two_body and abs(two_body[key] - value) > 1e-10:
                raise ConsistencyError(
                    f"line {lineno}: h2{key} given as {two_body[key]!r} and {value!r}")
            two_body[key] = value

    h1 = np.zeros((m, m))
    for (i, j), value in one_body.items():
        h1[i, j] = value
        h1[j, i] = value
    h2 = np.zeros((m, m, m, m))
    for (i, j, k, l), value in two_body.items():
        for perm in _H2_SYMMETRY_IMAGES:
            idx = tuple((i, j, k, l)[p] for p in perm)
            h2[idx] = value

    return SpatialIntegrals(
        m=m, n_electrons=n_electrons, ms2=ms2, core_energy=core_energy,
        h1=h1, h2=h2, orbital_symmetry_labels=labels,
    )


def serialize_fcidump(ints: SpatialIntegrals, threshold: float = 0.0) -> str:
    """Render SpatialIntegrals back to FCIDUMP text (canonical entries only)."""
    lines = [
        f"&FCI NORB={ints.m},NELEC={ints.n_electrons},MS2={ints.ms2},",
        " ORBSYM=" + ",".join(str(s) for s in ints.orbital_symmetry_labels) + ",",
        " ISYM=1,",
        "&END",
    ]
    m = ints.m
    for i in range(m):
        for j in range(i + 1):
            for k in range(i + 1):
                lmax = j if k == i else k
                for l in range(lmax + 1):
                    v = ints.h2[i, j, k, l]
                    if abs(v) > threshold:
                        lines.append(
                            f"{v: .16E} {i + 1:3d} {j + 1:3d} {k + 1:3d} {l + 1:3d}")
    for i in range(m):
        for j in range(i + 1):
            v = ints.h1[i, j]
            if abs(v) > threshold:
                lines.append(f"{v: .16E} {i + 1:3d} {j + 1:3d}   0   0")
    lines.append(f"{ints.core_energy: .16E}   0   0   0   0")
    return "\n".join(lines) + "\n"


def load_fcidump(path) -> SpatialIntegrals:
    return parse_fcidump(Path(path).read_text())


@dataclass(frozen=True)
class FixtureMetadata:
    """Sidecar description of a committed FCIDUMP fixture."""

    name: str
    geometry: str
    basis: str
    n_qubits: int
    n_frozen_orbitals: int
    symmetry_groups: SymmetryGroups
    rhf_electronic_energy: float
    reference_energies: dict = field(default_factory=dict)

    @classmethod
    def from_json(cls, text: str) -> "FixtureMetadata":
        data = json.loads(text)
        return cls(
            name=data["name"],
            geometry=data["geometry"],
            basis=data["basis"],
            n_qubits=int(data["n_qubits"]),
            n_frozen_orbitals=int(data.get("n_frozen_orbitals", 0)),
            symmetry_groups=SymmetryGroups.from_lists(data["symmetry_groups"]),
            rhf_electronic_energy=float(data["rhf_electronic_energy"]),
            reference_energies=data.get("reference_energies", {}),
        )


def load_metadata(path) -> FixtureMetadata:
    return FixtureMetadata.from_json(Path(path).read_text())
