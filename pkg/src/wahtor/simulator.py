"""Exact statevector simulation of the hardware-efficient ansatz.

Amplitude index i encodes the computational basis state with qubit q in
state (i >> q) & 1, the same little-endian convention as the Pauli module.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import DimensionError, UnsupportedError


@dataclass(frozen=True)
class Statevector:
    n_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.ascontiguousarray(np.asarray(self.amplitudes, dtype=complex))
        if amps.shape != (1 << self.n_qubits,):
            raise DimensionError(
                f"{amps.shape} amplitudes for {self.n_qubits} qubits")
        object.__setattr__(self, "amplitudes", amps)
        amps.flags.writeable = False

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def assert_normalized(self, tol: float = 1e-10):
        if abs(self.norm() - 1.0) > tol:
            raise ValueError(f"state norm {self.norm()} deviates from 1")


def basis_state(n_qubits: int, index: int) -> Statevector:
    amps = np.zeros(1 << n_qubits, dtype=complex)
    amps[index] = 1.0
    return Statevector(n_qubits, amps)


def hf_reference(n_qubits: int, n_electrons: int) -> Statevector:
    """Closed-shell reference determinant as a computational basis state.

    Occupies the lowest n_electrons/2 spin-up qubits (0..) and the lowest
    n_electrons/2 spin-down qubits (n_qubits/2..).
    """
    if n_electrons % 2 != 0:
        raise UnsupportedError("only closed-shell (even) electron counts")
    if n_electrons > n_qubits:
        raise UnsupportedError("more electrons than spin orbitals")
    pairs = n_electrons // 2
    m = n_qubits // 2
    index = 0
    for k in range(pairs):
        index |= 1 << k
        index |= 1 << (m + k)
    return basis_state(n_qubits, index)


def ladder_entangler(n_qubits: int) -> tuple[tuple[int, int], ...]:
    return tuple((q, q + 1) for q in range(n_qubits - 1))


@dataclass(frozen=True)
class AnsatzCircuit:
    """Ry layers alternated with a fixed CNOT entangling block, depth blocks."""

    n_qubits: int
    depth: int
    entangler: tuple[tuple[int, int], ...] = field(default=())

    def __post_init__(self):
        if not self.entangler:
            object.__setattr__(self, "entangler", ladder_entangler(self.n_qubits))
        for c, t in self.entangler:
            if c == t or not (0 <= c < self.n_qubits and 0 <= t < self.n_qubits):
                raise DimensionError(f"bad entangler pair ({c}, {t})")

    @property
    def n_params(self) -> int:
        return self.n_qubits * (self.depth + 1)

    @cached_property
    def gates(self) -> tuple[tuple, ...]:
        """Flat gate program: ("ry", qubit, theta_index) / ("cx", ctrl, tgt)."""
        program = [("ry", q, q) for q in range(self.n_qubits)]
        for block in range(1, self.depth + 1):
            program += [("cx", c, t) for c, t in self.entangler]
            program += [("ry", q, block * self.n_qubits + q)
                        for q in range(self.n_qubits)]
        return tuple(program)


def _apply_ry(amps: np.ndarray, q: int, angle: float):
    cos, sin = np.cos(angle / 2.0), np.sin(angle / 2.0)
    view = amps.reshape(-1, 2, 1 << q)
    a0 = view[:, 0, :].copy()
    a1 = view[:, 1, :]
    view[:, 0, :] = cos * a0 - sin * a1
    view[:, 1, :] = sin * a0 + cos * a1


def _apply_y(amps: np.ndarray, q: int):
    view = amps.reshape(-1, 2, 1 << q)
    a0 = view[:, 0, :].copy()
    view[:, 0, :] = -1j * view[:, 1, :]
    view[:, 1, :] = 1j * a0


def _apply_cnot(amps: np.ndarray, control: int, target: int):
    hi, lo = max(control, target), min(control, target)
    view = amps.reshape(-1, 2, 1 << (hi - lo - 1), 2, 1 << lo)
    if control == hi:
        view[:, 1, :, :, :] = view[:, 1, :, ::-1, :].copy()
    else:
        view[:, :, :, 1, :] = view[:, ::-1, :, 1, :].copy()


def apply_ansatz(circuit: AnsatzCircuit, theta, ref: Statevector) -> Statevector:
    theta = np.asarray(theta, dtype=float)
    if theta.shape != (circuit.n_params,):
        raise DimensionError(
            f"{theta.shape} parameters, circuit expects {circuit.n_params}")
    if ref.n_qubits != circuit.n_qubits:
        raise DimensionError("reference state has wrong qubit count")
    amps = ref.amplitudes.copy()
    for gate in circuit.gates:
        if gate[0] == "ry":
            _apply_ry(amps, gate[1], theta[gate[2]])
        else:
            _apply_cnot(amps, gate[1], gate[2])
    return Statevector(circuit.n_qubits, amps)


def reduced_density_matrix(psi: Statevector, keep) -> np.ndarray:
    """Reduced density matrix over the kept qubits (1 or 2 of them).

    The kept qubits are sorted ascending and keep their relative little-endian
    significance: for keep = {i, j} with i < j, row index b_j * 2 + b_i.
    """
    requested = [int(k) for k in keep]
    keep = sorted(set(requested))
    if not keep or len(keep) != len(requested):
        raise IndexError("keep set must be non-empty and distinct")
    n = psi.n_qubits
    for q in keep:
        if not 0 <= q < n:
            raise IndexError(f"qubit {q} outside register of {n}")
    tensor = psi.amplitudes.reshape([2] * n)  # axis a holds qubit n-1-a
    front = [n - 1 - q for q in reversed(keep)]
    rest = [a for a in range(n) if a not in front]
    mat = tensor.transpose(front + rest).reshape(1 << len(keep), -1)
    return mat @ mat.conj().T


def _annihilate(amplitudes: np.ndarray, p: int) -> np.ndarray:
    """Apply a_p (Jordan-Wigner sign included) to a raw amplitude vector."""
    dim = len(amplitudes)
    basis = np.arange(dim, dtype=np.int64)
    occupied = np.nonzero((basis >> p) & 1)[0]
    out = np.zeros_like(amplitudes)
    parity = np.bitwise_count((occupied & ((1 << p) - 1)).astype(np.uint64))
    signs = 1.0 - 2.0 * (parity.astype(np.int64) & 1)
    out[occupied ^ (1 << p)] = signs * amplitudes[occupied]
    return out


@dataclass(frozen=True)
class ReducedDensityMatrices:
    """Cached <a+_i a_j> and <a+_c a+_d a_e a_f> tables for one fixed state.

    gamma2 uses operator index order [c, d, e, f].  The spatial contractions
    d1, d2 are what the fixed-state energy and its derivatives consume:
    d1[p, q] sums gamma over spin, d2[p, q, r, s] collects the chemist-paired
    spin sum matching the (pq|rs) tensor.
    """

    n_spin_orbitals: int
    gamma: np.ndarray
    gamma2: np.ndarray

    @cached_property
    def spatial_one_rdm(self) -> np.ndarray:
        m = self.n_spin_orbitals // 2
        d1 = self.gamma[:m, :m] + self.gamma[m:, m:]
        return np.real(d1)

    @cached_property
    def spatial_chemist_two_rdm(self) -> np.ndarray:
        m = self.n_spin_orbitals // 2
        d2 = np.zeros((m, m, m, m))
        for sigma in (0, 1):
            for tau in (0, 1):
                block = self.gamma2[
                    sigma * m:(sigma + 1) * m, tau * m:(tau + 1) * m,
                    tau * m:(tau + 1) * m, sigma * m:(sigma + 1) * m]
                d2 += np.real(block.transpose(0, 3, 1, 2))  # [p,r,s,q] -> [p,q,r,s]
        return d2

    def trace(self) -> float:
        return float(np.real(np.trace(self.gamma)))


def save_amplitudes(psi: Statevector, path):
    """Binary dump of the raw amplitude vector (debugging aid)."""
    np.save(path, psi.amplitudes)


def load_amplitudes(path) -> Statevector:
    amplitudes = np.load(path)
    return Statevector(int(np.log2(len(amplitudes))), amplitudes)


def one_particle_rdm(psi: Statevector) -> np.ndarray:
    """gamma[i, j] = <a+_i a_j> over all spin orbitals of the register."""
    singles = np.stack([_annihilate(psi.amplitudes, p) for p in range(psi.n_qubits)])
    return singles.conj() @ singles.T


def fermionic_rdms(psi: Statevector) -> ReducedDensityMatrices:
    """One- and two-body fermionic RDMs by direct ladder-operator action.

    gamma[i, j] = <a+_i a_j>, gamma2[c, d, e, f] = <a+_c a+_d a_e a_f>;
    exact (no sampling), computed once per VQE state and cached downstream.
    """
    n = psi.n_qubits
    amps = psi.amplitudes
    singles = np.stack([_annihilate(amps, p) for p in range(n)])
    gamma = singles.conj() @ singles.T

    pair_index = {}
    pair_vectors = []
    for e in range(n):
        for f in range(e + 1, n):
            pair_index[(e, f)] = len(pair_vectors)
            pair_vectors.append(_annihilate(singles[f], e))
    gamma2 = np.zeros((n, n, n, n), dtype=complex)
    if pair_vectors:
        pairs = np.stack(pair_vectors)
        overlaps = pairs.conj() @ pairs.T  # <a_c a_d psi | a_e a_f psi>, c<d, e<f
        for (c, d), row in pair_index.items():
            for (e, f), col in pair_index.items():
                value = -overlaps[row, col]  # a_d a_c = -a_c a_d
                gamma2[c, d, e, f] = value
                gamma2[d, c, e, f] = -value
                gamma2[c, d, f, e] = -value
                gamma2[d, c, f, e] = value
    return ReducedDensityMatrices(n_spin_orbitals=n, gamma=gamma, gamma2=gamma2)
