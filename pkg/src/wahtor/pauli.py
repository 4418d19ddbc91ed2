"""Spin-orbital Hamiltonian assembly and Jordan-Wigner qubit mapping.

Pauli strings are stored in symplectic form: a pair of bitmasks (x, z) where
bit q of x flags an X or Y on qubit q and bit q of z flags a Z or Y.  The
letter on qubit q is I/X/Z/Y for (x_q, z_q) = (0,0)/(1,0)/(0,1)/(1,1).  With
the convention P(x, z) = prod_q X^{x_q} Z^{z_q} the letter string equals
i^{popcount(x & z)} P(x, z), and products reduce to XORs plus a sign
(-1)^{popcount(z1 & x2)}.  Qubit q is bit q of the basis-state integer
(little-endian); every module in the package shares this convention.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import DimensionError, EncodingError
from .integrals import SpatialIntegrals

PRUNE_THRESHOLD = 1e-12
_LETTERS = np.array(["I", "X", "Z", "Y"])  # indexed by x_bit + 2*z_bit

_I4 = np.array([1.0 + 0.0j, 1.0j, -1.0, -1.0j])       # i**k for k = 0..3
_MINUS_I4 = np.array([1.0 + 0.0j, -1.0j, -1.0, 1.0j])  # (-i)**k for k = 0..3


def _popcount(a):
    return np.bitwise_count(np.asarray(a, dtype=np.uint64)).astype(np.int64)


@dataclass(frozen=True)
class PauliString:
    """A single n-qubit Pauli word, letters[q] acting on qubit q."""

    n_qubits: int
    letters: str

    def __post_init__(self):
        if len(self.letters) != self.n_qubits:
            raise DimensionError(
                f"{len(self.letters)} letters for {self.n_qubits} qubits")
        if set(self.letters) - set("IXYZ"):
            raise ValueError(f"invalid letters in {self.letters!r}")

    def masks(self) -> tuple[int, int]:
        x = z = 0
        for q, letter in enumerate(self.letters):
            if letter in "XY":
                x |= 1 << q
            if letter in "ZY":
                z |= 1 << q
        return x, z

    @classmethod
    def from_masks(cls, n_qubits: int, x: int, z: int) -> "PauliString":
        letters = "".join(
            _LETTERS[((x >> q) & 1) + 2 * ((z >> q) & 1)] for q in range(n_qubits))
        return cls(n_qubits, letters)


@dataclass(frozen=True)
class PauliSum:
    """Real-weighted sum of Pauli strings, deduplicated and pruned.

    xs, zs, coeffs are parallel arrays sorted by (x, z) key so that equal
    operators have identical storage; coefficients below PRUNE_THRESHOLD are
    dropped at construction.
    """

    n_qubits: int
    xs: np.ndarray
    zs: np.ndarray
    coeffs: np.ndarray

    def __post_init__(self):
        xs = np.asarray(self.xs, dtype=np.int64)
        zs = np.asarray(self.zs, dtype=np.int64)
        coeffs = np.asarray(self.coeffs, dtype=float)
        keys = (xs << 32) | zs
        uniq, inverse = np.unique(keys, return_inverse=True)
        if len(uniq) != len(keys):
            coeffs = np.bincount(inverse, weights=coeffs, minlength=len(uniq))
            xs, zs = uniq >> 32, uniq & ((1 << 32) - 1)
        keep = np.abs(coeffs) > PRUNE_THRESHOLD
        xs, zs, coeffs = xs[keep], zs[keep], coeffs[keep]
        order = np.lexsort((zs, xs))
        for name, arr in (("xs", xs[order]), ("zs", zs[order]), ("coeffs", coeffs[order])):
            arr = np.ascontiguousarray(arr)
            arr.flags.writeable = False
            object.__setattr__(self, name, arr)

    def __len__(self):
        return len(self.coeffs)

    @property
    def terms(self) -> dict[PauliString, float]:
        return {
            PauliString.from_masks(self.n_qubits, int(x), int(z)): float(c)
            for x, z, c in zip(self.xs, self.zs, self.coeffs)
        }

    def coefficient(self, letters: str) -> float:
        x, z = PauliString(self.n_qubits, letters).masks()
        hit = (self.xs == x) & (self.zs == z)
        return float(self.coeffs[hit].sum())

    def scaled(self, factor: float) -> "PauliSum":
        return PauliSum(self.n_qubits, self.xs, self.zs, self.coeffs * factor)

    def __add__(self, other: "PauliSum") -> "PauliSum":
        if self.n_qubits != other.n_qubits:
            raise DimensionError("adding PauliSums of different qubit counts")
        return PauliSum(
            self.n_qubits,
            np.concatenate([self.xs, other.xs]),
            np.concatenate([self.zs, other.zs]),
            np.concatenate([self.coeffs, other.coeffs]),
        )

    def to_json(self) -> str:
        entries = [
            {"string": PauliString.from_masks(self.n_qubits, int(x), int(z)).letters,
             "coeff": float(c)}
            for x, z, c in zip(self.xs, self.zs, self.coeffs)
        ]
        return json.dumps(entries, indent=1)

    @classmethod
    def from_terms(cls, n_qubits: int, terms: dict[str, float]) -> "PauliSum":
        xs, zs, coeffs = [], [], []
        for letters, c in terms.items():
            x, z = PauliString(n_qubits, letters).masks()
            xs.append(x)
            zs.append(z)
            coeffs.append(c)
        return cls(n_qubits, np.array(xs, dtype=np.int64),
                   np.array(zs, dtype=np.int64), np.array(coeffs))

    @cached_property
    def _classes(self):
        """Terms fused by shared x-mask for fast statevector application.

        For each distinct x the dense vector g[k] = sum_terms c * i^{#Y} *
        (-1)^{popcount(z & k)} gives (H psi)[k ^ x] += g[k] * psi[k].  Real
        coefficients with even Y counts (guaranteed for real-integral
        Hamiltonians) make every g real.
        """
        dim = 1 << self.n_qubits
        basis = np.arange(dim, dtype=np.int64)
        y_phase = _I4[_popcount(self.xs & self.zs) % 4]
        if np.abs(y_phase.imag).max(initial=0.0) > 0:
            weights = self.coeffs * y_phase
            dtype = complex
        else:
            weights = self.coeffs * y_phase.real
            dtype = float
        classes = []
        for x in np.unique(self.xs):
            members = np.nonzero(self.xs == x)[0]
            g = np.zeros(dim, dtype=dtype)
            for t in members:
                signs = 1.0 - 2.0 * (_popcount(basis & self.zs[t]) & 1)
                g += weights[t] * signs
            classes.append((int(x), g))
        return classes

    def sector_matrix(self, dets: np.ndarray) -> np.ndarray:
        """Dense matrix <d'|H|d> over the given basis determinants.

        dets must be sorted ascending.  Images leaving the basis set are
        dropped, which equals projecting H onto the span of dets.
        """
        dets = np.asarray(dets, dtype=np.int64)
        n = len(dets)
        y_phase = _I4[_popcount(self.xs & self.zs) % 4]
        if np.abs(y_phase.imag).max(initial=0.0) > 0:
            weights = self.coeffs * y_phase
        else:
            weights = self.coeffs * y_phase.real
        mat = np.zeros((n, n), dtype=weights.dtype)
        cols = np.arange(n)
        for x in np.unique(self.xs):
            members = np.nonzero(self.xs == x)[0]
            g = np.zeros(n, dtype=weights.dtype)
            for t in members:
                signs = 1.0 - 2.0 * (_popcount(dets & self.zs[t]) & 1)
                g += weights[t] * signs
            images = dets ^ x
            pos = np.searchsorted(dets, images)
            valid = (pos < n) & (dets[np.minimum(pos, n - 1)] == images)
            mat[pos[valid], cols[valid]] += g[valid]
        return mat


def identity_sum(n_qubits: int, coeff: float) -> PauliSum:
    return PauliSum(n_qubits, np.array([0]), np.array([0]), np.array([coeff]))


def number_operator(n_qubits: int) -> PauliSum:
    """N = sum_q (I - Z_q) / 2 in the shared little-endian convention."""
    xs = np.zeros(n_qubits + 1, dtype=np.int64)
    zs = np.array([0] + [1 << q for q in range(n_qubits)], dtype=np.int64)
    coeffs = np.array([n_qubits / 2.0] + [-0.5] * n_qubits)
    return PauliSum(n_qubits, xs, zs, coeffs)


@dataclass(frozen=True)
class FermionicOperator:
    """Dense coefficient tables of sum h1 a+_i a_j + 1/2 sum h2 a+ a+ a a.

    Indices run over 2m spin orbitals: 0..m-1 are the spin-up copies of the
    spatial orbitals, m..2m-1 the spin-down ones.
    """

    n_spin_orbitals: int
    one_body: np.ndarray
    two_body: np.ndarray

    def __post_init__(self):
        M = self.n_spin_orbitals
        if self.one_body.shape != (M, M) or self.two_body.shape != (M,) * 4:
            raise DimensionError("coefficient tables inconsistent with size")


def spatial_to_spin_hamiltonian(ints: SpatialIntegrals) -> FermionicOperator:
    """Expand spatial chemist-notation tensors over spin orbitals.

    The chemist entry (pq|rs) feeds the physicist-ordered coefficient of
    a+_{p sigma} a+_{r tau} a_{s tau} a_{q sigma} for all four spin pairs.
    """
    m = ints.m
    M = 2 * m
    one = np.zeros((M, M))
    one[:m, :m] = ints.h1
    one[m:, m:] = ints.h1
    two = np.zeros((M, M, M, M))
    h2_phys = ints.h2.transpose(0, 2, 3, 1)  # (pq|rs) -> [p, r, s, q]
    for sigma in (0, 1):
        for tau in (0, 1):
            two[sigma * m:(sigma + 1) * m, tau * m:(tau + 1) * m,
                tau * m:(tau + 1) * m, sigma * m:(sigma + 1) * m] += h2_phys
    return FermionicOperator(n_spin_orbitals=M, one_body=one, two_body=two)


def _ladder_masks(indices, daggers):
    """Expand products of Jordan-Wigner ladder operators, vectorized.

    a_p   = (P(x_p, c_p) - P(x_p, c_p | x_p)) / 2,
    a+_p  = (P(x_p, c_p) + P(x_p, c_p | x_p)) / 2,
    with x_p = 1 << p and c_p = x_p - 1 the Z parity chain.  Each of the
    2^n_factors sign branches is accumulated across all terms at once.

    indices: list of int64 arrays (one per ladder factor, aligned on terms).
    Returns (x, z, phase) arrays of shape (n_branches, n_terms); phase is the
    branch sign including exact anticommutation bookkeeping, excluding the
    2^-n_factors normalization.
    """
    n_factors = len(indices)
    n_terms = len(indices[0])
    xs = [np.int64(1) << idx for idx in indices]
    chains = [x - 1 for x in xs]
    branch_x = np.zeros((1 << n_factors, n_terms), dtype=np.int64)
    branch_z = np.zeros((1 << n_factors, n_terms), dtype=np.int64)
    branch_phase = np.zeros((1 << n_factors, n_terms))
    for branch in range(1 << n_factors):
        x_acc = np.zeros(n_terms, dtype=np.int64)
        z_acc = np.zeros(n_terms, dtype=np.int64)
        sign = np.ones(n_terms)
        for f in range(n_factors):
            bit = (branch >> f) & 1
            x_f = xs[f]
            z_f = chains[f] | (xs[f] if bit else 0)
            sign *= 1.0 - 2.0 * (_popcount(z_acc & x_f) & 1)
            if bit and not daggers[f]:
                sign = -sign
            x_acc = x_acc ^ x_f
            z_acc = z_acc ^ z_f
        branch_x[branch] = x_acc
        branch_z[branch] = z_acc
        branch_phase[branch] = sign
    return branch_x, branch_z, branch_phase


def jordan_wigner(fop: FermionicOperator, n_spin_orbitals: int | None = None) -> PauliSum:
    """Map a fermionic coefficient table to a real-weighted PauliSum.

    Uses a_p -> (X_p + iY_p)/2 * Z_{p-1}..Z_0 with qubit 0 = spin orbital 0.
    Raises EncodingError if the merged operator has imaginary residue above
    1e-10 (a symmetry-breaking input); residue below that is discarded.
    """
    n = fop.n_spin_orbitals if n_spin_orbitals is None else n_spin_orbitals
    if fop.n_spin_orbitals > n:
        raise DimensionError("coefficient table larger than qubit register")
    key_parts = []
    weight_parts = []

    def accumulate(coeffs, indices, daggers, scale):
        if len(coeffs) == 0:
            return
        bx, bz, bphase = _ladder_masks(indices, daggers)
        y = _popcount(bx & bz) % 4
        weights = (coeffs * scale) * bphase * _MINUS_I4[y]
        keys = (bx.astype(np.int64) << 32) | bz.astype(np.int64)
        key_parts.append(keys.ravel())
        weight_parts.append(weights.ravel())

    i, j = np.nonzero(fop.one_body)
    accumulate(fop.one_body[i, j], [i, j], [True, False], 0.25)
    c, d, e, f = np.nonzero(fop.two_body)
    accumulate(fop.two_body[c, d, e, f], [c, d, e, f],
               [True, True, False, False], 0.5 / 16.0)

    if not key_parts:
        return PauliSum(n, np.array([], dtype=np.int64),
                        np.array([], dtype=np.int64), np.array([]))
    keys = np.concatenate(key_parts)
    weights = np.concatenate(weight_parts)
    uniq, inverse = np.unique(keys, return_inverse=True)
    merged = (np.bincount(inverse, weights=weights.real, minlength=len(uniq))
              + 1j * np.bincount(inverse, weights=weights.imag, minlength=len(uniq)))
    residue = np.abs(merged.imag).max(initial=0.0)
    if residue > 1e-10:
        raise EncodingError(
            f"imaginary residue {residue:.3e} after merging; input breaks "
            "the real-Hamiltonian assumption")
    return PauliSum(n, uniq >> 32, uniq & ((1 << 32) - 1), merged.real)


def apply_pauli_sum(h: PauliSum, amplitudes: np.ndarray) -> np.ndarray:
    """Return H |psi> as a raw amplitude vector."""
    if len(amplitudes) != 1 << h.n_qubits:
        raise DimensionError("state dimension does not match operator")
    out = np.zeros_like(amplitudes)
    basis = np.arange(len(amplitudes), dtype=np.int64)
    for x, g in h._classes:
        out[basis ^ x] += g * amplitudes
    return out


def pauli_expectation(h: PauliSum, psi) -> float:
    """<psi|H|psi>; psi may be a Statevector or a raw amplitude vector."""
    amplitudes = getattr(psi, "amplitudes", psi)
    if len(amplitudes) != 1 << h.n_qubits:
        raise DimensionError(
            f"state of {len(amplitudes)} amplitudes vs {h.n_qubits}-qubit operator")
    total = 0.0
    basis = np.arange(len(amplitudes), dtype=np.int64)
    for x, g in h._classes:
        total += np.vdot(amplitudes[basis ^ x], g * amplitudes).real
    return float(total)


def to_dense(h: PauliSum) -> np.ndarray:
    """Dense matrix of a PauliSum; intended for n_qubits <= 10 checks."""
    dim = 1 << h.n_qubits
    mat = np.zeros((dim, dim), dtype=complex)
    basis = np.arange(dim, dtype=np.int64)
    for x, g in h._classes:
        mat[basis ^ x, basis] += g
    return mat
