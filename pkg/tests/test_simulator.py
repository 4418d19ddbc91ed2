import numpy as np
import pytest

import wahtor as w
from wahtor.errors import DimensionError, UnsupportedError
from wahtor.pauli import number_operator
from wahtor.simulator import basis_state

from oracles import dense_one_particle_rdm


class TestHfReference:
    def test_four_qubits_two_electrons(self):
        psi = w.hf_reference(4, 2)
        # spin-up orbital 0 (qubit 0) and spin-down orbital 0 (qubit 2)
        expected = (1 << 0) | (1 << 2)
        assert psi.amplitudes[expected] == 1.0
        assert np.count_nonzero(psi.amplitudes) == 1

    def test_zero_electrons(self):
        psi = w.hf_reference(4, 0)
        assert psi.amplitudes[0] == 1.0

    def test_twelve_qubits_eight_electrons_number(self):
        psi = w.hf_reference(12, 8)
        n = w.pauli_expectation(number_operator(12), psi)
        assert n == pytest.approx(8.0, abs=1e-12)

    def test_odd_electrons_unsupported(self):
        with pytest.raises(UnsupportedError):
            w.hf_reference(4, 3)

    def test_endianness_consistency(self):
        # occupation of each spin orbital q read back via <(I - Z_q)/2>
        psi = w.hf_reference(8, 4)
        occupations = []
        for q in range(8):
            zq = w.PauliSum.from_terms(8, {"".join(
                "Z" if k == q else "I" for k in range(8)): 1.0})
            occupations.append(0.5 * (1.0 - w.pauli_expectation(zq, psi)))
        assert occupations == [1, 1, 0, 0, 1, 1, 0, 0]


class TestAnsatz:
    def test_zero_angles_fix_zero_state(self):
        circ = w.AnsatzCircuit(n_qubits=4, depth=2)
        psi = w.apply_ansatz(circ, np.zeros(circ.n_params), basis_state(4, 0))
        assert abs(psi.amplitudes[0] - 1.0) < 1e-12

    def test_pi_rotation_flips_single_qubit(self):
        circ = w.AnsatzCircuit(n_qubits=1, depth=0)
        psi = w.apply_ansatz(circ, [np.pi], basis_state(1, 0))
        assert abs(abs(psi.amplitudes[1]) - 1.0) < 1e-12

    def test_norm_preserved(self, rng):
        circ = w.AnsatzCircuit(n_qubits=5, depth=3)
        theta = rng.uniform(-np.pi, np.pi, circ.n_params)
        psi = w.apply_ansatz(circ, theta, w.hf_reference(5, 2))
        assert abs(psi.norm() - 1.0) < 1e-12

    def test_wrong_length_raises(self):
        circ = w.AnsatzCircuit(n_qubits=2, depth=1)
        with pytest.raises(DimensionError):
            w.apply_ansatz(circ, np.zeros(3), basis_state(2, 0))

    def test_parameter_count(self):
        assert w.AnsatzCircuit(n_qubits=8, depth=2).n_params == 24
        assert w.AnsatzCircuit(n_qubits=12, depth=4).n_params == 60

    def test_gates_against_dense_matrices(self, rng):
        # one Ry layer + ladder CNOTs on 3 qubits vs explicit matrix algebra
        circ = w.AnsatzCircuit(n_qubits=3, depth=1)
        theta = rng.uniform(-np.pi, np.pi, circ.n_params)
        amps = rng.normal(size=8) + 1j * rng.normal(size=8)
        amps /= np.linalg.norm(amps)
        ref = w.Statevector(3, amps)
        result = w.apply_ansatz(circ, theta, ref)

        def ry(angle):
            c, s = np.cos(angle / 2), np.sin(angle / 2)
            return np.array([[c, -s], [s, c]], dtype=complex)

        def on_qubit(gate, q):
            ops = [np.eye(2, dtype=complex)] * 3
            ops[q] = gate
            return np.kron(np.kron(ops[2], ops[1]), ops[0])

        full = np.eye(8, dtype=complex)
        for q in range(3):
            full = on_qubit(ry(theta[q]), q) @ full
        # CNOT(0,1) then CNOT(1,2) in the little-endian basis
        for control, target in ((0, 1), (1, 2)):
            mat = np.zeros((8, 8), dtype=complex)
            for i in range(8):
                j = i ^ (1 << target) if (i >> control) & 1 else i
                mat[j, i] = 1.0
            full = mat @ full
        for q in range(3):
            full = on_qubit(ry(theta[3 + q]), q) @ full
        assert np.abs(result.amplitudes - full @ amps).max() < 1e-12


def test_amplitude_dump_roundtrip(tmp_path, rng):
    from wahtor.simulator import load_amplitudes, save_amplitudes
    amps = rng.normal(size=8) + 1j * rng.normal(size=8)
    amps /= np.linalg.norm(amps)
    psi = w.Statevector(3, amps)
    save_amplitudes(psi, tmp_path / "psi.npy")
    loaded = load_amplitudes(tmp_path / "psi.npy")
    assert loaded.n_qubits == 3
    assert np.array_equal(loaded.amplitudes, psi.amplitudes)


class TestReducedDensityMatrix:
    def test_product_state_purity(self):
        psi = basis_state(2, 0b01)  # qubit 0 occupied
        rho = w.reduced_density_matrix(psi, [0])
        assert np.abs(rho - np.diag([0.0, 1.0])).max() < 1e-14
        eigs = np.sort(np.linalg.eigvalsh(rho))
        assert np.abs(eigs - np.array([0.0, 1.0])).max() < 1e-14

    def test_bell_state_maximally_mixed(self):
        amps = np.zeros(4, dtype=complex)
        amps[0b00] = amps[0b11] = 1.0 / np.sqrt(2.0)
        rho = w.reduced_density_matrix(w.Statevector(2, amps), [0])
        assert np.abs(rho - 0.5 * np.eye(2)).max() < 1e-14

    def test_random_state_axioms(self, rng):
        amps = rng.normal(size=16) + 1j * rng.normal(size=16)
        amps /= np.linalg.norm(amps)
        rho = w.reduced_density_matrix(w.Statevector(4, amps), [1, 3])
        assert abs(np.trace(rho).real - 1.0) < 1e-12
        assert np.abs(rho - rho.conj().T).max() < 1e-12
        assert np.linalg.eigvalsh(rho).min() > -1e-12

    def test_bad_indices(self):
        psi = basis_state(2, 0)
        with pytest.raises(IndexError):
            w.reduced_density_matrix(psi, [2])
        with pytest.raises(IndexError):
            w.reduced_density_matrix(psi, [0, 0])


class TestFermionicRdms:
    def test_hf_reference_diagonal(self):
        psi = w.hf_reference(8, 4)
        rdms = w.fermionic_rdms(psi)
        expected = np.diag([1.0, 1.0, 0.0, 0.0, 1.0, 1.0, 0.0, 0.0])
        assert np.abs(rdms.gamma - expected).max() < 1e-12
        assert abs(rdms.trace() - 4.0) < 1e-12

    def test_gamma_hermitian(self, rng):
        circ = w.AnsatzCircuit(n_qubits=4, depth=2)
        psi = w.apply_ansatz(circ, rng.uniform(-np.pi, np.pi, circ.n_params),
                             w.hf_reference(4, 2))
        gamma = w.fermionic_rdms(psi).gamma
        assert np.abs(gamma - gamma.conj().T).max() < 1e-12

    def test_gamma_matches_dense_oracle(self, rng):
        circ = w.AnsatzCircuit(n_qubits=4, depth=1)
        psi = w.apply_ansatz(circ, rng.uniform(-np.pi, np.pi, circ.n_params),
                             w.hf_reference(4, 2))
        gamma = w.fermionic_rdms(psi).gamma
        oracle = dense_one_particle_rdm(psi.amplitudes)
        assert np.abs(gamma - oracle).max() < 1e-12

    def test_energy_consistency_oracle(self, h2_sto3g, rng):
        ints, _, h = h2_sto3g
        circ = w.AnsatzCircuit(n_qubits=4, depth=2)
        psi = w.apply_ansatz(circ, rng.uniform(-np.pi, np.pi, circ.n_params),
                             w.hf_reference(4, 2))
        rdms = w.fermionic_rdms(psi)
        fop = w.spatial_to_spin_hamiltonian(ints)
        energy = (np.einsum("ij,ij->", fop.one_body, rdms.gamma.real)
                  + 0.5 * np.einsum("cdef,cdef->", fop.two_body,
                                    rdms.gamma2.real))
        assert abs(energy - w.pauli_expectation(h, psi)) < 1e-10

    def test_gamma2_contraction_to_gamma(self):
        # sum_d Gamma[c,d,d,f] = (N - 1) gamma[c,f] on number eigenstates
        psi = w.hf_reference(6, 4)
        rdms = w.fermionic_rdms(psi)
        contracted = np.einsum("cddf->cf", rdms.gamma2)
        assert np.abs(contracted - 3.0 * rdms.gamma).max() < 1e-10

    def test_gamma2_antisymmetry(self, rng):
        circ = w.AnsatzCircuit(n_qubits=4, depth=1)
        psi = w.apply_ansatz(circ, rng.uniform(-np.pi, np.pi, circ.n_params),
                             w.hf_reference(4, 2))
        g2 = w.fermionic_rdms(psi).gamma2
        assert np.abs(g2 + g2.transpose(1, 0, 2, 3)).max() < 1e-12
        assert np.abs(g2 + g2.transpose(0, 1, 3, 2)).max() < 1e-12
