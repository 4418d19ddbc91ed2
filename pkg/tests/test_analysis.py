import numpy as np
import pytest

import wahtor as w
from wahtor.errors import DegenerateError, ScaleError
from wahtor.simulator import basis_state

from oracles import dense_one_particle_rdm


class TestFciSolve:
    def test_toy_enumeration(self, toy_integrals):
        # 4-state Fock space by hand: E(n_up, n_dn) = -(n_up + n_dn) + 0.5*n_up*n_dn
        h = w.jordan_wigner(w.spatial_to_spin_hamiltonian(toy_integrals))
        energies = {(0, 0): 0.0, (1, 0): -1.0, (0, 1): -1.0, (1, 1): -1.5}
        assert w.fci_solve(h, 2).energy == pytest.approx(energies[(1, 1)])
        assert w.fci_solve(h, 1).energy == pytest.approx(-1.0)
        assert w.fci_solve(h, 0).energy == pytest.approx(0.0)

    def test_h2_reference_energy(self, h2_fixture):
        ints, meta, h = h2_fixture
        sol = w.fci_solve(h, ints.n_electrons)
        assert abs(sol.energy - meta.reference_energies["fci"]) < 1e-3

    def test_lih_reference_energy(self):
        ints, meta = w.load_fixture("lih")
        sol = w.fci_of_integrals(ints)
        assert abs(sol.energy - meta.reference_energies["fci"]) < 1e-3

    def test_eigenpair_residual(self, h2_sto3g):
        ints, _, h = h2_sto3g
        sol = w.fci_solve(h, ints.n_electrons)
        residual = (w.apply_pauli_sum(h, sol.ground_vector.amplitudes)
                    - sol.energy * sol.ground_vector.amplitudes)
        assert np.linalg.norm(residual) < 1e-9

    def test_particle_number_of_ground_vector(self, h2_sto3g):
        ints, _, h = h2_sto3g
        sol = w.fci_solve(h, ints.n_electrons)
        n = w.pauli_expectation(w.number_operator(h.n_qubits), sol.ground_vector)
        assert abs(n - ints.n_electrons) < 1e-8

    def test_deterministic_phase(self, h2_sto3g):
        ints, _, h = h2_sto3g
        a = w.fci_solve(h, 2).ground_vector.amplitudes
        b = w.fci_solve(h, 2).ground_vector.amplitudes
        assert np.array_equal(a, b)
        anchor = np.argmax(np.abs(a))
        assert a[anchor].real > 0 and abs(a[anchor].imag) < 1e-14

    def test_scale_error(self):
        h = w.PauliSum.from_terms(17, {"I" * 17: 1.0})
        with pytest.raises(ScaleError):
            w.fci_solve(h, 2)


class TestNaturalOrbitals:
    def test_single_determinant_occupations(self, h2_sto3g):
        ints, _, _ = h2_sto3g
        hf = w.hf_reference(4, 2)
        sol = w.FciSolution(energy=0.0, ground_vector=hf, n_electrons=2)
        occ, _ = w.natural_orbitals(sol, ints.m)
        assert np.abs(occ - np.array([2.0, 0.0])).max() < 1e-12

    def test_occupation_sum(self, h2_fixture):
        ints, _, h = h2_fixture
        sol = w.fci_solve(h, ints.n_electrons)
        occ, _ = w.natural_orbitals(sol, ints.m)
        assert abs(occ.sum() - ints.n_electrons) < 1e-8
        assert occ.min() > -1e-10 and occ.max() < 2 + 1e-10

    def test_against_dense_rdm_oracle(self, h2_sto3g):
        ints, _, h = h2_sto3g
        sol = w.fci_solve(h, ints.n_electrons)
        occ, vec = w.natural_orbitals(sol, ints.m)
        gamma = dense_one_particle_rdm(sol.ground_vector.amplitudes)
        d = np.real(gamma[:ints.m, :ints.m] + gamma[ints.m:, ints.m:])
        oracle_occ = np.sort(np.linalg.eigvalsh(d))[::-1]
        assert np.abs(occ - oracle_occ).max() < 1e-10
        assert np.abs(d @ vec - vec @ np.diag(occ)).max() < 1e-10

    def test_h2_dominant_occupation(self, h2_fixture):
        ints, _, h = h2_fixture
        sol = w.fci_solve(h, ints.n_electrons)
        occ, _ = w.natural_orbitals(sol, ints.m)
        assert occ[0] > 1.9
        assert occ[1:].max() < 0.1


class TestDeltaMetric:
    def test_identity_gives_zero(self, rng):
        q, _ = np.linalg.qr(rng.normal(size=(4, 4)))
        assert w.delta_metric(np.eye(4), q) == pytest.approx(0.0, abs=1e-12)

    def test_natural_orbitals_give_one(self, rng):
        q, _ = np.linalg.qr(rng.normal(size=(4, 4)))
        signs = np.diag([1.0, -1.0, 1.0, -1.0])
        assert w.delta_metric(q @ signs, q) == pytest.approx(1.0, abs=1e-12)

    def test_sentinel_when_hf_equals_no(self):
        assert w.delta_metric(np.eye(3), np.eye(3)) is None

    def test_groups_restrict_the_sum(self, rng):
        # rotate only orbitals (1, 2); orbital 3 stays put and must not count
        groups = w.SymmetryGroups.from_lists([[1, 2], [3]])
        angle = 0.6
        rot = np.eye(3)
        rot[:2, :2] = [[np.cos(angle), -np.sin(angle)],
                       [np.sin(angle), np.cos(angle)]]
        assert w.delta_metric(rot, rot, groups) == pytest.approx(1.0, abs=1e-12)


class TestCorrelationFraction:
    def test_endpoints(self):
        assert w.correlation_fraction(-1.0, -1.0, -2.0) == 0.0
        assert w.correlation_fraction(-2.0, -1.0, -2.0) == 1.0

    def test_shift_invariance(self):
        a = w.correlation_fraction(-1.5, -1.0, -2.0)
        b = w.correlation_fraction(-1.5 + 7.3, -1.0 + 7.3, -2.0 + 7.3)
        assert a == pytest.approx(b)

    def test_degenerate_error(self):
        with pytest.raises(DegenerateError):
            w.correlation_fraction(-1.0, -2.0, -2.0)

    def test_h2_reference_epsilon(self, h2_fixture):
        ints, meta, _ = h2_fixture
        eps = w.correlation_fraction(
            meta.reference_energies["wahtor"],
            meta.rhf_electronic_energy,
            meta.reference_energies["fci"])
        assert eps == pytest.approx(0.7817, abs=1e-3)


class TestMutualInformation:
    def test_product_state_zero(self):
        psi = basis_state(3, 0b101)
        mi = w.mutual_information(psi)
        assert np.abs(mi.values).max() < 1e-12

    def test_bell_pair(self):
        amps = np.zeros(4, dtype=complex)
        amps[0b00] = amps[0b11] = 1 / np.sqrt(2)
        mi = w.mutual_information(w.Statevector(2, amps))
        assert mi.values[0, 1] == pytest.approx(2 * np.log(2), abs=1e-12)

    def test_matrix_properties(self, h2_sto3g):
        ints, _, h = h2_sto3g
        sol = w.fci_solve(h, ints.n_electrons)
        mi = w.mutual_information(sol.ground_vector)
        assert np.abs(mi.values - mi.values.T).max() == 0.0
        assert np.abs(np.diag(mi.values)).max() == 0.0
        assert mi.values.min() >= -1e-10
        assert mi.values.max() <= 2 * np.log(2) + 1e-10

    def test_entropy_bounds(self, h2_fixture):
        ints, _, h = h2_fixture
        sol = w.fci_solve(h, ints.n_electrons)
        for q in range(4):
            s = w.von_neumann_entropy(
                w.reduced_density_matrix(sol.ground_vector, [q]))
            assert -1e-12 <= s <= np.log(2) + 1e-10
        s2 = w.von_neumann_entropy(
            w.reduced_density_matrix(sol.ground_vector, [0, 5]))
        assert s2 <= 2 * np.log(2) + 1e-10

    def test_csv_roundtrip(self, h2_sto3g):
        ints, _, h = h2_sto3g
        sol = w.fci_solve(h, ints.n_electrons)
        mi = w.mutual_information(sol.ground_vector)
        parsed = np.array([[float(x) for x in line.split(",")]
                           for line in mi.to_csv().strip().splitlines()])
        assert np.abs(parsed - mi.values).max() < 1e-11


class TestBasisChange:
    def test_identity_rotation_same_amplitudes(self, h2_sto3g):
        ints, _, h = h2_sto3g
        sol = w.fci_solve(h, ints.n_electrons)
        changed = w.basis_change_state(sol.ground_vector, np.eye(ints.m), ints)
        assert np.abs(changed.amplitudes - sol.ground_vector.amplitudes).max() < 1e-12

    def test_energy_invariant_under_rotation(self, h2_sto3g, rng):
        ints, _, _ = h2_sto3g
        q, _ = np.linalg.qr(rng.normal(size=(ints.m, ints.m)))
        sol = w.ground_state_in_basis(ints, q)
        assert abs(sol.energy - w.fci_of_integrals(ints).energy) < 1e-9

    def test_number_preserved(self, h2_sto3g, rng):
        ints, _, h = h2_sto3g
        q, _ = np.linalg.qr(rng.normal(size=(ints.m, ints.m)))
        psi = w.basis_change_state(
            w.fci_solve(h, ints.n_electrons).ground_vector, q, ints)
        n = w.pauli_expectation(w.number_operator(4), psi)
        assert abs(n - ints.n_electrons) < 1e-8
