"""WAHTOR: VQE alternated with trust-region molecular-orbital optimization."""

from .errors import (
    ConsistencyError,
    DegenerateError,
    DimensionError,
    EncodingError,
    GroupError,
    NumericalError,
    ParseError,
    ScaleError,
    UnsupportedError,
    WahtorError,
)
from .integrals import (
    FixtureMetadata,
    SpatialIntegrals,
    SymmetryGroups,
    load_fcidump,
    load_metadata,
    parse_fcidump,
    serialize_fcidump,
    validate_symmetry_groups,
)
from .pauli import (
    FermionicOperator,
    PauliString,
    PauliSum,
    apply_pauli_sum,
    jordan_wigner,
    number_operator,
    pauli_expectation,
    spatial_to_spin_hamiltonian,
)
from .simulator import (
    AnsatzCircuit,
    ReducedDensityMatrices,
    Statevector,
    apply_ansatz,
    fermionic_rdms,
    hf_reference,
    one_particle_rdm,
    reduced_density_matrix,
)
from .rotation import (
    GeneratorSet,
    RotationDerivatives,
    apply_orbital_rotation,
    build_generators,
    derivatives_at_zero,
    orbital_coefficients,
    rotate_integrals,
    rotation_matrix,
)
from .trust_region import solve_trust_region_subproblem
from .vqe import (
    MultistartResult,
    VqeOptions,
    VqeResult,
    adjoint_gradient,
    ansatz_energy,
    parameter_shift_gradient,
    vqe_minimize,
    vqe_multistart,
)
from .loop import (
    TrustRegionOptions,
    WahtorOptions,
    WahtorState,
    energy_gradient_hessian,
    fixed_state_energy,
    optimize_hamiltonian,
    wahtor_run,
)
from .analysis import (
    FciSolution,
    MutualInfoMatrix,
    basis_change_state,
    correlation_fraction,
    delta_metric,
    fci_of_integrals,
    fci_solve,
    ground_state_in_basis,
    match_columns,
    mutual_information,
    natural_orbitals,
    von_neumann_entropy,
)
from .data import BENCHMARK_FIXTURES, load_fixture

__version__ = "0.1.0"
