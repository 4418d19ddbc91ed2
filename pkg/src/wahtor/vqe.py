"""Variational optimization of the ansatz parameters against a fixed PauliSum.

L-BFGS-B (memory 10, strong-Wolfe line search) drives the minimization with
an exact analytic gradient.  For Ry generators the parameter-shift rule
dE/dt_k = [E(t_k + pi/2) - E(t_k - pi/2)] / 2 and the adjoint backward sweep
give identical values; the sweep costs one Hamiltonian application instead of
2 * n_params circuit evaluations and is the default.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np
from scipy.optimize import minimize

from .errors import DimensionError, NumericalError
from .pauli import PauliSum, apply_pauli_sum, pauli_expectation
from .simulator import AnsatzCircuit, Statevector, _apply_cnot, _apply_ry, _apply_y, apply_ansatz


@dataclass(frozen=True)
class VqeResult:
    energy: float
    theta: np.ndarray
    n_evaluations: int
    converged: bool
    seed: int


@dataclass(frozen=True)
class VqeOptions:
    gradient: str = "adjoint"          # or "parameter-shift"
    gradient_tol: float = 1e-8
    energy_change_tol: float = 1e-10
    max_evaluations: int = 10_000


def ansatz_energy(h: PauliSum, circuit: AnsatzCircuit, ref: Statevector, theta) -> float:
    return pauli_expectation(h, apply_ansatz(circuit, theta, ref))


def parameter_shift_gradient(h, circuit, ref, theta) -> np.ndarray:
    """Exact gradient from pi/2 shifts of each Ry angle."""
    theta = np.asarray(theta, dtype=float)
    grad = np.empty(circuit.n_params)
    for k in range(circuit.n_params):
        shifted = theta.copy()
        shifted[k] = theta[k] + np.pi / 2
        plus = ansatz_energy(h, circuit, ref, shifted)
        shifted[k] = theta[k] - np.pi / 2
        minus = ansatz_energy(h, circuit, ref, shifted)
        grad[k] = 0.5 * (plus - minus)
    return grad


def adjoint_gradient(h, circuit, ref, theta) -> tuple[float, np.ndarray]:
    """(energy, gradient) from one forward pass and one backward sweep.

    Sweeping gates in reverse with phi = U_j..U_1|ref> and
    lam = (U_{j+1}..U_L)^dag H |psi> gives
    dE/dt_j = 2 Re <lam| dU_j/dt_j U_j^dag |phi> = Im <lam| Y_q |phi>.
    """
    theta = np.asarray(theta, dtype=float)
    psi = apply_ansatz(circuit, theta, ref)
    lam = apply_pauli_sum(h, psi.amplitudes)
    energy = float(np.vdot(psi.amplitudes, lam).real)
    phi = psi.amplitudes.copy()
    lam = lam.copy()
    grad = np.zeros(circuit.n_params)
    for gate in reversed(circuit.gates):
        if gate[0] == "ry":
            _, q, k = gate
            probe = phi.copy()
            _apply_y(probe, q)
            grad[k] = np.vdot(lam, probe).imag
            _apply_ry(phi, q, -theta[k])
            _apply_ry(lam, q, -theta[k])
        else:
            _, c, t = gate
            _apply_cnot(phi, c, t)
            _apply_cnot(lam, c, t)
    return energy, grad


def vqe_minimize(h: PauliSum, circuit: AnsatzCircuit, ref: Statevector,
                 theta0, options: VqeOptions | None = None, seed: int = 0) -> VqeResult:
    """Quasi-Newton minimization of the ansatz energy from theta0."""
    options = options or VqeOptions()
    theta0 = np.asarray(theta0, dtype=float)
    if theta0.shape != (circuit.n_params,):
        raise DimensionError(
            f"theta0 has shape {theta0.shape}, expected ({circuit.n_params},)")
    evaluations = 0

    def objective(theta):
        nonlocal evaluations
        evaluations += 1
        if options.gradient == "adjoint":
            energy, grad = adjoint_gradient(h, circuit, ref, theta)
        else:
            energy = ansatz_energy(h, circuit, ref, theta)
            grad = parameter_shift_gradient(h, circuit, ref, theta)
        if not (np.isfinite(energy) and np.isfinite(grad).all()):
            raise NumericalError("non-finite energy or gradient in VQE")
        return energy, grad

    # scipy ftol is relative: energy_change_tol / 100 covers |E| up to 100 Eh
    result = minimize(
        objective, theta0, jac=True, method="L-BFGS-B",
        options={
            "maxcor": 10,
            "maxfun": options.max_evaluations,
            "gtol": options.gradient_tol,
            "ftol": options.energy_change_tol / 100.0,
        })
    return VqeResult(
        energy=float(result.fun),
        theta=np.asarray(result.x),
        n_evaluations=evaluations,
        converged=bool(result.success),
        seed=seed,
    )


@dataclass(frozen=True)
class MultistartResult:
    best: VqeResult
    results: tuple[VqeResult, ...]
    master_seed: int


def vqe_multistart(h: PauliSum, circuit: AnsatzCircuit, ref: Statevector,
                   n_starts: int, seed: int,
                   options: VqeOptions | None = None) -> MultistartResult:
    """Seeded multistart protocol: initial angles uniform over [-pi, pi).

    Fully reproducible: one generator seeded with `seed` draws every start,
    the best result is the minimum energy with the start index as tiebreak.
    """
    if n_starts < 1:
        raise ValueError("n_starts must be at least 1")
    rng = np.random.default_rng(seed)
    results = []
    for start in range(n_starts):
        theta0 = rng.uniform(-np.pi, np.pi, size=circuit.n_params)
        results.append(replace(
            vqe_minimize(h, circuit, ref, theta0, options), seed=start))
    best = min(results, key=lambda r: (r.energy, r.seed))
    return MultistartResult(best=best, results=tuple(results), master_seed=seed)
