"""Non-adiabatic alternation of VQE and trust-region orbital optimization.

During the Hamiltonian-optimization phase the wavefunction is frozen, so the
fermionic expectation values cached in ReducedDensityMatrices make every
rotated-basis energy an O(m^4) tensor contraction: no circuit evaluation is
needed until the next VQE.  Each accepted rotation is folded into the current
integrals and the Taylor expansion restarts at r = 0, where the analytic
derivative formulas live.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from .integrals import SpatialIntegrals, SymmetryGroups
from .pauli import jordan_wigner, spatial_to_spin_hamiltonian
from .rotation import (
    GeneratorSet,
    apply_orbital_rotation,
    build_generators,
    derivatives_at_zero,
    rotation_matrix,
)
from .simulator import AnsatzCircuit, ReducedDensityMatrices, apply_ansatz, fermionic_rdms, hf_reference
from .trust_region import solve_trust_region_subproblem
from .vqe import VqeOptions, vqe_minimize, vqe_multistart


def fixed_state_energy(rdms: ReducedDensityMatrices, ints: SpatialIntegrals,
                       include_core: bool = False) -> float:
    """E(R) for the frozen state: contract cached RDMs with rotated tensors."""
    energy = float(np.einsum("pq,pq->", ints.h1, rdms.spatial_one_rdm)
                   + 0.5 * np.einsum("pqrs,pqrs->", ints.h2,
                                     rdms.spatial_chemist_two_rdm))
    return energy + ints.core_energy if include_core else energy


def energy_gradient_hessian(rdms: ReducedDensityMatrices, ints: SpatialIntegrals,
                            g: GeneratorSet) -> tuple[np.ndarray, np.ndarray]:
    """Analytic dE/dr and d2E/dr2 of the fixed-state energy at r = 0."""
    derivs = derivatives_at_zero(ints, g)
    d1 = rdms.spatial_one_rdm
    d2 = rdms.spatial_chemist_two_rdm
    gradient = (np.einsum("lpq,pq->l", derivs.grad_h1, d1)
                + 0.5 * np.einsum("lpqrs,pqrs->l", derivs.grad_h2, d2))
    hessian = (np.einsum("klpq,pq->kl", derivs.hess_h1, d1)
               + 0.5 * np.einsum("klpqrs,pqrs->kl", derivs.hess_h2, d2))
    return gradient, 0.5 * (hessian + hessian.T)


@dataclass(frozen=True)
class TrustRegionOptions:
    initial_radius: float = 0.1
    acceptance_ratio: float = 0.1     # eta
    expand_factor: float = 2.0
    shrink_factor: float = 0.25
    gradient_tol: float = 1e-8
    energy_tol: float = 1e-9
    max_iterations: int = 100


@dataclass(frozen=True)
class WahtorState:
    """Progress of one run: rotation so far, rotated tensors, best angles."""

    accumulated_rotation: np.ndarray      # orbital coefficients, columns = orbitals
    current_integrals: SpatialIntegrals
    theta: np.ndarray
    energy_history: tuple[float, ...] = ()
    outer_iteration: int = 0

    def orthogonality_drift(self) -> float:
        c = self.accumulated_rotation
        return float(np.abs(c.T @ c - np.eye(c.shape[0])).max())


def _reorthogonalized(c: np.ndarray) -> np.ndarray:
    u, _, vt = np.linalg.svd(c)
    return u @ vt


@dataclass
class HamiltonianOptimizationLog:
    accepted_steps: int = 0
    iterations: int = 0
    final_gradient_norm: float = float("nan")
    final_radius: float = float("nan")
    energies: list = field(default_factory=list)


def optimize_hamiltonian(rdms: ReducedDensityMatrices, state: WahtorState,
                         g: GeneratorSet, opts: TrustRegionOptions | None = None,
                         ) -> tuple[WahtorState, HamiltonianOptimizationLog]:
    """Trust-region descent of the fixed-RDM energy over rotation parameters.

    Classic ratio test: accept when actual/predicted decrease exceeds eta,
    expand the radius after boundary steps with ratio > 0.75, shrink by 4x
    when the ratio drops under 0.1.  Accepted rotations recenter the model
    at r = 0.  The energy never increases across accepted steps.
    """
    opts = opts or TrustRegionOptions()
    log = HamiltonianOptimizationLog()
    ints = state.current_integrals
    rotation = state.accumulated_rotation
    if len(g) == 0:
        log.final_gradient_norm = 0.0
        return state, log

    radius = opts.initial_radius
    energy = fixed_state_energy(rdms, ints)
    log.energies.append(energy)
    for _ in range(opts.max_iterations):
        log.iterations += 1
        gradient, hessian = energy_gradient_hessian(rdms, ints, g)
        grad_norm = float(np.linalg.norm(gradient))
        log.final_gradient_norm = grad_norm
        if grad_norm < opts.gradient_tol:
            break
        step, predicted = solve_trust_region_subproblem(gradient, hessian, radius)
        if predicted <= 0.0:
            break
        u_step = rotation_matrix(g, step)
        candidate = apply_orbital_rotation(ints, u_step)
        new_energy = fixed_state_energy(rdms, candidate)
        actual = energy - new_energy
        ratio = actual / predicted
        at_boundary = np.linalg.norm(step) >= radius * (1.0 - 1e-10)
        if ratio > opts.acceptance_ratio:
            ints = candidate
            rotation = rotation @ u_step.T
            log.accepted_steps += 1
            log.energies.append(new_energy)
            if abs(energy - new_energy) < opts.energy_tol:
                energy = new_energy
                break
            energy = new_energy
        if ratio > 0.75 and at_boundary:
            radius *= opts.expand_factor
        elif ratio < 0.1:
            radius *= opts.shrink_factor
        log.final_radius = radius
    log.final_radius = radius
    if np.abs(rotation.T @ rotation - np.eye(g.m)).max() > 1e-9:
        rotation = _reorthogonalized(rotation)
    new_state = replace(state, current_integrals=ints, accumulated_rotation=rotation)
    return new_state, log


@dataclass(frozen=True)
class WahtorOptions:
    outer_energy_tol: float = 1e-6
    max_outer_iterations: int = 50
    n_starts: int = 20
    seed: int = 1
    vqe: VqeOptions = field(default_factory=VqeOptions)
    trust_region: TrustRegionOptions = field(default_factory=TrustRegionOptions)


def wahtor_run(ints: SpatialIntegrals, groups: SymmetryGroups,
               ansatz: AnsatzCircuit, opts: WahtorOptions | None = None,
               ) -> tuple[WahtorState, dict]:
    """Full alternation loop; returns the final state and a JSON-able report.

    Multistart VQE fixes the initial angles; each outer iteration recomputes
    the fermionic RDMs, optimizes the rotation on the frozen state, rebuilds
    the qubit Hamiltonian in the rotated basis and warm-starts the next VQE.
    Terminates when two successive VQE energies differ by less than the
    outer tolerance.
    """
    opts = opts or WahtorOptions()
    generator_set = build_generators(groups, ints.m)
    ref = hf_reference(2 * ints.m, ints.n_electrons)

    h_qubit = jordan_wigner(spatial_to_spin_hamiltonian(ints))
    multistart = vqe_multistart(h_qubit, ansatz, ref, opts.n_starts, opts.seed, opts.vqe)
    theta = multistart.best.theta
    energy = multistart.best.energy

    state = WahtorState(
        accumulated_rotation=np.eye(ints.m),
        current_integrals=ints,
        theta=theta,
        energy_history=(energy,),
        outer_iteration=0,
    )
    iterations = []
    converged = False
    for outer in range(1, opts.max_outer_iterations + 1):
        psi = apply_ansatz(ansatz, state.theta, ref)
        rdms = fermionic_rdms(psi)
        state, tr_log = optimize_hamiltonian(rdms, state, generator_set,
                                             opts.trust_region)
        post_rotation = fixed_state_energy(rdms, state.current_integrals)
        h_qubit = jordan_wigner(spatial_to_spin_hamiltonian(state.current_integrals))
        result = vqe_minimize(h_qubit, ansatz, ref, state.theta, opts.vqe)
        state = replace(
            state,
            theta=result.theta,
            energy_history=state.energy_history + (result.energy,),
            outer_iteration=outer,
        )
        iterations.append({
            "vqe_energy": result.energy,
            "post_rotation_energy": post_rotation,
            "grad_norm": tr_log.final_gradient_norm,
            "radius": tr_log.final_radius,
        })
        if abs(result.energy - energy) < opts.outer_energy_tol:
            converged = True
            energy = result.energy
            break
        energy = result.energy

    report = {
        "iterations": iterations,
        "initial_vqe_energy": float(state.energy_history[0]),
        "initial_theta": theta.tolist(),
        "final_energy": float(state.energy_history[-1]),
        "final_rotation": state.accumulated_rotation.tolist(),
        "final_theta": state.theta.tolist(),
        "converged": converged,
        "n_starts": opts.n_starts,
        "seed": opts.seed,
    }
    return state, report
