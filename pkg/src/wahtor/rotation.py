"""Symmetry-restricted orbital-rotation generators and integral transforms.

Rotations act on the m spatial orbitals; the spin-up and spin-down blocks
always share the same spatial rotation.  Generators are real antisymmetric
single-pair matrices A = iT (T the Hermitian Lie generators), so
U(r) = exp(sum_l r_l A_l) is real orthogonal and every tensor stays real.

Tensor convention: h1 -> U h1 U^T and each chemist-notation h2 index is
contracted with U on the left, i.e. row p of U holds the p-th rotated
orbital expressed in the current basis.  The orbital-coefficient matrix with
orbitals as COLUMNS is therefore U^T; `orbital_coefficients` converts.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm

from .errors import NumericalError
from .integrals import SpatialIntegrals, SymmetryGroups

DERIVATIVE_ORDERS = 2  # the trust-region model consumes gradient + Hessian only


@dataclass(frozen=True)
class GeneratorSet:
    """One antisymmetric generator per orbital pair within a symmetry group."""

    m: int
    labels: tuple[tuple[int, int], ...]  # 0-based (p, q), p < q

    def __len__(self):
        return len(self.labels)

    @property
    def generators(self) -> np.ndarray:
        """Dense stack of shape (n_generators, m, m): +1 at (p,q), -1 at (q,p)."""
        mats = np.zeros((len(self.labels), self.m, self.m))
        for l, (p, q) in enumerate(self.labels):
            mats[l, p, q] = 1.0
            mats[l, q, p] = -1.0
        return mats

    def combine(self, r) -> np.ndarray:
        r = np.asarray(r, dtype=float)
        if r.shape != (len(self.labels),):
            raise NumericalError(
                f"{r.shape} parameters for {len(self.labels)} generators")
        a = np.zeros((self.m, self.m))
        for coeff, (p, q) in zip(r, self.labels):
            a[p, q] += coeff
            a[q, p] -= coeff
        return a


def build_generators(groups: SymmetryGroups, m: int) -> GeneratorSet:
    """Deterministic generator ordering: by group, then lexicographic pair."""
    labels = []
    for group in groups.groups:
        members = sorted(group)
        for i, p in enumerate(members):
            for q in members[i + 1:]:
                labels.append((p - 1, q - 1))  # 1-based input, 0-based internal
    return GeneratorSet(m=m, labels=tuple(labels))


def rotation_matrix(g: GeneratorSet, r) -> np.ndarray:
    """U = exp(sum r_l A_l), real orthogonal (Pade scaling-and-squaring)."""
    return expm(g.combine(r))


def orbital_coefficients(u: np.ndarray) -> np.ndarray:
    """Column-wise orbital coefficients corresponding to a tensor transform U."""
    return u.T


def apply_orbital_rotation(ints: SpatialIntegrals, u: np.ndarray) -> SpatialIntegrals:
    """Transform all integral tensors by an explicit orthogonal matrix."""
    h1 = u @ ints.h1 @ u.T
    h2 = np.einsum("pa,aqrs->pqrs", u, ints.h2, optimize=True)
    h2 = np.einsum("qb,pbrs->pqrs", u, h2, optimize=True)
    h2 = np.einsum("rc,pqcs->pqrs", u, h2, optimize=True)
    h2 = np.einsum("sd,pqrd->pqrs", u, h2, optimize=True)
    if not (np.isfinite(h1).all() and np.isfinite(h2).all()):
        raise NumericalError("non-finite tensors after rotation")
    return ints.replace_tensors(h1=h1, h2=h2)


def rotate_integrals(ints: SpatialIntegrals, g: GeneratorSet, r) -> SpatialIntegrals:
    """Integral tensors in the basis rotated by parameters r; core unchanged."""
    return apply_orbital_rotation(ints, rotation_matrix(g, r))


def _lift_commutator(a: np.ndarray, h2: np.ndarray) -> np.ndarray:
    """Derivation action of an antisymmetric a on a 4-index tensor.

    Equals d/dt of the four-index congruence transform with U = exp(t a) at
    t = 0: a contracted into each tensor slot in turn.
    """
    return (np.einsum("pa,aqrs->pqrs", a, h2, optimize=True)
            + np.einsum("qa,pars->pqrs", a, h2, optimize=True)
            + np.einsum("ra,pqas->pqrs", a, h2, optimize=True)
            + np.einsum("sa,pqra->pqrs", a, h2, optimize=True))


@dataclass(frozen=True)
class RotationDerivatives:
    """First and second derivatives of h1/h2 with respect to r at r = 0."""

    grad_h1: np.ndarray   # (L, m, m)
    grad_h2: np.ndarray   # (L, m, m, m, m)
    hess_h1: np.ndarray   # (L, L, m, m)
    hess_h2: np.ndarray   # (L, L, m, m, m, m)


def derivatives_at_zero(ints: SpatialIntegrals, g: GeneratorSet) -> RotationDerivatives:
    """Analytic commutator derivatives of the integral tensors at r = 0.

    grad_h1[l] = [A_l, h1]; hess_h1[l1,l2] is the symmetrized double
    commutator; h2 derivatives replace the commutator by the four-slot
    derivation.  Signs are fixed so the Taylor expansion matches
    rotate_integrals.
    """
    mats = g.generators
    L, m = len(g), g.m
    grad_h1 = np.empty((L, m, m))
    grad_h2 = np.empty((L, m, m, m, m))
    for l in range(L):
        a = mats[l]
        grad_h1[l] = a @ ints.h1 - ints.h1 @ a
        grad_h2[l] = _lift_commutator(a, ints.h2)
    hess_h1 = np.empty((L, L, m, m))
    hess_h2 = np.empty((L, L, m, m, m, m))
    for l1 in range(L):
        a1 = mats[l1]
        for l2 in range(l1 + 1):
            a2 = mats[l2]
            h1_12 = a1 @ grad_h1[l2] - grad_h1[l2] @ a1
            h1_21 = a2 @ grad_h1[l1] - grad_h1[l1] @ a2
            hess_h1[l1, l2] = hess_h1[l2, l1] = 0.5 * (h1_12 + h1_21)
            h2_12 = _lift_commutator(a1, grad_h2[l2])
            h2_21 = _lift_commutator(a2, grad_h2[l1])
            hess_h2[l1, l2] = hess_h2[l2, l1] = 0.5 * (h2_12 + h2_21)
    return RotationDerivatives(grad_h1=grad_h1, grad_h2=grad_h2,
                               hess_h1=hess_h1, hess_h2=hess_h2)
