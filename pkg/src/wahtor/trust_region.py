"""Exact trust-region subproblem solver for tiny dimensions.

Solves min g.s + 1/2 s.H.s subject to ||s|| <= radius through the
eigendecomposition of H plus Newton refinement of the Lagrange multiplier on
the secular equation; the hard case (gradient orthogonal to the lowest
eigenspace) is handled explicitly.  Generator counts here never exceed a
handful, so the dense eigensolve is free.
"""

from __future__ import annotations

import numpy as np

from .errors import NumericalError

_EDGE = 1e-12


def solve_trust_region_subproblem(gradient, hessian, radius):
    """Return (step, predicted_decrease) for the constrained quadratic model."""
    g = np.asarray(gradient, dtype=float)
    h = np.asarray(hessian, dtype=float)
    if not (np.isfinite(g).all() and np.isfinite(h).all() and np.isfinite(radius)):
        raise NumericalError("non-finite trust-region inputs")
    if radius <= 0:
        raise NumericalError(f"radius must be positive, got {radius}")
    if g.size == 0:
        return g.copy(), 0.0

    h = 0.5 * (h + h.T)
    eigvals, eigvecs = np.linalg.eigh(h)
    g_rot = eigvecs.T @ g
    lam_min = eigvals[0]

    def step_for(lam):
        denom = eigvals + lam
        return -g_rot / denom

    # interior Newton step when H is positive definite and the step fits
    if lam_min > _EDGE:
        s_rot = step_for(0.0)
        if np.linalg.norm(s_rot) <= radius * (1 + 1e-12):
            step = eigvecs @ s_rot
            return step, _decrease(g, h, step)

    # boundary solution: find lam >= max(0, -lam_min) with ||s(lam)|| = radius
    lam_low = max(0.0, -lam_min)
    on_min_space = np.abs(eigvals - lam_min) < 1e-12 * max(1.0, abs(lam_min))
    g_min_component = np.linalg.norm(g_rot[on_min_space])

    if g_min_component <= _EDGE * max(1.0, np.linalg.norm(g)):
        # possible hard case: the unconstrained limit lam -> -lam_min
        denom = eigvals + lam_low
        keep = ~on_min_space
        s_rot = np.zeros_like(g_rot)
        s_rot[keep] = -g_rot[keep] / denom[keep]
        norm_perp = np.linalg.norm(s_rot)
        if norm_perp <= radius and lam_low > 0.0:
            # pad with the lowest eigendirection to reach the boundary
            pad = np.sqrt(max(radius ** 2 - norm_perp ** 2, 0.0))
            direction = np.zeros_like(g_rot)
            direction[np.argmax(on_min_space)] = 1.0
            s_rot = s_rot + pad * direction
            step = eigvecs @ s_rot
            return step, _decrease(g, h, step)
        if norm_perp <= radius and lam_low == 0.0:
            step = eigvecs @ s_rot
            return step, _decrease(g, h, step)

    # secular equation phi(lam) = 1/||s(lam)|| - 1/radius, monotone increasing
    lo = lam_low
    lam = lo + max(1e-8, 1e-3 * max(1.0, abs(lam_min)))
    while np.linalg.norm(step_for(lam)) > radius:
        lam = lo + 2.0 * (lam - lo)
        if lam > 1e18:
            raise NumericalError("trust-region multiplier search diverged")
    hi = lam
    for _ in range(200):
        s_rot = step_for(lam)
        norm = np.linalg.norm(s_rot)
        phi = 1.0 / norm - 1.0 / radius
        if abs(phi) <= 1e-13 / radius:
            break
        if phi > 0:      # step too short: multiplier too large
            hi = lam
        else:            # step too long: multiplier too small
            lo = lam
        cubic = (g_rot ** 2 / (eigvals + lam) ** 3).sum()
        newton = lam - phi * norm ** 3 / cubic if cubic > 0 else None
        lam = newton if newton is not None and lo < newton < hi else 0.5 * (lo + hi)
        if hi - lo <= 1e-18 * max(1.0, hi):
            break
    step = eigvecs @ step_for(lam)
    return step, _decrease(g, h, step)


def _decrease(g, h, step):
    predicted = -(g @ step + 0.5 * step @ h @ step)
    if predicted < -1e-10 * max(1.0, np.abs(g).max(initial=0.0)):
        raise NumericalError(f"negative predicted decrease {predicted}")
    return max(predicted, 0.0)
