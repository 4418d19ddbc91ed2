"""McMurchie-Davidson one- and two-electron integrals over contracted Gaussians.

Everything is vectorized over primitive pairs (and pair-products for the
electron repulsion tensor); angular momenta up to p keep every Hermite table
tiny.  Two-electron integrals come out in chemist notation (ab|cd).
"""

from __future__ import annotations

import numpy as np
from scipy.special import gamma, gammainc

from .basis import ContractedGaussian


def boys(n_max: int, t: np.ndarray) -> np.ndarray:
    """Boys functions F_0..F_n_max evaluated at each t; shape (n_max+1, len(t))."""
    t = np.asarray(t, dtype=float)
    out = np.empty((n_max + 1, t.size))
    tiny = t < 1e-13
    safe = np.where(tiny, 1.0, t)
    for n in range(n_max + 1):
        a = n + 0.5
        vals = gammainc(a, safe) * gamma(a) / (2.0 * safe ** a)
        out[n] = np.where(tiny, 1.0 / (2 * n + 1), vals)
    return out


def _hermite_coefficients(la: int, lb: int, a, b, ab_dist):
    """E[i, j, t] tables, vectorized over primitive pairs.

    a, b, ab_dist are broadcast-compatible arrays (flattened primitive pairs);
    returns array of shape (la+1, lb+1, la+lb+1, n_pairs).
    """
    p = a + b
    mu = a * b / p
    pa = -b * ab_dist / p   # P_x - A_x
    pb = a * ab_dist / p    # P_x - B_x
    n = np.broadcast(a, b, ab_dist).size
    E = np.zeros((la + 1, lb + 1, la + lb + 1, n))
    E[0, 0, 0] = np.broadcast_to(np.exp(-mu * ab_dist ** 2), (n,))
    for i in range(la):
        for t in range(i + 2):
            term = np.zeros(n)
            if t - 1 >= 0:
                term += E[i, 0, t - 1] / (2.0 * p)
            if t <= i:
                term += pa * E[i, 0, t]
            if t + 1 <= i:
                term += (t + 1) * E[i, 0, t + 1]
            E[i + 1, 0, t] = term
    for i in range(la + 1):
        for j in range(lb):
            for t in range(i + j + 2):
                term = np.zeros(n)
                if t - 1 >= 0:
                    term += E[i, j, t - 1] / (2.0 * p)
                if t <= i + j:
                    term += pb * E[i, j, t]
                if t + 1 <= i + j:
                    term += (t + 1) * E[i, j, t + 1]
                E[i, j + 1, t] = term
    return E


class _PairData:
    """Precomputed primitive-pair quantities for one ordered function pair."""

    __slots__ = ("coef", "p", "centers", "E", "la", "lb")

    def __init__(self, fa: ContractedGaussian, fb: ContractedGaussian):
        na, nb = len(fa.exponents), len(fb.exponents)
        a = np.repeat(fa.exponents, nb)
        b = np.tile(fb.exponents, na)
        self.coef = np.repeat(fa.coefficients, nb) * np.tile(fb.coefficients, na)
        self.p = a + b
        self.centers = ((a[:, None] * fa.center + b[:, None] * fb.center)
                        / self.p[:, None])
        self.la = fa.powers
        self.lb = fb.powers
        self.E = [
            _hermite_coefficients(fa.powers[ax], fb.powers[ax], a, b,
                                  fa.center[ax] - fb.center[ax])
            for ax in range(3)
        ]


def _pair(fa, fb, cache):
    key = (id(fa), id(fb))
    if key not in cache:
        cache[key] = _PairData(fa, fb)
    return cache[key]


def overlap_matrix(basis: list[ContractedGaussian]) -> np.ndarray:
    n = len(basis)
    S = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1):
            S[i, j] = S[j, i] = _overlap_element(basis[i], basis[j])
    return S


def _overlap_element(fa, fb) -> float:
    pair = _PairData(fa, fb)
    val = pair.coef * (np.pi / pair.p) ** 1.5
    for ax in range(3):
        val = val * pair.E[ax][fa.powers[ax], fb.powers[ax], 0]
    return float(val.sum())


def kinetic_matrix(basis: list[ContractedGaussian]) -> np.ndarray:
    n = len(basis)
    T = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1):
            T[i, j] = T[j, i] = _kinetic_element(basis[i], basis[j])
    return T


def _kinetic_element(fa, fb) -> float:
    """-1/2 <a|del^2|b> via second derivatives of the 1D overlap factors."""
    na, nb = len(fa.exponents), len(fb.exponents)
    a = np.repeat(fa.exponents, nb)
    b = np.tile(fb.exponents, na)
    coef = np.repeat(fa.coefficients, nb) * np.tile(fb.coefficients, na)
    p = a + b

    def s1d(ax, extra_b):
        lb = fb.powers[ax] + extra_b
        if lb < 0:
            return np.zeros_like(p)
        la = fa.powers[ax]
        E = _hermite_coefficients(la, lb, a, b, fa.center[ax] - fb.center[ax])
        return E[la, lb, 0] * np.sqrt(np.pi / p)

    total = np.zeros_like(p)
    for ax in range(3):
        j = fb.powers[ax]
        term = -2.0 * b ** 2 * s1d(ax, +2)
        term += b * (2 * j + 1) * s1d(ax, 0)
        if j >= 2:
            term += -0.5 * j * (j - 1) * s1d(ax, -2)
        others = np.ones_like(p)
        for other in range(3):
            if other != ax:
                others = others * s1d(other, 0)
        total += term * others
    return float((coef * total).sum())


def _hermite_coulomb(l_total: int, p, pc):
    """R[t, u, v] Hermite Coulomb tables for all t+u+v <= l_total.

    p: (n,) exponents; pc: (n, 3) composite-center-to-charge vectors.
    Returns dict {(t, u, v): (n,) array}.
    """
    t_arg = p * (pc ** 2).sum(axis=1)
    F = boys(l_total, t_arg)
    base = {}
    factor = np.ones_like(p)
    for n in range(l_total + 1):
        base[n] = factor * F[n]
        factor = factor * (-2.0 * p)

    cache = {}

    def R(n, t, u, v):
        key = (n, t, u, v)
        if key in cache:
            return cache[key]
        if t == u == v == 0:
            val = base[n]
        elif t > 0:
            val = pc[:, 0] * R(n + 1, t - 1, u, v)
            if t > 1:
                val = val + (t - 1) * R(n + 1, t - 2, u, v)
        elif u > 0:
            val = pc[:, 1] * R(n + 1, t, u - 1, v)
            if u > 1:
                val = val + (u - 1) * R(n + 1, t, u - 2, v)
        else:
            val = pc[:, 2] * R(n + 1, t, u, v - 1)
            if v > 1:
                val = val + (v - 1) * R(n + 1, t, u, v - 2)
        cache[key] = val
        return val

    out = {}
    for t in range(l_total + 1):
        for u in range(l_total + 1 - t):
            for v in range(l_total + 1 - t - u):
                out[(t, u, v)] = R(0, t, u, v)
    return out


def nuclear_attraction_matrix(basis, charges) -> np.ndarray:
    """V_ij = -sum_C Z_C <i| 1/|r - R_C| |j>; charges = [(Z, xyz_bohr), ...]."""
    n = len(basis)
    V = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1):
            V[i, j] = V[j, i] = _nuclear_element(basis[i], basis[j], charges)
    return V


def _nuclear_element(fa, fb, charges) -> float:
    pair = _PairData(fa, fb)
    la, lb = fa.powers, fb.powers
    l_total = sum(la) + sum(lb)
    total = 0.0
    for z, center in charges:
        pc = pair.centers - np.asarray(center)
        R = _hermite_coulomb(l_total, pair.p, pc)
        acc = np.zeros_like(pair.p)
        for t in range(la[0] + lb[0] + 1):
            for u in range(la[1] + lb[1] + 1):
                for v in range(la[2] + lb[2] + 1):
                    e_prod = (pair.E[0][la[0], lb[0], t]
                              * pair.E[1][la[1], lb[1], u]
                              * pair.E[2][la[2], lb[2], v])
                    acc += e_prod * R[(t, u, v)]
        total += -z * float((pair.coef * 2.0 * np.pi / pair.p * acc).sum())
    return total


def _eri_element(bra: _PairData, ket: _PairData) -> float:
    """(ab|cd) for one bra pair and one ket pair, primitives vectorized."""
    nb, nk = len(bra.p), len(ket.p)
    p = np.repeat(bra.p, nk)
    q = np.tile(ket.p, nb)
    alpha = p * q / (p + q)
    pq = np.repeat(bra.centers, nk, axis=0) - np.tile(ket.centers, (nb, 1))
    l_bra = sum(bra.la) + sum(bra.lb)
    l_ket = sum(ket.la) + sum(ket.lb)
    R = _hermite_coulomb(l_bra + l_ket, alpha, pq)

    acc = np.zeros(nb * nk)
    for t in range(bra.la[0] + bra.lb[0] + 1):
        for u in range(bra.la[1] + bra.lb[1] + 1):
            for v in range(bra.la[2] + bra.lb[2] + 1):
                e_bra = (bra.E[0][bra.la[0], bra.lb[0], t]
                         * bra.E[1][bra.la[1], bra.lb[1], u]
                         * bra.E[2][bra.la[2], bra.lb[2], v])
                e_bra = np.repeat(e_bra, nk)
                for tt in range(ket.la[0] + ket.lb[0] + 1):
                    for uu in range(ket.la[1] + ket.lb[1] + 1):
                        for vv in range(ket.la[2] + ket.lb[2] + 1):
                            e_ket = (ket.E[0][ket.la[0], ket.lb[0], tt]
                                     * ket.E[1][ket.la[1], ket.lb[1], uu]
                                     * ket.E[2][ket.la[2], ket.lb[2], vv])
                            sign = -1.0 if (tt + uu + vv) % 2 else 1.0
                            acc += (sign * e_bra * np.tile(e_ket, nb)
                                    * R[(t + tt, u + uu, v + vv)])
    coef = np.repeat(bra.coef, nk) * np.tile(ket.coef, nb)
    pref = 2.0 * np.pi ** 2.5 / (p * q * np.sqrt(p + q))
    return float((coef * pref * acc).sum())


def eri_tensor(basis: list[ContractedGaussian]) -> np.ndarray:
    """Full chemist-notation (ab|cd) tensor with 8-fold symmetry filled in."""
    n = len(basis)
    eri = np.zeros((n, n, n, n))
    pair_cache: dict = {}
    for i in range(n):
        for j in range(i + 1):
            bra = _pair(basis[i], basis[j], pair_cache)
            ij = i * (i + 1) // 2 + j
            for k in range(i + 1):
                for l in range(k + 1):
                    if k * (k + 1) // 2 + l > ij:
                        continue
                    ket = _pair(basis[k], basis[l], pair_cache)
                    val = _eri_element(bra, ket)
                    for a, b in ((i, j), (j, i)):
                        for c, d in ((k, l), (l, k)):
                            eri[a, b, c, d] = val
                            eri[c, d, a, b] = val
    return eri
