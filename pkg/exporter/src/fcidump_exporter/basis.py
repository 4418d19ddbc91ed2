"""Gaussian basis-set data and contracted-function construction.

Carries the published sto-3g shells for H, Li, Be, N, O, F, S and the 6-31g
hydrogen shells: every case needed here uses s and p functions only.
Contraction coefficients refer to unit-normalized primitives; contracted
functions are renormalized once assembled.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# STO-3G shell contraction coefficients are shared across elements.
_STO3G_1S = (0.1543289673, 0.5353281423, 0.4446345422)
_STO3G_2S = (-0.09996722919, 0.3995128261, 0.7001154689)
_STO3G_2P = (0.1559162750, 0.6076837186, 0.3919573931)
_STO3G_3S = (-0.2196203690, 0.2255954336, 0.9003984260)
_STO3G_3P = (0.01058760429, 0.5951670053, 0.4620010120)

# (kind, exponents, s-coeffs, p-coeffs or None); kind "s" or "sp"
_STO3G_SHELLS = {
    "H": [
        ("s", (3.425250914, 0.6239137298, 0.1688554040), _STO3G_1S, None),
    ],
    "Li": [
        ("s", (16.11957475, 2.936200663, 0.7946504870), _STO3G_1S, None),
        ("sp", (0.6362897469, 0.1478600533, 0.0480886784), _STO3G_2S, _STO3G_2P),
    ],
    "Be": [
        ("s", (30.16787069, 5.495115306, 1.487192653), _STO3G_1S, None),
        ("sp", (1.314833110, 0.3055389383, 0.0993707456), _STO3G_2S, _STO3G_2P),
    ],
    "N": [
        ("s", (99.10616896, 18.05231239, 4.885660238), _STO3G_1S, None),
        ("sp", (3.780455879, 0.8784966449, 0.2857143744), _STO3G_2S, _STO3G_2P),
    ],
    "O": [
        ("s", (130.7093214, 23.80886605, 6.443608313), _STO3G_1S, None),
        ("sp", (5.033151319, 1.169596125, 0.3803889600), _STO3G_2S, _STO3G_2P),
    ],
    "F": [
        ("s", (166.6791340, 30.36081233, 8.216820672), _STO3G_1S, None),
        ("sp", (6.464803249, 1.502281245, 0.4885884864), _STO3G_2S, _STO3G_2P),
    ],
    "S": [
        ("s", (533.1257359, 97.10951830, 26.28162542), _STO3G_1S, None),
        ("sp", (33.32975173, 7.745117521, 2.518952599), _STO3G_2S, _STO3G_2P),
        ("sp", (2.029194274, 0.5661400518, 0.2215833792), _STO3G_3S, _STO3G_3P),
    ],
}

_631G_SHELLS = {
    "H": [
        ("s", (18.73113696, 2.825394365, 0.6401216923),
         (0.03349460434, 0.2347269535, 0.8137573261), None),
        ("s", (0.1612777588,), (1.0,), None),
    ],
}

ATOMIC_NUMBERS = {"H": 1, "Li": 3, "Be": 4, "N": 7, "O": 8, "F": 9, "S": 16}


@dataclass(frozen=True)
class ContractedGaussian:
    """One real Cartesian contracted Gaussian basis function."""

    center: np.ndarray          # (3,) in Bohr
    powers: tuple[int, int, int]
    exponents: np.ndarray
    coefficients: np.ndarray    # includes primitive norms and renormalization

    @property
    def angular_momentum(self) -> int:
        return sum(self.powers)


def primitive_norm(alpha: float, powers) -> float:
    l, m, n = powers
    total = l + m + n
    double_fact = 1.0
    for k in (l, m, n):
        for odd in range(2 * k - 1, 0, -2):
            double_fact *= odd
    return ((2.0 * alpha / np.pi) ** 0.75
            * (4.0 * alpha) ** (total / 2.0)
            / np.sqrt(double_fact))


def _self_overlap(powers, exponents, coefficients) -> float:
    l, m, n = powers
    double_fact = 1.0
    for k in (l, m, n):
        for odd in range(2 * k - 1, 0, -2):
            double_fact *= odd
    total = l + m + n
    s = 0.0
    for ai, ci in zip(exponents, coefficients):
        for aj, cj in zip(exponents, coefficients):
            p = ai + aj
            s += ci * cj * double_fact * (np.pi / p) ** 1.5 / (2.0 * p) ** total
    return s


def _make_function(center, powers, exponents, raw_coeffs) -> ContractedGaussian:
    exps = np.asarray(exponents, dtype=float)
    coeffs = np.array([c * primitive_norm(a, powers)
                       for c, a in zip(raw_coeffs, exps)])
    coeffs /= np.sqrt(_self_overlap(powers, exps, coeffs))
    return ContractedGaussian(center=np.asarray(center, dtype=float),
                              powers=tuple(powers), exponents=exps,
                              coefficients=coeffs)


def build_basis(atoms, basis_name: str) -> list[ContractedGaussian]:
    """Basis functions for atoms = [(symbol, xyz_bohr), ...].

    Functions are ordered atom by atom, shell by shell, with p shells
    expanded as x, y, z.
    """
    tables = {"sto-3g": _STO3G_SHELLS, "6-31g": _631G_SHELLS}
    key = basis_name.lower()
    if key not in tables:
        raise ValueError(f"unsupported basis {basis_name!r}")
    table = tables[key]
    functions: list[ContractedGaussian] = []
    for symbol, xyz in atoms:
        if symbol not in table:
            raise ValueError(f"no {basis_name} shells for element {symbol}")
        for kind, exps, s_coeffs, p_coeffs in table[symbol]:
            functions.append(_make_function(xyz, (0, 0, 0), exps, s_coeffs))
            if kind == "sp":
                for powers in ((1, 0, 0), (0, 1, 0), (0, 0, 1)):
                    functions.append(_make_function(xyz, powers, exps, p_coeffs))
    return functions
