"""Third-order normal form at a mode-(n1, n2) Turing-Turing point.

Coefficient names follow the monomial exponents (z1, z2, mu1, mu2): the key
"1010" multiplies z1*mu1, "2100" multiplies z1^2 z2, and so on. Each entry is
a length-2 array holding the coefficient in the z1 and z2 equations.

The reduced vector field is

    z' = B_quad(z, mu) + B_cubic(z)

with mu1 = du - du*, mu2 = alpha - alpha*.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import NotSingular, ResonantModes, SingularSystem
from .model import LinearizationData, ModelParams, TaylorCoeffs, det_tr
from .modes import ModeIntegrals, mode_integrals

CUBIC_KEYS = ("3000", "2100", "1200", "0300")
QUAD_KEYS = ("2000", "1100", "1010", "1001", "0200", "0110", "0101")
H_KEYS = ("20", "11", "02")


@dataclass(frozen=True)
class Convention:
    """Switches between the reduction exactly as tabulated and completed variants.

    complete_mixed_taxis
        Keep the cross-gradient taxis contributions of the n1+-n2 harmonics,
        both in the second-order manifold and in the cubic projection. Off
        reproduces the reference tables.
    alpha_rate_includes_ustar
        Scale the mu2 (taxis) linear coefficients by u*, the factor carried by
        the taxis entry of the diffusion matrix. Off reproduces the reference
        tables.
    """

    complete_mixed_taxis: bool = False
    alpha_rate_includes_ustar: bool = False


TABULATED = Convention()


@dataclass(frozen=True)
class ModeEigenpair:
    n: int
    phi: np.ndarray
    psi: np.ndarray

    def mode_matrix(self, lin: LinearizationData, p: ModelParams) -> np.ndarray:
        return mode_matrix(lin, p, self.n)


def mode_matrix(lin: LinearizationData, p: ModelParams, n: int) -> np.ndarray:
    """(n^2/ell^2) D0 - A1, the operator whose null vectors span the critical modes."""
    return (n ** 2 / p.ell ** 2) * lin.D0 - lin.A1


def eigenpair(lin: LinearizationData, p: ModelParams, n: int,
              singular_tol: float = 1e-6) -> ModeEigenpair:
    """Right and left null vectors of the mode-n matrix, with psi.phi = 1.

    phi comes from the predator row and psi from the first column. Neither
    pivot can vanish (g_u > 0 and dv k - g_v > 0), and the predator row does
    not involve du or alpha.
    """
    det, _ = det_tr(lin, p, n)
    if abs(det) > singular_tol:
        raise NotSingular(f"|det_{n}| = {abs(det):.3e} exceeds {singular_tol:g}")
    M = mode_matrix(lin, p, n)
    phi = np.array([1.0, -M[1, 0] / M[1, 1]])
    psi = np.array([1.0, -M[0, 0] / M[1, 0]])
    psi = psi / (psi @ phi)
    return ModeEigenpair(n, phi, psi)


def eigenpairs(lin, p, n1, n2, singular_tol: float = 1e-6):
    return eigenpair(lin, p, n1, singular_tol), eigenpair(lin, p, n2, singular_tol)


def printed_eigenvectors(lin: LinearizationData, p: ModelParams, n: int):
    """Closed-form phi, psi written in the Jacobian symbols (cross-check only)."""
    k = n ** 2 / p.ell ** 2
    fu, gu, gv = lin.f_u, lin.g_u, lin.g_v
    X, Y = p.du * k - fu, p.dv * k - gv
    phi = np.array([1.0, gu / Y])
    psi = np.array([1 - gu * X / (gu * Y + gu * X), X / (gu + X * gu / Y)])
    return phi, psi


# symmetric multilinear forms built from the Taylor coefficients

def quad_form(t: TaylorCoeffs, p_, q_):
    f20, f11, f02 = t.second()
    return f20 * p_[0] * q_[0] + f11 * (p_[0] * q_[1] + p_[1] * q_[0]) + f02 * p_[1] * q_[1]


def cubic_form(t: TaylorCoeffs, p_, q_, r_):
    f30, f21, f12, f03 = t.third()
    return (f30 * p_[0] * q_[0] * r_[0]
            + f21 * (p_[0] * q_[0] * r_[1] + p_[0] * q_[1] * r_[0] + p_[1] * q_[0] * r_[0])
            + f12 * (p_[0] * q_[1] * r_[1] + p_[1] * q_[0] * r_[1] + p_[1] * q_[1] * r_[0])
            + f03 * p_[1] * q_[1] * r_[1])


def S2(t: TaylorCoeffs, p_, y):
    """Derivative of the quadratic reaction part along y at p_."""
    return 2 * quad_form(t, p_, y)


def Sd1(alpha, p_, y):
    return -alpha * np.array([p_[1] * y[0], 0.0])


def Sd2(alpha, p_, y):
    return -alpha * np.array([p_[0] * y[1] + p_[1] * y[0], 0.0])


def Sd3(alpha, p_, y):
    return -alpha * np.array([p_[0] * y[1], 0.0])


@dataclass(frozen=True)
class QuadraticModeData:
    A20: np.ndarray
    A11: np.ndarray
    A02: np.ndarray
    A30: np.ndarray
    A21: np.ndarray
    A12: np.ndarray
    A03: np.ndarray
    Ad_20: np.ndarray
    Ad_11_1: np.ndarray
    Ad_11_2: np.ndarray
    Ad_02: np.ndarray
    Ad_1010: np.ndarray
    Ad_0110: np.ndarray
    Ad_1001: np.ndarray
    Ad_0101: np.ndarray


def quadratic_mode_data(taylor: TaylorCoeffs, pairs) -> QuadraticModeData:
    e1, e2 = pairs
    p1, p2 = e1.phi, e2.phi
    first = lambda x: np.array([x, 0.0])
    return QuadraticModeData(
        A20=quad_form(taylor, p1, p1), A11=2 * quad_form(taylor, p1, p2),
        A02=quad_form(taylor, p2, p2),
        A30=cubic_form(taylor, p1, p1, p1), A21=3 * cubic_form(taylor, p1, p1, p2),
        A12=3 * cubic_form(taylor, p1, p2, p2), A03=cubic_form(taylor, p2, p2, p2),
        Ad_20=first(p1[0] * p1[1]), Ad_11_1=first(p1[0] * p2[1]), Ad_11_2=first(p2[0] * p1[1]),
        Ad_02=first(p2[0] * p2[1]), Ad_1010=first(p1[0]), Ad_0110=first(p2[0]),
        Ad_1001=first(p1[1]), Ad_0101=first(p2[1]),
    )


@dataclass(frozen=True)
class CenterManifoldH:
    """Second-order manifold coefficients h_{n, q1q2}; absent entries are zero."""

    values: dict = field(repr=False)
    modes: tuple[int, ...]

    def __call__(self, n: int, q: str) -> np.ndarray:
        return self.values.get((n, q), np.zeros(2))


def harmonic_set(n1: int, n2: int) -> tuple[int, ...]:
    return (0, 2 * n1, 2 * n2, n1 + n2, abs(n2 - n1))


def check_nonresonant(n1: int, n2: int):
    if n1 == 2 * n2 or n2 == 2 * n1 or n2 == 3 * n1 or n1 == 3 * n2:
        raise ResonantModes(f"modes ({n1}, {n2}) are resonant")


def _solve(M: np.ndarray, rhs: np.ndarray, n: int) -> np.ndarray:
    if np.linalg.cond(M) > 1e12:
        raise SingularSystem(f"mode-{n} manifold system is singular")
    return np.linalg.solve(M, rhs)


def manifold_rhs(p: ModelParams, qmd: QuadraticModeData, ints: ModeIntegrals, n: int,
                 conv: Convention = TABULATED) -> dict:
    """Projection onto gamma_n of the quadratic forcing, per monomial."""
    n1, n2, ell, al = ints.n1, ints.n2, p.ell, p.alpha
    k1, k2 = n1 ** 2 / ell ** 2, n2 ** 2 / ell ** 2
    b, bs = ints.b, ints.bs
    r20 = qmd.A20 * b(n1, n1, n) + al * k1 * qmd.Ad_20 * (bs(n1, n1, n) - b(n1, n1, n))
    r02 = qmd.A02 * b(n2, n2, n) + al * k2 * qmd.Ad_02 * (bs(n2, n2, n) - b(n2, n2, n))
    r11 = (qmd.A11 - al * (k2 * qmd.Ad_11_1 + k1 * qmd.Ad_11_2)) * b(n1, n2, n)
    if conv.complete_mixed_taxis:
        r11 = r11 + al * n1 * n2 / ell ** 2 * (qmd.Ad_11_1 + qmd.Ad_11_2) * bs(n1, n2, n)
    return {"20": r20, "11": r11, "02": r02}


def center_manifold_h(lin: LinearizationData, p: ModelParams, qmd: QuadraticModeData,
                      ints: ModeIntegrals, conv: Convention = TABULATED) -> CenterManifoldH:
    n1, n2 = ints.n1, ints.n2
    check_nonresonant(n1, n2)
    modes = tuple(sorted(set(harmonic_set(n1, n2))))
    values = {}
    for n in modes:
        M = mode_matrix(lin, p, n)
        rhs = manifold_rhs(p, qmd, ints, n, conv)
        for q in H_KEYS:
            if np.any(rhs[q] != 0):
                values[(n, q)] = _solve(M, rhs[q], n)
    return CenterManifoldH(values, modes)


def _add(q: str, shift: str) -> str:
    return "".join(str(int(a) + int(b)) for a, b in zip(q, shift))


@dataclass(frozen=True)
class NormalFormCoefficients:
    n1: int
    n2: int
    du_star: float
    alpha_star: float
    quad: dict
    C: dict
    D: dict
    E: dict
    F: dict
    G: dict
    cubic: dict
    convention: Convention = TABULATED
    pairs: tuple = field(default=(), repr=False)
    h: CenterManifoldH | None = field(default=None, repr=False)

    def B(self, key: str, comp: int) -> float:
        """Coefficient of monomial `key` in equation `comp` (1 or 2)."""
        table = self.quad if key in QUAD_KEYS else self.cubic
        return float(table[key][comp - 1])

    def vector_field(self, z, mu=(0.0, 0.0)) -> np.ndarray:
        z1, z2 = z
        m1, m2 = mu
        mono = {"2000": z1 * z1, "1100": z1 * z2, "1010": z1 * m1, "1001": z1 * m2,
                "0200": z2 * z2, "0110": z2 * m1, "0101": z2 * m2,
                "3000": z1 ** 3, "2100": z1 * z1 * z2, "1200": z1 * z2 * z2, "0300": z2 ** 3}
        out = np.zeros(2)
        for key, val in mono.items():
            table = self.quad if key in QUAD_KEYS else self.cubic
            out += table[key] * val
        return out

    def flat(self) -> dict:
        """All coefficients as name -> float."""
        d = {}
        for fam, table in (("B", self.quad), ("C", self.C), ("D", self.D), ("E", self.E),
                           ("F", self.F), ("G", self.G), ("B", self.cubic)):
            for key, val in table.items():
                for comp in (1, 2):
                    d[f"{fam}{key}_{comp}"] = float(val[comp - 1])
        return d


def normal_form(lin: LinearizationData, p: ModelParams, taylor: TaylorCoeffs, n1: int, n2: int,
                conv: Convention = TABULATED, singular_tol: float = 1e-6) -> NormalFormCoefficients:
    """Normal-form coefficients with (du*, alpha*) taken from p.du, p.alpha."""
    check_nonresonant(n1, n2)
    pairs = eigenpairs(lin, p, n1, n2, singular_tol)
    qmd = quadratic_mode_data(taylor, pairs)
    ints = mode_integrals(p.ell, n1, n2)
    h = center_manifold_h(lin, p, qmd, ints, conv)
    ell, al = p.ell, p.alpha
    ns = (n1, n2)
    ks = (n1 ** 2 / ell ** 2, n2 ** 2 / ell ** 2)
    phis = (pairs[0].phi, pairs[1].phi)
    psis = (pairs[0].psi, pairs[1].psi)
    b, bs = ints.b, ints.bs
    ustar = lin.u_star if conv.alpha_rate_includes_ustar else 1.0

    quad = {key: np.zeros(2) for key in QUAD_KEYS}
    for j, nu in enumerate(ns):
        psi = psis[j]
        proj = lambda vec: 0.5 * psi @ vec
        quad["2000"][j] = proj(al * ks[0] * qmd.Ad_20 * (bs(n1, n1, nu) - b(n1, n1, nu))
                               + qmd.A20 * b(n1, n1, nu))
        quad["0200"][j] = proj(al * ks[1] * qmd.Ad_02 * (bs(n2, n2, nu) - b(n2, n2, nu))
                               + qmd.A02 * b(n2, n2, nu))
        quad["1100"][j] = proj(al * n1 * n2 / ell ** 2 * (qmd.Ad_11_1 + qmd.Ad_11_2) * bs(n1, n2, nu)
                               - al * (ks[1] * qmd.Ad_11_1 + ks[0] * qmd.Ad_11_2) * b(n1, n2, nu)
                               + qmd.A11 * b(n1, n2, nu))
        g1nu = 1.0 if nu == n1 else 0.0
        g2nu = 1.0 if nu == n2 else 0.0
        quad["1010"][j] = proj(-ks[0] * qmd.Ad_1010 * g1nu)
        quad["1001"][j] = proj(-ustar * ks[0] * qmd.Ad_1001 * g1nu)
        quad["0110"][j] = proj(-ks[1] * qmd.Ad_0110 * g2nu)
        quad["0101"][j] = proj(-ustar * ks[1] * qmd.Ad_0101 * g2nu)

    A3 = {"3000": qmd.A30, "2100": qmd.A21, "1200": qmd.A12, "0300": qmd.A03}
    C = {key: np.zeros(2) for key in CUBIC_KEYS}
    E = {key: np.zeros(2) for key in CUBIC_KEYS}
    F = {key: np.zeros(2) for key in CUBIC_KEYS}
    zeros = {key: np.zeros(2) for key in CUBIC_KEYS}
    for j, nu in enumerate(ns):
        psi = psis[j]
        for key, A in A3.items():
            q1, q2 = int(key[0]), int(key[1])
            C[key][j] = psi @ A * _gamma_power_integral(ell, n1, q1, n2, q2, nu) / 6
        for i, (ni, phi, shift) in enumerate(zip(ns, phis, ("10", "01"))):
            for n in h.modes:
                bn = b(ni, n, nu)
                kn = n ** 2 / ell ** 2
                # the tabulated projection keeps sine-sine overlaps only for
                # the self-harmonics n = ni and n = 2 ni
                if conv.complete_mixed_taxis or n in (ni, 2 * ni):
                    bsn = bs(ni, n, nu)
                else:
                    bsn = 0.0
                for q in H_KEYS:
                    hv = h(n, q)
                    if not np.any(hv):
                        continue
                    key = _add(q, shift) + "00"
                    E[key][j] += bn * (psi @ S2(taylor, phi, hv)) / 6
                    F[key][j] += (ks[i] * bn * (psi @ Sd1(al, phi, hv))
                                  - (ni / ell) * (n / ell) * bsn * (psi @ Sd2(al, phi, hv))
                                  + kn * bn * (psi @ Sd3(al, phi, hv))) / 6
    # the first-order transformation vanishes identically, so D = G = 0
    D = {key: zeros[key].copy() for key in CUBIC_KEYS}
    G = {key: zeros[key].copy() for key in CUBIC_KEYS}
    cubic = {key: C[key] + 1.5 * (D[key] + E[key] + F[key] + G[key]) for key in CUBIC_KEYS}
    return NormalFormCoefficients(n1, n2, p.du, p.alpha, quad, C, D, E, F, G, cubic,
                                  conv, pairs, h)


def _gamma_power_integral(ell, n1, q1, n2, q2, nu) -> float:
    from .modes import int_cos
    return int_cos((n1,) * q1 + (n2,) * q2 + (nu,), ell)


# the fourteen coefficients that vanish for non-resonant pairs
STRUCTURAL_ZEROS = (("2000", 1), ("1100", 1), ("0200", 1), ("0110", 1), ("0101", 1),
                    ("2000", 2), ("1100", 2), ("1010", 2), ("1001", 2), ("0200", 2),
                    ("2100", 1), ("0300", 1), ("3000", 2), ("1200", 2))
