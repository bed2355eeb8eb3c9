"""Rescaled planar amplitude system, its equilibria and the region partition.

With kappa11 = B3000_1, kappa12 = B1200_1, kappa21 = B2100_2, kappa22 = B0300_2
and alpha_i(mu) the linear unfolding terms, the rescaled system reads

    z1' = z1 (eps alpha1 + z1^2 + b z2^2)
    z2' = z2 (eps alpha2 + c z1^2 + d z2^2)
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp

from .errors import DegenerateCubic, HardCase, OnBoundary
from .normal_form import NormalFormCoefficients

BOUNDARY_TOL = 1e-12
DEGENERATE_TOL = 1e-12

# equilibrium families present in each region
REGION_INVENTORY = {
    "R1": frozenset({"E0"}),
    "R2": frozenset({"E0", "E2"}),
    "R3": frozenset({"E0", "E1", "E2"}),
    "R4": frozenset({"E0", "E1", "E2", "E3"}),
    "R5": frozenset({"E0", "E1", "E3"}),
    "R6": frozenset({"E0", "E1"}),
}
_REGION_OF = {v: k for k, v in REGION_INVENTORY.items()}


@dataclass(frozen=True)
class CriticalLine:
    """Zero set of coef . mu, restricted to side*mu1 > 0 when side != 0."""

    name: str
    coef: tuple[float, float]
    side: int = 0

    @property
    def slope(self) -> float:
        return -self.coef[0] / self.coef[1]

    def distance(self, mu) -> float:
        a = np.asarray(self.coef)
        mu = np.asarray(mu, dtype=float)
        d = abs(a @ mu) / np.hypot(*a)
        if self.side and self.side * mu[0] < 0:
            # distance to the half-line is then the distance to its origin
            return max(d, float(np.hypot(*mu)))
        return d


@dataclass(frozen=True)
class PlanarUnfolding:
    kappa11: float
    kappa12: float
    kappa21: float
    kappa22: float
    alpha1_mu: np.ndarray  # row vector: alpha1 = alpha1_mu @ mu
    alpha2_mu: np.ndarray
    eps_tilde: int
    b_tilde: float
    c_tilde: float
    d_tilde: int

    @property
    def det(self) -> float:
        """d - b c, the denominator of the interior equilibria."""
        return self.d_tilde - self.b_tilde * self.c_tilde

    def alphas(self, mu) -> tuple[float, float]:
        mu = np.asarray(mu, dtype=float)
        return float(self.alpha1_mu @ mu), float(self.alpha2_mu @ mu)

    def radicand_rows(self) -> np.ndarray:
        """Rows giving -eps alpha1, -eps alpha2/d and the two interior radicand
        numerators (before division by d - bc) as linear forms in mu."""
        e, b, c, d = self.eps_tilde, self.b_tilde, self.c_tilde, self.d_tilde
        ea1, ea2 = e * self.alpha1_mu, e * self.alpha2_mu
        return np.array([-ea1, -ea2 / d, b * ea2 - d * ea1, c * ea1 - ea2])

    def critical_lines(self) -> tuple[CriticalLine, ...]:
        rows = self.radicand_rows()
        s = np.sign(self.det)
        lines = [CriticalLine("CL1", tuple(self.alpha1_mu)), CriticalLine("CL2", tuple(self.alpha2_mu))]
        # each interior boundary only matters where the other radicand is positive
        for name, own, other in (("CL3", rows[2], rows[3]), ("CL4", rows[3], rows[2])):
            t = np.array([-own[1], own[0]])  # direction along the line
            val = s * other @ t
            side = int(np.sign(t[0] * np.sign(val))) if val != 0 else 0
            lines.append(CriticalLine(name, tuple(own), side))
        return tuple(lines)

    def vector_field(self, z, mu) -> np.ndarray:
        a1, a2 = self.alphas(mu)
        e = self.eps_tilde
        z1, z2 = z
        return np.array([z1 * (e * a1 + z1 * z1 + self.b_tilde * z2 * z2),
                         z2 * (e * a2 + self.c_tilde * z1 * z1 + self.d_tilde * z2 * z2)])


    def jacobian(self, z, mu, physical_time: bool = True) -> np.ndarray:
        a1, a2 = self.alphas(mu)
        e, b, c, d = self.eps_tilde, self.b_tilde, self.c_tilde, self.d_tilde
        z1, z2 = z
        J = np.array([[e * a1 + 3 * z1 * z1 + b * z2 * z2, 2 * b * z1 * z2],
                      [2 * c * z1 * z2, e * a2 + c * z1 * z1 + 3 * d * z2 * z2]])
        return e * J if physical_time else J

    def is_stable(self, z, mu) -> bool:
        """Linear stability in the original time direction."""
        return bool(np.all(np.linalg.eigvals(self.jacobian(z, mu)).real < 0))


def planar_unfolding(nf: NormalFormCoefficients) -> PlanarUnfolding:
    k11, k12 = nf.B("3000", 1), nf.B("1200", 1)
    k21, k22 = nf.B("2100", 2), nf.B("0300", 2)
    if abs(k11) < DEGENERATE_TOL or abs(k22) < DEGENERATE_TOL:
        raise DegenerateCubic(f"kappa11 = {k11:g}, kappa22 = {k22:g}")
    if k11 * k22 < 0:
        raise HardCase(f"kappa11*kappa22 = {k11 * k22:.6g} < 0; higher-order terms needed")
    e = int(np.sign(k11))
    a1 = np.array([nf.B("1010", 1), nf.B("1001", 1)])
    a2 = np.array([nf.B("0110", 2), nf.B("0101", 2)])
    a1.setflags(write=False)
    a2.setflags(write=False)
    return PlanarUnfolding(k11, k12, k21, k22, a1, a2, e,
                           e * k12 / abs(k22), e * k21 / abs(k11), e * int(np.sign(k22)))


@dataclass(frozen=True)
class Equilibrium:
    family: str  # E0, E1, E2, E3
    signs: tuple[int, ...]
    z: tuple[float, float]  # rescaled coordinates
    r: tuple[float, float]  # amplitudes in the unscaled normal form


@dataclass(frozen=True)
class PlanarEquilibria:
    mu: tuple[float, float]
    points: tuple[Equilibrium, ...]

    @property
    def families(self) -> frozenset[str]:
        return frozenset(e.family for e in self.points)


def planar_equilibria(unf: PlanarUnfolding, mu) -> PlanarEquilibria:
    rows = unf.radicand_rows()
    mu = np.asarray(mu, dtype=float)
    w1, w2, n3, n4 = rows @ mu
    k1, k2 = abs(unf.kappa11), abs(unf.kappa22)
    pts = [Equilibrium("E0", (), (0.0, 0.0), (0.0, 0.0))]
    if w1 > 0:
        s = math.sqrt(w1)
        for sg in (1, -1):
            pts.append(Equilibrium("E1", (sg,), (sg * s, 0.0), (sg * math.sqrt(w1 / k1), 0.0)))
    if w2 > 0:
        s = math.sqrt(w2)
        for sg in (1, -1):
            pts.append(Equilibrium("E2", (sg,), (0.0, sg * s), (0.0, sg * math.sqrt(w2 / k2))))
    x3, x4 = n3 / unf.det, n4 / unf.det
    if x3 > 0 and x4 > 0:
        s3, s4 = math.sqrt(x3), math.sqrt(x4)
        for sg1 in (1, -1):
            for sg2 in (1, -1):
                pts.append(Equilibrium("E3", (sg1, sg2), (sg1 * s3, sg2 * s4),
                                       (sg1 * math.sqrt(x3 / k1), sg2 * math.sqrt(x4 / k2))))
    return PlanarEquilibria((float(mu[0]), float(mu[1])), tuple(pts))


def critical_lines_and_region(unf: PlanarUnfolding, mu) -> tuple[tuple[CriticalLine, ...], str]:
    lines = unf.critical_lines()
    for line in lines:
        if line.distance(mu) < BOUNDARY_TOL:
            raise OnBoundary(f"mu = {tuple(mu)} lies on {line.name}")
    fam = planar_equilibria(unf, mu).families
    region = _REGION_OF.get(fam)
    if region is None:
        raise OnBoundary(f"equilibrium set {sorted(fam)} matches no region")
    return lines, region


@dataclass(frozen=True)
class PlanarTrajectory:
    t: np.ndarray
    z: np.ndarray  # shape (2, len(t))
    converged: bool
    limit: Equilibrium | None


def planar_flow(unf: PlanarUnfolding, mu, z0, t_end: float = 1e5,
                rtol: float = 1e-10, atol: float = 1e-13) -> PlanarTrajectory:
    """Integrate the rescaled planar system forward in the original time.

    The rescaled time runs as t/eps, so the field is multiplied by eps here.
    """
    e = unf.eps_tilde
    sol = solve_ivp(lambda t, z: e * unf.vector_field(z, mu), (0.0, t_end), np.asarray(z0, float),
                    method="LSODA", rtol=rtol, atol=atol, dense_output=False)
    zf = sol.y[:, -1]
    converged = bool(sol.success and np.linalg.norm(unf.vector_field(zf, mu)) < 1e-10
                     and np.all(np.isfinite(zf)))
    limit = None
    if converged:
        eq = planar_equilibria(unf, mu).points
        limit = min(eq, key=lambda e: np.hypot(zf[0] - e.z[0], zf[1] - e.z[1]))
    return PlanarTrajectory(sol.t, sol.y, converged, limit)
