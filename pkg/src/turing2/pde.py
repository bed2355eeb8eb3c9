"""Finite-difference simulation of the taxis model with no-flux boundaries.

Nodes x_j = j dx, j = 0..N, with ghost-node reflection at both ends. Diffusion
and the linear part of the taxis term are implicit; the reaction and the
remaining taxis flux are explicit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import solve_banded

from .errors import ConfigError, DenominatorBlowup, NonNegativityViolation, StepFailure
from .model import ModelParams, reaction, steady_state
from .modes import gamma

DENOM_TOL = 1e-12
NEG_TOL = -1e-10
DT_MIN = 1e-10


@dataclass(frozen=True)
class Grid:
    ell: float
    N: int

    def __post_init__(self):
        if self.N < 64:
            raise ConfigError(f"grid needs N >= 64 (got {self.N})")

    @property
    def L(self) -> float:
        return self.ell * math.pi

    @property
    def dx(self) -> float:
        return self.L / self.N

    @property
    def x(self) -> np.ndarray:
        return np.linspace(0.0, self.L, self.N + 1)

    @property
    def weights(self) -> np.ndarray:
        """Trapezoid quadrature weights on the nodes."""
        w = np.full(self.N + 1, self.dx)
        w[0] = w[-1] = 0.5 * self.dx
        return w


@dataclass(frozen=True)
class Perturbation:
    """amp * cos(mode * x / ell) added to one species."""

    species: str  # "u" or "v"
    mode: int
    amp: float


@dataclass(frozen=True)
class SimConfig:
    params: ModelParams
    N: int = 256
    t_end: float = 3000.0
    dt_max: float = 0.05
    safety: float = 1.0
    perturbations: tuple[Perturbation, ...] = ()
    base: tuple[float, float] | None = None  # default: the steady state
    snapshot_dt: float = 10.0
    modes: tuple[int, ...] = (3, 4)
    early_exit_tol: float = 1e-9
    abort_on_negative: bool = True

    @property
    def grid(self) -> Grid:
        return Grid(self.params.ell, self.N)

    def initial_state(self) -> tuple[np.ndarray, np.ndarray]:
        lin = steady_state(self.params)
        u0, v0 = self.base if self.base is not None else (lin.u_star, lin.v_star)
        x = self.grid.x
        u = np.full_like(x, u0)
        v = np.full_like(x, v0)
        for pt in self.perturbations:
            wave = pt.amp * np.cos(pt.mode * x / self.params.ell)
            if pt.species == "u":
                u += wave
            elif pt.species == "v":
                v += wave
            else:
                raise ConfigError(f"unknown species {pt.species!r}")
        if u.min() <= 0 or v.min() <= 0:
            raise ConfigError("initial data must be positive")
        return u, v


@dataclass
class SpaceTimeSolution:
    grid: Grid
    params: ModelParams
    steady: tuple[float, float]
    t: np.ndarray
    u: np.ndarray  # (snapshots, N+1)
    v: np.ndarray
    modes: tuple[int, ...]
    z_t: np.ndarray  # mode amplitude times, one per step block
    z: np.ndarray  # (len(z_t), len(modes))
    nonnegative: bool = True
    min_value: float = field(default=np.inf)
    early_exit: bool = False
    steps: int = 0

    @property
    def final(self) -> tuple[np.ndarray, np.ndarray]:
        return self.u[-1], self.v[-1]

    def sup_distance(self) -> float:
        u, v = self.final
        return float(max(np.abs(u - self.steady[0]).max(), np.abs(v - self.steady[1]).max()))

    def amplitude(self, n: int, idx: int = -1, species: str = "u") -> float:
        fld = self.u[idx] if species == "u" else self.v[idx]
        base = self.steady[0] if species == "u" else self.steady[1]
        return project(self.grid, fld - base, n)


def project(grid: Grid, f: np.ndarray, n: int) -> float:
    """Trapezoid approximation of the integral of f gamma_n."""
    return float(grid.weights @ (f * gamma(n, grid.x, grid.ell)))


def laplacian(f: np.ndarray, dx: float) -> np.ndarray:
    out = np.empty_like(f)
    out[1:-1] = f[2:] - 2 * f[1:-1] + f[:-2]
    out[0] = 2 * (f[1] - f[0])
    out[-1] = 2 * (f[-2] - f[-1])
    return out / dx ** 2


def taxis_divergence(u: np.ndarray, v: np.ndarray, alpha: float, dx: float) -> np.ndarray:
    """(alpha u v_x)_x with face fluxes alpha * mean(u) * (v_{j+1} - v_j)/dx."""
    F = alpha * 0.5 * (u[1:] + u[:-1]) * np.diff(v) / dx
    out = np.empty_like(u)
    out[1:-1] = F[1:] - F[:-1]
    out[0] = 2 * F[0]  # reflected flux at the left end is -F[0]
    out[-1] = -2 * F[-1]
    return out / dx


def _reaction_checked(p: ModelParams, u, v):
    den = p.b2 * v + (1 - p.beta) * u
    if den.min() < DENOM_TOL:
        raise DenominatorBlowup(f"b2 v + (1-beta) u = {den.min():.3e} < {DENOM_TOL:g}")
    return reaction(p, u, v)


def discretize_rhs(p: ModelParams, grid: Grid, u: np.ndarray, v: np.ndarray):
    """Semi-discrete time derivative (u_t, v_t) at the nodes."""
    f, g = _reaction_checked(p, u, v)
    dx = grid.dx
    ut = p.du * laplacian(u, dx) + taxis_divergence(u, v, p.alpha, dx) + f
    vt = p.dv * laplacian(v, dx) + g
    return ut, vt


def _implicit_banded(n: int, coef: float) -> np.ndarray:
    """Banded form of I - coef * Laplacian (coef = dt*d/dx^2) with reflection."""
    ab = np.zeros((3, n))
    ab[0, 1:] = -coef
    ab[1, :] = 1 + 2 * coef
    ab[2, :-1] = -coef
    ab[0, 1] = -2 * coef  # row 0, column 1
    ab[2, -2] = -2 * coef  # row n-1, column n-2
    return ab


def _stable_dt(cfg: SimConfig, u: np.ndarray, dx: float) -> float:
    p = cfg.params
    return min(0.2 * dx ** 2 / max(p.alpha * float(u.max()), 1e-12) * cfg.safety, cfg.dt_max)


def simulate(cfg: SimConfig) -> SpaceTimeSolution:
    p, grid = cfg.params, cfg.grid
    lin = steady_state(p)
    dx, n = grid.dx, grid.N + 1
    u, v = cfg.initial_state()
    ustar = lin.u_star

    snaps_t, snaps_u, snaps_v = [0.0], [u.copy()], [v.copy()]
    z_t, z = [0.0], [[project(grid, u - lin.u_star, m) for m in cfg.modes]]
    min_val = float(min(u.min(), v.min()))
    t, step, early = 0.0, 0, False
    next_snap = cfg.snapshot_dt
    dt = None
    while t < cfg.t_end:
        if step % 100 == 0:
            dt_new = _stable_dt(cfg, u, dx)
            if dt_new < DT_MIN:
                raise StepFailure(f"dt = {dt_new:.3e} below {DT_MIN:g} at t = {t:.6g}")
            if dt_new != dt:
                dt = dt_new
                ab_u = _implicit_banded(n, dt * p.du / dx ** 2)
                ab_v = _implicit_banded(n, dt * p.dv / dx ** 2)
        h = min(dt, cfg.t_end - t)
        if h != dt:
            ab_u = _implicit_banded(n, h * p.du / dx ** 2)
            ab_v = _implicit_banded(n, h * p.dv / dx ** 2)
        f, g = _reaction_checked(p, u, v)
        # the u*-linear part of the taxis flux goes with the implicit side
        tx = taxis_divergence(u - ustar, v, p.alpha, dx)
        v_new = solve_banded((1, 1), ab_v, v + h * g, check_finite=False)
        u_new = solve_banded((1, 1), ab_u, u + h * (f + tx + p.alpha * ustar * laplacian(v_new, dx)),
                             check_finite=False)
        rate = max(np.abs(u_new - u).max(), np.abs(v_new - v).max()) / h
        u, v = u_new, v_new
        t += h
        step += 1
        lo = float(min(u.min(), v.min()))
        min_val = min(min_val, lo)
        if not np.isfinite(lo):
            raise StepFailure(f"non-finite state at t = {t:.6g}")
        if lo < NEG_TOL and cfg.abort_on_negative:
            raise NonNegativityViolation(f"min(u, v) = {lo:.3e} at t = {t:.6g}")
        if step % 100 == 0:
            z_t.append(t)
            z.append([project(grid, u - lin.u_star, m) for m in cfg.modes])
        done = rate < cfg.early_exit_tol or t >= cfg.t_end
        if t >= next_snap - 1e-12 or done:
            snaps_t.append(t)
            snaps_u.append(u.copy())
            snaps_v.append(v.copy())
            while next_snap <= t + 1e-12:
                next_snap += cfg.snapshot_dt
        if rate < cfg.early_exit_tol:
            early = True
            break
    if z_t[-1] != t:
        z_t.append(t)
        z.append([project(grid, u - lin.u_star, m) for m in cfg.modes])
    return SpaceTimeSolution(grid, p, (lin.u_star, lin.v_star), np.array(snaps_t),
                             np.array(snaps_u), np.array(snaps_v), tuple(cfg.modes),
                             np.array(z_t), np.array(z), min_val >= NEG_TOL, min_val, early, step)


@dataclass(frozen=True)
class PatternVerdict:
    label: str  # Homogeneous, PureMode, Mixed, Unresolved
    mode: int | None
    amplitudes: dict
    sign: int
    correlation: dict | None = None  # species -> profile correlation with cos(n x/ell)
    transient: dict | None = None

    def __str__(self) -> str:
        return f"PureMode({self.mode})" if self.label == "PureMode" else self.label


def profile_correlation(grid: Grid, f: np.ndarray, n: int) -> float:
    """Cosine similarity of the mean-free profile with cos(n x/ell)."""
    w = grid.weights
    g = f - (w @ f) / grid.L
    c = np.cos(n * grid.x / grid.ell)
    den = math.sqrt((w @ (g * g)) * (w @ (c * c)))
    return float((w @ (g * c)) / den) if den > 0 else 0.0


def classify_pattern(sol: SpaceTimeSolution, n1: int, n2: int,
                     transient_time: float | None = None, homogeneous_tol: float = 1e-3,
                     dominance: float = 10.0, min_amp: float = 1e-3) -> PatternVerdict:
    z1, z2 = sol.amplitude(n1), sol.amplitude(n2)
    amps = {n1: z1, n2: z2}
    transient = None
    if transient_time is not None:
        idx = int(np.argmin(np.abs(sol.t - transient_time)))
        transient = {"t": float(sol.t[idx]), n1: sol.amplitude(n1, idx), n2: sol.amplitude(n2, idx)}
    if sol.sup_distance() < homogeneous_tol:
        return PatternVerdict("Homogeneous", None, amps, 0, None, transient)
    for n, zn, zm in ((n1, z1, z2), (n2, z2, z1)):
        if abs(zn) > dominance * abs(zm) and abs(zn) > min_amp:
            corr = {"u": profile_correlation(sol.grid, sol.final[0], n),
                    "v": profile_correlation(sol.grid, sol.final[1], n)}
            return PatternVerdict("PureMode", n, amps, int(np.sign(zn)), corr, transient)
    if abs(z1) > min_amp and abs(z2) > min_amp:
        return PatternVerdict("Mixed", None, amps, 0, None, transient)
    return PatternVerdict("Unresolved", None, amps, 0, None, transient)


def growth_rate(t: np.ndarray, z: np.ndarray) -> float:
    """Least-squares slope of log|z| against t."""
    return float(np.polyfit(t, np.log(np.abs(z)), 1)[0])
