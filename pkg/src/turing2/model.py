"""Model parameters, positive steady state, linearization and reaction Taylor data.

The model is the predator-prey system with prey refuge beta and predator-taxis
alpha on the interval (0, ell*pi) with no-flux boundaries:

    u_t = du u_xx + (alpha u v_x)_x + u (r0 - a u) - b1 (1-beta) u v / (b2 v + (1-beta) u)
    v_t = dv v_xx - m1 v + c b1 (1-beta) u v / (b2 v + (1-beta) u)
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import ExistenceViolated

PARAM_NAMES = ("r0", "a", "b1", "b2", "m1", "c", "beta", "du", "dv", "alpha", "ell")


@dataclass(frozen=True)
class ModelParams:
    r0: float
    a: float
    b1: float
    b2: float
    m1: float
    c: float
    beta: float
    du: float
    dv: float
    alpha: float
    ell: float

    def replace(self, **changes) -> "ModelParams":
        return dataclasses.replace(self, **changes)

    def as_dict(self) -> dict:
        return {k: getattr(self, k) for k in PARAM_NAMES}

    @cached_property
    def r0_existence(self) -> float:
        """Growth-rate threshold for a positive steady state."""
        return (self.c * self.b1 - self.m1) * (1 - self.beta) / (self.b2 * self.c)

    @cached_property
    def r0_lower(self) -> float:
        """Lower bound on r0 for ODE stability of the steady state."""
        cb1 = self.c * self.b1
        second = (((cb1 + self.m1) * (1 - self.beta) - self.c * self.b2 * self.m1)
                  * (cb1 - self.m1) / (self.c ** 2 * self.b1 * self.b2))
        return max(self.r0_existence, second)

    @cached_property
    def r0_upper(self) -> float:
        """Turing instability needs r0 below this value."""
        cb1 = self.c * self.b1
        return (cb1 - self.m1) * (cb1 + self.m1) * (1 - self.beta) / (self.c ** 2 * self.b1 * self.b2)


def pdagger(**overrides) -> ModelParams:
    """The reference parameter set used throughout the examples and tests."""
    base = dict(r0=0.5, a=0.4, b1=1.0, b2=0.98, m1=0.6, c=1.0, beta=0.05,
                du=0.02, dv=0.6, alpha=0.5, ell=3.0)
    base.update(overrides)
    return ModelParams(**base)


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[str, ...]
    positive: bool
    exists: bool
    ode_stable: bool
    turing_capable: bool
    r0_lower: float
    r0_upper: float

    @property
    def ok(self) -> bool:
        return not self.violations


def validate_params(p: ModelParams) -> ValidationReport:
    violations = []
    positive = True
    for name in PARAM_NAMES:
        val = getattr(p, name)
        if not np.isfinite(val) or val <= 0:
            violations.append(f"{name} must be positive (got {val})")
            positive = False
    if p.beta >= 1:
        violations.append(f"beta must be < 1 (got {p.beta})")
        positive = False
    if not positive:
        return ValidationReport(tuple(violations), False, False, False, False, np.nan, np.nan)

    exists = True
    if p.c <= p.m1 / p.b1:
        violations.append(f"existence condition violated: c <= m1/b1 = {p.m1 / p.b1:.17g}")
        exists = False
    elif p.r0 <= p.r0_existence:
        violations.append(
            f"existence condition violated: r0 <= (c b1 - m1)(1 - beta)/(b2 c) = {p.r0_existence:.17g}")
        exists = False
    ode_stable = exists and p.r0 > p.r0_lower
    if exists and not ode_stable:
        violations.append(f"r0 <= r0_lower = {p.r0_lower:.17g}; steady state is not ODE-stable")
    turing_capable = ode_stable and p.r0 < p.r0_upper
    return ValidationReport(tuple(violations), positive, exists, ode_stable, turing_capable,
                            p.r0_lower, p.r0_upper)


def reaction(p: ModelParams, u, v):
    """Reaction terms (f, g) evaluated pointwise; works on scalars and arrays."""
    B = 1 - p.beta
    pred = p.b1 * B * u * v / (p.b2 * v + B * u)
    return u * (p.r0 - p.a * u) - pred, -p.m1 * v + p.c * pred


@dataclass(frozen=True)
class LinearizationData:
    u_star: float
    v_star: float
    varpi: float
    A1: np.ndarray = field(repr=False)
    D0: np.ndarray = field(repr=False)

    @property
    def f_u(self) -> float:
        return float(self.A1[0, 0])

    @property
    def f_v(self) -> float:
        return float(self.A1[0, 1])

    @property
    def g_u(self) -> float:
        return float(self.A1[1, 0])

    @property
    def g_v(self) -> float:
        return float(self.A1[1, 1])


def steady_state(p: ModelParams) -> LinearizationData:
    if p.c <= p.m1 / p.b1:
        raise ExistenceViolated(f"existence condition violated: c <= m1/b1 ({p.c} <= {p.m1 / p.b1})")
    if p.r0 <= p.r0_existence:
        raise ExistenceViolated(
            f"existence condition violated: r0 <= {p.r0_existence!r} (no positive steady state)")
    B = 1 - p.beta
    cb1 = p.c * p.b1
    us = (p.r0 - (cb1 - p.m1) * B / (p.b2 * p.c)) / p.a
    vs = (cb1 - p.m1) * B * us / (p.b2 * p.m1)
    varpi = p.m1 * (cb1 - p.m1) / (p.c ** 2 * p.b1 * p.b2)
    S2 = (p.b2 * vs + B * us) ** 2
    A1 = np.array([
        [-p.a * us + p.b1 * B ** 2 * us * vs / S2, -p.b1 * B ** 2 * us ** 2 / S2],
        [p.c * p.b1 * p.b2 * B * vs ** 2 / S2, -p.c * p.b1 * p.b2 * B * us * vs / S2],
    ])
    D0 = np.array([[p.du, p.alpha * us], [0.0, p.dv]])
    A1.setflags(write=False)
    D0.setflags(write=False)
    return LinearizationData(us, vs, varpi, A1, D0)


@dataclass(frozen=True)
class ModeSpectrum:
    n: int
    det_n: float
    tr_n: float
    eigenvalues: tuple[complex, complex]

    @property
    def eig_pairs(self) -> tuple[tuple[float, float], tuple[float, float]]:
        """Eigenvalues as (real, imag) pairs."""
        return tuple((float(z.real), float(z.imag)) for z in self.eigenvalues)

    @property
    def dominant(self) -> float:
        """Largest real part."""
        return max(z.real for z in self.eigenvalues)


def det_tr(lin: LinearizationData, p: ModelParams, n, du=None, alpha=None):
    """DET_n and TR_n in the expanded closed form; n may be an array."""
    du = p.du if du is None else du
    alpha = p.alpha if alpha is None else alpha
    k = np.asarray(n, dtype=float) ** 2 / p.ell ** 2
    w = lin.varpi
    K = p.a * lin.u_star - (1 - p.beta) * w
    cb2w = p.c * p.b2 * w
    det = (k ** 2 * du * p.dv + k * (p.dv * K + du * cb2w + alpha * cb2w * lin.v_star)
           + p.a * cb2w * lin.u_star)
    tr = -k * (du + p.dv) - K - cb2w
    return det, tr


def mode_spectrum(lin: LinearizationData, p: ModelParams, n: int) -> ModeSpectrum:
    if n < 0:
        raise ValueError("mode number must be non-negative")
    det, tr = (float(x) for x in det_tr(lin, p, n))
    disc = tr * tr - 4 * det
    if disc >= 0:
        # avoid cancellation: larger-magnitude root first, the other from the product
        q = 0.5 * (tr + np.copysign(np.sqrt(disc), tr))
        lam = (complex(q), complex(det / q)) if q != 0 else (0j, 0j)
    else:
        s = 0.5 * np.sqrt(-disc)
        lam = (complex(0.5 * tr, s), complex(0.5 * tr, -s))
    return ModeSpectrum(n, det, tr, lam)


@dataclass(frozen=True)
class TaylorCoeffs:
    f20_1: float
    f11_1: float
    f02_1: float
    f20_2: float
    f11_2: float
    f02_2: float
    f30_1: float
    f21_1: float
    f12_1: float
    f03_1: float
    f30_2: float
    f21_2: float
    f12_2: float
    f03_2: float

    def second(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        return (np.array([self.f20_1, self.f20_2]), np.array([self.f11_1, self.f11_2]),
                np.array([self.f02_1, self.f02_2]))

    def third(self) -> tuple[np.ndarray, ...]:
        return (np.array([self.f30_1, self.f30_2]), np.array([self.f21_1, self.f21_2]),
                np.array([self.f12_1, self.f12_2]), np.array([self.f03_1, self.f03_2]))

    def as_dict(self) -> dict:
        return dataclasses.asdict(self)


def reaction_taylor(lin: LinearizationData, p: ModelParams) -> TaylorCoeffs:
    """Second and third partial derivatives of the reaction map at the steady state."""
    B = 1 - p.beta
    b1, b2, c = p.b1, p.b2, p.c
    us, vs = lin.u_star, lin.v_star
    S = b2 * vs + B * us
    f20 = -2 * p.a + 2 * b1 * B ** 2 * vs / S ** 2 - 2 * b1 * B ** 3 * us * vs / S ** 3
    f11 = (-b1 * B / S + b1 * b2 * B * vs / S ** 2 + b1 * B ** 2 * us / S ** 2
           - 2 * b1 * b2 * B ** 2 * us * vs / S ** 3)
    f02 = 2 * b1 * b2 * B * us / S ** 2 - 2 * b1 * b2 ** 2 * B * us * vs / S ** 3
    f30 = -6 * b1 * B ** 3 * vs / S ** 3 + 6 * b1 * B ** 4 * us * vs / S ** 4
    f21 = (2 * b1 * B ** 2 / S ** 2 - 4 * b1 * b2 * B ** 2 * vs / S ** 3
           - 2 * b1 * B ** 3 * us / S ** 3 + 6 * b1 * b2 * B ** 3 * us * vs / S ** 4)
    f12 = (2 * b1 * b2 * B / S ** 2 - 2 * b1 * b2 ** 2 * B * vs / S ** 3
           - 4 * b1 * b2 * B ** 2 * us / S ** 3 + 6 * b1 * b2 ** 2 * B ** 2 * us * vs / S ** 4)
    f03 = -6 * b1 * b2 ** 2 * B * us / S ** 3 + 6 * b1 * b2 ** 3 * B * us * vs / S ** 4
    # f20 of the predator equation has no competition term; every other predator
    # coefficient is -c times the prey one
    f20_2 = -2 * c * b1 * B ** 2 * vs / S ** 2 + 2 * c * b1 * B ** 3 * us * vs / S ** 3
    return TaylorCoeffs(f20, f11, f02, f20_2, -c * f11, -c * f02,
                        f30, f21, f12, f03, -c * f30, -c * f21, -c * f12, -c * f03)
