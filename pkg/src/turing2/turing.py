"""Turing curves, critical wave numbers, Turing-Turing points and stability verdicts."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ModeOutsideWindow, NotTuringCapable, OutOfRange
from .model import LinearizationData, ModelParams, det_tr, steady_state

ON_CURVE_TOL = 1e-9


def _consts(lin: LinearizationData, p: ModelParams):
    w = lin.varpi
    K = p.a * lin.u_star - (1 - p.beta) * w  # negative in the Turing-capable regime
    cb2w = p.c * p.b2 * w
    return w, K, cb2w


@dataclass(frozen=True)
class WavenumberWindow:
    n_hat: float
    n_star: float
    n_bar: int

    def in_window(self, n: int) -> bool:
        return n > self.n_hat


def critical_du(lin: LinearizationData, p: ModelParams, n):
    """Root in du of alpha(n, du); n may be an array."""
    _, K, cb2w = _consts(lin, p)
    k = np.asarray(n, dtype=float) ** 2 / p.ell ** 2
    return -(p.dv * K * k + p.a * cb2w * lin.u_star) / (k * (p.dv * k + cb2w))


def alpha_of(lin: LinearizationData, p: ModelParams, n, du):
    """alpha(n, du): the taxis value where DET_n vanishes (affine in du)."""
    _, K, cb2w = _consts(lin, p)
    k = np.asarray(n, dtype=float) ** 2 / p.ell ** 2
    du = np.asarray(du, dtype=float)
    num = du * p.dv * k ** 2 + (p.dv * K + du * cb2w) * k + p.a * cb2w * lin.u_star
    return -num / (k * cb2w * lin.v_star)


def alpha_bar(lin: LinearizationData, p: ModelParams, n):
    """Limit of alpha(n, du) as du -> 0+."""
    w, K, cb2w = _consts(lin, p)
    n = np.asarray(n, dtype=float)
    return -p.a * lin.u_star * p.ell ** 2 / (n ** 2 * lin.v_star) - p.dv * K / (cb2w * lin.v_star)


def wavenumber_window(lin: LinearizationData, p: ModelParams) -> WavenumberWindow:
    w, K, cb2w = _consts(lin, p)
    if K >= 0:
        raise NotTuringCapable(
            f"r0 = {p.r0} >= r0_upper = {p.r0_upper}: steady state is stable for every du, alpha")
    au = p.a * lin.u_star
    n_hat = p.ell * math.sqrt(au * cb2w / (p.dv * -K))
    n_star = p.ell * math.sqrt(cb2w * (au + math.sqrt(au * (1 - p.beta) * w)) / (p.dv * -K))
    nf = math.floor(n_star)
    if nf < 1:
        n_bar = 1
    else:
        n_bar = nf + 1 if critical_du(lin, p, nf) <= critical_du(lin, p, nf + 1) else nf
    return WavenumberWindow(n_hat, n_star, n_bar)


@dataclass(frozen=True)
class TuringCurve:
    """alpha(n, du) = slope*du + intercept; clamp at zero gives alpha_*(n, du)."""

    n: int
    slope: float
    intercept: float
    du_n: float

    def alpha_of_du(self, du):
        return self.slope * np.asarray(du, dtype=float) + self.intercept

    def clamped(self, du):
        return np.maximum(self.alpha_of_du(du), 0.0)


def _check_mode(lin, p, n) -> WavenumberWindow:
    win = wavenumber_window(lin, p)
    if not win.in_window(n):
        raise ModeOutsideWindow(f"mode {n} is not above n_hat = {win.n_hat:.6g}")
    return win


def turing_curve(lin: LinearizationData, p: ModelParams, n: int) -> TuringCurve:
    _check_mode(lin, p, n)
    _, K, cb2w = _consts(lin, p)
    k = n ** 2 / p.ell ** 2
    slope = -(p.dv * k + cb2w) / (cb2w * lin.v_star)
    intercept = -(p.dv * K * k + p.a * cb2w * lin.u_star) / (k * cb2w * lin.v_star)
    return TuringCurve(n, slope, intercept, float(critical_du(lin, p, n)))


def tt_du(lin: LinearizationData, p: ModelParams, n):
    """du where the curves of modes n and n+1 cross."""
    _, _, cb2w = _consts(lin, p)
    n = np.asarray(n, dtype=float)
    return p.a * cb2w * lin.u_star / (p.dv * n ** 2 * (n + 1) ** 2 / p.ell ** 4)


@dataclass(frozen=True)
class TuringTuringPoint:
    n1: int
    n2: int
    du_star: float
    alpha_star: float


def turing_turing_point(lin: LinearizationData, p: ModelParams, n: int) -> TuringTuringPoint:
    win = _check_mode(lin, p, n)
    if n < win.n_bar:
        raise ModeOutsideWindow(f"mode {n} is below the critical wave number {win.n_bar}")
    du = float(tt_du(lin, p, n))
    return TuringTuringPoint(n, n + 1, du, float(alpha_of(lin, p, n, du)))


def first_turing_curve(lin: LinearizationData, p: ModelParams, du: float) -> tuple[float, int]:
    """alpha_*(du) and the active mode, by walking the closed-form breakpoints."""
    win = wavenumber_window(lin, p)
    du_top = float(critical_du(lin, p, win.n_bar))
    if not 0 < du < du_top:
        raise OutOfRange(f"du = {du} outside (0, {du_top})")
    n = win.n_bar
    while du < tt_du(lin, p, n):
        n += 1
    return max(float(alpha_of(lin, p, n, du)), 0.0), n


def first_turing_envelope(lin: LinearizationData, p: ModelParams, du, n_max: int = 50):
    """Brute-force maximum of alpha_*(n, du) over window modes up to n_max."""
    win = wavenumber_window(lin, p)
    ns = np.arange(math.floor(win.n_hat) + 1, n_max + 1)
    vals = np.maximum(alpha_of(lin, p, ns[:, None], np.atleast_1d(du)[None, :]), 0.0)
    return vals.max(axis=0)


@dataclass(frozen=True)
class StabilityVerdict:
    kind: str  # StableAllAlpha, Stable, TuringUnstable, OnTuringCurve, OnTuringTuringPoint
    modes: tuple[int, ...] = ()

    def __str__(self) -> str:
        return f"{self.kind}({','.join(map(str, self.modes))})" if self.modes else self.kind


def unstable_modes(lin, p, du, alpha, n_max: int) -> tuple[int, ...]:
    ns = np.arange(0, n_max + 1)
    det, tr = det_tr(lin, p, ns, du=du, alpha=alpha)
    return tuple(int(n) for n in ns[(det < 0) | (tr > 0)])


def classify_stability(lin: LinearizationData, p: ModelParams, du: float, alpha: float,
                       n_max: int | None = None) -> StabilityVerdict:
    """Linear stability of the steady state at (du, alpha).

    The ODE-unstable case (r0 below its lower bound) reports TuringUnstable with
    mode 0 among the unstable modes.
    """
    if p.r0 <= p.r0_lower:
        return StabilityVerdict("TuringUnstable", unstable_modes(lin, p, du, alpha, n_max or 50))
    if p.r0 >= p.r0_upper:
        return StabilityVerdict("StableAllAlpha")
    win = wavenumber_window(lin, p)
    if n_max is None:
        n_max = max(50, 3 * win.n_bar)
    if du >= critical_du(lin, p, win.n_bar):
        return StabilityVerdict("Stable")
    a_star, n1 = first_turing_curve(lin, p, du)
    if abs(alpha - a_star) <= ON_CURVE_TOL:
        for m in (n1 + 1, n1 - 1):
            if m > win.n_hat and abs(float(alpha_of(lin, p, m, du)) - alpha) <= ON_CURVE_TOL:
                return StabilityVerdict("OnTuringTuringPoint", tuple(sorted((n1, m))))
        return StabilityVerdict("OnTuringCurve", (n1,))
    if alpha > a_star:
        return StabilityVerdict("Stable")
    return StabilityVerdict("TuringUnstable", unstable_modes(lin, p, du, alpha, n_max))


def transversality(lin: LinearizationData, p: ModelParams, n1: int, du: float) -> float:
    """d lambda / d alpha of the critical eigenvalue of mode n1 on its curve."""
    _, _, cb2w = _consts(lin, p)
    k = n1 ** 2 / p.ell ** 2
    _, tr = det_tr(lin, p, n1, du=du, alpha=0.0)  # TR_n does not depend on alpha
    return float(-k * cb2w * lin.v_star / (-tr))


def lin_at(p: ModelParams, du: float | None = None, alpha: float | None = None):
    """Params moved to (du, alpha) together with their linearization."""
    q = p.replace(du=p.du if du is None else du, alpha=p.alpha if alpha is None else alpha)
    return q, steady_state(q)
