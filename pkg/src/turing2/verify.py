"""Oracle suites: each compares a closed form against an independent numerical estimate."""

from __future__ import annotations

import dataclasses
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .model import ModelParams, TaylorCoeffs, mode_spectrum, pdagger, reaction, reaction_taylor, steady_state
from .modes import mode_integrals, quadrature_integrals
from .pde import Grid, discretize_rhs
from .turing import critical_du, first_turing_curve, first_turing_envelope, wavenumber_window

DEFAULT_TOLERANCES = {"integrals": 1e-8, "taylor": 1e-5, "envelope": 1e-12, "spectral": 1e-3}
SUITES = tuple(DEFAULT_TOLERANCES)
INTEGRAL_PAIRS = ((1, 2), (1, 3), (2, 4), (3, 4))
FD_STEP = 1e-4


@dataclass(frozen=True)
class SuiteResult:
    name: str
    passed: bool
    max_error: float
    tolerance: float
    detail: dict

    def as_dict(self) -> dict:
        return dataclasses.asdict(self)


def integrals_suite(ell: float, tol: float, m: int = 10_000) -> SuiteResult:
    worst, detail = 0.0, {}
    for n1, n2 in INTEGRAL_PAIRS:
        a, b = mode_integrals(ell, n1, n2), quadrature_integrals(ell, n1, n2, m)
        err = max(abs(x - y) for x, y in zip(a.alphas + a.betas, b.alphas + b.betas))
        detail[f"{n1},{n2}"] = err
        worst = max(worst, err)
    return SuiteResult("integrals", worst < tol, worst, tol, detail)


def _d1(p, u, v, wrt: str, comp: int, h: float = 1e-20):
    """Complex-step first partial of the reaction map (no subtractive cancellation)."""
    if wrt == "u":
        val = reaction(p, u + 1j * h, v + 0j)[comp]
    else:
        val = reaction(p, u + 0j, v + 1j * h)[comp]
    return val.imag / h


def fd_taylor(p: ModelParams, u0: float, v0: float, h: float = FD_STEP) -> TaylorCoeffs:
    """Second and third partials at (u0, v0): complex step in one variable,
    central differences of step h in the remaining ones."""
    out = {}
    for comp, tag in ((0, "1"), (1, "2")):
        du_ = lambda u, v: _d1(p, u, v, "u", comp)
        dv_ = lambda u, v: _d1(p, u, v, "v", comp)
        out[f"f20_{tag}"] = (du_(u0 + h, v0) - du_(u0 - h, v0)) / (2 * h)
        out[f"f11_{tag}"] = (du_(u0, v0 + h) - du_(u0, v0 - h)) / (2 * h)
        out[f"f02_{tag}"] = (dv_(u0, v0 + h) - dv_(u0, v0 - h)) / (2 * h)
        out[f"f30_{tag}"] = (du_(u0 + h, v0) - 2 * du_(u0, v0) + du_(u0 - h, v0)) / h ** 2
        out[f"f21_{tag}"] = (dv_(u0 + h, v0) - 2 * dv_(u0, v0) + dv_(u0 - h, v0)) / h ** 2
        out[f"f12_{tag}"] = (du_(u0, v0 + h) - 2 * du_(u0, v0) + du_(u0, v0 - h)) / h ** 2
        out[f"f03_{tag}"] = (dv_(u0, v0 + h) - 2 * dv_(u0, v0) + dv_(u0, v0 - h)) / h ** 2
    return TaylorCoeffs(**out)


def fd_taylor_richardson(p: ModelParams, u0: float, v0: float, h: float = FD_STEP) -> TaylorCoeffs:
    """Richardson combination of steps h and h/2, removing the h^2 error term."""
    a = fd_taylor(p, u0, v0, h).as_dict()
    b = fd_taylor(p, u0, v0, h / 2).as_dict()
    return TaylorCoeffs(**{k: (4 * b[k] - a[k]) / 3 for k in a})


def random_params(rng: np.random.Generator, count: int) -> list[ModelParams]:
    """Parameter sets near the reference one with an ODE-stable positive steady state."""
    base = pdagger()
    out = []
    while len(out) < count:
        q = base.replace(a=rng.uniform(0.2, 0.8), b2=rng.uniform(0.6, 1.4), m1=rng.uniform(0.3, 0.8),
                         beta=rng.uniform(0.0, 0.4), c=rng.uniform(0.9, 1.5), r0=rng.uniform(0.3, 1.0))
        if q.c * q.b1 > q.m1 and q.r0 > q.r0_lower:
            out.append(q)
    return out


def taylor_suite(tol: float, samples: int = 10, seed: int = 0, scale: dict | None = None) -> SuiteResult:
    """`scale` multiplies analytic coefficients before comparison (sensitivity hook)."""
    sets = [pdagger()] + random_params(np.random.default_rng(seed), samples)
    worst, names = 0.0, {}
    for q in sets:
        lin = steady_state(q)
        an = reaction_taylor(lin, q).as_dict()
        for k, fac in (scale or {}).items():
            an[k] *= fac
        fd = fd_taylor_richardson(q, lin.u_star, lin.v_star).as_dict()
        for k, val in an.items():
            err = abs(val - fd[k]) / max(abs(fd[k]), 1e-12)
            if err > names.get(k, 0.0):
                names[k] = err
            worst = max(worst, err)
    return SuiteResult("taylor", worst < tol, worst, tol, names)


def envelope_suite(p: ModelParams, tol: float, num: int = 200, n_max: int = 50) -> SuiteResult:
    lin = steady_state(p)
    win = wavenumber_window(lin, p)
    top = float(critical_du(lin, p, win.n_bar))
    grid = top * (np.arange(num) + 0.5) / num
    piece = np.array([first_turing_curve(lin, p, d)[0] for d in grid])
    brute = first_turing_envelope(lin, p, grid, n_max)
    err = float(np.max(np.abs(piece - brute)))
    return SuiteResult("envelope", err < tol, err, tol, {"points": num, "n_max": n_max})


def spectral_suite(p: ModelParams, tol: float, N: int = 512, modes=(1, 2, 3, 4, 5),
                   eps: float = 1e-6) -> SuiteResult:
    """The discrete linearized operator restricted to cos(n x/ell) (x) R^2 has
    the eigenvalues of the mode-n matrix, up to O(dx^2) (absolute error)."""
    lin = steady_state(p)
    grid = Grid(p.ell, N)
    x, w = grid.x, grid.weights
    base = (np.full_like(x, lin.u_star), np.full_like(x, lin.v_star))
    errs = {}
    for n in modes:
        c = np.cos(n * x / p.ell)
        cc = w @ (c * c)
        Mh = np.empty((2, 2))
        for j in range(2):
            d = [np.zeros_like(x), np.zeros_like(x)]
            d[j] = c
            plus = discretize_rhs(p, grid, base[0] + eps * d[0], base[1] + eps * d[1])
            minus = discretize_rhs(p, grid, base[0] - eps * d[0], base[1] - eps * d[1])
            for i in range(2):
                Mh[i, j] = w @ (c * (plus[i] - minus[i])) / (2 * eps * cc)
        exact = np.sort_complex(np.array(mode_spectrum(lin, p, n).eigenvalues))
        approx = np.sort_complex(np.linalg.eigvals(Mh).astype(complex))
        errs[str(n)] = float(np.max(np.abs(exact - approx)))
    worst = max(errs.values())
    return SuiteResult("spectral", worst < tol, worst, tol, errs)


def run_suites(p: ModelParams, suites=SUITES, tolerances: dict | None = None, threads: int = 1,
               taylor_scale: dict | None = None) -> list[SuiteResult]:
    tols = dict(DEFAULT_TOLERANCES)
    tols.update(tolerances or {})
    jobs = {
        "integrals": lambda: integrals_suite(p.ell, tols["integrals"]),
        "taylor": lambda: taylor_suite(tols["taylor"], scale=taylor_scale),
        "envelope": lambda: envelope_suite(p, tols["envelope"]),
        "spectral": lambda: spectral_suite(p, tols["spectral"]),
    }
    unknown = [s for s in suites if s not in jobs]
    if unknown:
        raise KeyError(f"unknown suite(s): {unknown}")
    with ThreadPoolExecutor(max_workers=max(1, threads)) as pool:
        futures = [pool.submit(jobs[s]) for s in suites]
        return [f.result() for f in futures]
