import numpy as np
import pytest
from scipy.optimize import root

from turing2.errors import ConfigError, DenominatorBlowup, NonNegativityViolation, StepFailure
from turing2.model import mode_spectrum, pdagger, steady_state
from turing2.pde import (Grid, Perturbation, SimConfig, classify_pattern, discretize_rhs, growth_rate,
                         laplacian, profile_correlation, project, simulate, taxis_divergence)
from turing2.verify import spectral_suite

FIG4 = pdagger(du=0.0273, alpha=0.4527)


def _perts(a3, a4):
    return tuple(Perturbation(s, m, a) for s in "uv" for m, a in ((3, a3), (4, a4)))


@pytest.fixture(scope="module")
def fig4_coarse():
    """fig4 scenario on a coarse grid, long enough for the pattern to settle."""
    return simulate(SimConfig(FIG4, N=128, t_end=1500, safety=10, perturbations=_perts(0.01, 0.001),
                              snapshot_dt=500))


def test_grid_requires_64_cells():
    with pytest.raises(ConfigError):
        Grid(3.0, 32)


def test_rhs_vanishes_at_steady_state(p, lin):
    g = Grid(p.ell, 256)
    ut, vt = discretize_rhs(p, g, np.full(257, lin.u_star), np.full(257, lin.v_star))
    assert np.abs(ut).max() < 1e-12 and np.abs(vt).max() < 1e-12


def test_uniform_v_gives_no_taxis():
    g = Grid(3.0, 128)
    u = 0.3 + 0.1 * np.cos(2 * g.x / 3)
    assert np.abs(taxis_divergence(u, np.full_like(u, 0.2), 0.5, g.dx)).max() == 0.0


def test_taxis_conserves_mass():
    g = Grid(3.0, 128)
    u = 0.3 + 0.1 * np.cos(2 * g.x / 3) + 0.05 * np.cos(5 * g.x / 3)
    v = 0.2 + 0.05 * np.cos(3 * g.x / 3) ** 2
    assert abs(g.weights @ taxis_divergence(u, v, 0.5, g.dx)) < 1e-14
    assert abs(g.weights @ laplacian(u, g.dx)) < 1e-14


def test_laplacian_of_mode():
    g = Grid(3.0, 512)
    c = np.cos(4 * g.x / 3)
    np.testing.assert_allclose(laplacian(c, g.dx), -(16 / 9) * c, atol=5e-4)


def test_denominator_blowup(p):
    g = Grid(p.ell, 64)
    u, v = np.full(65, 0.2), np.full(65, 0.1)
    u[5] = v[5] = 0.0
    with pytest.raises(DenominatorBlowup):
        discretize_rhs(p, g, u, v)


def test_spectral_consistency(p):
    res = spectral_suite(p, 1e-3, N=512)
    assert res.passed, res.detail


@pytest.mark.parametrize("N", [64, 256])
def test_steady_state_preserved(p, lin, N):
    sol = simulate(SimConfig(p, N=N, t_end=100, early_exit_tol=0.0))
    assert sol.t[-1] == pytest.approx(100)
    assert np.abs(sol.u - lin.u_star).max() < 1e-10
    assert np.abs(sol.v - lin.v_star).max() < 1e-10
    assert classify_pattern(sol, 3, 4).label == "Homogeneous"


@pytest.mark.parametrize("n", [4, 5, 6])
def test_linear_growth_rates(n):
    q = pdagger(du=0.01, alpha=0.2)
    lam = mode_spectrum(steady_state(q), q, n).dominant
    assert lam > 0
    sol = simulate(SimConfig(q, N=128, t_end=60, perturbations=(Perturbation("u", n, 1e-5),), modes=(n, 1),
                             snapshot_dt=60, early_exit_tol=0.0))
    sel = sol.z_t >= 20
    rate = growth_rate(sol.z_t[sel], sol.z[sel, 0])
    assert rate == pytest.approx(lam, rel=0.05)
    assert np.abs(sol.z[:, 0]).max() < 1e-3  # stayed in the linear regime


def test_grid_convergence_second_order(fig4_coarse):
    """Discrete steady patterns of the fig4 scenario, refined twice."""
    u, v = fig4_coarse.final
    us = steady_state(FIG4).u_star
    zs = []
    for N in (128, 256, 512):
        g = Grid(FIG4.ell, N)
        if len(u) != N + 1:
            xo = np.linspace(0, g.L, len(u))
            u, v = np.interp(g.x, xo, u), np.interp(g.x, xo, v)
        F = lambda y: np.concatenate(discretize_rhs(FIG4, g, y[:N + 1], y[N + 1:]))
        r = root(F, np.concatenate([u, v]), method="hybr", tol=1e-13)
        assert r.success and np.abs(F(r.x)).max() < 1e-10
        u, v = r.x[:N + 1], r.x[N + 1:]
        zs.append(project(g, u - us, 3))
    ratio = (zs[1] - zs[0]) / (zs[2] - zs[1])
    assert 3.5 <= ratio <= 4.5
    assert 1.5 <= np.log2(ratio) <= 2.5


def test_fig4_coarse_pattern(fig4_coarse):
    v = classify_pattern(fig4_coarse, 3, 4)
    assert str(v) == "PureMode(3)" and v.sign == 1
    assert fig4_coarse.nonnegative


def test_sign_basin_symmetry(fig4_coarse):
    neg = simulate(SimConfig(FIG4, N=128, t_end=1500, safety=10, perturbations=_perts(-0.01, -0.001),
                             snapshot_dt=500))
    a, b = classify_pattern(fig4_coarse, 3, 4), classify_pattern(neg, 3, 4)
    assert a.label == b.label == "PureMode" and a.mode == b.mode
    assert b.sign == -a.sign


def test_zero_perturbation_homogeneous(p):
    sol = simulate(SimConfig(FIG4, N=64, t_end=50, early_exit_tol=0.0))
    assert classify_pattern(sol, 3, 4).label == "Homogeneous"


def test_step_failure(p):
    with pytest.raises(StepFailure):
        simulate(SimConfig(p, N=64, t_end=1.0, dt_max=1e-11))


def test_nonnegativity_violation():
    cfg = SimConfig(pdagger(alpha=5.0), N=64, t_end=20, dt_max=2.0, safety=1e9,
                    perturbations=(Perturbation("u", 3, 0.25), Perturbation("v", 3, 0.15)))
    with pytest.raises(NonNegativityViolation):
        simulate(cfg)


def test_initial_data_must_be_positive(p):
    with pytest.raises(ConfigError):
        SimConfig(p, N=64, perturbations=(Perturbation("u", 1, 1.0),)).initial_state()


def test_profile_correlation():
    g = Grid(3.0, 256)
    c = np.cos(3 * g.x / 3)
    assert profile_correlation(g, 2.0 + 0.1 * c, 3) == pytest.approx(1.0, abs=1e-12)
    assert profile_correlation(g, 2.0 - 0.1 * c, 3) == pytest.approx(-1.0, abs=1e-12)
    assert abs(profile_correlation(g, np.cos(4 * g.x / 3), 3)) < 1e-12


def test_project_mode():
    g = Grid(3.0, 256)
    from turing2.modes import gamma
    assert project(g, 0.5 * gamma(3, g.x, 3.0), 3) == pytest.approx(0.5, rel=1e-12)
    assert abs(project(g, gamma(4, g.x, 3.0), 3)) < 1e-12


def test_simulation_deterministic():
    cfg = SimConfig(FIG4, N=64, t_end=20, perturbations=_perts(0.01, 0.001))
    a, b = simulate(cfg), simulate(cfg)
    np.testing.assert_array_equal(a.u, b.u)
    np.testing.assert_array_equal(a.z, b.z)
