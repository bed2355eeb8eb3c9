import math

import numpy as np
import pytest
from scipy.optimize import brentq

from turing2.errors import ModeOutsideWindow, NotTuringCapable, OutOfRange
from turing2.model import det_tr, mode_spectrum, pdagger, steady_state
from turing2.turing import (alpha_bar, alpha_of, classify_stability, critical_du, first_turing_curve,
                            first_turing_envelope, lin_at, transversality, tt_du, turing_curve,
                            turing_turing_point, unstable_modes, wavenumber_window)


def test_window_pdagger(p, lin):
    win = wavenumber_window(lin, p)
    assert win.n_bar == 3
    assert win.n_star > win.n_hat
    assert win.n_bar in (math.floor(win.n_star), math.floor(win.n_star) + 1)
    assert float(critical_du(lin, p, 3)) == pytest.approx(0.053935860058309013, rel=1e-14)


def test_n_bar_maximizes_critical_du(p, lin):
    win = wavenumber_window(lin, p)
    ns = np.arange(math.floor(win.n_hat) + 1, 60)
    assert ns[np.argmax(critical_du(lin, p, ns))] == win.n_bar


def test_window_near_upper_r0():
    q = pdagger()
    q = q.replace(r0=q.r0_upper - 1e-9)
    lin = steady_state(q)
    win = wavenumber_window(lin, q)
    assert math.isfinite(win.n_hat) and win.n_hat > 100


def test_not_turing_capable():
    q = pdagger()
    q = q.replace(r0=q.r0_upper + 0.1)
    lin = steady_state(q)
    with pytest.raises(NotTuringCapable):
        wavenumber_window(lin, q)
    assert classify_stability(lin, q, q.du, q.alpha).kind == "StableAllAlpha"


def test_critical_du_unimodal(p, lin):
    """du_n increases below n_bar and decreases from n_bar on."""
    win = wavenumber_window(lin, p)
    ns = np.arange(math.floor(win.n_hat) + 1, 3 * win.n_bar + 1)
    d = critical_du(lin, p, ns)
    below, above = d[ns <= win.n_bar], d[ns >= win.n_bar]
    assert np.all(np.diff(below) > 0)
    assert np.all(np.diff(above) < 0)


def test_alpha_bar_positive_increasing(p, lin):
    win = wavenumber_window(lin, p)
    ns = np.arange(math.floor(win.n_hat) + 1, 3 * win.n_bar + 1)
    ab = alpha_bar(lin, p, ns)
    assert np.all(ab > 0) and np.all(np.diff(ab) > 0)


@pytest.mark.parametrize("n", [2, 3, 4, 5, 8])
def test_curve_affine_decreasing_with_root(p, lin, n):
    c = turing_curve(lin, p, n)
    assert c.slope < 0
    assert abs(c.alpha_of_du(c.du_n)) < 1e-10
    d = np.linspace(0, c.du_n, 102)[1:-1]
    np.testing.assert_allclose(c.alpha_of_du(d), alpha_of(lin, p, n, d), rtol=1e-12)
    if n == 3:
        assert np.all(alpha_of(lin, p, 3, d) > 0)


def test_curve_outside_window(p, lin):
    win = wavenumber_window(lin, p)
    with pytest.raises(ModeOutsideWindow):
        turing_curve(lin, p, math.floor(win.n_hat))


def test_alpha_of_zeroes_det(p, lin):
    for n, du in ((3, 0.02), (4, 0.01), (6, 0.005)):
        a = float(alpha_of(lin, p, n, du))
        det, _ = det_tr(lin, p, n, du=du, alpha=a)
        assert abs(det) < 1e-13


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_intersection_unique_and_matches_bisection(p, lin, n):
    top = float(critical_du(lin, p, 3))
    f = lambda d: float(alpha_of(lin, p, n, d) - alpha_of(lin, p, n + 1, d))
    grid = np.linspace(1e-6, top - 1e-9, 4001)
    vals = np.array([f(d) for d in grid])
    assert np.count_nonzero(np.diff(np.sign(vals))) == 1
    root = brentq(f, grid[0], grid[-1], xtol=1e-15, rtol=1e-15)
    assert float(tt_du(lin, p, n)) == pytest.approx(root, abs=1e-12)


def test_tt_point(p, lin):
    tt = turing_turing_point(lin, p, 3)
    assert (tt.n1, tt.n2) == (3, 4)
    assert tt.du_star == pytest.approx(0.025255102040816331, rel=1e-13)
    assert abs(float(alpha_of(lin, p, 4, tt.du_star)) - tt.alpha_star) < 1e-10
    for n in (3, 4):
        det, _ = det_tr(lin, p, n, du=tt.du_star, alpha=tt.alpha_star)
        assert abs(det) < 1e-8
    with pytest.raises(ModeOutsideWindow):
        turing_turing_point(lin, p, 2)


def test_first_curve_rounded_point(p, lin):
    a, n = first_turing_curve(lin, p, 0.0253)
    assert n == 3 and a == pytest.approx(0.5527, abs=5e-4)


def test_first_curve_matches_envelope(p, lin):
    top = float(critical_du(lin, p, 3))
    grid = top * (np.arange(200) + 0.5) / 200
    piece = np.array([first_turing_curve(lin, p, d)[0] for d in grid])
    np.testing.assert_allclose(piece, first_turing_envelope(lin, p, grid, 50), atol=1e-10, rtol=0)


def test_first_curve_active_mode_dominates(p, lin):
    a, n = first_turing_curve(lin, p, 0.03)
    assert n == 3
    assert all(a >= float(alpha_of(lin, p, m, 0.03)) for m in range(2, 51))


def test_first_curve_small_du_limit(p, lin):
    a, n = first_turing_curve(lin, p, 1e-7)
    assert a == pytest.approx(float(alpha_bar(lin, p, n)), rel=1e-3)
    assert a > 0


def test_first_curve_out_of_range(p, lin):
    with pytest.raises(OutOfRange):
        first_turing_curve(lin, p, 0.06)


def test_classify_reference_points(p, lin):
    assert classify_stability(lin, p, 0.1253, 0.6527).kind == "Stable"
    v = classify_stability(lin, p, 0.0273, 0.4527)
    assert v.kind == "TuringUnstable" and 3 in v.modes


def test_classify_on_curve_spectral(p, lin):
    du = 0.04
    a, n1 = first_turing_curve(lin, p, du)
    v = classify_stability(lin, p, du, a)
    assert v.kind == "OnTuringCurve" and v.modes == (n1,)
    ms = np.arange(0, 51)
    det, _ = det_tr(lin, p, ms, du=du, alpha=a)
    assert abs(det[n1]) < 1e-8
    assert np.all(np.delete(det, n1) > 0)


def test_classify_on_tt_point(p, lin):
    tt = turing_turing_point(lin, p, 3)
    v = classify_stability(lin, p, tt.du_star, tt.alpha_star)
    assert v.kind == "OnTuringTuringPoint" and v.modes == (3, 4)


def test_classify_above_and_below_curve(p, lin):
    a, n = first_turing_curve(lin, p, 0.02)
    assert classify_stability(lin, p, 0.02, a + 0.01).kind == "Stable"
    below = classify_stability(lin, p, 0.02, a - 0.01)
    assert below.kind == "TuringUnstable"
    assert below.modes == unstable_modes(lin, p, 0.02, a - 0.01, 50)


def test_stable_all_alpha_spectrum():
    q = pdagger()
    q = q.replace(r0=q.r0_upper + 0.05)
    lin = steady_state(q)
    win_n = 30
    det, tr = det_tr(lin, q, np.arange(0, 10 * win_n + 1), du=1e-4, alpha=0.0)
    assert np.all(det > 0) and np.all(tr < 0)


def test_trace_decreasing(p, lin):
    _, tr = det_tr(lin, p, np.arange(0, 40))
    assert np.all(np.diff(tr) < 0)


@pytest.mark.parametrize("n1,du", [(3, 0.0253), (3, 0.04), (4, 0.02), (6, 0.008)])
def test_transversality_matches_fd(p, n1, du):
    lin0 = steady_state(p)
    a = float(alpha_of(lin0, p, n1, du))
    h = 1e-6
    vals = []
    for s in (1, -1):
        q, lq = lin_at(p, du, a + s * h)
        lam = mode_spectrum(lq, q, n1)
        vals.append(min(lam.eigenvalues, key=lambda z: abs(z)).real)
    fd = (vals[0] - vals[1]) / (2 * h)
    dl = transversality(lin0, p, n1, du)
    assert dl < 0
    assert dl == pytest.approx(fd, rel=1e-3)
