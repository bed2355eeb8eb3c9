import dataclasses

import numpy as np
import pytest

from turing2.errors import DegenerateCubic, HardCase, OnBoundary
from turing2.unfolding import (REGION_INVENTORY, critical_lines_and_region, planar_equilibria,
                               planar_flow, planar_unfolding)


def _with_cubic(nf, key, comp, value):
    cubic = {k: v.copy() for k, v in nf.cubic.items()}
    cubic[key][comp - 1] = value
    return dataclasses.replace(nf, cubic=cubic)


def test_unfolding_constants(unf):
    assert unf.eps_tilde == -1 and unf.d_tilde == 1
    assert unf.b_tilde == pytest.approx(0.8599, rel=1e-3)
    assert unf.det == pytest.approx(unf.d_tilde - unf.b_tilde * unf.c_tilde)
    np.testing.assert_allclose(unf.alpha1_mu, (-0.5638, -0.1041), atol=5e-4)
    np.testing.assert_allclose(unf.alpha2_mu, (-0.9433, -0.1119), atol=5e-4)
    assert unf.alphas((0.0, 0.0)) == (0.0, 0.0)


def test_unfolding_definitions(nf, unf):
    k11, k12, k21, k22 = nf.B("3000", 1), nf.B("1200", 1), nf.B("2100", 2), nf.B("0300", 2)
    e = np.sign(k11)
    assert unf.b_tilde == pytest.approx(e * k12 / abs(k22), rel=1e-15)
    assert unf.c_tilde == pytest.approx(e * k21 / abs(k11), rel=1e-15)
    assert unf.d_tilde == e * np.sign(k22)


def test_hard_case(nf):
    with pytest.raises(HardCase):
        planar_unfolding(_with_cubic(nf, "3000", 1, -nf.B("3000", 1)))


def test_degenerate_cubic(nf):
    with pytest.raises(DegenerateCubic):
        planar_unfolding(_with_cubic(nf, "0300", 2, 0.0))


def test_line_slopes_and_sides(unf):
    lines = {ln.name: ln for ln in unf.critical_lines()}
    assert lines["CL1"].slope == pytest.approx(-5.4159, rel=1e-3)
    assert lines["CL2"].slope == pytest.approx(-8.4298, rel=1e-3)
    assert lines["CL4"].slope == pytest.approx(-5.5846, rel=1e-3)
    assert lines["CL3"].side == -1 and lines["CL4"].side == 1
    assert lines["CL1"].side == 0 and lines["CL2"].side == 0


@pytest.mark.parametrize("mu,region", [((0.1, 0.1), "R1"), ((0.002, -0.1), "R4"),
                                       ((-0.002, -0.2), "R4"), ((0.02, -0.14), "R5")])
def test_tested_points(unf, mu, region):
    assert critical_lines_and_region(unf, mu)[1] == region


def test_r4_has_every_family(unf):
    eq = planar_equilibria(unf, (0.002, -0.1))
    assert eq.families == REGION_INVENTORY["R4"]
    assert len(eq.points) == 1 + 2 + 2 + 4


def test_random_mu_inventory(unf):
    rng = np.random.default_rng(0)
    seen = set()
    count = 0
    while count < 500:
        r, th = 0.3 * np.sqrt(rng.uniform()), rng.uniform(0, 2 * np.pi)
        mu = (r * np.cos(th), r * np.sin(th))
        try:
            _, region = critical_lines_and_region(unf, mu)
        except OnBoundary:
            continue
        count += 1
        seen.add(region)
        eq = planar_equilibria(unf, mu)
        assert eq.families == REGION_INVENTORY[region]
        rows = unf.radicand_rows() @ np.asarray(mu)
        for e in eq.points:
            assert np.allclose(unf.vector_field(e.z, mu), 0.0, atol=1e-14)
            if e.family == "E3":
                assert rows[2] / unf.det > 0 and rows[3] / unf.det > 0
    # R6 is the thin wedge between CL1 and CL4; sampled separately below
    assert seen >= set(REGION_INVENTORY) - {"R6"}


def test_r6_wedge(unf):
    mu = (0.01, -0.055)
    assert critical_lines_and_region(unf, mu)[1] == "R6"
    assert planar_equilibria(unf, mu).families == REGION_INVENTORY["R6"]


def test_on_boundary(unf):
    ln = unf.critical_lines()[0]
    mu = (0.01, ln.slope * 0.01)
    with pytest.raises(OnBoundary):
        critical_lines_and_region(unf, mu)


def test_amplitudes_rescale(unf):
    eq = planar_equilibria(unf, (0.002, -0.1))
    for e in eq.points:
        if e.family == "E1":
            assert e.r[0] ** 2 * abs(unf.kappa11) == pytest.approx(e.z[0] ** 2, rel=1e-12)


def test_flow_r1_to_origin(unf):
    tr = planar_flow(unf, (0.1, 0.1), (0.01, 0.01), t_end=2000)
    assert tr.converged and tr.limit.family == "E0"


def test_flow_axis_invariant(unf):
    tr = planar_flow(unf, (0.002, -0.1), (0.1, 0.0))
    assert np.all(tr.z[1] == 0.0)
    assert tr.converged and tr.limit.family == "E1"


def test_flow_r4_limit_is_stable(unf):
    mu = (0.002, -0.1)
    tr = planar_flow(unf, mu, (0.1, 0.01))
    assert tr.converged
    assert unf.is_stable(tr.limit.z, mu)
    stable = {e.family for e in planar_equilibria(unf, mu).points if unf.is_stable(e.z, mu)}
    assert tr.limit.family in stable
