import math

import numpy as np
import pytest
from scipy.integrate import quad

from disklab.geometry import TWO_PI, Arc, BoundaryPoint, DiskPoint, HalfPlanePoint
from disklab.harmonic import (
    BoundaryDensity,
    CarlesonWindow,
    DiskMeasure,
    balayage,
    balayage_profile,
    balayage_sup,
    carleson_embedding_report,
    half_plane_poisson,
    herglotz,
    kernel_matrix,
    poisson_kernel,
    superlevel_disk,
    tail_sum_report,
    window_mass,
    window_sup,
)
from disklab.sequences import measure_circles, measure_ray

# balayage sup of the discretized circle family alpha_n = 2^-n, n <= 8
CIRCLES8_SUP = 0.9960937841169456


def test_poisson_kernel_values():
    assert poisson_kernel(DiskPoint(0.0, 0.0), BoundaryPoint(1.0)) == pytest.approx(1.0)
    # radial point against its own boundary direction: (1+r)/(1-r)
    assert poisson_kernel(DiskPoint(0.5, 0.0), BoundaryPoint(0.0)) == pytest.approx(3.0)
    assert poisson_kernel(DiskPoint(0.5, 0.0), 0.0) == pytest.approx(3.0)


def test_poisson_kernel_mean_value():
    z = DiskPoint(0.4, -0.3)
    val, _ = quad(lambda th: poisson_kernel(z, th), 0.0, TWO_PI)
    assert val / TWO_PI == pytest.approx(1.0, rel=1e-10)


def test_half_plane_poisson_normalization():
    p = HalfPlanePoint(1.0, 0.5)
    assert half_plane_poisson(p, 1.0) == pytest.approx(1.0 / (math.pi * 0.5))
    val, _ = quad(lambda s: half_plane_poisson(p, s), -np.inf, np.inf)
    assert val == pytest.approx(1.0, rel=1e-8)


def test_kernel_matrix_matches_scalar():
    zs = np.array([0.2 + 0.1j, -0.5j, 0.7])
    ths = np.array([0.0, 1.0, 2.5, 4.0])
    K = kernel_matrix(zs, ths)
    for i, z in enumerate(zs):
        for j, th in enumerate(ths):
            assert K[i, j] == pytest.approx(poisson_kernel(z, th), rel=1e-14)


def test_disk_measure_basics():
    mu = DiskMeasure(np.array([0.1 + 0.2j, -0.3j]), np.array([1.5, 0.5]))
    assert mu.n_atoms == 2
    assert mu.total_mass() == pytest.approx(2.0)
    with pytest.raises(ValueError):
        DiskMeasure(np.array([1.2 + 0j]), np.array([1.0]))
    with pytest.raises(ValueError):
        DiskMeasure(np.array([0.1 + 0j]), np.array([-1.0]))
    assert DiskMeasure.empty().n_atoms == 0


def test_balayage_of_origin_mass_is_constant_one():
    mu = DiskMeasure(np.array([0.0 + 0.0j]), np.array([1.0]))
    for th in (0.0, 1.0, 3.0, 6.0):
        assert balayage(mu, th) == pytest.approx(1.0)


def test_balayage_equispaced_circle_closed_form():
    """K equal masses on a circle of radius r: the swept density is
    (1 - r^2K) / |1 - r^K e^{iK phi}|^2, an independent closed form."""
    K, r = 8, 0.75
    mu = DiskMeasure(r * np.exp(2j * np.pi * np.arange(K) / K), np.full(K, 1.0 / K))
    for phi in (0.0, 0.3, 1.7, math.pi, 5.5):
        cf = (1 - r ** (2 * K)) / abs(1 - r ** K * np.exp(1j * K * phi)) ** 2
        assert balayage(mu, phi) == pytest.approx(cf, rel=1e-12)


def test_balayage_sup_circles_frozen():
    mu = measure_circles([2.0 ** -n for n in range(1, 9)]).require_measure()
    sup = balayage_sup(mu, 10)
    assert sup.value == pytest.approx(CIRCLES8_SUP, rel=1e-12)
    assert sup.value == pytest.approx(1.0 - 2.0 ** -8, abs=1e-6)
    assert sup.refine_ratio >= 1.0
    assert sup.refine_ratio == pytest.approx(1.0, abs=1e-9)


def test_balayage_profile_matches_pointwise():
    mu = DiskMeasure(np.array([0.3 + 0.4j, -0.2 + 0.1j]), np.array([1.0, 2.0]))
    ths = np.linspace(0.0, TWO_PI, 17)
    prof = balayage_profile(mu, ths)
    for th, v in zip(ths, prof):
        assert v == pytest.approx(balayage(mu, th), rel=1e-13)


def test_window_mass_and_sup_single_atom():
    z = (1 - 2.0 ** -4) * np.exp(0.1j)
    mu = DiskMeasure(np.array([z]), np.array([0.7]))
    w = CarlesonWindow(0.1, 2.0 ** -3)
    assert window_mass(mu, w) == pytest.approx(0.7)
    assert window_mass(mu, CarlesonWindow(0.1, 2.0 ** -5)) == 0.0
    sup, theta = window_sup(mu, 2.0 ** -3)
    assert sup == pytest.approx(0.7)
    assert abs(math.remainder(theta - 0.1, TWO_PI)) <= 2.0 ** -3 + 1e-12
    assert window_sup(mu, 2.0 ** -5) == (0.0, 0.0)


def test_window_sup_two_atoms_overlap():
    # atoms 0.02 apart: a window of side 0.05 holds both, one of side
    # 0.005 (angular width 0.01) holds at most one
    zs = 0.999 * np.exp(1j * np.array([1.0, 1.02]))
    mu = DiskMeasure(zs, np.array([1.0, 2.0]))
    sup, _ = window_sup(mu, 0.05)
    assert sup == pytest.approx(3.0)
    sup2, th2 = window_sup(mu, 0.005)
    assert sup2 == pytest.approx(2.0)
    assert abs(math.remainder(th2 - 1.02, TWO_PI)) <= 0.005 + 1e-12


def test_embedding_report_converging_family():
    mu = measure_circles([2.0 ** -n for n in range(1, 9)]).require_measure()
    rep = carleson_embedding_report(mu, 12)
    assert rep.verdict == "CONVERGING"
    assert rep.total > 0.0
    assert len(rep.rows) == 12
    partials = rep.partials()
    assert np.all(np.diff(partials) >= -1e-15)


def test_embedding_report_terminated_tail():
    mu = measure_circles([0.5, 0.25, 0.125]).require_measure()
    assert carleson_embedding_report(mu, 12).verdict == "CONVERGING"


def test_embedding_report_diverging_ray():
    mu = measure_ray(density="one", generations=12, subdivisions=8).require_measure()
    assert carleson_embedding_report(mu, 8).verdict == "DIVERGING"


def test_tail_sum_report_exact_geometric():
    # atoms strictly inside the dyadic shells avoid threshold knife-edges
    rs = np.array([1.0 - 1.5 * 2.0 ** -n for n in range(1, 7)])
    mu = DiskMeasure(rs.astype(complex), np.full(6, 1.0))
    rep = tail_sum_report(mu, 10)
    # at level n the atoms with 1-|z| <= 2^-n are those with index > n
    for row in rep.rows:
        expect = float(np.sum(1.5 * 2.0 ** -np.arange(1, 7) <= 2.0 ** -row.n))
        assert row.tail_mass == pytest.approx(expect)
    assert rep.verdict == "CONVERGING"


def test_boundary_density_constant_and_poisson():
    w = BoundaryDensity.constant(2.5)
    assert w.mass() == pytest.approx(2.5)
    for z in (0.0, 0.3 + 0.4j, -0.9j):
        assert w.poisson(z) == pytest.approx(2.5, rel=1e-12)
    assert w.power_integral(2.0) == pytest.approx(6.25)


def test_boundary_density_from_cover_overlap():
    arcs = [Arc(0.0, 1.0), Arc(0.5, 1.0)]
    w = BoundaryDensity.from_cover(arcs, [1.0, 2.0])
    assert w.eval(0.25) == pytest.approx(1.0)
    assert w.eval(0.75) == pytest.approx(3.0)
    assert w.eval(1.25) == pytest.approx(2.0)
    assert w.eval(3.0) == 0.0
    assert w.mass() == pytest.approx((1.0 * 1.0 + 2.0 * 1.0) / TWO_PI)


def test_boundary_density_atom_poisson():
    w = BoundaryDensity.atoms_only([0.0], [0.5])
    z = 0.3 + 0.2j
    assert w.poisson(z) == pytest.approx(0.5 * poisson_kernel(z, 0.0), rel=1e-12)
    assert w.mass() == pytest.approx(0.5)


def test_poisson_integral_against_quadrature():
    w = BoundaryDensity.from_cover([Arc(1.0, 2.0)], [1.5])
    z = DiskPoint(0.35, -0.4)
    val, _ = quad(lambda th: w.eval(th) * poisson_kernel(z, th), 0.0, TWO_PI,
                  limit=200)
    assert w.poisson(z) == pytest.approx(val / TWO_PI, rel=1e-8)


def test_herglotz_real_part_and_origin():
    w = BoundaryDensity.constant(1.0)
    g = herglotz(w, 0.15 + 0.22j)
    assert g.real == pytest.approx(w.poisson(0.15 + 0.22j), rel=1e-12)
    assert herglotz(w, 0.0).imag == pytest.approx(0.0, abs=1e-12)


def test_superlevel_disk_boundary_has_kernel_t():
    t = 3.0
    center, radius = superlevel_disk(BoundaryPoint(0.0), t)
    for ang in np.linspace(0.4, 5.9, 7):
        z = center.z + radius * np.exp(1j * ang)
        if abs(z) < 1.0:
            assert poisson_kernel(z, 0.0) == pytest.approx(t, rel=1e-9)
