import math

import numpy as np
import pytest

from disklab.geometry import (
    TWO_PI,
    Arc,
    BoundaryPoint,
    DiskPoint,
    DyadicIndex,
    HalfPlanePoint,
    cayley_to_disk,
    cayley_to_halfplane,
    dyadic_arc,
    locate,
    normalize_angle,
    pseudo_hyperbolic,
    shadow,
    stolz_contains,
    whitney_square,
)


def test_normalize_angle_range():
    for th in (-7.0, -math.pi, 0.0, 1.0, TWO_PI, 9.5, 100.0):
        out = normalize_angle(th)
        assert 0.0 <= out < TWO_PI
        assert math.cos(out) == pytest.approx(math.cos(th), abs=1e-12)
        assert math.sin(out) == pytest.approx(math.sin(th), abs=1e-12)


def test_disk_point_validation_and_polar():
    with pytest.raises(ValueError):
        DiskPoint(1.0, 0.0)
    with pytest.raises(ValueError):
        DiskPoint(0.8, 0.7)
    p = DiskPoint.from_polar(0.75, 0.2)
    assert p.r == pytest.approx(0.75)
    assert p.arg == pytest.approx(0.2)
    q = DiskPoint.from_complex(p.z)
    assert q.re == pytest.approx(p.re) and q.im == pytest.approx(p.im)


def test_boundary_point_on_circle():
    b = BoundaryPoint(-1.0)
    assert abs(b.zeta) == pytest.approx(1.0)
    assert 0.0 <= b.theta < TWO_PI


def test_arc_contains_half_open_and_wrap():
    a = Arc(0.5, 1.0)
    assert a.contains(0.5)
    assert a.contains(1.4999)
    assert not a.contains(1.5)
    assert a.sigma == pytest.approx(1.0 / TWO_PI)
    # arc through zero
    w = Arc(TWO_PI - 0.3, 0.7)
    assert w.contains(0.0) and w.contains(0.39) and not w.contains(0.4)
    full = Arc.full_circle()
    assert full.sigma == pytest.approx(1.0)
    assert full.contains(3.0)


def test_dyadic_index_tree():
    idx = DyadicIndex(3, 5)
    c0, c1 = idx.children()
    assert c0 == DyadicIndex(4, 10) and c1 == DyadicIndex(4, 11)
    assert c0.parent() == idx and c1.parent() == idx
    assert idx.sigma == pytest.approx(2.0 ** -3)
    with pytest.raises(ValueError):
        DyadicIndex(2, 4)
    a = dyadic_arc(idx)
    assert a.start == pytest.approx(TWO_PI * 5 / 8)
    assert a.length == pytest.approx(TWO_PI / 8)


def test_whitney_square_locate_roundtrip():
    rng = np.random.default_rng(11)
    for _ in range(300):
        n = int(rng.integers(0, 20))
        k = int(rng.integers(0, 1 << n))
        idx = DyadicIndex(n, k)
        sq = whitney_square(idx)
        assert sq.r_lo == pytest.approx(1.0 - 2.0 ** -n)
        assert sq.r_hi == pytest.approx(1.0 - 2.0 ** -(n + 1))
        assert sq.contains(sq.center)
        assert locate(sq.center) == idx


def test_locate_shallow_points():
    assert locate(DiskPoint(0.0, 0.0)).n == 0
    assert locate(DiskPoint(0.3, 0.2)).n == 0
    assert locate(DiskPoint(0.5, 0.0)) == DyadicIndex(1, 0)


def test_pseudo_hyperbolic_basics():
    assert pseudo_hyperbolic(0.0, 0.5) == pytest.approx(0.5)
    z, w = DiskPoint(0.3, 0.4), DiskPoint(-0.2, 0.1)
    assert pseudo_hyperbolic(z, w) == pytest.approx(pseudo_hyperbolic(w, z))
    assert pseudo_hyperbolic(z, z) == 0.0
    # invariance under the automorphism that moves a to 0
    rng = np.random.default_rng(5)
    for _ in range(100):
        a, b, c = (rng.uniform(-0.6, 0.6) + 1j * rng.uniform(-0.6, 0.6)
                   for _ in range(3))
        ma = (b - a) / (1 - np.conj(a) * b)
        mb = (c - a) / (1 - np.conj(a) * c)
        assert pseudo_hyperbolic(b, c) == pytest.approx(
            pseudo_hyperbolic(ma, mb), rel=1e-10)


def test_shadow_matches_stolz_membership():
    """A boundary angle lies in shadow(z) exactly when the Stolz region
    at that angle contains z."""
    rng = np.random.default_rng(23)
    for _ in range(60):
        z = DiskPoint.from_polar(rng.uniform(0.3, 0.98), rng.uniform(0, TWO_PI))
        arc = shadow(z, 1.5)
        for th in rng.uniform(0, TWO_PI, 40):
            assert arc.contains(th) == stolz_contains(BoundaryPoint(th), 1.5, z)


def test_shadow_radial_point_is_centered():
    arc = shadow(DiskPoint(0.9, 0.0), 1.0)
    lo, hi = arc.start, arc.start + arc.length
    assert lo < TWO_PI <= hi or (arc.contains(0.0))
    mid = normalize_angle(arc.start + arc.length / 2.0)
    assert min(mid, TWO_PI - mid) == pytest.approx(0.0, abs=1e-12)


def test_halfplane_point_and_cayley():
    with pytest.raises(ValueError):
        HalfPlanePoint(0.0, 0.0)
    p = HalfPlanePoint(1.5, 0.25)
    lo, hi = p.interval
    assert hi - lo == pytest.approx(0.5)
    assert (lo + hi) / 2.0 == pytest.approx(1.5)
    rng = np.random.default_rng(3)
    for _ in range(50):
        z = DiskPoint.from_polar(rng.uniform(0, 0.95), rng.uniform(0, TWO_PI))
        back = cayley_to_disk(cayley_to_halfplane(z))
        assert back.z == pytest.approx(z.z, abs=1e-12)
