"""Deterministic generators for the bundled example configurations.

Each generator returns a GeneratedConfig whose tags record the intended
classification (separated, Carleson, bounded balayage, ...).  Tags are
metadata: the test suite verifies them with the corresponding checkers,
and the generators never assume a tag holds because it was stamped.

Two constructions need care at double precision.  Pairs at gaps like
exp(-2^n) collapse onto identical coordinates long before the gap
matters analytically, so such partners are stored at the same point
with the exact log-distance declared on the pair.  Scales like exp(-k)
underflow past k ~ 700, so that family is kept in scale-free form
(unit shape plus a log scale per point).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from .blaschke import PointSequence
from .geometry import TWO_PI, Arc, DiskPoint, HalfPlanePoint
from .harmonic import BoundaryDensity, DiskMeasure

MATERIALIZE_GAP = 1e-14


@dataclass(frozen=True)
class ScaledHalfPlaneFamily:
    """Half-plane points exp(log_scale_k) * (unit_x_k + i unit_y_k).

    Keeps shapes and scales separate so quantities that are invariant
    under scaling about the boundary origin stay computable when the
    scales themselves underflow.
    """

    unit_x: np.ndarray
    unit_y: np.ndarray
    log_scales: np.ndarray

    def __post_init__(self):
        ux = np.asarray(self.unit_x, dtype=float)
        uy = np.asarray(self.unit_y, dtype=float)
        ls = np.asarray(self.log_scales, dtype=float)
        object.__setattr__(self, "unit_x", ux)
        object.__setattr__(self, "unit_y", uy)
        object.__setattr__(self, "log_scales", ls)
        if not (ux.shape == uy.shape == ls.shape) or ux.ndim != 1 or ux.size == 0:
            raise ValueError("need matching nonempty arrays")
        if uy.min() <= 0.0:
            raise ValueError("unit shapes must have positive imaginary part")

    def __len__(self) -> int:
        return self.unit_x.size

    def materialize(self) -> tuple:
        scales = np.exp(self.log_scales)
        xs = scales * self.unit_x
        ys = scales * self.unit_y
        if ys.min() <= 0.0 or not np.isfinite(xs).all():
            raise ValueError(
                "scales underflow double precision; work with the scaled form")
        return tuple(HalfPlanePoint(x, y) for x, y in zip(xs, ys))

    def kernel_moment_at_origin(self) -> np.ndarray:
        """Per-point Im(p) * PoissonKernel_p(0).  The product is invariant
        under p -> t p, so it is computed from the unit shapes alone."""
        x, y = self.unit_x, self.unit_y
        return y * y / (math.pi * (x * x + y * y))


@dataclass(frozen=True)
class GeneratedConfig:
    name: str
    params: dict
    tags: tuple
    sequence: PointSequence | None = None
    measure: DiskMeasure | None = None
    density: BoundaryDensity | None = None
    scaled: ScaledHalfPlaneFamily | None = None

    def require_sequence(self) -> PointSequence:
        if self.sequence is None:
            raise ValueError(f"{self.name} does not produce a point sequence")
        return self.sequence

    def require_measure(self) -> DiskMeasure:
        if self.measure is None:
            raise ValueError(f"{self.name} does not produce a measure")
        return self.measure


def radial_dyadic(n_points: int) -> GeneratedConfig:
    """lambda_n = 1 - 2^-n on the positive radius, n = 1..n_points."""
    if not 1 <= n_points <= 50:
        raise ValueError("point count must lie in [1, 50]")
    pts = tuple(DiskPoint(1.0 - 2.0 ** -n, 0.0) for n in range(1, n_points + 1))
    return GeneratedConfig("radial_dyadic", {"n_points": n_points},
                           ("SEPARATED", "CARLESON"), sequence=PointSequence(pts))


def _radial_partner(base: DiskPoint, log_rho: float) -> DiskPoint | None:
    """Point on the same radius at the prescribed pseudo-hyperbolic
    distance outward, or None when the gap is below coordinate
    resolution and must be declared instead."""
    rho = math.exp(log_rho)
    r = base.r
    r2 = (r + rho) / (1.0 + r * rho)
    if r2 < 1.0 and r2 - r >= MATERIALIZE_GAP:
        return DiskPoint.from_polar(r2, base.arg)
    return None


def stolz_pairs(n_levels: int, gap_rule: str = "exp", vertex: float = 0.0) -> GeneratedConfig:
    """Radial points 1 - 2^-n toward e^{i vertex}, each with a partner
    on the same radius at a prescribed pseudo-hyperbolic gap.

    gap_rule "exp" uses rho_n = exp(-1/(1-|lambda_n|)), tuned so that
    (1-|lambda_n|) log(1/rho_n) = 1 exactly; "half" keeps rho = 1/2.
    """
    if not 1 <= n_levels <= 40:
        raise ValueError("level count must lie in [1, 40]")
    points: list = []
    declared: dict = {}
    for n in range(1, n_levels + 1):
        r = 1.0 - 2.0 ** -n
        if gap_rule == "exp":
            log_rho = -1.0 / (1.0 - r)
        elif gap_rule == "half":
            log_rho = math.log(0.5)
        else:
            raise ValueError(f"unknown gap rule {gap_rule!r}")
        base = DiskPoint.from_polar(r, vertex)
        i = len(points)
        points.append(base)
        partner = _radial_partner(base, log_rho)
        if partner is None:
            points.append(base)
            declared[(i, i + 1)] = log_rho
        else:
            points.append(partner)
    tags = (("BOUNDED_WEIGHT", "NOT_VANISHING_WEIGHT", "VERTEX_CONCENTRATION")
            if gap_rule == "exp" else ("SEPARATED",))
    return GeneratedConfig(
        "stolz_pairs", {"n_levels": n_levels, "gap_rule": gap_rule, "vertex": vertex},
        tags, sequence=PointSequence(tuple(points), declared_log_rho=declared or None))


def superseparated(size: int) -> GeneratedConfig:
    """Half-plane family exp(-k) * (1 + i k^{-1/2}), k = 1..size.

    Radial gaps shrink much faster than the separation scale, yet the
    swept masses at the origin sum like the harmonic series.
    """
    if not 1 <= size <= 10 ** 6:
        raise ValueError("size must lie in [1, 1e6]")
    k = np.arange(1, size + 1, dtype=float)
    fam = ScaledHalfPlaneFamily(np.ones(size), k ** -0.5, -k)
    return GeneratedConfig("superseparated", {"size": size},
                           ("SUPERSEPARATED", "HARMONIC_SWEPT_SUMS"), scaled=fam)


def _angular_threshold(t: float, eps: float) -> float:
    return t * math.log(1.0 / t) ** (1.0 + eps)


def g_separated(n_points: int, eps: float = 1.0) -> GeneratedConfig:
    """Points whose pairwise chordal angle gaps obey the profile rule
    gap >= (1-|lambda|) * log(1/(1-|lambda|))^{1+eps}.

    eps <= 0 is rejected: the profile must decay fast enough for a
    convergent integral, and the borderline case is outside scope.
    Construction: equal angles 2 pi j / n and one point per dyadic
    depth, shifted deep enough that the largest threshold fits under
    the smallest chord.
    """
    if eps <= 0.0:
        raise ValueError("INVALID: the angular profile rule needs eps > 0")
    if not 2 <= n_points <= 44:
        raise ValueError("point count must lie in [2, 44]")
    chord = 2.0 * math.sin(math.pi / n_points)
    d0 = max(3, math.ceil((1.0 + eps) / math.log(2.0)))
    while _angular_threshold(2.0 ** -(d0 + 1), eps) > 0.5 * chord:
        d0 += 1
        if d0 + n_points > 52:
            raise ValueError("cannot satisfy the gap rule within double precision")
    if d0 + n_points > 52:
        raise ValueError("cannot satisfy the gap rule within double precision")
    pts = tuple(
        DiskPoint.from_polar(1.0 - 2.0 ** -(d0 + j), TWO_PI * (j - 1) / n_points)
        for j in range(1, n_points + 1))
    return GeneratedConfig("g_separated",
                           {"n_points": n_points, "eps": eps, "depth_shift": d0},
                           ("ANGULAR_GAP_RULE", "BOUNDED_BALAYAGE"),
                           sequence=PointSequence(pts))


def measure_circles(alphas, oversample: int = 16) -> GeneratedConfig:
    """Mass alpha_n spread uniformly over oversample * 2^n atoms on the
    circle of radius 1 - 2^-n.

    The default oversampling keeps atom spacing well below the scale of
    the closest evaluation points, so the swept profile matches the
    mean-value constant to discretization error near 1e-7 rather than
    1e-4 at the coarsest admissible sampling.
    """
    alphas = np.asarray(alphas, dtype=float)
    if alphas.ndim != 1 or alphas.size == 0:
        raise ValueError("need a nonempty list of circle masses")
    if alphas.min() < 0.0:
        raise ValueError("circle masses must be nonnegative")
    if oversample < 1:
        raise ValueError("oversample must be a positive integer")
    n_max = alphas.size
    total_atoms = oversample * (2 ** (n_max + 1) - 2)
    if total_atoms > 5 * 10 ** 7:
        raise ValueError("atom budget exceeded; reduce depth or oversampling")
    zs, ms = [], []
    for n, a in enumerate(alphas, start=1):
        count = oversample << n
        r = 1.0 - 2.0 ** -n
        zs.append(r * np.exp(1j * TWO_PI * np.arange(count) / count))
        ms.append(np.full(count, a / count))
    mu = DiskMeasure(np.concatenate(zs), np.concatenate(ms))
    return GeneratedConfig("measure_circles",
                           {"alphas": [float(a) for a in alphas], "oversample": oversample},
                           ("CONSTANT_BALAYAGE",), measure=mu)


_RAY_DENSITIES = {
    "one": lambda x: 1.0,
    "one_minus_x": lambda x: 1.0 - x,
}


def measure_ray(density="one", generations: int = 10,
                subdivisions: int = 8) -> GeneratedConfig:
    """Line measure m(x) dx on [0, 1-2^-generations), discretized on
    dyadic radial cells split into equal subcells, one atom per subcell
    at its midpoint carrying the exact quadrature mass."""
    if isinstance(density, str):
        try:
            fn = _RAY_DENSITIES[density]
        except KeyError:
            raise ValueError(f"unknown ray density {density!r}") from None
        name = density
    else:
        fn = density
        name = getattr(density, "__name__", "custom")
    if not 1 <= generations <= 40:
        raise ValueError("generation count must lie in [1, 40]")
    if not 1 <= subdivisions <= 64:
        raise ValueError("subdivision count must lie in [1, 64]")
    xs, ms = [], []
    for j in range(generations):
        edges = np.linspace(1.0 - 2.0 ** -j, 1.0 - 2.0 ** -(j + 1), subdivisions + 1)
        for a, b in zip(edges[:-1], edges[1:]):
            mass, _ = quad(fn, a, b)
            xs.append((a + b) / 2.0)
            ms.append(mass)
    mu = DiskMeasure(np.array(xs, dtype=complex), np.array(ms))
    tags = ("CARLESON", "UNBOUNDED_BALAYAGE") if name == "one" else ("BOUNDED_BALAYAGE",)
    return GeneratedConfig("measure_ray",
                           {"density": name, "generations": generations,
                            "subdivisions": subdivisions,
                            "r_max": 1.0 - 2.0 ** -generations},
                           tags, measure=mu)


def orlicz_example(p: float = 2.0, n_pairs: int = 40, scale: float = 0.01) -> GeneratedConfig:
    """Paired sequence with summable weighted gaps yet no separation.

    Base points sit at 1 - |lambda_n| = scale * n^-3 under disjoint core
    arcs of normalized length exactly scale * n^-3, carrying weights
    n^{1/p}; each base gets a partner at pseudo-hyperbolic distance
    exp(-n^{1/p}) (declared once the gap drops below coordinate
    resolution).  The step density w = sum n^{1/p} chi_{arc_n} then has
    integral of w^p equal to scale * sum n^-2 exactly, while the
    separation constant of the pairs tends to zero.
    """
    if p < 1.0:
        raise ValueError("orlicz exponent must be >= 1")
    if not 1 <= n_pairs <= 2000:
        raise ValueError("pair count must lie in [1, 2000]")
    if not 0.0 < scale <= 0.02:
        raise ValueError("scale must lie in (0, 0.02]")
    points: list = []
    declared: dict = {}
    arcs, weights = [], []
    for n in range(1, n_pairs + 1):
        sigma = scale * float(n) ** -3
        theta = 4.0 * math.pi * scale * float(n) ** -2
        base = DiskPoint.from_polar(1.0 - sigma, theta)
        i = len(points)
        points.append(base)
        log_rho = -float(n) ** (1.0 / p)
        partner = _radial_partner(base, log_rho)
        if partner is None:
            points.append(base)
            declared[(i, i + 1)] = log_rho
        else:
            points.append(partner)
        arcs.append(Arc(theta - math.pi * sigma, TWO_PI * sigma))
        weights.append(float(n) ** (1.0 / p))
    seq = PointSequence(tuple(points), declared_log_rho=declared or None)
    density = BoundaryDensity.from_cover(arcs, weights)
    return GeneratedConfig("orlicz_example",
                           {"p": p, "n_pairs": n_pairs, "scale": scale, "gamma": "n"},
                           ("NOT_SEPARATED", "SUMMABLE_CORE_WEIGHT"),
                           sequence=seq, density=density)


GENERATORS = {
    "radial_dyadic": radial_dyadic,
    "stolz_pairs": stolz_pairs,
    "superseparated": superseparated,
    "g_separated": g_separated,
    "measure_circles": measure_circles,
    "measure_ray": measure_ray,
    "orlicz_example": orlicz_example,
}
