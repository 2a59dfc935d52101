"""Geometry of the unit disk and the upper half-plane.

Points, boundary arcs, dyadic arcs and Whitney squares, the
pseudo-hyperbolic metric, Stolz angles with their boundary shadows,
and the Cayley transfer between the two models.  Everything here is
pure and allocation-light; heavy batch work lives in `harmonic`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

TWO_PI = 2.0 * math.pi


def normalize_angle(theta: float) -> float:
    """Reduce an angle to [0, 2*pi)."""
    r = math.fmod(theta, TWO_PI)
    if r < 0.0:
        r += TWO_PI
    if r >= TWO_PI:
        r = 0.0
    return r


@dataclass(frozen=True)
class DiskPoint:
    """A point strictly inside the unit disk."""

    re: float
    im: float

    def __post_init__(self):
        if not (self.re * self.re + self.im * self.im < 1.0):
            raise ValueError(f"point ({self.re}, {self.im}) is not inside the unit disk")

    @property
    def z(self) -> complex:
        return complex(self.re, self.im)

    @property
    def r(self) -> float:
        return abs(self.z)

    @property
    def arg(self) -> float:
        return normalize_angle(math.atan2(self.im, self.re))

    @classmethod
    def from_complex(cls, z: complex) -> "DiskPoint":
        return cls(z.real, z.imag)

    @classmethod
    def from_polar(cls, r: float, theta: float) -> "DiskPoint":
        return cls(r * math.cos(theta), r * math.sin(theta))


@dataclass(frozen=True)
class BoundaryPoint:
    """A point of the unit circle, stored as its angle in [0, 2*pi)."""

    theta: float

    def __post_init__(self):
        object.__setattr__(self, "theta", normalize_angle(self.theta))

    @property
    def zeta(self) -> complex:
        return complex(math.cos(self.theta), math.sin(self.theta))


@dataclass(frozen=True)
class Arc:
    """Half-open boundary arc [start, start + length), counterclockwise.

    `length` may be the full circle (2*pi); it must be positive.  The
    half-open convention makes dyadic arcs partition the circle exactly.
    """

    start: float
    length: float

    def __post_init__(self):
        if not (0.0 < self.length <= TWO_PI):
            raise ValueError(f"arc length {self.length} outside (0, 2*pi]")
        object.__setattr__(self, "start", normalize_angle(self.start))

    @property
    def end(self) -> float:
        return normalize_angle(self.start + self.length)

    @property
    def sigma(self) -> float:
        """Normalized measure of the arc."""
        return self.length / TWO_PI

    @property
    def center(self) -> float:
        return normalize_angle(self.start + 0.5 * self.length)

    def contains(self, theta: float) -> bool:
        rel = normalize_angle(theta - self.start)
        return rel < self.length

    @classmethod
    def full_circle(cls) -> "Arc":
        return cls(0.0, TWO_PI)


@dataclass(frozen=True)
class DyadicIndex:
    """Index (n, k) of the dyadic arc of generation n, 0 <= k < 2^n."""

    n: int
    k: int

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("generation must be nonnegative")
        if not (0 <= self.k < (1 << self.n)):
            raise ValueError(f"index k={self.k} outside [0, 2^{self.n})")

    def parent(self) -> "DyadicIndex":
        if self.n == 0:
            raise ValueError("root arc has no parent")
        return DyadicIndex(self.n - 1, self.k >> 1)

    def children(self) -> tuple["DyadicIndex", "DyadicIndex"]:
        return (DyadicIndex(self.n + 1, 2 * self.k), DyadicIndex(self.n + 1, 2 * self.k + 1))

    @property
    def sigma(self) -> float:
        return 2.0 ** (-self.n)


def dyadic_arc(idx: DyadicIndex) -> Arc:
    """The arc [2*pi*k*2^-n, 2*pi*(k+1)*2^-n)."""
    scale = 2.0 ** (-idx.n)
    return Arc(TWO_PI * idx.k * scale, TWO_PI * scale)


@dataclass(frozen=True)
class WhitneySquare:
    """Polar cell over a dyadic arc: radii [1-2^-n, 1-2^-(n+1)), angles I_{n,k}."""

    index: DyadicIndex

    @property
    def r_lo(self) -> float:
        return 1.0 - 2.0 ** (-self.index.n)

    @property
    def r_hi(self) -> float:
        return 1.0 - 2.0 ** (-self.index.n - 1)

    @property
    def arc(self) -> Arc:
        return dyadic_arc(self.index)

    @property
    def center(self) -> DiskPoint:
        # true cell midpoint; keeps the point a quarter-cell away from
        # every boundary, so polar round trips cannot cross an edge
        return DiskPoint.from_polar(0.5 * (self.r_lo + self.r_hi), self.arc.center)

    def contains(self, p: DiskPoint) -> bool:
        return self.r_lo <= p.r < self.r_hi and self.arc.contains(p.arg)


def whitney_square(idx: DyadicIndex) -> WhitneySquare:
    return WhitneySquare(idx)


def locate(p: DiskPoint) -> DyadicIndex:
    """The Whitney square containing p.

    Exact at cell edges: the initial floating-point guess for the
    generation and the angular slot is corrected by direct comparison
    against the cell boundaries, so locate(whitney_square(i).center) == i
    holds for deep generations.
    """
    r = p.r
    gap = 1.0 - r
    if gap > 0.5:
        n = 0
    else:
        n = int(math.floor(-math.log2(gap)))
        # nudge until 1-2^-n <= r < 1-2^-(n+1)
        while r < 1.0 - 2.0 ** (-n):
            n -= 1
        while r >= 1.0 - 2.0 ** (-n - 1):
            n += 1
    width = TWO_PI * 2.0 ** (-n)
    theta = p.arg
    k = int(theta / width)
    k = min(k, (1 << n) - 1)
    while k > 0 and theta < width * k:
        k -= 1
    while k + 1 < (1 << n) and theta >= width * (k + 1):
        k += 1
    return DyadicIndex(n, k)


def pseudo_hyperbolic(z: DiskPoint | complex, w: DiskPoint | complex) -> float:
    """rho(z, w) = |z - w| / |1 - conj(z) w|, in [0, 1)."""
    zc = z.z if isinstance(z, DiskPoint) else complex(z)
    wc = w.z if isinstance(w, DiskPoint) else complex(w)
    return abs(zc - wc) / abs(1.0 - zc.conjugate() * wc)


def stolz_contains(zeta: BoundaryPoint, aperture: float, z: DiskPoint) -> bool:
    """Whether z lies in the Stolz angle at zeta: |z - zeta| <= aperture*(1 - |z|^2)."""
    if aperture < 0.5:
        raise ValueError("aperture below 1/2 gives an empty approach region")
    return abs(z.z - zeta.zeta) <= aperture * (1.0 - z.re * z.re - z.im * z.im)


def shadow(z: DiskPoint, aperture: float = 1.0) -> Arc:
    """Boundary shadow of z: the arc of zeta with z inside the Stolz angle at zeta.

    Centered at Arg z with half-angle from the law of cosines.  Deep
    inside the disk the defining inequality may hold for every zeta
    (full circle) or for none; the empty case (only possible for
    aperture < 1) cannot be an Arc and raises.
    """
    r = z.r
    if r == 0.0:
        if aperture >= 1.0:
            return Arc.full_circle()
        raise ValueError("empty shadow: aperture < 1 at the origin")
    s = aperture * (1.0 - r * r)
    cos_half = (r * r + 1.0 - s * s) / (2.0 * r)
    if cos_half <= -1.0:
        return Arc.full_circle()
    if cos_half > 1.0:
        raise ValueError(f"empty shadow: aperture {aperture} too small at |z| = {r}")
    half = math.acos(cos_half)
    if half <= 0.0:
        raise ValueError(f"empty shadow: aperture {aperture} too small at |z| = {r}")
    return Arc(z.arg - half, min(2.0 * half, TWO_PI))


@dataclass(frozen=True)
class HalfPlanePoint:
    """A point x + iy of the open upper half-plane (y > 0)."""

    x: float
    y: float

    def __post_init__(self):
        if not self.y > 0.0:
            raise ValueError(f"point ({self.x}, {self.y}) is not in the open upper half-plane")

    @property
    def w(self) -> complex:
        return complex(self.x, self.y)

    @property
    def interval(self) -> tuple[float, float]:
        """Boundary shadow (x - y, x + y) on the real line."""
        return (self.x - self.y, self.x + self.y)


def cayley_to_disk(p: HalfPlanePoint) -> DiskPoint:
    """w -> (i - w) / (i + w); sends i to 0 and the real line to the circle."""
    w = p.w
    return DiskPoint.from_complex((1j - w) / (1j + w))


def cayley_to_halfplane(z: DiskPoint) -> HalfPlanePoint:
    """Inverse map z -> i (1 - z) / (1 + z)."""
    w = 1j * (1.0 - z.z) / (1.0 + z.z)
    return HalfPlanePoint(w.real, w.imag)
