"""Blaschke products in the log domain.

A `PointSequence` holds finitely many distinct disk points, optionally
with a scalar value channel.  All product quantities are accumulated as
sums of per-factor logs, so deep configurations stay finite instead of
underflowing.  Pairs whose true pseudo-hyperbolic separation is below
float64 coordinate resolution can be declared with an exact log
distance at construction; generators use this for gap-defined pairs
that share coordinates once placed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geometry import DiskPoint, shadow
from .harmonic import BoundaryDensity, DiskMeasure

DUPLICATE_RHO = 1e-12
OVERFLOW_THRESHOLD = 700.0


def log_factor(lam: complex, z: complex) -> float:
    """log |b_lam(z)| = log(|lam - z| / |1 - conj(lam) z|); -inf when z == lam."""
    num = abs(lam - z)
    if num == 0.0:
        return -math.inf
    return math.log(num) - math.log(abs(1.0 - lam.conjugate() * z))


def _log_factors(zs: np.ndarray, z: complex) -> np.ndarray:
    """Per-point log |b_lam(z)| for an array of factors, -inf on coincidence."""
    num = np.abs(zs - z)
    den = np.abs(1.0 - np.conj(zs) * z)
    with np.errstate(divide="ignore"):
        return np.log(num) - np.log(den)


class PointSequence:
    """Finite ordered sequence of distinct points of the unit disk.

    Parameters
    ----------
    points : iterable of DiskPoint
    values : optional array-like
        Per-point scalar channel (interpolation data, weights, ...).
    declared_log_rho : optional dict
        Exact log pseudo-hyperbolic distances {(i, j): log_rho} for pairs
        placed closer than coordinates can resolve.  Stored symmetrically.
        Undeclared pairs closer than 1e-12 are rejected as duplicates.
    """

    def __init__(self, points, values=None, declared_log_rho=None):
        self.points: tuple[DiskPoint, ...] = tuple(points)
        self.zs = np.array([p.z for p in self.points], dtype=complex)
        if values is not None:
            values = np.asarray(values, dtype=float)
            if values.shape != (len(self.points),):
                raise ValueError("value channel length does not match point count")
        self.values = values
        declared = {}
        if declared_log_rho:
            for (i, j), lr in declared_log_rho.items():
                if i == j or not (0 <= i < len(self.points)) or not (0 <= j < len(self.points)):
                    raise ValueError(f"declared pair ({i}, {j}) out of range")
                if lr >= 0.0:
                    raise ValueError("declared log distance must be negative")
                declared[(i, j)] = float(lr)
                declared[(j, i)] = float(lr)
        self.declared_log_rho = declared
        self._validate_distinct()

    def _validate_distinct(self):
        n = len(self.points)
        if n < 2:
            return
        z = self.zs
        rho = np.abs(z[None, :] - z[:, None]) / np.abs(1.0 - np.conj(z[:, None]) * z[None, :])
        ii, jj = np.where(rho < DUPLICATE_RHO)
        for i, j in zip(ii, jj):
            if i < j and (int(i), int(j)) not in self.declared_log_rho:
                raise ValueError(
                    f"points {i} and {j} are closer than rho = {DUPLICATE_RHO} "
                    "(duplicates are rejected; declare an exact log distance instead)"
                )

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def with_values(self, values) -> "PointSequence":
        return PointSequence(self.points, values=values,
                             declared_log_rho={k: v for k, v in self.declared_log_rho.items()})

    def one_minus_abs(self) -> np.ndarray:
        return 1.0 - np.abs(self.zs)


@dataclass(frozen=True)
class DefectValues:
    """Per-point defect phi(lam) = -log |B(lam)| of the product of the others.

    `overflow` marks entries beyond exp-representability (> 700): finite
    numbers, but e^{-phi} underflows, i.e. interpolation at working
    precision is hopeless there.  Values are never clamped.
    """

    values: np.ndarray
    overflow: np.ndarray

    def max(self) -> float:
        return float(self.values.max())


def log_blaschke_at(seq: PointSequence, z: DiskPoint | complex, exclude=frozenset()) -> float:
    """Sum of log |b_lam(z)| over the sequence, skipping excluded indices.

    Returns -inf when z coincides with a non-excluded point.  Terms are
    accumulated in stored index order with a fixed reduction, so repeated
    calls are bitwise reproducible.
    """
    zc = z.z if isinstance(z, DiskPoint) else complex(z)
    keep = np.ones(len(seq), dtype=bool)
    for i in exclude:
        keep[i] = False
    if not keep.any():
        return 0.0
    terms = _log_factors(seq.zs[keep], zc)
    if np.isneginf(terms).any():
        return -math.inf
    return float(np.sum(terms))


def blaschke_defect(seq: PointSequence) -> DefectValues:
    """phi over the sequence: entry i is -sum_{j != i} log |b_{lam_j}(lam_i)|.

    Declared pair distances are honored exactly; everything else comes
    from coordinates.  Entry is 0 for a singleton, strictly positive
    otherwise.
    """
    if len(seq) == 0:
        raise ValueError("phi needs at least one point")
    n = len(seq)
    z = seq.zs
    with np.errstate(divide="ignore", invalid="ignore"):
        num = np.abs(z[None, :] - z[:, None])
        den = np.abs(1.0 - np.conj(z[:, None]) * z[None, :])
        logm = np.log(num) - np.log(den)
    np.fill_diagonal(logm, 0.0)
    for (i, j), lr in seq.declared_log_rho.items():
        logm[i, j] = lr
    vals = -np.sum(logm, axis=1)
    if n == 1:
        vals = np.zeros(1)
    if not np.isfinite(vals).all():
        raise ValueError("coincident undeclared points in phi computation")
    return DefectValues(values=vals, overflow=vals > OVERFLOW_THRESHOLD)


def separation_constant(seq: PointSequence) -> float:
    """Smallest pairwise pseudo-hyperbolic distance; undefined for singletons."""
    n = len(seq)
    if n < 2:
        raise ValueError("separation is vacuous for fewer than two points")
    z = seq.zs
    with np.errstate(divide="ignore"):
        rho = np.abs(z[None, :] - z[:, None]) / np.abs(1.0 - np.conj(z[:, None]) * z[None, :])
        logr = np.log(rho)
    np.fill_diagonal(logr, 0.0)
    for (i, j), lr in seq.declared_log_rho.items():
        logr[i, j] = lr
    iu = np.triu_indices(n, k=1)
    return float(np.exp(logr[iu].min()))


def blaschke_sum(seq: PointSequence) -> float:
    """Sum of (1 - |lam|); finite for every finite sequence, 0 when empty."""
    if len(seq) == 0:
        return 0.0
    return float(np.sum(seq.one_minus_abs()))


def separated_tail_log(seq: PointSequence, z: DiskPoint | complex, delta: float) -> float:
    """-sum of log |b_lam(z)| over points at pseudo-hyperbolic distance >= delta from z."""
    if not (0.0 < delta < 1.0):
        raise ValueError("delta must lie in (0, 1)")
    zc = z.z if isinstance(z, DiskPoint) else complex(z)
    if len(seq) == 0:
        return 0.0
    dist = np.abs(seq.zs - zc) / np.abs(1.0 - np.conj(seq.zs) * zc)
    keep = dist >= delta
    if not keep.any():
        return 0.0
    return -float(np.sum(_log_factors(seq.zs[keep], zc)))


def shadow_cover_density(seq: PointSequence, c0: float, aperture: float = 1.0) -> BoundaryDensity:
    """c0 times the sum of shadow indicators: a step density whose Poisson
    integral is meant to dominate the separated tail once c0 is large enough."""
    arcs = [shadow(p, aperture) for p in seq.points]
    return BoundaryDensity.from_cover(arcs, [c0] * len(arcs))


def gap_mass_measure(seq: PointSequence) -> DiskMeasure:
    """The atomic measure sum (1 - |lam|) delta_lam."""
    return DiskMeasure(seq.zs.copy(), seq.one_minus_abs())
