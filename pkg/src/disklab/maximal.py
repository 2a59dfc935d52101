"""Maximal-function diagnostics for discrete data.

Two boundary maximal objects are built from a point family with values:
the nontangential maximum (a step function, computed by an exact event
sweep over the shadow intervals) and the sharper bump envelope assembled
from closed-form profiles of shadow indicators.  Both feed exact or
semi-exact weak-L1 statistics.  Circle data lives on [0, 2pi); the
half-plane mode keeps points (x, y) with shadow intervals (x-y, x+y).
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from math import fsum

import numpy as np

from .blaschke import PointSequence
from .geometry import TWO_PI, DiskPoint, HalfPlanePoint, shadow

MODE_CIRCLE = "circle"
MODE_HALFPLANE = "halfplane"
_JUST_BELOW = 1.0 - 1e-9


def _check_mode(mode: str) -> str:
    if mode not in (MODE_CIRCLE, MODE_HALFPLANE):
        raise ValueError(f"unknown mode {mode!r}")
    return mode


@dataclass(frozen=True)
class BoundaryStepFunction:
    """Piecewise-constant nonnegative function.

    circle mode: values[i] holds on [edges[i], edges[i+1]) cyclically,
    the last cell wrapping to edges[0] + 2pi; edges[0] is always 0.
    half-plane mode: values[i] holds on [edges[i], edges[i+1]) and the
    function vanishes outside [edges[0], edges[-1]).
    """

    edges: np.ndarray
    values: np.ndarray
    mode: str = MODE_CIRCLE

    def __post_init__(self):
        edges = np.asarray(self.edges, dtype=float)
        values = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "values", values)
        _check_mode(self.mode)
        if edges.ndim != 1 or edges.size == 0:
            raise ValueError("need at least one edge")
        if np.any(np.diff(edges) <= 0.0):
            raise ValueError("edges must be strictly increasing")
        want = edges.size if self.mode == MODE_CIRCLE else edges.size - 1
        if values.shape != (want,):
            raise ValueError("value count does not match the cell count")
        if values.size and values.min() < 0.0:
            raise ValueError("step values must be nonnegative")
        if self.mode == MODE_CIRCLE:
            if edges[0] != 0.0 or edges[-1] >= TWO_PI:
                raise ValueError("circle edges must start at 0 and stay below 2pi")

    def cell_widths(self) -> np.ndarray:
        if self.mode == MODE_CIRCLE:
            return np.diff(np.append(self.edges, TWO_PI))
        return np.diff(self.edges)

    def eval(self, x):
        x = np.asarray(x, dtype=float)
        if self.mode == MODE_CIRCLE:
            xr = np.mod(x, TWO_PI)
            idx = np.searchsorted(self.edges, xr, side="right") - 1
            return self.values[np.clip(idx, 0, self.values.size - 1)]
        idx = np.searchsorted(self.edges, x, side="right") - 1
        inside = (idx >= 0) & (idx < self.values.size)
        out = np.zeros_like(x, dtype=float)
        if self.values.size:
            out[inside] = self.values[idx[inside]]
        return out

    def l1_norm(self) -> float:
        return fsum(v * w for v, w in zip(self.values, self.cell_widths()))

    def sup(self) -> float:
        return float(self.values.max()) if self.values.size else 0.0


def _zero_step(mode: str) -> BoundaryStepFunction:
    if mode == MODE_CIRCLE:
        return BoundaryStepFunction(np.array([0.0]), np.array([0.0]), mode)
    return BoundaryStepFunction(np.array([0.0, 1.0]), np.array([0.0]), mode)


def _pieces_circle(seq: PointSequence, values, aperture: float):
    """Shadow arcs split at the wrap point into sweepable pieces."""
    pieces = []
    for p, v in zip(seq, values):
        arc = shadow(p, aperture)
        end = arc.start + arc.length
        if end <= TWO_PI:
            pieces.append((arc.start, end, float(v)))
        else:
            pieces.append((arc.start, TWO_PI, float(v)))
            if end - TWO_PI > 0.0:
                pieces.append((0.0, end - TWO_PI, float(v)))
    return pieces


def _pieces_halfplane(points, values, aperture: float):
    pieces = []
    for p, v in zip(points, values):
        if isinstance(p, HalfPlanePoint):
            x, y = p.x, p.y
        else:
            w = complex(p)
            x, y = w.real, w.imag
        if y <= 0.0:
            raise ValueError("half-plane points need positive imaginary part")
        pieces.append((x - aperture * y, x + aperture * y, float(v)))
    return pieces


def _sweep(pieces, mode: str, aggregate: str) -> BoundaryStepFunction:
    """Event sweep over half-open pieces [l, r) carrying values.

    aggregate "max" keeps a lazy-deletion heap; "sum" keeps the active
    set and re-adds it exactly (fsum) whenever it changes.
    """
    if not pieces:
        return _zero_step(mode)
    events = []
    for idx, (l, r, v) in enumerate(pieces):
        if r <= l:
            continue
        events.append((l, 1, idx, v))
        events.append((r, 0, idx, v))
    if not events:
        return _zero_step(mode)
    events.sort(key=lambda e: (e[0], e[1]))
    edge_set = {a for a, _, _, _ in events}
    if mode == MODE_CIRCLE:
        edge_set.add(0.0)
        edge_set = {a for a in edge_set if 0.0 <= a < TWO_PI}
    edges = sorted(edge_set)

    heap: list = []
    dead: set = set()
    active: dict = {}
    k = 0
    out = []
    n_cells = len(edges) if mode == MODE_CIRCLE else len(edges) - 1
    for i, e in enumerate(edges):
        while k < len(events) and events[k][0] == e:
            _, kind, idx, v = events[k]
            if kind == 1:
                active[idx] = v
                heapq.heappush(heap, (-v, idx))
            else:
                active.pop(idx, None)
                dead.add(idx)
            k += 1
        if i >= n_cells:
            break
        if aggregate == "max":
            while heap and heap[0][1] in dead:
                heapq.heappop(heap)
            out.append(-heap[0][0] if heap else 0.0)
        else:
            out.append(fsum(active.values()) if active else 0.0)
    return BoundaryStepFunction(np.array(edges), np.array(out), mode)


def _shadow_pieces(points, values, aperture: float, mode: str):
    _check_mode(mode)
    if mode == MODE_CIRCLE:
        if not isinstance(points, PointSequence):
            pts = tuple(points)
            if any(isinstance(p, HalfPlanePoint) for p in pts):
                raise ValueError("half-plane points need mode='halfplane'")
            points = PointSequence(tuple(
                p if isinstance(p, DiskPoint) else DiskPoint.from_complex(complex(p))
                for p in pts))
        if values is None:
            values = points.values
        if values is None:
            raise ValueError("no value channel on the sequence and none supplied")
    elif values is None:
        raise ValueError("half-plane mode needs explicit values")
    vals = np.asarray(values, dtype=float)
    if vals.size and vals.min() < 0.0:
        raise ValueError("values must be nonnegative")
    if mode == MODE_CIRCLE:
        return _pieces_circle(points, vals, aperture)
    return _pieces_halfplane(points, vals, aperture)


def nontangential_max(points, values=None, aperture: float = 1.0,
                      mode: str = MODE_CIRCLE) -> BoundaryStepFunction:
    """Exact step function sup{v(p) : boundary point in the shadow of p}.

    Circle mode takes a PointSequence (values default to its value
    channel); half-plane mode takes points with positive imaginary part.
    """
    return _sweep(_shadow_pieces(points, values, aperture, mode), mode, "max")


def shadow_sum(points, values=None, aperture: float = 1.0,
               mode: str = MODE_CIRCLE) -> BoundaryStepFunction:
    """Like nontangential_max but summing overlapping shadows.

    Its L1 norm equals sum v(p) * |shadow(p)| exactly, and it dominates
    the nontangential maximum pointwise.
    """
    return _sweep(_shadow_pieces(points, values, aperture, mode), mode, "sum")


def hl_star_indicator(center: float, halfwidth: float, x, mode: str = MODE_HALFPLANE):
    """Best average of the indicator of (center-h, center+h) over
    intervals through x: 1 on the interval, 2/(1 + d/h) at distance d
    outside.  Circle mode measures d along the circle."""
    if halfwidth <= 0.0:
        raise ValueError("halfwidth must be positive")
    _check_mode(mode)
    x = np.asarray(x, dtype=float)
    if mode == MODE_CIRCLE:
        d = np.abs(np.mod(x - center + math.pi, TWO_PI) - math.pi)
    else:
        d = np.abs(x - center)
    return 2.0 / (1.0 + np.maximum(1.0, d / halfwidth))


@dataclass(frozen=True)
class BumpEnvelope:
    """Pointwise max of height_k * star-profile of (c_k - y_k, c_k + y_k)."""

    centers: np.ndarray
    halfwidths: np.ndarray
    heights: np.ndarray
    mode: str = MODE_HALFPLANE

    def __post_init__(self):
        c = np.asarray(self.centers, dtype=float)
        y = np.asarray(self.halfwidths, dtype=float)
        h = np.asarray(self.heights, dtype=float)
        for name, a in (("centers", c), ("halfwidths", y), ("heights", h)):
            object.__setattr__(self, name, a)
        if not (c.shape == y.shape == h.shape) or c.ndim != 1 or c.size == 0:
            raise ValueError("need matching nonempty bump arrays")
        if y.min() <= 0.0:
            raise ValueError("halfwidths must be positive")
        if h.min() < 0.0:
            raise ValueError("heights must be nonnegative")
        _check_mode(self.mode)

    def __len__(self) -> int:
        return self.centers.size

    def eval(self, x):
        x = np.asarray(x, dtype=float)
        scalar = x.ndim == 0
        xs = np.atleast_1d(x)
        out = np.zeros(xs.size)
        step = max(1, (1 << 22) // max(1, len(self)))
        for lo in range(0, xs.size, step):
            block = xs[lo:lo + step, None]
            if self.mode == MODE_CIRCLE:
                d = np.abs(np.mod(block - self.centers + math.pi, TWO_PI) - math.pi)
            else:
                d = np.abs(block - self.centers)
            prof = 2.0 / (1.0 + np.maximum(1.0, d / self.halfwidths))
            out[lo:lo + step] = (self.heights * prof).max(axis=1)
        return float(out[0]) if scalar else out

    def max_height(self) -> float:
        return float(self.heights.max())

    def superlevel_intervals(self, t: float):
        """Half-widths of {bump_k > t} about each center: y_k(2 h_k/t - 1)
        for active bumps (empty above the height)."""
        if t <= 0.0:
            raise ValueError("level must be positive")
        act = self.heights > t
        w = self.halfwidths[act] * (2.0 * self.heights[act] / t - 1.0)
        return self.centers[act], w

    def superlevel_measure(self, t: float, window=None) -> float:
        c, w = self.superlevel_intervals(t)
        if c.size == 0:
            return 0.0
        if self.mode == MODE_CIRCLE:
            w = np.minimum(w, math.pi)
            if w.max() >= math.pi:
                return TWO_PI
            lo = np.mod(c - w, TWO_PI)
            segs_l, segs_r = [], []
            for a, width in zip(lo, 2.0 * w):
                b = a + width
                if b <= TWO_PI:
                    segs_l.append(a)
                    segs_r.append(b)
                else:
                    segs_l.extend((a, 0.0))
                    segs_r.extend((TWO_PI, b - TWO_PI))
            l = np.array(segs_l)
            r = np.array(segs_r)
        else:
            l = c - w
            r = c + w
            if window is not None:
                a, b = window
                l = np.clip(l, a, b)
                r = np.clip(r, a, b)
        order = np.argsort(l, kind="stable")
        l, r = l[order], r[order]
        reach = np.maximum.accumulate(r)
        prev = np.concatenate(([l[0]], reach[:-1]))
        return float(np.maximum(0.0, r - np.maximum(l, prev)).sum())


def bump_envelope(points, values=None, aperture: float = 1.0,
                  mode: str = MODE_CIRCLE) -> BumpEnvelope:
    """Envelope over the shadow intervals of the given points."""
    _check_mode(mode)
    if mode == MODE_CIRCLE:
        if not isinstance(points, PointSequence):
            raise TypeError("circle mode expects a PointSequence")
        if values is None:
            values = points.values
        if values is None:
            raise ValueError("no value channel on the sequence and none supplied")
        cs, hs = [], []
        for p in points:
            arc = shadow(p, aperture)
            cs.append(math.remainder(arc.start + arc.length / 2.0, TWO_PI))
            hs.append(min(arc.length / 2.0, math.pi))
        return BumpEnvelope(np.array(cs), np.array(hs), np.asarray(values, float), mode)
    if values is None:
        raise ValueError("half-plane mode needs explicit values")
    pieces = _pieces_halfplane(points, values, aperture)
    c = np.array([(l + r) / 2.0 for l, r, _ in pieces])
    y = np.array([(r - l) / 2.0 for l, r, _ in pieces])
    return BumpEnvelope(c, y, np.asarray(values, dtype=float), mode)


@dataclass(frozen=True)
class WeakL1Report:
    """sup_t t*|{f > t}| with the maximizing level and a sampled tail.

    For step functions the sup is exact and sits at a distribution
    breakpoint (reported as that value).  For envelopes the sweep runs
    over birth levels, adjacent touching/edge-swap levels, window-clip
    levels, and a log-spaced fill, each evaluated just below the event.
    vanishing is a finite-scale reading of the t -> infinity limit: the
    top decade of sampled levels contributes at most 5% of the sup.
    """

    sup: float
    t_star: float
    sample_ts: np.ndarray
    sample_products: np.ndarray
    vanishing: bool
    mode: str
    window: tuple | None = None

    def measure_at(self, t: float) -> float:
        if t <= 0.0:
            raise ValueError("level must be positive")
        j = int(np.argmin(np.abs(np.log(self.sample_ts) - math.log(t))))
        return float(self.sample_products[j] / self.sample_ts[j])


def _vanishing(ts: np.ndarray, prods: np.ndarray, sup: float) -> bool:
    if sup <= 0.0:
        return True
    top = ts >= ts.max() * 0.1
    return bool(prods[top].max() <= 0.05 * sup)


def _weak_l1_step(f: BoundaryStepFunction, window) -> WeakL1Report:
    widths = f.cell_widths()
    values = f.values
    if window is not None:
        if f.mode == MODE_CIRCLE:
            raise ValueError("window applies to half-plane mode only")
        a, b = window
        lefts = f.edges[:-1]
        rights = f.edges[1:]
        widths = np.maximum(0.0, np.minimum(rights, b) - np.maximum(lefts, a))
    pos = values > 0.0
    if not pos.any():
        ts = np.array([1.0])
        return WeakL1Report(0.0, 0.0, ts, np.zeros(1), True, f.mode, window)
    v = values[pos]
    wd = widths[pos]
    order = np.argsort(-v, kind="stable")
    v, wd = v[order], wd[order]
    cum = np.cumsum(wd)
    distinct = np.flatnonzero(np.diff(np.append(v, -1.0)) != 0.0)
    levels = v[distinct]
    sigma = cum[distinct]
    prod = levels * sigma
    j = int(np.argmax(prod))
    sup, t_star = float(prod[j]), float(levels[j])
    lo = max(levels[-1] * 0.5, levels[0] * 1e-9)
    ts = np.geomspace(lo, levels[0] * 1.1, 49)
    pos_idx = np.searchsorted(-levels, -ts, side="right") - 1
    sig = np.where(pos_idx >= 0, sigma[np.clip(pos_idx, 0, sigma.size - 1)], 0.0)
    sig = np.where(ts >= levels[0], 0.0, sig)
    prods = ts * sig
    return WeakL1Report(sup, t_star, ts, prods, _vanishing(ts, prods, sup),
                        f.mode, window)


def _envelope_levels(e: BumpEnvelope, window, samples: int) -> np.ndarray:
    c = e.centers
    y = e.halfwidths
    p = e.heights
    pos = p > 0.0
    cand = [p[pos] * _JUST_BELOW]
    order = np.argsort(c, kind="stable")
    cs, ys, ps = c[order], y[order], p[order]
    gap = cs[1:] - cs[:-1]
    moment = ys * ps
    with np.errstate(divide="ignore", invalid="ignore"):
        touch = 2.0 * (moment[:-1] + moment[1:]) / (gap + ys[:-1] + ys[1:])
        swap = 2.0 * (moment[:-1] - moment[1:]) / (gap + ys[:-1] - ys[1:])
    cand.append(touch[np.isfinite(touch) & (touch > 0.0)])
    cand.append(swap[np.isfinite(swap) & (swap > 0.0)])
    if window is not None:
        a, b = window
        yp = y * p
        for dist in (b - c, c - a):
            den = dist + y
            ok = den > 0.0
            cand.append(2.0 * yp[ok] / den[ok])
    levels = np.concatenate(cand)
    pmax = float(p.max())
    levels = levels[(levels > 0.0) & (levels <= pmax)]
    lo = pmax * 1e-9 if levels.size == 0 else max(levels.min() * 0.5, pmax * 1e-9)
    fill = np.geomspace(lo, pmax, samples)
    out = np.unique(np.concatenate([levels, levels * _JUST_BELOW, fill]))
    return out[out > 0.0]


def _weak_l1_envelope(e: BumpEnvelope, window, samples: int) -> WeakL1Report:
    if e.mode == MODE_HALFPLANE:
        if window is None:
            raise ValueError(
                "half-plane envelopes have unbounded support; pass an explicit window")
        a, b = window
        if not b > a:
            raise ValueError("window must be a nonempty interval (a, b)")
    elif window is not None:
        raise ValueError("window applies to half-plane mode only")
    if e.max_height() <= 0.0:
        ts = np.array([1.0])
        return WeakL1Report(0.0, 0.0, ts, np.zeros(1), True, e.mode, window)
    ts = _envelope_levels(e, window, samples)
    prods = np.array([t * e.superlevel_measure(t, window) for t in ts])
    j = int(np.argmax(prods))
    return WeakL1Report(float(prods[j]), float(ts[j]), ts, prods,
                        _vanishing(ts, prods, float(prods[j])), e.mode, window)


def weak_l1(f, window=None, samples: int = 96) -> WeakL1Report:
    """Weak-L1 statistic of a step function or bump envelope."""
    if isinstance(f, BoundaryStepFunction):
        return _weak_l1_step(f, window)
    if isinstance(f, BumpEnvelope):
        return _weak_l1_envelope(f, window, samples)
    raise TypeError("expected BoundaryStepFunction or BumpEnvelope")


EPS_CONST = "const"
EPS_LOG = "log"


@dataclass(frozen=True)
class HalfPlaneFamily:
    """Points x_k + i y_k with values phi_k = eps_k k^(beta-1), k = 1..K.

    x_k = k^-alpha, y_k = k^-beta with beta >= 2(alpha+1), so shadows
    are pairwise disjoint and shrink much faster than their gaps.  The
    eps rule "const" keeps eps_k = 1; "log" uses 1/log10(k) (capped at
    the k=2 value below k=2) so that sum eps_k/k still diverges.
    """

    alpha: float
    beta: float
    eps_rule: str
    xs: np.ndarray
    ys: np.ndarray
    phis: np.ndarray
    eps: np.ndarray
    tags: tuple = ()

    def __len__(self) -> int:
        return self.xs.size

    def points(self) -> tuple:
        return tuple(HalfPlanePoint(x, y) for x, y in zip(self.xs, self.ys))

    def envelope(self) -> BumpEnvelope:
        return BumpEnvelope(self.xs, self.ys, self.phis, MODE_HALFPLANE)

    def max_step(self, aperture: float = 1.0) -> BoundaryStepFunction:
        return nontangential_max(self.points(), self.phis, aperture, MODE_HALFPLANE)

    def series_partial(self, upto: int) -> float:
        """sum_{k <= upto} eps_k / k, the divergence witness for the log rule."""
        n = min(upto, len(self))
        return fsum(self.eps[k - 1] / k for k in range(1, n + 1))

    def weighted_shadow_sum(self, upto: int | None = None) -> float:
        """sum phi_k y_k, the summability statistic behind the max test."""
        n = len(self) if upto is None else min(upto, len(self))
        return fsum(self.phis[k] * self.ys[k] for k in range(n))


def counterexample_family(alpha: float, beta: float, eps_rule: str = EPS_CONST,
                          size: int = 10_000) -> HalfPlaneFamily:
    """The sharpness family separating the two maximal-function tests."""
    if beta < 2.0 * (alpha + 1.0):
        raise ValueError("need beta >= 2(alpha + 1)")
    if size < 10:
        raise ValueError("need at least 10 points")
    k = np.arange(1, size + 1, dtype=float)
    if eps_rule == EPS_CONST:
        eps = np.ones(size)
        tags = ("MAX_WEAK_L1", "ENVELOPE_WEAK_L1_FAILS")
    elif eps_rule == EPS_LOG:
        eps = 1.0 / np.log10(np.maximum(k, 2.0))
        tags = ("ENVELOPE_WEAK_L1", "EPS_SERIES_DIVERGES", "NO_MAJORANT_EXPECTED")
    else:
        raise ValueError(f"unknown eps rule {eps_rule!r}")
    xs = k ** (-alpha)
    ys = k ** (-beta)
    phis = eps * k ** (beta - 1.0)
    return HalfPlaneFamily(alpha, beta, eps_rule, xs, ys, phis, eps, tags)


def analytic_superlevel_measure(family: HalfPlaneFamily, t: float) -> float:
    """Semi-analytic model of |{envelope > t}| for the sharpness family.

    k0 = first k with t < phi_k; J_k = (x_k - y_k phi_k / t, x_k + y_k
    phi_k / t); k1 = first k where J_k meets J_{k+1} (cap at the family
    size).  Returns k1^-alpha + (2/t) sum_{k=k0}^{k1} phi_k / k^beta.
    Carries the model's unknown constants: use for factor-level
    cross-checks, not equality.
    """
    if t <= 0.0:
        raise ValueError("level must be positive")
    phis = family.phis
    above = np.flatnonzero(phis > t)
    if above.size == 0:
        return 0.0
    k0 = int(above[0]) + 1
    h = family.ys * phis / t
    lo = family.xs - h
    hi = family.xs + h
    overlap = np.flatnonzero(lo[:-1] <= hi[1:])
    k1 = int(overlap[0]) + 1 if overlap.size else len(family)
    k = np.arange(k0, k1 + 1, dtype=float)
    tail = float(np.sum(phis[k0 - 1:k1] / k ** family.beta)) if k1 >= k0 else 0.0
    return k1 ** (-family.alpha) + 2.0 * tail / t
