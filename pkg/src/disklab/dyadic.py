"""Antichain suprema over the dyadic tree of boundary arcs.

Weights live on Whitney/dyadic indices (n, k); the payoff of a node is
weight * 2^-n (the generation's arc measure).  The supremum of the
payoff sum over antichains (no node an ancestor of another) is computed
by one bottom-up pass: S(v) = max(own(v), sum of S over children).
A finite, stable supremum as depth grows is the discrete signature that
the aggregated data admits an integrable harmonic majorant; linear
growth along a chain of incomparable nodes is the standard way it
fails.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .geometry import DyadicIndex, locate


class DyadicWeights:
    """Nonnegative weights on dyadic indices, sparse dict keyed by (n, k)."""

    def __init__(self, items: dict):
        self.items = {}
        for (n, k), w in items.items():
            DyadicIndex(n, k)  # validates the index range
            w = float(w)
            if w < 0.0:
                raise ValueError(f"negative weight at ({n}, {k})")
            self.items[(n, k)] = w

    @property
    def max_gen(self) -> int:
        return max((n for (n, _) in self.items), default=0)

    def get(self, n: int, k: int) -> float:
        return self.items.get((n, k), 0.0)

    def restrict(self, max_gen: int) -> "DyadicWeights":
        return DyadicWeights({ix: w for ix, w in self.items.items() if ix[0] <= max_gen})


def aggregate_sup(seq, values, max_gen: int) -> DyadicWeights:
    """Per-square sup of a point channel: weight[(n,k)] = max of values
    over points located in that Whitney square.

    Points deeper than max_gen violate the truncation contract and are
    reported, never silently dropped.
    """
    idx = [locate(p) for p in seq]
    deep = [(i, ix.n) for i, ix in enumerate(idx) if ix.n > max_gen]
    if deep:
        raise ValueError(
            f"{len(deep)} points lie deeper than generation {max_gen}: "
            + ", ".join(f"point {i} at generation {n}" for i, n in deep[:8])
        )
    values = np.asarray(values, dtype=float)
    if values.shape != (len(idx),):
        raise ValueError("value channel length does not match point count")
    out: dict = {}
    for ix, v in zip(idx, values):
        key = (ix.n, ix.k)
        if key not in out or v > out[key]:
            out[key] = float(v)
    return DyadicWeights(out)


@dataclass(frozen=True)
class AntichainResult:
    value: float
    witness: tuple  # ((n, k), ...) achieving the value

    def witness_payoff(self, weights: DyadicWeights) -> float:
        return sum(weights.get(n, k) * 2.0 ** (-n) for (n, k) in self.witness)


def antichain_supremum(weights: DyadicWeights) -> AntichainResult:
    """Max over antichains A of sum over A of weight * 2^-n.

    Ties between a node and its children's best antichains resolve to
    the shallower node.  The empty antichain (value 0) is the floor.
    """
    occupied = set(weights.items)
    nodes = set()
    for (n, k) in occupied:
        while (n, k) not in nodes:
            nodes.add((n, k))
            if n == 0:
                break
            n, k = n - 1, k >> 1
    if not nodes:
        return AntichainResult(0.0, ())
    nodes.add((0, 0))
    children: dict = {v: [] for v in nodes}
    for v in nodes:
        if v[0] > 0:
            children[(v[0] - 1, v[1] >> 1)].append(v)
    best: dict = {}
    take_self: dict = {}
    for v in sorted(nodes, key=lambda t: -t[0]):
        own = weights.get(*v) * 2.0 ** (-v[0])
        sub = sum(best[c] for c in children[v])
        take_self[v] = own >= sub
        best[v] = own if own >= sub else sub
    if best[(0, 0)] <= 0.0:
        return AntichainResult(0.0, ())
    witness = []
    stack = [(0, 0)]
    while stack:
        v = stack.pop()
        if take_self[v]:
            witness.append(v)
        else:
            stack.extend(sorted(children[v], reverse=True))
    return AntichainResult(float(best[(0, 0)]), tuple(sorted(witness)))


@dataclass(frozen=True)
class AntichainReport:
    """Depth sweep of the antichain supremum with a growth classification."""

    depths: tuple
    values: tuple
    trend: str
    final: AntichainResult
    max_gen: int


def _classify_growth(values) -> str:
    """Trend of a depth sweep from the shape of its increments.

    Relative increments alone cannot separate an affine sweep from a
    convergent one once the accumulated value dominates, so the call is
    made on the increments themselves over the later half of the sweep:
    vanished increments mean the sweep has stabilized, collapsing ones
    mean it is converging, and sustained ones mean genuine growth.
    """
    v = [float(x) for x in values]
    if len(v) < 4 or v[-1] <= 0.0:
        return "INCONCLUSIVE"
    scale = max(abs(x) for x in v)
    window = v[-max(4, len(v) // 2):]
    incs = np.diff(window)
    if np.all(np.abs(incs) <= 1e-9 * scale):
        return "BOUNDED"
    k = incs.size // 2
    early = float(incs[:k].sum())
    late = float(incs[incs.size - k:].sum())
    if early > 0.0 and late <= 0.2 * early and abs(late) <= 0.01 * scale:
        return "BOUNDED"
    growth = window[-1] - window[0]
    if incs.min() >= 0.0 and growth >= 0.05 * scale and late >= 0.5 * early:
        return "GROWING"
    return "INCONCLUSIVE"


def antichain_report(weights: DyadicWeights, depth: int | None = None) -> AntichainReport:
    """Antichain suprema at truncations 1..depth and their growth trend."""
    if depth is None:
        depth = weights.max_gen
    depths = tuple(range(1, depth + 1))
    values = tuple(antichain_supremum(weights.restrict(d)).value for d in depths)
    return AntichainReport(depths, values, _classify_growth(values),
                           antichain_supremum(weights.restrict(depth)), depth)


def sequence_antichain_report(seq, values=None, depth: int | None = None) -> AntichainReport:
    """Aggregate a point channel (default: the Blaschke defect) onto
    Whitney squares and sweep the antichain supremum by depth."""
    if values is None:
        from .blaschke import blaschke_defect
        values = blaschke_defect(seq).values
    gens = [locate(p).n for p in seq]
    if depth is None:
        depth = max(gens, default=0)
    w = aggregate_sup(seq, values, depth)
    return antichain_report(w, depth)
