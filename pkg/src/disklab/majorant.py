"""Discretized harmonic-majorant tests as linear programs.

Existence of a positive harmonic function dominating prescribed values
at prescribed points is relaxed to a finite covering program: boundary
mass sits on 2^m equispaced nodes and must push the Poisson kernel
above each target value.  The packing dual prices the targets; equal
optimal values with verified certificates make the finite-scale answer
trustworthy.  Both programs run through the same deterministic simplex.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .blaschke import PointSequence, blaschke_defect
from .harmonic import BalayageSup, BoundaryDensity, DiskMeasure, balayage_sup, kernel_matrix
from .geometry import TWO_PI
from .simplex import IllConditioned, LPError, solve_standard

FEAS_TOL = 1e-7
GAP_TOL = 1e-6
PIVOT_TOL = 1e-10
COND_LIMIT = 1e12
GROWTH_SLOPE = 0.05
STABLE_INCREMENT = 0.05
CONCENTRATION = 0.99


class MajorantProblem:
    """Targets (z_i, v_i) against the 2^m-node boundary grid."""

    def __init__(self, zs, values, depth: int):
        self.zs = np.asarray(zs, dtype=complex)
        self.values = np.asarray(values, dtype=float)
        if self.zs.shape != self.values.shape or self.zs.ndim != 1 or self.zs.size == 0:
            raise ValueError("need matching nonempty target arrays")
        if np.abs(self.zs).max() >= 1.0:
            raise ValueError("targets must lie inside the disk")
        if self.values.min() < 0.0:
            raise ValueError("target values must be nonnegative")
        if not (1 <= depth <= 14):
            raise ValueError("grid depth must lie in [1, 14]")
        self.depth = depth
        self.n_nodes = 1 << depth
        self.thetas = TWO_PI * np.arange(self.n_nodes) / self.n_nodes

    def kernel(self) -> np.ndarray:
        return kernel_matrix(self.zs, self.thetas)


@dataclass(frozen=True)
class PrimalCertificate:
    """Node masses alpha whose swept kernel covers every target."""

    depth: int
    node_masses: np.ndarray
    total_mass: float
    condition: float

    def verify(self, problem: MajorantProblem, feas_tol: float = FEAS_TOL) -> float:
        """Worst relative shortfall, re-evaluated through the independent
        Poisson-integral path (positive means infeasible beyond feas_tol)."""
        support = self.node_masses > 0.0
        w = BoundaryDensity.atoms_only(problem.thetas[support], self.node_masses[support])
        worst = -math.inf
        for z, v in zip(problem.zs, problem.values):
            worst = max(worst, (v - w.poisson(z)) / (1.0 + v) - feas_tol)
        return worst

    def to_density(self) -> BoundaryDensity:
        n = self.node_masses.size
        edges = TWO_PI * np.arange(n) / n
        return BoundaryDensity(edges, self.node_masses * n)

    def concentration(self) -> tuple[float, float]:
        """Share of mass on the best node plus its better neighbor, and
        the node angle; the atom-like signature of a singular majorant."""
        a = self.node_masses
        if self.total_mass <= 0.0 or a.size == 0:
            return 0.0, 0.0
        j = int(np.argmax(a))
        n = a.size
        pair = a[j] + max(a[(j - 1) % n], a[(j + 1) % n])
        return float(pair / self.total_mass), float(TWO_PI * j / n)


@dataclass(frozen=True)
class DualCertificate:
    """Target coefficients c >= 0 with the swept kernel bounded by 1 on the grid."""

    depth: int
    coeffs: np.ndarray
    objective: float

    def verify(self, problem: MajorantProblem, feas_tol: float = FEAS_TOL) -> float:
        """Worst constraint excess (positive means infeasible beyond feas_tol)."""
        load = self.coeffs @ problem.kernel()
        return float(load.max() - 1.0 - feas_tol)


def solve_primal(problem: MajorantProblem, *, feas_tol: float = FEAS_TOL,
                 gap_tol: float = GAP_TOL, pivot_tol: float = PIVOT_TOL,
                 cond_limit: float = COND_LIMIT) -> PrimalCertificate:
    """Minimal grid mass covering the targets, with certified optimality.

    Covering LP over alpha >= 0: min sum alpha, K alpha >= v.  The dual
    vector of the final basis is checked for feasibility and strong
    duality before the certificate is returned.
    """
    K = problem.kernel()
    t, n = K.shape
    A = np.hstack([K, -np.eye(t)])
    c = np.concatenate([np.ones(n), np.zeros(t)])
    res = solve_standard(c, A, problem.values, pivot_tol=pivot_tol)
    if res.condition > cond_limit:
        raise IllConditioned(res.condition, f"(grid depth {problem.depth})")
    alpha = res.x[:n]
    cert = PrimalCertificate(problem.depth, alpha, res.objective, res.condition)
    y = res.dual
    if np.isfinite(y).all():
        if y.min() < -feas_tol or (y @ K).max() > 1.0 + feas_tol:
            raise LPError("primal solve produced a dual-infeasible basis")
        if abs(y @ problem.values - res.objective) > gap_tol * (1.0 + abs(res.objective)):
            raise LPError("complementary slackness check failed")
    if cert.verify(problem, feas_tol) > 0.0:
        raise LPError("primal certificate failed independent re-verification")
    return cert


def solve_dual(problem: MajorantProblem, *, pivot_tol: float = PIVOT_TOL,
               cond_limit: float = COND_LIMIT) -> DualCertificate:
    """Max priced target mass with kernel load <= 1 at every node (packing LP)."""
    K = problem.kernel()
    t, n = K.shape
    A = np.hstack([K.T, np.eye(n)])
    c = np.concatenate([-problem.values, np.zeros(n)])
    res = solve_standard(c, A, np.ones(n), pivot_tol=pivot_tol)
    if res.condition > cond_limit:
        raise IllConditioned(res.condition, f"(grid depth {problem.depth})")
    return DualCertificate(problem.depth, res.x[:t], -res.objective)


@dataclass(frozen=True)
class LevelResult:
    depth: int
    status: str
    mass: float | None = None
    dual_value: float | None = None
    gap: float | None = None
    concentration: float | None = None
    concentration_theta: float | None = None


@dataclass(frozen=True)
class MajorantVerdict:
    levels: tuple
    trend: str
    singular_like: bool
    singular_theta: float | None
    density: BoundaryDensity | None
    thresholds: dict = field(default_factory=dict)

    def masses(self) -> list:
        return [l.mass for l in self.levels if l.status == "ok"]


def _classify_masses(ms: list) -> str:
    if not ms:
        return "INCONCLUSIVE"
    if max(ms) <= 0.0:
        return "BOUNDED"
    if len(ms) >= 3:
        tail = ms[-3:]
        rel = [abs(tail[i + 1] - tail[i]) / max(tail[i], 1e-300) for i in range(2)]
        if all(r < STABLE_INCREMENT for r in rel):
            return "BOUNDED"
    if len(ms) >= 3 and min(ms) > 0.0:
        x = np.arange(len(ms), dtype=float)
        slope = float(np.polyfit(x, np.log(ms), 1)[0])
        if slope > GROWTH_SLOPE:
            return "GROWING"
    return "INCONCLUSIVE"


def majorant_test(seq: PointSequence, levels, values=None, *,
                  feas_tol: float = FEAS_TOL, gap_tol: float = GAP_TOL) -> MajorantVerdict:
    """Run both programs per grid level on (lambda, phi(lambda)) targets.

    BOUNDED: optimal mass stabilized over the last three levels.
    GROWING: log-mass regresses on the level with slope above threshold.
    Otherwise INCONCLUSIVE.  A finite-scale diagnostic, not a theorem:
    the verdict and certificates refer to the given grids only.
    """
    if values is None:
        values = blaschke_defect(seq).values
    values = np.asarray(values, dtype=float)
    results = []
    last_cert = None
    for m in sorted(levels):
        problem = MajorantProblem(seq.zs, values, m)
        try:
            p = solve_primal(problem, feas_tol=feas_tol, gap_tol=gap_tol)
            d = solve_dual(problem)
        except IllConditioned:
            results.append(LevelResult(m, "ILL_CONDITIONED"))
            continue
        gap = abs(p.total_mass - d.objective)
        if gap > gap_tol * (1.0 + abs(p.total_mass)):
            results.append(LevelResult(m, "GAP_FAIL", p.total_mass, d.objective, gap))
            continue
        conc, ctheta = p.concentration()
        results.append(LevelResult(m, "ok", p.total_mass, d.objective, gap, conc, ctheta))
        last_cert = p
    trend = _classify_masses([r.mass for r in results if r.status == "ok"])
    singular = False
    stheta = None
    density = None
    if last_cert is not None:
        conc, ctheta = last_cert.concentration()
        singular = conc >= CONCENTRATION and last_cert.total_mass > 0.0
        stheta = ctheta if singular else None
        if trend == "BOUNDED":
            density = last_cert.to_density()
    return MajorantVerdict(tuple(results), trend, singular, stheta, density,
                           {"stable_increment": STABLE_INCREMENT,
                            "growth_slope": GROWTH_SLOPE,
                            "concentration": CONCENTRATION})


def dual_ratio(seq: PointSequence, coeffs, depth: int = 12, values=None) -> float:
    """sum c phi / sup of the balayage of sum c delta_lambda.

    The duality heuristic: ratios near or above 1 witness obstruction.
    All-zero coefficients leave the ratio undefined.
    """
    coeffs = np.asarray(coeffs, dtype=float)
    if coeffs.shape != (len(seq),) or coeffs.min() < 0.0:
        raise ValueError("need one nonnegative coefficient per point")
    if not coeffs.any():
        raise ValueError("EMPTY: all coefficients vanish")
    if values is None:
        values = blaschke_defect(seq).values
    mask = coeffs > 0.0
    mu = DiskMeasure(seq.zs[mask], coeffs[mask])
    sup = balayage_sup(mu, depth)
    return float(np.dot(coeffs, values) / sup.value)


def dual_ratio_probe(seq: PointSequence, depth: int = 12, max_exhaustive: int = 16):
    """Experimental probe of the restricted dual: coefficients in
    {0, 1-|lambda|} per point, exhaustive for small sequences, greedy
    beyond.  Returns (best ratio, chosen coefficient vector)."""
    n = len(seq)
    base = seq.one_minus_abs()
    values = blaschke_defect(seq).values
    best = (-math.inf, None)
    if n <= max_exhaustive:
        for bits in itertools.product((0, 1), repeat=n):
            if not any(bits):
                continue
            c = base * np.array(bits, dtype=float)
            r = dual_ratio(seq, c, depth, values=values)
            if r > best[0]:
                best = (r, c)
    else:
        chosen = np.zeros(n)
        current = -math.inf
        improved = True
        while improved:
            improved = False
            for i in range(n):
                if chosen[i]:
                    continue
                c = chosen.copy()
                c[i] = base[i]
                r = dual_ratio(seq, c, depth, values=values)
                if r > current:
                    current, chosen, improved = r, c, True
        best = (current, chosen)
    return best


@dataclass(frozen=True)
class WeightReport:
    """Tail behavior of s = (1-|lambda|) phi(lambda), ordered by |lambda|.

    vanishing: s appears to tend to 0 (tail max well under head max).
    bounded:   s appears bounded (tail comparable to head).
    summable:  partial sums appear to converge (small last-quartile share).
    Convenience judgments at finite scale; the arrays carry the evidence.
    """

    values: np.ndarray
    running_sup: np.ndarray
    partial_sums: np.ndarray
    head_max: float
    tail_max: float
    vanishing: bool
    bounded: bool
    summable: bool


def weight_report(seq: PointSequence, values=None) -> WeightReport:
    if values is None:
        values = blaschke_defect(seq).values
    order = np.argsort(np.abs(seq.zs), kind="stable")
    s = (seq.one_minus_abs() * np.asarray(values, dtype=float))[order]
    n = s.size
    q = max(1, (3 * n) // 4)
    head = float(s[:q].max()) if q else 0.0
    tail = float(s[q:].max()) if q < n else 0.0
    partial = np.cumsum(s)
    total = float(partial[-1]) if n else 0.0
    tail_share = float(s[q:].sum() / total) if total > 0 else 0.0
    return WeightReport(
        values=s,
        running_sup=np.maximum.accumulate(s),
        partial_sums=partial,
        head_max=head,
        tail_max=tail,
        vanishing=(tail <= 0.25 * head) if head > 0 else True,
        bounded=(tail <= 2.0 * head) if head > 0 else True,
        summable=tail_share <= 0.10,
    )


@dataclass(frozen=True)
class TraceReport:
    """Membership statistics for boundary data a on the sequence.

    growth_sup = sup (1-|lambda|) log+ |a|   (finite <=> tempered growth)
    growth_sum = sum (1-|lambda|) log+ |a|   (finite <=> summable growth)
    verdict    = finite-scale majorant test on the log+ |a| targets.
    """

    growth_sup: float
    growth_sum: float
    verdict: MajorantVerdict


def trace_membership(seq: PointSequence, values=None, log_values=None,
                     levels=range(6, 11)) -> TraceReport:
    if (values is None) == (log_values is None):
        raise ValueError("pass exactly one of values, log_values")
    if log_values is None:
        v = np.asarray(values, dtype=float)
        if v.min() <= 0.0:
            raise ValueError("trace values must be positive; pass log_values for log-domain data")
        log_values = np.log(v)
    logplus = np.maximum(np.asarray(log_values, dtype=float), 0.0)
    weighted = seq.one_minus_abs() * logplus
    verdict = majorant_test(seq, levels, values=logplus)
    return TraceReport(float(weighted.max()), float(weighted.sum()), verdict)
