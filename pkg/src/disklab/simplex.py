"""Dense two-phase simplex with Bland's anti-cycling rule.

Small and deterministic on purpose: the discretized majorant programs
this solves have at most a few thousand columns, certificates must be
reproducible bit-for-bit across runs, and Bland's rule (smallest
eligible index enters, smallest basic index leaves on ratio ties)
guarantees termination without perturbation tricks.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class LPError(Exception):
    pass


class IllConditioned(LPError):
    """Final basis condition estimate exceeded the trust limit."""

    def __init__(self, condition: float, context: str = ""):
        self.condition = condition
        self.context = context
        super().__init__(f"basis condition estimate {condition:.3e} beyond limit {context}".strip())


@dataclass(frozen=True)
class SimplexResult:
    x: np.ndarray
    objective: float
    dual: np.ndarray
    basis: tuple
    condition: float
    iterations: int


def _pivot(T, obj, basis, row, col):
    T[row] /= T[row, col]
    factors = T[:, col].copy()
    factors[row] = 0.0
    T -= np.outer(factors, T[row])
    T[:, col] = 0.0
    T[row, col] = 1.0
    obj -= obj[col] * T[row]
    obj[col] = 0.0
    basis[row] = col


def _bland_loop(T, obj, basis, allowed, pivot_tol, max_iter):
    """Pivot until no allowed column prices out negative; returns pivots done.

    obj is the reduced-cost row with the negated objective value in its
    last slot; both are updated in place.
    """
    it = 0
    basis_arr = basis
    while True:
        eligible = np.flatnonzero(allowed & (obj[:-1] < -pivot_tol))
        if eligible.size == 0:
            return it
        enter = int(eligible[0])
        col = T[:, enter]
        rows = np.flatnonzero(col > pivot_tol)
        if rows.size == 0:
            raise LPError("unbounded program")
        ratios = T[rows, -1] / col[rows]
        best = ratios.min()
        tied = rows[ratios <= best + 1e-12 * (1.0 + abs(best))]
        leave = int(tied[np.argmin([basis_arr[i] for i in tied])])
        _pivot(T, obj, basis_arr, leave, enter)
        it += 1
        if it > max_iter:
            raise LPError(f"iteration limit {max_iter} exceeded")


def solve_standard(c, A, b, *, pivot_tol=1e-10, feas_tol=1e-9, max_iter=None) -> SimplexResult:
    """Minimize c.x subject to A x = b, x >= 0.

    Two phases: artificial variables open a feasible basis, then the
    true costs are priced.  Returns the primal solution, its objective,
    the dual vector of the final basis (in the caller's row order and
    signs), the basis, and a condition estimate of the basis matrix;
    callers decide how much to trust the certificate.
    """
    A = np.array(A, dtype=float)
    b = np.array(b, dtype=float)
    c = np.array(c, dtype=float)
    m, n = A.shape
    if max_iter is None:
        max_iter = 2000 + 40 * (m + n)
    flip = b < 0
    A[flip] *= -1.0
    b = np.abs(b)

    # phase 1 tableau [A | I | b]; artificial costs price as column sums
    T = np.empty((m, n + m + 1))
    T[:, :n] = A
    T[:, n:n + m] = np.eye(m)
    T[:, -1] = b
    basis = list(range(n, n + m))
    obj = np.zeros(n + m + 1)
    obj[:n] = -T[:, :n].sum(axis=0)
    obj[-1] = -b.sum()
    allowed = np.ones(n + m, dtype=bool)
    it1 = _bland_loop(T, obj, basis, allowed, pivot_tol, max_iter)
    if -obj[-1] > feas_tol * (1.0 + b.sum()):
        raise LPError(f"infeasible: phase-1 residual {-obj[-1]:.3e}")

    # drive leftover artificials out; rows that cannot pivot are redundant
    rows_kept = list(range(m))
    drop = []
    for i in range(len(basis)):
        if basis[i] >= n:
            j = next((j for j in range(n) if abs(T[i, j]) > pivot_tol), -1)
            if j < 0:
                drop.append(i)
            else:
                _pivot(T, obj, basis, i, j)
    if drop:
        keep = [i for i in range(len(basis)) if i not in drop]
        T = T[keep]
        basis = [basis[i] for i in keep]
        rows_kept = keep

    # phase 2 on the true costs
    allowed[n:] = False
    cb = np.array([c[j] for j in basis])
    obj = np.empty(T.shape[1])
    obj[:-1] = np.concatenate([c, np.zeros(m)]) - cb @ T[:, :-1]
    obj[-1] = -(cb @ T[:, -1])
    for j in basis:
        obj[j] = 0.0
    it2 = _bland_loop(T, obj, basis, allowed, pivot_tol, max_iter)

    x = np.zeros(n)
    for i, j in enumerate(basis):
        x[j] = T[i, -1]
    objective = float(c @ x)

    Bmat = A[np.ix_(rows_kept, basis)]
    cb = c[basis]
    try:
        y = np.linalg.solve(Bmat.T, cb)
        condition = float(np.linalg.cond(Bmat))
    except np.linalg.LinAlgError:
        y = np.full(len(rows_kept), np.nan)
        condition = float("inf")
    dual = np.zeros(m)
    dual[rows_kept] = y
    dual[flip] *= -1.0
    return SimplexResult(x, objective, dual, tuple(basis), condition, it1 + it2)
