"""Independent brute-force references used by the test suite.

Everything here is deliberately naive: direct enumeration, plain loops,
textbook formulas.  None of it shares code paths with the library.
"""

import itertools
import math

import numpy as np


def enumerate_bfs(c, A, b, tol=1e-11):
    """Minimum objective over all basic feasible solutions of
    min c.x s.t. Ax = b, x >= 0.  None if infeasible."""
    A = np.asarray(A, dtype=float)
    b = np.asarray(b, dtype=float)
    c = np.asarray(c, dtype=float)
    m, n = A.shape
    best = None
    for cols in itertools.combinations(range(n), m):
        B = A[:, cols]
        try:
            x = np.linalg.solve(B, b)
        except np.linalg.LinAlgError:
            continue
        if not np.all(np.isfinite(x)):
            continue
        if np.all(x >= -tol):
            obj = float(np.dot(c[list(cols)], x))
            if best is None or obj < best:
                best = obj
    return best


def _is_ancestor(a, b):
    """True when dyadic node a = (n,k) is a strict ancestor of b."""
    (na, ka), (nb, kb) = a, b
    return na < nb and (kb >> (nb - na)) == ka


def brute_antichain(items):
    """Best antichain payoff by enumerating subsets of the support.

    items: dict {(n, k): weight}.  Payoff of a node is weight * 2^-n.
    Zero-weight nodes never help, so restricting to the support is
    exact.  Only usable for small supports.
    """
    support = [k for k, w in items.items() if w > 0.0]
    best, best_set = 0.0, ()
    for r in range(1, len(support) + 1):
        for sub in itertools.combinations(support, r):
            if any(_is_ancestor(a, b) or _is_ancestor(b, a)
                   for a, b in itertools.combinations(sub, 2)):
                continue
            pay = sum(items[(n, k)] * 2.0 ** -n for n, k in sub)
            if pay > best:
                best, best_set = pay, sub
    return best, best_set


def shadow_max_at(theta, args, halfwidths, values):
    """Nontangential maximum at boundary angle theta by direct loop."""
    best = 0.0
    for a, h, v in zip(args, halfwidths, values):
        d = abs(math.remainder(theta - a, 2.0 * math.pi))
        if d <= h and v > best:
            best = v
    return best


def shadow_sum_at(theta, args, halfwidths, values):
    total = 0.0
    for a, h, v in zip(args, halfwidths, values):
        d = abs(math.remainder(theta - a, 2.0 * math.pi))
        if d <= h:
            total += v
    return total


def interval_union_measure(intervals):
    """Total length of a union of (lo, hi) intervals."""
    ivs = sorted((lo, hi) for lo, hi in intervals if hi > lo)
    total = 0.0
    cur_lo, cur_hi = None, None
    for lo, hi in ivs:
        if cur_hi is None or lo > cur_hi:
            if cur_hi is not None:
                total += cur_hi - cur_lo
            cur_lo, cur_hi = lo, hi
        elif hi > cur_hi:
            cur_hi = hi
    if cur_hi is not None:
        total += cur_hi - cur_lo
    return total


def grid_superlevel_measure(f_eval, t, lo, hi, n=2_000_001):
    """Riemann estimate of |{f > t}| inside [lo, hi]."""
    xs = np.linspace(lo, hi, n)
    return float(np.mean(f_eval(xs) > t) * (hi - lo))
