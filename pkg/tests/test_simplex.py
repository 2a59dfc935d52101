import numpy as np
import pytest

from oracles import enumerate_bfs

from disklab.simplex import LPError, solve_standard


def test_single_variable():
    res = solve_standard(np.array([1.0]), np.array([[1.0]]), np.array([3.0]))
    assert res.x[0] == pytest.approx(3.0)
    assert res.objective == pytest.approx(3.0)
    assert res.dual[0] == pytest.approx(1.0)


def test_two_variables_picks_cheaper_column():
    c = np.array([1.0, 2.0])
    A = np.array([[1.0, 1.0]])
    b = np.array([1.0])
    res = solve_standard(c, A, b)
    assert res.objective == pytest.approx(1.0)
    assert res.x == pytest.approx([1.0, 0.0])


def test_infeasible_raises():
    with pytest.raises(LPError):
        solve_standard(np.array([1.0]), np.array([[1.0]]), np.array([-1.0]))


def test_unbounded_raises():
    c = np.array([-1.0, 0.0])
    A = np.array([[1.0, -1.0]])
    b = np.array([0.0])
    with pytest.raises(LPError):
        solve_standard(c, A, b)


def test_redundant_row_is_dropped():
    A = np.array([[1.0, 1.0], [2.0, 2.0]])
    b = np.array([1.0, 2.0])
    res = solve_standard(np.array([1.0, 3.0]), A, b)
    assert res.objective == pytest.approx(1.0)


def test_random_instances_strong_duality():
    """Feasible-by-construction problems: primal/dual solutions agree
    and both certificates check out."""
    rng = np.random.default_rng(17)
    for _ in range(30):
        m = int(rng.integers(1, 5))
        n = int(rng.integers(m, 9))
        A = rng.uniform(-1.0, 1.0, (m, n))
        x0 = rng.uniform(0.0, 2.0, n)
        b = A @ x0
        c = rng.uniform(0.1, 3.0, n)
        res = solve_standard(c, A, b)
        assert np.all(res.x >= -1e-9)
        assert A @ res.x == pytest.approx(b, abs=1e-8)
        # dual feasibility and strong duality
        assert np.all(res.dual @ A <= c + 1e-8)
        assert res.dual @ b == pytest.approx(res.objective, abs=1e-8)


def test_matches_enumeration_on_small_problems():
    rng = np.random.default_rng(4)
    for _ in range(25):
        m = int(rng.integers(1, 4))
        n = int(rng.integers(m, 7))
        A = rng.uniform(-1.0, 1.0, (m, n))
        b = A @ rng.uniform(0.0, 1.0, n)
        c = rng.uniform(0.0, 2.0, n)
        ref = enumerate_bfs(c, A, b)
        res = solve_standard(c, A, b)
        assert ref is not None
        assert res.objective == pytest.approx(ref, abs=1e-8)


def test_condition_estimate_reported():
    # near-singular final basis: the solver reports the estimate and
    # leaves the trust decision to the caller
    eps = 1e-8
    A = np.array([[1.0, 1.0], [0.0, eps]])
    b = np.array([1.0, eps])
    res = solve_standard(np.array([1.0, 1.0]), A, b)
    assert res.objective == pytest.approx(1.0)
    assert res.condition > 1e7
