"""End-to-end smoke tests for the python bindings."""

import numpy as np
import pytest

import penpc

# Four-variable benchmark: 0 -> 3, 1 -> 2, 2 -> 3 with unit weights.
EDGES = [(0, 3), (1, 2), (2, 3)]
SIGMA = np.array(
    [
        [1.0, 0.0, 0.0, 1.0],
        [0.0, 1.0, 1.0, 1.0],
        [0.0, 1.0, 2.0, 2.0],
        [1.0, 1.0, 2.0, 4.0],
    ]
)
OMEGA = np.array(
    [
        [2.0, 0.0, 1.0, -1.0],
        [0.0, 2.0, -1.0, 0.0],
        [1.0, -1.0, 2.0, -1.0],
        [-1.0, 0.0, -1.0, 1.0],
    ]
)


def test_analytic_covariance_matches_goldens():
    sigma = penpc.analytic_covariance(4, EDGES)
    np.testing.assert_allclose(sigma, SIGMA, atol=1e-12)
    np.testing.assert_allclose(np.linalg.inv(sigma), OMEGA, atol=1e-10)


def test_graph_helpers():
    assert penpc.is_acyclic(4, EDGES)
    assert not penpc.is_acyclic(3, [(0, 1), (1, 2), (2, 0)])
    assert penpc.skeleton_of(4, EDGES) == [(0, 3), (1, 2), (2, 3)]
    # vertices 0 and 2 share child 3, so the moral structure adds (0, 2)
    assert penpc.true_ggm_of(4, EDGES) == [(0, 2), (0, 3), (1, 2), (2, 3)]
    assert penpc.d_separated(4, EDGES, 0, 1, [])
    assert not penpc.d_separated(4, EDGES, 0, 1, [3])


def test_population_two_step_and_orientation():
    r = penpc.analytic_covariance(4, EDGES)
    d = np.sqrt(np.diag(r))
    r = r / np.outer(d, d)
    ggm = penpc.true_ggm_of(4, EDGES)
    res = penpc.modified_pc_stable(4, ggm, r, alpha=0.01)
    assert res["edges"] == [(0, 3), (1, 2), (2, 3)]
    # the moral-only edge (0, 2) is already marginally uncorrelated
    assert res["sepsets"][(0, 2)] == []
    cp = penpc.orient_cpdag(4, res["edges"], res["sepsets"])
    assert cp["directed"] == [(0, 3), (2, 3)]
    assert cp["undirected"] == [(1, 2)]
    assert cp["conflicts"] == 0


def test_sample_pipeline_recovers_small_graph():
    p, n, seed = 8, 600, 11
    edges = penpc.gen_er_dag(p, 0.25, seed)
    x = penpc.simulate_sem(p, edges, n=n, seed=seed + 1)
    xs = penpc.standardize(x)
    ggm = penpc.neighborhood_select(xs)
    r = penpc.sample_correlation(xs)
    res = penpc.modified_pc_stable(p, ggm, r, alpha=0.01, n=n)
    m = penpc.skeleton_metrics(p, res["edges"], penpc.skeleton_of(p, edges))
    assert set(m) == {"tp", "fp", "tn", "fn", "hd", "tpr", "fpr"}
    assert m["hd"] <= 1  # seeded run; generous slack for one flipped pair


def test_simulation_is_seed_reproducible():
    a = penpc.simulate_sem(5, [(0, 1), (1, 2)], n=50, seed=7)
    b = penpc.simulate_sem(5, [(0, 1), (1, 2)], n=50, seed=7)
    c = penpc.simulate_sem(5, [(0, 1), (1, 2)], n=50, seed=8)
    assert np.array_equal(a, b)
    assert not np.array_equal(a, c)


def test_derive_seed_golden():
    assert penpc.derive_seed(1, [2, 3, 4]) == 61458756966673181
    assert penpc.derive_seed(1, [2, 3, 4]) != penpc.derive_seed(1, [2, 4, 3])


def test_error_mapping():
    with pytest.raises(ValueError):
        penpc.skeleton_of(3, [(0, 1), (1, 0)])  # cycle
    with pytest.raises(penpc.NumericError):
        penpc.standardize(np.ones((10, 2)))  # constant columns
    with pytest.raises(penpc.InsufficientSample):
        r = np.eye(4)
        penpc.ci_test(r, 0, 1, [2, 3], alpha=0.05, n=5)
    assert issubclass(penpc.NumericError, ValueError)
    assert issubclass(penpc.InsufficientSample, ValueError)
    assert issubclass(penpc.IoError, OSError)


def test_coord_descent_and_grid_search_shapes():
    rng = np.random.default_rng(3)
    x = rng.standard_normal((60, 10))
    x = penpc.standardize(x)
    y = x[:, 0] * 1.5 + rng.standard_normal(60) * 0.2
    fit = penpc.coord_descent(y, x, lam=0.05, tau=0.1)
    assert fit["converged"]
    assert 0 in fit["support"]
    best = penpc.grid_search_fit(y, x)
    assert best["lambda"] > 0
    assert np.isfinite(best["ebic"])
