from math import comb

import numpy as np
import pytest

from johnson_fft.oracle import isotypic_projectors, transposition_matrix
from johnson_fft.spectral import (
    normalize_components,
    project,
    project_bound,
    weights,
    weights_bound,
)
from johnson_fft.transform import OpCounter


def test_constant_weights(plan_cache):
    plan = plan_cache(6, 3)
    report = weights(plan, np.ones(plan.dim))
    np.testing.assert_allclose(report.weights, [20, 0, 0, 0], atol=1e-12)
    np.testing.assert_allclose(report.shares, [1, 0, 0, 0], atol=1e-12)
    assert report.shape(2) == (4, 2)


def test_delta_weights_n4(plan_cache):
    plan = plan_cache(4, 2)
    f = np.zeros(6)
    f[plan.word_index["1122"]] = 1.0
    report = weights(plan, f)
    np.testing.assert_allclose(report.weights, [1 / 6, 1 / 2, 1 / 3], atol=1e-12)
    assert report.total == pytest.approx(1.0)


def test_zero_function_shares(plan_cache):
    report = weights(plan_cache(4, 2), np.zeros(6))
    assert report.total == 0 and not report.shares.any()


def test_weights_sum_and_bound(plan_cache):
    plan = plan_cache(10, 4)
    f = np.random.default_rng(5).standard_normal(plan.dim)
    counter = OpCounter()
    report = weights(plan, f, counter)
    assert report.total == pytest.approx(float(f @ f), rel=1e-10)
    assert np.all(report.weights >= 0)
    assert counter.count <= weights_bound(10, plan.dim)


def test_project_full_and_empty(plan_cache):
    plan = plan_cache(8, 3)
    f = np.random.default_rng(6).standard_normal(plan.dim)
    np.testing.assert_allclose(project(plan, f, range(plan.s + 1)), f, atol=1e-9)
    assert np.abs(project(plan, f, [])).max() < 1e-15


def test_project_matches_dense_projector(plan_cache):
    plan = plan_cache(4, 2)
    f = np.zeros(6)
    f[plan.word_index["1122"]] = 1.0
    proj = isotypic_projectors(4, 2)
    np.testing.assert_allclose(project(plan, f, {1}), proj[1] @ f, atol=1e-8)


@pytest.mark.parametrize("n,k", [(6, 2), (7, 3)])
def test_projections_decompose(plan_cache, n, k):
    plan = plan_cache(n, k)
    f = np.random.default_rng(7).standard_normal(plan.dim)
    parts = [project(plan, f, a) for a in range(plan.s + 1)]
    np.testing.assert_allclose(sum(parts), f, atol=1e-10)
    for a, p in enumerate(parts):
        np.testing.assert_allclose(project(plan, p, a), p, atol=1e-10)
        for b in range(a):
            assert abs(p @ parts[b]) < 1e-10


def test_projection_commutes_with_symmetric_group(plan_cache):
    n, k = 6, 3
    plan = plan_cache(n, k)
    f = np.random.default_rng(8).standard_normal(plan.dim)
    for i, j in [(1, 2), (2, 5), (1, 6)]:
        sigma = transposition_matrix(n, k, i, j)
        for a in range(plan.s + 1):
            np.testing.assert_allclose(project(plan, sigma @ f, a), sigma @ project(plan, f, a), atol=1e-10)


def test_project_bound(plan_cache):
    plan = plan_cache(12, 5)
    counter = OpCounter()
    project(plan, np.ones(plan.dim), [0, 2], counter)
    assert counter.count <= project_bound(12, comb(12, 5))


def test_components_validation(plan_cache):
    plan = plan_cache(4, 2)
    assert normalize_components(plan, 1) == {1}
    with pytest.raises(ValueError):
        project(plan, np.ones(6), [3])
    with pytest.raises(ValueError):
        normalize_components(plan, [-1])
