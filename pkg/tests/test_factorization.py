from collections import Counter, defaultdict
from dataclasses import replace
from math import comb, sqrt

import numpy as np
import pytest

from johnson_fft.combinatorics import StandardTableau, enumerate_labels, parse_tableau
from johnson_fft.errors import ConstructionError, ResourceBudgetError
from johnson_fft.factorization import (
    LabelTables,
    identity_factor,
    jm_diag,
    relabel_b0_b1,
    s_perm,
    step_one,
    step_two,
    _eigenvectors,
    build_plan,
)
from johnson_fft.oracle import dense_jm
from johnson_fft.transform import OpCounter

# reference sparsity patterns of the three n=4, k=2 factors (1 = structural nonzero)
STAR_PATTERNS = [
    np.array([[1, 0, 0, 0, 0, 0], [0, 1, 1, 0, 0, 0], [0, 1, 1, 0, 0, 0],
              [0, 0, 0, 1, 1, 0], [0, 0, 0, 1, 1, 0], [0, 0, 0, 0, 0, 1]]),
    np.array([[1, 0, 1, 0, 0, 0], [0, 1, 0, 0, 0, 0], [1, 0, 1, 0, 0, 0],
              [0, 0, 0, 1, 0, 0], [0, 0, 0, 0, 1, 1], [0, 0, 0, 0, 1, 1]]),
    np.array([[1, 0, 0, 0, 1, 0], [0, 1, 0, 1, 0, 0], [0, 0, 1, 0, 0, 1],
              [0, 1, 0, 1, 0, 0], [1, 0, 0, 0, 1, 0], [0, 0, 1, 0, 0, 1]]),
]


def components(pattern: np.ndarray) -> list[tuple[int, int, int]]:
    """(rows, cols, nonzeros) of each connected component of a bipartite pattern."""
    m = pattern != 0
    rows, cols = m.shape
    seen_r, seen_c, out = set(), set(), []
    for start in range(rows):
        if start in seen_r:
            continue
        stack, comp_r, comp_c = [("r", start)], set(), set()
        while stack:
            side, x = stack.pop()
            if side == "r" and x not in comp_r:
                comp_r.add(x)
                stack += [("c", c) for c in np.flatnonzero(m[x])]
            elif side == "c" and x not in comp_c:
                comp_c.add(x)
                stack += [("r", r) for r in np.flatnonzero(m[:, x])]
        seen_r |= comp_r
        seen_c |= comp_c
        out.append((len(comp_r), len(comp_c), int(m[np.ix_(sorted(comp_r), sorted(comp_c))].sum())))
    return sorted(out)


def dense_basis_change(plan, level):
    """Rows are the B_level vectors written in the delta basis."""
    g = np.zeros((plan.dim, plan.dim))
    g[plan.b0_to_b1, np.arange(plan.dim)] = 1.0
    for f in plan.factors[: level - 1]:
        g = f.to_dense() @ g
    return g


def test_n4_golden_block_sizes(plan_cache):
    plan = plan_cache(4, 2)
    assert len(plan.factors) == 3
    assert all(len(level) == 6 for level in plan.labels)
    got = [Counter(f.block_sizes()) for f in plan.factors]
    assert got == [Counter([1, 2, 2, 1]), Counter([2, 1, 1, 2]), Counter([2, 2, 2])]


def test_n4_golden_patterns_match_reference(plan_cache):
    plan = plan_cache(4, 2)
    for factor, star in zip(plan.factors, STAR_PATTERNS):
        dense = factor.to_dense()
        assert components(dense) == components(star)
        # every 2x2 block is full: no accidental zeros
        assert np.count_nonzero(dense) == star.sum()


def test_n2_block_is_normalised_hadamard():
    plan = build_plan(2, 1)
    (factor,) = plan.factors
    h = np.array([[1.0, -1.0], [1.0, 1.0]]) / sqrt(2)
    np.testing.assert_allclose(factor.to_dense(), h, atol=1e-15)
    # row 0 is the tableau 1/2 (content -1), row 1 is 12/ (content +1)
    assert [str(t) for t in plan.tableaux] == ["1/2", "12/"]


def test_s_perm_n4_level0():
    labels = enumerate_labels(4, 2, 0)
    perm = s_perm(1, labels)
    words = [lab.suffix for lab in labels]
    for j, w in enumerate(words):
        assert words[perm[j]] == w[1] + w[0] + w[2:]
    np.testing.assert_array_equal(perm[perm], np.arange(len(perm)))
    fixed = int(np.sum(perm == np.arange(len(perm))))
    assert fixed == sum(w[0] == w[1] for w in words) == 2


@pytest.mark.parametrize("n,k", [(5, 2), (6, 3), (7, 4)])
def test_s_perm_involution_everywhere(n, k):
    for i in range(1, n):
        labels = enumerate_labels(n, k, i - 1)
        perm = s_perm(i, labels)
        np.testing.assert_array_equal(perm[perm], np.arange(len(perm)))
        fixed = int(np.sum(perm == np.arange(len(perm))))
        assert fixed == sum(lab.suffix[0] == lab.suffix[1] for lab in labels)


def test_s_perm_rejects_wrong_level():
    with pytest.raises(ValueError):
        s_perm(2, enumerate_labels(4, 2, 0))


def test_jm_diag_examples():
    assert not jm_diag(1, enumerate_labels(4, 2, 1)).any()
    labels = enumerate_labels(5, 2, 5)
    t = parse_tableau("134/25")
    j = [lab.tableau for lab in labels].index(t)
    assert jm_diag(5, labels)[j] == 0.0
    # a box grown in row 1 of shape (i-a, a) has content i-a-1
    for lab, d in zip(labels, jm_diag(5, labels)):
        row1 = lab.tableau.row1
        if row1[-1] == 5:
            assert d == len(row1) - 1


def test_step_one_first_level():
    n, k = 4, 2
    tables = LabelTables(n, k)
    prev = identity_factor(0, relabel_b0_b1(tables))
    jm = step_one(1, prev, tables)
    m = jm.to_dense()
    np.testing.assert_allclose(m, m.T, atol=1e-15)
    for g in range(len(jm.keys)):
        eig = np.linalg.eigvalsh(jm.block(g))
        if jm.sizes[g] == 1:
            assert eig[0] == pytest.approx(1.0)
        else:
            np.testing.assert_allclose(eig, [-1.0, 1.0], atol=1e-14)


@pytest.mark.parametrize("n,k", [(4, 2), (5, 2), (6, 3)])
def test_step_one_matches_dense_jm(n, k):
    plan = build_plan(n, k)
    tables = LabelTables(n, k)
    prev = identity_factor(0, relabel_b0_b1(tables))
    for i in range(1, n):
        jm = step_one(i, prev, tables)
        m = jm.to_dense()
        np.testing.assert_allclose(m, m.T, atol=1e-12)
        g = dense_basis_change(plan, i)
        dense = g @ dense_jm(n, k, i + 1) @ g.T
        np.testing.assert_allclose(m, dense, atol=1e-12)
        assert np.trace(m) == pytest.approx(np.trace(dense_jm(n, k, i + 1)), abs=1e-12)
        prev = plan.factors[i - 1]


@pytest.mark.parametrize("n,k", [(4, 2), (6, 3), (7, 2)])
def test_factors_diagonalise_jm_with_integer_eigenvalues(n, k):
    plan = build_plan(n, k)
    for i in range(1, n):
        g_next = dense_basis_change(plan, i + 1)
        d = g_next @ dense_jm(n, k, i + 1) @ g_next.T
        expected = [lab.tableau.last_content() for lab in plan.labels[i + 1]]
        np.testing.assert_allclose(d, np.diag(expected), atol=1e-10)


@pytest.mark.parametrize("n,k", [(6, 3), (8, 3), (9, 4)])
def test_suffix_pattern_independence(n, k):
    plan = build_plan(n, k)
    shared = 0
    for f in plan.factors:
        labels = plan.labels[f.level]
        by_tableau = defaultdict(list)
        for cols, vals in zip(f.pair_cols, f.pair_vals):
            t, suffix = labels[cols[0]]
            assert labels[cols[1]].tableau == t
            # blocks may only depend on the tableau and the letter count of the suffix
            by_tableau[t, suffix.count("1")].append(vals)
        for blocks in by_tableau.values():
            shared += len(blocks) - 1
            for b in blocks[1:]:
                np.testing.assert_array_equal(b, blocks[0])
    assert shared > 0


@pytest.mark.parametrize("n,k", [(5, 2), (8, 4)])
def test_sign_rule_and_orthogonality(n, k):
    plan = build_plan(n, k)
    for f in plan.factors:
        assert f.orthogonality_error() < 1e-12
        assert np.all(f.pair_vals[:, :, 0] > 0)
        np.testing.assert_array_equal(f.single_vals, 1.0)


@pytest.mark.parametrize("n", [1, 3, 6])
def test_degenerate_k(n):
    for k in (0, n):
        plan = build_plan(n, k)
        assert plan.dim == 1
        for f in plan.factors:
            assert f.block_sizes() == [1] and f.single_vals[0] == 1.0


def test_final_component_dims():
    plan = build_plan(6, 3)
    assert plan.dim == 20
    assert Counter(plan.shape_index.tolist()) == {0: 1, 1: 5, 2: 9, 3: 5}


def test_build_budget():
    with pytest.raises(ResourceBudgetError):
        build_plan(12, 6, max_dim=100)
    with pytest.raises(ValueError):
        build_plan(0, 0)


def test_build_ops_counted(plan_cache):
    plan = plan_cache(8, 4)
    counter = OpCounter()
    again = build_plan(8, 4, counter=counter)
    assert counter.count == again.build_ops == plan.build_ops > 0
    assert plan.build_ops <= 100 * 8 * comb(8, 4)


def test_eigenvector_failures_raise():
    one = np.array([1.0])
    # diag(2, 0) has no eigenvalue 1
    with pytest.raises(ConstructionError):
        _eigenvectors(2 * one, 0 * one, 0 * one, 0 * one, one, 3)
    # both candidates vanish for the identity block at eigenvalue 1
    with pytest.raises(ConstructionError):
        _eigenvectors(one, 0 * one, 0 * one, one, one, 3)
    # eigenvector (0, 1) has a zero sign pivot
    with pytest.raises(ConstructionError):
        _eigenvectors(0 * one, 0 * one, 0 * one, one, one, 3)


def test_step_two_rejects_coupled_blocks():
    n, k = 5, 2
    tables = LabelTables(n, k)
    plan = build_plan(n, k)
    jm = step_one(3, plan.factors[1], tables)
    blocks = jm.blocks.copy()
    g = int(np.argmax(jm.sizes))
    assert jm.sizes[g] == 4
    blocks[g] += 0.01 * np.ones((4, 4))
    with pytest.raises(ConstructionError):
        step_two(3, replace(jm, blocks=blocks), tables)


def test_factor_arrays_are_read_only(plan_cache):
    f = plan_cache(4, 2).factors[0]
    with pytest.raises(ValueError):
        f.pair_vals[0, 0, 0] = 2.0
    assert StandardTableau() == plan_cache(4, 2).labels[0][0].tableau
