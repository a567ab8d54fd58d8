"""Dense brute-force oracle.

Everything here works on full C(n,k) x C(n,k) matrices in the canonical word
order and shares nothing with the factor builder except the label tables.
Meant for C(n,k) up to a couple of thousand.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

import numpy as np

from .combinatorics import count_standard_tableaux, enumerate_words, tableau_contents
from .errors import ConvergenceError, OracleError, ResourceBudgetError
from .factorization import TransformPlan
from .transform import forward

DENSE_MAX_DIM = 300
CLUSTER_TOL = 1e-6
CLUSTER_GAP = 0.5


def _swap(word: str, i: int, j: int) -> str:
    """Exchange the letters at 1-based positions i < j."""
    return word[: i - 1] + word[j - 1] + word[i:j - 1] + word[i - 1] + word[j:]


def transposition_matrix(n: int, k: int, i: int, j: int) -> np.ndarray:
    """Permutation matrix of the transposition (i j) acting on words."""
    words = enumerate_words(n, k)
    index = {w: t for t, w in enumerate(words)}
    m = np.zeros((len(words), len(words)))
    a, b = min(i, j), max(i, j)
    for t, w in enumerate(words):
        m[index[_swap(w, a, b)], t] = 1.0
    return m


def dense_jm(n: int, k: int, p: int) -> np.ndarray:
    """J_p = (1 p) + (2 p) + ... + (p-1 p) as a dense matrix."""
    if not 1 <= p <= n:
        raise ValueError(f"p must satisfy 1 <= p <= n, got {p}")
    words = enumerate_words(n, k)
    index = {w: t for t, w in enumerate(words)}
    m = np.zeros((len(words), len(words)))
    for t, w in enumerate(words):
        for j in range(1, p):
            m[index[_swap(w, j, p)], t] += 1.0
    return m


def dense_z(n: int, k: int, i: int) -> np.ndarray:
    """Sum of all transpositions of S_i; J_i = Z_i - Z_{i-1}."""
    words = enumerate_words(n, k)
    m = np.zeros((len(words), len(words)))
    for p in range(2, i + 1):
        m += dense_jm(n, k, p)
    return m


def adjacency(n: int, k: int) -> np.ndarray:
    """Johnson graph adjacency: subsets adjacent iff they share k-1 elements."""
    words = enumerate_words(n, k)
    sets = [frozenset(j for j, c in enumerate(w) if c == "1") for w in words]
    m = np.zeros((len(words), len(words)))
    for a, x in enumerate(sets):
        for b, y in enumerate(sets):
            if len(x & y) == k - 1:
                m[a, b] = 1.0
    return m


def johnson_distance(x: str, y: str) -> int:
    """k - |x & y| for two words of the same weight."""
    k = x.count("1")
    return k - sum(1 for a, b in zip(x, y) if a == b == "1")


def _round_robin(size: int) -> list[tuple[np.ndarray, np.ndarray]]:
    """Pairings of 0..size-1 so that every pair meets exactly once per sweep."""
    m = size + size % 2
    ring = list(range(m))
    rounds = []
    for _ in range(m - 1):
        p = np.array(ring[: m // 2])
        q = np.array(ring[m // 2:][::-1])
        keep = (p < size) & (q < size)
        lo, hi = np.minimum(p, q)[keep], np.maximum(p, q)[keep]
        rounds.append((lo, hi))
        ring = [ring[0], ring[-1]] + ring[1:-1]
    return rounds


def symmetric_eig(m: np.ndarray, tol: float = 1e-12, max_sweeps: int = 60):
    """Cyclic Jacobi rotations in round-robin order.

    Each round applies size/2 disjoint rotations at once; they commute, so a
    round equals applying them one after another.  Returns ascending
    eigenvalues and orthonormal eigenvectors (columns).  Stops when the
    off-diagonal Frobenius norm drops below ``tol`` times max(1, ||m||_F).
    """
    a = np.array(m, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    size = a.shape[0]
    scale = max(1.0, float(np.linalg.norm(a)))
    if np.abs(a - a.T).max(initial=0.0) > 1e-12 * scale:
        raise ValueError("matrix is not symmetric")
    a = 0.5 * (a + a.T)
    v = np.eye(size)
    target = tol * scale
    rounds = _round_robin(size)
    for _ in range(max_sweeps):
        off = float(np.linalg.norm(a - np.diag(np.diag(a))))
        if off < target:
            break
        skip = target / (4 * size)
        for p, q in rounds:
            apq = a[p, q]
            act = np.abs(apq) >= skip
            if not act.any():
                continue
            p, q, apq = p[act], q[act], apq[act]
            theta = (a[q, q] - a[p, p]) / (2.0 * apq)
            t = np.where(theta >= 0, 1.0, -1.0) / (np.abs(theta) + np.sqrt(theta * theta + 1.0))
            c = 1.0 / np.sqrt(t * t + 1.0)
            s = t * c
            cp, cq = a[:, p], a[:, q]
            a[:, p], a[:, q] = c * cp - s * cq, s * cp + c * cq
            rp, rq = a[p, :], a[q, :]
            a[p, :], a[q, :] = c[:, None] * rp - s[:, None] * rq, s[:, None] * rp + c[:, None] * rq
            a[p, q] = a[q, p] = 0.0
            vp, vq = v[:, p], v[:, q]
            v[:, p], v[:, q] = c * vp - s * vq, s * vp + c * vq
    else:
        raise ConvergenceError(f"Jacobi did not converge in {max_sweeps} sweeps")
    w = np.diag(a).copy()
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order]


def cluster_eigenvalues(w: np.ndarray) -> list[tuple[float, np.ndarray]]:
    """Group sorted eigenvalues into (value, indices), largest value first.

    Neighbours closer than CLUSTER_TOL merge; a gap between CLUSTER_TOL and
    CLUSTER_GAP is ambiguous and raises OracleError.
    """
    order = np.argsort(w)
    clusters: list[list[int]] = []
    for idx in order:
        if clusters and abs(w[idx] - w[clusters[-1][-1]]) < CLUSTER_TOL:
            clusters[-1].append(idx)
            continue
        if clusters and abs(w[idx] - w[clusters[-1][-1]]) < CLUSTER_GAP:
            raise OracleError(f"ambiguous eigenvalue gap near {w[idx]:.12g}")
        clusters.append([idx])
    out = [(float(np.mean(w[c])), np.array(c)) for c in clusters]
    return out[::-1]


def isotypic_projectors(n: int, k: int) -> list[np.ndarray]:
    """Spectral projectors of the adjacency matrix, ordered by component index a = 0..s."""
    s = min(k, n - k)
    w, vecs = symmetric_eig(adjacency(n, k))
    clusters = cluster_eigenvalues(w)
    if len(clusters) != s + 1:
        raise OracleError(f"expected {s + 1} adjacency eigenvalues, found {len(clusters)}")
    out = []
    for a, (_, idx) in enumerate(clusters):
        if len(idx) != count_standard_tableaux(n, a):
            raise OracleError(f"eigenspace {a} has rank {len(idx)}, "
                              f"expected {count_standard_tableaux(n, a)}")
        basis = vecs[:, idx]
        out.append(basis @ basis.T)
    return out


def dense_gt_matrix(plan: TransformPlan, max_dim: int = DENSE_MAX_DIM) -> np.ndarray:
    """[B_0]_{B_n} as a dense matrix; row t is the t-th Gelfand-Tsetlin vector."""
    if plan.dim > max_dim:
        raise ResourceBudgetError(f"dense matrix of size {plan.dim} exceeds {max_dim}")
    g = np.zeros((plan.dim, plan.dim))
    g[plan.b0_to_b1, np.arange(plan.dim)] = 1.0
    for factor in plan.factors:
        g = factor.to_dense() @ g
    return g


def simultaneous_jm_basis(n: int, k: int) -> dict[tuple[int, ...], np.ndarray]:
    """Joint eigenvectors of J_1..J_n keyed by their eigenvalue vector.

    Diagonalises J_p inside every joint eigenspace of J_1..J_{p-1} in turn.
    """
    dim = comb(n, k)
    spaces: list[tuple[np.ndarray, tuple[int, ...]]] = [(np.eye(dim), ())]
    for p in range(1, n + 1):
        jp = dense_jm(n, k, p)
        nxt = []
        for basis, prefix in spaces:
            w, u = symmetric_eig(basis.T @ jp @ basis)
            for val, idx in cluster_eigenvalues(w):
                nxt.append((basis @ u[:, idx], prefix + (int(round(val)),)))
        spaces = nxt
    out = {}
    for basis, contents in spaces:
        if basis.shape[1] != 1:
            raise OracleError(f"joint eigenspace {contents} has dimension {basis.shape[1]}")
        out[contents] = basis[:, 0]
    return out


@dataclass
class Check:
    name: str
    max_residual: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return bool(self.max_residual <= self.tolerance)

    def line(self) -> str:
        return (f"{self.name:<24} max_residual={self.max_residual:.3e} "
                f"tol={self.tolerance:.0e} {'PASS' if self.passed else 'FAIL'}")


@dataclass
class VerificationReport:
    n: int
    k: int
    checks: list[Check] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def format(self) -> str:
        lines = [f"verification n={self.n} k={self.k}"]
        lines += [c.line() for c in self.checks]
        lines += [f"note: {x}" for x in self.notes]
        lines.append(f"overall {'PASS' if self.passed else 'FAIL'}")
        return "\n".join(lines)


def _sign_free_distance(u: np.ndarray, v: np.ndarray) -> float:
    return float(min(np.linalg.norm(u - v), np.linalg.norm(u + v)))


def verify_plan(plan: TransformPlan, max_dim: int = DENSE_MAX_DIM,
                simultaneous: bool = True) -> VerificationReport:
    """Check a plan against dense Jucys-Murphy operators and adjacency eigenspaces."""
    n, k = plan.n, plan.k
    report = VerificationReport(n, k)
    g = dense_gt_matrix(plan, max_dim)
    eye = np.eye(plan.dim)

    orth = max((f.orthogonality_error() for f in plan.factors), default=0.0)
    report.checks.append(Check("factor_orthogonality", orth, 1e-10))
    nnz = 0
    for f in plan.factors:
        pattern = f.to_dense() != 0
        nnz = max(nnz, int(pattern.sum(axis=0).max()), int(pattern.sum(axis=1).max()))
    report.checks.append(Check("factor_sparsity", float(nnz), 2.0))
    report.checks.append(Check("gt_orthogonality", float(np.abs(g @ g.T - eye).max()), 1e-9))

    fwd = np.column_stack([forward(plan, eye[:, j]) for j in range(plan.dim)])
    report.checks.append(Check("forward_matches_dense", float(np.abs(fwd - g).max()), 1e-10))

    alphas = np.array([tableau_contents(t) for t in plan.tableaux], dtype=float).reshape(plan.dim, n)
    jm_res = 0.0
    for p in range(1, n + 1):
        moved = g @ dense_jm(n, k, p)  # J_p is symmetric, so row t is (J_p v_t)^T
        res = np.linalg.norm(moved - alphas[:, p - 1][:, None] * g, axis=1)
        jm_res = max(jm_res, float(res.max()))
    report.checks.append(Check("jm_eigenvectors", jm_res, 1e-8))

    projectors = isotypic_projectors(n, k)
    iso = 0.0
    for a, proj in enumerate(projectors):
        rows = g[plan.shape_index == a]
        iso = max(iso, float(np.abs(rows.T @ rows - proj).max()))
    report.checks.append(Check("isotypic_projectors", iso, 1e-8))

    if simultaneous:
        joint = simultaneous_jm_basis(n, k)
        dist = 0.0
        for t, row in zip(plan.tableaux, g):
            u = joint.get(tableau_contents(t))
            dist = max(dist, np.inf if u is None else _sign_free_distance(row, u))
        report.checks.append(Check("simultaneous_jm_basis", dist, 1e-8))

    report.notes.append("eigenvector comparisons are insensitive to the sign of each basis vector")
    return report
