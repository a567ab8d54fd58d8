"""Sparse orthogonal factors of the Johnson graph Fourier transform.

The change of basis from deltas (B_0) to the Gelfand-Tsetlin basis (B_n) is a
product of factors [B_i]_{B_{i+1}}, i = 1..n-1, each block diagonal with
blocks of size at most two.  Factor i+1 is obtained from factor i in two steps:

1. the Jucys-Murphy operator J_{i+1} is written in B_i through
   J_{i+1} = (s_i J_i + 1) s_i, where s_i = (i i+1) is known in B_{i-1} as a
   permutation of labels and J_i is diagonal in B_i (box contents);
2. each 2x2 block of J_{i+1} is diagonalised with its known integer
   eigenvalues i-a and a-1, giving the rows of the next factor.

Both steps work on groups of at most four labels, so building the whole plan
costs O(n C(n,k)) scalar operations.  The per-group arithmetic is batched with
numpy over all groups of a level; groups are disjoint, so batching does not
change any result.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from math import comb
from typing import NamedTuple, Sequence

import numpy as np

from .combinatorics import (
    BasisLabel,
    StandardTableau,
    check_nk,
    enumerate_labels,
)
from .errors import ConstructionError, InvariantError, ResourceBudgetError

DEFAULT_MAX_DIM = 2_000_000
RESIDUAL_TOL = 1e-8
PIVOT_TOL = 1e-12
# step two: per eigenvector, two shifted diagonal entries, two candidate norms,
# one square root, two scalings, one comparison and the sign test
STEP_TWO_OPS_PER_VECTOR = 9


class Block(NamedTuple):
    rows: tuple[int, ...]
    cols: tuple[int, ...]
    entries: np.ndarray  # len(rows) x len(cols), row-major


@dataclass(frozen=True, eq=False)
class SparseOrthFactor:
    """Block-diagonal orthogonal matrix mapping B_level coordinates to B_{level+1}.

    Stored as 1x1 blocks (``single_*``) and 2x2 blocks (``pair_*``).  Block rows
    index the B_{level+1} table, block columns the B_level table.
    """

    level: int
    dim: int
    single_rows: np.ndarray
    single_cols: np.ndarray
    single_vals: np.ndarray
    pair_rows: np.ndarray  # (m, 2)
    pair_cols: np.ndarray  # (m, 2)
    pair_vals: np.ndarray  # (m, 2, 2)

    def __post_init__(self):
        for arr in (self.single_rows, self.single_cols, self.single_vals,
                    self.pair_rows, self.pair_cols, self.pair_vals):
            arr.setflags(write=False)

    @classmethod
    def from_blocks(cls, level: int, dim: int, blocks: Sequence[Block]) -> SparseOrthFactor:
        s_rows, s_cols, s_vals = [], [], []
        p_rows, p_cols, p_vals = [], [], []
        for b in blocks:
            size = len(b.rows)
            if size != len(b.cols) or size not in (1, 2):
                raise ValueError(f"blocks must be 1x1 or 2x2, got {len(b.rows)}x{len(b.cols)}")
            ent = np.asarray(b.entries, dtype=float).reshape(size, size)
            if size == 1:
                s_rows.append(b.rows[0])
                s_cols.append(b.cols[0])
                s_vals.append(ent[0, 0])
            else:
                p_rows.append(b.rows)
                p_cols.append(b.cols)
                p_vals.append(ent)
        return cls(
            level=level,
            dim=dim,
            single_rows=np.array(s_rows, dtype=np.intp),
            single_cols=np.array(s_cols, dtype=np.intp),
            single_vals=np.array(s_vals, dtype=float),
            pair_rows=np.array(p_rows, dtype=np.intp).reshape(-1, 2),
            pair_cols=np.array(p_cols, dtype=np.intp).reshape(-1, 2),
            pair_vals=np.array(p_vals, dtype=float).reshape(-1, 2, 2),
        )

    @property
    def blocks(self) -> list[Block]:
        """All blocks, ordered by their first column index (canonical order)."""
        out = [Block((int(r),), (int(c),), np.array([[v]]))
               for r, c, v in zip(self.single_rows, self.single_cols, self.single_vals)]
        out += [Block(tuple(int(x) for x in r), tuple(int(x) for x in c), v.copy())
                for r, c, v in zip(self.pair_rows, self.pair_cols, self.pair_vals)]
        out.sort(key=lambda b: b.cols[0])
        return out

    def block_sizes(self) -> list[int]:
        return [len(b.rows) for b in self.blocks]

    def coo(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """(rows, cols, values) of every stored entry."""
        rows = np.concatenate([self.single_rows, np.repeat(self.pair_rows, 2, axis=1).ravel()])
        cols = np.concatenate([self.single_cols, np.tile(self.pair_cols, (1, 2)).ravel()])
        vals = np.concatenate([self.single_vals, self.pair_vals.reshape(-1)])
        return rows, cols, vals

    def to_dense(self) -> np.ndarray:
        m = np.zeros((self.dim, self.dim))
        rows, cols, vals = self.coo()
        m[rows, cols] = vals
        return m

    def orthogonality_error(self) -> float:
        """Max-norm of F^T F - I, evaluated blockwise."""
        err = 0.0
        if len(self.single_vals):
            err = float(np.max(np.abs(self.single_vals ** 2 - 1.0)))
        if len(self.pair_vals):
            gram = np.einsum("mji,mjk->mik", self.pair_vals, self.pair_vals)
            err = max(err, float(np.max(np.abs(gram - np.eye(2)))))
        return err

    def check_coverage(self) -> None:
        """Every row and column index must belong to exactly one block."""
        for name, idx in (("row", np.concatenate([self.single_rows, self.pair_rows.ravel()])),
                          ("col", np.concatenate([self.single_cols, self.pair_cols.ravel()]))):
            counts = np.bincount(idx, minlength=self.dim) if len(idx) else np.zeros(self.dim, int)
            if len(counts) != self.dim or np.any(counts != 1):
                raise InvariantError(f"factor {self.level}: {name} indices are not covered exactly once")


def identity_factor(level: int, rows: np.ndarray) -> SparseOrthFactor:
    """Relabelling factor sending column j to row ``rows[j]`` with entry 1."""
    dim = len(rows)
    return SparseOrthFactor(
        level=level,
        dim=dim,
        single_rows=np.asarray(rows, dtype=np.intp).copy(),
        single_cols=np.arange(dim, dtype=np.intp),
        single_vals=np.ones(dim),
        pair_rows=np.zeros((0, 2), dtype=np.intp),
        pair_cols=np.zeros((0, 2), dtype=np.intp),
        pair_vals=np.zeros((0, 2, 2)),
    )


class LabelTables:
    """Canonical label tables B_0..B_n with lazily built label -> index maps."""

    def __init__(self, n: int, k: int, levels: Sequence[Sequence[BasisLabel]] | None = None):
        self.n, self.k = n, k
        if levels is None:
            levels = [enumerate_labels(n, k, i) for i in range(n + 1)]
        self.levels = [tuple(level) for level in levels]
        self._index: dict[int, dict[BasisLabel, int]] = {}

    def __getitem__(self, i: int) -> tuple[BasisLabel, ...]:
        return self.levels[i]

    def index(self, i: int) -> dict[BasisLabel, int]:
        if i not in self._index:
            self._index[i] = {lab: j for j, lab in enumerate(self.levels[i])}
        return self._index[i]


def s_perm(i: int, labels: Sequence[BasisLabel]) -> np.ndarray:
    """Permutation of B_{i-1} indices induced by the transposition (i i+1).

    (T, c_i c_{i+1} rest) is sent to (T, c_{i+1} c_i rest).
    """
    if labels and (labels[0].level != i - 1 or len(labels[0].suffix) < 2):
        raise ValueError(f"s_perm({i}) needs level-{i - 1} labels with at least two suffix letters")
    index = {lab: j for j, lab in enumerate(labels)}
    out = np.empty(len(labels), dtype=np.intp)
    for j, (t, suffix) in enumerate(labels):
        out[j] = index[BasisLabel(t, suffix[1] + suffix[0] + suffix[2:])]
    return out


def jm_diag(i: int, labels: Sequence[BasisLabel]) -> np.ndarray:
    """Diagonal of [J_i]_{B_i}: the content of box i of each tableau."""
    if i < 1:
        raise ValueError("J_i is defined for i >= 1")
    return np.array([lab.tableau.last_content() for lab in labels], dtype=float)


@dataclass(frozen=True, eq=False)
class JmBlockMatrix:
    """[J_{level+1}]_{B_level} as dense blocks over block_key_j groups.

    ``members[g, :sizes[g]]`` are the B_level indices of group g in canonical
    order (padding is -1); ``gid``/``pos`` give the group and position of every
    B_level index.
    """

    level: int
    keys: list
    members: np.ndarray
    sizes: np.ndarray
    blocks: np.ndarray  # (G, 4, 4), zero padded
    gid: np.ndarray
    pos: np.ndarray

    def block(self, g: int) -> np.ndarray:
        d = self.sizes[g]
        return self.blocks[g, :d, :d]

    def to_dense(self) -> np.ndarray:
        dim = len(self.gid)
        m = np.zeros((dim, dim))
        for g in range(len(self.keys)):
            idx = self.members[g, : self.sizes[g]]
            m[np.ix_(idx, idx)] = self.block(g)
        return m


def _group(labels: Sequence[BasisLabel], keyfn, keys: dict | None = None):
    """Group ids and in-group positions; new keys only allowed when ``keys`` is None."""
    creating = keys is None
    if creating:
        keys = {}
    gid = np.empty(len(labels), dtype=np.intp)
    pos = np.empty(len(labels), dtype=np.intp)
    fill: list[int] = [0] * len(keys)
    for j, lab in enumerate(labels):
        kk = keyfn(lab)
        g = keys.get(kk)
        if g is None:
            if not creating:
                raise InvariantError(f"label {lab} has block key {kk} with no partner group")
            g = keys[kk] = len(keys)
            fill.append(0)
        gid[j] = g
        pos[j] = fill[g]
        fill[g] += 1
    return keys, gid, pos, np.array(fill, dtype=np.intp)


def step_one(i: int, prev_factor: SparseOrthFactor, tables: LabelTables, counter=None) -> JmBlockMatrix:
    """Compute [J_{i+1}]_{B_i} from the factor [B_{i-1}]_{B_i}."""
    prev, cur = tables[i - 1], tables[i]
    # block_key_j(., i) specialised to the two levels involved
    keys, gid, pos, sizes = _group(cur, lambda lab: (lab[0].restrict(), lab[1][1:]))
    _, gid_p, pos_p, sizes_p = _group(prev, lambda lab: (lab[0], lab[1][2:]), keys)
    if not np.array_equal(sizes, sizes_p):
        raise InvariantError(f"level {i}: B_{i - 1} and B_{i} disagree on block_key_j group sizes")
    if sizes.max(initial=0) > 4:
        raise InvariantError(f"level {i}: block_key_j group larger than 4")
    n_groups = len(keys)

    rows, cols, vals = prev_factor.coo()
    if np.any(gid[rows] != gid_p[cols]):
        raise InvariantError(f"level {i}: previous factor mixes block_key_j groups")
    q = np.zeros((n_groups, 4, 4))
    q[gid[rows], pos[rows], pos_p[cols]] = vals

    perm = s_perm(i, prev)
    if np.any(gid_p[perm] != gid_p):
        raise InvariantError(f"level {i}: s_{i} leaves a block_key_j group")
    p = np.zeros((n_groups, 4, 4))
    p[gid_p, pos_p[perm], pos_p] = 1.0

    diag = np.zeros((n_groups, 4))
    diag[gid, pos] = jm_diag(i, cur)

    s_cur = q @ p @ q.transpose(0, 2, 1)
    jm = (s_cur * diag[:, None, :] + np.eye(4)) @ s_cur

    if counter is not None:
        # the permutation product is a reindexing; two dense products, one
        # diagonal scaling and the identity shift remain
        d = sizes.astype(np.int64)
        counter.add(int(np.sum(2 * d**3 + d**2 + d)))

    members = np.full((n_groups, 4), -1, dtype=np.intp)
    members[gid, pos] = np.arange(len(cur))
    return JmBlockMatrix(level=i, keys=list(keys), members=members, sizes=sizes,
                         blocks=jm, gid=gid, pos=pos)


def _eigenvectors(m11, m12, m21, m22, lam, level):
    """Unit eigenvectors of a batch of 2x2 matrices for known eigenvalues ``lam``."""
    u = np.stack([m12, lam - m11], axis=1)
    w = np.stack([lam - m22, m21], axis=1)
    nu = np.hypot(u[:, 0], u[:, 1])
    nw = np.hypot(w[:, 0], w[:, 1])
    take_u = nu >= nw
    v = np.where(take_u[:, None], u, w)
    norm = np.where(take_u, nu, nw)
    if np.any(norm < PIVOT_TOL):
        raise ConstructionError(f"level {level}: both eigenvector candidates vanish")
    v = v / norm[:, None]
    if np.any(np.abs(v[:, 0]) < PIVOT_TOL):
        raise ConstructionError(f"level {level}: zero sign pivot in a 2-dimensional block")
    v = v * np.sign(v[:, 0])[:, None]
    res = np.hypot((m11 - lam) * v[:, 0] + m12 * v[:, 1], m21 * v[:, 0] + (m22 - lam) * v[:, 1])
    if res.size and res.max() > RESIDUAL_TOL:
        raise ConstructionError(
            f"level {level}: eigenvector residual {res.max():.3e} exceeds {RESIDUAL_TOL}")
    return v


def step_two(i: int, jm: JmBlockMatrix, tables: LabelTables, counter=None) -> SparseOrthFactor:
    """Diagonalise [J_{i+1}]_{B_i} blockwise, giving the factor [B_i]_{B_{i+1}}."""
    cur = tables[i]
    nxt_index = tables.index(i + 1)
    dim = len(cur)

    groups: dict[tuple[StandardTableau, str], list[int]] = {}
    cg_list = []
    for j, (t, suffix) in enumerate(cur):
        idx = groups.setdefault((t, suffix[1:]), [])
        if not idx:
            idx.append(len(groups) - 1)
        idx.append(j)
        cg_list.append(idx[0])
    cg = np.array(cg_list, dtype=np.intp)

    singles: list[tuple[int, int, float]] = []  # (row, col, expected eigenvalue)
    pairs: list[tuple[int, int, int, int, int]] = []  # (col0, col1, row_up, row_down, a)
    for (t, w), (_, *idx) in groups.items():
        a = len(t.row2)
        up = nxt_index.get(BasisLabel(t.grow(1), w))
        down = nxt_index.get(BasisLabel(t.grow(2), w)) if len(t.row2) < len(t.row1) else None
        if len(idx) == 1:
            if (up is None) == (down is None):
                raise InvariantError(f"level {i}: one-dimensional block {t}, {w!r} has "
                                     f"{'no' if up is None else 'two'} successors")
            singles.append((up, idx[0], i - a) if up is not None else (down, idx[0], a - 1))
        elif len(idx) == 2:
            if up is None or down is None:
                raise InvariantError(f"level {i}: two-dimensional block {t}, {w!r} lacks a successor")
            pairs.append((idx[0], idx[1], up, down, a))
        else:
            raise InvariantError(f"level {i}: change block of size {len(idx)}")

    # J must not couple different change blocks
    cgm = np.full(jm.members.shape, -1, dtype=np.intp)
    cgm[jm.gid, jm.pos] = cg
    valid = jm.members >= 0
    off = (cgm[:, :, None] != cgm[:, None, :]) & valid[:, :, None] & valid[:, None, :]
    if off.any() and np.abs(jm.blocks[off]).max() > RESIDUAL_TOL:
        raise ConstructionError(f"level {i}: J_{i + 1} couples distinct change blocks")

    s = np.array(singles, dtype=float).reshape(-1, 3)
    s_rows = s[:, 0].astype(np.intp)
    s_cols = s[:, 1].astype(np.intp)
    if len(s):
        got = jm.blocks[jm.gid[s_cols], jm.pos[s_cols], jm.pos[s_cols]]
        bad = np.abs(got - s[:, 2])
        if bad.max() > RESIDUAL_TOL:
            raise ConstructionError(f"level {i}: 1x1 block of J_{i + 1} is not the expected content")

    pr = np.array(pairs, dtype=np.intp).reshape(-1, 5)
    c0, c1 = pr[:, 0], pr[:, 1]
    g = jm.gid[c0]
    p0, p1 = jm.pos[c0], jm.pos[c1]
    m11, m12 = jm.blocks[g, p0, p0], jm.blocks[g, p0, p1]
    m21, m22 = jm.blocks[g, p1, p0], jm.blocks[g, p1, p1]
    a = pr[:, 4].astype(float)
    v_up = _eigenvectors(m11, m12, m21, m22, i - a, i)
    v_down = _eigenvectors(m11, m12, m21, m22, a - 1, i)
    if counter is not None:
        counter.add(2 * STEP_TWO_OPS_PER_VECTOR * len(pr))

    # rows in ascending B_{i+1} order
    up_first = pr[:, 2] < pr[:, 3]
    pair_rows = np.where(up_first[:, None], pr[:, [2, 3]], pr[:, [3, 2]])
    pair_vals = np.where(up_first[:, None, None],
                         np.stack([v_up, v_down], axis=1),
                         np.stack([v_down, v_up], axis=1))
    factor = SparseOrthFactor(
        level=i,
        dim=dim,
        single_rows=s_rows,
        single_cols=s_cols,
        single_vals=np.ones(len(s)),
        pair_rows=pair_rows.astype(np.intp),
        pair_cols=pr[:, :2].copy(),
        pair_vals=pair_vals,
    )
    factor.check_coverage()
    return factor


@dataclass(frozen=True, eq=False)
class TransformPlan:
    """Everything needed to run the fast transform for one (n, k).

    ``labels[i]`` is the canonical label table of B_i; ``b0_to_b1[j]`` is the
    B_1 index of the j-th word; ``factors[i-1]`` maps B_i to B_{i+1}.
    """

    n: int
    k: int
    labels: tuple[tuple[BasisLabel, ...], ...]
    b0_to_b1: np.ndarray
    factors: tuple[SparseOrthFactor, ...]
    build_ops: int = 0
    _tables: LabelTables | None = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        self.b0_to_b1.setflags(write=False)

    @property
    def dim(self) -> int:
        return len(self.labels[0])

    @property
    def s(self) -> int:
        return min(self.k, self.n - self.k)

    @property
    def words(self) -> list[str]:
        return [lab.suffix for lab in self.labels[0]]

    @property
    def tableaux(self) -> list[StandardTableau]:
        return [lab.tableau for lab in self.labels[-1]]

    @cached_property
    def shape_index(self) -> np.ndarray:
        """Second-row length a of every final label."""
        out = np.array([len(lab.tableau.row2) for lab in self.labels[-1]], dtype=np.intp)
        out.setflags(write=False)
        return out

    @cached_property
    def word_index(self) -> dict[str, int]:
        return {w: j for j, w in enumerate(self.words)}

    @cached_property
    def tableau_index(self) -> dict[StandardTableau, int]:
        return {t: j for j, t in enumerate(self.tableaux)}


def relabel_b0_b1(tables: LabelTables) -> np.ndarray:
    index1 = tables.index(1)
    one = StandardTableau((1,), ())
    return np.array([index1[BasisLabel(one, lab.suffix[1:])] for lab in tables[0]], dtype=np.intp)


def build_plan(n: int, k: int, max_dim: int = DEFAULT_MAX_DIM, counter=None) -> TransformPlan:
    """Build label tables and all factors for J(n, k) by alternating step one and step two."""
    check_nk(n, k)
    if n < 1:
        raise ValueError("n must be at least 1")
    dim = comb(n, k)
    if dim > max_dim:
        raise ResourceBudgetError(f"C({n},{k}) = {dim} exceeds the budget of {max_dim}")
    from .transform import OpCounter

    own = OpCounter()
    tables = LabelTables(n, k)
    b0_to_b1 = relabel_b0_b1(tables)
    prev = identity_factor(0, b0_to_b1)
    factors = []
    for i in range(1, n):
        jm = step_one(i, prev, tables, own)
        prev = step_two(i, jm, tables, own)
        factors.append(prev)
    if counter is not None:
        counter.add(own.count)
    return TransformPlan(n=n, k=k, labels=tuple(tables.levels), b0_to_b1=b0_to_b1,
                         factors=tuple(factors), build_ops=own.count, _tables=tables)
