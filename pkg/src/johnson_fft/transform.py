"""Forward and inverse fast transforms over a :class:`TransformPlan`.

Cost model: one fused multiply-add is one operation.  Reindexing (the
B_0 -> B_1 relabelling and any gather/scatter) is not counted.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .factorization import SparseOrthFactor, TransformPlan

# below this many 2x2 blocks a thread pool costs more than it saves
_MIN_BLOCKS_PER_THREAD = 4096


@dataclass
class OpCounter:
    count: int = 0

    def add(self, ops: int) -> None:
        if ops < 0:
            raise ValueError("operation counts only grow")
        self.count += ops


def forward_bound(n: int, dim: int) -> int:
    return 2 * (n - 1) * dim


def _check_vector(x: np.ndarray, dim: int, what: str) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.shape != (dim,):
        raise ValueError(f"{what} has shape {x.shape}, expected ({dim},)")
    return x


def _chunks(m: int, threads: int) -> list[slice]:
    if threads <= 1 or m < 2 * _MIN_BLOCKS_PER_THREAD:
        return [slice(0, m)]
    parts = min(threads, m // _MIN_BLOCKS_PER_THREAD)
    edges = np.linspace(0, m, parts + 1).astype(int)
    return [slice(a, b) for a, b in zip(edges[:-1], edges[1:])]


def _run(fn, slices: list[slice], threads: int) -> None:
    if len(slices) == 1:
        fn(slices[0])
        return
    with ThreadPoolExecutor(max_workers=threads) as pool:
        list(pool.map(fn, slices))


def apply_factor(factor: SparseOrthFactor, x: np.ndarray, counter: OpCounter | None = None,
                 threads: int = 1) -> np.ndarray:
    """y = F x, blockwise.  Each output coordinate is produced by exactly one block."""
    x = _check_vector(x, factor.dim, "input")
    y = np.empty_like(x)
    y[factor.single_rows] = factor.single_vals * x[factor.single_cols]
    rows, cols, vals = factor.pair_rows, factor.pair_cols, factor.pair_vals

    def work(sl: slice) -> None:
        x0 = x[cols[sl, 0]]
        x1 = x[cols[sl, 1]]
        v = vals[sl]
        y[rows[sl, 0]] = v[:, 0, 0] * x0 + v[:, 0, 1] * x1
        y[rows[sl, 1]] = v[:, 1, 0] * x0 + v[:, 1, 1] * x1

    _run(work, _chunks(len(rows), threads), threads)
    if counter is not None:
        counter.add(len(factor.single_vals) + 4 * len(rows))
    return y


def apply_factor_transpose(factor: SparseOrthFactor, y: np.ndarray, counter: OpCounter | None = None,
                           threads: int = 1) -> np.ndarray:
    """x = F^T y, the inverse of :func:`apply_factor` for an orthogonal factor."""
    y = _check_vector(y, factor.dim, "input")
    x = np.empty_like(y)
    x[factor.single_cols] = factor.single_vals * y[factor.single_rows]
    rows, cols, vals = factor.pair_rows, factor.pair_cols, factor.pair_vals

    def work(sl: slice) -> None:
        y0 = y[rows[sl, 0]]
        y1 = y[rows[sl, 1]]
        v = vals[sl]
        x[cols[sl, 0]] = v[:, 0, 0] * y0 + v[:, 1, 0] * y1
        x[cols[sl, 1]] = v[:, 0, 1] * y0 + v[:, 1, 1] * y1

    _run(work, _chunks(len(rows), threads), threads)
    if counter is not None:
        counter.add(len(factor.single_vals) + 4 * len(rows))
    return x


def forward(plan: TransformPlan, f: np.ndarray, counter: OpCounter | None = None,
            threads: int = 1) -> np.ndarray:
    """Delta-basis values (canonical word order) -> Gelfand-Tsetlin coefficients."""
    f = _check_vector(f, plan.dim, "function vector")
    x = np.empty_like(f)
    x[plan.b0_to_b1] = f
    for factor in plan.factors:
        x = apply_factor(factor, x, counter, threads)
    return x


def inverse(plan: TransformPlan, c: np.ndarray, counter: OpCounter | None = None,
            threads: int = 1) -> np.ndarray:
    """Gelfand-Tsetlin coefficients (canonical tableau order) -> delta-basis values."""
    x = _check_vector(c, plan.dim, "coefficient vector")
    for factor in reversed(plan.factors):
        x = apply_factor_transpose(factor, x, counter, threads)
    return x[plan.b0_to_b1]
