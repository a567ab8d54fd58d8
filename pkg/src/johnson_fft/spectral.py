"""Isotypic weights and projections of functions on k-subsets."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .factorization import TransformPlan
from .transform import OpCounter, forward, inverse


@dataclass(frozen=True)
class SpectralReport:
    """``weights[a]`` is the squared norm of the component of shape (n-a, a)."""

    n: int
    k: int
    weights: np.ndarray
    total: float

    @property
    def shares(self) -> np.ndarray:
        if self.total == 0:
            return np.zeros_like(self.weights)
        return self.weights / self.total

    def shape(self, a: int) -> tuple[int, int]:
        return self.n - a, a


def weights_bound(n: int, dim: int) -> int:
    return (2 * n - 1) * dim


def project_bound(n: int, dim: int) -> int:
    return 4 * (n - 1) * dim


def weights(plan: TransformPlan, f: np.ndarray, counter: OpCounter | None = None,
            threads: int = 1) -> SpectralReport:
    """All isotypic weights from one forward transform plus one square per coefficient.

    ``total`` is the sum of the weights, which equals the squared norm of f.
    """
    coeffs = forward(plan, f, counter, threads)
    w = np.bincount(plan.shape_index, weights=coeffs * coeffs, minlength=plan.s + 1)
    if counter is not None:
        counter.add(plan.dim)
    return SpectralReport(plan.n, plan.k, w, float(w.sum()))


def normalize_components(plan: TransformPlan, components: int | Iterable[int]) -> frozenset[int]:
    if isinstance(components, (int, np.integer)):
        components = [int(components)]
    out = frozenset(int(a) for a in components)
    bad = sorted(a for a in out if not 0 <= a <= plan.s)
    if bad:
        raise ValueError(f"component indices {bad} outside 0..{plan.s}")
    return out


def project(plan: TransformPlan, f: np.ndarray, components: int | Iterable[int],
            counter: OpCounter | None = None, threads: int = 1) -> np.ndarray:
    """Sum of the isotypic components of f whose index a lies in ``components``."""
    keep = normalize_components(plan, components)
    coeffs = forward(plan, f, counter, threads)
    mask = np.isin(plan.shape_index, sorted(keep))
    coeffs[~mask] = 0.0
    return inverse(plan, coeffs, counter, threads)
