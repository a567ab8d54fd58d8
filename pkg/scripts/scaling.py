"""Counted operations and wall-clock time against C(n,k) for middle k.

    python scripts/scaling.py --max-n 16 --reps 5
"""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass
from math import comb

import numpy as np

from johnson_fft import OpCounter, build_plan, forward, inverse
from johnson_fft.transform import forward_bound


@dataclass
class ScalingConfig:
    min_n: int = 4
    max_n: int = 16
    reps: int = 5
    seed: int = 0
    threads: int = 1


@dataclass
class ScalingRow:
    n: int
    k: int
    dim: int
    build_ops: int
    forward_ops: int
    build_s: float
    forward_ms: float
    roundtrip: float

    @property
    def ops_per_nc(self) -> float:
        return self.forward_ops / (self.n * self.dim)


def run(cfg: ScalingConfig) -> list[ScalingRow]:
    rng = np.random.default_rng(cfg.seed)
    rows = []
    for n in range(cfg.min_n, cfg.max_n + 1):
        k = n // 2
        t0 = time.perf_counter()
        plan = build_plan(n, k)
        build_s = time.perf_counter() - t0
        f = rng.standard_normal(plan.dim)
        counter = OpCounter()
        forward(plan, f, counter)
        t0 = time.perf_counter()
        for _ in range(cfg.reps):
            c = forward(plan, f, threads=cfg.threads)
        forward_ms = (time.perf_counter() - t0) / cfg.reps * 1e3
        err = float(np.abs(inverse(plan, c) - f).max())
        assert counter.count <= forward_bound(n, plan.dim)
        rows.append(ScalingRow(n, k, comb(n, k), plan.build_ops, counter.count, build_s, forward_ms, err))
    return rows


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for name, default in vars(ScalingConfig()).items():
        parser.add_argument(f"--{name.replace('_', '-')}", type=type(default), default=default)
    cfg = ScalingConfig(**vars(parser.parse_args()))
    print(f"{'n':>3} {'k':>3} {'C(n,k)':>8} {'fwd ops':>9} {'/nC':>6} {'build ops':>10} "
          f"{'build s':>8} {'fwd ms':>8} {'roundtrip':>10}")
    for r in run(cfg):
        print(f"{r.n:>3} {r.k:>3} {r.dim:>8} {r.forward_ops:>9} {r.ops_per_nc:>6.3f} {r.build_ops:>10} "
              f"{r.build_s:>8.3f} {r.forward_ms:>8.3f} {r.roundtrip:>10.1e}")


if __name__ == "__main__":
    main()
