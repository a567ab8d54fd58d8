"""Spectral summary of synthetic approval ballots.

Each voter approves k of n candidates.  Voters first pick a candidate with
probability proportional to its popularity, then keep drawing without
replacement; a fraction ``pair_bias`` of voters always approve candidates 1
and 2 together, which shows up as extra weight in the second-order
component.  The script prints the isotypic weights of the ballot counts and
of the pure first-order model fitted by projection.

    python scripts/ballot_analysis.py --n 8 --k 3 --voters 20000
"""

from __future__ import annotations

import argparse
from dataclasses import dataclass

import numpy as np

from johnson_fft import build_plan, project, weights


@dataclass
class BallotConfig:
    n: int = 8
    k: int = 3
    voters: int = 20000
    pair_bias: float = 0.15
    seed: int = 1


def sample_ballots(cfg: BallotConfig, rng: np.random.Generator) -> list[str]:
    popularity = np.linspace(2.0, 0.5, cfg.n)
    ballots = []
    for _ in range(cfg.voters):
        chosen: list[int] = []
        if cfg.k >= 2 and rng.random() < cfg.pair_bias:
            chosen = [0, 1]
        while len(chosen) < cfg.k:
            p = popularity.copy()
            p[chosen] = 0.0
            chosen.append(int(rng.choice(cfg.n, p=p / p.sum())))
        word = ["2"] * cfg.n
        for c in chosen:
            word[c] = "1"
        ballots.append("".join(word))
    return ballots


def print_report(title: str, report) -> None:
    print(title)
    for a, (w, share) in enumerate(zip(report.weights, report.shares)):
        print(f"  a={a} shape=({report.n - a},{a})  weight={w:14.2f}  share={share:.4f}")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for name, default in vars(BallotConfig()).items():
        parser.add_argument(f"--{name.replace('_', '-')}", type=type(default), default=default)
    cfg = BallotConfig(**vars(parser.parse_args()))
    rng = np.random.default_rng(cfg.seed)

    plan = build_plan(cfg.n, cfg.k)
    counts = np.zeros(plan.dim)
    for ballot in sample_ballots(cfg, rng):
        counts[plan.word_index[ballot]] += 1

    print_report(f"ballot counts, n={cfg.n}, k={cfg.k}, {cfg.voters} voters", weights(plan, counts))
    first_order = project(plan, counts, {0, 1})
    resid = counts - first_order
    print(f"first-order fit explains {1 - resid @ resid / (counts @ counts):.4%} of the squared norm")
    top = np.argsort(-np.abs(resid))[:5]
    print("largest residuals (observed - first-order fit):")
    for j in top:
        print(f"  {plan.words[j]}  {counts[j]:8.0f}  {resid[j]:+9.1f}")


if __name__ == "__main__":
    main()
