"""Command-line interface: ``johnson-fft <command> [options]``.

Exit codes: 0 ok, 1 usage, 2 I/O or malformed input, 3 verification
failure, 4 resource budget exceeded.
"""

from __future__ import annotations

import argparse
import sys
import time
from math import comb

import numpy as np

from .data_io import (read_coefficients, read_function, write_coefficients,
                      write_function)
from .errors import PlanFormatError, ResourceBudgetError
from .factorization import DEFAULT_MAX_DIM, TransformPlan, build_plan
from .oracle import DENSE_MAX_DIM, verify_plan
from .plan_io import load_plan, read_header, write_plan
from .spectral import project, project_bound, weights, weights_bound
from .transform import OpCounter, forward, forward_bound, inverse

EXIT_OK, EXIT_USAGE, EXIT_IO, EXIT_VERIFY, EXIT_BUDGET = 0, 1, 2, 3, 4
BUILD_OPS_PER_NC = 100


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _bound_line(name: str, ops: int, bound: int) -> str:
    status = "within" if ops <= bound else "EXCEEDS"
    return f"{name} ops: {ops} (bound {bound}, {status})"


def _check_nk(args) -> tuple[int, int]:
    n, k = args.n, args.k
    if n is None or k is None:
        raise UsageError("--n and --k are required")
    if n < 1 or not 0 <= k <= n:
        raise UsageError(f"need n >= 1 and 0 <= k <= n, got n={n}, k={k}")
    return n, k


def _get_plan(args) -> TransformPlan:
    """Load --plan if given (checking it against --n/--k), else build from --n/--k."""
    if args.plan:
        header = read_header(args.plan)
        for name in ("n", "k"):
            want = getattr(args, name)
            if want is not None and want != header[name]:
                raise PlanFormatError(f"plan file has {name}={header[name]}, requested {name}={want}")
        return load_plan(args.plan)
    n, k = _check_nk(args)
    return build_plan(n, k, max_dim=args.max_dim)


def _require(args, *names: str) -> None:
    missing = [f"--{x.replace('_', '-')}" for x in names if getattr(args, x) is None]
    if missing:
        raise UsageError(f"{args.command} needs {' '.join(missing)}")


def _components(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"--components must be comma separated integers, got {text!r}") from None


def cmd_plan(args) -> int:
    _require(args, "out")
    n, k = _check_nk(args)
    start = time.perf_counter()
    plan = build_plan(n, k, max_dim=args.max_dim)
    elapsed = time.perf_counter() - start
    write_plan(plan, args.out)
    print(f"n={n} k={k} dim={plan.dim} factors={len(plan.factors)}")
    print(_bound_line("build", plan.build_ops, BUILD_OPS_PER_NC * n * plan.dim))
    print(f"build time: {elapsed:.3f} s")
    print(f"wrote {args.out}")
    return EXIT_OK


def cmd_transform(args) -> int:
    _require(args, "in_path", "out")
    plan = _get_plan(args)
    counter = OpCounter()
    if args.direction == "forward":
        f = read_function(args.in_path, plan, args.format)
        out = forward(plan, f, counter, args.threads)
        write_coefficients(args.out, plan, out, args.format)
    else:
        c = read_coefficients(args.in_path, plan, args.format)
        out = inverse(plan, c, counter, args.threads)
        write_function(args.out, plan, out, args.format)
    print(_bound_line(args.direction, counter.count, forward_bound(plan.n, plan.dim)))
    print(f"wrote {args.out}")
    return EXIT_OK


def cmd_weights(args) -> int:
    _require(args, "in_path")
    plan = _get_plan(args)
    f = read_function(args.in_path, plan, args.format)
    counter = OpCounter()
    report = weights(plan, f, counter, args.threads)
    print(f"{'a':>3} {'shape':>9} {'weight':>14} {'share':>8}")
    for a, (w, share) in enumerate(zip(report.weights, report.shares)):
        shape = f"({plan.n - a},{a})"
        print(f"{a:>3} {shape:>9} {w:>14.6g} {share:>8.4f}")
    print(f"total: {report.total:.6g}")
    print(_bound_line("weights", counter.count, weights_bound(plan.n, plan.dim)))
    return EXIT_OK


def cmd_project(args) -> int:
    _require(args, "in_path", "out", "components")
    plan = _get_plan(args)
    comps = _components(args.components)
    bad = [a for a in comps if not 0 <= a <= plan.s]
    if bad:
        raise UsageError(f"components {bad} outside 0..{plan.s}")
    f = read_function(args.in_path, plan, args.format)
    counter = OpCounter()
    g = project(plan, f, comps, counter, args.threads)
    write_function(args.out, plan, g, args.format)
    print(_bound_line("project", counter.count, project_bound(plan.n, plan.dim)))
    print(f"wrote {args.out}")
    return EXIT_OK


def cmd_verify(args) -> int:
    plan = _get_plan(args)
    report = verify_plan(plan, max_dim=args.dense_max_dim)
    print(report.format())
    return EXIT_OK if report.passed else EXIT_VERIFY


def cmd_bench(args) -> int:
    n, k = _check_nk(args)
    if args.reps < 1:
        raise UsageError("--reps must be at least 1")
    dim = comb(n, k)
    start = time.perf_counter()
    plan = build_plan(n, k, max_dim=args.max_dim)
    build_time = time.perf_counter() - start
    rng = np.random.default_rng(args.seed)
    f = rng.standard_normal(dim)

    fwd = OpCounter()
    start = time.perf_counter()
    for _ in range(args.reps):
        coeffs = forward(plan, f, threads=args.threads)
    fwd_time = (time.perf_counter() - start) / args.reps
    start = time.perf_counter()
    for _ in range(args.reps):
        back = inverse(plan, coeffs, threads=args.threads)
    inv_time = (time.perf_counter() - start) / args.reps
    forward(plan, f, fwd)
    w_ops, p_ops = OpCounter(), OpCounter()
    weights(plan, f, w_ops)
    project(plan, f, [0], p_ops)

    print(f"n={n} k={k} dim={dim} reps={args.reps} threads={args.threads}")
    print(f"build time: {build_time:.4f} s")
    print(f"forward time: {fwd_time * 1e3:.3f} ms per transform")
    print(f"inverse time: {inv_time * 1e3:.3f} ms per transform")
    print(f"round trip error: {np.abs(back - f).max():.3e}")
    print(_bound_line("build", plan.build_ops, BUILD_OPS_PER_NC * n * dim))
    print(_bound_line("forward", fwd.count, forward_bound(n, dim)))
    print(_bound_line("weights", w_ops.count, weights_bound(n, dim)))
    print(_bound_line("project", p_ops.count, project_bound(n, dim)))
    return EXIT_OK


COMMANDS = {
    "plan": cmd_plan,
    "transform": cmd_transform,
    "weights": cmd_weights,
    "project": cmd_project,
    "verify": cmd_verify,
    "bench": cmd_bench,
}


def make_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="johnson-fft", description="Fast Fourier transform on the Johnson graph J(n,k).")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    help_text = {
        "plan": "build a plan and write it to --out",
        "transform": "forward or inverse transform of a vector file",
        "weights": "isotypic weights of a function",
        "project": "projection onto a set of isotypic components",
        "verify": "check a plan against the dense oracle",
        "bench": "time plan build and transforms",
    }
    for name, text in help_text.items():
        p = sub.add_parser(name, help=text)
        p.add_argument("--n", type=int)
        p.add_argument("--k", type=int)
        p.add_argument("--max-dim", type=int, default=DEFAULT_MAX_DIM, help="refuse plans larger than this")
        if name != "bench":
            p.add_argument("--plan", help="cached plan file (otherwise built from --n/--k)")
        if name in ("plan", "transform", "project"):
            p.add_argument("--out")
        if name in ("transform", "weights", "project"):
            p.add_argument("--in", dest="in_path")
            p.add_argument("--format", choices=("csv", "json"), help="default: from file extension")
        if name in ("transform", "weights", "project", "bench"):
            p.add_argument("--threads", type=int, default=1)
        if name == "transform":
            p.add_argument("--direction", choices=("forward", "inverse"), default="forward")
        if name == "project":
            p.add_argument("--components", help="comma separated indices a, e.g. 0,1")
        if name == "verify":
            p.add_argument("--dense-max-dim", type=int, default=DENSE_MAX_DIM)
        if name == "bench":
            p.add_argument("--reps", type=int, default=5)
            p.add_argument("--seed", type=int, default=0)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = make_parser().parse_args(argv)
    if getattr(args, "threads", 1) < 1:
        print("error: --threads must be at least 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceBudgetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except PlanFormatError as exc:
        print(f"error: malformed input: {exc}", file=sys.stderr)
        return EXIT_IO
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
