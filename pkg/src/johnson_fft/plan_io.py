"""Plan cache files.

Line-oriented text, one record per line::

    johnson-fft-plan
    format_version 1
    n 4
    k 2
    dim 6
    build_ops 412
    level 0 6
    / 1122              <- tableau, suffix ("-" when empty)
    ...
    factor 1 4
    3 0 1.0000000000000000   <- rows ; cols ; entries row-major
    1,2 0,4 7.0710678118654757e-01 ...
    end

Entries are written with 17 significant digits, which round-trips every
double exactly, so a reloaded plan gives bit-identical transforms.
"""

from __future__ import annotations

from math import comb
from pathlib import Path

import numpy as np

from .combinatorics import BasisLabel, enumerate_labels, format_tableau, parse_tableau
from .errors import InvariantError, PlanFormatError
from .factorization import Block, LabelTables, SparseOrthFactor, TransformPlan, relabel_b0_b1

MAGIC = "johnson-fft-plan"
FORMAT_VERSION = 1


def _ints(xs) -> str:
    return ",".join(str(int(x)) for x in xs)


def write_plan(plan: TransformPlan, path: str | Path) -> None:
    lines = [MAGIC, f"format_version {FORMAT_VERSION}", f"n {plan.n}", f"k {plan.k}",
             f"dim {plan.dim}", f"build_ops {plan.build_ops}"]
    for i, table in enumerate(plan.labels):
        lines.append(f"level {i} {len(table)}")
        lines.extend(f"{format_tableau(lab.tableau)} {lab.suffix or '-'}" for lab in table)
    for factor in plan.factors:
        blocks = factor.blocks
        lines.append(f"factor {factor.level} {len(blocks)}")
        for b in blocks:
            entries = " ".join(f"{v:.17g}" for v in np.asarray(b.entries).ravel())
            lines.append(f"{_ints(b.rows)} {_ints(b.cols)} {entries}")
    lines.append("end")
    Path(path).write_text("\n".join(lines) + "\n")


class _Reader:
    def __init__(self, text: str):
        self.lines = text.splitlines()
        self.pos = 0

    def next(self) -> tuple[int, str]:
        if self.pos >= len(self.lines):
            raise PlanFormatError("unexpected end of file", len(self.lines))
        self.pos += 1
        return self.pos, self.lines[self.pos - 1].strip()

    def field(self, name: str, count: int = 1) -> list[int]:
        lineno, line = self.next()
        parts = line.split()
        if len(parts) != count + 1 or parts[0] != name:
            raise PlanFormatError(f"expected '{name}' record, got {line!r}", lineno)
        try:
            return [int(p) for p in parts[1:]]
        except ValueError:
            raise PlanFormatError(f"non-integer value in {line!r}", lineno) from None


def read_header(path: str | Path) -> dict[str, int]:
    """Return {format_version, n, k, dim} without reading the body."""
    with open(path) as fh:
        head = "".join(fh.readline() for _ in range(5))
    r = _Reader(head)
    lineno, magic = r.next()
    if magic != MAGIC:
        raise PlanFormatError(f"not a plan file (first line {magic!r})", lineno)
    out = {}
    for name in ("format_version", "n", "k", "dim"):
        out[name] = r.field(name)[0]
    return out


def load_plan(path: str | Path) -> TransformPlan:
    r = _Reader(Path(path).read_text())
    lineno, magic = r.next()
    if magic != MAGIC:
        raise PlanFormatError(f"not a plan file (first line {magic!r})", lineno)
    (version,) = r.field("format_version")
    if version != FORMAT_VERSION:
        raise PlanFormatError(f"unsupported format_version {version}", r.pos)
    (n,) = r.field("n")
    (k,) = r.field("k")
    (dim,) = r.field("dim")
    if n < 1 or not 0 <= k <= n or dim != comb(n, k):
        raise PlanFormatError(f"inconsistent header n={n} k={k} dim={dim}", r.pos)
    (build_ops,) = r.field("build_ops")

    levels = []
    for i in range(n + 1):
        level, count = r.field("level", 2)
        if level != i or count != dim:
            raise PlanFormatError(f"expected level {i} with {dim} labels", r.pos)
        expected = enumerate_labels(n, k, i)
        table = []
        for j in range(dim):
            lineno, line = r.next()
            parts = line.split()
            if len(parts) != 2:
                raise PlanFormatError(f"bad label line {line!r}", lineno)
            try:
                lab = BasisLabel(parse_tableau(parts[0]), "" if parts[1] == "-" else parts[1])
            except ValueError as exc:
                raise PlanFormatError(str(exc), lineno) from None
            if lab != expected[j]:
                raise PlanFormatError(f"label {line!r} is not the canonical label #{j} of level {i}",
                                      lineno)
            table.append(lab)
        levels.append(table)

    factors = []
    for level in range(1, n):
        got, count = r.field("factor", 2)
        if got != level:
            raise PlanFormatError(f"expected factor {level}, got {got}", r.pos)
        blocks = []
        for _ in range(count):
            lineno, line = r.next()
            parts = line.split()
            try:
                rows = tuple(int(x) for x in parts[0].split(","))
                cols = tuple(int(x) for x in parts[1].split(","))
                entries = np.array([float(x) for x in parts[2:]])
            except (ValueError, IndexError):
                raise PlanFormatError(f"bad block line {line!r}", lineno) from None
            if len(rows) != len(cols) or len(rows) not in (1, 2) or entries.size != len(rows) ** 2:
                raise PlanFormatError(f"block shape mismatch in {line!r}", lineno)
            if min(rows + cols) < 0 or max(rows + cols) >= dim:
                raise PlanFormatError(f"block index out of range in {line!r}", lineno)
            blocks.append(Block(rows, cols, entries.reshape(len(rows), len(rows))))
        factor = SparseOrthFactor.from_blocks(level, dim, blocks)
        try:
            factor.check_coverage()
        except InvariantError as exc:
            raise PlanFormatError(str(exc), r.pos) from None
        factors.append(factor)
    lineno, line = r.next()
    if line != "end":
        raise PlanFormatError(f"expected 'end', got {line!r}", lineno)

    tables = LabelTables(n, k, levels)
    return TransformPlan(n=n, k=k, labels=tuple(tables.levels), b0_to_b1=relabel_b0_b1(tables),
                         factors=tuple(factors), build_ops=build_ops, _tables=tables)
