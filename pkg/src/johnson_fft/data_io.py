"""Reading and writing function values and coefficient files.

CSV: one ``key,value`` pair per line; blank lines and lines starting with
``#`` are ignored.  JSON: ``{"n": .., "k": .., "values": {key: value}}``.
Keys are words over {1,2} for function values and tableau strings such as
"134/25" for coefficients.  Missing keys read as 0; duplicates are errors.
"""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path
from typing import Callable

import numpy as np

from .combinatorics import format_tableau, is_word, parse_tableau
from .errors import PlanFormatError
from .factorization import TransformPlan


def infer_format(path: str | Path, fmt: str | None) -> str:
    if fmt:
        return fmt
    return "json" if str(path).lower().endswith(".json") else "csv"


def _no_duplicates(pairs):
    keys = [k for k, _ in pairs]
    dup = {k for k in keys if keys.count(k) > 1}
    if dup:
        raise PlanFormatError(f"duplicate key {sorted(dup)[0]!r}")
    return dict(pairs)


def _parse_json(text: str):
    try:
        return json.loads(text, object_pairs_hook=_no_duplicates)
    except json.JSONDecodeError as exc:
        raise PlanFormatError(f"invalid JSON: {exc.msg}", exc.lineno) from None


def _json_pairs(doc, n: int, k: int) -> list[tuple[int | None, str, float]]:
    values = doc.get("values") if isinstance(doc, dict) else None
    if not isinstance(values, dict):
        raise PlanFormatError("JSON input needs a 'values' object")
    for name, want in (("n", n), ("k", k)):
        if name in doc and doc[name] != want:
            raise PlanFormatError(f"file has {name}={doc[name]}, plan has {name}={want}")
    out = []
    for key, val in values.items():
        try:
            out.append((None, str(key), float(val)))
        except (TypeError, ValueError):
            raise PlanFormatError(f"value for {key!r} is not a number") from None
    return out


def _csv_pairs(text: str) -> list[tuple[int | None, str, float]]:
    out = []
    for lineno, row in enumerate(csv.reader(io.StringIO(text)), start=1):
        if not row or not "".join(row).strip() or row[0].lstrip().startswith("#"):
            continue
        if len(row) != 2:
            raise PlanFormatError(f"expected 'key,value', got {','.join(row)!r}", lineno)
        try:
            out.append((lineno, row[0].strip(), float(row[1])))
        except ValueError:
            raise PlanFormatError(f"value {row[1]!r} is not a number", lineno) from None
    return out


def _read_vector(path, fmt, plan: TransformPlan, parse_key: Callable[[str], int], what: str):
    fmt = infer_format(path, fmt)
    text = Path(path).read_text()
    if fmt == "json":
        pairs = _json_pairs(_parse_json(text), plan.n, plan.k)
    else:
        pairs = _csv_pairs(text)
    out = np.zeros(plan.dim)
    seen: set[int] = set()
    for lineno, key, val in pairs:
        try:
            j = parse_key(key)
        except (KeyError, ValueError):
            raise PlanFormatError(f"{what} {key!r} is not valid for n={plan.n}, k={plan.k}",
                                  lineno) from None
        if j in seen:
            raise PlanFormatError(f"duplicate {what} {key!r}", lineno)
        seen.add(j)
        out[j] = val
    return out


def read_function(path, plan: TransformPlan, fmt: str | None = None) -> np.ndarray:
    def key(word: str) -> int:
        if not is_word(word, plan.n, plan.k):
            raise KeyError(word)
        return plan.word_index[word]

    return _read_vector(path, fmt, plan, key, "word")


def read_coefficients(path, plan: TransformPlan, fmt: str | None = None) -> np.ndarray:
    def key(text: str) -> int:
        return plan.tableau_index[parse_tableau(text)]

    return _read_vector(path, fmt, plan, key, "tableau")


def _write(path, fmt, plan: TransformPlan, keys: list[str], values: np.ndarray) -> None:
    fmt = infer_format(path, fmt)
    if fmt == "json":
        doc = {"n": plan.n, "k": plan.k, "values": {k: float(v) for k, v in zip(keys, values)}}
        Path(path).write_text(json.dumps(doc, indent=1) + "\n")
        return
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        for key, val in zip(keys, values):
            writer.writerow([key, repr(float(val))])


def write_function(path, plan: TransformPlan, values: np.ndarray, fmt: str | None = None) -> None:
    _write(path, fmt, plan, plan.words, values)


def write_coefficients(path, plan: TransformPlan, coeffs: np.ndarray, fmt: str | None = None) -> None:
    _write(path, fmt, plan, [format_tableau(t) for t in plan.tableaux], coeffs)
