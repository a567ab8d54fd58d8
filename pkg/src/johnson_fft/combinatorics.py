"""Label arithmetic for the Johnson graph J(n, k).

A k-subset of {1..n} is a word of length n over the letters '1' and '2',
with '1' at position j iff j belongs to the subset.  Words are plain ``str``
objects so that lexicographic comparison gives the canonical order (1 < 2).

Two-row standard tableaux carry the chain of Young diagrams; a basis label
of the intermediate basis B_i is a tableau of size i together with the
suffix word c_{i+1}...c_n.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from math import comb
from typing import NamedTuple, Sequence

LETTERS = ("1", "2")


def check_nk(n: int, k: int) -> None:
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    if not 0 <= k <= n:
        raise ValueError(f"k must satisfy 0 <= k <= n, got n={n}, k={k}")


def is_word(word: str, n: int, k: int) -> bool:
    return len(word) == n and set(word) <= set(LETTERS) and word.count("1") == k


def words_of(length: int, ones: int) -> list[str]:
    """All words of the given length with exactly ``ones`` letters '1', sorted."""
    out = []
    for pos in combinations(range(length), ones):
        letters = ["2"] * length
        for p in pos:
            letters[p] = "1"
        out.append("".join(letters))
    out.sort()
    return out


def enumerate_words(n: int, k: int) -> list[str]:
    """Canonical order of the delta basis B_0: all C(n, k) words, lexicographic."""
    check_nk(n, k)
    return words_of(n, k)


class StandardTableau(NamedTuple):
    """Two-row standard Young tableau stored as its two rows."""

    row1: tuple[int, ...] = ()
    row2: tuple[int, ...] = ()

    @property
    def size(self) -> int:
        return len(self.row1) + len(self.row2)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.row1), len(self.row2)

    def restrict(self) -> StandardTableau:
        """Delete the largest entry (the previous diagram in the chain)."""
        if self.row1 and (not self.row2 or self.row1[-1] > self.row2[-1]):
            return StandardTableau(self.row1[:-1], self.row2)
        return StandardTableau(self.row1, self.row2[:-1])

    def restrict_to(self, size: int) -> StandardTableau:
        return StandardTableau(
            tuple(e for e in self.row1 if e <= size),
            tuple(e for e in self.row2 if e <= size),
        )

    def grow(self, row: int) -> StandardTableau:
        """Add the entry size+1 at the end of ``row`` (1 or 2); no validity check."""
        nxt = len(self.row1) + len(self.row2) + 1
        if row == 1:
            return StandardTableau(self.row1 + (nxt,), self.row2)
        return StandardTableau(self.row1, self.row2 + (nxt,))

    def last_content(self) -> int:
        """Content of the box holding the largest entry."""
        if self.row1 and (not self.row2 or self.row1[-1] > self.row2[-1]):
            return len(self.row1) - 1
        return len(self.row2) - 2

    def is_valid(self) -> bool:
        entries = sorted(self.row1 + self.row2)
        if entries != list(range(1, self.size + 1)):
            return False
        if len(self.row2) > len(self.row1):
            return False
        for row in (self.row1, self.row2):
            if any(b <= a for a, b in zip(row, row[1:])):
                return False
        return all(self.row2[j] > self.row1[j] for j in range(len(self.row2)))

    def __str__(self) -> str:
        return format_tableau(self)


def tableau_contents(t: StandardTableau) -> tuple[int, ...]:
    """Entry j is the content (column - row) of the box labelled j."""
    out = [0] * t.size
    for col, e in enumerate(t.row1):
        out[e - 1] = col
    for col, e in enumerate(t.row2):
        out[e - 1] = col - 1
    return tuple(out)


def format_tableau(t: StandardTableau) -> str:
    """Serialize as "row1/row2", e.g. "134/25"; entries are comma separated once size >= 10."""
    sep = "," if t.size >= 10 else ""
    return sep.join(map(str, t.row1)) + "/" + sep.join(map(str, t.row2))


def parse_tableau(text: str) -> StandardTableau:
    if text.count("/") != 1:
        raise ValueError(f"tableau must look like 'row1/row2', got {text!r}")
    left, right = text.strip().split("/")
    if "," in text:
        conv = lambda s: tuple(int(x) for x in s.split(",")) if s else ()  # noqa: E731
    else:
        conv = lambda s: tuple(int(c) for c in s)  # noqa: E731
    try:
        t = StandardTableau(conv(left), conv(right))
    except ValueError:
        raise ValueError(f"bad tableau entries in {text!r}") from None
    if not t.is_valid():
        raise ValueError(f"{text!r} is not a standard tableau")
    return t


@lru_cache(maxsize=None)
def standard_tableaux(size: int, max_row2: int) -> tuple[StandardTableau, ...]:
    """Two-row standard tableaux of ``size`` boxes with second row length <= max_row2.

    Sorted by content vector, which is the canonical tableau order.
    """
    out: list[StandardTableau] = []

    def rec(row1: tuple[int, ...], row2: tuple[int, ...], nxt: int) -> None:
        if nxt > size:
            out.append(StandardTableau(row1, row2))
            return
        rec(row1 + (nxt,), row2, nxt + 1)
        if len(row2) < len(row1) and len(row2) < max_row2:
            rec(row1, row2 + (nxt,), nxt + 1)

    rec((), (), 1)
    out.sort(key=tableau_contents)
    return tuple(out)


def count_standard_tableaux(n: int, a: int) -> int:
    """Number of standard tableaux of shape (n-a, a): C(n,a) - C(n,a-1)."""
    return comb(n, a) - (comb(n, a - 1) if a >= 1 else 0)


class BasisLabel(NamedTuple):
    """Label of an element of B_i: tableau of size i plus the word c_{i+1}...c_n."""

    tableau: StandardTableau
    suffix: str

    @property
    def level(self) -> int:
        return self.tableau.size


def max_row2(level: int, suffix: str, k: int) -> int:
    """Largest admissible second-row length for a level-``level`` tableau with this suffix."""
    r = k - suffix.count("1")
    return min(r, level - r)


def is_feasible(label: BasisLabel, n: int, k: int) -> bool:
    i = label.level
    if len(label.suffix) != n - i or not label.tableau.is_valid():
        return False
    r = k - label.suffix.count("1")
    if r < 0 or r > i:
        return False
    return label.tableau.shape[1] <= min(r, i - r)


def enumerate_labels(n: int, k: int, i: int) -> list[BasisLabel]:
    """Canonically ordered labels of B_i: by suffix, then by tableau content vector."""
    check_nk(n, k)
    if not 0 <= i <= n:
        raise ValueError(f"level must satisfy 0 <= i <= n, got i={i}")
    length = n - i
    suffixes: list[str] = []
    for r in range(max(0, k - length), min(k, i) + 1):
        suffixes.extend(words_of(length, k - r))
    suffixes.sort()
    out = []
    for suffix in suffixes:
        for t in standard_tableaux(i, max_row2(i, suffix, k)):
            out.append(BasisLabel(t, suffix))
    return out


class RsState(NamedTuple):
    """Row insertion over the alphabet {1,2}.

    The insertion tableau is determined by three counts: ``ones_row1`` letters 1 and
    ``twos_row1`` letters 2 in the first row, ``twos_row2`` letters 2 in the second.
    """

    ones_row1: int = 0
    twos_row1: int = 0
    twos_row2: int = 0
    recording: StandardTableau = StandardTableau()


def rs_step(state: RsState, letter: str, step_index: int) -> RsState:
    x, y, z, rec = state
    if step_index != rec.size + 1:
        raise ValueError(f"step_index {step_index} does not follow recording size {rec.size}")
    if letter == "2":
        return RsState(x, y + 1, z, rec.grow(1))
    if letter != "1":
        raise ValueError(f"letter must be '1' or '2', got {letter!r}")
    if y > 0:
        return RsState(x + 1, y - 1, z + 1, rec.grow(2))
    return RsState(x + 1, y, z, rec.grow(1))


def rs_chain(word: str) -> list[BasisLabel]:
    """Labels (recording tableau, remaining suffix) after 0..n insertion steps."""
    state = RsState()
    chain = [BasisLabel(state.recording, word)]
    for j, letter in enumerate(word, start=1):
        state = rs_step(state, letter, j)
        chain.append(BasisLabel(state.recording, word[j:]))
    return chain


def block_key_change(label: BasisLabel, i: int) -> tuple[StandardTableau, str]:
    """Key of the subspace shared by S-related labels of B_{i-1} and B_i.

    The key is (tableau restricted to size i-1, suffix from position i+1).
    """
    level = label.level
    if level == i:
        return label.tableau.restrict(), label.suffix
    if level == i - 1:
        if not label.suffix:
            raise ValueError("level i-1 label has no suffix letter to drop")
        return label.tableau, label.suffix[1:]
    raise ValueError(f"label level {level} not in {{{i - 1}, {i}}}")


def block_key_j(label: BasisLabel, i: int) -> tuple[StandardTableau, str]:
    """Key (tableau restricted to size i-1, suffix from position i+2); groups of at most 4."""
    level = label.level
    if level not in (i - 1, i, i + 1) or i < 1:
        raise ValueError(f"label level {level} not in {{{i - 1}, {i}, {i + 1}}}")
    t = label.tableau
    for _ in range(level - (i - 1)):
        t = t.restrict()
    drop = (i + 1) - level
    if len(label.suffix) < drop:
        raise ValueError("suffix too short for this level")
    return t, label.suffix[drop:]


def group_sizes(labels: Sequence[BasisLabel], key) -> list[int]:
    """Sizes of the groups of ``labels`` under ``key``, in first-appearance order."""
    counts: dict = {}
    for lab in labels:
        kk = key(lab)
        counts[kk] = counts.get(kk, 0) + 1
    return list(counts.values())
