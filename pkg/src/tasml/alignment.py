"""Dynamic-programming kernels over generic symbol sequences.

Three kernels share one scoring scheme: global alignment (Needleman-Wunsch),
local alignment (Smith-Waterman) and longest common subsequence.  Symbols are
anything comparable with ``==``: the characters of a string or a list of word
tokens.  All scores are integers.

Every kernel fills the full ``(m+1) x (n+1)`` table exactly once.  Inside a
:func:`record_cell_visits` block each invocation appends a :class:`CellVisits`
entry so callers can audit the O(m*n) cost.
"""
from __future__ import annotations

from contextlib import contextmanager
from contextvars import ContextVar
from dataclasses import dataclass
from typing import Iterator, NamedTuple, Sequence


@dataclass(frozen=True)
class ScoringScheme:
    """Match/mismatch/gap costs shared by the alignment kernels."""

    match_score: int = 1
    mismatch_score: int = -1
    gap_penalty: int = -1

    def __post_init__(self):
        if self.match_score <= 0:
            raise ValueError(f"match_score must be > 0, got {self.match_score}")
        if self.mismatch_score > 0:
            raise ValueError(f"mismatch_score must be <= 0, got {self.mismatch_score}")
        if self.gap_penalty >= 0:
            raise ValueError(f"gap_penalty must be < 0, got {self.gap_penalty}")

    def similarity(self, x, y) -> int:
        return self.match_score if x == y else self.mismatch_score

    def scaled(self, factor: int) -> "ScoringScheme":
        if factor <= 0:
            raise ValueError("scale factor must be a positive integer")
        return ScoringScheme(
            self.match_score * factor,
            self.mismatch_score * factor,
            self.gap_penalty * factor,
        )


DEFAULT_SCHEME = ScoringScheme()


class CellVisits(NamedTuple):
    kernel: str
    m: int
    n: int
    visits: int

    @property
    def expected(self) -> int:
        return (self.m + 1) * (self.n + 1)


_cell_log: ContextVar[list | None] = ContextVar("tasml_cell_log", default=None)


@contextmanager
def record_cell_visits() -> Iterator[list[CellVisits]]:
    """Collect one :class:`CellVisits` per kernel call made inside the block."""
    log: list[CellVisits] = []
    token = _cell_log.set(log)
    try:
        yield log
    finally:
        _cell_log.reset(token)


def _report(kernel: str, m: int, n: int, visits: int) -> None:
    log = _cell_log.get()
    if log is not None:
        log.append(CellVisits(kernel, m, n, visits))


def global_alignment_score(a: Sequence, b: Sequence, scheme: ScoringScheme = DEFAULT_SCHEME) -> int:
    """Needleman-Wunsch score with linear gap cost.

    >>> global_alignment_score("", "abc")
    -3
    >>> global_alignment_score("kitten", "kitten")
    6
    """
    m, n = len(a), len(b)
    d = scheme.gap_penalty
    match, mismatch = scheme.match_score, scheme.mismatch_score
    prev = [d * j for j in range(n + 1)]
    visits = n + 1
    for i in range(1, m + 1):
        ai = a[i - 1]
        row = [d * i]
        visits += 1
        for j in range(1, n + 1):
            diag = prev[j - 1] + (match if ai == b[j - 1] else mismatch)
            left = row[j - 1] + d
            up = prev[j] + d
            row.append(max(diag, left, up))
            visits += 1
        prev = row
    _report("global", m, n, visits)
    return prev[n]


def local_alignment_score(a: Sequence, b: Sequence, scheme: ScoringScheme = DEFAULT_SCHEME) -> int:
    """Smith-Waterman score: best segment alignment, floored at zero."""
    m, n = len(a), len(b)
    d = scheme.gap_penalty
    match, mismatch = scheme.match_score, scheme.mismatch_score
    prev = [0] * (n + 1)
    visits = n + 1
    best = 0
    for i in range(1, m + 1):
        ai = a[i - 1]
        row = [0]
        visits += 1
        for j in range(1, n + 1):
            cell = max(
                0,
                prev[j - 1] + (match if ai == b[j - 1] else mismatch),
                row[j - 1] + d,
                prev[j] + d,
            )
            row.append(cell)
            visits += 1
            if cell > best:
                best = cell
        prev = row
    _report("local", m, n, visits)
    return best


def lcs_table(a: Sequence, b: Sequence) -> list[list[int]]:
    m, n = len(a), len(b)
    table = [[0] * (n + 1)]
    visits = n + 1
    for i in range(1, m + 1):
        ai = a[i - 1]
        above = table[i - 1]
        row = [0]
        visits += 1
        for j in range(1, n + 1):
            if ai == b[j - 1]:
                row.append(above[j - 1] + 1)
            else:
                row.append(max(above[j], row[j - 1]))
            visits += 1
        table.append(row)
    _report("lcs", m, n, visits)
    return table


def longest_common_subsequence(a: Sequence, b: Sequence):
    """Return ``(length, witness)`` for the longest common subsequence.

    The witness is traced back preferring the diagonal, then up, then left,
    so it is deterministic.  It is a ``str`` when both inputs are strings and
    a list otherwise.

    >>> longest_common_subsequence("SIGN", "SIGN")
    (4, 'SIGN')
    """
    table = lcs_table(a, b)
    i, j = len(a), len(b)
    witness = []
    while i > 0 and j > 0:
        if a[i - 1] == b[j - 1]:
            witness.append(a[i - 1])
            i -= 1
            j -= 1
        elif table[i - 1][j] >= table[i][j - 1]:
            i -= 1
        else:
            j -= 1
    witness.reverse()
    if isinstance(a, str) and isinstance(b, str):
        witness = "".join(witness)
    return table[len(a)][len(b)], witness


def lcs_length(a: Sequence, b: Sequence) -> int:
    return lcs_table(a, b)[len(a)][len(b)]
