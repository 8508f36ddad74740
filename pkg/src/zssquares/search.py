"""Exhaustive enumeration of zero-sum-square-free matrices.

Cells are filled in row-major order, ``-1`` before ``+1``, so results come
out in lexicographic order.  A branch is cut only when the last placement
closes a zero-sum square or when the requested discrepancy is no longer
reachable with the cells that are left.  The search does no symmetry
reduction; see :mod:`zssquares.symmetry` for that.

Parallel runs expand the first few cells into subtree roots, search each
root independently in a process pool, and collect results in root order,
so output does not depend on the worker count.

Practical envelope: the compiled search finishes ``11 x 12`` with
``|disc| <= 22`` in well under a minute on one core.  Rows are packed into
64-bit words, so ``cols`` is capped at 64.
"""

from __future__ import annotations

import enum
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterator, Optional

import numpy as np

from . import _kernel
from .matrix import (
    BinaryMatrix,
    PartialFill,
    completes_zero_sum_square,
    discrepancy,
    is_zero_sum_square_free,
)

__all__ = [
    "BRUTE_FORCE_CELL_CAP",
    "DEFAULT_PREFIX_CELLS",
    "Emit",
    "EnumerationQuery",
    "EnumerationReport",
    "brute_force_matrices",
    "count_all_unpruned",
    "zssf_with_disc",
    "enumerate_matrices",
    "expand_prefixes",
    "collect_matrices",
]

DEFAULT_PREFIX_CELLS = 8
BRUTE_FORCE_CELL_CAP = 20
MAX_COLS = 64


class Emit(str, enum.Enum):
    MATRICES = "matrices"
    COUNT = "count-only"


@dataclass(frozen=True)
class EnumerationQuery:
    """What to enumerate.

    Give at most one of ``disc`` (exact value) and ``max_abs_disc`` (bound on
    ``|disc|``); with neither, every discrepancy is accepted.
    """

    rows: int
    cols: int
    disc: Optional[int] = None
    max_abs_disc: Optional[int] = None
    require_zssf: bool = True
    emit: Emit = Emit.MATRICES

    def __post_init__(self) -> None:
        if self.rows < 1 or self.cols < 1:
            raise ValueError(f"shape must be positive, got {self.rows}x{self.cols}")
        if self.cols > MAX_COLS:
            raise ValueError(f"cols={self.cols} exceeds {MAX_COLS}")
        if self.disc is not None and self.max_abs_disc is not None:
            raise ValueError("disc and max_abs_disc are mutually exclusive")
        if self.max_abs_disc is not None and self.max_abs_disc < 0:
            raise ValueError("max_abs_disc must be non-negative")

    @property
    def size(self) -> int:
        return self.rows * self.cols

    def disc_range(self) -> tuple[int, int]:
        """Reachable ``[lo, hi]``, both with the parity of ``rows*cols``.

        ``lo > hi`` means the query is provably empty.
        """
        n = self.size
        if self.disc is not None:
            lo = hi = self.disc
        elif self.max_abs_disc is not None:
            lo, hi = -self.max_abs_disc, self.max_abs_disc
        else:
            lo, hi = -n, n
        lo, hi = max(lo, -n), min(hi, n)
        if (lo - n) % 2:
            lo += 1
        if (hi - n) % 2:
            hi -= 1
        return lo, hi

    def accepts_disc(self, d: int) -> bool:
        lo, hi = self.disc_range()
        return lo <= d <= hi and (d - self.size) % 2 == 0


@dataclass
class EnumerationReport:
    rows: int
    cols: int
    total: int = 0
    per_disc: dict[int, int] = field(default_factory=dict)
    split_count: int = 0
    exceptional_count: int = 0
    elapsed: float = 0.0

    def to_json(self, timing: bool = True) -> dict:
        out = {
            "rows": self.rows,
            "cols": self.cols,
            "total": self.total,
            "per_disc": {str(d): c for d, c in sorted(self.per_disc.items())},
            "split_count": self.split_count,
            "exceptional_count": self.exceptional_count,
        }
        if timing:
            out["elapsed"] = round(self.elapsed, 6)
        return out


def _feasible(p: int, left: int, lo: int, hi: int) -> bool:
    return p - left <= hi and p + left >= lo


def expand_prefixes(q: EnumerationQuery, depth: int) -> list[tuple[int, ...]]:
    """Surviving fills of the first ``depth`` cells, in lexicographic order."""
    lo, hi = q.disc_range()
    if lo > hi:
        return []
    depth = min(depth, q.cols, q.size)
    fill = PartialFill(q.rows, q.cols)
    out: list[tuple[int, ...]] = []

    def walk() -> None:
        if fill.filled == depth:
            out.append(fill.prefix())
            return
        r, c = fill.next_cell()
        for v in (-1, 1):
            if not _feasible(fill.partial_disc + v, fill.remaining - 1, lo, hi):
                continue
            if q.require_zssf and completes_zero_sum_square(fill, r, c, v):
                continue
            fill.push(v)
            walk()
            fill.pop()

    walk()
    return out


def _search_root(args):
    rows, cols, prefix, lo, hi, require_zssf, materialize = args
    codes, n_codes, per_disc, split = _kernel.search(
        rows, cols, np.asarray(prefix, dtype=np.int8), lo, hi, require_zssf, materialize
    )
    return codes[:n_codes], per_disc, split


def _default_jobs() -> int:
    return len(os.sched_getaffinity(0)) if hasattr(os, "sched_getaffinity") else (os.cpu_count() or 1)


def _chunks(q: EnumerationQuery, jobs: int, prefix_cells: int) -> Iterator[tuple]:
    lo, hi = q.disc_range()
    if lo > hi:
        return
    materialize = q.emit is Emit.MATRICES
    if jobs <= 1:
        yield _search_root((q.rows, q.cols, (), lo, hi, q.require_zssf, materialize))
        return
    tasks = [
        (q.rows, q.cols, prefix, lo, hi, q.require_zssf, materialize)
        for prefix in expand_prefixes(q, prefix_cells)
    ]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        # map() hands results back in submission order
        yield from pool.map(_search_root, tasks)


def _pack(codes: np.ndarray, rows: int, cols: int) -> list[int]:
    """Whole-matrix bit patterns from per-row codes."""
    if rows * cols <= 64:
        shifts = np.arange(rows - 1, -1, -1, dtype=np.uint64) * np.uint64(cols)
        return np.bitwise_or.reduce(codes << shifts, axis=1).tolist()
    out = []
    for row_codes in codes.tolist():
        bits = 0
        for code in row_codes:
            bits = (bits << cols) | code
        out.append(bits)
    return out


def enumerate_matrices(
    q: EnumerationQuery,
    sink: Optional[Callable[[BinaryMatrix], None]] = None,
    jobs: int = 1,
    prefix_cells: int = DEFAULT_PREFIX_CELLS,
) -> EnumerationReport:
    """Run ``q``, passing each matrix to ``sink`` in lexicographic order.

    ``sink`` is not called for count-only queries.  ``jobs=0`` uses every
    available core.
    """
    if jobs == 0:
        jobs = _default_jobs()
    if jobs < 0:
        raise ValueError("jobs must be >= 0")
    start = time.perf_counter()
    n = q.size
    per_disc = np.zeros(2 * n + 1, dtype=np.int64)
    split = np.zeros(2 * n + 1, dtype=np.int64)
    for codes, pd, sp in _chunks(q, jobs, prefix_cells):
        per_disc += pd
        split += sp
        if sink is not None and len(codes):
            for bits in _pack(codes, q.rows, q.cols):
                sink(BinaryMatrix(q.rows, q.cols, bits))
    total = int(per_disc.sum())
    n_split = int(split.sum())
    return EnumerationReport(
        rows=q.rows,
        cols=q.cols,
        total=total,
        per_disc={d - n: int(c) for d, c in enumerate(per_disc) if c},
        split_count=n_split,
        exceptional_count=total - n_split,
        elapsed=time.perf_counter() - start,
    )


def collect_matrices(q: EnumerationQuery, jobs: int = 1, prefix_cells: int = DEFAULT_PREFIX_CELLS) -> list[BinaryMatrix]:
    """All matrices matched by ``q`` as a list, in lexicographic order."""
    if q.emit is not Emit.MATRICES:
        raise ValueError("query is count-only")
    out: list[BinaryMatrix] = []
    enumerate_matrices(q, out.append, jobs=jobs, prefix_cells=prefix_cells)
    return out


# -- brute-force oracles -------------------------------------------------


def count_all_unpruned(rows: int, cols: int, predicate: Callable[[BinaryMatrix], bool]) -> int:
    """Count all ``2**(rows*cols)`` matrices satisfying ``predicate``, no pruning."""
    n = rows * cols
    if n > BRUTE_FORCE_CELL_CAP:
        raise ValueError(f"{rows}x{cols} has {n} cells; brute force is capped at {BRUTE_FORCE_CELL_CAP}")
    return sum(1 for bits in range(1 << n) if predicate(BinaryMatrix(rows, cols, bits)))


def brute_force_matrices(q: EnumerationQuery) -> list[BinaryMatrix]:
    """Vectorised full scan answering ``q`` without any pruning."""
    n = q.size
    if n > BRUTE_FORCE_CELL_CAP:
        raise ValueError(f"{q.rows}x{q.cols} has {n} cells; brute force is capped at {BRUTE_FORCE_CELL_CAP}")
    codes = np.arange(1 << n, dtype=np.int64)
    shifts = np.arange(n - 1, -1, -1, dtype=np.int64)
    cells = (((codes[:, None] >> shifts) & 1) * 2 - 1).astype(np.int8)
    keep = np.ones(codes.shape[0], dtype=bool)
    lo, hi = q.disc_range()
    disc = cells.sum(axis=1, dtype=np.int64)
    keep &= (disc >= lo) & (disc <= hi)
    if q.require_zssf:
        c = q.cols
        for s in range(1, min(q.rows, q.cols)):
            for i in range(q.rows - s):
                for j in range(q.cols - s):
                    total = (
                        cells[:, i * c + j].astype(np.int16)
                        + cells[:, i * c + j + s]
                        + cells[:, (i + s) * c + j]
                        + cells[:, (i + s) * c + j + s]
                    )
                    keep &= total != 0
    return [BinaryMatrix(q.rows, q.cols, int(b)) for b in codes[keep]]


def zssf_with_disc(predicate_disc: Callable[[int], bool]) -> Callable[[BinaryMatrix], bool]:
    """Predicate for :func:`count_all_unpruned`: square-free and disc accepted."""
    return lambda m: predicate_disc(discrepancy(m)) and is_zero_sum_square_free(m)
