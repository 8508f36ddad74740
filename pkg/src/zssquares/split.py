"""Split matrices.

A ``t``-split matrix has ``-1`` exactly on the cells with ``i + j <= t + 1``
and ``+1`` elsewhere.  A matrix is *split* when it, its negation, or one of
its two mirror images is ``t``-split for some ``t``.
"""

from __future__ import annotations

import enum
import functools
from dataclasses import dataclass
from typing import Optional

from .matrix import BinaryMatrix

__all__ = [
    "SplitDescriptor",
    "Variant",
    "corollary2_check",
    "classify_split",
    "flip_horizontal",
    "flip_vertical",
    "is_t_split",
    "make_t_split",
    "split_disc_formula",
    "split_t_set",
]


class Variant(enum.IntEnum):
    """Transform that turns a split matrix into a ``t``-split one.

    The integer values fix the classification order.
    """

    IDENTITY = 0
    NEGATION = 1
    HORIZONTAL = 2
    VERTICAL = 3

    @property
    def label(self) -> str:
        return {
            Variant.IDENTITY: "identity",
            Variant.NEGATION: "negation",
            Variant.HORIZONTAL: "horizontal-reflection",
            Variant.VERTICAL: "vertical-reflection",
        }[self]


@dataclass(frozen=True)
class SplitDescriptor:
    variant: Variant
    t: int

    def to_json(self) -> dict:
        return {"variant": self.variant.label, "t": self.t}

    def __str__(self) -> str:
        return f"split({self.variant.label}, t={self.t})"


def flip_horizontal(m: BinaryMatrix) -> BinaryMatrix:
    """Mirror left-right: column ``j`` goes to ``cols + 1 - j``."""
    return BinaryMatrix.from_rows([row[::-1] for row in m.to_rows()])


def flip_vertical(m: BinaryMatrix) -> BinaryMatrix:
    """Mirror top-bottom: row ``i`` goes to ``rows + 1 - i``."""
    return BinaryMatrix.from_rows(m.to_rows()[::-1])


_VARIANT_TRANSFORMS = {
    Variant.IDENTITY: lambda m: m,
    Variant.NEGATION: BinaryMatrix.negate,
    Variant.HORIZONTAL: flip_horizontal,
    Variant.VERTICAL: flip_vertical,
}


@functools.lru_cache(maxsize=4096)
def make_t_split(rows: int, cols: int, t: int) -> BinaryMatrix:
    if not 0 <= t < rows + cols:
        raise ValueError(f"t={t} outside [0, {rows + cols})")
    return BinaryMatrix.from_function(rows, cols, lambda i, j: -1 if i + j <= t + 1 else 1)


def is_t_split(m: BinaryMatrix, t: int) -> bool:
    return 0 <= t < m.rows + m.cols and m == make_t_split(m.rows, m.cols, t)


def split_disc_formula(n: int, m: int, t: int) -> int:
    """Closed-form discrepancy of the ``t``-split ``n x m`` matrix, ``n <= m``."""
    if n > m:
        raise ValueError(f"need n <= m, got {n}x{m}; swap the arguments")
    if not 0 <= t < n + m:
        raise ValueError(f"t={t} outside [0, {n + m})")
    if t <= n:
        return n * m - t * (t + 1)
    if t <= m:
        return n * m + n * (n - 1) - 2 * n * t
    return (n + m - t - 1) * (n + m - t) - n * m


def classify_split(m: BinaryMatrix) -> Optional[SplitDescriptor]:
    """First ``(variant, t)`` for which the variant of ``m`` is ``t``-split.

    Every ``t`` is tried for every variant, variants in :class:`Variant` order.
    """
    for variant in Variant:
        image = _VARIANT_TRANSFORMS[variant](m)
        for t in range(m.rows + m.cols):
            if is_t_split(image, t):
                return SplitDescriptor(variant, t)
    return None


def split_t_set(n: int, m: int, bound: int) -> dict[int, int]:
    """``{t: disc}`` over the ``t``-split ``n x m`` matrices with ``|disc| <= bound``."""
    lo, hi = min(n, m), max(n, m)
    out = {}
    for t in range(n + m):
        d = split_disc_formula(lo, hi, t)
        if abs(d) <= bound:
            out[t] = d
    return out


def corollary2_check(n: int) -> bool:
    """Small-discrepancy ``t``-split matrices of the square and almost-square shapes.

    For ``n x n`` the ``t`` with ``|disc| <= n`` must be exactly ``n-1`` and
    ``n``, both with ``|disc| = n``; for ``n x (n+1)`` only ``t = n`` with
    ``disc = 0``.
    """
    if n < 1:
        raise ValueError("n must be positive")
    square = split_t_set(n, n, n)
    if set(square) != {n - 1, n} or any(abs(d) != n for d in square.values()):
        return False
    almost = split_t_set(n, n + 1, n)
    return almost == {n: 0}

