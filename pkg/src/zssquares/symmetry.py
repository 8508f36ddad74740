"""Rotations, reflections and negation of binary matrices.

Each spatial transform is stored as an integer 2x2 matrix acting on cell
coordinates measured from the centre of the matrix (doubled, so they stay
integral).  Composition is then a matrix product and the inverse is the
transpose.  Square shapes admit all eight dihedral transforms; other shapes
keep only the four that preserve the shape.  Pairing each with optional
negation gives groups of 16 and 8 elements.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable

from .matrix import BinaryMatrix

__all__ = [
    "Spatial",
    "SymmetryElement",
    "apply",
    "canonical_form",
    "compose",
    "dedup",
    "group",
    "inverse",
    "orbit",
]


class Spatial(enum.Enum):
    # (a, b, c, d): destination (u', v') = (a*u + b*v, c*u + d*v), u along rows.
    IDENTITY = (1, 0, 0, 1)
    ROT90 = (0, 1, -1, 0)  # clockwise
    ROT180 = (-1, 0, 0, -1)
    ROT270 = (0, -1, 1, 0)
    FLIP_HORIZONTAL = (1, 0, 0, -1)  # left-right mirror
    FLIP_VERTICAL = (-1, 0, 0, 1)  # top-bottom mirror
    TRANSPOSE = (0, 1, 1, 0)
    ANTI_TRANSPOSE = (0, -1, -1, 0)

    @property
    def swaps_axes(self) -> bool:
        return self.value[0] == 0

    @classmethod
    def from_matrix(cls, a: int, b: int, c: int, d: int) -> "Spatial":
        return cls((a, b, c, d))


_RECTANGULAR = (Spatial.IDENTITY, Spatial.ROT180, Spatial.FLIP_HORIZONTAL, Spatial.FLIP_VERTICAL)


@dataclass(frozen=True)
class SymmetryElement:
    spatial: Spatial = Spatial.IDENTITY
    negate: bool = False

    def valid_for(self, rows: int, cols: int) -> bool:
        return rows == cols or not self.spatial.swaps_axes

    def __str__(self) -> str:
        name = self.spatial.name.lower().replace("_", "-")
        return f"-{name}" if self.negate else name


def compose(g: SymmetryElement, h: SymmetryElement) -> SymmetryElement:
    """``g`` after ``h``."""
    a1, b1, c1, d1 = g.spatial.value
    a2, b2, c2, d2 = h.spatial.value
    spatial = Spatial.from_matrix(
        a1 * a2 + b1 * c2, a1 * b2 + b1 * d2, c1 * a2 + d1 * c2, c1 * b2 + d1 * d2
    )
    return SymmetryElement(spatial, g.negate != h.negate)


def inverse(g: SymmetryElement) -> SymmetryElement:
    a, b, c, d = g.spatial.value
    return SymmetryElement(Spatial.from_matrix(a, c, b, d), g.negate)


def group(rows: int, cols: int) -> list[SymmetryElement]:
    """All symmetries valid for the shape: 16 if square, else 8."""
    spatials = list(Spatial) if rows == cols else list(_RECTANGULAR)
    return [SymmetryElement(s, neg) for neg in (False, True) for s in spatials]


def apply(g: SymmetryElement, m: BinaryMatrix) -> BinaryMatrix:
    if not g.valid_for(m.rows, m.cols):
        raise ValueError(f"{g} needs a square matrix, got {m.rows}x{m.cols}")
    a, b, c, d = g.spatial.value
    rows, cols = m.rows, m.cols
    out_rows, out_cols = (cols, rows) if g.spatial.swaps_axes else (rows, cols)
    src = m.to_rows()
    dest = [[0] * out_cols for _ in range(out_rows)]
    sign = -1 if g.negate else 1
    for i in range(rows):
        u = 2 * i - (rows - 1)
        for j in range(cols):
            v = 2 * j - (cols - 1)
            i2 = (a * u + b * v + out_rows - 1) // 2
            j2 = (c * u + d * v + out_cols - 1) // 2
            dest[i2][j2] = sign * src[i][j]
    return BinaryMatrix.from_rows(dest)


def orbit(m: BinaryMatrix) -> list[BinaryMatrix]:
    return [apply(g, m) for g in group(m.rows, m.cols)]


def canonical_form(m: BinaryMatrix) -> BinaryMatrix:
    """Lexicographically smallest member of the orbit of ``m``."""
    return min(orbit(m), key=BinaryMatrix.sort_key)


def dedup(ms: Iterable[BinaryMatrix]) -> list[BinaryMatrix]:
    """One canonical representative per orbit, sorted."""
    ms = list(ms)
    shapes = {m.shape for m in ms}
    if len(shapes) > 1:
        raise ValueError(f"mixed shapes: {sorted(shapes)}")
    return sorted({canonical_form(m) for m in ms}, key=BinaryMatrix.sort_key)
