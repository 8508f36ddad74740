"""Binary matrices, discrepancy and zero-sum squares.

A binary matrix has entries in {-1, +1}.  Entries are packed one bit per
cell in row-major order, most significant bit first, with ``1`` standing
for ``+1``.  With that layout, comparing the packed integers of two
matrices of the same shape is the same as comparing their entry sequences
lexicographically with ``-1 < +1``.

All public indices are 1-based: ``entry(1, 1)`` is the top-left corner.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Optional, Sequence

__all__ = [
    "BinaryMatrix",
    "MatrixFormatError",
    "PartialFill",
    "Square",
    "completes_zero_sum_square",
    "count_entries",
    "discrepancy",
    "find_zero_sum_square",
    "is_zero_sum_square_free",
    "iter_squares",
    "parse_matrix",
    "parse_matrices",
    "render_matrix",
    "square_disc",
]


class MatrixFormatError(ValueError):
    """Raised when matrix text cannot be parsed.

    ``line`` and ``column`` are 1-based positions into the parsed text.
    """

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


@dataclass(frozen=True, order=False)
class BinaryMatrix:
    """Immutable ``rows x cols`` matrix over {-1, +1}.

    ``bits`` holds cell ``(i, j)`` at bit ``rows*cols - ((i-1)*cols + j)``.
    Use the ``from_*`` constructors rather than building ``bits`` by hand.
    """

    rows: int
    cols: int
    bits: int

    def __post_init__(self) -> None:
        if self.rows < 1 or self.cols < 1:
            raise ValueError(f"shape must be positive, got {self.rows}x{self.cols}")
        if not 0 <= self.bits < (1 << (self.rows * self.cols)):
            raise ValueError("bits out of range for shape")

    # -- construction ---------------------------------------------------

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "BinaryMatrix":
        if not rows or not rows[0]:
            raise ValueError("empty matrix")
        ncols = len(rows[0])
        bits = 0
        for r in rows:
            if len(r) != ncols:
                raise ValueError("ragged rows")
            for v in r:
                if v == 1:
                    bits = (bits << 1) | 1
                elif v == -1:
                    bits <<= 1
                else:
                    raise ValueError(f"entry {v!r} is not -1 or +1")
        return cls(len(rows), ncols, bits)

    @classmethod
    def from_function(
        cls, rows: int, cols: int, f: Callable[[int, int], int]
    ) -> "BinaryMatrix":
        """Build from ``f(i, j)`` evaluated at 1-based coordinates."""
        return cls.from_rows(
            [[f(i, j) for j in range(1, cols + 1)] for i in range(1, rows + 1)]
        )

    @classmethod
    def from_row_codes(cls, cols: int, codes: Iterable[int]) -> "BinaryMatrix":
        """Build from per-row integers packed like ``bits`` (MSB = column 1)."""
        bits = 0
        nrows = 0
        for code in codes:
            bits = (bits << cols) | int(code)
            nrows += 1
        return cls(nrows, cols, bits)

    @classmethod
    def constant(cls, rows: int, cols: int, value: int) -> "BinaryMatrix":
        if value not in (-1, 1):
            raise ValueError(f"entry {value!r} is not -1 or +1")
        return cls(rows, cols, (1 << rows * cols) - 1 if value == 1 else 0)

    # -- access ---------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def size(self) -> int:
        return self.rows * self.cols

    def entry(self, i: int, j: int) -> int:
        if not (1 <= i <= self.rows and 1 <= j <= self.cols):
            raise IndexError(f"({i}, {j}) outside {self.rows}x{self.cols}")
        shift = self.size - ((i - 1) * self.cols + j)
        return 1 if (self.bits >> shift) & 1 else -1

    def row_code(self, i: int) -> int:
        shift = (self.rows - i) * self.cols
        return (self.bits >> shift) & ((1 << self.cols) - 1)

    def to_rows(self) -> list[list[int]]:
        out = []
        for i in range(1, self.rows + 1):
            code = self.row_code(i)
            out.append(
                [1 if (code >> (self.cols - j)) & 1 else -1 for j in range(1, self.cols + 1)]
            )
        return out

    def row_strings(self) -> list[str]:
        """Rows as ``'+'``/``'-'`` strings."""
        return ["".join("+" if v > 0 else "-" for v in row) for row in self.to_rows()]

    def entries(self) -> Iterator[int]:
        """Entries in row-major order."""
        n = self.size
        for k in range(n):
            yield 1 if (self.bits >> (n - 1 - k)) & 1 else -1

    def block(self, h: int, k: int, j: int, l: int) -> "BinaryMatrix":
        """Sub-matrix on rows ``h..k`` and columns ``j..l`` (inclusive)."""
        if not (1 <= h <= k <= self.rows and 1 <= j <= l <= self.cols):
            raise IndexError(f"block [{h},{k};{j},{l}] outside {self.rows}x{self.cols}")
        width = l - j + 1
        mask = (1 << width) - 1
        codes = [(self.row_code(i) >> (self.cols - l)) & mask for i in range(h, k + 1)]
        return BinaryMatrix.from_row_codes(width, codes)

    def negate(self) -> "BinaryMatrix":
        return BinaryMatrix(self.rows, self.cols, self.bits ^ ((1 << self.size) - 1))

    def __neg__(self) -> "BinaryMatrix":
        return self.negate()

    def sort_key(self) -> tuple[int, int, int]:
        """Lexicographic row-major order with -1 < +1 within a shape."""
        return (self.rows, self.cols, self.bits)

    def __str__(self) -> str:
        return render_matrix(self)


def count_entries(m: BinaryMatrix) -> tuple[int, int]:
    """Return ``(a_plus, a_minus)``, the numbers of +1 and -1 entries."""
    plus = bin(m.bits).count("1")
    return plus, m.size - plus


def discrepancy(m: BinaryMatrix) -> int:
    """Sum of all entries."""
    return sum(m.entries())


@dataclass(frozen=True)
class Square:
    """Corners ``(i, j), (i, j+s), (i+s, j), (i+s, j+s)`` of a matrix."""

    i: int
    j: int
    s: int

    def __post_init__(self) -> None:
        if self.s < 1 or self.i < 1 or self.j < 1:
            raise ValueError(f"invalid square {self}")

    def corners(self) -> tuple[tuple[int, int], ...]:
        i, j, s = self.i, self.j, self.s
        return ((i, j), (i, j + s), (i + s, j), (i + s, j + s))

    def fits(self, rows: int, cols: int) -> bool:
        return self.i + self.s <= rows and self.j + self.s <= cols


def iter_squares(rows: int, cols: int) -> Iterator[Square]:
    for s in range(1, min(rows, cols)):
        for i in range(1, rows - s + 1):
            for j in range(1, cols - s + 1):
                yield Square(i, j, s)


def square_disc(m: BinaryMatrix, q: Square) -> int:
    if not q.fits(m.rows, m.cols):
        raise IndexError(f"{q} does not fit in {m.rows}x{m.cols}")
    return sum(m.entry(i, j) for i, j in q.corners())


def find_zero_sum_square(m: BinaryMatrix) -> Optional[Square]:
    """First zero-sum square in (s, i, j) order, or ``None``."""
    rows = m.to_rows()
    for q in iter_squares(m.rows, m.cols):
        i, j, s = q.i - 1, q.j - 1, q.s
        if rows[i][j] + rows[i][j + s] + rows[i + s][j] + rows[i + s][j + s] == 0:
            return q
    return None


def is_zero_sum_square_free(m: BinaryMatrix) -> bool:
    return find_zero_sum_square(m) is None


class PartialFill:
    """Row-major prefix of a matrix under construction.

    Only :meth:`push` and :meth:`pop` mutate the state, so the filled cells
    are always exactly the first ``filled`` cells in row-major order.
    """

    __slots__ = ("rows", "cols", "_cells", "partial_disc")

    def __init__(self, rows: int, cols: int, prefix: Iterable[int] = ()):
        if rows < 1 or cols < 1:
            raise ValueError(f"shape must be positive, got {rows}x{cols}")
        self.rows = rows
        self.cols = cols
        self._cells: list[int] = []
        self.partial_disc = 0
        for v in prefix:
            self.push(v)

    @property
    def filled(self) -> int:
        return len(self._cells)

    @property
    def remaining(self) -> int:
        return self.rows * self.cols - len(self._cells)

    def next_cell(self) -> tuple[int, int]:
        """1-based coordinates of the next cell to fill."""
        k = len(self._cells)
        if k >= self.rows * self.cols:
            raise IndexError("matrix already complete")
        return k // self.cols + 1, k % self.cols + 1

    def value(self, i: int, j: int) -> int:
        k = (i - 1) * self.cols + (j - 1)
        if not (1 <= j <= self.cols) or not (0 <= k < len(self._cells)):
            raise IndexError(f"({i}, {j}) is not filled")
        return self._cells[k]

    def push(self, v: int) -> None:
        if v not in (-1, 1):
            raise ValueError(f"entry {v!r} is not -1 or +1")
        if len(self._cells) >= self.rows * self.cols:
            raise IndexError("matrix already complete")
        self._cells.append(v)
        self.partial_disc += v

    def pop(self) -> int:
        v = self._cells.pop()
        self.partial_disc -= v
        return v

    def prefix(self) -> tuple[int, ...]:
        return tuple(self._cells)

    def to_matrix(self) -> BinaryMatrix:
        if self.remaining:
            raise ValueError(f"{self.remaining} cells still empty")
        return BinaryMatrix.from_rows(
            [self._cells[r * self.cols:(r + 1) * self.cols] for r in range(self.rows)]
        )


def completes_zero_sum_square(p: PartialFill, r: int, c: int, v: int) -> bool:
    """Would placing ``v`` at ``(r, c)`` close a zero-sum square?

    ``(r, c)`` must be the next row-major cell of ``p``.  Only squares with
    bottom-right corner ``(r, c)`` are checked; in row-major order those are
    exactly the squares this placement completes.
    """
    if (r, c) != p.next_cell():
        raise ValueError(f"({r}, {c}) is not the next cell {p.next_cell()}")
    if v not in (-1, 1):
        raise ValueError(f"entry {v!r} is not -1 or +1")
    cells, cols = p._cells, p.cols
    k = (r - 1) * cols + (c - 1)
    for s in range(1, min(r, c)):
        up = k - s * cols
        if cells[up - s] + cells[up] + cells[k - s] + v == 0:
            return True
    return False


# -- text format --------------------------------------------------------

def render_matrix(m: BinaryMatrix) -> str:
    return "\n".join([f"{m.rows} {m.cols}", *m.row_strings()]) + "\n"


def _parse_header(line: str, lineno: int) -> tuple[int, int]:
    parts = line.split(" ")
    if len(parts) != 2:
        raise MatrixFormatError("header must be '<rows> <cols>'", lineno, 1)
    col = 1
    dims = []
    for part in parts:
        if not part or not part.isascii() or not part.isdigit():
            raise MatrixFormatError(f"bad dimension {part!r}", lineno, col)
        if len(part) > 1 and part[0] == "0" or int(part) < 1:
            raise MatrixFormatError(f"bad dimension {part!r}", lineno, col)
        dims.append(int(part))
        col += len(part) + 1
    return dims[0], dims[1]


def _parse_at(lines: list[str], start: int) -> tuple[BinaryMatrix, int]:
    """Parse one matrix whose header is ``lines[start]``; return it and the next index."""
    rows, cols = _parse_header(lines[start], start + 1)
    body = []
    for r in range(rows):
        idx = start + 1 + r
        if idx >= len(lines):
            raise MatrixFormatError(f"expected {rows} rows, got {r}", idx + 1, 1)
        line = lines[idx]
        row = []
        for col, ch in enumerate(line, start=1):
            if ch == "+":
                row.append(1)
            elif ch == "-":
                row.append(-1)
            else:
                raise MatrixFormatError(f"unexpected character {ch!r}", idx + 1, col)
            if col > cols:
                raise MatrixFormatError(f"row longer than {cols}", idx + 1, col)
        if len(row) != cols:
            raise MatrixFormatError(
                f"row has {len(row)} entries, expected {cols}", idx + 1, len(line) + 1
            )
        body.append(row)
    return BinaryMatrix.from_rows(body), start + 1 + rows


def _split_lines(text: str) -> list[str]:
    if not text.endswith("\n"):
        lines = text.split("\n")
        raise MatrixFormatError("missing final newline", len(lines), len(lines[-1]) + 1)
    return text[:-1].split("\n")


def parse_matrix(text: str) -> BinaryMatrix:
    """Parse exactly one matrix in the text format produced by :func:`render_matrix`."""
    lines = _split_lines(text)
    m, nxt = _parse_at(lines, 0)
    if nxt != len(lines):
        raise MatrixFormatError("trailing content after matrix", nxt + 1, 1)
    return m


def parse_matrices(text: str) -> list[BinaryMatrix]:
    """Parse a blank-line separated stream of matrices."""
    if not text:
        return []
    lines = _split_lines(text)
    out = []
    idx = 0
    while idx < len(lines):
        m, idx = _parse_at(lines, idx)
        out.append(m)
        if idx < len(lines):
            if lines[idx] != "":
                raise MatrixFormatError("expected blank line between matrices", idx + 1, 1)
            idx += 1
            if idx == len(lines):
                raise MatrixFormatError("trailing blank line", idx, 1)
    return out
