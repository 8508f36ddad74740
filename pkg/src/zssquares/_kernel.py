# Compiled depth-first search over row-major fills.
#
# Cells hold int8 values in {-1, +1}; the grid is flat, row-major, 0-based.
# Emitted matrices are packed one uint64 per row, column 1 in the most
# significant of the ``cols`` low bits (same layout as BinaryMatrix).

import numpy as np
from numba import njit


@njit(cache=True)
def closes_zero_sum_square(grid, cols, k, v):
    r = k // cols
    c = k - r * cols
    top = min(r, c)
    for s in range(1, top + 1):
        up = k - s * cols
        if grid[up - s] + grid[up] + grid[k - s] + v == 0:
            return True
    return False


@njit(cache=True)
def _is_t_split_variant(grid, rows, cols, variant):
    # variant: 0 identity, 1 negation, 2 left-right mirror, 3 top-bottom mirror.
    # t-split iff every -1 sits on a strictly smaller anti-diagonal than every +1.
    max_neg = -1
    min_pos = rows + cols
    for i in range(rows):
        for j in range(cols):
            if variant == 2:
                v = grid[i * cols + (cols - 1 - j)]
            elif variant == 3:
                v = grid[(rows - 1 - i) * cols + j]
            else:
                v = grid[i * cols + j]
            if variant == 1:
                v = -v
            d = i + j
            if v < 0:
                if d > max_neg:
                    max_neg = d
            elif d < min_pos:
                min_pos = d
    return max_neg < min_pos


@njit(cache=True)
def is_split(grid, rows, cols):
    for variant in range(4):
        if _is_t_split_variant(grid, rows, cols, variant):
            return True
    return False


@njit(cache=True)
def search(rows, cols, prefix, lo, hi, require_zssf, materialize):
    """Enumerate every completion of ``prefix`` with discrepancy in [lo, hi].

    ``lo`` and ``hi`` must already have the parity of ``rows * cols``.
    Returns ``(codes, n_codes, per_disc, split_per_disc)``; the two count
    arrays are indexed by ``disc + rows * cols``.
    """
    n = rows * cols
    grid = np.zeros(n, dtype=np.int8)
    per_disc = np.zeros(2 * n + 1, dtype=np.int64)
    split_per_disc = np.zeros(2 * n + 1, dtype=np.int64)
    cap = 16 if materialize else 1
    codes = np.empty((cap, rows), dtype=np.uint64)
    n_codes = 0

    k0 = prefix.shape[0]
    p = 0
    for k in range(k0):
        grid[k] = prefix[k]
        p += prefix[k]
    state = np.zeros(n + 1, dtype=np.int8)

    k = k0
    while True:
        if k == n:
            per_disc[p + n] += 1
            if is_split(grid, rows, cols):
                split_per_disc[p + n] += 1
            if materialize:
                if n_codes == cap:
                    cap *= 2
                    grown = np.empty((cap, rows), dtype=np.uint64)
                    grown[:n_codes] = codes[:n_codes]
                    codes = grown
                for i in range(rows):
                    code = np.uint64(0)
                    for j in range(cols):
                        code = code << np.uint64(1)
                        if grid[i * cols + j] > 0:
                            code = code | np.uint64(1)
                    codes[n_codes, i] = code
                n_codes += 1
            k -= 1
            if k < k0:
                break
            p -= grid[k]
            continue

        st = state[k]
        if st == 2:
            state[k] = 0
            k -= 1
            if k < k0:
                break
            p -= grid[k]
            continue
        state[k] = st + 1
        v = -1 if st == 0 else 1
        left = n - k - 1
        q = p + v
        if q - left > hi or q + left < lo:
            continue
        if require_zssf and closes_zero_sum_square(grid, cols, k, v):
            continue
        grid[k] = v
        p = q
        k += 1

    return codes, n_codes, per_disc, split_per_disc
