"""Machine checks of the computational statements about zero-sum squares.

Every check returns a :class:`VerificationOutcome`.  Arithmetic checks use
Python integers only; fractions are cleared by cross-multiplying.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Optional

from .matrix import BinaryMatrix, discrepancy, is_zero_sum_square_free
from .search import EnumerationQuery, collect_matrices
from .split import classify_split, corollary2_check, make_t_split, split_disc_formula, split_t_set

__all__ = [
    "CHECKS",
    "ClaimParams",
    "DEFAULT_BUDGET",
    "EXPECTED_EXCEPTIONAL",
    "FULL_BUDGET",
    "VerificationOutcome",
    "checkerboard",
    "claim7_terms",
    "claim7_terms_by_column",
    "exceptional_matrices",
    "property_check_lemma4",
    "property_check_lemma5",
    "run_check",
    "verify_checkerboard",
    "verify_claim8",
    "verify_corollary2",
    "verify_lemma3",
    "verify_observation1",
    "verify_parabola_bound",
    "verify_theorem5",
]

PASS, FAIL, SKIPPED = "pass", "fail", "skipped"

# Largest n whose shapes run by default; 11 reproduces the full published range.
DEFAULT_BUDGET = 9
FULL_BUDGET = 11

EXPECTED_EXCEPTIONAL = {(4, 5): 28, (5, 5): 32}


@dataclass
class VerificationOutcome:
    name: str
    status: str
    details: dict[str, Any] = field(default_factory=dict)
    witnesses: list[BinaryMatrix] = field(default_factory=list)
    duration: float = 0.0

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def to_json(self, timing: bool = True) -> dict:
        out = {
            "name": self.name,
            "status": self.status,
            "details": self.details,
            "witnesses": [m.row_strings() for m in self.witnesses],
        }
        if timing:
            out["duration"] = round(self.duration, 6)
        return out


def _timed(fn: Callable[..., VerificationOutcome]) -> Callable[..., VerificationOutcome]:
    def wrapper(*args, **kwargs):
        start = time.perf_counter()
        outcome = fn(*args, **kwargs)
        outcome.duration = time.perf_counter() - start
        return outcome

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


# -- exhaustive searches ------------------------------------------------


def lemma3_shapes() -> list[tuple[int, int]]:
    almost = [(n, n + 1) for n in range(4, 12)]
    square = [(n, n) for n in range(5, 12)]
    return sorted(almost + square, key=lambda s: (s[0], s[1]))


def exceptional_matrices(rows: int, cols: int, bound: int, jobs: int = 1) -> tuple[list[BinaryMatrix], int]:
    """Non-split square-free matrices with ``|disc| <= bound``, and the total count."""
    ms = collect_matrices(EnumerationQuery(rows, cols, max_abs_disc=bound), jobs=jobs)
    return [m for m in ms if classify_split(m) is None], len(ms)


@_timed
def verify_lemma3(budget: int = DEFAULT_BUDGET, jobs: int = 1) -> VerificationOutcome:
    """Square-free ``n x (n+1)`` and ``n x n`` matrices with ``|disc| <= 2n``.

    All must be split apart from the known 4x5 and 5x5 exceptions.  Shapes
    with ``n > budget`` are reported as skipped.
    """
    shapes: dict[str, dict] = {}
    witnesses: list[BinaryMatrix] = []
    failed = False
    for rows, cols in lemma3_shapes():
        key = f"{rows}x{cols}"
        if rows > budget:
            shapes[key] = {"status": SKIPPED}
            continue
        exceptional, total = exceptional_matrices(rows, cols, 2 * rows, jobs)
        expected = EXPECTED_EXCEPTIONAL.get((rows, cols), 0)
        ok = len(exceptional) == expected
        shapes[key] = {
            "status": PASS if ok else FAIL,
            "total": total,
            "exceptional": len(exceptional),
            "expected_exceptional": expected,
        }
        if not ok:
            failed = True
            witnesses.extend(exceptional[:5])
    return VerificationOutcome(
        "lemma3",
        FAIL if failed else PASS,
        {"shapes": shapes, "skipped": [k for k, v in shapes.items() if v["status"] == SKIPPED]},
        witnesses,
    )


@_timed
def verify_theorem5(n: int, jobs: int = 1) -> VerificationOutcome:
    """Every square-free ``n x n`` / ``n x (n+1)`` matrix with ``|disc| <= n`` is split.

    Also checks that no square-free ``n x n`` matrix has ``|disc| <= n - 1``.
    """
    if n < 5:
        raise ValueError(f"theorem5 needs n >= 5, got {n}")
    details: dict[str, Any] = {"n": n}
    witnesses: list[BinaryMatrix] = []
    for rows, cols in ((n, n), (n, n + 1)):
        ms = collect_matrices(EnumerationQuery(rows, cols, max_abs_disc=n), jobs=jobs)
        bad = [m for m in ms if classify_split(m) is None]
        witnesses.extend(bad[:5])
        details[f"{rows}x{cols}"] = {
            "total": len(ms),
            "non_split": len(bad),
            "discs": sorted({discrepancy(m) for m in ms}),
        }
    below = collect_matrices(EnumerationQuery(n, n, max_abs_disc=n - 1), jobs=jobs)
    witnesses.extend(below[:5])
    details["square_below_n"] = len(below)
    ok = not witnesses
    return VerificationOutcome("theorem5", PASS if ok else FAIL, details, witnesses)


# -- closed forms ---------------------------------------------------------


@dataclass(frozen=True)
class ClaimParams:
    """Side ``n`` and split parameter ``t`` with ``n//2 <= t <= (2n+1)//3``."""

    n: int
    t: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("n must be positive")
        if not self.n // 2 <= self.t <= (2 * self.n + 1) // 3:
            raise ValueError(f"t={self.t} outside [{self.n // 2}, {(2 * self.n + 1) // 3}]")

    @property
    def T(self) -> int:
        return 3 * self.t // 2

    @property
    def R(self) -> int:
        return self.n - self.T


def claim7_terms(p: ClaimParams) -> tuple[int, int, int, int]:
    """``(a0, a1, a2, a3)``, the lower-bound terms for the number of +1 entries."""
    t, R = p.t, p.R
    half = t // 2
    a0 = t * (t - 1) // 2 + half * half + 2 * t * half
    a1 = 2 * sum((t + 1 - k) // 2 for k in range(1, R + 1))
    a2 = 2 * sum(t - k for k in range(1, R + 1))
    return a0, a1, a2, R


def claim7_terms_by_column(p: ClaimParams) -> tuple[int, int, int, int]:
    """Same terms summed over the columns ``T+1..n`` instead of ``k = 1..R``."""
    n, t, T = p.n, p.t, p.T
    a0 = (t * (t - 1) + 2 * (t // 2) ** 2 + 4 * t * (t // 2)) // 2
    a1 = 2 * sum((T + t + 1 - j) // 2 for j in range(T + 1, n + 1))
    a2 = 2 * sum(T - j + t for j in range(T + 1, n + 1))
    return a0, a1, a2, n - T


def claim8_pairs() -> list[tuple[int, int]]:
    return [(n, t) for n in range(12, 16) for t in range(n // 2, (2 * n + 1) // 3 + 1)]


@_timed
def verify_claim8() -> VerificationOutcome:
    """``2*(a0+a1+a2+a3) > n^2 + 2n`` for ``12 <= n <= 15`` and every allowed ``t``."""
    rows = []
    witnesses = []
    for n, t in claim8_pairs():
        total = sum(claim7_terms(ClaimParams(n, t)))
        # right-hand side also dominates (n + n*m)/2 for both m = n and m = n + 1
        ok = 2 * total > n * n + 2 * n and all(n * n + 2 * n >= n + n * m for m in (n, n + 1))
        rows.append({"n": n, "t": t, "sum": total, "rhs_x2": n * n + 2 * n, "ok": ok})
        if not ok:
            witnesses.append((n, t))
    return VerificationOutcome(
        "claim8",
        FAIL if witnesses else PASS,
        {"cases": rows, "failing": witnesses},
    )


def parabola_gap(n: int) -> int:
    """``(23n^2 - 70n - 77) - 16(n^2 + 2n)``, i.e. 32 times the gap between the two bounds."""
    return 23 * n * n - 70 * n - 77 - 16 * (n * n + 2 * n)


@_timed
def verify_parabola_bound(n_max: int = 10**6) -> VerificationOutcome:
    """``23n^2 - 70n - 77 > 16(n^2 + 2n)`` for ``16 <= n <= n_max`` and not at 15 or 0."""
    if n_max < 16:
        raise ValueError("n_max must be at least 16")
    first_bad = next((n for n in range(16, n_max + 1) if parabola_gap(n) <= 0), None)
    g = lambda n: 7 * n * n - 102 * n - 77
    details = {
        "n_max": n_max,
        "first_failure_at_or_above_16": first_bad,
        "fails_at_15": parabola_gap(15) <= 0,
        "fails_at_0": parabola_gap(0) <= 0,
        "sign_change_minus1_0": g(-1) > 0 > g(0),
        "sign_change_15_16": g(15) < 0 < g(16),
        "gap_15": parabola_gap(15),
        "gap_16": parabola_gap(16),
    }
    ok = (
        first_bad is None
        and details["fails_at_15"]
        and details["fails_at_0"]
        and details["sign_change_minus1_0"]
        and details["sign_change_15_16"]
        and all(parabola_gap(n) == g(n) for n in (-1, 0, 15, 16))
    )
    return VerificationOutcome("parabola", PASS if ok else FAIL, details)


@_timed
def verify_observation1(max_side: int = 12) -> VerificationOutcome:
    """Closed-form split discrepancy against a direct sum for every ``n <= m <= max_side``."""
    mismatches = []
    cases = 0
    for n in range(1, max_side + 1):
        for m in range(n, max_side + 1):
            for t in range(n + m):
                cases += 1
                if split_disc_formula(n, m, t) != discrepancy(make_t_split(n, m, t)):
                    mismatches.append((n, m, t))
    return VerificationOutcome(
        "observation1",
        FAIL if mismatches else PASS,
        {"cases": cases, "mismatches": mismatches},
    )


@_timed
def verify_corollary2(lo: int = 4, hi: int = 12) -> VerificationOutcome:
    """Small-discrepancy split matrices for ``lo <= n <= hi``; ``n < 4`` is recorded only."""
    asserted = {n: corollary2_check(n) for n in range(lo, hi + 1)}
    recorded = {
        n: {
            "holds": corollary2_check(n),
            "square": split_t_set(n, n, n),
            "almost_square": split_t_set(n, n + 1, n),
        }
        for n in range(1, lo)
    }
    ok = all(asserted.values())
    return VerificationOutcome(
        "corollary2",
        PASS if ok else FAIL,
        {"asserted": asserted, "recorded_only": recorded},
    )


def checkerboard(n: int) -> BinaryMatrix:
    """``-1`` where both indices are even, ``+1`` elsewhere."""
    return BinaryMatrix.from_function(n, n, lambda i, j: -1 if i % 2 == 0 and j % 2 == 0 else 1)


@_timed
def verify_checkerboard(n_max: int = 16) -> VerificationOutcome:
    """The both-even pattern is square-free with ``disc = n^2/2`` for even ``n``."""
    bad = []
    for n in range(2, n_max + 1, 2):
        m = checkerboard(n)
        if not is_zero_sum_square_free(m) or 2 * discrepancy(m) != n * n:
            bad.append(m)
    return VerificationOutcome("checkerboard", FAIL if bad else PASS, {"n_max": n_max}, bad)


# -- property checks over exhaustive sets -----------------------------------


def _block_is_t_split(a: list[list[int]], h: int, k: int, j: int, l: int, t: int) -> bool:
    # 1-based inclusive block bounds; block cell (x, y) is -1 iff x + y <= t + 1.
    for x in range(1, k - h + 2):
        row = a[h + x - 2]
        for y in range(1, l - j + 2):
            if (row[j + y - 2] < 0) != (x + y <= t + 1):
                return False
    return True


def _block_split_t(a: list[list[int]], k: int, l: int) -> Optional[int]:
    """The unique ``t`` making ``M[1,k;1,l]`` ``t``-split, if any."""
    max_neg, min_pos = -1, k + l
    for x in range(k):
        for y in range(l):
            if a[x][y] < 0:
                max_neg = max(max_neg, x + y)
            else:
                min_pos = min(min_pos, x + y)
    if max_neg >= min_pos:
        return None
    return max_neg + 1 if max_neg >= 0 else 0


@_timed
def property_check_lemma4(samples: Iterable[BinaryMatrix]) -> VerificationOutcome:
    """Growing a ``b``-split sub-block by one row or column keeps it split.

    For every ``(b+1) x (b+1)`` block ``M' = M[h,k;j,l]`` with ``b >= 2``:
    (a) ``M[h+1,k;j,l]`` b-split implies ``M'`` is (b+1)-split,
    (b) ``M[h,k;j+1,l]`` b-split implies ``M'`` is (b+1)-split,
    (c) ``M[h,k-1;j,l]`` b-split implies ``M'`` is b-split,
    (d) ``M[h,k;j,l-1]`` b-split implies ``M'`` is b-split.
    Samples that are not square-free or have fewer than 5 rows are skipped.
    """
    hits = dict.fromkeys("abcd", 0)
    checked = skipped = 0
    failures: list[dict] = []
    witnesses: list[BinaryMatrix] = []
    for m in samples:
        if m.rows < 5 or not is_zero_sum_square_free(m):
            skipped += 1
            continue
        checked += 1
        a = m.to_rows()
        for b in range(2, min(m.rows, m.cols)):
            for h in range(1, m.rows - b + 1):
                k = h + b
                for j in range(1, m.cols - b + 1):
                    l = j + b
                    parts = (
                        ("a", (h + 1, k, j, l), b + 1),
                        ("b", (h, k, j + 1, l), b + 1),
                        ("c", (h, k - 1, j, l), b),
                        ("d", (h, k, j, l - 1), b),
                    )
                    for part, sub, t_out in parts:
                        if not _block_is_t_split(a, *sub, b):
                            continue
                        hits[part] += 1
                        if not _block_is_t_split(a, h, k, j, l, t_out):
                            failures.append({"part": part, "h": h, "k": k, "j": j, "l": l})
                            if len(witnesses) < 5:
                                witnesses.append(m)
    return VerificationOutcome(
        "lemma4",
        FAIL if failures else PASS,
        {
            "checked": checked,
            "skipped": skipped,
            "hypothesis_hits": hits,
            "total_hits": sum(hits.values()),
            "counterexamples": failures[:20],
        },
        witnesses,
    )


def _lemma5_index_set(t: int, l: int, r: int) -> list[int]:
    first = set(range(1, (t + l - r + 1) // 2 + 1))
    second = set(range(r - t + 1, l + 1))
    return sorted(first | second)


@_timed
def property_check_lemma5(samples: Iterable[BinaryMatrix]) -> VerificationOutcome:
    """Entries forced next to a ``t``-split top-left block.

    With ``M[1,k;1,l]`` t-split, ``t < k < n`` and ``t < l < m``: for
    ``l < r <= min(t+l-1, n)`` the entries ``a[r][i]`` agree over
    ``i in [1, (t+l-r+1)//2] | [r-t+1, l]``, and symmetrically for columns
    ``k < c <= min(t+k-1, m)``.
    """
    hits = {"rows": 0, "cols": 0}
    checked = skipped = vacuous = 0
    failures: list[dict] = []
    witnesses: list[BinaryMatrix] = []
    for m in samples:
        if not is_zero_sum_square_free(m):
            skipped += 1
            continue
        checked += 1
        a = m.to_rows()
        n, w = m.rows, m.cols
        any_hit = False
        for k in range(1, n):
            for l in range(1, w):
                t = _block_split_t(a, k, l)
                if t is None or not (t < k and t < l):
                    continue
                for r in range(l + 1, min(t + l - 1, n) + 1):
                    idx = _lemma5_index_set(t, l, r)
                    if len(idx) < 2:
                        continue
                    hits["rows"] += 1
                    any_hit = True
                    if len({a[r - 1][i - 1] for i in idx}) != 1:
                        failures.append({"clause": "rows", "k": k, "l": l, "t": t, "r": r})
                        witnesses.append(m)
                for c in range(k + 1, min(t + k - 1, w) + 1):
                    idx = _lemma5_index_set(t, k, c)
                    if len(idx) < 2:
                        continue
                    hits["cols"] += 1
                    any_hit = True
                    if len({a[i - 1][c - 1] for i in idx}) != 1:
                        failures.append({"clause": "cols", "k": k, "l": l, "t": t, "c": c})
                        witnesses.append(m)
        if not any_hit:
            vacuous += 1
    return VerificationOutcome(
        "lemma5",
        FAIL if failures else PASS,
        {
            "checked": checked,
            "skipped": skipped,
            "vacuous": vacuous,
            "hypothesis_hits": hits,
            "total_hits": hits["rows"] + hits["cols"],
            "counterexamples": failures[:20],
        },
        witnesses[:5],
    )


def lemma4_samples(jobs: int = 1) -> list[BinaryMatrix]:
    """Every square-free 5x5 and 5x6 matrix, plus 6x6 with ``|disc| <= 12``."""
    out = collect_matrices(EnumerationQuery(5, 5), jobs=jobs)
    out += collect_matrices(EnumerationQuery(5, 6), jobs=jobs)
    out += collect_matrices(EnumerationQuery(6, 6, max_abs_disc=12), jobs=jobs)
    return out


def lemma5_samples(jobs: int = 1) -> list[BinaryMatrix]:
    """Every square-free 5x5, 5x6 and 6x6 matrix."""
    out = []
    for rows, cols in ((5, 5), (5, 6), (6, 6)):
        out += collect_matrices(EnumerationQuery(rows, cols), jobs=jobs)
    return out


# -- registry -------------------------------------------------------------

CHECKS = ("lemma3", "theorem5", "claim8", "parabola", "observation1", "corollary2", "lemma4", "lemma5")


def run_check(
    name: str,
    budget: int = DEFAULT_BUDGET,
    jobs: int = 1,
    n: Optional[int] = None,
    n_max: int = 10**6,
) -> list[VerificationOutcome]:
    """Run one named check; ``theorem5`` covers ``5..budget`` unless ``n`` is given."""
    if name == "lemma3":
        return [verify_lemma3(budget, jobs)]
    if name == "theorem5":
        sides = [n] if n is not None else list(range(5, budget + 1))
        return [verify_theorem5(s, jobs) for s in sides]
    if name == "claim8":
        return [verify_claim8()]
    if name == "parabola":
        return [verify_parabola_bound(n_max)]
    if name == "observation1":
        return [verify_observation1()]
    if name == "corollary2":
        return [verify_corollary2()]
    if name == "lemma4":
        return [property_check_lemma4(lemma4_samples(jobs))]
    if name == "lemma5":
        return [property_check_lemma5(lemma5_samples(jobs))]
    raise KeyError(name)
