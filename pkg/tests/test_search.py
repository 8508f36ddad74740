import itertools

import pytest

from zssquares.matrix import BinaryMatrix, PartialFill, discrepancy, is_zero_sum_square_free
from zssquares.search import (
    Emit,
    EnumerationQuery,
    brute_force_matrices,
    collect_matrices,
    count_all_unpruned,
    enumerate_matrices,
    expand_prefixes,
    zssf_with_disc,
)
from zssquares.split import classify_split


def bits_of(ms):
    return [m.bits for m in ms]


def test_lemma3_counts():
    r45 = enumerate_matrices(EnumerationQuery(4, 5, max_abs_disc=8, emit=Emit.COUNT))
    r55 = enumerate_matrices(EnumerationQuery(5, 5, max_abs_disc=10, emit=Emit.COUNT))
    assert r45.exceptional_count == 28
    assert r55.exceptional_count == 32


def test_zero_sum_2x2_is_empty():
    assert enumerate_matrices(EnumerationQuery(2, 2, disc=0)).total == 0


def test_report_partition():
    report = enumerate_matrices(EnumerationQuery(5, 5))
    assert report.total == report.split_count + report.exceptional_count == sum(report.per_disc.values())


def test_report_split_counts_match_python_classifier():
    ms = []
    report = enumerate_matrices(EnumerationQuery(4, 5), ms.append)
    assert len(ms) == report.total
    assert report.split_count == sum(1 for m in ms if classify_split(m) is not None)
    per_disc = {}
    for m in ms:
        per_disc[discrepancy(m)] = per_disc.get(discrepancy(m), 0) + 1
    assert per_disc == report.per_disc


def test_count_all_unpruned_examples():
    assert count_all_unpruned(2, 2, lambda m: True) == 16
    oracle = count_all_unpruned(3, 3, zssf_with_disc(lambda d: d == 1))
    assert oracle == enumerate_matrices(EnumerationQuery(3, 3, disc=1)).total
    oracle = count_all_unpruned(4, 4, zssf_with_disc(lambda d: abs(d) <= 4))
    assert oracle == enumerate_matrices(EnumerationQuery(4, 4, max_abs_disc=4)).total


def test_count_all_unpruned_cap():
    with pytest.raises(ValueError):
        count_all_unpruned(3, 7, lambda m: True)


def test_brute_force_oracle_agrees_with_scalar_predicate():
    for rows, cols in [(2, 3), (3, 3), (3, 4)]:
        fast = bits_of(brute_force_matrices(EnumerationQuery(rows, cols, max_abs_disc=3)))
        slow = [
            b
            for b in range(1 << rows * cols)
            if zssf_with_disc(lambda d: abs(d) <= 3)(BinaryMatrix(rows, cols, b))
        ]
        assert fast == slow


@pytest.mark.parametrize("shape", [(1, 5), (2, 4), (3, 3), (3, 4), (4, 4), (2, 7)])
def test_oracle_equivalence(shape):
    rows, cols = shape
    n = rows * cols
    for zssf in (True, False):
        queries = [EnumerationQuery(rows, cols, require_zssf=zssf)]
        queries += [EnumerationQuery(rows, cols, disc=d, require_zssf=zssf) for d in range(-n - 1, n + 2)]
        queries += [EnumerationQuery(rows, cols, max_abs_disc=b, require_zssf=zssf) for b in range(0, n + 2, 3)]
        for q in queries:
            assert bits_of(collect_matrices(q)) == bits_of(brute_force_matrices(q)), q


def test_output_is_lexicographic_and_unique():
    ms = collect_matrices(EnumerationQuery(4, 5))
    keys = [tuple(m.entries()) for m in ms]
    assert keys == sorted(keys)
    assert len(set(keys)) == len(keys)
    assert all(is_zero_sum_square_free(m) for m in ms)


@pytest.mark.parametrize("shape", [(4, 4), (4, 5), (5, 5), (5, 6)])
def test_negation_bijection(shape):
    rows, cols = shape
    n = rows * cols
    for d in range(-n, n + 1, 2):
        if (d - n) % 2:
            continue
        plus = collect_matrices(EnumerationQuery(rows, cols, disc=d))
        minus = collect_matrices(EnumerationQuery(rows, cols, disc=-d))
        assert sorted(m.negate().bits for m in plus) == bits_of(minus)


def test_transpose_bijection():
    for rows, cols in [(3, 5), (4, 6), (4, 5)]:
        for b in (None, 2, rows * cols // 2):
            a = enumerate_matrices(EnumerationQuery(rows, cols, max_abs_disc=b, emit=Emit.COUNT))
            t = enumerate_matrices(EnumerationQuery(cols, rows, max_abs_disc=b, emit=Emit.COUNT))
            assert a.per_disc == t.per_disc
    for n in (4, 5):
        ms = collect_matrices(EnumerationQuery(n, n))
        transposed = sorted(
            BinaryMatrix.from_rows([list(c) for c in zip(*m.to_rows())]).bits for m in ms
        )
        assert transposed == bits_of(ms)


@pytest.mark.parametrize("shape", [(4, 5), (5, 5), (6, 6)])
def test_bound_is_union_of_exact(shape):
    rows, cols = shape
    n = rows * cols
    for bound in range(0, 2 * rows + 3):
        total = enumerate_matrices(EnumerationQuery(rows, cols, max_abs_disc=bound, emit=Emit.COUNT)).total
        exact = sum(
            enumerate_matrices(EnumerationQuery(rows, cols, disc=d, emit=Emit.COUNT)).total
            for d in range(-bound, bound + 1)
            if (d - n) % 2 == 0
        )
        assert total == exact


def test_infeasible_queries_are_empty():
    assert enumerate_matrices(EnumerationQuery(3, 3, disc=2)).total == 0
    assert enumerate_matrices(EnumerationQuery(3, 3, disc=11)).total == 0
    assert enumerate_matrices(EnumerationQuery(5, 5, max_abs_disc=4)).total == 0


def test_query_validation():
    with pytest.raises(ValueError):
        EnumerationQuery(3, 3, disc=1, max_abs_disc=3)
    with pytest.raises(ValueError):
        EnumerationQuery(0, 3)
    with pytest.raises(ValueError):
        EnumerationQuery(3, 3, max_abs_disc=-1)
    assert EnumerationQuery(3, 4, max_abs_disc=5).disc_range() == (-4, 4)
    assert EnumerationQuery(3, 3, max_abs_disc=4).disc_range() == (-3, 3)


def test_count_only_skips_sink():
    calls = []
    report = enumerate_matrices(EnumerationQuery(4, 4, emit=Emit.COUNT), calls.append)
    assert report.total > 0 and calls == []


def _brute_prefixes(q, depth):
    lo, hi = q.disc_range()
    out = []
    for cells in itertools.product((-1, 1), repeat=depth):
        p = PartialFill(q.rows, q.cols)
        ok = True
        for v in cells:
            p.push(v)
            left = p.remaining
            if p.partial_disc - left > hi or p.partial_disc + left < lo:
                ok = False
        if not ok:
            continue
        # a prefix survives iff it has no zero-sum square inside its own cells
        rows_done = [cells[i * q.cols:(i + 1) * q.cols] for i in range(depth // q.cols)]
        if rows_done and not is_zero_sum_square_free(BinaryMatrix.from_rows(rows_done)):
            continue
        out.append(cells)
    return out


def test_prefix_expansion_is_sorted_and_exact():
    q = EnumerationQuery(4, 4, max_abs_disc=2)
    roots = expand_prefixes(q, 8)
    assert all(len(r) == 4 for r in roots)  # capped at one row
    assert roots == sorted(roots)
    assert roots == _brute_prefixes(q, 4)
    q = EnumerationQuery(3, 3, disc=9)
    assert expand_prefixes(q, 3) == [(1, 1, 1)]


@pytest.mark.parametrize("jobs, prefix", [(2, 8), (3, 2), (2, 1)])
def test_parallel_matches_sequential(jobs, prefix):
    for q in (EnumerationQuery(5, 5), EnumerationQuery(4, 5, max_abs_disc=8), EnumerationQuery(4, 6, disc=0)):
        seq = collect_matrices(q, jobs=1)
        par = collect_matrices(q, jobs=jobs, prefix_cells=prefix)
        assert bits_of(seq) == bits_of(par)
        a = enumerate_matrices(q, jobs=1)
        b = enumerate_matrices(q, jobs=jobs, prefix_cells=prefix)
        assert (a.total, a.per_disc, a.split_count) == (b.total, b.per_disc, b.split_count)
