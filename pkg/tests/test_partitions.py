import itertools

import pytest

from hkbordism.partitions import (
    Decoration,
    Partition,
    bordism_rank,
    enumerate_partitions,
    partition_count,
    partitions_up_to,
)


def brute_force_partitions(n):
    found = set()
    for length in range(n + 1):
        for combo in itertools.combinations_with_replacement(range(1, n + 1), length):
            if sum(combo) == n:
                found.add(tuple(sorted(combo, reverse=True)))
    return found


def pentagonal_counts(limit):
    p = [1] + [0] * limit
    for n in range(1, limit + 1):
        total, k = 0, 1
        while True:
            g1 = k * (3 * k - 1) // 2
            g2 = k * (3 * k + 1) // 2
            if g1 > n:
                break
            sign = 1 if k % 2 else -1
            total += sign * p[n - g1]
            if g2 <= n:
                total += sign * p[n - g2]
            k += 1
        p[n] = total
    return p


def test_small_enumerations():
    assert enumerate_partitions(0) == [Partition(())]
    assert [p.parts for p in enumerate_partitions(2)] == [(2,), (1, 1)]
    assert [p.parts for p in enumerate_partitions(4)] == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]


@pytest.mark.parametrize("n", range(0, 13))
def test_enumeration_matches_brute_force(n):
    parts = [p.parts for p in enumerate_partitions(n)]
    assert len(parts) == len(set(parts))
    assert set(parts) == brute_force_partitions(n)


def test_six_has_eleven():
    assert len(enumerate_partitions(6)) == 11 == len(brute_force_partitions(6))


def test_counts():
    assert partition_count(0) == 1
    assert partition_count(4) == 5
    assert partition_count(10) == 42


def test_count_agrees_with_pentagonal_recurrence_and_enumeration():
    oracle = pentagonal_counts(30)
    for n in range(31):
        assert partition_count(n) == oracle[n]
        assert len(enumerate_partitions(n)) == oracle[n]


def test_count_is_unbounded():
    assert partition_count(200) == pentagonal_counts(200)[200] == 3972999029388


def test_canonical_order_is_reverse_lex():
    for n in range(1, 12):
        parts = [p.parts for p in enumerate_partitions(n)]
        assert parts == sorted(parts, reverse=True)
        assert parts[0] == (n,) and parts[-1] == (1,) * n


def test_partitions_up_to_blocks():
    flat = partitions_up_to(3)
    assert [p.weight for p in flat] == [0, 1, 2, 2, 3, 3, 3]
    assert [p.parts for p in flat] == sorted((p.parts for p in flat), key=lambda t: (sum(t), tuple(-x for x in t)))


def test_partition_invariants():
    p = Partition.of(1, 3, 1)
    assert p.parts == (3, 1, 1) and p.weight == 5
    assert Partition(()).weight == 0
    with pytest.raises(ValueError):
        Partition((1, 2))
    with pytest.raises(ValueError):
        Partition((2, 0))
    with pytest.raises(ValueError):
        Partition((2, 1), weight=4)
    assert Partition((2, 1)) == Partition.of(1, 2)
    assert hash(Partition((2, 1))) == hash(Partition.of(1, 2))


@pytest.mark.parametrize(
    "x, degree, rank",
    [("r", 8, 2), ("c", 10, 4), ("h", 6, 0), ("r", 3, 0), ("r", 0, 1), ("c", 2, 1), ("h", 0, 1), ("c", 4, 2)],
)
def test_bordism_rank_examples(x, degree, rank):
    assert bordism_rank(x, degree) == rank


def test_bordism_rank_formula_all_degrees():
    for d in range(41):
        n, rem = divmod(d, 4)
        cumulative = sum(partition_count(m) for m in range(n + 1))
        assert bordism_rank(Decoration.r, d) == (partition_count(n) if rem == 0 else 0)
        assert bordism_rank(Decoration.c, d) == (cumulative if rem in (0, 2) else 0)
        assert bordism_rank(Decoration.h, d) == (cumulative if rem == 0 else 0)


def test_decoration_tags():
    assert {d.value for d in Decoration} == {"r", "c", "h"}
    with pytest.raises(ValueError):
        Decoration("q")
