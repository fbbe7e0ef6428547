from collections import Counter

import pytest

from readacuity.schedule import build_schedule, latin_square_rows


def _position_counts(schedule):
    counts = Counter()
    for row in schedule:
        for pos, cond in enumerate(row):
            counts[(cond, pos)] += 1
    return counts


@pytest.mark.parametrize("k", [1, 2, 3, 4, 5, 6, 8, 16])
def test_rows_form_latin_square(k):
    rows = latin_square_rows(k)
    assert len(rows) == k
    for row in rows:
        assert sorted(row) == list(range(k))
    for col in range(k):
        assert sorted(r[col] for r in rows) == list(range(k))


@pytest.mark.parametrize("k", [2, 4, 6, 8])
def test_even_k_balances_carryover(k):
    rows = latin_square_rows(k)
    pairs = Counter()
    for row in rows:
        for a, b in zip(row, row[1:]):
            pairs[(a, b)] += 1
    # every ordered pair of distinct conditions is adjacent exactly once
    assert all(c == 1 for c in pairs.values())
    assert len(pairs) == k * (k - 1)


def test_four_by_four_balance():
    sched = build_schedule(4, ["a", "b", "c", "d"])
    counts = _position_counts(sched)
    assert set(counts.values()) == {1}
    for row in sched:
        assert sorted(row) == ["a", "b", "c", "d"]


def test_single_participant():
    sched = build_schedule(1, ["a", "b", "c"])
    assert len(sched) == 1
    assert sorted(sched[0]) == ["a", "b", "c"]


def test_eight_participants_four_conditions():
    sched = build_schedule(8, list("wxyz"))
    counts = _position_counts(sched)
    assert set(counts.values()) == {2}


def test_sixteen_by_sixteen():
    conditions = [f"c{i}" for i in range(16)]
    sched = build_schedule(16, conditions)
    counts = _position_counts(sched)
    assert len(counts) == 16 * 16
    assert set(counts.values()) == {1}


def test_participants_not_divisible_by_k():
    sched = build_schedule(6, ["a", "b", "c", "d"])
    assert len(sched) == 6
    for row in sched:
        assert sorted(row) == ["a", "b", "c", "d"]
    counts = _position_counts(sched)
    # 6 = 4 + 2: cell counts are 1 or 2, never 0
    assert set(counts.values()) <= {1, 2}
    assert len(counts) == 16


def test_invalid_inputs():
    with pytest.raises(ValueError):
        build_schedule(0, ["a"])
    with pytest.raises(ValueError):
        build_schedule(3, [])
