"""Latin-square counterbalanced condition scheduling.

Participant ``i`` receives row ``i mod k`` of a k x k Latin square, so for
any block of k consecutive participants every condition occupies every
ordinal position exactly once. Even condition counts use the standard
balanced (Williams) construction, which additionally balances first-order
carryover; odd counts fall back to plain cyclic rows, where carryover
balance with a single square is impossible.
"""

from __future__ import annotations

from typing import Sequence, TypeVar

T = TypeVar("T")


def latin_square_rows(k: int) -> list[list[int]]:
    """Index rows of a k x k Latin square (Williams order for even k)."""
    if k < 1:
        raise ValueError("condition count must be >= 1")
    if k % 2 == 0:
        # zigzag base row 0, k-1, 1, k-2, ...: successive differences mod k
        # are a permutation of 1..k-1, which is what balances carryover
        base = []
        lo, hi = 0, k - 1
        for j in range(k):
            base.append(lo if j % 2 == 0 else hi)
            if j % 2 == 0:
                lo += 1
            else:
                hi -= 1
    else:
        base = list(range(k))
    return [[(b + i) % k for b in base] for i in range(k)]


def build_schedule(participants: int, conditions: Sequence[T]) -> list[list[T]]:
    """Per-participant condition orders, counterbalanced via Latin squares.

    Each participant sees every condition exactly once. For participant
    counts divisible by len(conditions), every condition x position cell
    count is exactly participants / len(conditions).
    """
    if participants < 1:
        raise ValueError("participant count must be >= 1")
    if not conditions:
        raise ValueError("conditions must be non-empty")
    k = len(conditions)
    rows = latin_square_rows(k)
    return [[conditions[j] for j in rows[i % k]] for i in range(participants)]
