import numpy as np
import pytest
from hypothesis import given, strategies as st

from readacuity import ssq


def test_all_zero_response_scores_zero():
    score = ssq.score_ssq([0] * 16)
    assert score == ssq.SsqScore(0.0, 0.0, 0.0, 0.0)


def test_single_nausea_only_item():
    # item 6 (increased salivation) sits on the nausea subscale only
    ratings = [0] * 16
    ratings[5] = 1
    score = ssq.score_ssq(ratings)
    assert score.nausea == pytest.approx(9.54)
    assert score.oculomotor == 0.0
    assert score.disorientation == 0.0
    assert score.total == pytest.approx(3.74)


def test_all_max_hand_computed():
    # 7 items per subscale, each rated 3: raw sums are 21 each; five items
    # load on two subscales, so the raw total is 63
    score = ssq.score_ssq([3] * 16)
    assert score.nausea == pytest.approx(9.54 * 21)
    assert score.oculomotor == pytest.approx(7.58 * 21)
    assert score.disorientation == pytest.approx(13.92 * 21)
    assert score.total == pytest.approx(3.74 * 63)


def test_subscale_map_shape():
    assert len(ssq.NAUSEA_ITEMS) == 7
    assert len(ssq.OCULOMOTOR_ITEMS) == 7
    assert len(ssq.DISORIENTATION_ITEMS) == 7
    shared = (set(ssq.NAUSEA_ITEMS) | set(ssq.OCULOMOTOR_ITEMS)
              | set(ssq.DISORIENTATION_ITEMS))
    assert shared == set(range(1, 17))


@pytest.mark.parametrize("bad", [[4] + [0] * 15, [-1] + [0] * 15, [0.5] + [0] * 15])
def test_invalid_ratings_rejected(bad):
    with pytest.raises(ValueError):
        ssq.score_ssq(bad)


def test_wrong_length_rejected():
    with pytest.raises(ValueError):
        ssq.score_ssq([0] * 15)


@given(
    st.lists(st.integers(min_value=0, max_value=3), min_size=16, max_size=16),
    st.integers(min_value=0, max_value=15),
)
def test_raising_one_item_never_lowers_any_score(ratings, idx):
    if ratings[idx] == 3:
        return
    bumped = list(ratings)
    bumped[idx] += 1
    before, after = ssq.score_ssq(ratings), ssq.score_ssq(bumped)
    assert after.nausea >= before.nausea
    assert after.oculomotor >= before.oculomotor
    assert after.disorientation >= before.disorientation
    assert after.total > before.total
