"""Tests for annulus covers and Hausdorff sums."""

import math

import pytest

from src.analyzers.covers import annulus, direction_covers, hausdorff_term, zeros_by_annulus
from src.analyzers.zeros import ZeroBox, ZeroSet
from src.construction.constructor import run
from src.construction.models import ConstructionConfig
from src.exact.poly import DensePoly
from src.growth.envelope import minorant
from src.growth.oracles import PsiPowerOracle
from src.growth.psi import HALF, SlowPsi
from src.schedule.enumeration import TargetFamily, TargetItem


def test_annulus_radii():
    assert annulus(0).inner == 0 and annulus(0).outer == 3
    assert annulus(2).inner == 3 and annulus(2).outer == 9
    with pytest.raises(ValueError):
        annulus(-1)


def test_hausdorff_term():
    assert hausdorff_term(0.0, 0.5, 1.0) == 0.0
    assert hausdorff_term(math.pi / 5, 0.5, 1.0) == pytest.approx((math.pi / 5) ** 0.5)
    # 2.5 cut into three pieces of diameter 5/6
    assert hausdorff_term(2.5, 0.5, 1.0) == pytest.approx(3 * (5 / 6) ** 0.5)


def _single_zero_at_ten():
    box = ZeroBox(10.0, 10.0, 0.0, 0.0, 1)
    return {3: ZeroSet(annulus(3), 1, boxes=[box], localized=True)}


def test_direction_covers_rows():
    report = direction_covers(_single_zero_at_ten(), 4)
    assert [row.k for row in report.rows] == [0, 1, 2, 3, 4]
    assert report.rows[3].count == 1
    assert report.rows[3].intervals == 1
    assert report.rows[3].term == pytest.approx((math.pi / 5) ** 0.5)
    assert report.intervals[3][0] == pytest.approx((-math.pi / 10, math.pi / 10))
    sums = report.partial_sums
    assert all(a <= b for a, b in zip(sums, sums[1:]))
    tails = report.tail_sums
    assert all(a >= b for a, b in zip(tails, tails[1:]))
    assert tails[0] == pytest.approx(sums[-1])
    assert tails[4] == 0.0
    psi = SlowPsi()
    assert [row.bound for row in report.rows] == [2 * psi(1 << (2 * k + 4)) for k in range(5)]
    assert report.ok


def test_direction_covers_flags_large_counts():
    zeros = {0: ZeroSet(annulus(0), 5)}
    report = direction_covers(zeros, 0, ceiling=1)
    assert report.constant == 5 - report.rows[0].bound
    assert not report.ok


def test_direction_covers_validates_parameters():
    with pytest.raises(ValueError):
        direction_covers({}, 2, alpha=0.0)
    with pytest.raises(ValueError):
        direction_covers({}, 2, delta=0.0)


def test_zeros_by_annulus_counts():
    # zeros at 2 and 10
    f = DensePoly([20, -12, 1])
    zeros = zeros_by_annulus(f, 3)
    assert sorted(zeros) == [0, 1, 2, 3]
    assert zeros[0].count == 1
    assert zeros[3].count == 1
    rows = direction_covers(zeros, 3).to_rows()
    assert rows[3]["count"] == 1
    assert set(rows[0]) == {"k", "count", "bound", "excess", "intervals", "term", "partial_sum", "tail_sum"}


def test_terms_decrease_with_one_zero_per_annulus():
    zeros = {}
    for k in range(7):
        r = float((1 << k) + 1)
        zeros[k] = ZeroSet(annulus(k), 1, boxes=[ZeroBox(r, r, 0.0, 0.0, 1)], localized=True)
    report = direction_covers(zeros, 6)
    assert report.terms_decrease_after(2)
    assert not direction_covers({3: zeros[3], 5: zeros[5]}, 6).terms_decrease_after(2)


def test_slow_growth_pipeline_counts_stay_within_bound():
    psi = SlowPsi(6)
    target = TargetItem((DensePoly([1, 1]),), 1)
    config = ConstructionConfig(
        steps=2,
        envelope=minorant(PsiPowerOracle(psi, HALF), depth=8),
        targets=TargetFamily(1, 1, [target]),
    )
    transcript = run(config)
    assert transcript.passed
    report = direction_covers(zeros_by_annulus(transcript.partials[0], 6), 6, psi=psi)
    assert report.ok
    assert report.constant <= 10
    for row in report.rows:
        assert row.count <= row.bound + report.constant
        assert row.bound == 2 * psi(1 << (2 * row.k + 4))
    assert all(math.isfinite(s) for s in report.partial_sums)
    tails = report.tail_sums
    assert all(a >= b for a, b in zip(tails, tails[1:]))
