"""Tests for the Cantor window variant."""

from itertools import combinations

import pytest
from gmpy2 import mpq

from src.construction.cantor import cantor_branch, cantor_run, certified_half_width
from src.construction.models import ConstructionConfig
from src.exact.gaussian import GaussianRational
from src.exact.poly import DensePoly
from src.schedule.enumeration import TargetFamily, TargetItem, zero_target
from src.schedule.variants import CANTOR, ScheduleVariant


def _config(steps, targets):
    return ConstructionConfig(steps=steps, variant=ScheduleVariant(CANTOR), targets=TargetFamily(1, 1, targets))


@pytest.fixture(scope="module")
def zero_tree():
    return cantor_run(_config(15, [zero_target()]))


def test_zero_targets_keep_default_widths(zero_tree):
    transcript, windows = zero_tree
    assert transcript.passed
    assert windows[1].tau == mpq(1, 4)
    for k in range(2, 16):
        parent = windows[k // 2]
        assert windows[k].tau == min(parent.tau / 4, windows[k - 1].tau * mpq(15, 16))


def test_depth_three_windows_are_disjoint_and_nested(zero_tree):
    _, windows = zero_tree
    leaves = [windows[k].interval for k in range(8, 16)]
    root_lo, root_hi = windows[1].interval
    for lo, hi in leaves:
        assert root_lo < lo < hi < root_hi
    for (a_lo, a_hi), (b_lo, b_hi) in combinations(leaves, 2):
        assert a_hi <= b_lo or b_hi <= a_lo


def test_half_widths_strictly_decrease(zero_tree):
    _, windows = zero_tree
    taus = [windows[k].tau for k in sorted(windows)]
    assert all(b < a for a, b in zip(taus, taus[1:]))


def test_branch_follows_nested_windows(zero_tree):
    _, windows = zero_tree
    t = windows[11].t
    chain = cantor_branch(windows, t)
    assert chain == [1, 2, 5, 11]


def test_cantor_centers_use_window_directions(zero_tree):
    transcript, windows = zero_tree
    for record in transcript.records:
        assert record.direction_index is None
        assert record.window is windows[record.k]
        assert record.center[0].norm2() == record.n ** 2


def test_derivative_half_width_matches_closed_form():
    # G = z², r = 10, ε = 1/4: |G'| ≤ 20 + 2·(1 + 2·10·τ_cap) on the enlarged disc
    tau, bound = certified_half_width([DensePoly.monomial(2)], GaussianRational(10), 10, 1, mpq(1, 4), mpq(1, 100))
    assert mpq(112, 5) <= bound <= mpq(112, 5) * (1 + mpq(1, 2 ** 60))
    assert 2 * 10 * bound * tau <= mpq(1, 4)
    assert tau <= mpq(1, 1792)
    assert tau >= mpq(1, 1792) * (1 - mpq(1, 2 ** 60))


def test_nonzero_target_windows_pass():
    target = TargetItem((DensePoly([1, 1]),), 1)
    transcript, windows = cantor_run(_config(3, [target]))
    assert transcript.passed
    for k in (2, 3):
        parent = windows[1]
        lo, hi = windows[k].interval
        assert parent.interval[0] < lo < hi < parent.interval[1]
        assert windows[k].derivative_bound > 0


def test_cantor_run_needs_cantor_variant():
    with pytest.raises(ValueError):
        cantor_run(ConstructionConfig(steps=1))


def test_depth_five_leaves_are_disjoint_and_nested():
    transcript, windows = cantor_run(_config(63, [zero_target()]))
    assert transcript.passed
    leaves = range(32, 64)
    for (a_lo, a_hi), (b_lo, b_hi) in combinations([windows[k].interval for k in leaves], 2):
        assert a_hi <= b_lo or b_hi <= a_lo
    for k in leaves:
        lo, hi = windows[k].interval
        ancestor = k // 2
        while ancestor:
            outer_lo, outer_hi = windows[ancestor].interval
            assert outer_lo < lo < hi < outer_hi
            assert windows[ancestor].parent == (ancestor // 2 or None)
            ancestor //= 2
        assert len(cantor_branch(windows, windows[k].t)) == 6
