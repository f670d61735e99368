"""Tests for pairing, target enumeration, schedules and ε rules."""

from collections import Counter

import pytest
from gmpy2 import mpq

from src.exact.poly import DensePoly
from src.schedule.enumeration import (
    TargetFamily,
    TargetItem,
    count_up_to_height,
    enumerate_target,
    rank_target,
    zero_target,
)
from src.schedule.epsilon import EpsilonRule
from src.schedule.pairing import first_occurrence, pair, phi1, unpair
from src.schedule.variants import CANTOR, STANDARD_1VAR, STANDARD_NVAR, ScheduleVariant, binary_length, schedule_index


def test_unpair_first_diagonals():
    assert unpair(1) == (1, 1)
    assert unpair(2) == (1, 2)
    assert unpair(3) == (2, 1)


def test_pair_round_trip():
    for k in range(1, 100001):
        assert pair(*unpair(k)) == k


def test_unpair_rejects_nonpositive():
    with pytest.raises(ValueError):
        unpair(0)


def test_first_occurrence_is_first():
    for t in range(1, 30):
        k = first_occurrence(t)
        assert phi1(k) == t
        assert all(phi1(j) != t for j in range(1, k))


def test_first_target_is_zero_on_unit_disc():
    item = enumerate_target(1)
    assert item.is_zero
    assert item.radius == 1


def test_height_one_prefix_is_exhaustive():
    total = count_up_to_height(1)
    items = [enumerate_target(i) for i in range(1, total + 1)]
    assert len(set(items)) == total
    assert all(item.height() <= 1 for item in items)
    # radius 1 and coefficients in {0, ±1, ±i, ±1±i} for 1 and z
    assert total == 81


def test_heights_grow_along_enumeration():
    h1 = count_up_to_height(1)
    assert enumerate_target(h1 + 1).height() == 2


def test_enumeration_is_injective_and_ranked():
    seen = set()
    for i in range(1, 3001):
        item = enumerate_target(i)
        assert item not in seen
        seen.add(item)
        assert rank_target(item) == i


def test_multivariate_enumeration_round_trip():
    for i in (1, 2, 50, 700):
        item = enumerate_target(i, n=2, m=2)
        assert item.m == 2
        assert rank_target(item, n=2, m=2) == i


def test_target_item_validation():
    with pytest.raises(ValueError):
        TargetItem((DensePoly.zero(),), 0)
    with pytest.raises(ValueError):
        TargetItem((), 1)


def test_target_family_explicit_list_cycles():
    items = [zero_target(radius=1), TargetItem((DensePoly([1]),), 2)]
    family = TargetFamily(1, 1, items)
    assert family.identifier == "explicit-list-v1"
    assert family.item(3) == items[0]
    assert TargetFamily.from_json(family.to_json(), 1, 1).item(2) == items[1]


def test_binary_length():
    assert binary_length(1) == 0
    assert binary_length(2) == 1
    assert binary_length(3) == 1
    assert binary_length(5) == 2


def test_schedule_examples():
    assert schedule_index(1, ScheduleVariant(STANDARD_1VAR)) == (1, 1)
    assert schedule_index(1, ScheduleVariant(STANDARD_NVAR)) == (1, 1)
    cantor = ScheduleVariant(CANTOR)
    assert {schedule_index(k, cantor) for k in range(4, 8)} == {(phi1(2), None)}


def test_cantor_schedule_constant_on_dyadic_blocks():
    cantor = ScheduleVariant(CANTOR)
    for e in range(1, 8):
        block = {schedule_index(k, cantor) for k in range(2 ** e, 2 ** (e + 1))}
        assert len(block) == 1


@pytest.mark.parametrize("kind", [STANDARD_1VAR, STANDARD_NVAR])
def test_standard_schedules_recur(kind):
    variant = ScheduleVariant(kind)
    counts = Counter(schedule_index(k, variant)[0] for k in range(1, 2001))
    for t in range(1, 6):
        assert counts[t] >= 3


def test_nvar_schedule_cycles_directions():
    variant = ScheduleVariant(STANDARD_NVAR, 2)
    directions = {schedule_index(k, variant)[1] for k in range(1, 200)}
    assert directions == {1, 2}


def test_epsilon_rule_defaults_and_sums():
    rule = EpsilonRule()
    assert rule(3) == mpq(1, 8)
    assert rule.window_sum(2, 4) == mpq(7, 16)
    assert rule.window_sum(5, 4) == 0
    assert rule.tail(2) == mpq(1, 2)
    assert EpsilonRule.from_dict(rule.to_dict()) == rule


def test_epsilon_rule_validation():
    with pytest.raises(ValueError):
        EpsilonRule(1, 1)
    with pytest.raises(ValueError):
        EpsilonRule.from_dict({"kind": "harmonic"})
