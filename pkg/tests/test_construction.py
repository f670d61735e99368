"""Tests for the step-wise construction, centers, frames and witnesses."""

import math

import numpy as np
import pytest
from gmpy2 import mpq

from src.analyzers.characteristic import cartan_T
from src.audit.verifier import verify_transcript
from src.construction.centers import CenterConstraints, first_power_above, search_center, specialize_center
from src.construction.constructor import run
from src.construction.frames import inner, orthogonal_complete
from src.construction.growth_audit import growth_audit
from src.construction.models import ConstructionConfig, check_unit
from src.construction.transcript import dumps, load_transcript, transcript_from_document
from src.construction.witness import witness
from src.audit.document import loads_document
from src.errors import EnvelopeExhausted, NonUnitDirection, NoWitnessInHorizon
from src.exact.gaussian import GaussianRational, unit_from_half_tangent
from src.exact.laurent import ParamLaurent
from src.exact.multipoly import MultiPoly
from src.exact.poly import DensePoly
from src.growth.envelope import geometric_factorial, inverse_factorial
from src.schedule.enumeration import TargetFamily, TargetItem
from src.schedule.variants import STANDARD_NVAR, ScheduleVariant
from src.solvers.system import StepSolution


def test_zero_target_single_step(zero_run):
    record = zero_run.records[0]
    assert record.n == 2048
    assert record.radius == 2050
    assert all(not piece for piece in record.pieces)
    assert record.passed


def test_first_power_above():
    assert first_power_above(2024) == 2048
    assert first_power_above(2048) == 4096
    assert first_power_above(mpq(1, 2)) == 1


def test_one_term_center_threshold():
    # a_1 = -5/c: the caps need 5/n <= (1/2)/2023
    solution = StepSolution(0, {1: ParamLaurent({1: -5})})
    constraints = CenterConstraints(
        epsilon=mpq(1, 2),
        radius_prev=2023,
        target_radius=1,
        envelope=geometric_factorial("1/10"),
        ell=0,
    )
    assert specialize_center(solution, constraints) == 20230


def test_zero_solution_center_is_start():
    solution = StepSolution(0, {1: ParamLaurent()})
    constraints = CenterConstraints(epsilon=mpq(1, 2), radius_prev=2023, target_radius=1,
                                    envelope=inverse_factorial(), ell=0)
    assert specialize_center(solution, constraints) == 2048


def test_search_center_bisects_to_first_admissible():
    n, certificate = search_center(lambda n: "ok" if n >= 1000 else None, 64)
    assert n == 1000
    assert certificate == "ok"


def test_search_center_respects_bit_limit():
    with pytest.raises(EnvelopeExhausted):
        search_center(lambda n: None, 4, max_bits=8, step=3)


def test_cap_rejects_nonpositive_envelope():
    class Broken:
        def coefficient(self, i):
            return mpq(0)

    constraints = CenterConstraints(epsilon=1, radius_prev=1, target_radius=1, envelope=Broken(), ell=0)
    with pytest.raises(EnvelopeExhausted):
        constraints.cap(1)


def test_linear_target_run(linear_run):
    assert linear_run.passed
    first, second = linear_run.records
    assert (first.ell, first.m_lo, first.m_hi) == (1, 2, 3)
    assert second.ell == first.m_hi
    assert first.n > first.radius_prev + first.target_radius
    assert first.radius > first.n + first.target_radius
    assert second.radius_prev == first.radius


def test_default_run_interleaves_degrees(default_run):
    assert default_run.passed
    previous_hi = 0
    for record in default_run.records:
        assert record.m_lo > previous_hi or (previous_hi == 0 and record.m_lo == 1)
        assert record.m_lo <= record.m_hi
        assert record.center_norm > record.radius_prev + record.target_radius
        assert record.radius > record.center_norm + record.target_radius
        previous_hi = record.m_hi


def test_default_run_respects_envelope(default_run):
    envelope = default_run.config.envelope
    for record in default_run.records:
        for caps in record.caps:
            for entry in caps:
                assert entry.bound <= envelope.coefficient(entry.degree)
    rows = growth_audit(default_run, [1, 10, 100])
    assert all(row["ok"] for row in rows)


def test_degree_doubling_when_target_fits(default_run):
    targets = default_run.config.targets
    for before, after in zip(default_run.records, default_run.records[1:]):
        degree = targets.item(after.target_index).degree
        assert after.ell == max(before.m_hi, degree)
        if degree <= before.m_hi:
            assert after.ell == 2 * before.ell + 1


def test_runs_are_byte_identical():
    target = TargetItem((DensePoly([1, 1]),), 1)
    config = dict(steps=2, targets=TargetFamily(1, 1, [target]))
    assert dumps(run(ConstructionConfig(**config))) == dumps(run(ConstructionConfig(**config)))


def test_transcript_round_trip(linear_run, linear_transcript):
    reloaded = load_transcript(linear_transcript)
    assert dumps(reloaded) == dumps(linear_run)
    assert reloaded.partials == linear_run.partials


def test_transcript_from_text(linear_run):
    document = loads_document(dumps(linear_run))
    rebuilt = transcript_from_document(document)
    assert [r.n for r in rebuilt.records] == [r.n for r in linear_run.records]


def test_non_unit_direction_rejected():
    with pytest.raises(NonUnitDirection):
        ConstructionConfig(n=2, directions=[(1, 1)])
    assert check_unit((GaussianRational("3/5"), GaussianRational(0, "4/5"))) is not None


def test_orthogonal_complete_identity():
    frame = orthogonal_complete((1, 0))
    assert frame.is_identity
    assert frame.kappa == 1


def test_orthogonal_complete_pythagorean_pair():
    frame = orthogonal_complete(("3/5", "4/5"))
    assert frame.vectors[1] == (GaussianRational("-4/5"), GaussianRational("3/5"))
    assert frame.kappa == 1


def test_orthogonal_complete_three_dimensions():
    theta = (GaussianRational("1/3"), GaussianRational(0, "2/3"), GaussianRational("2/3"))
    frame = orthogonal_complete(theta)
    vectors = frame.vectors
    assert vectors[0] == theta
    for a in range(3):
        for b in range(a + 1, 3):
            assert inner(vectors[a], vectors[b]) == 0
    assert frame.kappa >= 1
    for s in range(3):
        for t in range(3):
            entry = sum((frame.forward[s][l] * frame.inverse[l][t] for l in range(3)), GaussianRational(0))
            assert entry == (1 if s == t else 0)


def test_orthogonal_complete_rejects_non_unit():
    with pytest.raises(NonUnitDirection):
        orthogonal_complete((1, 1))


def test_multivariate_run_along_rotated_direction():
    target = TargetItem((MultiPoly(2, {(1, 0): 1, (0, 1): -1}),), 1)
    config = ConstructionConfig(
        n=2,
        steps=1,
        directions=[("3/5", "4/5")],
        variant=ScheduleVariant(STANDARD_NVAR),
        targets=TargetFamily(2, 1, [target]),
    )
    transcript = run(config)
    record = transcript.records[0]
    assert record.passed
    assert record.center == (GaussianRational(mpq(3, 5) * record.n), GaussianRational(mpq(4, 5) * record.n))


def test_witness_first_step(linear_run):
    rule = linear_run.config.epsilon
    result = witness(linear_run, 1, 1, rule(1) + rule.tail(2))
    assert result.step == 1
    assert result.n == linear_run.records[0].n


def test_witness_tightening_moves_later(linear_run):
    assert witness(linear_run, 1, 1, mpq(3, 4)).step == 1
    assert witness(linear_run, 1, 1, mpq(1, 4)).step == 2
    with pytest.raises(NoWitnessInHorizon):
        witness(linear_run, 1, 1, mpq(1, 8))
    with pytest.raises(NoWitnessInHorizon):
        witness(linear_run, 7, 1)


def test_witness_bound_dominates_samples(linear_run):
    result = witness(linear_run, 1)
    f = linear_run.partials[0]
    g = DensePoly.from_terms([(1, -5)])
    c = result.center[0]
    bound2 = result.bound.value ** 2
    points = [GaussianRational(0)]
    for t in range(-16, 17):
        u = unit_from_half_tangent(mpq(t, 4))
        points.append(u * result.target_radius)
    for z in points:
        assert (f(c + z) - g(z)).norm2() <= bound2
    assert result.bound.value <= mpq(3, 4)


def test_search_center_screen_gives_same_center():
    calls = []

    def admissible(n):
        calls.append(n)
        return "ok" if n >= 5000 else None

    n, certificate = search_center(admissible, 64, screen=lambda n: n >= 5000)
    assert (n, certificate) == (5000, "ok")
    assert calls == [5000]
    assert search_center(lambda n: "ok" if n >= 5000 else None, 64) == (5000, "ok")


def test_search_center_recovers_when_screen_is_loose():
    n, _ = search_center(lambda n: "ok" if n >= 1000 else None, 64, screen=lambda n: n >= 900)
    assert n == 1000


def test_search_center_gallops_on_the_exponent():
    calls = []

    def admissible(n):
        calls.append(n)
        return "ok" if n >= 1 << 300 else None

    n, _ = search_center(admissible, 4, max_bits=400)
    assert n == 1 << 300
    assert len([c for c in calls if c & (c - 1) == 0]) <= 20


def test_five_step_default_run(five_step_run):
    transcript, elapsed = five_step_run
    assert elapsed < 120
    assert transcript.passed
    assert len(transcript.records) == 5
    for record in transcript.records:
        assert record.passed
        assert all(bound.value <= record.epsilon for bound in record.cond1 + record.cond2)
        assert all(entry.ok for caps in record.caps for entry in caps)
    assert verify_transcript(loads_document(dumps(transcript))).steps == 5


def test_five_step_run_doubles_degrees(five_step_run):
    transcript, _ = five_step_run
    targets = transcript.config.targets
    for before, after in zip(transcript.records, transcript.records[1:]):
        degree = targets.item(after.target_index).degree
        assert after.ell == max(before.m_hi, degree)
        assert after.m_hi == 2 * after.ell + 1


def test_five_step_run_stays_below_envelope(five_step_run):
    transcript, _ = five_step_run
    for row in growth_audit(transcript, [1, 10, 100, 1000]):
        assert row["coefficient_sum"] <= row["envelope_sum"]
        assert row["ok"]


@pytest.mark.parametrize("r", [2, 8, 32])
def test_five_step_run_characteristic_below_log_envelope(five_step_run, r):
    transcript, _ = five_step_run
    value, _ = cartan_T(transcript.partials, r)
    top = max(record.m_hi for record in transcript.records) + 64
    assert value <= math.log(float(transcript.config.envelope.evaluate(r, top))) + 1e-3


def _boundary_points(radius):
    return [unit_from_half_tangent(mpq(j, 20)) * radius for j in range(-500, 500)]


@pytest.mark.parametrize("target_index", [1, 2])
def test_witness_bound_holds_on_thousand_points(five_step_run, target_index):
    transcript, _ = five_step_run
    result = witness(transcript, target_index)
    g = transcript.config.targets.item(target_index).polys[0]
    difference = transcript.partials[0].taylor_shift(result.center[0]) - g
    coefficients = [complex(difference.coefficient(j)) for j in range(difference.degree, -1, -1)]
    points = np.array([complex(z) for z in _boundary_points(result.target_radius)])
    values = np.abs(np.polyval(coefficients, points))
    assert len(points) == 1000
    assert np.max(values) <= float(result.bound.value) * (1 + 1e-9)


def test_zero_target_eight_steps_double_degrees(zero_run_eight):
    assert zero_run_eight.passed
    assert [record.ell for record in zero_run_eight.records] == [0, 1, 3, 7, 15, 31, 63, 127]


def test_zero_target_witness_moves_later_as_epsilon_shrinks(zero_run_eight):
    steps = [witness(zero_run_eight, 1, 1, eps).step for eps in (mpq(1, 2), mpq(1, 8), mpq(1, 32))]
    assert steps == [2, 4, 7]
    assert steps == sorted(steps)


def test_zero_target_witness_for_third_target(zero_run_eight):
    result = witness(zero_run_eight, 3)
    assert result.step == 6
    f = zero_run_eight.partials[0]
    for z in _boundary_points(result.target_radius):
        assert f(result.center[0] + z).norm2() <= result.bound.value ** 2
