"""Shared fixtures for the Slowgrowth test suite."""

import random
import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent.parent))

from src.construction.constructor import run
from src.construction.models import ConstructionConfig
from src.construction.transcript import write_transcript
from src.exact.gaussian import GaussianRational
from src.exact.multipoly import MultiPoly
from src.exact.poly import DensePoly
from src.schedule.enumeration import TargetFamily, TargetItem, zero_target


def random_gaussian(rng: random.Random, height: int = 9) -> GaussianRational:
    re = f"{rng.randint(-height, height)}/{rng.randint(1, height)}"
    im = f"{rng.randint(-height, height)}/{rng.randint(1, height)}"
    return GaussianRational(re, im)


def random_dense(rng: random.Random, degree: int, height: int = 9) -> DensePoly:
    coeffs = [random_gaussian(rng, height) for _ in range(degree)]
    coeffs.append(GaussianRational(rng.randint(1, height), rng.randint(-height, height)))
    return DensePoly(coeffs)


def random_multi(rng: random.Random, nvars: int, degree: int, terms: int = 6) -> MultiPoly:
    out = {}
    for _ in range(terms):
        exps = [0] * nvars
        for _ in range(rng.randint(0, degree)):
            exps[rng.randrange(nvars)] += 1
        out[tuple(exps)] = random_gaussian(rng)
    return MultiPoly(nvars, out)


@pytest.fixture
def rng():
    return random.Random(20231)


@pytest.fixture(scope="session")
def zero_run():
    """One standard step on the zero target of radius 1."""
    config = ConstructionConfig(steps=1, targets=TargetFamily(1, 1, [zero_target()]))
    return run(config)


@pytest.fixture(scope="session")
def linear_run():
    """Two steps approximating -5z on the unit disc."""
    target = TargetItem((DensePoly.from_terms([(1, -5)]),), 1)
    config = ConstructionConfig(steps=2, targets=TargetFamily(1, 1, [target]))
    return run(config)


@pytest.fixture(scope="session")
def linear_transcript(linear_run, tmp_path_factory):
    path = tmp_path_factory.mktemp("runs") / "linear.json"
    return write_transcript(linear_run, path)


@pytest.fixture(scope="session")
def default_run():
    """Four steps of the default enumeration with A_i = 1/i!."""
    return run(ConstructionConfig())


@pytest.fixture(scope="session")
def five_step_run():
    """Five steps of the default enumeration with A_i = 1/i!, with the wall time it took."""
    started = time.perf_counter()
    transcript = run(ConstructionConfig(steps=5))
    return transcript, time.perf_counter() - started


@pytest.fixture(scope="session")
def zero_run_eight():
    """Eight standard steps on the zero target; the degrees double from ell = 0."""
    config = ConstructionConfig(steps=8, targets=TargetFamily(1, 1, [zero_target()]))
    return run(config)
