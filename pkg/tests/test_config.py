"""Tests for the YAML configuration layer."""

import pytest
import yaml

from src.config import DEFAULTS, Config
from src.construction.models import DEFAULT_R0
from src.errors import NonUnitDirection
from src.schedule.variants import CANTOR, STANDARD_NVAR


def _write(tmp_path, data):
    path = tmp_path / "config.yaml"
    path.write_text(yaml.safe_dump(data), encoding="utf-8")
    return path


def test_builtin_defaults():
    config = Config()
    assert config.construction.steps == 4
    assert config.quadrature["nodes"] == 256
    assert config.get("construction.r0") == DEFAULT_R0
    assert config.get("construction.missing.key", "x") == "x"
    built = config.construction.build()
    assert built.steps == 4
    assert built.n == 1 and built.m == 1
    assert built.r0 == DEFAULT_R0


def test_defaults_are_not_mutated(tmp_path):
    Config(_write(tmp_path, {"construction": {"steps": 9}}))
    assert DEFAULTS["construction"]["steps"] == 4


def test_missing_file():
    with pytest.raises(FileNotFoundError):
        Config("/nonexistent/slowgrowth.yaml")


def test_partial_file_merges_with_defaults(tmp_path):
    config = Config(_write(tmp_path, {"construction": {"steps": 2, "epsilon": {"ratio": "1/4"}}}))
    assert config.construction.steps == 2
    assert config.get("construction.epsilon.kind") == "geometric"
    assert config.get("construction.epsilon.ratio") == "1/4"


@pytest.mark.parametrize(
    "data",
    [
        {"construction": {"n": 0}},
        {"construction": {"steps": -1}},
        {"construction": {"variant": "unknown"}},
        {"construction": {"variant": CANTOR, "n": 2}},
        {"construction": {"n": 2}},
        {"construction": {"directions": "3/5"}},
        {"quadrature": {"nodes": 4}},
        {"logging": {"level": "LOUD"}},
    ],
)
def test_invalid_values(tmp_path, data):
    with pytest.raises(ValueError):
        Config(_write(tmp_path, data))


def test_non_mapping_file(tmp_path):
    path = tmp_path / "config.yaml"
    path.write_text("- 1\n- 2\n", encoding="utf-8")
    with pytest.raises(ValueError):
        Config(path)


def test_overrides():
    config = Config()
    config.override(steps=1, nodes=64)
    assert config.construction.steps == 1
    assert config.quadrature["nodes"] == 64
    with pytest.raises(ValueError):
        config.override(nodes=2)
    with pytest.raises(ValueError):
        config.override(steps=-1)


def test_explicit_targets_and_directions(tmp_path):
    data = {
        "construction": {
            "n": 2,
            "variant": STANDARD_NVAR,
            "directions": [["3/5", "4/5"]],
            "targets": [{"radius": "1", "components": [[[[1, 0], "1"], [[0, 1], "-1"]]]}],
        }
    }
    built = Config(_write(tmp_path, data)).construction.build()
    assert built.n == 2
    assert len(built.directions) == 1
    assert built.targets.explicit


def test_non_unit_direction(tmp_path):
    data = {"construction": {"n": 2, "variant": STANDARD_NVAR, "directions": [["1/2", "1/2"]]}}
    with pytest.raises(NonUnitDirection):
        Config(_write(tmp_path, data)).construction.build()
