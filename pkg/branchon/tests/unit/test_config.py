import pytest
from pydantic import ValidationError

from branchon.cli import config_keys, flag_name, parse_config_file
from branchon.exceptions import ConfigError
from branchon.models.config import DEFAULT_S, RunConfig
from branchon.models.params import Branch


def test_defaults():
    config = RunConfig(command="spectrum")
    assert config.quantum_s == DEFAULT_S
    assert config.branches() == [Branch.PLUS, Branch.MINUS]
    assert config.grid_n_points == 4000
    assert config.basis_size == 60


def test_dotted_and_reserved_keys():
    config = RunConfig.model_validate({"command": "compare", "lambda": "16", "grid.n_points": "800", "basis.size": 80})
    assert config.lam == 16.0
    assert config.grid_n_points == 800
    assert config.basis_size == 80
    resolved = config.resolved()
    assert resolved["lambda"] == 16.0
    assert resolved["grid.n_points"] == 800
    assert "config" not in resolved


@pytest.mark.parametrize(
    "values",
    [
        {"command": "spectrum", "shape": "round"},
        {"command": "spectrum", "lambda": -1},
        {"command": "spectrum", "s": 0},
        {"command": "simulate", "tol": 1e-2},
        {"command": "perturb", "order": 9},
        {"command": "unknown"},
    ],
)
def test_invalid_values(values):
    with pytest.raises(ValidationError):
        RunConfig.model_validate(values)


def test_single_branch():
    assert RunConfig(command="spectrum", branch="minus").branches() == [Branch.MINUS]


def test_flags():
    keys = config_keys()
    assert keys["no_linear_term"] is True
    assert keys["lambda"] is False
    assert "command" not in keys
    assert flag_name("grid.n_points") == "--grid-n-points"
    assert flag_name("t_end") == "--t-end"


def test_config_file(tmp_path):
    path = tmp_path / "run.conf"
    path.write_text("# квантовый прогон\nlambda = 16\n\nbasis.size=80  # побольше\n", encoding="utf-8")
    assert parse_config_file(path) == {"lambda": "16", "basis.size": "80"}

    path.write_text("lambda 16\n", encoding="utf-8")
    with pytest.raises(ConfigError):
        parse_config_file(path)
    with pytest.raises(ConfigError):
        parse_config_file(tmp_path / "missing.conf")
