import pytest

from branchon.exceptions import ConfigError
from branchon.services.export import config_fingerprint, read_table, render_table, write_table


@pytest.fixture
def sample_config() -> dict:
    return {"command": "simulate", "k": 1.0, "lambda": 1.0, "grid.n_points": 4000}


def test_fingerprint_ignores_key_order(sample_config):
    shuffled = dict(reversed(list(sample_config.items())))
    assert config_fingerprint(shuffled) == config_fingerprint(sample_config)
    assert config_fingerprint({**sample_config, "k": 2.0}) != config_fingerprint(sample_config)
    assert len(config_fingerprint(sample_config)) == 16


def test_csv_file(tmp_path, sample_config):
    path = tmp_path / "runs" / "simulate.csv"
    written = write_table(path, ("t", "x"), [(0.0, 0.1), (0.5, 1 / 3)], sample_config)
    text = path.read_text(encoding="utf-8")

    assert text.startswith("# created_at: ")
    assert f"# fingerprint: {config_fingerprint(sample_config)}" in text
    assert "0.33333333333333331" in text

    table = read_table(path, expected_columns=("t", "x"))
    assert table.rows == [(0, 0.1), (0.5, 1 / 3)]
    assert table.meta["config"] == sample_config
    assert table.column("x") == written.column("x")


def test_json_file(tmp_path, sample_config):
    path = tmp_path / "spectrum.json"
    write_table(path, ("n", "eta", "branch"), [(0, 2.0, "plus")], sample_config, fmt="json")
    table = read_table(path)
    assert table.columns == ("n", "eta", "branch")
    assert table.rows == [(0, 2.0, "plus")]
    assert table.meta["fingerprint"] == config_fingerprint(sample_config)


def test_body_does_not_depend_on_time(tmp_path, sample_config):
    rows = [(n, n / 7) for n in range(5)]
    first = write_table(tmp_path / "a.csv", ("n", "value"), rows, sample_config)
    second = write_table(tmp_path / "b.csv", ("n", "value"), rows, sample_config)
    body = [line for line in render_table(first).splitlines() if not line.startswith("#")]
    assert body == [line for line in render_table(second).splitlines() if not line.startswith("#")]


def test_unexpected_columns(tmp_path, sample_config):
    path = tmp_path / "out.csv"
    write_table(path, ("t", "x"), [(0.0, 1.0)], sample_config)
    with pytest.raises(ConfigError):
        read_table(path, expected_columns=("t", "x", "v"))


@pytest.mark.parametrize("content", ["# only: comments\n", "{not json", '{"rows": []}'])
def test_broken_files(tmp_path, content):
    path = tmp_path / "broken.csv"
    path.write_text(content, encoding="utf-8")
    with pytest.raises(ConfigError):
        read_table(path)
