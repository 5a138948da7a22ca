import json

import pytest

from fockmodes import (
    OptConfig,
    Partition,
    optimize_entanglement,
    parse_state,
    rank_bound,
    schmidt_spectrum,
)
from fockmodes.cli import run_cli
from fockmodes.ketparse import format_unitary_file
from fockmodes.suite import circular_mixer


@pytest.fixture
def circular_file(tmp_path):
    path = tmp_path / "circular.json"
    path.write_text(format_unitary_file(circular_mixer()))
    return str(path)


def test_entropy_command(capsys):
    code = run_cli(["entropy", "|01>+|10>", "--partition", "0|1"])
    out = capsys.readouterr().out
    assert code == 0
    assert "1.000000" in out


def test_entropy_json_matches_library(capsys):
    code = run_cli(["entropy", "|01>+|10>", "--partition", "0|1", "--json"])
    assert code == 0
    doc = json.loads(capsys.readouterr().out)
    state = parse_state("|01>+|10>")
    part = Partition.from_string("0|1")
    spectrum = schmidt_spectrum(state, part)
    assert doc["entropy_bits"] == spectrum.entropy_bits
    assert doc["lambdas"] == [float(v) for v in spectrum.lambdas]
    assert doc["rank"] == spectrum.numerical_rank
    assert doc["rank_bound"] == rank_bound(state, part)
    assert set(doc) == {
        "input", "partition", "lambdas", "entropy_bits", "rank",
        "rank_bound", "wall_ms",
    }


def test_transform_command(capsys, circular_file):
    code = run_cli(["transform", "|20>+|02>", "--unitary", circular_file])
    out = capsys.readouterr().out.strip()
    assert code == 0
    assert out == "|11>"


def test_optimize_command_json(capsys):
    argv = [
        "optimize", "|00>+|11>", "--partition", "0|1", "--direction", "max",
        "--seed", "0", "--json",
    ]
    code = run_cli(argv)
    assert code == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["best"] == pytest.approx(1.0071, abs=5e-4)
    assert doc["direction"] == "max"
    assert doc["seed"] == 0
    assert len(doc["restart_values"]) == 24
    # Thin shell: identical numbers to a direct library call.
    result = optimize_entanglement(
        parse_state("|00>+|11>"), Partition.from_string("0|1"), OptConfig("max")
    )
    assert doc["best"] == result.best_entropy_bits
    assert doc["restart_values"] == list(result.per_restart_values)


def test_rank_bound_command(capsys):
    code = run_cli(["rank-bound", "|20>+|02>", "--partition", "0|1", "--json"])
    assert code == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["rank_bound"] == 3


def test_missing_partition_is_usage_error(capsys):
    assert run_cli(["entropy", "|01>"]) == 2
    capsys.readouterr()


def test_bad_state_is_parse_error(capsys):
    assert run_cli(["entropy", "|01> +", "--partition", "0|1"]) == 3
    assert "offset" in capsys.readouterr().err


def test_bad_unitary_file_is_parse_error(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text("{\"dim\": 1}")
    assert run_cli(["transform", "|0>", "--unitary", str(path)]) == 3
    capsys.readouterr()


def test_partition_not_covering_is_usage_error(capsys):
    assert run_cli(["entropy", "|01>+|10>", "--partition", "0|2"]) == 2
    capsys.readouterr()


def test_missing_unitary_file_is_usage_error(capsys):
    assert run_cli(["transform", "|0>", "--unitary", "/nonexistent.json"]) == 2
    capsys.readouterr()


def test_unknown_command_is_usage_error(capsys):
    assert run_cli(["frobnicate"]) == 2
    capsys.readouterr()


def test_numerical_consistency_maps_to_exit_4(monkeypatch, capsys):
    from fockmodes import NumericalConsistencyError
    from fockmodes import cli as cli_module

    def broken(*args, **kwargs):
        raise NumericalConsistencyError("forced for the exit-code check")

    monkeypatch.setattr(cli_module, "schmidt_spectrum", broken)
    assert run_cli(["entropy", "|01>+|10>", "--partition", "0|1"]) == 4
    assert "forced" in capsys.readouterr().err
