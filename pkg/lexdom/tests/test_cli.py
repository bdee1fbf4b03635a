import json

import pytest
from click.testing import CliRunner

from main import cli


@pytest.fixture
def runner():
    return CliRunner()


def _json(result):
    assert result.exit_code == 0, result.output
    return json.loads(result.stdout)


def test_invariant_command(runner):
    data = _json(runner.invoke(cli, ["invariant", "--graph", "path:4", "--kind", "gt", "--witness", "--all-min"]))
    assert data["value"] == 2
    assert data["witness"] == [1, 2]
    assert data["count"] == 1


def test_invariant_function_witness(runner):
    data = _json(runner.invoke(cli, ["invariant", "--graph", "star:3", "--kind", "gtr2", "--witness"]))
    assert data["value"] == 3
    assert sum(data["function"].values()) == 3


def test_invariant_accepts_graph6(runner):
    data = _json(runner.invoke(cli, ["invariant", "--graph", "A_", "--kind", "gx2"]))
    assert data == {"graph": "A_", "kind": "gx2", "value": 2}


def test_infeasible_invariant_is_usage_error(runner):
    result = runner.invoke(cli, ["invariant", "--graph", "empty:1", "--kind", "gt"])
    assert result.exit_code == 2
    assert "INFEASIBLE" in result.output


def test_malformed_graph_is_usage_error(runner):
    result = runner.invoke(cli, ["invariant", "--graph", "A", "--kind", "g"])
    assert result.exit_code == 2


def test_product_command(runner):
    result = runner.invoke(cli, ["product", "--g", "complete:2", "--h", "empty:2"])
    assert result.exit_code == 0, result.output
    line, sidecar = result.stdout.split("\n", 1)
    assert line == "C]"
    assert json.loads(sidecar)["pair_index"] == {"nG": 2, "nH": 2}


def test_formula_command(runner):
    data = _json(runner.invoke(cli, ["formula", "--g", "path:7", "--h", "path:4"]))
    assert data["value"] == 6
    assert data["source"] == "path.gamma_h_2"

    result = runner.invoke(cli, ["formula", "--g", "A_", "--h", "path:4"])
    assert result.exit_code == 2

    data = _json(runner.invoke(cli, ["formula", "--g", "path:2", "--h", "path:4", "--target", "small-value"]))
    assert data["value"] == "3"


def test_bounds_command(runner):
    data = _json(runner.invoke(cli, ["bounds", "--g", "cycle:4", "--h", "empty:2"]))
    assert (data["lower"], data["upper"]) == (3, 4)
    assert data["provenance"]


def test_construct_command(runner):
    data = _json(runner.invoke(cli, [
        "construct", "--scheme", "path-g2", "--n", "7", "--h", "family:path:4", "--dom-pair", "1,2", "--single", "0",
    ]))
    assert data["cardinality"] == 6
    assert data["expected"] == 6
    assert data["valid"] is True
    assert data["profile"] == [0, 2, 1, 0, 1, 2, 0]


def test_construct_hk(runner):
    data = _json(runner.invoke(cli, ["construct", "--scheme", "hk", "--k", "4", "--sizes", "3,2,3,2"]))
    assert data["labels"] == [0, 1, 2, 3]


def test_construct_missing_option(runner):
    result = runner.invoke(cli, ["construct", "--scheme", "small-value", "--h", "path:4"])
    assert result.exit_code == 2


def test_verify_empty_corpus(runner):
    data = _json(runner.invoke(cli, ["verify", "--corpus", "empty"]))
    assert len(data) == 16
    assert all(r["verdict"] == "pass" for r in data)


def test_verify_single_check_with_config(runner, tmp_path):
    config = tmp_path / "lexdom.env"
    config.write_text("LEXDOM_CORPUS_SINGLE_N_MAX=3\n")
    result = runner.invoke(cli, ["--config", str(config), "verify", "--check", "V4", "--no-grid", "--format", "csv"])
    assert result.exit_code == 0, result.output
    assert result.stdout.startswith("check,")
    assert "\nV4," in result.stdout


def test_verify_writes_output(runner, tmp_path):
    target = tmp_path / "report.md"
    result = runner.invoke(cli, ["verify", "--corpus", "empty", "--format", "markdown", "--output", str(target)])
    assert result.exit_code == 0, result.output
    assert "# Verification report" in target.read_text(encoding="utf-8")


def test_verify_bad_check(runner):
    result = runner.invoke(cli, ["verify", "--check", "V99", "--corpus", "empty"])
    assert result.exit_code == 2


def test_missing_config_file(runner, tmp_path):
    result = runner.invoke(cli, ["--config", str(tmp_path / "none.env"), "verify", "--corpus", "empty"])
    assert result.exit_code == 2


def test_hunt_command(runner):
    data = _json(runner.invoke(cli, ["hunt", "--n-max", "3"]))
    assert any(hit["graph6"] == "A_" for hit in data)
