import json
import sys
from pathlib import Path

import pytest
from click.testing import CliRunner


def _setup_paths():
    repo = Path(__file__).resolve().parents[1]
    sys.path.insert(0, str(repo))
    sys.path.insert(0, str(repo / "src"))
    return repo


_setup_paths()

from eigentope.cli.main import cli  # noqa: E402

QUIET = ["--log-level", "silent"]


@pytest.fixture
def runner(monkeypatch):
    for name in ("EIGENTOPE_CATALOG", "EIGENTOPE_SEED", "EIGENTOPE_TOLERANCE", "EIGENTOPE_LOG_LEVEL"):
        monkeypatch.delenv(name, raising=False)
    return CliRunner()


def _run(runner, *args):
    return runner.invoke(cli, list(args) + QUIET)


def test_convert_tesseract(runner):
    result = _run(runner, "convert", "f:4,3,3")
    assert result.exit_code == 0, result.output
    assert "e:[0.5,0.25,0.25]" in result.output
    assert "h:[4,2,1.33333]" in result.output
    assert "rho:[1,0.75,0.5,0.25]" in result.output
    assert "(++++) EUCLIDEAN" in result.output


def test_convert_json(runner):
    result = _run(runner, "convert", "e:c5,1/4", "--format", "json")
    assert result.exit_code == 0, result.output
    row = json.loads(result.output)[0]
    assert row["h"] is None
    assert row["f"][0] == pytest.approx(5.0)


def test_transform_trace(runner):
    result = _run(runner, "transform", "AAA", "e:1/4,1/4,1/2", "--trace")
    assert result.exit_code == 0, result.output
    lines = result.output.strip().splitlines()
    assert len(lines) == 4
    assert "e:[0.5,0.25,0.25]" in lines[1]


def test_matrix_reports_gram_check(runner):
    result = _run(runner, "matrix", "D", "e:0.25,0.25,0.5")
    assert result.exit_code == 0, result.output
    assert "det=" in result.output
    assert "gram_residual=" in result.output


def test_order(runner):
    result = _run(runner, "order", "AD", "--context", "e3")
    assert result.exit_code == 0, result.output
    assert "AD: order 2" in result.output


def test_relations_rrp3(runner):
    result = _run(runner, "relations", "rrp3")
    assert result.exit_code == 0, result.output
    assert "FAIL" not in result.output
    assert result.output.count("PASS") == 12


def test_eigen_e3(runner):
    result = _run(runner, "eigen", "C", "--context", "e3")
    assert result.exit_code == 0, result.output
    assert "[0.333333,0.333333]" in result.output


def test_spin_with_evec(runner):
    result = _run(runner, "spin", "A", "--evec", "1/3,1/3,1/3")
    assert result.exit_code == 0, result.output
    assert "q=6" in result.output
    assert "J=5/2" in result.output
    assert "orientation-reversing" in result.output


def test_spin_strict_exits_one(runner):
    result = _run(runner, "spin", "A", "--evec", "1/3,1/3,1/3", "--strict")
    assert result.exit_code == 1
    assert "Error:" in result.output


def test_tessellate_statistics(runner):
    result = _run(runner, "tessellate", "e:2/3,1/4")
    assert result.exit_code == 0, result.output
    assert "Meijering" in result.output
    assert "(match)" in result.output


def test_tessellate_solve(runner):
    result = _run(runner, "tessellate", "--solve", "3", "3")
    assert result.exit_code == 0, result.output
    assert "m=5.10" in result.output


def test_tessellate_star(runner):
    result = _run(runner, "tessellate", "e:0.5,0.25,0.25")
    assert result.exit_code == 0, result.output
    assert "star: e:[0.25,0.25,0.5]" in result.output


def test_tables_csv_is_stable(runner, tmp_path):
    first = _run(runner, "tables", "--which", "h", "--format", "csv", "--output", str(tmp_path))
    second = _run(runner, "tables", "--which", "h", "--format", "csv")
    assert first.exit_code == 0, first.output
    assert first.output == second.output
    for ext in ("csv", "json", "html"):
        assert (tmp_path / f"h_tables.{ext}").exists()


def test_tables_claims_json(runner):
    result = _run(runner, "tables", "--which", "claims", "--format", "json")
    assert result.exit_code == 0, result.output
    rows = json.loads(result.output)
    hah = next(r for r in rows if r["word"] == "HAH")
    assert hah["point_period"] == 3


def test_scan_appends_catalog(runner, tmp_path):
    catalog = tmp_path / "eigentopes.json"
    result = _run(
        runner, "scan", "--context", "e3", "--max-len", "2", "--catalog", str(catalog), "--format", "json"
    )
    assert result.exit_code == 0, result.output
    payload = json.loads(result.output)
    assert payload["summary"]["max_len"] == 2
    assert catalog.exists()
    assert len(json.loads(catalog.read_text(encoding="utf-8"))) == len(payload["records"])


@pytest.mark.parametrize(
    "args",
    [
        ("convert", "x:1,2"),
        ("convert", "f:4,abc,3"),
        ("transform", "AQ", "e:0.3,0.3"),
    ],
)
def test_parse_errors_exit_two(runner, args):
    result = _run(runner, *args)
    assert result.exit_code == 2
    assert "Error:" in result.output


def test_singular_transform_exits_one(runner):
    result = _run(runner, "transform", "A", "e:0.3,1")
    assert result.exit_code == 1
    assert "1-delta" in result.output


def test_version(runner):
    result = runner.invoke(cli, ["--version"])
    assert result.exit_code == 0
    assert "0.1.0" in result.output
