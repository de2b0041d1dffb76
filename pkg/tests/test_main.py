"""CLI 進入點與 exit code 的測試"""
import pandas as pd
import pytest

import main as cli
from utils.logger import DoeLogger


@pytest.fixture(autouse=True)
def reset_logger():
    yield
    DoeLogger.reset()


def test_config_error_exit_code():
    assert cli.main(["tournament", "--criteria", "AE", "-q"]) == cli.EXIT_CONFIG


def test_missing_config_file(tmp_path):
    assert cli.main(["tournament", "--config", str(tmp_path / "missing.json"), "-q"]) == cli.EXIT_CONFIG


def test_study_file_mismatch(tmp_path):
    path = tmp_path / "run.env"
    path.write_text("STUDY=landscape\n", encoding="utf-8")
    assert cli.main(["tournament", "--config", str(path), "-q"]) == cli.EXIT_CONFIG


def test_runtime_error_exit_code():
    assert cli.main(["fixtures", "--domains", "4x4x4", "-q"]) == cli.EXIT_RUNTIME


def test_unknown_command():
    with pytest.raises(SystemExit) as exc:
        cli.main(["unknown"])
    assert exc.value.code == 2


def test_landscape_run(tmp_path):
    code = cli.main(["landscape", "--grid", "5", "--criteria", "AE,ML2", "--out", str(tmp_path), "-q"])
    assert code == cli.EXIT_OK
    minima = pd.read_csv(tmp_path / "landscape" / "minima.csv")
    assert set(minima["scan"]) >= {"AE", "ML2", "DOPT-linear"}
    assert (tmp_path / "landscape" / "manifest.json").exists()


def test_manifest_as_config(tmp_path):
    args = ["landscape", "--grid", "5", "--criteria", "AE", "--out", str(tmp_path), "-q"]
    assert cli.main(args) == cli.EXIT_OK
    first = (tmp_path / "landscape" / "scans.csv").read_bytes()
    manifest = tmp_path / "landscape" / "manifest.json"
    assert cli.main(["landscape", "--config", str(manifest), "-q"]) == cli.EXIT_OK
    assert (tmp_path / "landscape" / "scans.csv").read_bytes() == first


def test_collect_overrides_skips_unset():
    args = cli.build_parser().parse_args(["tournament", "--seed", "5", "--full-scale"])
    assert cli.collect_overrides(args) == {"seed": 5, "full_scale": True}


@pytest.mark.parametrize("flag", ["--paper-scale", "--full-scale"])
def test_scale_flag_spellings(flag):
    args = cli.build_parser().parse_args(["sa-truss", flag])
    assert cli.collect_overrides(args) == {"full_scale": True}
