# tests/test_config.py
from pathlib import Path

import pytest

from orbit_exit_tool.args import parse_arguments
from orbit_exit_tool.config import ENV_OVERRIDES, ENV_PREFIX, RunConfig
from orbit_exit_tool.errors import InputError
from orbit_exit_tool.validators import RunConfigValidator


@pytest.fixture
def clean_env(tmp_path, monkeypatch):
    """No .env in the working directory and no ORBIT_EXIT_* leaking in or out"""
    monkeypatch.chdir(tmp_path)
    for suffix in ENV_OVERRIDES:
        monkeypatch.setenv(ENV_PREFIX + suffix, "")
        monkeypatch.delenv(ENV_PREFIX + suffix)
    return tmp_path


def test_defaults(clean_env):
    config = RunConfig().load_environment()
    assert config.subcommand == "suite"
    assert config.completion_budget == 10_000
    assert config.iso_search_bound == 200_000
    assert config.group_bound == 360
    assert config.face_bound == 8
    assert config.seed == 0
    assert config.report_file is None


@pytest.mark.parametrize("path,expected", [
    ("out", Path("out") / "report.json"),
    ("out/run.json", Path("out/run.json")),
])
def test_report_file(path, expected):
    assert RunConfig(report_path=path).report_file == expected


def test_environment_overrides(clean_env, monkeypatch):
    monkeypatch.setenv("ORBIT_EXIT_COMPLETION_BUDGET", "50")
    monkeypatch.setenv("ORBIT_EXIT_SEED", "7")
    config = RunConfig().load_environment()
    assert config.completion_budget == 50
    assert config.seed == 7
    assert config.group_bound == 360


def test_bad_integer_in_environment(clean_env, monkeypatch):
    monkeypatch.setenv("ORBIT_EXIT_ISO_BOUND", "lots")
    with pytest.raises(InputError):
        RunConfig().load_environment()


def test_env_file(clean_env):
    env_file = clean_env / "budgets.env"
    env_file.write_text("ORBIT_EXIT_FACE_BOUND=12\n", encoding="utf-8")
    config = RunConfig(env_file_path=env_file).load_environment()
    assert config.face_bound == 12


def test_missing_env_file(clean_env):
    with pytest.raises(InputError):
        RunConfig(env_file_path=clean_env / "absent.env").load_environment()


def test_env_file_without_dotenv(clean_env, monkeypatch):
    monkeypatch.setattr("orbit_exit_tool.config.load_dotenv", None)
    env_file = clean_env / "budgets.env"
    env_file.write_text("ORBIT_EXIT_FACE_BOUND=12\n", encoding="utf-8")
    with pytest.raises(InputError, match="python-dotenv is not installed"):
        RunConfig(env_file_path=env_file).load_environment()


def test_flags_win_over_environment(clean_env, monkeypatch):
    monkeypatch.setenv("ORBIT_EXIT_COMPLETION_BUDGET", "50")
    monkeypatch.setenv("ORBIT_EXIT_GROUP_BOUND", "24")
    args = parse_arguments(["exit-cat", "--model", "circle-reflect", "--budget", "99", "--report", "out"])
    config = RunConfig.from_args(args)
    assert config.subcommand == "exit-cat"
    assert config.action == "build"
    assert config.completion_budget == 99
    assert config.group_bound == 24
    assert config.report_file == Path("out") / "report.json"
    provenance = config.to_provenance()
    assert provenance["model"] == "circle-reflect"
    assert provenance["completion_budget"] == 99


def test_run_config_validator(clean_env):
    assert RunConfigValidator(RunConfig(group="K4", model="circle-reflect")).validate()
    problems = RunConfigValidator(RunConfig(completion_budget=0, group="Z9", model="torus", word=[])).problems()
    assert len(problems) == 4
    assert problems[0].startswith("completion_budget")
