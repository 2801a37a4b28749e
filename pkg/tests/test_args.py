# tests/test_args.py
from pathlib import Path

import pytest

from orbit_exit_tool.args import SUBCOMMAND_ACTIONS, OrbitExitArgumentParser, parse_arguments


@pytest.mark.parametrize("subcommand,options", [
    ("group", ["--group", "S3"]),
    ("orbit-cat", ["--group", "K4"]),
    ("space", ["--model", "circle-reflect"]),
    ("exit-cat", ["--model", "circle-reflect"]),
    ("lift", ["--model", "circle-reflect", "--word", "N"]),
    ("classify", ["--model", "circle-reflect"]),
    ("suite", []),
])
def test_default_actions(subcommand, options):
    args = parse_arguments([subcommand] + options)
    assert args.subcommand == subcommand
    assert args.action == SUBCOMMAND_ACTIONS[subcommand][0]


def test_budget_flags_default_to_none():
    args = parse_arguments(["suite"])
    assert args.completion_budget is None
    assert args.iso_search_bound is None
    assert args.seed is None
    assert args.only is None


def test_lift_arguments():
    args = parse_arguments(["lift", "all", "--model", "circle-reflect", "--word", "N", "NE", "--end-lift", "E"])
    assert args.action == "all"
    assert args.word == ["N", "NE"]
    assert args.end_lift == "E"


def test_output_and_budget_flags():
    args = parse_arguments([
        "orbit-cat", "export", "--group", "K4", "--dot", "k4.dot", "--include-identities",
        "--bound", "10", "--report", "out", "-v",
    ])
    assert args.dot_path == Path("k4.dot")
    assert args.report_path == Path("out")
    assert args.include_identities
    assert args.iso_search_bound == 10
    assert args.verbose


def test_space_neighborhood_arguments():
    args = parse_arguments([
        "space", "neighborhood", "--model", "circle-reflect", "--vertex", "N", "--cells", "N", "NE",
    ])
    assert args.vertex == "N"
    assert args.cells == ["N", "NE"]


@pytest.mark.parametrize("argv", [
    [],
    ["group"],
    ["space", "explode", "--model", "circle-reflect"],
    ["lift", "--model", "circle-reflect"],
])
def test_rejected_command_lines(argv):
    with pytest.raises(SystemExit):
        OrbitExitArgumentParser().parse_args(argv)
