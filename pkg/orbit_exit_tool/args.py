# orbit_exit_tool/args.py
"""
Command line argument parsing - class-based, one subparser per subcommand
Budget and bound flags default to None so the environment can fill them in.
"""
import argparse
from pathlib import Path
from typing import List, Optional

SUBCOMMAND_ACTIONS = {
    "group": ("info", "subgroups", "classes"),
    "orbit-cat": ("build", "export", "audit"),
    "space": ("validate", "quotient", "strat", "subdivide", "cone", "neighborhood", "covering"),
    "exit-cat": ("build", "materialize"),
    "lift": ("path", "all"),
    "classify": ("run",),
    "suite": ("run",),
}


class OrbitExitArgumentParser:
    """Class-based argument parser with a shared option set for every subcommand"""

    def __init__(self, script_name: str = None, description: str = None):
        self.script_name = script_name or "orbit-exit"
        self.description = description or "Orbit categories, exit-path categories and their classification"
        self.parser = None
        self.common = None
        self.subparsers = {}
        self._initialize_parser()

    def _initialize_parser(self):
        self.common = argparse.ArgumentParser(add_help=False)
        self._add_budget_arguments(self.common)
        self._add_output_arguments(self.common)
        self._add_other_arguments(self.common)

        self.parser = argparse.ArgumentParser(
            prog=self.script_name,
            description=self.description,
            formatter_class=argparse.RawDescriptionHelpFormatter,
            epilog=self._get_epilog_text()
        )
        commands = self.parser.add_subparsers(dest="subcommand", metavar="COMMAND")
        commands.required = True

        self._add_group_command(commands)
        self._add_orbit_cat_command(commands)
        self._add_space_command(commands)
        self._add_exit_cat_command(commands)
        self._add_lift_command(commands)
        self._add_classify_command(commands)
        self._add_suite_command(commands)

    def _subcommand(self, commands, name: str, help_text: str) -> argparse.ArgumentParser:
        sub = commands.add_parser(name, parents=[self.common], help=help_text, description=help_text)
        actions = SUBCOMMAND_ACTIONS[name]
        if len(actions) > 1:
            sub.add_argument("action", nargs="?", choices=actions, default=actions[0],
                             help=f"what to do (default: {actions[0]})")
        else:
            sub.set_defaults(action=actions[0])
        self.subparsers[name] = sub
        return sub

    def _add_group_option(self, sub: argparse.ArgumentParser, required: bool = True):
        sub.add_argument(
            "--group", "-g",
            required=required,
            help="built-in group (1, C2, C3, C4, K4, S3, D4) or a group JSON file"
        )

    def _add_model_option(self, sub: argparse.ArgumentParser):
        sub.add_argument(
            "--model", "-m",
            required=True,
            help="curated model name or a model JSON file"
        )

    def _add_group_command(self, commands):
        sub = self._subcommand(commands, "group", "Group order, subgroups and conjugacy classes")
        self._add_group_option(sub)

    def _add_orbit_cat_command(self, commands):
        sub = self._subcommand(commands, "orbit-cat", "Build the orbit category and export it as DOT")
        self._add_group_option(sub)
        sub.add_argument("--pointed", action="store_true", help="use the pointed orbit category")
        sub.add_argument("--include-identities", dest="include_identities", action="store_true",
                         help="draw identity loops in DOT output")

    def _add_space_command(self, commands):
        sub = self._subcommand(commands, "space", "Validate, stratify, quotient, subdivide or cone a G-complex")
        self._add_model_option(sub)
        sub.add_argument("--vertex", help="vertex for the neighborhood check")
        sub.add_argument("--cells", nargs="+", help="cells of the candidate neighborhood")
        sub.add_argument("--stratum", help="stratum label for the covering check")

    def _add_exit_cat_command(self, commands):
        sub = self._subcommand(commands, "exit-cat", "Present, complete and materialize Exit(M)")
        self._add_model_option(sub)
        sub.add_argument("--quotient", action="store_true", help="use the orbit complex M/G")

    def _add_lift_command(self, commands):
        sub = self._subcommand(commands, "lift", "Lift an exit word of M/G to M")
        self._add_model_option(sub)
        sub.add_argument("--word", nargs="+", required=True,
                         help="start vertex of M/G followed by signed edges, e.g. N NE")
        sub.add_argument("--end-lift", dest="end_lift", help="vertex of M over the word's end (default: all)")

    def _add_classify_command(self, commands):
        sub = self._subcommand(commands, "classify", "Run the full classification pipeline on a model")
        self._add_model_option(sub)

    def _add_suite_command(self, commands):
        sub = self._subcommand(commands, "suite", "Run every acceptance check")
        sub.add_argument("--only", nargs="+", help="run only checks whose name contains one of these")

    def _add_budget_arguments(self, parser: argparse.ArgumentParser):
        budget_group = parser.add_argument_group("Budget Options")
        budget_group.add_argument(
            "--budget",
            dest="completion_budget",
            type=int,
            help="rewrite applications allowed during completion (default: 10000)"
        )
        budget_group.add_argument(
            "--bound",
            dest="iso_search_bound",
            type=int,
            help="search nodes allowed per isomorphism search (default: 200000)"
        )
        budget_group.add_argument(
            "--group-bound",
            dest="group_bound",
            type=int,
            help="largest group order to enumerate (default: 360)"
        )
        budget_group.add_argument(
            "--face-bound",
            dest="face_bound",
            type=int,
            help="longest face boundary accepted by the validator (default: 8)"
        )
        budget_group.add_argument(
            "--seed",
            type=int,
            help="seed for randomized suites (default: 0)"
        )

    def _add_output_arguments(self, parser: argparse.ArgumentParser):
        output_group = parser.add_argument_group("Output Options")
        output_group.add_argument(
            "--dot",
            dest="dot_path",
            type=Path,
            help="write a Graphviz DOT diagram here"
        )
        output_group.add_argument(
            "--report",
            dest="report_path",
            type=Path,
            help="write the JSON verification report here (directory or .json file)"
        )
        output_group.add_argument(
            "--output", "-o",
            dest="output_path",
            type=Path,
            help="write a derived model (quotient, subdivision, cone) here"
        )

    def _add_other_arguments(self, parser: argparse.ArgumentParser):
        other_group = parser.add_argument_group("Other Options")
        other_group.add_argument(
            "--env-file",
            dest="env_file",
            type=Path,
            help="read ORBIT_EXIT_* settings from this file (default: .env if present)"
        )
        other_group.add_argument(
            "--verbose", "-v",
            action="store_true",
            help="enable verbose logging"
        )

    def add_argument(self, *args, **kwargs):
        self.parser.add_argument(*args, **kwargs)

    def parse_args(self, argv: Optional[List[str]] = None) -> argparse.Namespace:
        return self.parser.parse_args(argv)

    def _get_epilog_text(self) -> str:
        return f"""
Examples:
  {self.script_name} group --group S3 classes              # Conjugacy classes of subgroups
  {self.script_name} orbit-cat --group K4 --dot k4.dot     # Orbit category diagram
  {self.script_name} space validate --model circle-reflect # Admissibility with witness
  {self.script_name} exit-cat --model disk-rotate-4 \\
                    --budget 50000                        # Completion with a larger budget
  {self.script_name} lift --model circle-reflect \\
                    --word N NE --end-lift E              # Lift a quotient exit word
  {self.script_name} classify --model circle-reflect \\
                    --report out                          # Full pipeline with report
  {self.script_name} suite --report out --seed 7           # All acceptance checks

Exit status: 0 verified, 1 refuted, 2 undecided, 64 input error, 70 internal error
"""


def parse_arguments(argv: Optional[List[str]] = None, script_name: str = None) -> argparse.Namespace:
    """Convenience function for simple use cases"""
    return OrbitExitArgumentParser(script_name).parse_args(argv)
