# orbit_exit_tool/config.py
"""
Run configuration: defaults, optional .env file, ORBIT_EXIT_* overrides
Command-line flags win over the environment, which wins over the defaults.
"""
import logging
import os
from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import Dict, List, Optional

try:
    from dotenv import load_dotenv
except ImportError:
    load_dotenv = None

from .errors import InputError

logger = logging.getLogger(__name__)

ENV_PREFIX = "ORBIT_EXIT_"

# environment variable suffix -> RunConfig field
ENV_OVERRIDES: Dict[str, str] = {
    "COMPLETION_BUDGET": "completion_budget",
    "ISO_BOUND": "iso_search_bound",
    "GROUP_BOUND": "group_bound",
    "FACE_BOUND": "face_bound",
    "SEED": "seed",
}


@dataclass
class RunConfig:
    """Everything one invocation needs"""

    subcommand: str = "suite"
    action: Optional[str] = None

    # Inputs
    group: Optional[str] = None
    model: Optional[str] = None
    word: Optional[List[str]] = None
    end_lift: Optional[str] = None
    vertex: Optional[str] = None
    cells: Optional[List[str]] = None
    stratum: Optional[str] = None
    only: Optional[List[str]] = None

    # Outputs
    dot_path: Optional[Path] = None
    report_path: Optional[Path] = None
    output_path: Optional[Path] = None

    # Budgets and bounds
    seed: int = 0
    completion_budget: int = 10_000
    iso_search_bound: int = 200_000
    group_bound: int = 360
    face_bound: int = 8
    random_presheaves: int = 100
    lift_word_bound: int = 6

    # Switches
    include_identities: bool = False
    pointed: bool = False
    materialize: bool = False
    quotient: bool = False
    verbose: bool = False
    env_file_path: Optional[Path] = None

    # Derived
    report_file: Optional[Path] = field(default=None, init=False)

    def __post_init__(self):
        if self.report_path is not None:
            self.report_path = Path(self.report_path)
            self.report_file = self.report_path if self.report_path.suffix else self.report_path / "report.json"
        if self.dot_path is not None:
            self.dot_path = Path(self.dot_path)
        if self.output_path is not None:
            self.output_path = Path(self.output_path)

    def load_environment(self) -> "RunConfig":
        """Apply an optional .env file and ORBIT_EXIT_* variables"""
        env_file = self._get_env_file_path()
        if load_dotenv is None and self.env_file_path is not None and env_file.exists():
            raise InputError(f"cannot read {env_file}: python-dotenv is not installed")
        if load_dotenv and env_file.exists():
            load_dotenv(env_file, override=False)
            logger.debug(f"✅ Loaded environment from {env_file}")
        elif self.env_file_path is not None:
            raise InputError(f".env file not found at {env_file}")
        for suffix, name in ENV_OVERRIDES.items():
            raw = os.getenv(ENV_PREFIX + suffix)
            if raw is None or not raw.strip():
                continue
            try:
                setattr(self, name, int(raw))
            except ValueError:
                raise InputError(f"{ENV_PREFIX}{suffix} must be an integer, got {raw!r}") from None
            logger.debug(f"{name} = {raw} (from {ENV_PREFIX}{suffix})")
        return self

    def _get_env_file_path(self) -> Path:
        if self.env_file_path:
            return Path(self.env_file_path)
        return Path(".env")

    @classmethod
    def from_args(cls, args) -> "RunConfig":
        """Defaults, then environment, then every flag that was actually given"""
        config = cls(env_file_path=getattr(args, "env_file", None)).load_environment()
        for f in fields(cls):
            if not f.init or f.name == "env_file_path":
                continue
            value = getattr(args, f.name, None)
            if value is not None:
                setattr(config, f.name, value)
        config.__post_init__()
        return config

    def to_provenance(self) -> Dict:
        """Inputs and budgets recorded in reports"""
        return {
            "subcommand": self.subcommand,
            "action": self.action,
            "group": self.group,
            "model": self.model,
            "seed": self.seed,
            "completion_budget": self.completion_budget,
            "iso_search_bound": self.iso_search_bound,
            "group_bound": self.group_bound,
        }
