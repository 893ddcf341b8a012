"""eVTOL in-flight connectivity simulator over hybrid cellular / LEO networks."""

from __future__ import annotations

import os
from pathlib import Path

from ._core import *  # noqa: F401,F403
from ._core import (
    ConfigError,
    IoError,
    __version__,
    load_scenario_file,
    resolve_scenario_path,
)

_PACKAGE_SCENARIOS = Path(__file__).with_name("scenarios")


def scenario_path(name_or_path: str | os.PathLike) -> Path:
    """Existing files win; otherwise look up a bundled scenario by name."""
    candidate = Path(name_or_path)
    if candidate.is_file():
        return candidate
    for directory in (os.environ.get("UAMLINK_SCENARIO_DIR"), _PACKAGE_SCENARIOS):
        if not directory:
            continue
        for path in (Path(directory) / candidate, Path(directory) / f"{candidate}.yaml"):
            if path.is_file():
                return path
    return Path(resolve_scenario_path(str(name_or_path)))


def load_scenario(name_or_path: str | os.PathLike):
    return load_scenario_file(scenario_path(name_or_path))
