"""Location of catalog data files."""
from __future__ import annotations

import os
from pathlib import Path

PACKAGE_DATA = Path(__file__).resolve().parent / "data"


class DataUnavailable(LookupError):
    """A catalog entry exists but its data file is missing."""


def data_dir(override: str | os.PathLike | None = None) -> Path:
    if override:
        return Path(override)
    env = os.environ.get("CUBFORGE_DATA")
    if env:
        return Path(env)
    return PACKAGE_DATA


def data_file(relative: str, override: str | os.PathLike | None = None) -> Path:
    path = data_dir(override) / relative
    if not path.exists():
        raise DataUnavailable(f"data unavailable: {relative} not found under {path.parent}")
    return path
