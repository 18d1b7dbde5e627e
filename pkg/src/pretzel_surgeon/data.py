"""Access to the bundled JSON data files."""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path

DATA_VERSION = 1


def data_path(name: str) -> Path:
    return Path(str(resources.files("pretzel_surgeon") / "data" / name))


def load_json(name: str):
    with open(data_path(name)) as fh:
        return json.load(fh)
