"""Run configuration: data-file overrides and search budgets, optionally from a TOML file."""

from __future__ import annotations

import sys
from dataclasses import dataclass, field, fields, replace
from typing import Optional

from .derivation import DEFAULT_MAX_LEN, DEFAULT_MAX_STEPS

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib


@dataclass(frozen=True)
class DataPaths:
    gluing: Optional[str] = None
    boundary_slopes: Optional[str] = None


@dataclass(frozen=True)
class Budgets:
    max_len: int = DEFAULT_MAX_LEN
    max_steps: int = DEFAULT_MAX_STEPS
    n_starts: int = 60
    seed: int = 0

    def __post_init__(self):
        if self.max_len <= 0 or self.max_steps <= 0 or self.n_starts <= 0:
            raise ValueError("budgets must be positive")


@dataclass(frozen=True)
class RunConfig:
    data: DataPaths = field(default_factory=DataPaths)
    budgets: Budgets = field(default_factory=Budgets)

    def with_budgets(self, **kw) -> "RunConfig":
        kw = {k: v for k, v in kw.items() if v is not None}
        return replace(self, budgets=replace(self.budgets, **kw))


def _section(cls, obj: dict, name: str):
    known = {f.name for f in fields(cls)}
    extra = set(obj) - known
    if extra:
        raise ValueError(f"unknown keys in [{name}]: {', '.join(sorted(extra))}")
    return cls(**obj)


def load_config(path=None) -> RunConfig:
    if path is None:
        return RunConfig()
    with open(path, "rb") as fh:
        raw = tomllib.load(fh)
    extra = set(raw) - {"data", "budgets"}
    if extra:
        raise ValueError(f"unknown config sections: {', '.join(sorted(extra))}")
    return RunConfig(_section(DataPaths, raw.get("data", {}), "data"),
                     _section(Budgets, raw.get("budgets", {}), "budgets"))
