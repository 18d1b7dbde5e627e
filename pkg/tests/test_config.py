import pytest

from pretzel_surgeon.config import Budgets, RunConfig, load_config


def test_defaults():
    cfg = load_config(None)
    assert cfg == RunConfig()
    assert cfg.budgets.max_len == 40 and cfg.budgets.max_steps == 200000


def test_toml_overrides(tmp_path):
    f = tmp_path / "run.toml"
    f.write_text('[data]\ngluing = "g.json"\n[budgets]\nmax_steps = 500\nseed = 3\n')
    cfg = load_config(f)
    assert cfg.data.gluing == "g.json" and cfg.data.boundary_slopes is None
    assert cfg.budgets == Budgets(max_steps=500, seed=3)


@pytest.mark.parametrize("text", ['[budgets]\nmax_depth = 3\n', '[extra]\na = 1\n',
                                  '[budgets]\nmax_steps = 0\n', "budgets:\n  max_steps: 5\n"])
def test_bad_config_rejected(tmp_path, text):
    f = tmp_path / "run.toml"
    f.write_text(text)
    with pytest.raises(ValueError):
        load_config(f)


def test_with_budgets():
    cfg = RunConfig().with_budgets(max_steps=7, seed=None)
    assert cfg.budgets.max_steps == 7 and cfg.budgets.seed == 0
