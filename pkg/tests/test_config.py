import json

import pytest

from robinkit.config import RunConfig, load_config
from robinkit.errors import DomainError


def test_defaults():
    cfg = load_config({}, env={})
    assert cfg == RunConfig()
    assert (cfg.precision_bits, cfg.prime_limit, cfg.sweep_ceiling) == (4096, 10**8, 10**6)
    assert cfg.output_format == "json"


def test_precedence(tmp_path):
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps({"precision_bits": 1024, "workers": 3, "chunk_size": 100}))
    env = {"ROBIN_PRECISION_BITS": "2048", "ROBIN_WORKERS": "2"}
    cfg = load_config({"precision_bits": 512, "workers": None}, config_file=path, env=env)
    assert cfg.precision_bits == 512  # flag
    assert cfg.workers == 2  # env over file
    assert cfg.chunk_size == 100  # file over default
    assert cfg.prime_limit == 10**8  # default


def test_config_path_from_env(tmp_path):
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps({"output_format": "csv"}))
    assert load_config(env={"ROBIN_CONFIG": str(path)}).output_format == "csv"


@pytest.mark.parametrize("flags, env", [
    ({"precision_bits": 32}, {}),
    ({"workers": 0}, {}),
    ({"output_format": "xml"}, {}),
    ({}, {"ROBIN_PRIME_LIMIT": "lots"}),
])
def test_invalid_values(flags, env):
    with pytest.raises(DomainError):
        load_config(flags, env=env)


def test_file_errors(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"precision": 100}))
    with pytest.raises(DomainError):
        load_config(config_file=bad, env={})
    with pytest.raises(DomainError):
        load_config(config_file=tmp_path / "missing.json", env={})


def test_snapshot_roundtrip():
    cfg = RunConfig(workers=4)
    assert RunConfig(**cfg.snapshot()) == cfg
