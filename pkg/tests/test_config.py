"""
Tests for settings resolution: explicit argument > environment > default.
"""

import pytest


@pytest.fixture
def clean_env(monkeypatch):
    for name in ("TDC_SEED", "TDC_REPEAT", "TDC_LOG_LEVEL"):
        monkeypatch.delenv(name, raising=False)
    return monkeypatch


def test_defaults(clean_env):
    """Test built-in defaults when nothing is set."""
    from treedepth_cycles.config import Settings, load_settings

    assert load_settings() == Settings(seed=0, repetitions=20, log_level="INFO")


def test_environment_overrides_defaults(clean_env):
    """Test that TDC_* variables replace the defaults."""
    from treedepth_cycles.config import load_settings

    clean_env.setenv("TDC_SEED", "42")
    clean_env.setenv("TDC_REPEAT", "7")
    clean_env.setenv("TDC_LOG_LEVEL", "debug")

    settings = load_settings()

    assert settings.seed == 42
    assert settings.repetitions == 7
    assert settings.log_level == "DEBUG"


def test_explicit_arguments_override_environment(clean_env):
    """Test that explicit arguments win over the environment."""
    from treedepth_cycles.config import load_settings

    clean_env.setenv("TDC_SEED", "42")
    clean_env.setenv("TDC_REPEAT", "7")

    settings = load_settings(seed=3, repetitions=1, log_level="warning")

    assert (settings.seed, settings.repetitions, settings.log_level) == (3, 1, "WARNING")


def test_hex_seed_accepted(clean_env):
    """Test that the seed may be given in hexadecimal."""
    from treedepth_cycles.config import load_settings

    clean_env.setenv("TDC_SEED", "0xff")
    assert load_settings().seed == 255


def test_largest_seed_accepted(clean_env):
    """Test that 2**64 - 1 is still a valid seed."""
    from treedepth_cycles.config import load_settings

    clean_env.setenv("TDC_SEED", str(2**64 - 1))
    assert load_settings().seed == 2**64 - 1


@pytest.mark.parametrize(
    ("name", "value"),
    [
        ("TDC_SEED", "not-a-number"),
        ("TDC_SEED", "-1"),
        ("TDC_SEED", str(2**64)),
        ("TDC_REPEAT", "0"),
        ("TDC_REPEAT", "many"),
    ],
)
def test_invalid_environment_falls_back_to_default(clean_env, name, value):
    """Test that unusable environment values fall back to the defaults."""
    from treedepth_cycles.config import load_settings

    clean_env.setenv(name, value)
    settings = load_settings()

    assert settings.seed == 0
    assert settings.repetitions == 20


def test_oversized_seed_does_not_break_solver_config(clean_env):
    """Test that an out-of-range TDC_SEED still yields a usable SolveConfig."""
    from treedepth_cycles.config import load_settings
    from treedepth_cycles.driver import SolveConfig

    clean_env.setenv("TDC_SEED", str(2**64))
    settings = load_settings()

    assert SolveConfig(seed=settings.seed, repetitions=settings.repetitions).seed == 0


def test_unknown_log_level_falls_back(clean_env):
    """Test that an unknown TDC_LOG_LEVEL falls back to INFO."""
    from treedepth_cycles.config import load_settings

    clean_env.setenv("TDC_LOG_LEVEL", "chatty")
    assert load_settings().log_level == "INFO"


def test_configure_logging_writes_json_to_stderr(capsys):
    """Test that log events are JSON lines on stderr, never stdout."""
    import json

    import structlog

    from treedepth_cycles.config import configure_logging

    configure_logging("INFO")
    structlog.get_logger("treedepth_cycles.test").info("Sample event", n=4)

    captured = capsys.readouterr()
    assert captured.out == ""
    record = json.loads(captured.err.strip().splitlines()[-1])
    assert record["event"] == "Sample event"
    assert record["n"] == 4
    assert record["level"] == "info"
