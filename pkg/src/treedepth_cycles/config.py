"""
Configuration and logging setup for treedepth-cycles.

Settings are resolved with the priority explicit argument > environment
variable > built-in default. Logging is structured (structlog, JSON lines)
and always goes to stderr: stdout carries answers and the MCP stream.
"""

import logging
import os
import sys
from dataclasses import dataclass

import structlog

logger = structlog.get_logger(__name__)

DEFAULT_SEED = 0
DEFAULT_REPETITIONS = 20
DEFAULT_LOG_LEVEL = "INFO"
SEED_MAX = 2**64 - 1

SEED_ENV = "TDC_SEED"
REPEAT_ENV = "TDC_REPEAT"
LOG_LEVEL_ENV = "TDC_LOG_LEVEL"

_LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


@dataclass(frozen=True)
class Settings:
    """Run-wide defaults shared by the CLI and the MCP server."""

    seed: int = DEFAULT_SEED
    repetitions: int = DEFAULT_REPETITIONS
    log_level: str = DEFAULT_LOG_LEVEL


def configure_logging(level: str = DEFAULT_LOG_LEVEL) -> None:
    """
    Configure stdlib logging and structlog to emit JSON lines on stderr.

    Safe to call more than once; the last call wins.
    """
    logging.basicConfig(
        stream=sys.stderr,
        level=getattr(logging, level.upper(), logging.INFO),
        format="%(message)s",
        force=True,
    )

    structlog.configure(
        processors=[
            structlog.stdlib.filter_by_level,
            structlog.stdlib.add_log_level,
            structlog.stdlib.add_logger_name,
            structlog.processors.TimeStamper(fmt="iso"),
            structlog.processors.JSONRenderer(),
        ],
        wrapper_class=structlog.stdlib.BoundLogger,
        logger_factory=structlog.stdlib.LoggerFactory(),
        context_class=dict,
        cache_logger_on_first_use=True,
    )


def _int_from_env(
    name: str, default: int, minimum: int, maximum: int | None = None
) -> int:
    raw = os.getenv(name)
    if raw is None:
        return default
    try:
        value = int(raw, 0)
    except ValueError:
        logger.warning(
            "Ignoring non-integer environment value, using default",
            variable=name,
            value=raw,
            default=default,
        )
        return default
    if value < minimum or (maximum is not None and value > maximum):
        logger.warning(
            "Ignoring out-of-range environment value, using default",
            variable=name,
            value=value,
            minimum=minimum,
            maximum=maximum,
            default=default,
        )
        return default
    logger.debug("Using value from environment variable", variable=name, value=value)
    return value


def load_settings(
    seed: int | None = None,
    repetitions: int | None = None,
    log_level: str | None = None,
) -> Settings:
    """
    Resolve settings from explicit values, the environment, then defaults.

    Args:
        seed: Explicit seed, overrides TDC_SEED
        repetitions: Explicit repetition count, overrides TDC_REPEAT
        log_level: Explicit log level name, overrides TDC_LOG_LEVEL

    Returns:
        Fully resolved Settings
    """
    if seed is None:
        seed = _int_from_env(SEED_ENV, DEFAULT_SEED, 0, SEED_MAX)
    if repetitions is None:
        repetitions = _int_from_env(REPEAT_ENV, DEFAULT_REPETITIONS, 1)
    if log_level is None:
        env_level = os.getenv(LOG_LEVEL_ENV, DEFAULT_LOG_LEVEL).upper()
        if env_level not in _LOG_LEVELS:
            logger.warning(
                "Ignoring unknown log level, using default",
                variable=LOG_LEVEL_ENV,
                value=env_level,
                default=DEFAULT_LOG_LEVEL,
            )
            env_level = DEFAULT_LOG_LEVEL
        log_level = env_level

    return Settings(seed=seed, repetitions=repetitions, log_level=log_level.upper())
