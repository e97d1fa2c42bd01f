"""
Decorators shared by the MCP tools and the command-line entry points.

`preprocess_params` repairs a common MCP client quirk (collections such as
edge lists arriving as JSON strings); `logged_operation` brackets an entry
point with structured called/completed/failed events.
"""

import inspect
import json
import time
import types
from collections.abc import Callable
from functools import wraps
from typing import Any, Union, get_args, get_origin

import structlog

logger = structlog.get_logger(__name__)

_COLLECTIONS = (list, dict, tuple)


def _expects_collection(annotation: Any) -> bool:
    """True for list/dict/tuple annotations, including `list[...] | None`."""
    origin = get_origin(annotation)
    if origin in _COLLECTIONS or annotation in _COLLECTIONS:
        return True
    if origin in (Union, types.UnionType):
        return any(_expects_collection(arg) for arg in get_args(annotation))
    return False


def preprocess_params(func: Callable[..., Any]) -> Callable[..., Any]:
    """
    Deserialize collection parameters that arrive as JSON strings.

    MCP clients sometimes send `[[0, 1], [1, 2]]` as the string
    '[[0, 1], [1, 2]]'. Parameters annotated as list/dict/tuple (optionally
    inside a union with None) are decoded; anything else, and strings that
    fail to parse, pass through unchanged.

    Args:
        func: The function to wrap with parameter preprocessing

    Returns:
        Wrapped function that handles JSON string deserialization
    """
    sig = inspect.signature(func)

    @wraps(func)
    def wrapper(*args: Any, **kwargs: Any) -> Any:
        processed_kwargs = {}

        for param_name, param_value in kwargs.items():
            param = sig.parameters.get(param_name)
            if (
                param is not None
                and isinstance(param_value, str)
                and param_value.lstrip().startswith(("[", "{"))
                and _expects_collection(param.annotation)
            ):
                try:
                    deserialized = json.loads(param_value)
                    logger.debug(
                        "Deserialized JSON parameter",
                        param_name=param_name,
                        new_type=type(deserialized).__name__,
                        tool=func.__name__,
                    )
                    param_value = deserialized
                except json.JSONDecodeError:
                    logger.debug(
                        "Failed to deserialize parameter as JSON, using original",
                        param_name=param_name,
                        param_value_preview=param_value[:100],
                        tool=func.__name__,
                    )

            processed_kwargs[param_name] = param_value

        return func(*args, **processed_kwargs)

    return wrapper


def logged_operation(func: Callable[..., Any]) -> Callable[..., Any]:
    """
    Log start, completion (with elapsed time) and failure of an operation.

    Exceptions are logged and re-raised; translating them is the caller's job.
    """

    @wraps(func)
    def wrapper(*args: Any, **kwargs: Any) -> Any:
        operation = func.__name__
        started = time.perf_counter()
        logger.debug("Operation called", operation=operation)

        try:
            result = func(*args, **kwargs)
        except Exception as e:
            logger.error(
                "Operation failed",
                operation=operation,
                error=str(e),
                error_type=type(e).__name__,
            )
            raise

        logger.debug(
            "Operation completed",
            operation=operation,
            elapsed_ms=round((time.perf_counter() - started) * 1000.0, 3),
        )
        return result

    return wrapper
