"""
Error handling utilities for treedepth-cycles.

This module defines the exception hierarchy raised by the library and the
standardized error responses returned by MCP tools, so that malformed graph
files, invalid elimination forests and oversized oracle requests all surface
with the same user-friendly shape.
"""

from collections.abc import Callable
from functools import wraps
from typing import Any

import structlog

logger = structlog.get_logger(__name__)


class ParameterValidationError(ValueError):
    """
    Raised when an input parameter fails validation.

    Carries optional suggestions for fixing the issue, which are forwarded
    to MCP clients in the error response.
    """

    def __init__(self, message: str, suggestions: list[str] | None = None):
        super().__init__(message)
        self.suggestions = suggestions or []


class GraphFormatError(ParameterValidationError):
    """Raised by the graph parser; `line_number` is 1-based, 0 for whole-file problems."""

    def __init__(
        self,
        message: str,
        line_number: int = 0,
        suggestions: list[str] | None = None,
    ):
        if line_number:
            message = f"line {line_number}: {message}"
        super().__init__(message, suggestions)
        self.line_number = line_number


class ForestValidationError(ParameterValidationError):
    """
    Raised when a parent array is not an elimination forest of the graph.

    `edge` names the offending graph edge when the failure is an edge
    between two incomparable vertices, and is None for structural problems
    (length mismatch, cycles in the parent pointers).
    """

    def __init__(
        self,
        message: str,
        edge: tuple[int, int] | None = None,
        suggestions: list[str] | None = None,
    ):
        super().__init__(message, suggestions)
        self.edge = edge


class InstanceTooLargeError(ParameterValidationError):
    """Raised by brute-force oracles when an instance exceeds desk scale."""


class PolynomialMismatchError(ValueError):
    """Raised when polynomials with different caps or rings are combined."""


def create_error_response(
    error_message: str,
    error_code: str,
    tool_name: str | None = None,
    suggestions: list[str] | None = None,
) -> dict[str, Any]:
    """
    Create standardized error response for MCP tools.

    Args:
        error_message: User-friendly error message
        error_code: Machine-readable error code
        tool_name: Name of the tool that encountered the error
        suggestions: Optional list of suggestions to fix the error

    Returns:
        Standardized error response dictionary
    """
    response: dict[str, Any] = {
        "success": False,
        "error": error_message,
        "error_code": error_code,
    }

    if tool_name:
        response["tool_name"] = tool_name
    if suggestions:
        response["suggestions"] = suggestions

    return response


def handle_graph_format_error(error: GraphFormatError, tool_name: str) -> dict[str, Any]:
    """Handle malformed graph input."""
    logger.warning(
        "Graph format error handled",
        tool=tool_name,
        line_number=error.line_number,
        error_message=str(error),
    )

    suggestions = error.suggestions or [
        "First line must be 'n m', followed by exactly m lines 'u v'",
        "Vertex ids must lie in 0..n-1; self-loops and duplicate edges are rejected",
    ]
    return create_error_response(
        str(error), "GRAPH_FORMAT_ERROR", tool_name, suggestions
    )


def handle_forest_error(error: ForestValidationError, tool_name: str) -> dict[str, Any]:
    """Handle a parent array that is not an elimination forest of the graph."""
    logger.warning(
        "Forest validation error handled",
        tool=tool_name,
        edge=error.edge,
        error_message=str(error),
    )

    if error.edge is not None:
        suggestions = [
            "Every graph edge must join an ancestor-descendant pair of the forest",
            "Omit the forest to use a depth-first elimination forest instead",
        ]
    else:
        suggestions = [
            "Provide exactly one parent entry per vertex, -1 for roots",
            "Parent pointers must not form a cycle",
        ]
    return create_error_response(
        str(error), "FOREST_ERROR", tool_name, error.suggestions or suggestions
    )


def handle_parameter_validation_error(
    error: ParameterValidationError, tool_name: str
) -> dict[str, Any]:
    """
    Handle parameter validation errors.

    Args:
        error: The parameter validation error
        tool_name: Name of the tool that encountered the error

    Returns:
        Standardized error response
    """
    logger.warning(
        "Parameter validation error handled",
        tool=tool_name,
        error_message=str(error),
        suggestions_count=len(error.suggestions),
    )

    return create_error_response(
        str(error),
        "PARAMETER_ERROR",
        tool_name,
        error.suggestions if error.suggestions else None,
    )


def handle_resource_exhaustion_error(
    error: Exception, tool_name: str
) -> dict[str, Any]:
    """
    Handle instances too large to process (oracle guards, memory).

    Args:
        error: The resource exhaustion error
        tool_name: Name of the tool that encountered the error

    Returns:
        Standardized error response
    """
    if isinstance(error, InstanceTooLargeError):
        message = str(error)
        suggestions = [
            "Brute-force oracles only accept desk-scale instances",
            "Use the solve tool for larger graphs",
        ]
    elif isinstance(error, MemoryError):
        message = "Operation requires too much memory."
        suggestions = [
            "Use a shallower elimination forest",
            "Reduce the target length to shrink the polynomial caps",
        ]
    else:
        message = "System resource limit exceeded."
        suggestions = ["Try again later", "Reduce the size of the instance"]

    logger.warning(
        "Resource exhaustion error handled",
        tool=tool_name,
        error_type=type(error).__name__,
        original_error=str(error),
    )

    return create_error_response(message, "RESOURCE_ERROR", tool_name, suggestions)


def handle_generic_error(error: Exception, tool_name: str) -> dict[str, Any]:
    """
    Handle generic/unexpected errors.

    Args:
        error: The unexpected error that occurred
        tool_name: Name of the tool that encountered the error

    Returns:
        Standardized error response
    """
    error_str = str(error)
    if not error_str:
        message = "An unexpected error occurred."
    else:
        message = f"An unexpected error occurred: {error_str}"

    logger.error(
        "Unexpected error handled",
        tool=tool_name,
        error_type=type(error).__name__,
        original_error=error_str,
    )

    return create_error_response(
        message,
        "INTERNAL_ERROR",
        tool_name,
        ["Try the operation again", "Report the instance if the problem persists"],
    )


def safe_tool_execution(func: Callable[..., Any]) -> Callable[..., Any]:
    """
    Decorator for comprehensive error handling across all MCP tools.

    Catches all exceptions and converts them to standardized error
    responses while maintaining proper logging. Order matters: the
    specific validation errors are subclasses of ParameterValidationError.

    Args:
        func: The MCP tool function to wrap

    Returns:
        Wrapped function with comprehensive error handling
    """

    @wraps(func)
    def wrapper(*args: Any, **kwargs: Any) -> Any:
        tool_name = func.__name__

        try:
            return func(*args, **kwargs)

        except GraphFormatError as e:
            return handle_graph_format_error(e, tool_name)

        except ForestValidationError as e:
            return handle_forest_error(e, tool_name)

        except InstanceTooLargeError as e:
            return handle_resource_exhaustion_error(e, tool_name)

        except ParameterValidationError as e:
            return handle_parameter_validation_error(e, tool_name)

        except MemoryError as e:
            return handle_resource_exhaustion_error(e, tool_name)

        except Exception as e:
            return handle_generic_error(e, tool_name)

    return wrapper
