"""Decorator for validating finite numeric parameters."""

from __future__ import annotations

import inspect
import math
from collections.abc import Callable
from functools import wraps
from numbers import Real
from typing import Any, ParamSpec, TypeVar

from ..errors import MissingParameterError, NonFiniteValueError, NumberTypeError

P = ParamSpec("P")
R = TypeVar("R")


def _validate_number_is_finite(
    value: Any,
    parameter_name: str,
) -> None:
    """Validate that a value is a finite real number.

    Args:
        value: The value to validate.
        parameter_name: The name of the parameter being validated.

    Raises:
        NumberTypeError: If the value is not a real number (bools are rejected too).
        NonFiniteValueError: If the value is NaN or infinite.
    """
    if isinstance(value, bool) or not isinstance(value, Real):
        raise NumberTypeError(parameter_name)

    if not math.isfinite(float(value)):
        raise NonFiniteValueError(parameter_name)


def require_finite_numbers(
    *parameter_names: str,
) -> Callable[[Callable[P, R]], Callable[P, R]]:
    """Ensure specified parameters are finite real numbers.

    Args:
        *parameter_names: Parameter names to validate.

    Raises:
        MissingParameterError: If a specified parameter is missing from the call.
        NumberTypeError: If a parameter value is not a real number.
        NonFiniteValueError: If a parameter value is NaN or infinite.
    """
    names = tuple(dict.fromkeys(parameter_names))

    def decorator(func: Callable[P, R]) -> Callable[P, R]:
        sig = inspect.signature(func)
        func_name = func.__name__

        @wraps(func)
        def wrapper(*args: Any, **kwargs: Any) -> R:
            bound = sig.bind(*args, **kwargs)
            bound.apply_defaults()

            for name in names:
                if name not in bound.arguments:
                    raise MissingParameterError(name, func_name)

                _validate_number_is_finite(
                    bound.arguments[name],
                    parameter_name=name,
                )

            return func(*bound.args, **bound.kwargs)

        return wrapper

    return decorator


def validate_number_is_finite(
    value: float,
    parameter_name: str,
) -> None:
    """Validate that a number is finite.

    Args:
        value: The number to validate.
        parameter_name: The name of the parameter being validated.

    Raises:
        NumberTypeError: If the value is not a real number.
        NonFiniteValueError: If the value is NaN or infinite.
    """
    _validate_number_is_finite(
        value,
        parameter_name,
    )
