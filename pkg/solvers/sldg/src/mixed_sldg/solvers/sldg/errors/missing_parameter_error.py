"""Exception raised when a validated parameter is absent from a call."""

from __future__ import annotations


class MissingParameterError(TypeError):
    """Raised when a parameter named for validation was not bound."""

    __slots__ = ()

    def __init__(self, parameter: str, func_name: str) -> None:
        """Initialize the error with the function and parameter names."""
        super().__init__(f"{func_name}(): cannot validate unbound param '{parameter}'.")
