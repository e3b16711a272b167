"""Validator utilities for solver inputs."""

from .finite_number_validator import require_finite_numbers, validate_number_is_finite

__all__ = ["require_finite_numbers", "validate_number_is_finite"]
