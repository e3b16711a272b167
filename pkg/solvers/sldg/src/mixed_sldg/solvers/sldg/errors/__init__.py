"""Error classes raised by the SLDG solver."""

from .aliased_buffer_error import AliasedBufferError
from .cell_index_error import CellIndexError
from .grid_mismatch_error import GridMismatchError
from .invalid_argument_error import InvalidArgumentError
from .missing_parameter_error import MissingParameterError
from .narrowing_overflow_error import NarrowingOverflowError
from .non_finite_value_error import NonFiniteValueError
from .number_type_error import NumberTypeError
from .parameter_range_error import ParameterRangeError
from .snapshot_format_error import SnapshotFormatError
from .unknown_initial_condition_error import UnknownInitialConditionError

__all__ = [
    "AliasedBufferError",
    "CellIndexError",
    "GridMismatchError",
    "InvalidArgumentError",
    "MissingParameterError",
    "NarrowingOverflowError",
    "NonFiniteValueError",
    "NumberTypeError",
    "ParameterRangeError",
    "SnapshotFormatError",
    "UnknownInitialConditionError",
]
