"""Exact component-size distributions of exp-log labeled structures.

The count engine builds the largest- and smallest-component tables
``L[k, n]`` and ``S[k, n]``; ``stats`` turns rows into scaled moments and
medians; ``constants`` evaluates the limits those statistics approach; and
``oracle`` recomputes small tables by brute force.
"""

from .catalog import STRUCTURES, StructureSpec, connected_count, get_structure
from .constants import ConstantResult, g_largest, g_smallest, limit_summary, median_limit
from .engine import CountTable, Mode, build_largest, build_smallest, build_table
from .errors import (
    ExplogError,
    QuadratureError,
    ResourceLimitError,
    UnknownStructureError,
    UnsupportedStructureError,
)
from .oracle import oracle_rows, square_count_by_squaring, square_rows
from .stats import SummaryRow, TableRow, summarize, table_rows, table_series

__version__ = "0.1.0"

__all__ = [
    "STRUCTURES",
    "StructureSpec",
    "connected_count",
    "get_structure",
    "ConstantResult",
    "g_largest",
    "g_smallest",
    "limit_summary",
    "median_limit",
    "CountTable",
    "Mode",
    "build_largest",
    "build_smallest",
    "build_table",
    "ExplogError",
    "QuadratureError",
    "ResourceLimitError",
    "UnknownStructureError",
    "UnsupportedStructureError",
    "oracle_rows",
    "square_count_by_squaring",
    "square_rows",
    "SummaryRow",
    "TableRow",
    "summarize",
    "table_rows",
    "table_series",
]
