"""Explore the operation that halves or doubles a substring of a number's digits."""

from .core import (
    Action,
    ChoiceMove,
    DigitString,
    MoveError,
    ParseError,
    apply_move,
    double_string,
    halve_string,
    is_neighbor,
    neighbors,
    neighbors_base2,
    parse_digit_string,
)
from .extremal import check_range_bounds, max_neighbor, min_neighbor, min_neighbor_rule
from .growth import exact_max_reach, greedy_max_sequence
from .search import (
    ComponentClass,
    bfs_distances,
    component_class,
    records_class_b,
    records_tau,
    shortest_path,
    tau,
)

__version__ = "0.1.0"
