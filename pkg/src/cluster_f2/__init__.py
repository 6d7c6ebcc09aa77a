"""Exact combinatorics of triangulated polygons with a distinguished
side: ice-quiver point counts over the two-element field, unique proper
colorings by projective-line labels, hexagonal-move classes, and
covering constructions."""

from .coloring import (
    PointX,
    alternating_point,
    coloring_fibers,
    deep_points,
    enumerate_points,
    f2_coloring,
    infinity_color,
    invalid_diagonals,
    is_proper,
    is_valid_diagonal,
)
from .covering import (
    CoverReport,
    NoCoverError,
    admissible_points,
    algorithm_A,
    algorithm_B,
    counterexample_cover,
    upsilon_cover,
    verify_covering,
)
from .errors import ResourceLimitError
from .hexmoves import (
    HexMove,
    TheoremReport,
    apply_hex_move,
    classes_with_points,
    find_hex_moves,
    hex_classes,
    verify_theorem_main,
)
from .polygon import (
    Diagonal,
    Triangulation,
    crosses,
    enumerate_triangulations,
    flip,
    make_diagonal,
    quiver_of,
)
from .quiver_count import (
    CountResult,
    IceQuiver,
    closed_form,
    dynkin_quiver,
    f2_count_bruteforce,
    f2_count_recursive,
    seed_count,
)

__version__ = "0.1.0"

__all__ = [
    "CountResult",
    "CoverReport",
    "Diagonal",
    "HexMove",
    "IceQuiver",
    "NoCoverError",
    "PointX",
    "ResourceLimitError",
    "TheoremReport",
    "Triangulation",
    "admissible_points",
    "algorithm_A",
    "algorithm_B",
    "alternating_point",
    "apply_hex_move",
    "classes_with_points",
    "closed_form",
    "coloring_fibers",
    "counterexample_cover",
    "crosses",
    "deep_points",
    "dynkin_quiver",
    "enumerate_points",
    "enumerate_triangulations",
    "f2_coloring",
    "f2_count_bruteforce",
    "f2_count_recursive",
    "find_hex_moves",
    "flip",
    "hex_classes",
    "infinity_color",
    "invalid_diagonals",
    "is_proper",
    "is_valid_diagonal",
    "make_diagonal",
    "quiver_of",
    "seed_count",
    "upsilon_cover",
    "verify_covering",
    "verify_theorem_main",
]
