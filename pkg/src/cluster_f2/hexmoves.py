"""Hexagonal rewrites on triangulations and their equivalence classes.

Six polygon vertices whose consecutive chords are all drawn (as sides or
diagonals) span a hexagon made of four triangles of the triangulation.
Its three interior diagonals triangulate that hexagon; when they form a
zig-zag or an inscribed triangle (rather than a fan), swapping them for
the mirrored pattern is a *hexagonal move*.  These moves preserve the
q=2 coloring, and their equivalence classes are exactly the coloring's
fibers — the structural fact verified by this module.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import combinations

from .coloring import PointX, coloring_fibers, f2_coloring
from .errors import ResourceLimitError
from .polygon import Diagonal, Triangulation, enumerate_triangulations

ZIGZAG_A_TO_B = "zigzag-A→B"
ZIGZAG_B_TO_A = "zigzag-B→A"
TRIANGLE_ODD_TO_EVEN = "triangle-odd→even"
TRIANGLE_EVEN_TO_ODD = "triangle-even→odd"

HEX_CLASSES_MAX_M = 12
VERIFY_THEOREM_MAX_M = 11

# Interior patterns in hexagon-relative coordinates 0..5.  The two
# zig-zag shapes below are the paths 1-3-0-4 and 1-5-2-4; both keep the
# antipodal pair (1, 4) as endpoints.  Rotating by r keeps that pairing,
# so each zig-zag shape recurs in three distinct rotations (r and r+3
# give the same chord set).
_ZIGZAG_A = frozenset({(1, 3), (0, 3), (0, 4)})
_ZIGZAG_B = frozenset({(1, 5), (2, 5), (2, 4)})
_TRIANGLE_ODD = frozenset({(1, 3), (3, 5), (1, 5)})
_TRIANGLE_EVEN = frozenset({(0, 2), (2, 4), (0, 4)})


def _rotate(pattern: frozenset[tuple[int, int]], r: int):
    return frozenset(
        tuple(sorted(((a + r) % 6, (b + r) % 6))) for a, b in pattern
    )


def _build_move_table() -> dict[frozenset, tuple[str, frozenset]]:
    table: dict[frozenset, tuple[str, frozenset]] = {}
    for r in range(6):
        table[_rotate(_ZIGZAG_A, r)] = (ZIGZAG_A_TO_B, _rotate(_ZIGZAG_B, r))
        table[_rotate(_ZIGZAG_B, r)] = (ZIGZAG_B_TO_A, _rotate(_ZIGZAG_A, r))
    table[_TRIANGLE_ODD] = (TRIANGLE_ODD_TO_EVEN, _TRIANGLE_EVEN)
    table[_TRIANGLE_EVEN] = (TRIANGLE_EVEN_TO_ODD, _TRIANGLE_ODD)
    return table


_MOVE_TABLE = _build_move_table()


@dataclass(frozen=True)
class HexMove:
    """An applicable hexagonal move: six polygon vertices (ascending) and
    the rewrite kind."""

    hexagon: tuple[int, int, int, int, int, int]
    kind: str


def _interior_relative(
    t: Triangulation, hexagon: tuple[int, ...]
) -> frozenset[tuple[int, int]] | None:
    """The triangulation's diagonals strictly inside the hexagon, in
    hexagon-relative coordinates; None unless there are exactly three."""
    rel = {v: k for k, v in enumerate(hexagon)}
    interior = []
    for d in t.diagonals:
        a = rel.get(d.i)
        b = rel.get(d.j)
        if a is None or b is None:
            continue
        if (b - a) % 6 in (1, 5):
            continue  # hexagon boundary chord
        interior.append((a, b))
    if len(interior) != 3:
        return None
    return frozenset(interior)


def find_hex_moves(t: Triangulation) -> list[HexMove]:
    """All applicable hexagonal moves of t, sorted by (hexagon, kind).

    Candidate hexagons are unions of four triangles forming a subtree of
    the triangulation's dual tree (three shared diagonals); the union
    then spans six vertices and its boundary is automatically drawn.
    Fans admit no move, so fan-patterned hexagons contribute nothing.
    """
    tris = t.triangles
    shared: dict[tuple[int, int], Diagonal] = {}
    by_diag: dict[Diagonal, list[int]] = {}
    for idx, (a, b, c) in enumerate(tris):
        for chord in ((a, b), (b, c), (a, c)):
            if chord in t._diagonal_set:
                by_diag.setdefault(Diagonal(*chord), []).append(idx)
    for d, pair in by_diag.items():
        i, j = pair
        shared[(i, j) if i < j else (j, i)] = d

    moves = []
    for quad in combinations(range(len(tris)), 4):
        inner = [
            shared[(i, j)]
            for i, j in combinations(quad, 2)
            if (i, j) in shared
        ]
        if len(inner) != 3:
            continue
        vertices = sorted({v for idx in quad for v in tris[idx]})
        hexagon = tuple(vertices)
        rel = {v: k for k, v in enumerate(hexagon)}
        pattern = frozenset(
            (rel[d.i], rel[d.j]) for d in inner
        )
        hit = _MOVE_TABLE.get(pattern)
        if hit is not None:
            moves.append(HexMove(hexagon=hexagon, kind=hit[0]))
    moves.sort(key=lambda mv: (mv.hexagon, mv.kind))
    return moves


def apply_hex_move(t: Triangulation, mv: HexMove) -> Triangulation:
    """Rewrite the three interior diagonals of mv's hexagon by the
    mirrored pattern.  Raises ValueError when the move does not apply."""
    hexagon = mv.hexagon
    if len(hexagon) != 6 or list(hexagon) != sorted(set(hexagon)):
        raise ValueError(f"invalid hexagon {hexagon}")
    if hexagon[0] < 0 or hexagon[-1] > t.m:
        raise ValueError(f"hexagon {hexagon} exceeds vertex range 0..{t.m}")
    for k in range(6):
        a, b = hexagon[k], hexagon[(k + 1) % 6]
        if not t.has_chord(a, b):
            raise ValueError(
                f"hexagon boundary chord ({min(a, b)},{max(a, b)}) "
                "is not drawn in the triangulation"
            )
    pattern = _interior_relative(t, hexagon)
    if pattern is None:
        raise ValueError(
            f"hexagon {hexagon} does not contain exactly three diagonals"
        )
    hit = _MOVE_TABLE.get(pattern)
    if hit is None or hit[0] != mv.kind:
        raise ValueError(
            f"interior of hexagon {hexagon} does not match kind {mv.kind!r}"
        )
    _, target = hit
    drop = {
        Diagonal(hexagon[a], hexagon[b]) for a, b in pattern
    }
    add = {Diagonal(hexagon[a], hexagon[b]) for a, b in target}
    new_diagonals = tuple(
        sorted((set(t.diagonals) - drop) | add)
    )
    return Triangulation.make(t.m, new_diagonals)


def hex_classes(m: int, *, force: bool = False) -> list[list[Triangulation]]:
    """Connected components of the move graph on all triangulations.

    Components are explored breadth-first starting from the
    lexicographically least unvisited triangulation; each class is
    returned sorted, and classes are ordered by their least member.
    """
    if m > HEX_CLASSES_MAX_M and not force:
        raise ResourceLimitError(
            f"class computation at m={m} exceeds the guard of "
            f"{HEX_CLASSES_MAX_M}; pass force=True to override"
        )
    classes: list[list[Triangulation]] = []
    visited: set[Triangulation] = set()
    for t in enumerate_triangulations(m):
        if t in visited:
            continue
        component = []
        queue = [t]
        visited.add(t)
        while queue:
            cur = queue.pop(0)
            component.append(cur)
            for mv in find_hex_moves(cur):
                nxt = apply_hex_move(cur, mv)
                if nxt not in visited:
                    visited.add(nxt)
                    queue.append(nxt)
        classes.append(sorted(component, key=lambda x: x.diagonals))
    return classes


@dataclass(frozen=True)
class TheoremReport:
    """Comparison of the move-class partition with the coloring fibers."""

    m: int
    partitions_equal: bool
    class_count: int
    fiber_count: int
    histogram: tuple[tuple[int, int], ...]  # (class size, multiplicity)


def verify_theorem_main(m: int, *, force: bool = False) -> TheoremReport:
    """Check that hexagonal-move classes coincide with the fibers of the
    q=2 coloring, and report the class-size histogram."""
    if m > VERIFY_THEOREM_MAX_M and not force:
        raise ResourceLimitError(
            f"partition comparison at m={m} exceeds the guard of "
            f"{VERIFY_THEOREM_MAX_M}; pass force=True to override"
        )
    classes = hex_classes(m, force=force)
    fibers = coloring_fibers(m)
    class_sets = {frozenset(comp) for comp in classes}
    fiber_sets = {frozenset(ts) for ts in fibers.values()}
    sizes = Counter(len(comp) for comp in classes)
    return TheoremReport(
        m=m,
        partitions_equal=class_sets == fiber_sets,
        class_count=len(classes),
        fiber_count=len(fiber_sets),
        histogram=tuple(sorted(sizes.items())),
    )


def classes_with_points(
    m: int, *, force: bool = False
) -> list[tuple[PointX, list[Triangulation]]]:
    """Move classes paired with the common coloring of their members."""
    return [
        (f2_coloring(comp[0]), comp) for comp in hex_classes(m, force=force)
    ]
