"""Triangulations of a convex polygon with a distinguished side.

The polygon P has m+1 vertices labelled 0..m clockwise; the side (m, 0)
is distinguished (it will carry the frozen vertex of the associated ice
quiver).  A diagonal is a chord (i, j) with i < j, j - i >= 2 and
(i, j) != (0, m); a triangulation is a maximal set of pairwise
non-crossing diagonals, which for this polygon always has m - 2 members.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cache, cached_property
from typing import Iterable, NamedTuple

from .quiver_count import IceQuiver


class Diagonal(NamedTuple):
    """A polygon chord, normalized so i < j."""

    i: int
    j: int


def make_diagonal(m: int, a: int, b: int) -> Diagonal:
    """Normalize and validate a chord of the (m+1)-gon as a diagonal."""
    i, j = (a, b) if a < b else (b, a)
    if not (0 <= i < j <= m):
        raise ValueError(f"({a},{b}) is not a vertex pair of a {m + 1}-gon")
    if j - i < 2:
        raise ValueError(f"({i},{j}) is a polygon side, not a diagonal")
    if (i, j) == (0, m):
        raise ValueError(
            f"(0,{m}) is the distinguished side, not a diagonal"
        )
    return Diagonal(i, j)


def crosses(d1: Diagonal | tuple[int, int], d2: Diagonal | tuple[int, int]) -> bool:
    """True iff the two chords intersect in their strict interiors.

    Chords sharing an endpoint never cross; otherwise they cross exactly
    when their endpoints interleave around the polygon.
    """
    (a, b), (c, d) = sorted((tuple(d1), tuple(d2)))
    return a < c < b < d


@dataclass(frozen=True)
class Triangulation:
    """An immutable triangulation: m plus a sorted tuple of diagonals."""

    m: int
    diagonals: tuple[Diagonal, ...]

    @classmethod
    def make(
        cls, m: int, diagonals: Iterable[tuple[int, int]]
    ) -> "Triangulation":
        """Validate and normalize a diagonal set into a Triangulation."""
        if m < 2:
            raise ValueError(f"polygon parameter must be >= 2, got {m}")
        diags = tuple(sorted(make_diagonal(m, a, b) for a, b in diagonals))
        if len(set(diags)) != len(diags):
            raise ValueError(f"duplicate diagonals in {diags}")
        if len(diags) != m - 2:
            raise ValueError(
                f"a triangulation of a {m + 1}-gon needs {m - 2} diagonals, "
                f"got {len(diags)}"
            )
        for idx, d1 in enumerate(diags):
            for d2 in diags[idx + 1 :]:
                if crosses(d1, d2):
                    raise ValueError(f"diagonals {d1} and {d2} cross")
        return cls(m=m, diagonals=diags)

    def has_chord(self, a: int, b: int) -> bool:
        """True iff (a, b) is drawn: a polygon side or a member diagonal."""
        i, j = (a, b) if a < b else (b, a)
        if j - i == 1 or (i, j) == (0, self.m):
            return True
        return (i, j) in self._diagonal_set

    @cached_property
    def _diagonal_set(self) -> frozenset[Diagonal]:
        return frozenset(self.diagonals)

    @cached_property
    def triangles(self) -> tuple[tuple[int, int, int], ...]:
        """The m - 1 triangles of the subdivision, as sorted vertex triples.

        Computed by splitting the region bounded by chord (0, m): the
        triangle resting on a chord (a, b) has its apex at the unique k
        strictly between a and b with both (a, k) and (k, b) drawn.
        """
        out: list[tuple[int, int, int]] = []
        stack = [(0, self.m)]
        while stack:
            a, b = stack.pop()
            if b - a == 1:
                continue
            apex = None
            for k in range(a + 1, b):
                if self.has_chord(a, k) and self.has_chord(k, b):
                    apex = k
                    break
            if apex is None:
                raise ValueError(
                    f"no triangle rests on chord ({a},{b}); "
                    "diagonal set is not a triangulation"
                )
            out.append((a, apex, b))
            stack.append((a, apex))
            stack.append((apex, b))
        return tuple(sorted(out))

    def to_json_dict(self) -> dict:
        return {"m": self.m, "diagonals": [[i, j] for i, j in self.diagonals]}

    @classmethod
    def from_json_dict(cls, data: dict) -> "Triangulation":
        return cls.make(data["m"], ((i, j) for i, j in data["diagonals"]))


@cache
def _region_fillings(a: int, b: int) -> tuple[tuple[Diagonal, ...], ...]:
    """All diagonal sets triangulating the sub-polygon on vertices a..b,
    excluding the bounding chord (a, b) itself."""
    if b - a <= 1:
        return ((),)
    out: list[tuple[Diagonal, ...]] = []
    for k in range(a + 1, b):
        extra: tuple[Diagonal, ...] = ()
        if k - a >= 2:
            extra += (Diagonal(a, k),)
        if b - k >= 2:
            extra += (Diagonal(k, b),)
        for left in _region_fillings(a, k):
            for right in _region_fillings(k, b):
                out.append(extra + left + right)
    return tuple(out)


def enumerate_triangulations(m: int) -> list[Triangulation]:
    """All triangulations of the (m+1)-gon, sorted lexicographically by
    their sorted diagonal tuples.  The count is the Catalan number
    C(m-1)."""
    if m < 2:
        raise ValueError(f"polygon parameter must be >= 2, got {m}")
    out = [
        Triangulation(m=m, diagonals=tuple(sorted(filling)))
        for filling in _region_fillings(0, m)
    ]
    out.sort(key=lambda t: t.diagonals)
    return out


def flip(t: Triangulation, d: Diagonal | tuple[int, int]) -> Triangulation:
    """Replace diagonal d by the other diagonal of its quadrilateral.

    The two triangles adjacent to d form a quadrilateral; the result swaps
    d for that quadrilateral's other diagonal.  Flipping the introduced
    diagonal undoes the move.
    """
    dd = Diagonal(*sorted(tuple(d)))
    if dd not in t._diagonal_set:
        raise ValueError(f"{tuple(dd)} is not a diagonal of this triangulation")
    apexes = [
        (set(tri) - {dd.i, dd.j}).pop()
        for tri in t.triangles
        if dd.i in tri and dd.j in tri
    ]
    p, q = sorted(apexes)
    replacement = Diagonal(p, q)
    new_diags = tuple(
        sorted(x for x in t.diagonals if x != dd) + [replacement]
    )
    return Triangulation.make(t.m, new_diags)


def quiver_of(t: Triangulation) -> IceQuiver:
    """The ice quiver of a triangulation.

    One mutable vertex per diagonal (numbered 1..m-2 in sorted diagonal
    order), one frozen vertex (number m-1) for the distinguished side
    (0, m).  Each triangle {a < b < c} contributes the arrow cycle
    (a,b) -> (b,c) -> (a,c) -> (a,b) restricted to chords that carry a
    vertex.
    """
    chord_id: dict[tuple[int, int], int] = {
        tuple(d): idx + 1 for idx, d in enumerate(t.diagonals)
    }
    frozen_id = t.m - 1
    chord_id[(0, t.m)] = frozen_id
    vertices = [(idx + 1, False) for idx in range(len(t.diagonals))]
    vertices.append((frozen_id, True))
    arrows: list[tuple[int, int]] = []
    for a, b, c in t.triangles:
        cycle = ((a, b), (b, c), (a, c))
        for pos in range(3):
            src = chord_id.get(cycle[pos])
            dst = chord_id.get(cycle[(pos + 1) % 3])
            if src is not None and dst is not None:
                arrows.append((src, dst))
    return IceQuiver.make(vertices, arrows)
