"""Projective-line labelings of polygon vertices and proper colorings.

A point is a vector of m+1 labels drawn from the q+1 colors of the
projective line over a q-element field, encoded as integers: 0 is the
zero color, q is the infinity color, 1..q-1 are the finite nonzero
colors.  The first label is pinned to 0, the last to q, and consecutive
labels differ.  A point is *proper* for a triangulation when every drawn
chord has distinct endpoint labels; each triangulation admits exactly
one proper point with q = 2, which defines the coloring map computed
here.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import ResourceLimitError
from .polygon import Diagonal, Triangulation, enumerate_triangulations

ZERO_COLOR = 0
ONE_COLOR = 1

DEEP_POINTS_MAX_M = 10
_SUPPORTED_Q = (2, 3, 4)


def infinity_color(q: int) -> int:
    """The integer encoding of the infinity color at field size q."""
    return q


@dataclass(frozen=True)
class PointX:
    """An admissible label vector: endpoints pinned, neighbors distinct."""

    m: int
    q: int
    labels: tuple[int, ...]

    @classmethod
    def make(cls, m: int, q: int, labels) -> "PointX":
        if m < 1:
            raise ValueError(f"polygon parameter must be >= 1, got {m}")
        if q < 2:
            raise ValueError(f"field size must be >= 2, got {q}")
        lab = tuple(int(v) for v in labels)
        if len(lab) != m + 1:
            raise ValueError(
                f"expected {m + 1} labels for m={m}, got {len(lab)}"
            )
        for v in lab:
            if not 0 <= v <= q:
                raise ValueError(
                    f"label {v} outside the color range 0..{q}"
                )
        if lab[0] != ZERO_COLOR:
            raise ValueError("first label must be the zero color")
        if lab[m] != infinity_color(q):
            raise ValueError("last label must be the infinity color")
        for i in range(m):
            if lab[i] == lab[i + 1]:
                raise ValueError(
                    f"labels at positions {i} and {i + 1} coincide"
                )
        return cls(m=m, q=q, labels=lab)

    def relabeled(self, q: int) -> "PointX":
        """The same point viewed at a (weakly larger) field size.

        Only the infinity encoding changes; all finite colors must already
        fit below the new q.
        """
        old_inf = infinity_color(self.q)
        new = tuple(
            infinity_color(q) if v == old_inf else v for v in self.labels
        )
        return PointX.make(self.m, q, new)

    def to_json_dict(self) -> dict:
        return {"m": self.m, "q": self.q, "labels": list(self.labels)}

    @classmethod
    def from_json_dict(cls, data: dict) -> "PointX":
        return cls.make(data["m"], data["q"], data["labels"])


def alternating_point(m: int, q: int) -> PointX | None:
    """The all 0/infinity alternating point, which exists iff m is odd."""
    if m % 2 == 0:
        return None
    inf = infinity_color(q)
    return PointX.make(
        m, q, tuple(ZERO_COLOR if i % 2 == 0 else inf for i in range(m + 1))
    )


def enumerate_points(m: int, q: int) -> list[PointX]:
    """All points at parameters (m, q), in lexicographic label order.

    The count is (q^m - (-1)^m) / (q + 1).
    """
    if m < 1:
        raise ValueError(f"polygon parameter must be >= 1, got {m}")
    if q < 2:
        raise ValueError(f"field size must be >= 2, got {q}")
    inf = infinity_color(q)
    out: list[PointX] = []
    labels = [ZERO_COLOR] * (m + 1)
    labels[m] = inf

    def extend(pos: int) -> None:
        if pos == m:
            if labels[m - 1] != inf:
                out.append(PointX(m=m, q=q, labels=tuple(labels)))
            return
        prev = labels[pos - 1]
        for v in range(q + 1):
            if v != prev:
                labels[pos] = v
                extend(pos + 1)

    if m == 1:
        return [PointX(m=1, q=q, labels=(ZERO_COLOR, inf))]
    extend(1)
    return out


def is_proper(t: Triangulation, y: PointX) -> bool:
    """True iff every chord drawn in t has distinct endpoint labels.

    Polygon sides are distinct by the PointX invariants, so only the
    diagonals need checking.
    """
    if t.m != y.m:
        raise ValueError(
            f"triangulation has m={t.m} but point has m={y.m}"
        )
    lab = y.labels
    return all(lab[i] != lab[j] for i, j in t.diagonals)


@lru_cache(maxsize=None)
def f2_coloring(t: Triangulation) -> PointX:
    """The unique q=2 point proper for t.

    Propagates colors triangle by triangle, breadth-first from the
    triangle resting on the distinguished side (0, m): a triangle with
    two known (distinct) colors forces its third vertex to the remaining
    color, since the three colors 0, 1, 2 sum to 3.
    """
    m = t.m
    labels: list[int | None] = [None] * (m + 1)
    labels[0] = ZERO_COLOR
    labels[m] = infinity_color(2)

    tris = t.triangles
    by_chord: dict[tuple[int, int], list[int]] = {}
    for idx, (a, b, c) in enumerate(tris):
        for chord in ((a, b), (b, c), (a, c)):
            by_chord.setdefault(chord, []).append(idx)

    start = next(
        idx for idx, tri in enumerate(tris) if tri[0] == 0 and tri[2] == m
    )
    queue = [start]
    seen = {start}
    while queue:
        idx = queue.pop(0)
        tri = tris[idx]
        known = [v for v in tri if labels[v] is not None]
        missing = [v for v in tri if labels[v] is None]
        if len(missing) == 1:
            labels[missing[0]] = 3 - labels[known[0]] - labels[known[1]]
        elif len(missing) > 1:
            raise ValueError(
                "propagation reached a triangle with two unknown colors; "
                "not a triangulation"
            )
        a, b, c = tri
        if len({labels[a], labels[b], labels[c]}) != 3:
            raise ValueError(
                "propagation found a triangle with repeated colors; "
                "not a triangulation"
            )
        for chord in ((a, b), (b, c), (a, c)):
            for nxt in by_chord[chord]:
                if nxt not in seen:
                    seen.add(nxt)
                    queue.append(nxt)
    return PointX.make(m, 2, labels)


def coloring_fibers(m: int) -> dict[PointX, list[Triangulation]]:
    """Group all triangulations at m by their coloring.

    Keys appear in lexicographic order of the point labels and each fiber
    is sorted lexicographically.
    """
    groups: dict[PointX, list[Triangulation]] = {}
    for t in enumerate_triangulations(m):
        groups.setdefault(f2_coloring(t), []).append(t)
    ordered = sorted(groups.items(), key=lambda kv: kv[0].labels)
    return {z: sorted(ts, key=lambda t: t.diagonals) for z, ts in ordered}


def _arc_is_two_valued(labels: tuple[int, ...], vertices) -> bool:
    values = set()
    for v in vertices:
        values.add(labels[v])
        if len(values) > 2:
            return False
    return True


def _diagonal_is_invalid(y: PointX, i: int, j: int) -> bool:
    lab = y.labels
    if lab[i] == lab[j]:
        return True
    if _arc_is_two_valued(lab, range(i, j + 1)):
        return True
    outside = list(range(j, y.m + 1)) + list(range(0, i + 1))
    return _arc_is_two_valued(lab, outside)


def invalid_diagonals(y: PointX) -> frozenset[Diagonal]:
    """The diagonals unusable for y: equal endpoint labels, or one of the
    two sub-polygons cut off (endpoints included) carries at most two
    distinct label values."""
    out = []
    for i in range(y.m + 1):
        for j in range(i + 2, y.m + 1):
            if (i, j) == (0, y.m):
                continue
            if _diagonal_is_invalid(y, i, j):
                out.append(Diagonal(i, j))
    return frozenset(out)


def is_valid_diagonal(y: PointX, d: Diagonal | tuple[int, int]) -> bool:
    """True iff some triangulation through d properly colors y; decided
    combinatorially via the two-valued-side test."""
    i, j = sorted(tuple(d))
    if not (0 <= i < j <= y.m) or j - i < 2 or (i, j) == (0, y.m):
        raise ValueError(f"({i},{j}) is not a diagonal at m={y.m}")
    return not _diagonal_is_invalid(y, i, j)


def deep_points(m: int, q: int, *, force: bool = False) -> list[PointX]:
    """All points admitted properly by no triangulation, in lexicographic
    order.  Exhaustive over triangulations; guarded to m <= 10."""
    if m > DEEP_POINTS_MAX_M and not force:
        raise ResourceLimitError(
            f"deep-point scan at m={m} exceeds the guard of "
            f"{DEEP_POINTS_MAX_M}; pass force=True to override"
        )
    if q not in _SUPPORTED_Q:
        raise ValueError(f"field size must be one of {_SUPPORTED_Q}, got {q}")
    diagonals = [
        (i, j)
        for i in range(m + 1)
        for j in range(i + 2, m + 1)
        if (i, j) != (0, m)
    ]
    index = {d: bit for bit, d in enumerate(diagonals)}
    masks = []
    for t in enumerate_triangulations(m):
        mask = 0
        for d in t.diagonals:
            mask |= 1 << index[tuple(d)]
        masks.append(mask)
    out = []
    for y in enumerate_points(m, q):
        lab = y.labels
        bad = 0
        for d, bit in index.items():
            if lab[d[0]] == lab[d[1]]:
                bad |= 1 << bit
        if all(mask & bad for mask in masks):
            out.append(y)
    return out
