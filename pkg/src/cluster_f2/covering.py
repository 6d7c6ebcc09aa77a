"""Covering constructions: from each admissible point to a triangulation
that properly colors it, and sets of triangulations covering all points.

The central construction (here ``algorithm_A``) walks the polygon left to
right, alternating between pivots carrying a finite nonzero label and
pivots carrying the zero label, drawing a fan at each pivot; two repair
cases re-triangulate the final stretch when the alternation runs out.
``algorithm_B`` computes the q=2 coloring of that triangulation directly
from the input labels, without building the triangulation.
"""

from __future__ import annotations

from dataclasses import dataclass

from .coloring import (
    ONE_COLOR,
    ZERO_COLOR,
    PointX,
    alternating_point,
    coloring_fibers,
    enumerate_points,
    infinity_color,
    invalid_diagonals,
    is_proper,
)
from .errors import ResourceLimitError
from .polygon import Diagonal, Triangulation

UPSILON_MAX_M = 11
_SUPPORTED_Q = (2, 3, 4)

_F2_INF = infinity_color(2)


class NoCoverError(ValueError):
    """Raised for the alternating zero/infinity point, which no
    triangulation colors properly."""


@dataclass(frozen=True)
class CoverReport:
    """Result of checking a set of triangulations against the points at
    (m, q).

    ``covered_count`` counts the checked points admitted by some member;
    ``uncovered`` lists the witnesses that are not.  ``minimal`` states
    whether removing any single member would leave some q=2 point
    uncovered.  ``assignment`` maps each covered point to the member(s)
    found for it (first match for scans; unique choices for
    constructions).
    """

    m: int
    q: int
    cover: tuple[Triangulation, ...]
    points_checked: int
    covered_count: int
    uncovered: tuple[PointX, ...]
    minimal: bool
    assignment: dict[PointX, tuple[Triangulation, ...]]


def admissible_points(m: int, q: int) -> list[PointX]:
    """All points except the alternating zero/infinity point (which
    exists only for odd m), in lexicographic order."""
    deep = alternating_point(m, q)
    return [y for y in enumerate_points(m, q) if y != deep]


def algorithm_A(y: PointX) -> Triangulation:
    """Build a triangulation properly colored by y.

    Step 1 pivots at the least index i1 with a finite nonzero label and
    fans from it backwards to 0 and across to m.  Later steps alternate:
    find the least later index labelled zero (even steps) or labelled
    finite nonzero (odd steps) and fan from it over the gap.  When the
    search fails before the polygon is exhausted, the last step is undone
    and the remaining region is re-triangulated by one of two repairs.

    Raises NoCoverError for the alternating zero/infinity point.
    """
    m, q = y.m, y.q
    lab = y.labels
    inf = infinity_color(q)

    def finite_nonzero(idx: int) -> bool:
        return lab[idx] != ZERO_COLOR and lab[idx] != inf

    diags: set[Diagonal] = set()

    def draw(a: int, b: int) -> None:
        i, j = (a, b) if a < b else (b, a)
        if j - i >= 2 and (i, j) != (0, m):
            diags.add(Diagonal(i, j))

    i1 = next((i for i in range(1, m) if finite_nonzero(i)), None)
    if i1 is None:
        raise NoCoverError(
            "the alternating zero/infinity point is not properly colored "
            "by any triangulation"
        )
    draw(i1, m)
    for j in range(0, i1 - 1):
        draw(j, i1)

    prev_pivot = 0  # pivot of the step before the current one
    pivot = i1
    searching_zero = True  # even steps look for a zero label
    while pivot < m - 2:
        wanted = (
            (lambda i: lab[i] == ZERO_COLOR)
            if searching_zero
            else finite_nonzero
        )
        nxt = next((i for i in range(pivot + 1, m) if wanted(i)), None)
        if nxt is not None:
            draw(nxt, m)
            for j in range(pivot, nxt - 1):
                draw(j, nxt)
            prev_pivot, pivot = pivot, nxt
            searching_zero = not searching_zero
            continue
        # Undo the diagonals of the last completed step.
        diags.discard(Diagonal(pivot, m))
        for j in range(prev_pivot, pivot - 1):
            diags.discard(Diagonal(j, pivot))
        if searching_zero:
            # Repair 1: the last pivot had a finite nonzero label and no
            # zero label follows it.  Fan from the last zero-labelled
            # vertex forward, and from m-1 back over the previous gap.
            last_zero = next(
                j
                for j in range(pivot - 1, prev_pivot - 1, -1)
                if lab[j] == ZERO_COLOR
            )
            for j in range(last_zero + 2, m):
                draw(last_zero, j)
            for j in range(prev_pivot, last_zero + 1):
                draw(j, m - 1)
        else:
            # Repair 2: the last pivot had the zero label and every later
            # vertex is zero- or infinity-labelled.  Fan from the
            # previous pivot across to m, keeping the backward fan.
            for j in range(pivot, m + 1):
                draw(prev_pivot, j)
            for j in range(prev_pivot, pivot - 1):
                draw(j, pivot)
        break
    return Triangulation.make(m, sorted(diags))


def algorithm_B(y: PointX) -> PointX:
    """The q=2 coloring of algorithm_A(y), computed directly.

    Mirrors algorithm_A's control flow but writes labels instead of
    diagonals: the pivots receive 1 (finite steps) and 0 (zero steps),
    stretches between them copy the input's zero/infinity pattern or
    alternate as the fans force, and the repairs rewrite the tail."""
    m, q = y.m, y.q
    lab = y.labels
    inf = infinity_color(q)

    def finite_nonzero(idx: int) -> bool:
        return lab[idx] != ZERO_COLOR and lab[idx] != inf

    def as_f2(idx: int) -> int:
        # only used where the input label is zero or infinity
        return ZERO_COLOR if lab[idx] == ZERO_COLOR else _F2_INF

    z: list[int | None] = [None] * (m + 1)
    z[0] = ZERO_COLOR
    z[m] = _F2_INF

    i1 = next((i for i in range(1, m) if finite_nonzero(i)), None)
    if i1 is None:
        raise NoCoverError(
            "the alternating zero/infinity point is not properly colored "
            "by any triangulation"
        )
    for j in range(1, i1):
        z[j] = as_f2(j)
    z[i1] = ONE_COLOR

    prev_pivot = 0
    pivot = i1
    searching_zero = True
    while pivot < m - 2:
        wanted = (
            (lambda i: lab[i] == ZERO_COLOR)
            if searching_zero
            else finite_nonzero
        )
        nxt = next((i for i in range(pivot + 1, m) if wanted(i)), None)
        if nxt is not None:
            if searching_zero:
                # the fan at nxt forces alternation from the pivot's 1
                value = _F2_INF
                for j in range(pivot + 1, nxt):
                    z[j] = value
                    value = ONE_COLOR if value == _F2_INF else _F2_INF
                z[nxt] = ZERO_COLOR
            else:
                for j in range(pivot + 1, nxt):
                    z[j] = as_f2(j)
                z[nxt] = ONE_COLOR
            prev_pivot, pivot = pivot, nxt
            searching_zero = not searching_zero
            continue
        if searching_zero:
            # Repair 1: copy the input up to the last zero, then
            # alternate 1/infinity backwards from z_m = infinity.
            last_zero = next(
                j
                for j in range(pivot - 1, prev_pivot - 1, -1)
                if lab[j] == ZERO_COLOR
            )
            for j in range(prev_pivot + 1, last_zero + 1):
                z[j] = as_f2(j)
            for j in range(last_zero + 1, m):
                z[j] = ONE_COLOR if (m - j) % 2 == 1 else _F2_INF
        else:
            # Repair 2: alternate 1/infinity across the previous gap,
            # keep the zero pivot, copy the zero/infinity tail.
            value = ONE_COLOR
            for j in range(prev_pivot, pivot):
                z[j] = value
                value = _F2_INF if value == ONE_COLOR else ONE_COLOR
            z[pivot] = ZERO_COLOR
            for j in range(pivot + 1, m):
                z[j] = as_f2(j)
        break
    if z[m - 1] is None:
        # final triangle (m-2, m-1, m) forces the remaining color
        z[m - 1] = [
            v
            for v in (ZERO_COLOR, ONE_COLOR, _F2_INF)
            if v not in (z[m - 2], _F2_INF)
        ][0]
    return PointX.make(m, 2, z)


def _unique_coverage_minimal(
    cover: tuple[Triangulation, ...], m: int
) -> bool:
    """True iff each member is the only one admitting some q=2 point."""
    f2_points = admissible_points(m, 2)
    needed: set[Triangulation] = set()
    for z in f2_points:
        holders = [t for t in cover if is_proper(t, z)]
        if len(holders) == 1:
            needed.add(holders[0])
    return len(needed) == len(cover)


def upsilon_cover(m: int, q: int, *, force: bool = False) -> CoverReport:
    """Apply algorithm_A to every admissible point and report on the
    resulting set of triangulations: coverage, size, and minimality."""
    if m < 2:
        raise ValueError(f"polygon parameter must be >= 2, got {m}")
    if q not in _SUPPORTED_Q:
        raise ValueError(f"field size must be one of {_SUPPORTED_Q}, got {q}")
    if m > UPSILON_MAX_M and not force:
        raise ResourceLimitError(
            f"covering construction at m={m} exceeds the guard of "
            f"{UPSILON_MAX_M}; pass force=True to override"
        )
    points = admissible_points(m, q)
    assignment: dict[PointX, tuple[Triangulation, ...]] = {}
    uncovered = []
    members: set[Triangulation] = set()
    for y in points:
        t = algorithm_A(y)
        members.add(t)
        if is_proper(t, y):
            assignment[y] = (t,)
        else:  # pragma: no cover - construction guarantees properness
            uncovered.append(y)
    cover = tuple(sorted(members, key=lambda t: t.diagonals))
    return CoverReport(
        m=m,
        q=q,
        cover=cover,
        points_checked=len(points),
        covered_count=len(points) - len(uncovered),
        uncovered=tuple(uncovered),
        minimal=_unique_coverage_minimal(cover, m),
        assignment=assignment,
    )


def verify_covering(cover, m: int, q: int) -> CoverReport:
    """Exhaustively check a set of triangulations against all admissible
    points at (m, q); members are deduplicated before reporting."""
    members = []
    for t in cover:
        if t.m != m:
            raise ValueError(
                f"cover member with m={t.m} does not match m={m}"
            )
        members.append(t)
    deduped = tuple(sorted(set(members), key=lambda t: t.diagonals))
    assignment: dict[PointX, tuple[Triangulation, ...]] = {}
    uncovered = []
    points = admissible_points(m, q)
    for y in points:
        holder = next((t for t in deduped if is_proper(t, y)), None)
        if holder is None:
            uncovered.append(y)
        else:
            assignment[y] = (holder,)
    return CoverReport(
        m=m,
        q=q,
        cover=deduped,
        points_checked=len(points),
        covered_count=len(points) - len(uncovered),
        uncovered=tuple(uncovered),
        minimal=_unique_coverage_minimal(deduped, m),
        assignment=assignment,
    )


def counterexample_cover(
    q: int,
) -> tuple[PointX, list[Triangulation], CoverReport]:
    """A covering of all q=2 points at m=11 that misses one q>=3 point.

    The witness y interleaves the four colors so that its unusable
    diagonals are exactly the twelve chords spanned by four
    single-colored vertex triples.  For every q=2 point z some diagonal
    is unusable for y but usable for z; picking a triangulation through
    that diagonal whose coloring is z yields a set that covers every q=2
    point while no member properly colors y.
    """
    if q < 3:
        raise ValueError(
            f"field size must be >= 3 for the counterexample, got {q}"
        )
    m = 11
    inf = infinity_color(q)
    witness = PointX.make(
        m, q, (0, 1, inf, 1, 2, 0, inf, 2, 1, 0, 2, inf)
    )
    bad_for_witness = invalid_diagonals(witness)
    assignment: dict[PointX, tuple[Triangulation, ...]] = {}
    members = []
    for z, fiber in coloring_fibers(m).items():
        usable = sorted(bad_for_witness - invalid_diagonals(z))
        if not usable:  # pragma: no cover - impossible per the theory
            raise RuntimeError(
                f"every diagonal unusable for the witness is unusable "
                f"for {z.labels} too"
            )
        d = usable[0]
        t = next(t for t in fiber if d in t.diagonals)
        members.append(t)
        assignment[z] = (t,)
    cover = tuple(sorted(members, key=lambda t: t.diagonals))
    covered = sum(
        1 for z, (t,) in assignment.items() if is_proper(t, z)
    )
    witness_covered = any(is_proper(t, witness) for t in cover)
    uncovered = () if witness_covered else (witness,)
    report = CoverReport(
        m=m,
        q=q,
        cover=cover,
        points_checked=len(assignment) + 1,
        covered_count=covered + (1 if witness_covered else 0),
        uncovered=uncovered,
        minimal=_unique_coverage_minimal(cover, m),
        assignment=assignment,
    )
    return witness, list(cover), report
