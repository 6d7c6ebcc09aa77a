"""Unit tests for ice quivers and their exact solution counts."""

from __future__ import annotations

import itertools
import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cluster_f2 import (
    IceQuiver,
    ResourceLimitError,
    Triangulation,
    closed_form,
    dynkin_quiver,
    enumerate_points,
    f2_count_bruteforce,
    f2_count_recursive,
    quiver_of,
    seed_count,
)
from oracles import catalan, literal_relation_solution_count

A_COUNTS = [3, 5, 11, 21, 43, 85, 171, 341, 683, 1365]
D_COUNTS = {4: 29, 5: 51, 6: 109, 7: 211}
A_SEEDS = [2, 5, 14, 42, 132, 429, 1430, 4862, 16796, 58786]
D_SEEDS = {4: 50, 5: 182, 6: 672, 7: 2508}


def _count_both(quiver: IceQuiver) -> int:
    rec = f2_count_recursive(quiver)
    brute = f2_count_bruteforce(quiver)
    assert rec.method == "recursion"
    assert brute.method == "brute-force"
    assert rec.count == brute.count
    return rec.count


# ---------------------------------------------------------------------------
# construction and validation


def test_make_normalizes_and_sorts():
    q = IceQuiver.make([(3, False), (1, False), (2, True)], [(3, 1), (3, 2)])
    assert q.vertices == ((1, False), (2, True), (3, False))
    assert q.arrows == ((3, 1), (3, 2))
    assert q.mutable_ids == (1, 3)
    assert q.frozen_ids == (2,)
    assert q.mutable_arcs() == frozenset({(3, 1)})


def test_make_rejects_duplicate_ids():
    with pytest.raises(ValueError, match="duplicate"):
        IceQuiver.make([(1, False), (1, True)], [(1, 1)])


def test_make_rejects_dangling_arrow():
    with pytest.raises(ValueError, match="unknown vertex"):
        IceQuiver.make([(1, False), (2, False)], [(1, 3)])


def test_make_rejects_loop():
    with pytest.raises(ValueError, match="loop"):
        IceQuiver.make([(1, False), (2, False)], [(1, 2), (2, 2)])


def test_make_rejects_directed_two_cycle():
    with pytest.raises(ValueError, match="2-cycle"):
        IceQuiver.make([(1, False), (2, False)], [(1, 2), (2, 1)])


def test_make_rejects_frozen_frozen_arrow():
    with pytest.raises(ValueError, match="frozen"):
        IceQuiver.make([(1, False), (2, True), (3, True)], [(1, 2), (2, 3)])


def test_make_rejects_isolated_mutable():
    with pytest.raises(ValueError, match="isolated"):
        IceQuiver.make([(1, False), (2, False), (3, False)], [(1, 2)])


def test_json_round_trip():
    q = dynkin_quiver("D", 5)
    blob = json.dumps(q.to_json_dict())
    assert IceQuiver.from_json_dict(json.loads(blob)) == q


# ---------------------------------------------------------------------------
# counts on small named quivers


def test_single_mutable_with_frozen_companion_counts_three():
    q = IceQuiver.make([(1, False), (2, True)], [(1, 2)])
    assert _count_both(q) == 3
    assert literal_relation_solution_count(2, {1}, [(0, 1)]) == 3


def test_two_vertex_path_counts_five():
    q = IceQuiver.make([(0, False), (1, False)], [(0, 1)])
    assert _count_both(q) == 5


def test_doubled_arrow_counts_like_single_arrow():
    doubled = IceQuiver.make([(0, False), (1, False)], [(0, 1), (0, 1)])
    assert _count_both(doubled) == 5
    assert literal_relation_solution_count(2, set(), [(0, 1), (0, 1)]) == 5


def test_three_vertex_path_counts_eleven():
    q = IceQuiver.make([(0, False), (1, False), (2, False)], [(0, 1), (1, 2)])
    assert _count_both(q) == 11


def test_frozen_vertices_never_change_the_count():
    base = dynkin_quiver("A", 4)
    decorated = IceQuiver.make(
        list(base.vertices) + [(10, True), (11, True)],
        list(base.arrows) + [(1, 10), (11, 3)],
    )
    assert _count_both(decorated) == _count_both(base) == closed_form("A", 4)


# ---------------------------------------------------------------------------
# Dynkin builders and closed forms


def test_dynkin_shapes():
    a4 = dynkin_quiver("A", 4)
    assert a4.arrows == ((1, 2), (2, 3), (3, 4))
    d4 = dynkin_quiver("D", 4)
    assert d4.arrows == ((1, 2), (3, 2), (4, 2))
    e6 = dynkin_quiver("E", 6)
    assert e6.arrows == ((1, 2), (2, 3), (3, 4), (4, 5), (6, 3))
    e8 = dynkin_quiver("E", 8)
    assert e8.arrows == (
        (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (8, 5),
    )
    assert all(not f for _, f in e8.vertices)


def test_dynkin_rank_validation():
    with pytest.raises(ValueError):
        dynkin_quiver("A", 0)
    with pytest.raises(ValueError):
        dynkin_quiver("D", 3)
    with pytest.raises(ValueError):
        dynkin_quiver("E", 9)
    with pytest.raises(ValueError):
        dynkin_quiver("B", 2)


@pytest.mark.parametrize("n", range(1, 11))
def test_type_a_counts_match_closed_form(n):
    assert _count_both(dynkin_quiver("A", n)) == closed_form("A", n) == A_COUNTS[n - 1]


@pytest.mark.parametrize("n", range(4, 8))
def test_type_d_counts_match_closed_form(n):
    assert _count_both(dynkin_quiver("D", n)) == closed_form("D", n) == D_COUNTS[n]


def test_type_e8_counts_match_closed_form():
    assert _count_both(dynkin_quiver("E", 8)) == closed_form("E", 8) == 381


def test_type_e6_e7_counts_computable_but_no_closed_form():
    assert _count_both(dynkin_quiver("E", 6)) == 93
    assert _count_both(dynkin_quiver("E", 7)) == 195
    with pytest.raises(ValueError, match="closed-form"):
        closed_form("E", 6)
    with pytest.raises(ValueError, match="closed-form"):
        closed_form("E", 7)


def test_seed_counts():
    for n in range(1, 11):
        assert seed_count("A", n) == catalan(n + 1) == A_SEEDS[n - 1]
    for n, expected in D_SEEDS.items():
        assert seed_count("D", n) == expected
    assert seed_count("E", 8) == 25080
    with pytest.raises(ValueError):
        seed_count("E", 7)


def test_seed_count_large_type_a_stays_integral():
    # the quotient must be exact for every rank, not just the tabulated ones
    for n in range(1, 60):
        assert seed_count("A", n) == catalan(n + 1)


# ---------------------------------------------------------------------------
# orientation independence: the count depends only on the underlying tree


def _orientations(quiver: IceQuiver):
    edges = sorted({tuple(sorted(a)) for a in quiver.arrows})
    for flips in itertools.product((False, True), repeat=len(edges)):
        arrows = [
            (v, u) if flip else (u, v) for (u, v), flip in zip(edges, flips)
        ]
        yield IceQuiver.make(quiver.vertices, arrows)


@pytest.mark.parametrize(
    "family,n", [("A", 5), ("A", 6), ("D", 4), ("D", 6), ("E", 6)]
)
def test_count_is_orientation_independent(family, n):
    expected = f2_count_recursive(dynkin_quiver(family, n)).count
    for oriented in _orientations(dynkin_quiver(family, n)):
        assert _count_both(oriented) == expected


def test_count_is_orientation_independent_e8():
    for oriented in _orientations(dynkin_quiver("E", 8)):
        assert f2_count_recursive(oriented).count == 381


def test_recursion_result_is_independent_of_pivot_choice():
    for family, n in [("A", 6), ("D", 5), ("E", 6)]:
        quiver = dynkin_quiver(family, n)
        expected = f2_count_recursive(quiver).count
        for seed in range(20):
            rng = random.Random(seed)
            assert f2_count_recursive(quiver, rng=rng).count == expected


# ---------------------------------------------------------------------------
# randomized cross-validation against the literal oracle


def _random_dag_quiver(rng: random.Random) -> tuple[IceQuiver, int, list]:
    n = rng.randint(2, 6)
    rank = list(range(n))
    rng.shuffle(rank)
    arrows: list[tuple[int, int]] = []
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < 0.5:
                s, t = (u, v) if rank[u] < rank[v] else (v, u)
                arrows.extend([(s, t)] * (1 + (rng.random() < 0.3)))
    touched = {x for arrow in arrows for x in arrow}
    for v in range(n):
        if v not in touched:
            u = (v + 1) % n
            s, t = (u, v) if rank[u] < rank[v] else (v, u)
            arrows.append((s, t))
            touched.update((s, t))
    quiver = IceQuiver.make([(v, False) for v in range(n)], arrows)
    return quiver, n, arrows


def test_random_acyclic_quivers_agree_with_literal_oracle():
    rng = random.Random(20260823)
    for _ in range(200):
        quiver, n, arrows = _random_dag_quiver(rng)
        expected = literal_relation_solution_count(n, set(), arrows)
        assert _count_both(quiver) == expected


def test_random_quivers_with_frozen_attachments_agree_with_oracle():
    rng = random.Random(4242)
    for _ in range(50):
        quiver, n, arrows = _random_dag_quiver(rng)
        frozen_arrows = list(arrows)
        for extra in (n, n + 1):
            anchor = rng.randrange(n)
            frozen_arrows.append(
                (anchor, extra) if rng.random() < 0.5 else (extra, anchor)
            )
        decorated = IceQuiver.make(
            [(v, False) for v in range(n)] + [(n, True), (n + 1, True)],
            frozen_arrows,
        )
        expected = literal_relation_solution_count(
            n + 2, {n, n + 1}, frozen_arrows
        )
        assert _count_both(decorated) == expected
        assert expected == f2_count_recursive(quiver).count


@settings(deadline=None, max_examples=100)
@given(
    st.sets(
        st.tuples(st.integers(0, 4), st.integers(0, 4)).filter(
            lambda e: e[0] != e[1]
        ),
        min_size=1,
        max_size=10,
    )
)
def test_property_recursion_equals_bruteforce(edge_set):
    arrows = sorted({(min(a, b), max(a, b)) for a, b in edge_set})
    vertices = sorted({v for arrow in arrows for v in arrow})
    quiver = IceQuiver.make([(v, False) for v in vertices], arrows)
    assert (
        f2_count_recursive(quiver).count == f2_count_bruteforce(quiver).count
    )


# ---------------------------------------------------------------------------
# coherence with the polygon model


@pytest.mark.parametrize("m", range(3, 13))
def test_fan_triangulation_quiver_count_matches_point_count(m):
    fan = Triangulation.make(m, [(0, j) for j in range(2, m)])
    quiver = quiver_of(fan)
    count = f2_count_recursive(quiver).count
    assert count == closed_form("A", m - 2)
    assert count == len(enumerate_points(m, 2))


# ---------------------------------------------------------------------------
# guards and failure modes


def test_directed_cycle_raises_value_error():
    cyclic = IceQuiver.make(
        [(0, False), (1, False), (2, False)], [(0, 1), (1, 2), (2, 0)]
    )
    with pytest.raises(ValueError, match="cycle"):
        f2_count_recursive(cyclic)
    with pytest.raises(ValueError, match="cycle"):
        f2_count_bruteforce(cyclic)


def test_bruteforce_guard_and_force_override():
    big = dynkin_quiver("A", 15)
    with pytest.raises(ResourceLimitError, match="force"):
        f2_count_bruteforce(big)
    assert f2_count_bruteforce(big, force=True).count == closed_form("A", 15)
    assert f2_count_recursive(big).count == closed_form("A", 15)
