from __future__ import annotations

import random
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nofil import bounds
from nofil.design import graph_family


@pytest.mark.parametrize("args,want", [
    ((5, 2, 6, 0), (10, 0, 10, 0, 1, 0, 5)),
    ((4, 5, 6, 4), (6, 4, 12, 0, 6, 3, 4)),
    ((2, 4, 1, 4), (1, 4, 0, 0, 2, 0, 0)),
])
def test_class_counts_examples(args, want):
    assert tuple(bounds.class_counts(*args)) == want


def test_class_counts_infeasible():
    assert not bounds.class_counts(1, 5, 1, 0)


def test_complete_five_minimal_at_fifteen():
    assert bounds.lemma1_bounds(15, 5, 5, 10, 5, 0).ok
    inv = bounds.GraphInvariants.of(graph_family("complete", 5))
    for v in (7, 9, 13):
        assert bounds.rows_at(inv, v) == []


def test_k4_at_nine_fails_only_the_disjunction():
    rep = bounds.lemma1_bounds(9, 4, 2, 6, 3, 0)
    assert rep.failed() == ["9/10"]


def test_empty_two_at_thirteen_passes():
    assert bounds.lemma1_bounds(13, 2, 6, 0, 0, 1).ok


def test_no_vertices_with_edges_rejected():
    with pytest.raises(ValueError):
        bounds.lemma1_bounds(7, 0, 3, 1, 0, 0)


def test_admissible_parameter_examples():
    rows = bounds.admissible_parameters(graph_family("empty", 4), 19)
    assert [(r.v, r.p, r.a, r.u) for r in rows] == [(19, 6, 4, 9), (19, 5, 4, 10)]
    first = bounds.admissible_parameters(graph_family("cycle", 10), 25)[0]
    assert (first.v, first.p, first.u, first.counts) == (25, 5, 10, (10, 10, 30, 0, 35, 0, 15))
    first = bounds.admissible_parameters(graph_family("path", 2), 13)[0]
    assert (first.v, first.p, first.u, first.counts) == (13, 5, 6, (10, 1, 8, 1, 0, 2, 4))


def test_structural_obstruction_examples():
    row2 = bounds.min_admissible_v(graph_family("empty", 2))[1][0]
    assert bounds.structural_obstruction(row2) == bounds.Blocked(6)
    row8 = bounds.min_admissible_v(graph_family("empty", 8))[1][0]
    assert bounds.structural_obstruction(row8) == bounds.UUUMustBeSTS(13)
    row5 = bounds.min_admissible_v(graph_family("path", 5))[1][0]
    assert bounds.structural_obstruction(row5) is None


@pytest.mark.parametrize("family,a,v", [("path", 4, 19), ("path", 5, 15), ("cycle", 9, 27),
                                        ("cycle", 10, 25), ("star", 2, 13)])
def test_min_admissible_examples(family, a, v):
    assert bounds.min_admissible_v(graph_family(family, a))[0] == v


@pytest.mark.parametrize("a", range(3, 16))
def test_min_admissible_complete(a):
    want = 3 * a if a % 2 else 3 * a + 1
    assert bounds.min_admissible_v(graph_family("complete", a))[0] == want


def test_rows_invariants():
    for family in ("empty", "path", "cycle", "star", "complete"):
        for a in range(3, 30):
            for ps in bounds.min_admissible_v(graph_family(family, a))[1]:
                assert sum(ps.counts) == ps.v * (ps.v - 1) // 6
                assert ps.u <= comb(ps.p, 2)


def test_text_table_layout():
    text = bounds.emit_table("empty", 2, 4)
    lines = text.splitlines()
    assert lines[0].split()[:3] == ["a", "v", "(p,a,u)"]
    assert "blocked" in text.lower() or "Blocked" in text


@settings(max_examples=500, deadline=None)
@given(st.data())
def test_counts_imply_inequalities(data):
    v = data.draw(st.sampled_from([n for n in range(3, 80) if n % 6 in (1, 3)]))
    a = data.draw(st.integers(1, v - 1))
    u = data.draw(st.integers(0, v - a))
    e = data.draw(st.integers(0, comb(a, 2)))
    counts = bounds.class_counts(v - a - u, a, u, e)
    if counts:
        assert sum(counts) == v * (v - 1) // 6
        failed = set(bounds.lemma1_bounds(v, a, u, e, 0, 0).failed())
        assert not failed - {"1", "2", "8"}


def test_counts_imply_inequalities_bulk():
    rng = random.Random(7)
    orders = [n for n in range(3, 100) if n % 6 in (1, 3)]
    feasible = 0
    for _ in range(10_000):
        v = rng.choice(orders)
        a = rng.randint(1, v - 1)
        u = rng.randint(0, v - a)
        e = rng.randint(0, comb(a, 2))
        if bounds.class_counts(v - a - u, a, u, e):
            feasible += 1
            assert not set(bounds.lemma1_bounds(v, a, u, e, 0, 0).failed()) - {"1", "2", "8"}
    assert feasible > 0
