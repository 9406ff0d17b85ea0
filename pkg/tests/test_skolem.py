from __future__ import annotations

import pytest

from nofil import skolem
from nofil.skolem import PairSequence


def seq(kind, t, d, pairs):
    return PairSequence(kind, t, d, dict(zip(range(d, d + t), pairs)))


def test_validate_examples():
    assert skolem.validate(seq("skolem", 4, 1, [(1, 2), (5, 7), (3, 6), (4, 8)]))
    assert skolem.validate(seq("hooked", 6, 1, [(9, 10), (1, 3), (4, 7), (2, 6), (8, 13), (5, 11)]))
    assert not skolem.validate(seq("skolem", 4, 1, [(1, 2), (5, 8), (3, 6), (4, 8)]))


@pytest.mark.parametrize("kind,t,d,want", [
    ("skolem", 5, 1, True), ("skolem", 6, 1, False), ("split", 7, 1, True), ("langford", 5, 2, False),
    ("hooked", 2, 1, True), ("hooked", 4, 1, False),
])
def test_exists_examples(kind, t, d, want):
    assert skolem.exists(kind, t, d) is want


@pytest.mark.parametrize("kind", skolem.KINDS)
def test_exists_matches_exhaustive_search(kind):
    for d in range(1, 4) if "langford" in kind else (1,):
        for t in range(1, 13):
            found = skolem.search(kind, t, d)
            assert (found is not None) == skolem.exists(kind, t, d), (kind, t, d)


def test_generate_examples():
    assert skolem.validate(skolem.generate("skolem", 4))
    hl = skolem.generate("hooked_langford", 5, 2)
    assert skolem.validate(hl)
    assert sorted(x for p in hl.pairs.values() for x in p) == list(range(1, 10)) + [11]
    with pytest.raises(skolem.NotExists):
        skolem.generate("skolem", 2)


def test_generate_is_seeded():
    assert skolem.generate("skolem", 12, seed=3) == skolem.generate("skolem", 12, seed=3)


def test_special_skolem():
    assert skolem.special_skolem(1).pairs == {1: (1, 2)}
    for t in (4, 5, 8, 9):
        s = skolem.special_skolem(t)
        assert skolem.validate(s) and s[1] == (1, 2)
    with pytest.raises(skolem.NotExists):
        skolem.special_skolem(6)


def test_special_hooked():
    s7 = skolem.special_hooked(7)
    assert list(s7.pairs.values()) == [(5, 6), (1, 3), (10, 13), (8, 12), (2, 7), (9, 15), (4, 11)]
    s10 = skolem.special_hooked(10)
    assert [s10[r] for r in range(1, 11)] == [(4, 5), (1, 3), (9, 12), (11, 15), (2, 7), (13, 19), (14, 21),
                                             (10, 18), (8, 17), (6, 16)]
    s14 = skolem.special_hooked(14)
    assert skolem.validate(s14) and s14[2] == (1, 3)
    for bad in (3, 5, 8):
        with pytest.raises(skolem.NotExists):
            skolem.special_hooked(bad)


def test_text_round_trip():
    s = skolem.generate("hooked", 7)
    assert PairSequence.from_text(s.to_text()) == s
