from __future__ import annotations

from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nofil.constructions import (
    ConstructionDefect,
    CyclicPresentation,
    NotFound,
    affine_plane_blocks,
    cyclic_sts_base_blocks,
    decompose_A_matchings,
    decompose_P_matchings,
    embed_complete,
    embed_star,
    expand_orbits,
    minimality_tag,
    near_one_factorization,
    pasch_transfer,
    construction_order,
)
from nofil.design import (
    BlockClass,
    TripleSystem,
    classify_blocks,
    find_paschs,
    induced_certificate,
    same_pair_cover,
    validate_sts,
    verify_embedding,
)
from nofil.search import SearchConfig, hillclimb_sts


def test_expand_fano():
    ts = expand_orbits(CyclicPresentation(7, base_blocks=(("0", "1", "3"),)))
    assert validate_sts(ts) and len(ts.blocks) == 7


def test_expand_short_orbit():
    cp = CyclicPresentation(15, base_blocks=(("0", "1", "4"), ("0", "2", "8"), ("0", "5", "10")))
    ts = expand_orbits(cp)
    assert validate_sts(ts) and len(ts.blocks) == 35


def test_expand_single_point_modulus():
    cp = CyclicPresentation(1, copies=(0, 1, 2), base_blocks=(("0_0", "0_1", "0_2"),))
    ts = expand_orbits(cp)
    assert validate_sts(ts) and ts.v == 3


def test_expand_reports_bad_pair():
    cp = CyclicPresentation(7, base_blocks=(("0", "1", "2"),))
    with pytest.raises(ConstructionDefect) as info:
        expand_orbits(cp)
    assert info.value.pair is not None and info.value.count != 1


def test_expand_unknown_label():
    with pytest.raises(ConstructionDefect):
        expand_orbits(CyclicPresentation(7, base_blocks=(("0", "1", "x"),)))


def test_presentation_text_lists_blocks():
    cp = CyclicPresentation(7, base_blocks=(("0", "1", "3"),))
    text = cp.to_text()
    assert text.startswith("n=7") and "0 1 3" in text


@pytest.mark.parametrize("ell", [3, 4, 5, 6])
def test_p_matchings(ell):
    dec = decompose_P_matchings(ell)
    assert dec.ok(), dec.problems()
    assert len(dec.classes) == 2 * ell + 1
    for i in range(ell):
        assert dec.missing((i, 0)) == dec.missing((i, 1)) == {f"p{i}_0", f"p{i}_1"}


def test_p_matchings_ell3_sizes():
    dec = decompose_P_matchings(3)
    assert sum(len(c) for c in dec.classes.values()) == comb(6, 2)


def test_p_matchings_ell2_covers_host():
    dec = decompose_P_matchings(2)
    assert dec.ok()
    assert sum(len(c) for c in dec.classes.values()) == 6


def test_a_matchings_a4():
    dec = decompose_A_matchings(4)
    assert dec.ok()
    assert dec.classes[(0, 0)] == {frozenset("01"), frozenset("32")}
    assert sum(len(c) for c in dec.classes.values()) == 6
    assert dec.missing((1, 1)) == {"1", "3"}


@pytest.mark.parametrize("a", [2, 6, 8, 12])
def test_a_matchings_ok(a):
    assert decompose_A_matchings(a).ok()


def test_a_matchings_need_even():
    with pytest.raises(ValueError):
        decompose_A_matchings(5)


def test_near_one_factorization_m5():
    dec = near_one_factorization(5)
    assert dec.ok()
    assert dec.classes[0] == {frozenset("41"), frozenset("32")}
    assert [k for k in dec.classes if "3" in dec.missing(k)] == [3]


@pytest.mark.parametrize("m", [1, 3, 9, 11])
def test_near_one_factorization_ok(m):
    dec = near_one_factorization(m)
    assert dec.ok()
    assert all(dec.missing(i) == {str(i)} for i in range(m))


def test_broken_decomposition_reports():
    dec = near_one_factorization(5)
    dec.classes[0] = set(dec.classes[0]) | {frozenset("12")}
    assert not dec.ok()


@pytest.mark.parametrize("a", range(2, 13))
def test_embed_complete_verifies(a):
    cert = embed_complete(a)
    assert validate_sts(cert.ts) and verify_embedding(cert)
    g = cert.graph
    assert g.n == a and g.e == comb(a, 2)


@pytest.mark.parametrize("a", [3, 5, 7, 9, 11])
def test_embed_complete_odd_order(a):
    assert embed_complete(a).ts.v == 3 * a


@pytest.mark.parametrize("a", [6, 8, 10, 12])
def test_embed_complete_even_census(a):
    cert = embed_complete(a)
    assert cert.ts.v == 3 * a + 1
    _, counts = classify_blocks(cert.ts, cert.partition)
    assert tuple(counts)[:7] == (comb(a, 2), comb(a, 2), a, a // 2, 0, a * a // 2, 0)


def test_embed_complete_two_is_thirteen():
    cert = embed_complete(2)
    assert cert.ts.v == 13


@pytest.mark.parametrize("v,count", [(7, 1), (13, 2), (15, 3), (19, 3), (21, 4)])
def test_cyclic_base_blocks(v, count):
    base = cyclic_sts_base_blocks(v)
    assert len(base) == count
    blocks = {frozenset((x + g) % v for x in b) for b in base for g in range(v)}
    ts_blocks = [[str(x) for x in b] for b in blocks]
    assert validate_sts(TripleSystem.from_blocks(ts_blocks))


def test_no_cyclic_sts9():
    with pytest.raises(NotFound):
        cyclic_sts_base_blocks(9)


def test_cyclic_base_rejects_bad_order():
    with pytest.raises(ValueError):
        cyclic_sts_base_blocks(11)


def test_affine_plane():
    lines = affine_plane_blocks()
    assert len(lines) == 12
    pairs = {frozenset(p) for b in lines for p in ((b[0], b[1]), (b[0], b[2]), (b[1], b[2]))}
    assert len(pairs) == 36


@pytest.mark.parametrize("a", range(2, 30))
def test_embed_star_verifies(a):
    emb = embed_star(a, allow_search=False) if a >= 7 else embed_star(a)
    assert verify_embedding(emb.cert)
    g = emb.cert.graph
    assert g.n == a and g.e == a - 1
    assert all(emb.centre in e for e in g.edges)


def test_star_tags():
    assert embed_star(12, allow_search=False).v == 45
    assert minimality_tag(12, 45) == "next"
    assert embed_star(11, allow_search=False).v == 39


@pytest.mark.parametrize("a,v", [(6, 21), (7, 31), (11, 39), (12, 45), (13, 55)])
def test_construction_order(a, v):
    assert construction_order(a) == v


def test_pasch_transfer_removes_leaf():
    emb = embed_star(14, allow_search=False)
    new = pasch_transfer(emb.cert, protect=[emb.centre])
    assert verify_embedding(new)
    assert new.graph.n == 13 and new.graph.e == 12
    assert new.partition.u == emb.cert.partition.u + 1


def test_pasch_transfer_without_paschs(sts9):
    cert = induced_certificate(sts9, "126")
    with pytest.raises(NotFound):
        pasch_transfer(cert)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2000))
def test_pasch_switch_preserves_pairs(seed):
    ts = hillclimb_sts(15, SearchConfig(seed=seed))
    for pc in find_paschs(ts)[:5]:
        assert same_pair_cover(pc.blocks, pc.switched_blocks)


def test_complete_even_has_no_forbidden():
    cert = embed_complete(8)
    mapping, _ = classify_blocks(cert.ts, cert.partition)
    assert BlockClass.FORBIDDEN not in mapping.values()
