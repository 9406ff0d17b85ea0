from __future__ import annotations

import pytest

from nofil.constructions import _data_certificate
from nofil.design import DesignError, graph_family
from nofil.io import (
    certificate_from_text,
    certificate_to_text,
    graph_from_text,
    graph_to_text,
    sts_from_text,
    sts_to_text,
)


def test_sts_round_trip(sts9):
    text = sts_to_text(sts9, ["example"])
    assert text.startswith("# example\nv=9\n")
    assert sts_from_text(text) == sts9
    assert sts_to_text(sts_from_text(text)) == sts_to_text(sts9)


@pytest.mark.parametrize("name", ["star_a3_sts13", "star_a4_sts19", "star_a6_sts19",
                                  "complete_a2_sts13", "complete_a4_sts13"])
def test_certificate_round_trip(name):
    cert = _data_certificate(name)
    text = certificate_to_text(cert)
    assert certificate_from_text(text) == cert
    assert certificate_to_text(certificate_from_text(text)) == text


def test_graph_round_trip():
    g = graph_family("cycle", 6)
    assert graph_from_text(graph_to_text(g)) == g


@pytest.mark.parametrize("text", ["0 1 2\n", "v=7\n0 1\n", "v=x\n"])
def test_bad_sts_text(text):
    with pytest.raises(DesignError):
        sts_from_text(text)


def test_missing_section():
    with pytest.raises(DesignError):
        certificate_from_text("P: 1\nA: 2\nEDGES:\n")
