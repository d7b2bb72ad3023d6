"""Bundled graphs load, parse, and certify as documented."""

import pytest

from cagekit import corpus
from cagekit.verify import verify


def test_names_listed():
    assert "record-4-7-67" in corpus.names()


def test_unknown_name_lists_alternatives():
    with pytest.raises(KeyError) as exc:
        corpus.load("no-such-graph")
    assert "record-4-7-67" in str(exc.value)


def test_meta_matches_load():
    for name in corpus.names():
        m = corpus.meta(name)
        g, m2 = corpus.load(name)
        assert m == m2
        assert g.n == m["n"]


def test_every_entry_certifies():
    for name in corpus.names():
        g, m = corpus.load(name)
        rep = verify(g, m["k"], m["g"], expected_order=m["n"])
        assert rep.passed, (name, rep.lines())
        assert rep.girth == m["girth"]
        assert rep.aut.order == m["aut_order"]
        assert sorted(rep.aut.orbit_sizes()) == sorted(m["orbit_sizes"])
