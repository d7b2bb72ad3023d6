"""Named reference graphs shipped with the package.

Each entry pairs a graph file under cagekit/data/ with recorded
properties (order, degree, exact girth, automorphism group order, orbit
sizes).  The test suite re-derives every recorded value; users get known
inputs for the verifier and search fixtures frozen from actual runs.
"""

from __future__ import annotations

import json
from importlib import resources

from .formats import parse_graph
from .graph import Graph

_INDEX = None


def _index() -> dict:
    global _INDEX
    if _INDEX is None:
        root = resources.files("cagekit.data")
        _INDEX = json.loads(root.joinpath("corpus.json").read_text())
    return _INDEX


def names() -> list[str]:
    return sorted(_index())


def meta(name: str) -> dict:
    idx = _index()
    if name not in idx:
        raise KeyError(f"unknown corpus entry {name!r}; have {names()}")
    return dict(idx[name])


def load(name: str) -> tuple[Graph, dict]:
    m = meta(name)
    root = resources.files("cagekit.data")
    text = root.joinpath(m["file"]).read_text()
    return parse_graph(text, m["format"]), m
