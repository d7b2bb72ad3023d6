"""Seed trees and lower bounds for k-regular graphs of girth >= g.

Any k-regular graph of girth >= g contains, around any vertex (odd g) or
edge (even g), a tree of radius floor((g-1)/2) in which internal vertices
have full degree and no two tree paths have merged.  That tree is the
canonical starting point of the exhaustive search, and its order is the
classic lower bound on the order of such graphs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import Graph, MAX_VERTICES


def _validate_kg(k: int, g: int):
    if k < 2:
        raise ValueError(f"degree k={k} must be >= 2")
    if g < 3:
        raise ValueError(f"girth g={g} must be >= 3")


def moore_bound(k: int, g: int) -> int:
    """Minimum order of a k-regular graph with girth >= g."""
    _validate_kg(k, g)
    if g % 2:
        r = (g - 1) // 2
        return 1 + k * sum((k - 1) ** i for i in range(r))
    r = g // 2
    return 2 * sum((k - 1) ** i for i in range(r))


@dataclass(frozen=True)
class SeedTree:
    """Rooted tree forced inside every k-regular girth->=g graph.

    Labels are level-major and parent-minor: vertices are numbered by
    breadth-first order, children of lower-labeled parents first, so the
    labeling is deterministic.
    """

    graph: Graph
    k: int
    g: int
    roots: tuple[int, ...]
    level: np.ndarray
    parent: np.ndarray
    leaves: tuple[int, ...]
    max_level: int

    @property
    def order(self) -> int:
        return self.graph.n

    @property
    def internal_count(self) -> int:
        return self.graph.n - len(self.leaves)


def build_seed_tree(k: int, g: int) -> SeedTree:
    _validate_kg(k, g)
    n = moore_bound(k, g)
    gph = Graph(n)
    level = np.zeros(n, np.int32)
    parent = np.full(n, -1, np.int32)

    if g % 2:
        max_level = (g - 1) // 2
        roots = (0,)
        frontier = [0]
        next_label = 1
        first = True
    else:
        max_level = g // 2 - 1
        roots = (0, 1)
        gph.add_edge(0, 1)
        frontier = [0, 1]
        next_label = 2
        first = False

    for lev in range(1, max_level + 1):
        new = []
        for p in frontier:
            fanout = k if first else k - 1
            for _ in range(fanout):
                c = next_label
                next_label += 1
                gph.add_edge(p, c)
                level[c] = lev
                parent[c] = p
                new.append(c)
        first = False
        frontier = new

    if next_label != n:
        raise AssertionError("tree construction out of step with bound")
    return SeedTree(graph=gph, k=k, g=g, roots=roots, level=level,
                    parent=parent, leaves=tuple(frontier),
                    max_level=max_level)


@dataclass(frozen=True)
class AttachmentPlan:
    """Where edges may be added when growing the tree to order n.

    attach_set is the tree leaves plus all vertices beyond the tree;
    internal tree vertices already have full degree.  required_edges is
    how many edges a k-regular completion must add.
    """

    n: int
    attach_set: tuple[int, ...]
    required_edges: int


def attachment_plan(tree: SeedTree, n: int) -> AttachmentPlan:
    if n < tree.order:
        raise ValueError(f"target order {n} below tree order {tree.order}")
    if n > MAX_VERTICES:
        raise ValueError(f"target order {n} above cap {MAX_VERTICES}")
    if (n * tree.k) % 2:
        raise ValueError(f"no {tree.k}-regular graph on {n} vertices (odd sum)")
    attach = tuple(tree.leaves) + tuple(range(tree.order, n))
    required = (tree.k * n) // 2 - (tree.order - 1)
    return AttachmentPlan(n=n, attach_set=attach, required_edges=required)
