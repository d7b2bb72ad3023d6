"""Undirected simple graphs on a fixed vertex set 0..n-1.

Adjacency is a dense boolean matrix; degrees are maintained incrementally.
Sized for small dense work (n <= 4096), not for sparse million-vertex
graphs.
"""

from __future__ import annotations

import numpy as np

from . import accel

MAX_VERTICES = 4096


class GraphError(ValueError):
    """Structural violation: bad vertex, duplicate edge, loop, ..."""


class Graph:
    __slots__ = ("n", "am", "deg")

    def __init__(self, n: int):
        if not 1 <= n <= MAX_VERTICES:
            raise GraphError(f"vertex count {n} outside 1..{MAX_VERTICES}")
        self.n = n
        self.am = np.zeros((n, n), bool)
        self.deg = np.zeros(n, np.int32)

    @classmethod
    def from_edges(cls, n: int, edges) -> "Graph":
        g = cls(n)
        for v, w in edges:
            g.add_edge(v, w)
        return g

    def _check_vertex(self, v: int):
        if not 0 <= v < self.n:
            raise GraphError(f"vertex {v} outside 0..{self.n - 1}")

    def add_edge(self, v: int, w: int):
        self._check_vertex(v)
        self._check_vertex(w)
        if v == w:
            raise GraphError(f"loop at {v}")
        if self.am[v, w]:
            raise GraphError(f"duplicate edge {v}-{w}")
        self.am[v, w] = self.am[w, v] = True
        self.deg[v] += 1
        self.deg[w] += 1

    def remove_edge(self, v: int, w: int):
        self._check_vertex(v)
        self._check_vertex(w)
        if not self.am[v, w]:
            raise GraphError(f"edge {v}-{w} not present")
        self.am[v, w] = self.am[w, v] = False
        self.deg[v] -= 1
        self.deg[w] -= 1

    def has_edge(self, v: int, w: int) -> bool:
        self._check_vertex(v)
        self._check_vertex(w)
        return bool(self.am[v, w])

    def neighbors(self, v: int) -> np.ndarray:
        self._check_vertex(v)
        return np.nonzero(self.am[v])[0]

    def degree(self, v: int) -> int:
        self._check_vertex(v)
        return int(self.deg[v])

    def edge_count(self) -> int:
        return int(self.deg.sum()) // 2

    def edges(self):
        """Edges as (v, w) with v < w, lexicographic order."""
        vs, ws = np.nonzero(np.triu(self.am, 1))
        return list(zip(vs.tolist(), ws.tolist()))

    def copy(self) -> "Graph":
        g = Graph.__new__(Graph)
        g.n = self.n
        g.am = self.am.copy()
        g.deg = self.deg.copy()
        return g

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.am, other.am)

    def __hash__(self):
        return hash((self.n, self.am.tobytes()))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.edge_count()})"

    def is_regular(self, k: int) -> bool:
        return bool((self.deg == k).all())

    def girth(self):
        """Length of a shortest cycle, or None if acyclic."""
        v = accel.girth_min_cycle(self.am)
        return None if v == 0 else int(v)

    def truncated_distance(self, v: int, w: int, cap: int) -> int:
        """d(v, w) if < cap, else cap.  Unreachable counts as cap."""
        self._check_vertex(v)
        self._check_vertex(w)
        if cap <= 0:
            raise GraphError(f"cap {cap} must be positive")
        return int(accel.single_source_truncated(self.am, v, cap)[w])

    def distance_table(self, cap: int) -> np.ndarray:
        """All-pairs truncated distances (int8, cap-clipped)."""
        if not 0 < cap <= 120:
            raise GraphError(f"cap {cap} outside 1..120")
        return accel.all_pairs_truncated(self.am, cap)
