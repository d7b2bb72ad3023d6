"""Canonical forms, certificates, and automorphism groups.

The canonical form is found by individualization-refinement backtracking:
refine a vertex coloring to a fixpoint, pick the first smallest
non-singleton color cell, individualize each member in turn, recurse.
Every discrete coloring yields a packed adjacency form; the minimum form
over the tree is canonical, so two graphs are isomorphic iff their
certificates are equal (exact, not a hash).

Leaves whose form matches the first or best leaf reveal automorphisms.
Those prune the tree in two ways: candidates in one orbit of the group
found so far (restricted to generators fixing the current prefix) are
interchangeable, and an automorphism mapping some prefix vertex onto an
already-tried sibling proves the whole current subtree redundant, so the
search unwinds to that level.

The group order comes from a deterministic Schreier-Sims stabilizer
chain over the discovered generators.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import accel
from .graph import Graph


def _pack_form(am: np.ndarray, cols: np.ndarray) -> bytes:
    """Adjacency of the relabeled graph (vertex v -> position cols[v]),
    upper triangle packed to bytes, order prefixed."""
    n = am.shape[0]
    at_pos = np.empty(n, np.int64)
    at_pos[cols] = np.arange(n)
    b = am[np.ix_(at_pos, at_pos)]
    tri = b[np.triu_indices(n, 1)]
    return n.to_bytes(2, "big") + np.packbits(tri.astype(np.uint8)).tobytes()


def _perm_between(cols_a: np.ndarray, cols_b: np.ndarray) -> np.ndarray:
    """Permutation sigma with sigma[v] = vertex holding, under cols_b, the
    position that v holds under cols_a."""
    n = cols_a.shape[0]
    at_pos_b = np.empty(n, np.int64)
    at_pos_b[cols_b] = np.arange(n)
    return at_pos_b[cols_a]


def _uf_find(parent: list, x: int) -> int:
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


class _CanonSearch:
    def __init__(self, am: np.ndarray):
        self.am = am
        self.n = am.shape[0]
        self.first_form = None
        self.first_cols = None
        self.best_form = None
        self.best_cols = None
        self.gens: list[np.ndarray] = []
        self._gen_keys = set()
        self.prefix: list[int] = []
        self.tried_stack: list[list[int]] = []
        self.abort_level = None

    def run(self):
        cols = accel.refine_colors(self.am, np.zeros(self.n, np.int32))
        self._node(cols)
        return self.best_form, self.best_cols, self.gens

    def _target_cell(self, cols):
        sizes = np.bincount(cols)
        multi = np.nonzero(sizes > 1)[0]
        if multi.size == 0:
            return None
        best = multi[int(np.argmin(sizes[multi]))]
        return np.nonzero(cols == best)[0]

    def _node(self, cols):
        cell = self._target_cell(cols)
        if cell is None:
            self._leaf(cols)
            return
        depth = len(self.prefix)
        tried: list[int] = []
        self.tried_stack.append(tried)
        try:
            uf = None
            uf_ngens = -1
            for u in cell.tolist():
                if tried:
                    if uf_ngens != len(self.gens):
                        uf = self._prefix_stab_uf()
                        uf_ngens = len(self.gens)
                    if uf is not None:
                        ru = _uf_find(uf, u)
                        if any(_uf_find(uf, t) == ru for t in tried):
                            continue
                # separate u below the rest of its class; 2c/2c+1 keeps
                # every color nonnegative (2c-1 would go negative at c=0)
                sub = cols.astype(np.int32) * 2 + 1
                sub[u] -= 1
                self.prefix.append(u)
                self._node(accel.refine_colors(self.am, sub))
                self.prefix.pop()
                tried.append(u)
                if self.abort_level is not None:
                    if self.abort_level == depth:
                        self.abort_level = None
                        continue
                    return
        finally:
            self.tried_stack.pop()

    def _prefix_stab_uf(self):
        fix = [g for g in self.gens
               if all(g[p] == p for p in self.prefix)]
        if not fix:
            return None
        parent = list(range(self.n))
        for g in fix:
            for v in range(self.n):
                a, b = _uf_find(parent, v), _uf_find(parent, int(g[v]))
                if a != b:
                    parent[a] = b
        return parent

    def _leaf(self, cols):
        form = _pack_form(self.am, cols)
        if self.first_form is None:
            self.first_form = form
            self.first_cols = cols
            self.best_form = form
            self.best_cols = cols
            return
        if form == self.first_form:
            self._register(_perm_between(self.first_cols, cols))
        if form < self.best_form:
            self.best_form = form
            self.best_cols = cols
        elif form == self.best_form and form != self.first_form:
            self._register(_perm_between(self.best_cols, cols))

    def _register(self, sigma):
        if (sigma == np.arange(self.n)).all():
            return
        # defensive: a labeling bug would silently corrupt everything past here
        if not np.array_equal(self.am[np.ix_(sigma, sigma)], self.am):
            raise AssertionError("leaf-form collision is not an automorphism")
        key = sigma.tobytes()
        if key not in self._gen_keys:
            self._gen_keys.add(key)
            self.gens.append(sigma)
        inv = np.argsort(sigma)
        for tau in (inv, sigma):
            for lvl, p in enumerate(self.prefix):
                t = int(tau[p])
                if t == p:
                    continue
                if t in self.tried_stack[lvl]:
                    if self.abort_level is None or lvl < self.abort_level:
                        self.abort_level = lvl
                break

    # -- group order ----------------------------------------------------

    @staticmethod
    def group_order(gens: list[np.ndarray], n: int) -> int:
        ident = np.arange(n)
        work = []
        seen = set()
        for g in gens:
            g = np.asarray(g, np.int64)
            if not np.array_equal(g, ident) and g.tobytes() not in seen:
                seen.add(g.tobytes())
                work.append(g)
        if not work:
            return 1

        base: list[int] = []
        strong: list[list[np.ndarray]] = []
        trans: list[dict] = []
        inv_cache: list[dict] = []

        def extend_base(p):
            v = int(np.nonzero(p != ident)[0][0])
            base.append(v)
            strong.append([])
            trans.append({v: ident})
            inv_cache.append({})

        def rebuild(k):
            # extend the orbit, keeping existing coset reps stable
            t = trans[k]
            frontier = list(t.keys())
            while frontier:
                new = []
                for x in frontier:
                    tx = t[x]
                    for g in strong[k]:
                        y = int(g[x])
                        if y not in t:
                            t[y] = g[tx]
                            new.append(y)
                frontier = new

        def sift(p, start):
            for i in range(start, len(base)):
                x = int(p[base[i]])
                t = trans[i].get(x)
                if t is None:
                    return p, i
                inv = inv_cache[i].get(x)
                if inv is None:
                    inv = np.argsort(t)
                    inv_cache[i][x] = inv
                p = inv[p]
            return p, len(base)

        def complete_level(k):
            rebuild(k)
            for x in list(trans[k].keys()):
                ux = trans[k][x]
                for g in strong[k]:
                    y = int(g[x])
                    uy = trans[k][y]
                    inv_uy = np.argsort(uy)
                    sg = inv_uy[g[ux]]
                    res, at = sift(sg, k + 1)
                    if np.array_equal(res, ident):
                        continue
                    if at == len(base):
                        extend_base(res)
                    for i in range(k + 1, at + 1):
                        strong[i].append(res)
                    for i in range(at, k, -1):
                        complete_level(i)

        extend_base(work[0])
        strong[0] = list(work)
        complete_level(0)
        order = 1
        for t in trans:
            order *= len(t)
        return order


@dataclass
class AutReport:
    """Automorphism group summary: exact order, vertex orbits (each
    sorted, listed by smallest member), and the discovered generators."""

    order: int
    orbits: list[tuple[int, ...]]
    generators: list[np.ndarray] = field(repr=False)

    def orbit_sizes(self) -> list[int]:
        return sorted(len(o) for o in self.orbits)


def _run_search(g: Graph):
    return _CanonSearch(g.am).run()


def canonical_form(g: Graph) -> tuple[bytes, np.ndarray]:
    """(certificate bytes, relabeling) where relabeling[v] is the position
    of v in the canonical ordering."""
    form, cols, _ = _run_search(g)
    return form, cols


def certificate(g: Graph) -> bytes:
    return _run_search(g)[0]


def are_isomorphic(a: Graph, b: Graph) -> bool:
    if a.n != b.n or a.edge_count() != b.edge_count():
        return False
    return certificate(a) == certificate(b)


def automorphisms(g: Graph) -> AutReport:
    _, _, gens = _run_search(g)
    order = _CanonSearch.group_order(gens, g.n)
    parent = list(range(g.n))
    for p in gens:
        for v in range(g.n):
            a, b = _uf_find(parent, v), _uf_find(parent, int(p[v]))
            if a != b:
                parent[a] = b
    groups: dict[int, list[int]] = {}
    for v in range(g.n):
        groups.setdefault(_uf_find(parent, v), []).append(v)
    orbits = sorted((tuple(sorted(vs)) for vs in groups.values()),
                    key=lambda o: o[0])
    return AutReport(order=order, orbits=orbits, generators=list(gens))


def group_order(gens, n: int) -> int:
    """Order of the permutation group generated by gens on 0..n-1."""
    return _CanonSearch.group_order(list(gens), n)
