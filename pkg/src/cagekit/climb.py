"""Randomized hill climbing toward a k-regular graph of girth >= g on n
vertices.

One trip: greedily add edges (both endpoints under degree k, endpoint
distance >= g-1, not recently deleted), always choosing a pair of
maximum degree sum with uniform random tie-breaking, until nothing is
addable.  If the graph is now k-regular, done.  Otherwise delete one to
three randomly chosen edges and go again.  Deletion probability is
weighted by edge age, alternating every mode_period trips between
favoring old edges and favoring young ones; an edge deleted within the
tabu window is not re-added.  A run restarts from the empty graph after
max_trips fruitless trips.

All randomness flows through one np.random.default_rng(seed) stream in
Python, so runs reproduce exactly on either kernel backend.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import accel
from .graph import Graph


@dataclass(frozen=True)
class ClimbConfig:
    k: int
    g: int
    n: int
    seed: int
    max_trips: int = 4000
    restarts: int = 3
    mode_period: int = 2000
    tabu: int = 3

    def __post_init__(self):
        if self.k < 2:
            raise ValueError(f"k={self.k} must be >= 2")
        if self.g < 3:
            raise ValueError(f"g={self.g} must be >= 3")
        if self.n < 3:
            raise ValueError(f"n={self.n} must be >= 3")
        if (self.n * self.k) % 2:
            raise ValueError(f"no {self.k}-regular graph on {self.n} "
                             f"vertices (odd degree sum)")
        if self.max_trips < 1 or self.restarts < 1:
            raise ValueError("max_trips and restarts must be >= 1")
        if self.mode_period < 1:
            raise ValueError("mode_period must be >= 1")
        if self.tabu < 0:
            raise ValueError("tabu must be >= 0")


@dataclass
class ClimbResult:
    success: bool
    graph: Graph | None
    trips: int
    attempts: int
    seed: int


class ClimbState:
    """Mutable working graph with the incremental tables the climb needs."""

    def __init__(self, k: int, g: int, n: int):
        self.k, self.g, self.n = k, g, n
        self.cap = g - 1
        self.am = np.zeros((n, n), bool)
        self.deg = np.zeros(n, np.int32)
        self.D = accel.all_pairs_truncated(self.am, self.cap)
        self.added_at: dict[tuple[int, int], int] = {}
        self.deleted_at: dict[tuple[int, int], int] = {}

    def addable_edges(self, trip: int, tabu_window: int):
        """Pairs (u, v), u < v, that may be added right now."""
        room = self.deg < self.k
        mask = (self.D >= self.cap) & room[:, None] & room[None, :]
        mask &= np.triu(np.ones((self.n, self.n), bool), 1)
        for (u, v), t in list(self.deleted_at.items()):
            if trip - t <= tabu_window:
                mask[u, v] = False
            else:
                del self.deleted_at[(u, v)]
        us, vs = np.nonzero(mask)
        return us, vs

    def add_edge(self, u: int, v: int, trip: int):
        self.am[u, v] = self.am[v, u] = True
        self.deg[u] += 1
        self.deg[v] += 1
        accel.update_distances_add(self.D, u, v, self.cap)
        self.added_at[(u, v)] = trip

    def remove_edge(self, u: int, v: int, trip: int):
        self.am[u, v] = self.am[v, u] = False
        self.deg[u] -= 1
        self.deg[v] -= 1
        del self.added_at[(u, v)]
        self.deleted_at[(u, v)] = trip
        self.D = accel.all_pairs_truncated(self.am, self.cap)

    def greedy_fill(self, rng, trip: int, tabu_window: int) -> int:
        """Add max-degree-sum addable edges until none remain."""
        added = 0
        while True:
            us, vs = self.addable_edges(trip, tabu_window)
            if us.size == 0:
                return added
            s = self.deg[us] + self.deg[vs]
            ties = np.nonzero(s == s.max())[0]
            pick = int(ties[rng.integers(ties.size)])
            self.add_edge(int(us[pick]), int(vs[pick]), trip)
            added += 1

    def delete_step(self, rng, trip: int, favor_old: bool, count: int) -> int:
        """Delete up to count edges, sampled without replacement with
        probability proportional to age (favor_old) or 1/age."""
        removed = 0
        for _ in range(count):
            edges = sorted(self.added_at)
            if not edges:
                break
            ages = np.array([trip - self.added_at[e] + 1 for e in edges],
                            float)
            weights = ages if favor_old else 1.0 / ages
            p = weights / weights.sum()
            i = int(rng.choice(len(edges), p=p))
            self.remove_edge(*edges[i], trip)
            removed += 1
        return removed

    def is_regular(self) -> bool:
        return bool((self.deg == self.k).all())

    def to_graph(self) -> Graph:
        gph = Graph(self.n)
        gph.am[:] = self.am
        gph.deg[:] = self.deg
        return gph


def hill_climb(cfg: ClimbConfig) -> ClimbResult:
    rng = np.random.default_rng(cfg.seed)
    total_trips = 0
    for attempt in range(1, cfg.restarts + 1):
        state = ClimbState(cfg.k, cfg.g, cfg.n)
        for trip in range(1, cfg.max_trips + 1):
            total_trips += 1
            state.greedy_fill(rng, trip, cfg.tabu)
            if state.is_regular():
                gph = state.to_graph()
                got = accel.girth_min_cycle(gph.am)
                if got != 0 and got < cfg.g:
                    raise AssertionError(
                        f"climb invariant broken: girth {got} < {cfg.g}")
                return ClimbResult(success=True, graph=gph,
                                   trips=total_trips, attempts=attempt,
                                   seed=cfg.seed)
            favor_old = (trip // cfg.mode_period) % 2 == 0
            d = int(rng.integers(1, 4))
            state.delete_step(rng, trip, favor_old, d)
    return ClimbResult(success=False, graph=None, trips=total_trips,
                       attempts=cfg.restarts, seed=cfg.seed)
