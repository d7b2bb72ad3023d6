"""Pure-numpy kernel implementations.

Fallback backend selected by CAGEKIT_NO_NUMBA (see accel.py).  Every function
here must return bit-identical results to its _kernels_numba twin; the test
suite enforces parity on random inputs.
"""

import numpy as np


def single_source_truncated(am, src, cap):
    """Distances from src, values clipped to cap.  Returns int8 vector."""
    n = am.shape[0]
    dist = np.full(n, cap, np.int8)
    dist[src] = 0
    frontier = np.zeros(n, bool)
    frontier[src] = True
    seen = frontier.copy()
    d = 0
    while frontier.any() and d + 1 < cap:
        nxt = am[frontier].any(axis=0) & ~seen
        d += 1
        dist[nxt] = d
        seen |= nxt
        frontier = nxt
    return dist


def all_pairs_truncated(am, cap):
    """Truncated distance table; row i = single_source_truncated(am, i, cap)."""
    n = am.shape[0]
    out = np.empty((n, n), np.int8)
    for s in range(n):
        out[s] = single_source_truncated(am, s, cap)
    return out


def update_distances_add(dist, v, w, cap):
    """Relax the truncated distance table in place after adding edge v-w.

    Exact under the cap: any path through the new edge decomposes as
    x..v w..y or x..w v..y with the old table supplying both halves.
    Returns (xs, ys, old) so the caller can undo the mutation.
    """
    dv = dist[v].astype(np.int16)
    dw = dist[w].astype(np.int16)
    cand = np.minimum(dv[:, None] + 1 + dw[None, :],
                      dw[:, None] + 1 + dv[None, :])
    better = cand < dist
    xs, ys = np.nonzero(better)
    xs = xs.astype(np.int32)
    ys = ys.astype(np.int32)
    old = dist[xs, ys].copy()
    dist[xs, ys] = cand[better].astype(np.int8)
    return xs, ys, old


def girth_min_cycle(am):
    """Length of a shortest cycle, or 0 if the graph is acyclic.

    Per-source BFS.  Odd cycles 2d+1 show up as an edge inside the depth-d
    frontier, even cycles 2d+2 as a depth-(d+1) vertex reached from two
    frontier vertices; the minimum over sources is exact.
    """
    n = am.shape[0]
    best = 1 << 30
    for s in range(n):
        frontier = np.zeros(n, bool)
        frontier[s] = True
        seen = frontier.copy()
        d = 0
        while True:
            if 2 * d + 1 >= best:
                break
            f_idx = np.nonzero(frontier)[0]
            if f_idx.size == 0:
                break
            if am[np.ix_(f_idx, f_idx)].any():
                best = 2 * d + 1
                break
            counts = am[:, f_idx].sum(axis=1)
            nxt = (counts > 0) & ~seen
            if 2 * d + 2 < best and (nxt & (counts >= 2)).any():
                best = 2 * d + 2
                break
            seen |= nxt
            frontier = nxt
            d += 1
    return 0 if best >= (1 << 30) else int(best)


def refine_colors(am, colors):
    """Stable color refinement to a fixpoint.

    New colors are the lexicographic dense ranks of the row
    (old color, count of neighbors in color 0, count in color 1, ...),
    which makes the result independent of the input color VALUES (only the
    ordered partition matters) and hereditary under refinement.
    """
    n = am.shape[0]
    col = np.asarray(colors, np.int32)
    amf = am.astype(np.int32)
    while True:
        _, dense = np.unique(col, return_inverse=True)
        dense = dense.astype(np.int32)
        c = int(dense.max()) + 1
        if c == n:
            return dense
        onehot = np.zeros((n, c), np.int32)
        onehot[np.arange(n), dense] = 1
        counts = amf @ onehot
        rows = np.concatenate([dense[:, None], counts], axis=1)
        _, new = np.unique(rows, axis=0, return_inverse=True)
        if int(new.max()) + 1 == c:
            return dense
        col = new.astype(np.int32)
