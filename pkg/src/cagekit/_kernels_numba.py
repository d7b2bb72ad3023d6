"""Numba-jitted kernel implementations.

Default backend (see accel.py).  Contracts and outputs match
_kernels_numpy exactly; the numpy file carries the doc comments.
"""

import numpy as np
from numba import njit


@njit(cache=True)
def single_source_truncated(am, src, cap):
    n = am.shape[0]
    dist = np.full(n, cap, np.int8)
    dist[src] = 0
    queue = np.empty(n, np.int32)
    queue[0] = src
    head = 0
    tail = 1
    while head < tail:
        u = queue[head]
        head += 1
        du = dist[u]
        if du + 1 >= cap:
            continue
        for x in range(n):
            if am[u, x] and dist[x] == cap:
                dist[x] = du + 1
                queue[tail] = x
                tail += 1
    return dist


@njit(cache=True)
def all_pairs_truncated(am, cap):
    n = am.shape[0]
    out = np.empty((n, n), np.int8)
    for s in range(n):
        out[s] = single_source_truncated(am, s, cap)
    return out


@njit(cache=True)
def update_distances_add(dist, v, w, cap):
    n = dist.shape[0]
    dv = dist[v].copy()
    dw = dist[w].copy()
    cnt = 0
    for x in range(n):
        av = dv[x] + 1
        aw = dw[x] + 1
        if av >= cap and aw >= cap:
            continue
        for y in range(n):
            c1 = av + dw[y]
            c2 = aw + dv[y]
            c = c1 if c1 < c2 else c2
            if c < dist[x, y]:
                cnt += 1
    xs = np.empty(cnt, np.int32)
    ys = np.empty(cnt, np.int32)
    old = np.empty(cnt, np.int8)
    i = 0
    for x in range(n):
        av = dv[x] + 1
        aw = dw[x] + 1
        if av >= cap and aw >= cap:
            continue
        for y in range(n):
            c1 = av + dw[y]
            c2 = aw + dv[y]
            c = c1 if c1 < c2 else c2
            if c < dist[x, y]:
                xs[i] = x
                ys[i] = y
                old[i] = dist[x, y]
                dist[x, y] = np.int8(c)
                i += 1
    return xs, ys, old


@njit(cache=True)
def girth_min_cycle(am):
    n = am.shape[0]
    best = 1 << 30
    dist = np.empty(n, np.int32)
    parent = np.empty(n, np.int32)
    queue = np.empty(n, np.int32)
    for s in range(n):
        for i in range(n):
            dist[i] = -1
        dist[s] = 0
        parent[s] = -1
        queue[0] = s
        head = 0
        tail = 1
        while head < tail:
            u = queue[head]
            head += 1
            du = dist[u]
            if 2 * du >= best:
                break
            for x in range(n):
                if not am[u, x]:
                    continue
                if dist[x] < 0:
                    dist[x] = du + 1
                    parent[x] = u
                    queue[tail] = x
                    tail += 1
                elif x != parent[u] and parent[x] != u:
                    c = du + dist[x] + 1
                    if c < best:
                        best = c
    if best >= (1 << 30):
        return 0
    return best


@njit(cache=True)
def _rank_rows(rows, bound):
    # lexicographic dense ranks via LSD radix sort (stable counting sort per column)
    n, m = rows.shape
    order = np.arange(n)
    tmp = np.empty(n, np.int64)
    cnt = np.empty(bound + 1, np.int64)
    for col in range(m - 1, -1, -1):
        for b in range(bound + 1):
            cnt[b] = 0
        for i in range(n):
            cnt[rows[order[i], col]] += 1
        s = 0
        for b in range(bound + 1):
            t = cnt[b]
            cnt[b] = s
            s += t
        for i in range(n):
            key = rows[order[i], col]
            tmp[cnt[key]] = order[i]
            cnt[key] += 1
        order, tmp = tmp, order
    ranks = np.empty(n, np.int32)
    r = 0
    ranks[order[0]] = 0
    for i in range(1, n):
        a = order[i - 1]
        b = order[i]
        for col in range(m):
            if rows[a, col] != rows[b, col]:
                r += 1
                break
        ranks[b] = r
    return ranks


@njit(cache=True)
def refine_colors(am, colors):
    n = am.shape[0]
    col = colors.astype(np.int32)
    # counting sort wants nonnegative keys; shifting by the minimum
    # preserves the ordered partition, which is all that matters
    mn = col[0]
    for i in range(n):
        if col[i] < mn:
            mn = col[i]
    if mn != 0:
        col = col - mn
    while True:
        rows1 = col.reshape(n, 1).astype(np.int32)
        bound1 = 0
        for i in range(n):
            if col[i] > bound1:
                bound1 = col[i]
        dense = _rank_rows(rows1, bound1 + 1)
        c = 0
        for i in range(n):
            if dense[i] > c:
                c = dense[i]
        c += 1
        if c == n:
            return dense
        counts = np.zeros((n, c + 1), np.int32)
        for u in range(n):
            counts[u, 0] = dense[u]
            for x in range(n):
                if am[u, x]:
                    counts[u, dense[x] + 1] += 1
        new = _rank_rows(counts, n + 1)
        cn = 0
        for i in range(n):
            if new[i] > cn:
                cn = new[i]
        cn += 1
        if cn == c:
            return dense
        col = new
