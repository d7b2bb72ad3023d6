"""Store of certificates of completed search nodes.

A search node is the seed tree plus a set E of added edges.  Once the
subsearch rooted at a node has been fully explored, every target graph
containing that node (up to isomorphism) has been emitted, so any later
node whose edge set contains an isomorphic copy is redundant.  The store
keeps the certificates of completed nodes bucketed by |E| so the subset
query can skip sizes with no entries at all.
"""

from __future__ import annotations

from itertools import combinations


class CompletedStore:
    def __init__(self):
        self._buckets: dict[int, set[bytes]] = {}
        self.inserted = 0

    def insert(self, depth: int, cert: bytes):
        if depth < 1:
            raise ValueError(f"store depth {depth} must be >= 1")
        self._buckets.setdefault(depth, set()).add(cert)
        self.inserted += 1

    def bucket(self, depth: int) -> frozenset:
        b = self._buckets.get(depth)
        return frozenset() if b is None else b

    def bucket_size(self, depth: int) -> int:
        b = self._buckets.get(depth)
        return 0 if b is None else len(b)

    def __contains__(self, item) -> bool:
        depth, cert = item
        b = self._buckets.get(depth)
        return b is not None and cert in b

    def dump(self) -> str:
        """One line per entry: 'depth hex', sorted for stable output."""
        lines = []
        for depth in sorted(self._buckets):
            for cert in sorted(self._buckets[depth]):
                lines.append(f"{depth} {cert.hex()}")
        return "\n".join(lines) + ("\n" if lines else "")

    @classmethod
    def load(cls, text: str) -> "CompletedStore":
        store = cls()
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) != 2:
                raise ValueError(f"store line {lineno}: expected 'depth hex'")
            try:
                depth = int(parts[0])
                cert = bytes.fromhex(parts[1])
            except ValueError:
                raise ValueError(f"store line {lineno}: bad entry") from None
            store.insert(depth, cert)
        return store


def prune_query(store: CompletedStore, edges, candidate, cert_fn) -> bool:
    """True if some subset of edges+candidate that contains candidate is
    isomorphic to a completed node.

    edges: current added-edge list (tuples, deterministic order).
    candidate: the edge about to be added.
    cert_fn: frozenset-of-edges -> certificate bytes (caller caches).

    Buckets are consulted smallest size first; empty buckets cost one
    dict lookup and skip the whole size.
    """
    m = len(edges)
    for size in range(1, m + 2):
        if store.bucket_size(size) == 0:
            continue
        bucket = store.bucket(size)
        for combo in combinations(edges, size - 1):
            subset = frozenset(combo) | {candidate}
            if cert_fn(subset) in bucket:
                return True
    return False
