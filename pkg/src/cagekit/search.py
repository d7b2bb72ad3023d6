"""Exhaustive isomorph-pruned backtracking for k-regular graphs of girth
at least g on n vertices.

Every such graph contains the seed tree (seed.build_seed_tree), so the
search fixes the tree and adds edges one at a time inside the attachment
set.  An edge v-w is addable when both endpoints are below degree k and
their truncated distance is at least g-1.  At each node the most
restricted deficient vertex (fewest candidate partners) is branched on;
after a branch returns, its edge is excluded from the rest of this
node's subtree, which kills label-identical duplicates.

Two further reductions:

* twin equivalence (symmetry=True): candidate partners lying in
  untouched, interchangeable tree branches (or among untouched outside
  vertices) are represented by their least member only.  A swap of two
  untouched sibling subtrees of the same shape is an automorphism of the
  current node fixing everything else, so skipped candidates produce
  only isomorphic duplicates.

* subset pruning (prune=True): when a candidate edge would create an
  edge subset isomorphic to an already fully-explored node, the
  candidate is excluded (store.prune_query).  Applied to all available
  pairs while |E| <= pair_depth, and to the chosen vertex's candidates
  only while |E| <= store_depth; completed nodes at depths
  1..store_depth enter the store.

Distributed operation reproduces the two-phase scheme: phase1 runs the
top of the tree (depth <= store_depth) single-process and writes every
prune to an audit file; phase2 replays the audit without recomputing
certificates, counts subsearches crossing depth split_depth, and each of
N workers explores the subsearches congruent to its index mod N.
A single-pass search combining the subset rule with multiple workers is
refused: worker-local stores would diverge and the rule would no longer
be sound.
"""

from __future__ import annotations

import hashlib
import os
from dataclasses import dataclass

import numpy as np

from . import accel
from .canon import certificate
from .graph import Graph
from .seed import attachment_plan, build_seed_tree, moore_bound
from .store import CompletedStore, prune_query

AUDIT_VERSION = 1


@dataclass(frozen=True)
class SearchConfig:
    k: int
    g: int
    n: int
    split_depth: int | None = None   # l0: subsearch counting depth
    store_depth: int | None = None   # l1: subset rule + store ceiling
    pair_depth: int | None = None    # l2: all-pairs rule ceiling
    worker: int = 0
    workers: int = 1
    prune: bool = True
    symmetry: bool = True

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"n={self.n} must be >= 1")
        if self.workers < 1:
            raise ValueError(f"workers={self.workers} must be >= 1")
        if not 0 <= self.worker < self.workers:
            raise ValueError(f"worker={self.worker} outside 0..{self.workers - 1}")
        for name in ("split_depth", "store_depth", "pair_depth"):
            v = getattr(self, name)
            if v is not None and v < 0:
                raise ValueError(f"{name}={v} must be >= 0")
        if (self.store_depth is not None and self.pair_depth is not None
                and self.store_depth < self.pair_depth):
            raise ValueError("store_depth (l1) must be >= pair_depth (l2)")


def default_levels(required_edges: int) -> tuple[int, int, int]:
    """(split_depth, store_depth, pair_depth) defaults for m added edges."""
    m = required_edges
    return (-(-m // 2), -(-m // 3), -(-m // 8))


@dataclass
class SearchResult:
    k: int
    g: int
    n: int
    graphs: list[Graph]
    certs: list[bytes]
    nodes: int
    prunes: int
    subsearch_total: int = 0
    subsearch_indices: list[int] | None = None

    def summary(self) -> str:
        lines = [f"graphs {len(self.graphs)}", f"nodes {self.nodes}",
                 f"prunes {self.prunes}"]
        if self.subsearch_total:
            lines.append(f"subsearches {self.subsearch_total}")
        if self.subsearch_indices is not None:
            lines.append(f"owned {len(self.subsearch_indices)}")
        return "\n".join(lines)


class _AuditWriter:
    def __init__(self, path, cfg: SearchConfig, l1: int, l2: int):
        self.fh = open(path, "w", encoding="ascii", newline="\n")
        self.hash = hashlib.sha256()
        self._emit(f"{cfg.k} {cfg.g} {cfg.n} {l1} {l2} {AUDIT_VERSION}\n")
        self._emit(f"# symmetry {int(cfg.symmetry)}\n")

    def _emit(self, s: str):
        self.fh.write(s)
        self.hash.update(s.encode("ascii"))

    def record(self, addr: list, v: int, w: int):
        toks = [str(len(addr))] + [str(a) for a in addr] + [str(v), str(w)]
        self._emit(" ".join(toks) + "\n")

    def close(self):
        self.fh.write(f"checksum {self.hash.hexdigest()}\n")
        self.fh.close()

    def abort(self):
        # no checksum line: phase2 will refuse the file
        self.fh.write("aborted\n")
        self.fh.close()


class AuditError(ValueError):
    pass


def load_audit(path, cfg: SearchConfig, l1: int, l2: int) -> dict:
    """Parse + checksum-verify an audit file; map node address -> pairs."""
    with open(path, "rb") as fh:
        data = fh.read()
    pos = data.rfind(b"\nchecksum ")
    if pos < 0:
        raise AuditError("audit file has no checksum line (aborted phase 1?)")
    body = data[: pos + 1]
    tail = data[pos + 1:].decode("ascii", "replace").strip()
    want = tail.split()
    if len(want) != 2 or want[0] != "checksum":
        raise AuditError("malformed checksum line")
    if hashlib.sha256(body).hexdigest() != want[1]:
        raise AuditError("audit checksum mismatch")
    lines = body.decode("ascii").splitlines()
    if not lines:
        raise AuditError("empty audit file")
    head = lines[0].split()
    if len(head) != 6:
        raise AuditError("malformed audit header")
    k, g, n, fl1, fl2, ver = (int(t) for t in head)
    if ver != AUDIT_VERSION:
        raise AuditError(f"unsupported audit version {ver}")
    if (k, g, n) != (cfg.k, cfg.g, cfg.n) or (fl1, fl2) != (l1, l2):
        raise AuditError(
            f"audit header (k={k} g={g} n={n} l1={fl1} l2={fl2}) does not "
            f"match this configuration")
    records: dict[tuple, list] = {}
    for raw in lines[1:]:
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            toks = line[1:].split()
            if toks[:1] == ["symmetry"] and bool(int(toks[1])) != cfg.symmetry:
                raise AuditError("audit symmetry flag does not match")
            continue
        toks = line.split()
        length = int(toks[0])
        if len(toks) != length + 3:
            raise AuditError(f"malformed audit record: {line!r}")
        addr = tuple(int(t) for t in toks[1:1 + length])
        v, w = int(toks[-2]), int(toks[-1])
        records.setdefault(addr, []).append((v, w))
    return records


class SearchEngine:
    """One traversal.  mode: 'inline', 'phase1', or 'phase2'."""

    def __init__(self, cfg: SearchConfig, mode: str = "inline",
                 audit_writer: _AuditWriter | None = None,
                 audit_map: dict | None = None):
        if mode not in ("inline", "phase1", "phase2"):
            raise ValueError(f"bad mode {mode!r}")
        self.cfg = cfg
        self.mode = mode
        self.k, self.g, self.n = cfg.k, cfg.g, cfg.n
        self.cap = cfg.g - 1
        self.tree = build_seed_tree(cfg.k, cfg.g)
        self.plan = attachment_plan(self.tree, cfg.n)
        self.m_required = self.plan.required_edges

        d0, d1, d2 = default_levels(self.m_required)
        self.l0 = cfg.split_depth if cfg.split_depth is not None else d0
        self.l1 = cfg.store_depth if cfg.store_depth is not None else d1
        self.l2 = cfg.pair_depth if cfg.pair_depth is not None else d2
        if self.l1 < self.l2:
            raise ValueError("store_depth (l1) must be >= pair_depth (l2)")
        self.rule_on = cfg.prune and self.l1 > 0

        if cfg.workers > 1:
            if mode == "inline" and self.rule_on:
                raise ValueError(
                    "workers>1 with the subset rule needs the two-phase "
                    "scheme (phase1 then phase2); a single pass would use "
                    "diverging worker-local stores")
            if mode != "phase1" and self.l0 <= self.l1 and self.rule_on:
                raise ValueError("split_depth (l0) must exceed store_depth "
                                 "(l1) when workers > 1")

        n = self.n
        t = self.tree
        self.am = np.zeros((n, n), bool)
        self.deg = np.zeros(n, np.int32)
        for v, w in t.graph.edges():
            self.am[v, w] = self.am[w, v] = True
            self.deg[v] += 1
            self.deg[w] += 1
        self.D = accel.all_pairs_truncated(self.am, self.cap)
        self.marked = np.zeros((n, n), bool)
        self.in_attach = np.zeros(n, bool)
        self.in_attach[list(self.plan.attach_set)] = True
        self.outside_start = t.order

        # ancestry tables for twin detection
        L = t.max_level
        self.anc = np.full((L + 1, n), -1, np.int32)
        for x in range(t.order):
            a = x
            for lev in range(int(t.level[x]), -1, -1):
                self.anc[lev, x] = a
                a = int(t.parent[a]) if t.parent[a] >= 0 else a
        groups: list[list[int]] = []
        self.group_of = np.full(n, -1, np.int32)
        if len(t.roots) == 2:
            groups.append(list(t.roots))
            self.group_of[list(t.roots)] = 0
        else:
            groups.append([t.roots[0]])
            self.group_of[t.roots[0]] = 0
        for p in range(t.order):
            kids = [c for c in t.graph.neighbors(p).tolist()
                    if t.parent[c] == p]
            if kids:
                self.group_of[kids] = len(groups)
                groups.append(kids)
        self.groups = groups
        self.touch = np.zeros(n, np.int32)

        self.E: list[tuple[int, int]] = []
        self.addr: list[int] = []
        self.journals: list = []
        self.nodes = 0
        self.prunes = 0
        self.sub_count = 0
        self.my_subsearches: list[int] = []
        self.results: dict[bytes, Graph] = {}

        self.store = CompletedStore() if (self.rule_on and mode != "phase2") \
            else None
        self.cert_cache: dict[frozenset, bytes] = {}
        self.audit_writer = audit_writer
        self.audit_map = audit_map if audit_map is not None else {}

    # -- incremental state ------------------------------------------------

    def _add_edge(self, v, w):
        self.am[v, w] = self.am[w, v] = True
        self.deg[v] += 1
        self.deg[w] += 1
        self.journals.append(accel.update_distances_add(self.D, v, w, self.cap))
        self.E.append((v, w))
        for u in (v, w):
            a = u
            while 0 <= a < self.outside_start:
                self.touch[a] += 1
                a = int(self.tree.parent[a])

    def _remove_last_edge(self):
        v, w = self.E.pop()
        self.am[v, w] = self.am[w, v] = False
        self.deg[v] -= 1
        self.deg[w] -= 1
        xs, ys, old = self.journals.pop()
        self.D[xs, ys] = old
        for u in (v, w):
            a = u
            while 0 <= a < self.outside_start:
                self.touch[a] -= 1
                a = int(self.tree.parent[a])

    def _partial_cert(self, edge_set: frozenset) -> bytes:
        cert = self.cert_cache.get(edge_set)
        if cert is None:
            gph = Graph(self.n)
            gph.am[:self.tree.graph.n, :self.tree.graph.n] = self.tree.graph.am
            for v, w in edge_set:
                gph.am[v, w] = gph.am[w, v] = True
            gph.deg = gph.am.sum(axis=1).astype(np.int32)
            cert = certificate(gph)
            self.cert_cache[edge_set] = cert
        return cert

    # -- eligibility ------------------------------------------------------

    def _base_rows(self, verts):
        """Eligibility matrix: rows for verts, True where the pair is
        addable (attachment set, degree room, distance, unmarked)."""
        ok_col = self.in_attach & (self.deg < self.k)
        rows = (self.D[verts] >= self.cap) & ~self.marked[verts] & ok_col
        rows[np.arange(len(verts)), verts] = False
        return rows

    def _twin_redundant_rows(self, verts):
        """rows[i, w] True when w is a twin duplicate for branch vertex
        verts[i]: some untouched ancestor subtree of w has an untouched
        lesser same-shape sibling avoiding verts[i], or w is a degree-0
        outside vertex other than the representative."""
        n = self.n
        nv = len(verts)
        red = np.zeros((nv, n), bool)
        big = n + 7

        ngroups = len(self.groups)
        m1 = np.full(ngroups, big, np.int64)
        m2 = np.full(ngroups, big, np.int64)
        for gi, members in enumerate(self.groups):
            for c in members:
                if self.touch[c] == 0:
                    if m1[gi] == big:
                        m1[gi] = c
                    else:
                        m2[gi] = c
                        break

        for lev in range(1, self.tree.max_level + 1):
            A = self.anc[lev]
            valid = A >= 0
            Ac = np.where(valid, A, 0)
            gm1 = m1[self.group_of[Ac]]
            gm2 = m2[self.group_of[Ac]]
            untouched = self.touch[Ac] == 0
            va = self.anc[lev][verts].astype(np.int64)  # -1 when not in subtree
            hit = ((gm1[None, :] < A[None, :]) & (gm1[None, :] != va[:, None])) \
                | ((gm1[None, :] == va[:, None]) & (gm2[None, :] < A[None, :]))
            red |= (valid & untouched)[None, :] & (A[None, :] != va[:, None]) & hit

        out0 = np.zeros(n, bool)
        out0[self.outside_start:] = self.deg[self.outside_start:] == 0
        if out0.any():
            outs = np.nonzero(out0)[0]
            o1 = int(outs[0])
            o2 = int(outs[1]) if len(outs) > 1 else -1
            ids = np.arange(n)
            for i, v in enumerate(verts):
                rep = o1 if v != o1 else o2
                if rep >= 0:
                    red[i] |= out0 & (ids != rep)
        return red

    def eligible_edges(self, v: int):
        """Candidate partners for v under the current node, honouring the
        symmetry setting.  Probe for tests and tooling."""
        rows = self._base_rows(np.array([v]))
        if self.cfg.symmetry:
            rows &= ~self._twin_redundant_rows(np.array([v]))
        return np.nonzero(rows[0])[0].tolist()

    def _select(self):
        """(v, candidate list) for the most restricted deficient vertex,
        or None when the node is dead (a vertex cannot be finished or the
        chosen vertex has no candidates)."""
        verts = np.nonzero(self.deg < self.k)[0]
        if verts.size == 0:
            return None
        base = self._base_rows(verts)
        base_counts = base.sum(axis=1)
        need = self.k - self.deg[verts]
        if (base_counts < need).any():
            return None
        if self.cfg.symmetry:
            sel = base & ~self._twin_redundant_rows(verts)
        else:
            sel = base
        counts = sel.sum(axis=1)
        i = int(np.argmin(counts))     # first minimum; verts ascending
        if counts[i] == 0:
            return None
        v = int(verts[i])
        return v, np.nonzero(sel[i])[0].tolist()

    def select_branch_vertex(self):
        sel = self._select()
        return None if sel is None else sel[0]

    # -- subset rule -------------------------------------------------------

    def _query(self, v, w) -> bool:
        return prune_query(self.store, self.E, (v, w), self._partial_cert)

    def _mark(self, v, w, node_marks):
        self.marked[v, w] = self.marked[w, v] = True
        node_marks.append((v, w))
        self.prunes += 1

    def _rule_all_pairs(self, node_marks):
        if self.mode == "phase2":
            for v, w in self.audit_map.get(tuple(self.addr), ()):
                self._mark(v, w, node_marks)
            return
        verts = np.nonzero(self.deg < self.k)[0]
        base = self._base_rows(verts)
        pairs = []
        for i, v in enumerate(verts.tolist()):
            ws = np.nonzero(base[i])[0]
            pairs.extend((v, int(w)) for w in ws[ws > v])
        for v, w in pairs:
            if self._query(v, w):
                self._mark(v, w, node_marks)
                if self.audit_writer is not None:
                    self.audit_writer.record(self.addr, v, w)

    def _rule_next_edge(self, v, cands, node_marks):
        if self.mode == "phase2":
            dropped = self.audit_map.get(tuple(self.addr), ())
            for a, b in dropped:
                self._mark(a, b, node_marks)
            gone = {b for a, b in dropped if a == v} | \
                   {a for a, b in dropped if b == v}
            return [w for w in cands if w not in gone]
        kept = []
        for w in cands:
            if self._query(v, w):
                self._mark(v, w, node_marks)
                if self.audit_writer is not None:
                    self.audit_writer.record(self.addr, v, w)
            else:
                kept.append(w)
        return kept

    # -- traversal ---------------------------------------------------------

    def _complete(self):
        gph = Graph(self.n)
        gph.am[:] = self.am
        gph.deg[:] = self.deg
        cert = certificate(gph)
        if cert not in self.results:
            self.results[cert] = gph

    def _visit(self):
        self.nodes += 1
        depth = len(self.E)

        if depth == self.l0:
            idx = self.sub_count
            self.sub_count += 1
            if self.cfg.workers > 1:
                if idx % self.cfg.workers != self.cfg.worker:
                    return
                self.my_subsearches.append(idx)

        if depth == self.m_required:
            self._complete()
            return

        node_marks: list[tuple[int, int]] = []
        if self.rule_on and depth <= self.l2:
            self._rule_all_pairs(node_marks)

        sel = self._select()
        if sel is not None:
            v, cands = sel
            if self.rule_on and self.l2 < depth <= self.l1:
                cands = self._rule_next_edge(v, cands, node_marks)
            if not (self.mode == "phase1" and depth == self.l1):
                for i, w in enumerate(cands):
                    self._add_edge(v, w)
                    self.addr.append(i)
                    self._visit()
                    self.addr.pop()
                    self._remove_last_edge()
                    self.marked[v, w] = self.marked[w, v] = True
                    node_marks.append((v, w))

        if (self.store is not None and 1 <= depth <= self.l1):
            self.store.insert(depth, self._partial_cert(frozenset(self.E)))

        for v, w in node_marks:
            self.marked[v, w] = self.marked[w, v] = False

    def run(self) -> SearchResult:
        self._visit()
        graphs = list(self.results.values())
        certs = list(self.results.keys())
        indices = self.my_subsearches if self.cfg.workers > 1 else None
        return SearchResult(k=self.k, g=self.g, n=self.n, graphs=graphs,
                            certs=certs, nodes=self.nodes, prunes=self.prunes,
                            subsearch_total=self.sub_count,
                            subsearch_indices=indices)


def _empty_result(cfg: SearchConfig) -> SearchResult:
    return SearchResult(k=cfg.k, g=cfg.g, n=cfg.n, graphs=[], certs=[],
                        nodes=0, prunes=0, subsearch_total=0,
                        subsearch_indices=[] if cfg.workers > 1 else None)


def _below_bound(cfg: SearchConfig) -> bool:
    # no k-regular girth>=g graph exists below the ball-counting bound
    return cfg.n < moore_bound(cfg.k, cfg.g)


def search(cfg: SearchConfig) -> SearchResult:
    """Single-pass search.  workers>1 is allowed only with prune=False."""
    if _below_bound(cfg):
        return _empty_result(cfg)
    return SearchEngine(cfg, mode="inline").run()


def phase1(cfg: SearchConfig, audit_path) -> SearchResult:
    """Run the shared top of the tree (depth <= store_depth), recording
    every subset-rule prune to audit_path.  Single process by design."""
    if _below_bound(cfg):
        writer = _AuditWriter(audit_path, cfg, 0, 0)
        writer.close()
        return _empty_result(cfg)
    probe = SearchEngine(cfg, mode="phase1")
    writer = _AuditWriter(audit_path, cfg, probe.l1, probe.l2)
    engine = SearchEngine(cfg, mode="phase1", audit_writer=writer)
    try:
        result = engine.run()
    except BaseException:
        writer.abort()
        raise
    writer.close()
    return result


def phase2(cfg: SearchConfig, audit_path) -> SearchResult:
    """Replay a phase-1 audit and run this worker's share of subsearches."""
    if not cfg.prune:
        raise ValueError("phase2 replays an audit; it needs prune=True")
    if _below_bound(cfg):
        return _empty_result(cfg)
    probe = SearchEngine(cfg, mode="phase2")
    audit_map = load_audit(audit_path, cfg, probe.l1, probe.l2)
    engine = SearchEngine(cfg, mode="phase2", audit_map=audit_map)
    return engine.run()


# -- result files ----------------------------------------------------------


def write_result(result: SearchResult) -> str:
    lines = [f"cagekit-result 1",
             f"k {result.k}",
             f"g {result.g}",
             f"n {result.n}",
             f"nodes {result.nodes}",
             f"prunes {result.prunes}",
             f"subsearch-total {result.subsearch_total}"]
    if result.subsearch_indices is not None:
        lines.append("subsearch-indices " +
                     " ".join(str(i) for i in result.subsearch_indices))
    lines.append(f"graphs {len(result.graphs)}")
    for i, (gph, cert) in enumerate(zip(result.graphs, result.certs)):
        lines.append(f"graph {i}")
        lines.append(f"cert {cert.hex()}")
        edges = gph.edges()
        lines.append(f"edges {len(edges)}")
        lines.extend(f"{u} {v}" for u, v in edges)
    lines.append("end")
    return "\n".join(lines) + "\n"


class ResultParseError(ValueError):
    pass


def parse_result(text: str) -> SearchResult:
    try:
        return _parse_result(text)
    except ResultParseError:
        raise
    except ValueError as exc:
        # bad integers, bad hex, or edges a Graph refuses all surface here
        raise ResultParseError(f"malformed result file: {exc}") from exc


def _parse_result(text: str) -> SearchResult:
    lines = [ln.strip() for ln in text.splitlines()
             if ln.strip() and not ln.strip().startswith("#")]
    pos = 0

    def take():
        nonlocal pos
        if pos >= len(lines):
            raise ResultParseError("truncated result file")
        ln = lines[pos]
        pos += 1
        return ln

    def take_kv(key):
        ln = take()
        parts = ln.split()
        if parts[0] != key:
            raise ResultParseError(f"expected {key!r}, got {ln!r}")
        return parts[1:]

    if take() != "cagekit-result 1":
        raise ResultParseError("not a cagekit result file")
    k = int(take_kv("k")[0])
    g = int(take_kv("g")[0])
    n = int(take_kv("n")[0])
    nodes = int(take_kv("nodes")[0])
    prunes = int(take_kv("prunes")[0])
    sub_total = int(take_kv("subsearch-total")[0])
    indices = None
    if pos < len(lines) and lines[pos].startswith("subsearch-indices"):
        indices = [int(t) for t in take().split()[1:]]
    count = int(take_kv("graphs")[0])
    graphs, certs = [], []
    for i in range(count):
        if take_kv("graph")[0] != str(i):
            raise ResultParseError("graph blocks out of order")
        cert = bytes.fromhex(take_kv("cert")[0])
        ecount = int(take_kv("edges")[0])
        gph = Graph(n)
        for _ in range(ecount):
            u, v = (int(t) for t in take().split())
            gph.add_edge(u, v)
        if certificate(gph) != cert:
            raise ResultParseError(f"stored certificate of graph {i} does "
                                   f"not match its edges")
        graphs.append(gph)
        certs.append(cert)
    if take() != "end":
        raise ResultParseError("missing end marker")
    return SearchResult(k=k, g=g, n=n, graphs=graphs, certs=certs,
                        nodes=nodes, prunes=prunes,
                        subsearch_total=sub_total,
                        subsearch_indices=indices)


def merge_results(parts: list[SearchResult]) -> SearchResult:
    """Union worker results of one configuration, deduplicating by
    certificate."""
    if not parts:
        raise ValueError("nothing to merge")
    key = (parts[0].k, parts[0].g, parts[0].n)
    for p in parts[1:]:
        if (p.k, p.g, p.n) != key:
            raise ValueError(f"cannot merge results for {(p.k, p.g, p.n)} "
                             f"into {key}")
    totals = {p.subsearch_total for p in parts}
    if len(totals) != 1:
        raise ValueError(f"subsearch totals disagree: {sorted(totals)}; "
                         f"parts come from different configurations")
    seen: dict[bytes, Graph] = {}
    for p in parts:
        for cert, gph in zip(p.certs, p.graphs):
            if cert not in seen:
                seen[cert] = gph
    indices = None
    if all(p.subsearch_indices is not None for p in parts):
        indices = sorted(i for p in parts for i in p.subsearch_indices)
    return SearchResult(k=key[0], g=key[1], n=key[2],
                        graphs=list(seen.values()), certs=list(seen.keys()),
                        nodes=sum(p.nodes for p in parts),
                        prunes=sum(p.prunes for p in parts),
                        subsearch_total=parts[0].subsearch_total,
                        subsearch_indices=indices)
