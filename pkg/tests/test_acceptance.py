"""Acceptance gate: one test per top-level claim, each printing a single
PASS/FAIL line (run with -s to see them on success).

The final criterion exercises the large randomized target and takes
minutes; it only runs when CAGEKIT_STRETCH=1 and never gates the suite.
"""

import os
import time
from collections import Counter

import pytest

from cagekit import corpus
from cagekit.canon import certificate
from cagekit.climb import ClimbConfig, hill_climb
from cagekit.search import (SearchConfig, merge_results, phase1, phase2,
                            search)
from cagekit.seed import attachment_plan, build_seed_tree, moore_bound
from cagekit.verify import verify

from oracles import regular_girth_classes


def report(name, ok, detail=""):
    tag = "PASS" if ok else "FAIL"
    print(f"{tag} {name}" + (f" ({detail})" if detail else ""))
    assert ok, f"{name}: {detail}"


def test_acceptance_order_bounds():
    tree = build_seed_tree(4, 7)
    plan = attachment_plan(tree, 67)
    ok = (moore_bound(4, 7) == 53 and tree.order == 53
          and len(tree.leaves) == 36 and tree.internal_count == 17
          and moore_bound(3, 11) == 94
          and plan.required_edges == 82 and len(plan.attach_set) == 50)
    report("order-bounds-and-seed-tree", ok,
           f"bound(4,7)={moore_bound(4, 7)} leaves={len(tree.leaves)} "
           f"bound(3,11)={moore_bound(3, 11)}")


def test_acceptance_record_witness_certifies():
    t0 = time.time()
    g, meta = corpus.load("record-4-7-67")
    rep = verify(g, 4, 7, expected_order=67)
    elapsed = time.time() - t0
    sizes = Counter(rep.aut.orbit_sizes())
    ok = (rep.passed and rep.girth == 7 and rep.aut.order == 4
          and rep.involutions_only
          and sizes == Counter({1: 1, 2: 11, 4: 11})
          and elapsed < 10.0)
    report("record-witness-certifies", ok,
           f"girth={rep.girth} aut={rep.aut.order} "
           f"orbits=1x1,2x11,4x11 in {elapsed:.2f}s")


SEARCH_COUNTS = [
    (3, 5, 4, 0), (3, 5, 6, 0), (3, 5, 8, 0), (3, 5, 10, 1),
    (3, 6, 8, 0), (3, 6, 10, 0), (3, 6, 12, 0), (3, 6, 14, 1),
    (4, 5, 17, 0), (4, 5, 18, 0), (4, 5, 19, 1),
]


def test_acceptance_exhaustive_counts():
    worst = 0.0
    for k, g, n, want in SEARCH_COUNTS:
        t0 = time.time()
        res = search(SearchConfig(k=k, g=g, n=n))
        worst = max(worst, time.time() - t0)
        if len(res.graphs) != want or worst >= 600.0:
            report("exhaustive-class-counts", False,
                   f"({k},{g},{n}) gave {len(res.graphs)}, want {want}")
        for gph in res.graphs:
            rep = verify(gph, k, g, expected_order=n)
            if not rep.passed:
                report("exhaustive-class-counts", False,
                       f"({k},{g},{n}) output fails its own certificate")
    report("exhaustive-class-counts", True,
           f"{len(SEARCH_COUNTS)} targets, slowest {worst:.2f}s")


def test_acceptance_counts_against_independent_oracle():
    checked = []
    for k, g, n in [(3, 5, 8), (3, 5, 10), (3, 5, 12), (3, 6, 14)]:
        want = len(regular_girth_classes(k, g, n))
        got = len(search(SearchConfig(k=k, g=g, n=n)).graphs)
        if got != want:
            report("counts-match-oracle", False,
                   f"({k},{g},{n}): search {got} vs completion oracle {want}")
        checked.append(f"({k},{g},{n})={want}")
    report("counts-match-oracle", True, " ".join(checked))


def test_acceptance_pruning_is_sound():
    for k, g, n in [(3, 5, 10), (3, 6, 14)]:
        configs = [
            SearchConfig(k=k, g=g, n=n, symmetry=False, prune=False),
            SearchConfig(k=k, g=g, n=n, prune=False),
            SearchConfig(k=k, g=g, n=n, store_depth=2, pair_depth=1),
            SearchConfig(k=k, g=g, n=n, store_depth=4, pair_depth=2),
            SearchConfig(k=k, g=g, n=n),
        ]
        results = [search(c) for c in configs]
        certs = [{certificate(x) for x in r.graphs} for r in results]
        if any(c != certs[0] for c in certs):
            report("pruning-layers-sound", False, f"({k},{g},{n}) cert drift")
        nodes = [r.nodes for r in results]
        if any(m > nodes[0] for m in nodes[1:]):
            report("pruning-layers-sound", False,
                   f"({k},{g},{n}) pruning grew the tree: {nodes}")
    report("pruning-layers-sound", True,
           "same classes under 5 configurations on (3,5,10) and (3,6,14)")


def test_acceptance_two_phase_reproduces_inline(tmp_path):
    cfg = SearchConfig(k=3, g=5, n=12)
    inline = search(cfg)
    audit = tmp_path / "a.audit"
    phase1(cfg, audit)
    replay = phase2(cfg, audit)
    phase1(cfg, tmp_path / "b.audit")
    ok = (replay.nodes == inline.nodes and replay.prunes == inline.prunes
          and replay.subsearch_total == inline.subsearch_total
          and {certificate(x) for x in replay.graphs} ==
              {certificate(x) for x in inline.graphs}
          and audit.read_bytes() == (tmp_path / "b.audit").read_bytes())
    report("two-phase-exact-replay", ok,
           f"nodes {replay.nodes}={inline.nodes}, audits byte-identical")


def test_acceptance_split_is_complete(tmp_path):
    base = SearchConfig(k=3, g=5, n=12)
    inline = search(base)
    audit = tmp_path / "a.audit"
    phase1(base, audit)
    for workers in (2, 3, 5):
        parts, seen = [], []
        for w in range(workers):
            cfg = SearchConfig(k=3, g=5, n=12, worker=w, workers=workers)
            part = phase2(cfg, audit)
            parts.append(part)
            seen.extend(part.subsearch_indices)
        if sorted(seen) != list(range(inline.subsearch_total)):
            report("split-workers-complete", False,
                   f"N={workers} indices {sorted(seen)}")
        merged = merge_results(parts)
        if {certificate(x) for x in merged.graphs} != \
           {certificate(x) for x in inline.graphs}:
            report("split-workers-complete", False, f"N={workers} lost graphs")
    report("split-workers-complete", True,
           f"N=2,3,5 partition {inline.subsearch_total} subsearches")


def test_acceptance_randomized_construction_statistics():
    t0 = time.time()
    stats = []
    for k, g, n, floor in [(3, 5, 10, 50), (4, 5, 19, 50)]:
        wins = 0
        for seed in range(100):
            res = hill_climb(ClimbConfig(k=k, g=g, n=n, seed=seed))
            if res.success:
                rep = verify(res.graph, k, g, expected_order=n)
                if not rep.passed:
                    report("randomized-construction", False,
                           f"({k},{g},{n}) seed {seed} output not certified")
                wins += 1
        if wins < floor:
            report("randomized-construction", False,
                   f"({k},{g},{n}) only {wins}/100 successes")
        stats.append(f"({k},{g},{n})={wins}/100")
    elapsed = time.time() - t0
    ok = elapsed < 900.0
    report("randomized-construction", ok,
           " ".join(stats) + f" in {elapsed:.0f}s")


@pytest.mark.skipif(os.environ.get("CAGEKIT_STRETCH") != "1",
                    reason="long randomized target, enable with "
                           "CAGEKIT_STRETCH=1")
def test_acceptance_stretch_large_target():
    # the 67-vertex degree-4 girth-7 target; the claim under test is
    # conditional: any run that succeeds must land on the shipped record
    # graph (certificate equality, so any isomorphic copy counts).  The
    # climb itself hits only occasionally even at long budgets (measured:
    # 0/2 runs at 600k trips, ~16 min each on one core), so exhausting
    # the budget without a hit skips rather than passes; nothing was
    # exercised, and the criterion does not gate on finding one.
    record = certificate(corpus.load("record-4-7-67"))
    seeds = (10, 11, 12, 13)
    for seed in seeds:
        res = hill_climb(ClimbConfig(k=4, g=7, n=67, seed=seed,
                                     max_trips=600000, restarts=1,
                                     mode_period=2000, tabu=3))
        if res.success:
            rep = verify(res.graph, 4, 7, expected_order=67)
            same = certificate(res.graph) == record
            report("stretch-67-vertex-target", rep.passed and same,
                   f"seed {seed}, trips {res.trips}, "
                   f"certificate match {same}")
            return
    pytest.skip(f"no success in {len(seeds)} seeds at 600k trips; "
                "the certificate-equality claim binds only on success")
