"""Command line interface.

Exit codes: 0 success / verdict pass, 1 verdict fail or climb failure,
2 usage, configuration, or input errors.

Relative --out and --audit paths resolve against $CAGEKIT_OUT_DIR when
that variable is set; input graph and result files are read as given.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import __version__
from .canon import automorphisms, certificate
from .climb import ClimbConfig, hill_climb
from .formats import parse_graph, write_adjacency
from .seed import attachment_plan, build_seed_tree, moore_bound
from .search import (SearchConfig, merge_results, parse_result, phase1,
                     phase2, search, write_result)
from .verify import verify


def _out_path(p: str) -> Path:
    path = Path(p)
    base = os.environ.get("CAGEKIT_OUT_DIR")
    if base and not path.is_absolute():
        return Path(base) / path
    return path


def _read(p: str) -> str:
    with open(p, "r", encoding="utf-8") as fh:
        return fh.read()


def _write(p: str, text: str):
    path = _out_path(p)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="cagekit",
        description="Search, construct, and certify small k-regular graphs "
                    "with a girth constraint.")
    ap.add_argument("--version", action="version",
                    version="%(prog)s " + __version__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bounds", help="order bound and seed tree facts")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--n", type=int, help="also report the attachment plan "
                                         "for target order n")

    p = sub.add_parser("search", help="exhaustive search at order n")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--l0", type=int, help="subsearch split depth")
    p.add_argument("--l1", type=int, help="subset-rule / store depth")
    p.add_argument("--l2", type=int, help="all-pairs rule depth")
    p.add_argument("--worker", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--phase", type=int, choices=(1, 2),
                   help="two-phase distributed mode (needs --audit)")
    p.add_argument("--audit", help="audit file (written by phase 1, "
                                   "replayed by phase 2)")
    p.add_argument("--no-prune", action="store_true",
                   help="disable the subset pruning rule")
    p.add_argument("--no-symmetry", action="store_true",
                   help="disable twin-equivalence filtering")
    p.add_argument("--out", help="write a result file here")

    p = sub.add_parser("climb", help="randomized hill climb at order n")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--max-trips", type=int, default=4000)
    p.add_argument("--restarts", type=int, default=3)
    p.add_argument("--mode-period", type=int, default=2000)
    p.add_argument("--tabu", type=int, default=3)
    p.add_argument("--out", help="write the found graph here (adjacency)")

    p = sub.add_parser("verify", help="certify a graph file")
    p.add_argument("path")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--g", type=int, required=True,
                   help="required minimum girth")
    p.add_argument("--n", type=int, help="expected order")
    p.add_argument("--format", choices=("adjacency", "edgelist", "auto"),
                   default="auto")

    p = sub.add_parser("canon", help="certificate and automorphisms of a "
                                     "graph file")
    p.add_argument("path")
    p.add_argument("--format", choices=("adjacency", "edgelist", "auto"),
                   default="auto")

    p = sub.add_parser("merge", help="merge worker result files")
    p.add_argument("files", nargs="+")
    p.add_argument("--out", help="write the merged result file here")
    return ap


def _cmd_bounds(args) -> int:
    bound = moore_bound(args.k, args.g)
    tree = build_seed_tree(args.k, args.g)
    print(f"moore-bound {bound}")
    print(f"tree-order {tree.order}")
    print(f"tree-leaves {len(tree.leaves)}")
    print(f"tree-internal {tree.internal_count}")
    if args.n is not None:
        plan = attachment_plan(tree, args.n)
        print(f"attach-set {len(plan.attach_set)}")
        print(f"required-edges {plan.required_edges}")
    return 0


def _cmd_search(args) -> int:
    cfg = SearchConfig(k=args.k, g=args.g, n=args.n,
                       split_depth=args.l0, store_depth=args.l1,
                       pair_depth=args.l2, worker=args.worker,
                       workers=args.workers, prune=not args.no_prune,
                       symmetry=not args.no_symmetry)
    if args.phase is not None:
        if not args.audit:
            raise ValueError("--phase needs --audit FILE")
        audit = _out_path(args.audit)
        if args.phase == 1:
            audit.parent.mkdir(parents=True, exist_ok=True)
            result = phase1(cfg, audit)
        else:
            result = phase2(cfg, audit)
    else:
        result = search(cfg)
    print(result.summary())
    if args.out:
        _write(args.out, write_result(result))
    return 0


def _cmd_climb(args) -> int:
    cfg = ClimbConfig(k=args.k, g=args.g, n=args.n, seed=args.seed,
                      max_trips=args.max_trips, restarts=args.restarts,
                      mode_period=args.mode_period, tabu=args.tabu)
    result = hill_climb(cfg)
    if not result.success:
        print(f"failure trips {result.trips} attempts {result.attempts}")
        return 1
    print(f"success trips {result.trips} attempts {result.attempts}")
    text = write_adjacency(result.graph)
    if args.out:
        _write(args.out, text)
    else:
        sys.stdout.write(text)
    return 0


def _cmd_verify(args) -> int:
    gph = parse_graph(_read(args.path), args.format)
    report = verify(gph, args.k, args.g, expected_order=args.n)
    for line in report.lines():
        print(line)
    return 0 if report.passed else 1


def _cmd_canon(args) -> int:
    gph = parse_graph(_read(args.path), args.format)
    print(f"certificate {certificate(gph).hex()}")
    aut = automorphisms(gph)
    print(f"aut-order {aut.order}")
    print("orbit-sizes " + " ".join(str(s) for s in aut.orbit_sizes()))
    return 0


def _cmd_merge(args) -> int:
    parts = [parse_result(_read(p)) for p in args.files]
    merged = merge_results(parts)
    print(merged.summary())
    if args.out:
        _write(args.out, write_result(merged))
    return 0


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    handlers = {"bounds": _cmd_bounds, "search": _cmd_search,
                "climb": _cmd_climb, "verify": _cmd_verify,
                "canon": _cmd_canon, "merge": _cmd_merge}
    try:
        return handlers[args.command](args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
