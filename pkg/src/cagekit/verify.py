"""Certification of constructed graphs.

verify() recomputes everything from the adjacency matrix alone: order,
regularity, exact girth, automorphism group order and orbits.  Nothing
is trusted from the producer.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .canon import AutReport, automorphisms
from .graph import Graph

_ELEMENT_LIMIT = 4096


def _all_elements(gens, n: int, limit: int = _ELEMENT_LIMIT):
    """Every group element by closure, or None if the group is larger
    than limit."""
    ident = np.arange(n)
    seen = {ident.tobytes(): ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = g[p]
                key = q.tobytes()
                if key not in seen:
                    if len(seen) >= limit:
                        return None
                    seen[key] = q
                    nxt.append(q)
        frontier = nxt
    return list(seen.values())


@dataclass
class VerifyReport:
    order: int
    k: int
    regular: bool
    girth: int | None           # exact, None = acyclic
    girth_required: int
    aut: AutReport
    involutions_only: bool | None   # None: group too large to enumerate
    expected_order: int | None
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def lines(self) -> list[str]:
        out = [f"order {self.order}" +
               (f" (required {self.expected_order})"
                if self.expected_order is not None else ""),
               f"regular-{self.k} {'yes' if self.regular else 'no'}",
               f"girth {self.girth if self.girth is not None else 'acyclic'}"
               f" (required >= {self.girth_required})",
               f"aut-order {self.aut.order}",
               "orbit-sizes " + " ".join(str(s) for s in self.aut.orbit_sizes())]
        if self.involutions_only is not None:
            out.append(f"involutions-only "
                       f"{'yes' if self.involutions_only else 'no'}")
        for f in self.failures:
            out.append(f"FAIL {f}")
        out.append(f"verdict {'pass' if self.passed else 'fail'}")
        return out


def verify(gph: Graph, k: int, girth_min: int,
           expected_order: int | None = None) -> VerifyReport:
    failures = []
    if expected_order is not None and gph.n != expected_order:
        failures.append(f"order {gph.n} != expected {expected_order}")
    regular = gph.is_regular(k)
    if not regular:
        lo, hi = int(gph.deg.min()), int(gph.deg.max())
        failures.append(f"not {k}-regular (degrees {lo}..{hi})")
    girth = gph.girth()
    if girth is None or girth < girth_min:
        failures.append(f"girth {girth} below required {girth_min}")
    aut = automorphisms(gph)
    involutions_only = None
    elements = _all_elements(aut.generators, gph.n)
    if elements is not None:
        ident = np.arange(gph.n)
        involutions_only = all(
            np.array_equal(p[p], ident) for p in elements)
    return VerifyReport(order=gph.n, k=k, regular=regular, girth=girth,
                        girth_required=girth_min, aut=aut,
                        involutions_only=involutions_only,
                        expected_order=expected_order, failures=failures)
