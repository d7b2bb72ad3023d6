"""Text serialization of graphs.

Two formats:

adjacency   one line per vertex, ``v: n1 n2 ...``; every vertex 0..n-1
            must appear exactly once and the lists must be symmetric.

edgelist    header ``n m`` then m lines ``u v`` with u < v.

Parsers are strict and report 1-based line numbers; blank lines and lines
starting with ``#`` are skipped in both formats.
"""

from __future__ import annotations

from .graph import Graph


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


def _content_lines(text: str):
    for i, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        yield i, line


def _int(tok: str, lineno: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"expected integer, got {tok!r}", lineno) from None


def parse_adjacency(text: str) -> Graph:
    rows = {}
    order = []
    for lineno, line in _content_lines(text):
        head, sep, rest = line.partition(":")
        if not sep:
            raise ParseError("expected 'v: neighbors'", lineno)
        v = _int(head.strip(), lineno)
        if v in rows:
            raise ParseError(f"vertex {v} listed twice", lineno)
        nbrs = [_int(t, lineno) for t in rest.split()]
        if len(set(nbrs)) != len(nbrs):
            raise ParseError(f"duplicate neighbor in list of {v}", lineno)
        if v in nbrs:
            raise ParseError(f"loop at {v}", lineno)
        rows[v] = (nbrs, lineno)
        order.append(v)
    if not rows:
        raise ParseError("empty graph text")
    n = len(rows)
    missing = [v for v in range(n) if v not in rows]
    if missing:
        raise ParseError(f"vertex ids not contiguous: {min(missing)} missing "
                         f"but {max(rows)} present")
    g = Graph(n)
    for v in order:
        nbrs, lineno = rows[v]
        for w in nbrs:
            if not 0 <= w < n:
                raise ParseError(f"neighbor {w} outside 0..{n - 1}", lineno)
            if w not in rows:
                raise ParseError(f"neighbor {w} has no line", lineno)
            if v not in rows[w][0]:
                raise ParseError(f"asymmetric: {w} in list of {v} "
                                 f"but not vice versa", lineno)
            if v < w:
                g.add_edge(v, w)
    return g


def write_adjacency(g: Graph) -> str:
    lines = []
    for v in range(g.n):
        nbrs = " ".join(str(w) for w in g.neighbors(v))
        lines.append(f"{v}: {nbrs}".rstrip())
    return "\n".join(lines) + "\n"


def parse_edge_list(text: str) -> Graph:
    it = _content_lines(text)
    try:
        lineno, header = next(it)
    except StopIteration:
        raise ParseError("empty graph text") from None
    parts = header.split()
    if len(parts) != 2:
        raise ParseError("header must be 'n m'", lineno)
    n = _int(parts[0], lineno)
    m = _int(parts[1], lineno)
    if n < 1:
        raise ParseError(f"bad vertex count {n}", lineno)
    g = Graph(n)
    count = 0
    for lineno, line in it:
        parts = line.split()
        if len(parts) != 2:
            raise ParseError("expected 'u v'", lineno)
        u = _int(parts[0], lineno)
        v = _int(parts[1], lineno)
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"edge {u}-{v} outside 0..{n - 1}", lineno)
        if u >= v:
            raise ParseError(f"edge {u}-{v} must satisfy u < v", lineno)
        if g.has_edge(u, v):
            raise ParseError(f"duplicate edge {u}-{v}", lineno)
        g.add_edge(u, v)
        count += 1
    if count != m:
        raise ParseError(f"header declares {m} edges, found {count}")
    return g


def write_edge_list(g: Graph) -> str:
    edges = g.edges()
    lines = [f"{g.n} {len(edges)}"]
    lines.extend(f"{u} {v}" for u, v in edges)
    return "\n".join(lines) + "\n"


def sniff_format(text: str) -> str:
    for _, line in _content_lines(text):
        return "adjacency" if ":" in line else "edgelist"
    return "edgelist"


def parse_graph(text: str, fmt: str = "auto") -> Graph:
    if fmt == "auto":
        fmt = sniff_format(text)
    if fmt == "adjacency":
        return parse_adjacency(text)
    if fmt == "edgelist":
        return parse_edge_list(text)
    raise ParseError(f"unknown format {fmt!r}")
