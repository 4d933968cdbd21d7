"""Edge-list and graph6 readers/writers.

Edge-list: first line ``"n m"``, then ``m`` lines ``"u v"`` with 0-based labels.
graph6: McKay's ASCII format (as written by nauty's ``geng``), optionally
prefixed with ``>>graph6<<``.
"""

from __future__ import annotations

from pathlib import Path
from typing import Iterator

from .errors import ParseError
from .graph import Graph

FORMATS = ("edge-list", "graph6")
G6_HEADER = ">>graph6<<"


def parse_graph(text: str, format: str = "edge-list") -> Graph:
    if format == "edge-list":
        return _parse_edge_list(text)
    if format == "graph6":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if len(lines) != 1:
            raise ParseError(f"expected exactly one graph6 line, got {len(lines)}")
        return parse_graph6(lines[0])
    raise ValueError(f"unknown graph format {format!r}; expected one of {FORMATS}")


def emit_graph(G: Graph, format: str = "edge-list") -> str:
    if format == "edge-list":
        edges = G.edges()
        return "".join([f"{G.n} {len(edges)}\n"] + [f"{u} {v}\n" for u, v in edges])
    if format == "graph6":
        return emit_graph6(G) + "\n"
    raise ValueError(f"unknown graph format {format!r}; expected one of {FORMATS}")


def _parse_edge_list(text: str) -> Graph:
    rows = [
        (lineno, line.split())
        for lineno, line in enumerate(text.splitlines(), start=1)
        if line.strip() and not line.lstrip().startswith("#")
    ]
    if not rows:
        raise ParseError("line 1: empty edge list (missing 'n m' header)")
    lineno, head = rows[0]
    n, m = _ints(head, lineno, 2)
    if n < 0 or m < 0:
        raise ParseError(f"line {lineno}: negative header values")
    body = rows[1:]
    if len(body) != m:
        raise ParseError(f"line {lineno}: header declares {m} edges, found {len(body)}")
    seen = set()
    edges = []
    for lineno, fields in body:
        u, v = _ints(fields, lineno, 2)
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"line {lineno}: label out of range 0..{n - 1}: {u} {v}")
        if u == v:
            raise ParseError(f"line {lineno}: self-loop at {u}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise ParseError(f"line {lineno}: duplicate edge {key[0]} {key[1]}")
        seen.add(key)
        edges.append(key)
    return Graph.from_edges(n, edges)


def _ints(fields: list[str], lineno: int, count: int) -> list[int]:
    if len(fields) != count:
        raise ParseError(f"line {lineno}: expected {count} integers, got {len(fields)} fields")
    try:
        return [int(f) for f in fields]
    except ValueError:
        raise ParseError(f"line {lineno}: non-integer field in {' '.join(fields)!r}") from None


# --- graph6 ---------------------------------------------------------------


def _g6_bits(n: int) -> int:
    return n * (n - 1) // 2


def parse_graph6(line: str) -> Graph:
    """Decode one graph6 string. Errors report 0-based byte offsets."""
    line = line.strip()
    offset = 0
    if line.startswith(G6_HEADER):
        offset = len(G6_HEADER)
    data = line[offset:]
    for i, ch in enumerate(data):
        if not 63 <= ord(ch) <= 126:
            raise ParseError(f"byte {offset + i}: character {ch!r} outside graph6 range 63..126")
    if not data:
        raise ParseError(f"byte {offset}: missing graph6 order header")

    vals = [ord(ch) - 63 for ch in data]
    if vals[0] < 63:
        n, pos = vals[0], 1
    elif len(vals) >= 2 and vals[1] < 63:
        if len(vals) < 4:
            raise ParseError(f"byte {offset}: truncated 4-byte order header")
        n = (vals[1] << 12) | (vals[2] << 6) | vals[3]
        pos = 4
    else:
        if len(vals) < 8:
            raise ParseError(f"byte {offset}: truncated 8-byte order header")
        n = 0
        for v in vals[2:8]:
            n = (n << 6) | v
        pos = 8

    nbits = _g6_bits(n)
    need = (nbits + 5) // 6
    body = vals[pos:]
    if len(body) != need:
        raise ParseError(
            f"byte {offset + pos}: expected {need} adjacency bytes for n={n}, got {len(body)}"
        )
    adj = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            if body[k // 6] >> (5 - k % 6) & 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
            k += 1
    if need and body[-1] & ((1 << (need * 6 - nbits)) - 1):
        raise ParseError(f"byte {offset + pos + need - 1}: nonzero padding bits")
    return Graph(n, tuple(adj))


def emit_graph6(G: Graph) -> str:
    n = G.n
    if n < 63:
        head = [n]
    elif n < 258048:
        head = [63, n >> 12 & 63, n >> 6 & 63, n & 63]
    else:
        head = [63, 63] + [n >> s & 63 for s in (30, 24, 18, 12, 6, 0)]
    nbits = _g6_bits(n)
    body = [0] * ((nbits + 5) // 6)
    k = 0
    for j in range(1, n):
        row = G.adj[j]
        for i in range(j):
            if row >> i & 1:
                body[k // 6] |= 1 << (5 - k % 6)
            k += 1
    return "".join(chr(v + 63) for v in head + body)


def iter_graph6_file(path: str | Path) -> Iterator[Graph]:
    """Graphs from a graph6 corpus file, one per nonblank line."""
    with open(path, encoding="ascii") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                yield parse_graph6(line)
            except ParseError as exc:
                raise ParseError(f"{path}:{lineno}: {exc}") from None


def read_graph(path: str | Path, format: str | None = None) -> Graph:
    """Load a graph file; ``.g6`` / ``.graph6`` suffixes select graph6."""
    path = Path(path)
    if format is None:
        format = "graph6" if path.suffix in (".g6", ".graph6") else "edge-list"
    return parse_graph(path.read_text(), format)


def write_graph(G: Graph, path: str | Path, format: str | None = None) -> None:
    path = Path(path)
    if format is None:
        format = "graph6" if path.suffix in (".g6", ".graph6") else "edge-list"
    path.write_text(emit_graph(G, format))
