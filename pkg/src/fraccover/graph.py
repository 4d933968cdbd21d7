"""Finite simple graphs on dense labels ``0..n-1``.

Adjacency is stored as one integer bitmask per vertex, so vertex sets are
plain Python ints on the hot paths (``*_mask`` helpers) and frozensets at the
public surface.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator

from .errors import InvalidVertexError

# Recorded in experiment ledgers; bump the suffix if the sampling loop changes.
PRNG_NAME = "python-random-mt19937/gnp-v1"

DEFAULT_CAP = 22


def to_mask(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def iter_mask(mask: int) -> Iterator[int]:
    """Members of ``mask`` in ascending label order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def from_mask(mask: int) -> frozenset[int]:
    return frozenset(iter_mask(mask))


def popcount(mask: int) -> int:
    return mask.bit_count()


@dataclass(frozen=True)
class Graph:
    """Immutable simple undirected graph.

    ``adj[v]`` is the bitmask of neighbours of ``v``. Use :meth:`from_edges`
    rather than the raw constructor unless the masks are already validated.
    """

    n: int
    adj: tuple[int, ...]

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        if n < 0:
            raise ValueError(f"order must be nonnegative, got {n}")
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidVertexError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, tuple(adj))

    @classmethod
    def empty(cls, n: int) -> Graph:
        return cls(n, (0,) * n)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    @property
    def m(self) -> int:
        return sum(popcount(a) for a in self.adj) // 2

    def edges(self) -> list[tuple[int, int]]:
        """Edges as ``(u, v)`` with ``u < v``, sorted lexicographically."""
        out = []
        for u in range(self.n):
            for v in iter_mask(self.adj[u] >> (u + 1) << (u + 1)):
                out.append((u, v))
        return out

    def has_edge(self, u: int, v: int) -> bool:
        self._check(u)
        self._check(v)
        return bool(self.adj[u] >> v & 1)

    def neighbors(self, v: int) -> frozenset[int]:
        self._check(v)
        return from_mask(self.adj[v])

    def vertices(self) -> range:
        return range(self.n)

    def _check(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise InvalidVertexError(f"vertex {v} not in 0..{self.n - 1}")

    def check_set(self, vertices: Iterable[int]) -> int:
        """Validate membership and return the bitmask of ``vertices``."""
        mask = 0
        for v in vertices:
            self._check(v)
            mask |= 1 << v
        return mask

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges()})"


# --- set-level primitives -------------------------------------------------


def neighborhood_mask(G: Graph, mask: int) -> int:
    out = 0
    adj = G.adj
    while mask:
        low = mask & -mask
        out |= adj[low.bit_length() - 1]
        mask ^= low
    return out


def neighborhood(G: Graph, X: Iterable[int]) -> frozenset[int]:
    """Union of the open neighbourhoods of the members of ``X``.

    The result may intersect ``X``; ``neighborhood(G, ())`` is empty.
    """
    return from_mask(neighborhood_mask(G, G.check_set(X)))


def degree(G: Graph, v: int) -> int:
    G._check(v)
    return popcount(G.adj[v])


def min_degree(G: Graph) -> int:
    if G.n == 0:
        raise ValueError("minimum degree of the empty graph is undefined")
    return min(popcount(a) for a in G.adj)


def is_independent_mask(G: Graph, mask: int) -> bool:
    rest = mask
    while rest:
        low = rest & -rest
        if G.adj[low.bit_length() - 1] & mask:
            return False
        rest ^= low
    return True


def is_independent(G: Graph, S: Iterable[int]) -> bool:
    return is_independent_mask(G, G.check_set(S))


def delete_vertices(G: Graph, X: Iterable[int]) -> tuple[Graph, tuple[int, ...]]:
    """Induced subgraph on ``V(G) - X``.

    Returns ``(H, labels)`` where ``labels[i]`` is the original label of
    vertex ``i`` of ``H``; surviving vertices keep their relative order.
    """
    return delete_vertices_mask(G, G.check_set(X))


def delete_vertices_mask(G: Graph, mask: int) -> tuple[Graph, tuple[int, ...]]:
    labels = tuple(v for v in range(G.n) if not mask >> v & 1)
    new_of = {old: new for new, old in enumerate(labels)}
    adj = []
    for old in labels:
        nb = 0
        for w in iter_mask(G.adj[old] & ~mask):
            nb |= 1 << new_of[w]
        adj.append(nb)
    return Graph(len(labels), tuple(adj)), labels


def induced_degrees(G: Graph, keep: int) -> list[int]:
    """Degrees inside ``G[keep]``, indexed by original label (0 outside keep)."""
    return [popcount(G.adj[v] & keep) if keep >> v & 1 else 0 for v in range(G.n)]


# --- constructions --------------------------------------------------------


def disjoint_union(G1: Graph, G2: Graph) -> Graph:
    shift = G1.n
    return Graph(G1.n + G2.n, G1.adj + tuple(a << shift for a in G2.adj))


def join(G1: Graph, G2: Graph) -> Graph:
    """Disjoint union plus every edge between the two sides."""
    U = disjoint_union(G1, G2)
    left = (1 << G1.n) - 1
    right = ((1 << G2.n) - 1) << G1.n
    adj = tuple(a | right if v < G1.n else a | left for v, a in enumerate(U.adj))
    return Graph(U.n, adj)


def complete(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph(n, tuple(full & ~(1 << v) for v in range(n)))


def matching(s: int) -> Graph:
    """``s`` disjoint edges ``(0,1), (2,3), ...``."""
    return Graph.from_edges(2 * s, [(2 * i, 2 * i + 1) for i in range(s)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def star(leaves: int) -> Graph:
    """``K_{1,leaves}`` with centre 0."""
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def as_fraction(p) -> Fraction:
    if isinstance(p, float):
        # go through repr so 0.9 means 9/10, not its binary approximation
        return Fraction(repr(p))
    return Fraction(p)


def gnp(n: int, p, seed: int) -> Graph:
    """Erdos-Renyi G(n, p) with exact rational ``p``.

    Each pair ``u < v`` (lexicographic order) is kept iff
    ``randrange(denominator) < numerator`` on a ``random.Random(seed)`` stream,
    so the result is a pure function of ``(n, p, seed)``.
    """
    p = as_fraction(p)
    if not 0 <= p <= 1:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    rng = random.Random(seed)
    num, den = p.numerator, p.denominator
    edges = [
        (u, v)
        for u in range(n)
        for v in range(u + 1, n)
        if rng.randrange(den) < num
    ]
    return Graph.from_edges(n, edges)
