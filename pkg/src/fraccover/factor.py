"""Constructive fractional [a,b]-factors via integral flow.

Every vertex v is split into an out-copy v' and an in-copy v''. Each edge uv
contributes unit arcs u'->v'' and v'->u''; the source feeds each v' and each
v'' drains to the sink with throughput in [a, b]; a pinned edge puts lower
bound 1 on both of its arcs. An integral circulation x gives

    h(uv) = (x(u'->v'') + x(v'->u'')) / 2,

so every weight is 0, 1/2 or 1, and d^h(v) is the mean of the throughputs of
v' and v''. Conversely any fractional factor is a fractional flow on this
network, so integral feasibility is equivalent to factor existence.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable

from .errors import DomainError, PinError
from .flow import feasible_circulation
from .graph import Graph, delete_vertices_mask
from .params import check_criterion_regime

Edge = tuple[int, int]
HALF_INTEGRAL = frozenset({Fraction(0), Fraction(1, 2), Fraction(1)})


@dataclass(frozen=True)
class FractionalFactor:
    weights: dict[Edge, Fraction]

    def degree(self, v: int) -> Fraction:
        return sum((w for e, w in self.weights.items() if v in e), Fraction(0))

    def degrees(self, n: int) -> list[Fraction]:
        out = [Fraction(0)] * n
        for (u, v), w in self.weights.items():
            out[u] += w
            out[v] += w
        return out

    def is_half_integral(self) -> bool:
        return all(w in HALF_INTEGRAL for w in self.weights.values())

    def to_json(self) -> dict:
        return {"edges": [[u, v, str(w)] for (u, v), w in sorted(self.weights.items())]}

    @classmethod
    def from_json(cls, doc: dict) -> FractionalFactor:
        return cls({(min(u, v), max(u, v)): Fraction(w) for u, v, w in doc["edges"]})


def _norm(e: Iterable[int]) -> Edge:
    u, v = e
    return (u, v) if u < v else (v, u)


def _check_pins(G: Graph, pins: Iterable[Edge]) -> frozenset[Edge]:
    out = set()
    for e in pins:
        u, v = _norm(e)
        if not (0 <= u < G.n and 0 <= v < G.n and G.adj[u] >> v & 1):
            raise PinError(f"pinned pair {e} is not an edge of the graph")
        out.add((u, v))
    return frozenset(out)


def find_factor(G: Graph, a: int, b: int, pins: Iterable[Edge] = ()) -> FractionalFactor | None:
    """A half-integral fractional [a,b]-factor with ``h(e) = 1`` on ``pins``.

    Returns ``None`` when none exists. Deterministic in its inputs.
    """
    check_criterion_regime(a, b)
    pinned = _check_pins(G, pins)
    n = G.n
    s, t = 0, 1
    arcs = []
    for v in range(n):
        arcs.append((s, 2 + v, a, b))
    edges = G.edges()
    for u, v in edges:
        lo = 1 if (u, v) in pinned else 0
        arcs.append((2 + u, 2 + n + v, lo, 1))
        arcs.append((2 + v, 2 + n + u, lo, 1))
    for v in range(n):
        arcs.append((2 + n + v, t, a, b))
    arcs.append((t, s, 0, b * n))
    x = feasible_circulation(2 + 2 * n, arcs)
    if x is None:
        return None
    weights = {
        e: Fraction(x[n + 2 * i] + x[n + 2 * i + 1], 2) for i, e in enumerate(edges)
    }
    return FractionalFactor(weights)


def verify_factor(
    G: Graph, a: int, b: int, pins: Iterable[Edge], h: FractionalFactor
) -> bool:
    """Check range, degree and pin constraints in exact arithmetic."""
    edges = set(G.edges())
    keys = {_norm(e) for e in h.weights}
    if keys != edges or len(keys) != len(h.weights):
        raise DomainError(
            f"factor must be defined on exactly E(G); extra={sorted(keys - edges)}, "
            f"missing={sorted(edges - keys)}"
        )
    weights = {_norm(e): Fraction(w) for e, w in h.weights.items()}
    if any(not 0 <= w <= 1 for w in weights.values()):
        return False
    for e in _check_pins(G, pins):
        if weights[e] != 1:
            return False
    deg = [Fraction(0)] * G.n
    for (u, v), w in weights.items():
        deg[u] += w
        deg[v] += w
    return all(a <= d <= b for d in deg)


@dataclass
class ConstructiveVerdict:
    """Outcome of the edge-by-edge pinned search.

    ``witnesses`` maps each edge to a factor carrying weight 1 on it (one
    factor may serve several edges). For an edgeless graph coveredness means
    a factor exists at all, and ``base_factor`` holds it.
    """

    covered: bool
    witnesses: dict[Edge, FractionalFactor] = field(default_factory=dict)
    failing_edge: Edge | None = None
    failing_Q: tuple[int, ...] | None = None
    base_factor: FractionalFactor | None = None
    solves: int = 0
    parts: list[tuple[tuple[int, ...], ConstructiveVerdict]] = field(default_factory=list)

    def factors(self) -> list[FractionalFactor]:
        """Distinct factors produced, in discovery order."""
        seen: list[FractionalFactor] = []
        ids = set()
        for f in [self.base_factor, *self.witnesses.values()]:
            if f is not None and id(f) not in ids:
                ids.add(id(f))
                seen.append(f)
        return seen


def is_covered_constructive(G: Graph, a: int, b: int) -> ConstructiveVerdict:
    """Covered iff every edge can be pinned to 1 in some factor.

    Edges are tried in sorted order; an edge already at weight 1 in an
    earlier witness reuses that witness instead of a fresh solve. The first
    edge with no pinned factor is reported.
    """
    check_criterion_regime(a, b)
    edges = G.edges()
    if not edges:
        base = find_factor(G, a, b)
        return ConstructiveVerdict(base is not None, base_factor=base, solves=1)
    witnesses: dict[Edge, FractionalFactor] = {}
    solves = 0
    for e in edges:
        if e in witnesses:
            continue
        h = find_factor(G, a, b, pins=[e])
        solves += 1
        if h is None:
            return ConstructiveVerdict(False, witnesses, failing_edge=e, solves=solves)
        witnesses[e] = h
        for f, w in h.weights.items():
            if w == 1 and f not in witnesses:
                witnesses[f] = h
    return ConstructiveVerdict(True, dict(sorted(witnesses.items())), solves=solves)


def is_critical_covered_constructive(G: Graph, a: int, b: int, k: int) -> ConstructiveVerdict:
    """Constructive check of ``G - Q`` for every ``|Q| == k`` (lexicographic Q).

    On failure ``failing_Q`` names the deletion set and ``failing_edge`` is
    given in the labels of ``G``. Per-deletion verdicts (in the labels of
    ``G - Q``) are kept in ``parts``.
    """
    check_criterion_regime(a, b)
    if not 0 <= k <= G.n:
        raise ValueError(f"need 0 <= k <= n, got k={k}, n={G.n}")
    if k == 0:
        return is_covered_constructive(G, a, b)
    solves = 0
    parts = []
    for Q in combinations(range(G.n), k):
        H, labels = delete_vertices_mask(G, sum(1 << q for q in Q))
        inner = is_covered_constructive(H, a, b)
        solves += inner.solves
        parts.append((Q, inner))
        if not inner.covered:
            fe = inner.failing_edge
            return ConstructiveVerdict(
                False,
                failing_edge=(labels[fe[0]], labels[fe[1]]) if fe else None,
                failing_Q=Q,
                solves=solves,
                parts=parts,
            )
    return ConstructiveVerdict(True, solves=solves, parts=parts)
