"""Exhaustive structural test for fractional [a,b]-coveredness.

For a vertex set S let T be the vertices outside S whose degree in G-S is at
most a. The graph is fractional [a,b]-covered iff for every S

    theta(S) = b|S| + sum_{x in T} d_{G-S}(x) - a|T|  >=  eps(S)

where eps(S) is 2 if S spans an edge; 1 if S is independent and either some
edge leaves S towards V-(S|T), or some edge joins S to a vertex v of T with
d_{G-S}(v) == a; and 0 otherwise.

Subsets are visited in canonical order (increasing size, then lexicographic
on the sorted member tuple) and the first violation is the certificate.
Everything is exact integer arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Iterator

from .errors import CapError
from .graph import DEFAULT_CAP, Graph, delete_vertices_mask, from_mask, iter_mask
from .params import check_criterion_regime


@dataclass(frozen=True)
class CriterionCertificate:
    S: frozenset[int]
    T: frozenset[int]
    theta: int
    epsilon: int
    Q: frozenset[int] = field(default_factory=frozenset)


@dataclass(frozen=True)
class CoverageVerdict:
    covered: bool
    certificate: CriterionCertificate | None
    subsets_examined: int

    def to_json(self) -> dict:
        c = self.certificate
        return {
            "covered": self.covered,
            "Q": sorted(c.Q) if c else [],
            "S": sorted(c.S) if c else None,
            "T": sorted(c.T) if c else None,
            "theta": c.theta if c else None,
            "epsilon": c.epsilon if c else None,
            "subsets_examined": self.subsets_examined,
        }


def check_cap(G: Graph, cap: int | None) -> None:
    limit = DEFAULT_CAP if cap is None else cap
    if G.n > limit:
        raise CapError(
            f"graph has n={G.n} vertices, above the enumeration cap {limit}; "
            "raise the cap explicitly to proceed"
        )


_CACHED_ORDER_MAX_N = 14


@lru_cache(maxsize=None)
def _canonical_masks(n: int) -> tuple[int, ...]:
    return tuple(_gen_canonical(n))


def _gen_canonical(n: int) -> Iterator[int]:
    bits = [1 << v for v in range(n)]
    for size in range(n + 1):
        for combo in combinations(bits, size):
            yield sum(combo)


def canonical_subsets(n: int) -> Iterable[int]:
    """Every subset of ``0..n-1`` as a bitmask, in canonical order."""
    if n <= _CACHED_ORDER_MAX_N:
        return _canonical_masks(n)
    return _gen_canonical(n)


def canonical_key(vertices: Iterable[int]) -> tuple[int, tuple[int, ...]]:
    """Sort key realising the canonical subset order."""
    members = tuple(sorted(vertices))
    return (len(members), members)


# --- the three quantities -------------------------------------------------


def _evaluate(adj: tuple[int, ...], full: int, S: int, a: int, b: int) -> tuple[int, int, int]:
    """Return ``(T mask, theta, epsilon)`` for the set ``S``."""
    rest = full & ~S
    T = 0
    at_a = 0
    dsum = 0
    tsize = 0
    r = rest
    while r:
        low = r & -r
        d = (adj[low.bit_length() - 1] & rest).bit_count()
        if d <= a:
            T |= low
            dsum += d
            tsize += 1
            if d == a:
                at_a |= low
        r ^= low
    nbr = 0
    r = S
    while r:
        low = r & -r
        nbr |= adj[low.bit_length() - 1]
        r ^= low
    if nbr & S:
        eps = 2
    elif nbr & ((rest & ~T) | at_a):
        eps = 1
    else:
        eps = 0
    return T, b * S.bit_count() + dsum - a * tsize, eps


def compute_T(G: Graph, S: Iterable[int], a: int) -> frozenset[int]:
    """Vertices outside ``S`` of degree at most ``a`` in ``G - S``."""
    Sm = G.check_set(S)
    rest = G.full_mask & ~Sm
    return from_mask(
        sum(1 << v for v in iter_mask(rest) if (G.adj[v] & rest).bit_count() <= a)
    )


def epsilon(G: Graph, S: Iterable[int], T: Iterable[int], a: int) -> int:
    Sm = G.check_set(S)
    Tm = G.check_set(T)
    rest = G.full_mask & ~Sm
    nbr = 0
    for v in iter_mask(Sm):
        nbr |= G.adj[v]
    if nbr & Sm:
        return 2
    if nbr & rest & ~Tm:
        return 1
    for v in iter_mask(nbr & Tm):
        if (G.adj[v] & rest).bit_count() == a:
            return 1
    return 0


def theta(G: Graph, S: Iterable[int], a: int, b: int) -> tuple[frozenset[int], int]:
    """``(T, theta)`` for the set ``S``."""
    S = G.check_set(S)
    rest = G.full_mask & ~S
    T = compute_T(G, iter_mask(S), a)
    dsum = sum((G.adj[x] & rest).bit_count() for x in T)
    return T, b * S.bit_count() + dsum - a * len(T)


# --- decisions ------------------------------------------------------------


def is_covered(G: Graph, a: int, b: int, *, cap: int | None = None) -> CoverageVerdict:
    """Decide fractional [a,b]-coveredness by checking every vertex subset.

    Stops at the first canonical-order violation, which becomes the
    certificate. Raises :class:`CapError` rather than sampling when
    ``G.n`` exceeds ``cap``.
    """
    check_criterion_regime(a, b)
    check_cap(G, cap)
    adj, full = G.adj, G.full_mask
    examined = 0
    for S in canonical_subsets(G.n):
        examined += 1
        T, th, eps = _evaluate(adj, full, S, a, b)
        if th < eps:
            cert = CriterionCertificate(from_mask(S), from_mask(T), th, eps)
            return CoverageVerdict(False, cert, examined)
    return CoverageVerdict(True, None, examined)


def is_critical_covered(
    G: Graph, a: int, b: int, k: int, *, cap: int | None = None
) -> CoverageVerdict:
    """True iff ``G - Q`` is covered for every ``Q`` with ``|Q| == k``.

    Deletion sets are tried in lexicographic order. A certificate reports
    ``Q``, ``S`` and ``T`` in the labels of ``G``.
    """
    check_criterion_regime(a, b)
    if not 0 <= k <= G.n:
        raise ValueError(f"need 0 <= k <= n, got k={k}, n={G.n}")
    check_cap(G, cap)
    if k == 0:
        return is_covered(G, a, b, cap=cap)
    examined = 0
    for Q in combinations(range(G.n), k):
        H, labels = delete_vertices_mask(G, sum(1 << q for q in Q))
        inner = is_covered(H, a, b, cap=cap)
        examined += inner.subsets_examined
        if not inner.covered:
            c = inner.certificate
            cert = CriterionCertificate(
                S=frozenset(labels[v] for v in c.S),
                T=frozenset(labels[v] for v in c.T),
                theta=c.theta,
                epsilon=c.epsilon,
                Q=frozenset(Q),
            )
            return CoverageVerdict(False, cert, examined)
    return CoverageVerdict(True, None, examined)


def recheck_certificate(G: Graph, cert: CriterionCertificate, a: int, b: int) -> bool:
    """Recompute T, theta and eps from scratch and compare with ``cert``."""
    Qm = G.check_set(cert.Q)
    if Qm & G.check_set(cert.S):
        return False
    H, labels = delete_vertices_mask(G, Qm)
    new_of = {old: new for new, old in enumerate(labels)}
    S = [new_of[v] for v in cert.S]
    T, th = theta(H, S, a, b)
    eps = epsilon(H, S, T, a)
    T_orig = frozenset(labels[v] for v in T)
    return T_orig == cert.T and th == cert.theta and eps == cert.epsilon and th < eps
