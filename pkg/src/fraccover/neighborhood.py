"""Neighbourhood condition for fractional (a,b,k)-critical coveredness.

With ``n = |V(G)|`` the condition splits vertex sets X at

    thr = floor(((b(n-1) - bk) n - 2(n-1)) / ((a+b-1)(n-1)))

and requires ``N(X) = V`` when ``|X| >= thr`` and
``|N(X)| >= (a+b-1)(n-1) / (b(n-1) - bk - 2) * |X|`` when ``|X| < thr``.
Together with ``n >= ((a+b-2)(2a+b-3)+2)/b + bk/(b-1)`` and ``2 <= a <= b``
this guarantees the graph is fractional (a,b,k)-critical covered.

The "disjunctive" mode drops the split and asks only that every X satisfy
one of the two alternatives. That weaker condition is what the
``K_m v sK_2`` sharpness family meets while failing to be covered.

All comparisons are cross-multiplied integers.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .criterion import canonical_subsets, check_cap
from .errors import RegimeError
from .graph import Graph, from_mask, min_degree, neighborhood_mask
from .params import Params, check_neighborhood_regime

MODES = ("threshold", "disjunctive")


def _threshold_parts(n: int, a: int, b: int, k: int) -> tuple[int, int]:
    return (b * (n - 1) - b * k) * n - 2 * (n - 1), (a + b - 1) * (n - 1)


def threshold(n: int, a: int, b: int, k: int) -> int:
    """Size from which a set must dominate the whole vertex set."""
    check_neighborhood_regime(a, b, k)
    if n < 2:
        raise RegimeError(f"threshold needs n >= 2, got n={n}")
    num, den = _threshold_parts(n, a, b, k)
    if num <= 0:
        raise RegimeError(f"threshold numerator {num} <= 0 at n={n}, k={k}: n is too small")
    return num // den


def ratio_parts(n: int, a: int, b: int, k: int) -> tuple[int, int]:
    """``(numerator, denominator)`` of the neighbourhood ratio, unreduced."""
    check_neighborhood_regime(a, b, k)
    den = b * (n - 1) - b * k - 2
    if den <= 0:
        raise RegimeError(f"ratio denominator b(n-1)-bk-2 = {den} <= 0 at n={n}, k={k}")
    return (a + b - 1) * (n - 1), den


def ratio(n: int, a: int, b: int, k: int) -> Fraction:
    return Fraction(*ratio_parts(n, a, b, k))


def order_bound(a: int, b: int, k: int) -> Fraction:
    """Least admissible order ``((a+b-2)(2a+b-3)+2)/b + bk/(b-1)``."""
    check_neighborhood_regime(a, b, k)
    return Fraction((a + b - 2) * (2 * a + b - 3) + 2, b) + Fraction(b * k, b - 1)


def order_bound_ok(n: int, a: int, b: int, k: int) -> bool:
    return n >= order_bound(a, b, k)


def degree_bound(n: int, a: int, b: int, k: int) -> Fraction:
    """Minimum degree forced by the condition: ``((a-1)n+b+bk+2)/(a+b-1)``."""
    return Fraction((a - 1) * n + b + b * k + 2, a + b - 1)


def degree_consequence_ok(G: Graph, a: int, b: int, k: int) -> bool:
    check_neighborhood_regime(a, b, k)
    return min_degree(G) >= degree_bound(G.n, a, b, k)


# Simplified forms quoted for the special cases k = 0 and a = b = r. They are
# kept separate so the agreement with the general expressions is checked, not
# assumed.


def threshold_k0_closed_form(n: int, a: int, b: int) -> int:
    return (b * n - 2) // (a + b - 1)


def order_bound_equal_ab_closed_form(r: int, k: int) -> Fraction:
    return 6 * r - 12 + Fraction(8, r) + Fraction(r * k, r - 1)


@dataclass(frozen=True)
class HypothesisReport:
    n: int
    params: Params
    mode: str
    order_bound_ok: bool
    threshold: int
    ratio: Fraction
    holds: bool
    violating_X: frozenset[int] | None
    subsets_examined: int
    profile: dict[int, int] | None = None

    def to_json(self) -> dict:
        doc = {
            "n": self.n,
            "a": self.params.a,
            "b": self.params.b,
            "k": self.params.k,
            "mode": self.mode,
            "order_bound_ok": self.order_bound_ok,
            "threshold": self.threshold,
            "ratio": f"{self.ratio.numerator}/{self.ratio.denominator}",
            "holds": self.holds,
            "violating_X": sorted(self.violating_X) if self.violating_X is not None else None,
            "subsets_examined": self.subsets_examined,
        }
        if self.profile is not None:
            doc["profile"] = {str(s): v for s, v in sorted(self.profile.items())}
        return doc


def check_hypothesis(
    G: Graph,
    a: int,
    b: int,
    k: int = 0,
    *,
    mode: str = "threshold",
    cap: int | None = None,
    with_profile: bool = False,
) -> HypothesisReport:
    """Test the neighbourhood condition on every nonempty vertex set.

    The empty set satisfies both alternatives vacuously and is counted as
    examined without a test. Without ``with_profile`` the scan stops at the
    first violation in canonical subset order.
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    check_neighborhood_regime(a, b, k)
    check_cap(G, cap)
    n = G.n
    thr = threshold(n, a, b, k)
    rnum, rden = ratio_parts(n, a, b, k)
    full = G.full_mask
    split = mode == "threshold"

    violating = None
    examined = 0
    profile = {s: n for s in range(1, n + 1)} if with_profile else None
    for X in canonical_subsets(n):
        examined += 1
        if not X:
            continue
        N = neighborhood_mask(G, X)
        s = X.bit_count()
        size = N.bit_count()
        if profile is not None and size < profile[s]:
            profile[s] = size
        if violating is not None:
            continue
        dominates = N == full
        ratio_ok = size * rden >= rnum * s
        if split:
            bad = not dominates if s >= thr else not ratio_ok
        else:
            bad = not (dominates or ratio_ok)
        if bad:
            violating = X
            if profile is None:
                break
    return HypothesisReport(
        n=n,
        params=Params(a, b, k),
        mode=mode,
        order_bound_ok=order_bound_ok(n, a, b, k),
        threshold=thr,
        ratio=Fraction(rnum, rden),
        holds=violating is None,
        violating_X=from_mask(violating) if violating is not None else None,
        subsets_examined=examined,
        profile=profile,
    )


def min_neighborhood_profile(G: Graph, *, cap: int | None = None) -> dict[int, int]:
    """``{s: min |N(X)| over |X| = s}`` for ``s = 1..n``."""
    check_cap(G, cap)
    best = {s: G.n for s in range(1, G.n + 1)}
    for X in canonical_subsets(G.n):
        if X:
            s = X.bit_count()
            size = neighborhood_mask(G, X).bit_count()
            if size < best[s]:
                best[s] = size
    return best
