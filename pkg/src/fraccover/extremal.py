"""The sharpness family ``K_m v ((t+1)/2) K_2`` with ``m = ((a-1)t+2)/b + k``.

Labels: the hub clique A is ``0..m-1``; the matching side B is ``m..n-1``
with partners ``(m, m+1), (m+2, m+3), ...``. Deleting D = the first k hub
vertices leaves H in which S = A - D, T = B gives theta = 3 - a against
eps = 2, so H is not covered, although every vertex set of G satisfies the
disjunctive neighbourhood condition.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterator

from . import criterion, factor, neighborhood
from .errors import CapError, ConstructionError
from .graph import Graph, complete, delete_vertices, join, matching, neighborhood_mask
from .params import Params, check_neighborhood_regime


@dataclass(frozen=True)
class ExtremalInstance:
    params: Params
    t: int
    graph: Graph
    A: frozenset[int]
    B: frozenset[int]

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def D(self) -> frozenset[int]:
        return frozenset(sorted(self.A)[: self.params.k])


def _t_valid(a: int, b: int, t: int) -> bool:
    return t >= 1 and t % 2 == 1 and ((a - 1) * t + 2) % b == 0


def valid_t_values(a: int, b: int, start: int = 1) -> Iterator[int]:
    """Admissible t (odd, ``b | (a-1)t+2``) in increasing order from ``start``.

    Validity is periodic in t with period 2b, so an empty first period means
    the iterator is empty.
    """
    start = max(start, 1)
    first = next((t for t in range(start, start + 2 * b) if _t_valid(a, b, t)), None)
    if first is None:
        return
    step = 2 * b
    residues = [t for t in range(first, first + step) if _t_valid(a, b, t)]
    base = 0
    while True:
        for t in residues:
            yield t + base
        base += step


def smallest_valid_t(a: int, b: int, start: int = 1) -> int | None:
    return next(valid_t_values(a, b, start), None)


def sharp_t_values(a: int, b: int, t_max: int) -> list[int]:
    """Valid t up to ``t_max`` whose hub minus D still has two vertices.

    With a single remaining hub vertex S = A - D is independent and the
    certificate theta < eps = 2 is unavailable.
    """
    out = []
    for t in valid_t_values(a, b):
        if t > t_max:
            break
        if ((a - 1) * t + 2) // b >= 2:
            out.append(t)
    return out


def default_t(a: int, b: int) -> int | None:
    """Smallest t giving a two-vertex remaining hub, or None if no valid t exists."""
    for t in valid_t_values(a, b):
        if ((a - 1) * t + 2) // b >= 2:
            return t
        if t > 4 * b * b:
            break
    return None


def build_extremal(a: int, b: int, k: int, t: int) -> ExtremalInstance:
    check_neighborhood_regime(a, b, k)
    problems = []
    if t < 1 or t % 2 == 0:
        problems.append(f"t={t} must be a positive odd integer so (t+1)/2 is integral")
    if ((a - 1) * t + 2) % b:
        problems.append(f"b={b} does not divide (a-1)t+2={(a - 1) * t + 2}")
    if problems:
        nxt = smallest_valid_t(a, b, t + 1)
        hint = f"smallest larger valid t is {nxt}" if nxt else f"no valid t exists for a={a}, b={b}"
        raise ConstructionError("; ".join(problems) + f"; {hint}")
    hub = ((a - 1) * t + 2) // b + k
    G = join(complete(hub), matching((t + 1) // 2))
    return ExtremalInstance(
        params=Params(a, b, k),
        t=t,
        graph=G,
        A=frozenset(range(hub)),
        B=frozenset(range(hub, G.n)),
    )


@dataclass
class SharpnessReport:
    params: Params
    t: int
    n: int
    theta: int
    epsilon: int
    theta_closed_form: int
    T_equals_B: bool
    hypothesis_holds: bool | None = None
    threshold_hypothesis_holds: bool | None = None
    threshold_violating_X: list[int] | None = None
    criterion_covered: bool | None = None
    criterion_certificate: dict | None = None
    oracle_covered: bool | None = None
    boundary_X_le_t_ok: bool = False
    neighborhood_count_ok: bool | None = None
    skipped: list[str] = field(default_factory=list)

    @property
    def consistent(self) -> bool:
        """Recomputed certificate values equal the closed forms."""
        return (
            self.theta == self.theta_closed_form
            and self.epsilon == 2
            and self.T_equals_B
            and self.theta < self.epsilon
        )

    def to_json(self) -> dict:
        return {
            "params": self.params.as_dict(),
            "t": self.t,
            "n": self.n,
            "theta": self.theta,
            "epsilon": self.epsilon,
            "theta_closed_form": self.theta_closed_form,
            "hypothesis_holds": self.hypothesis_holds,
            "threshold_hypothesis_holds": self.threshold_hypothesis_holds,
            "threshold_violating_X": self.threshold_violating_X,
            "criterion_covered": self.criterion_covered,
            "criterion_certificate": self.criterion_certificate,
            "oracle_covered": self.oracle_covered,
            "boundary_X_le_t_ok": self.boundary_X_le_t_ok,
            "neighborhood_count_ok": self.neighborhood_count_ok,
            "consistent": self.consistent,
            "skipped": self.skipped,
        }


def boundary_equivalence(inst: ExtremalInstance) -> bool:
    """For X inside B the ratio inequality holds exactly when |X| <= t."""
    a, b, k = inst.params.a, inst.params.b, inst.params.k
    rnum, rden = neighborhood.ratio_parts(inst.n, a, b, k)
    hub = len(inst.A)
    return all(
        ((hub + s) * rden >= rnum * s) == (s <= inst.t) for s in range(1, inst.t + 2)
    )


def neighborhood_counts_ok(inst: ExtremalInstance) -> bool:
    """|N(X)| = |A| + |X| for every nonempty X inside B (exhaustive)."""
    B = sorted(inst.B)
    hub = len(inst.A)
    for size in range(1, len(B) + 1):
        for X in combinations(B, size):
            mask = sum(1 << v for v in X)
            if neighborhood_mask(inst.graph, mask).bit_count() != hub + size:
                return False
    return True


def demonstrate_sharpness(
    a: int,
    b: int,
    k: int,
    t: int,
    *,
    cap: int | None = None,
    run_oracle: bool = True,
    max_b_enumeration: int = 20,
) -> SharpnessReport:
    """Build the instance and collect every check into one report.

    Sub-checks that exceed ``cap`` are listed in ``skipped`` instead of
    failing the whole report.
    """
    inst = build_extremal(a, b, k, t)
    G = inst.graph
    H, labels = delete_vertices(G, inst.D)
    new_of = {old: new for new, old in enumerate(labels)}
    S = [new_of[v] for v in sorted(inst.A - inst.D)]
    T, th = criterion.theta(H, S, a, b)
    eps = criterion.epsilon(H, S, T, a)
    report = SharpnessReport(
        params=inst.params,
        t=t,
        n=inst.n,
        theta=th,
        epsilon=eps,
        theta_closed_form=3 - a,
        T_equals_B=frozenset(labels[v] for v in T) == inst.B,
        boundary_X_le_t_ok=boundary_equivalence(inst),
    )

    if len(inst.B) <= max_b_enumeration:
        report.neighborhood_count_ok = neighborhood_counts_ok(inst)
    else:
        report.skipped.append("neighborhood_count")

    try:
        relaxed = neighborhood.check_hypothesis(G, a, b, k, mode="disjunctive", cap=cap)
        strict = neighborhood.check_hypothesis(G, a, b, k, mode="threshold", cap=cap)
        report.hypothesis_holds = relaxed.holds
        report.threshold_hypothesis_holds = strict.holds
        if strict.violating_X is not None:
            report.threshold_violating_X = sorted(strict.violating_X)
    except CapError:
        report.skipped.append("hypothesis")

    try:
        verdict = criterion.is_covered(H, a, b, cap=cap)
        report.criterion_covered = verdict.covered
        doc = verdict.to_json()
        # report in the labels of G
        for key in ("S", "T"):
            if doc[key] is not None:
                doc[key] = sorted(labels[v] for v in doc[key])
        doc["Q"] = sorted(inst.D)
        report.criterion_certificate = doc
    except CapError:
        report.skipped.append("criterion")

    if run_oracle:
        report.oracle_covered = factor.is_covered_constructive(H, a, b).covered
    else:
        report.skipped.append("oracle")
    return report
