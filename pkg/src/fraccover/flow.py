"""Integral max-flow (Dinic) and circulations with lower bounds.

Arc insertion order fully determines the result, so identical inputs give
identical flows.
"""

from __future__ import annotations

from collections import deque


class FlowNetwork:
    """Residual network with paired forward/backward arcs (ids ``2i``, ``2i+1``)."""

    def __init__(self, n: int):
        self.n = n
        self.head: list[list[int]] = [[] for _ in range(n)]
        self.to: list[int] = []
        self.cap: list[int] = []

    def add_arc(self, u: int, v: int, cap: int) -> int:
        if cap < 0:
            raise ValueError(f"negative capacity on arc {u}->{v}")
        arc = len(self.to)
        self.to += (v, u)
        self.cap += (cap, 0)
        self.head[u].append(arc)
        self.head[v].append(arc + 1)
        return arc

    def flow_on(self, arc: int) -> int:
        return self.cap[arc ^ 1]

    def _levels(self, s: int, t: int) -> list[int] | None:
        level = [-1] * self.n
        level[s] = 0
        queue = deque([s])
        to, cap, head = self.to, self.cap, self.head
        while queue:
            u = queue.popleft()
            for arc in head[u]:
                v = to[arc]
                if cap[arc] and level[v] < 0:
                    level[v] = level[u] + 1
                    queue.append(v)
        return level if level[t] >= 0 else None

    def _blocking(self, s: int, t: int, level: list[int], limit: int) -> int:
        to, cap, head = self.to, self.cap, self.head
        ptr = [0] * self.n
        total = 0
        while total < limit:
            # iterative DFS along level-increasing arcs
            path: list[int] = []
            u = s
            while u != t:
                arcs = head[u]
                i = ptr[u]
                while i < len(arcs):
                    arc = arcs[i]
                    v = to[arc]
                    if cap[arc] and level[v] == level[u] + 1:
                        break
                    i += 1
                ptr[u] = i
                if i == len(arcs):
                    if u == s:
                        return total
                    level[u] = -1
                    arc = path.pop()
                    u = to[arc ^ 1]
                    ptr[u] += 1
                    continue
                path.append(arc)
                u = to[arc]
            push = min(limit - total, min(cap[arc] for arc in path))
            for arc in path:
                cap[arc] -= push
                cap[arc ^ 1] += push
            total += push
        return total

    def max_flow(self, s: int, t: int, limit: int | None = None) -> int:
        if limit is None:
            limit = sum(self.cap[arc] for arc in self.head[s] if arc % 2 == 0)
        total = 0
        while total < limit:
            level = self._levels(s, t)
            if level is None:
                break
            pushed = self._blocking(s, t, level, limit - total)
            if not pushed:
                break
            total += pushed
        return total


def feasible_circulation(n: int, arcs: list[tuple[int, int, int, int]]) -> list[int] | None:
    """Find an integral circulation with ``lo <= x <= hi`` on every arc.

    ``arcs`` holds ``(u, v, lo, hi)``. Returns the per-arc flow values in
    input order, or ``None`` when no feasible circulation exists. Lower
    bounds are removed by routing their forced flow through a super source
    and super sink and requiring that max-flow to saturate.
    """
    net = FlowNetwork(n + 2)
    src, snk = n, n + 1
    excess = [0] * n
    ids = []
    for u, v, lo, hi in arcs:
        if lo > hi:
            return None
        ids.append(net.add_arc(u, v, hi - lo))
        excess[v] += lo
        excess[u] -= lo
    need = 0
    for v, e in enumerate(excess):
        if e > 0:
            net.add_arc(src, v, e)
            need += e
        elif e < 0:
            net.add_arc(v, snk, -e)
    if net.max_flow(src, snk, need) != need:
        return None
    return [lo + net.flow_on(arc) for (_, _, lo, _), arc in zip(arcs, ids)]
