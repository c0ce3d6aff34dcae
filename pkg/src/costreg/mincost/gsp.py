"""Generalized shortest paths: each edge pays c(e) and scales what follows by w(e).

The cost of a path e1 e2 ... en is c1 + w1 * (c2 + w2 * (... + wn-1 * cn)).
Values are computed exactly by policy iteration on rationals; ``epsilon``
is accepted for interface stability but results carry no approximation.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Hashable

from ..core.ext import INF
from ..errors import InvalidEdge
from .graphs import bfs_path, useful_edges

DEFAULT_EPSILON = Fraction(1, 10**9)


@dataclass
class CostGraph:
    source: Hashable
    target: Hashable
    edges: list[tuple] = field(default_factory=list)  # (u, v, cost, weight, label)

    def add(self, u, v, cost, weight, label=None):
        self.edges.append((u, v, Fraction(cost), Fraction(weight), label))

    @property
    def vertices(self) -> set:
        out = {self.source, self.target}
        for u, v, *_ in self.edges:
            out.add(u)
            out.add(v)
        return out


@dataclass
class GspResult:
    status: str  # "attained", "infimum", "unreachable"
    value: object = None
    path: list | None = None  # edges of an optimal path when attained
    lasso: tuple | None = None  # (entry, cycle, exit) edge lists when not attained
    values: dict | None = None


def path_cost(path) -> Fraction:
    total, scale = Fraction(0), Fraction(1)
    for _, _, c, w, _ in path:
        total += scale * c
        scale *= w
    return total


def _validate(g: CostGraph):
    for u, v, c, w, _ in g.edges:
        if c < 0:
            raise InvalidEdge(f"negative cost {c} on edge {u} -> {v}")
        if not (0 < w <= 1):
            raise InvalidEdge(f"weight {w} outside (0, 1] on edge {u} -> {v}")
        if u == g.target:
            raise InvalidEdge("the target must not have outgoing edges")


def _policy_values(policy: dict, t) -> dict:
    """Value of every vertex when it follows its chosen edge forever."""
    val: dict = {t: Fraction(0)}
    for start in policy:
        if start in val:
            continue
        chain = []
        pos: dict = {}
        x = start
        while x not in val and x not in pos:
            pos[x] = len(chain)
            chain.append(x)
            x = policy[x][1]
        if x in val:
            tail = val[x]
            for y in reversed(chain):
                _, _, c, w, _ = policy[y]
                tail = c + w * tail
                val[y] = tail
            continue
        # chain[pos[x]:] is a cycle: compose the affine maps around it
        cyc = chain[pos[x]:]
        a, b = Fraction(0), Fraction(1)  # value(x) = a + b * value(x)
        for y in cyc:
            _, _, c, w, _ = policy[y]
            a, b = a + b * c, b * w
        fix = INF if b == 1 else a / (1 - b)
        val[x] = fix
        for y in reversed(cyc[1:]):
            nxt = policy[y][1]
            _, _, c, w, _ = policy[y]
            val[y] = INF if val[nxt] == INF else c + w * val[nxt]
        for y in reversed(chain[: pos[x]]):
            nxt = policy[y][1]
            _, _, c, w, _ = policy[y]
            val[y] = INF if val[nxt] == INF else c + w * val[nxt]
    return val


def generalized_shortest_path(g: CostGraph, epsilon=DEFAULT_EPSILON) -> GspResult:
    _validate(g)
    s, t = g.source, g.target
    if s == t:
        return GspResult("attained", Fraction(0), [], values={t: Fraction(0)})
    live = useful_edges(g.edges, s, t)
    if not live:
        return GspResult("unreachable")
    live.sort(key=lambda e: (str(e[4]), str(e[1])))
    out: dict = {}
    for e in live:
        out.setdefault(e[0], []).append(e)
    # initial proper policy: a BFS tree towards t
    policy: dict = {}
    todo = deque([t])
    seen = {t}
    back: dict = {}
    for e in live:
        back.setdefault(e[1], []).append(e)
    while todo:
        x = todo.popleft()
        for e in back.get(x, ()):
            if e[0] not in seen:
                seen.add(e[0])
                policy[e[0]] = e
                todo.append(e[0])
    while True:
        val = _policy_values(policy, t)
        improved = False
        for u, edges in out.items():
            best = policy[u]
            best_val = val[u]
            for e in edges:
                cand = e[2] + e[3] * val[e[1]] if val[e[1]] != INF else INF
                if cand < best_val:
                    best, best_val = e, cand
            if best is not policy[u]:
                policy[u] = best
                improved = True
        if not improved:
            break
    # tight edges realize the optimal values; t reachable through them means attained
    tight = [e for e in live if val[e[1]] != INF and e[2] + e[3] * val[e[1]] == val[e[0]]]
    path = bfs_path([(e[0], e[1], e, e[4]) for e in tight], s, t)
    if path is not None:
        return GspResult("attained", val[s], [p[2] for p in path], values=val)
    # follow the optimal policy from s into its cycle
    entry, x, visited = [], s, {}
    while x not in visited:
        visited[x] = len(entry)
        entry.append(policy[x])
        x = policy[x][1]
    cyc = entry[visited[x]:]
    entry = entry[: visited[x]]
    exit_path = bfs_path([(e[0], e[1], e, e[4]) for e in live], x, t) or []
    exit_full = [p[2] for p in exit_path]
    return GspResult("infimum", val[s], lasso=(entry, cyc, exit_full), values=val)
