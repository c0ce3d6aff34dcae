"""Shortest paths on labeled digraphs with exact weights."""

from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass
from itertools import count
from typing import Hashable, Iterable, Sequence

from ..core.ext import INF

Edge = tuple  # (u, v, weight, label)


def _sort_key(e: Edge):
    return (str(e[3]), str(e[1]))


def reachable(edges: Iterable[Edge], src, reverse: bool = False) -> set:
    adj: dict = {}
    for u, v, *_ in edges:
        a, b = (v, u) if reverse else (u, v)
        adj.setdefault(a, []).append(b)
    seen = {src}
    todo = [src]
    while todo:
        x = todo.pop()
        for y in adj.get(x, ()):
            if y not in seen:
                seen.add(y)
                todo.append(y)
    return seen


def useful_edges(edges: Sequence[Edge], s, t) -> list[Edge]:
    """Edges on some s-t walk."""
    fwd = reachable(edges, s)
    bwd = reachable(edges, t, reverse=True)
    return [e for e in edges if e[0] in fwd and e[1] in bwd and e[0] in bwd and e[1] in fwd]


def bfs_path(edges: Sequence[Edge], s, t) -> list[Edge] | None:
    """Fewest-edge s-t path, ties broken by (label, target)."""
    if s == t:
        return []
    adj: dict = {}
    for e in sorted(edges, key=_sort_key):
        adj.setdefault(e[0], []).append(e)
    parent: dict = {s: None}
    todo = deque([s])
    while todo:
        x = todo.popleft()
        for e in adj.get(x, ()):
            if e[1] not in parent:
                parent[e[1]] = e
                if e[1] == t:
                    return _trace(parent, t)
                todo.append(e[1])
    return None


def _trace(parent: dict, t) -> list[Edge]:
    path = []
    x = t
    while parent[x] is not None:
        e = parent[x]
        path.append(e)
        x = e[0]
    path.reverse()
    return path


@dataclass
class PathResult:
    status: str  # "finite", "negative-cycle", "unreachable"
    dist: object = None
    path: list | None = None
    cycle: list | None = None  # edges of a negative cycle
    cycle_entry: list | None = None  # s -> cycle start
    cycle_exit: list | None = None  # cycle start -> t


def dijkstra(edges: Sequence[Edge], s, t) -> PathResult:
    adj: dict = {}
    for e in sorted(edges, key=_sort_key):
        adj.setdefault(e[0], []).append(e)
    dist = {s: 0}
    parent: dict = {s: None}
    tie = count()
    heap = [(0, next(tie), s)]
    done = set()
    while heap:
        d, _, x = heapq.heappop(heap)
        if x in done:
            continue
        done.add(x)
        if x == t:
            break
        for e in adj.get(x, ()):
            nd = d + e[2]
            if e[1] not in dist or nd < dist[e[1]]:
                dist[e[1]] = nd
                parent[e[1]] = e
                heapq.heappush(heap, (nd, next(tie), e[1]))
    if t not in dist:
        return PathResult("unreachable")
    return PathResult("finite", dist[t], _trace(parent, t))


def bellman_ford(edges: Sequence[Edge], s, t) -> PathResult:
    """Exact Bellman-Ford; only cycles lying on s-t walks count as negative."""
    live = useful_edges(edges, s, t)
    if not live and s != t:
        return PathResult("unreachable")
    live = sorted(live, key=_sort_key)
    nodes = {s, t} | {e[0] for e in live} | {e[1] for e in live}
    dist = {s: 0}
    parent: dict = {s: None}
    changed_at = None
    for _ in range(len(nodes)):
        changed_at = None
        for e in live:
            u, v, w, _ = e
            if u in dist and (v not in dist or dist[u] + w < dist[v]):
                dist[v] = dist[u] + w
                parent[v] = e
                changed_at = v
        if changed_at is None:
            break
    if changed_at is None:
        if t not in dist:
            return PathResult("unreachable")
        return PathResult("finite", dist[t], _trace(parent, t))
    # walk back n steps to land on the cycle
    x = changed_at
    for _ in range(len(nodes)):
        x = parent[x][0]
    cyc = []
    y = x
    while True:
        e = parent[y]
        cyc.append(e)
        y = e[0]
        if y == x:
            break
    cyc.reverse()
    return PathResult(
        "negative-cycle",
        cycle=cyc,
        cycle_entry=bfs_path(live, s, x),
        cycle_exit=bfs_path(live, x, t),
    )


def shortest_path(edges: Sequence[Edge], s, t) -> PathResult:
    """Dijkstra when all weights are nonnegative, Bellman-Ford otherwise.

    Edges of weight +inf are ignored.
    """
    finite = [e for e in edges if e[2] != INF]
    live = useful_edges(finite, s, t)
    if s != t and not live:
        return PathResult("unreachable")
    if all(e[2] >= 0 for e in live):
        return dijkstra(live, s, t)
    return bellman_ford(live, s, t)


def labels(path: Iterable[Edge]) -> tuple:
    return tuple(e[3] for e in path if e[3] is not None)


def nodes_of(edges: Iterable[Edge]) -> set[Hashable]:
    out = set()
    for e in edges:
        out.add(e[0])
        out.add(e[1])
    return out
