"""Global discounts: a word costs (sum of increments) * (product of discounts).

Increments are naturals bounded by ``b``, so total costs along simple paths
are bounded and a table indexed by (round, vertex, total cost) storing the
smallest discount product finds the optimum.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..core.expr import Expr, PairConst, PairIncr, Reg
from ..core.grammar import GrammarKind
from ..core.machines import Cra
from ..errors import GrammarMismatch, IncrementOutOfRange, UnsupportedConstants
from .graphs import bfs_path, useful_edges
from .outcome import Empty, Finite, Unbounded

_S, _T = ("source",), ("target",)
_R = "~"


@dataclass
class DiscountGraph:
    edges: list[tuple]  # (u, v, cost: int, discount: Fraction, label)
    source: object = _S
    target: object = _T

    @property
    def vertices(self) -> list:
        seen = {self.source: None, self.target: None}
        for u, v, *_ in self.edges:
            seen.setdefault(u)
            seen.setdefault(v)
        return list(seen)


def _chain(e: Expr, b: int, where: str) -> tuple[str | None, int, Fraction]:
    """Fold ``incr(incr(x, (c1, d1)), (c2, d2))`` to (x, c1 + c2, d1 * d2)."""
    if isinstance(e, Reg):
        return e.name, 0, Fraction(1)
    if isinstance(e, PairConst):
        if (e.c, e.d) != (0, 1):
            raise UnsupportedConstants(f"{where}: literal must be (0, 1)")
        return None, 0, Fraction(1)
    if isinstance(e, PairIncr) and isinstance(e.by, tuple):
        x, c, d = _chain(e.arg, b, where)
        ic, idd = e.by
        if ic != int(ic) or not (0 <= ic <= b):
            raise IncrementOutOfRange(f"{where}: increment {ic} not a natural <= {b}")
        return x, c + int(ic), d * Fraction(idd)
    raise GrammarMismatch(f"{where}: not a global-discount expression")


def global_discount_graph(m: Cra, b: int) -> DiscountGraph:
    if m.grammar is not GrammarKind.GlobalDiscount:
        raise GrammarMismatch(f"expected global-discount, got {m.grammar.keyword}")
    m = m.prune()
    for x, v in m.init_values.items():
        if tuple(v) != (0, 1):
            raise UnsupportedConstants(f"initial value of {x} must be (0, 1)")
    edges = [(_S, (m.initial, x), 0, Fraction(1), None) for x in m.registers]
    edges.append((_S, (m.initial, _R), 0, Fraction(1), None))
    for (q, a), upd in m.rho.items():
        p = m.delta[(q, a)]
        edges.append(((q, _R), (p, _R), 0, Fraction(1), a))
        for x, e in upd.items():
            y, c, d = _chain(e, b, f"update of {x} on ({q}, {a})")
            edges.append(((q, y if y is not None else _R), (p, x), c, d, a))
    for q, e in m.mu.items():
        y, c, d = _chain(e, b, f"output at {q}")
        edges.append(((q, y if y is not None else _R), _T, c, d, None))
    return DiscountGraph(edges)


def _key(e):
    return (str(e[4]), str(e[1]))


def discount_table(g: DiscountGraph, rounds: int, max_cost: int):
    """Tables[i][(v, c)] = least discount product over walks s -> v with at most i
    edges and total cost exactly c, plus parent pointers per round."""
    edges = sorted(g.edges, key=_key)
    tables = [{(g.source, 0): Fraction(1)}]
    parents: list[dict] = [{}]
    for _ in range(rounds):
        prev = tables[-1]
        cur = dict(prev)
        par: dict = {}
        for e in edges:
            u, v, c, d, _ = e
            for (x, k), val in prev.items():
                if x != u or k + c > max_cost:
                    continue
                cand = val * d
                cell = (v, k + c)
                if cell not in cur or cand < cur[cell]:
                    cur[cell] = cand
                    par[cell] = (e, k)
        tables.append(cur)
        parents.append(par)
    return tables, parents


def _reconstruct(parents, i: int, cell) -> list[tuple]:
    path = []
    v, k = cell
    while i > 0:
        if (v, k) in parents[i]:
            e, k_prev = parents[i][(v, k)]
            path.append(e)
            v, k = e[0], k_prev
        i -= 1
    path.reverse()
    return path


def _word(path) -> tuple:
    return tuple(e[4] for e in path if e[4] is not None)


def _sccs(edges) -> dict:
    """Map vertex -> component id (Tarjan, iterative)."""
    adj: dict = {}
    for e in edges:
        adj.setdefault(e[0], []).append(e[1])
        adj.setdefault(e[1], [])
    index, low, comp = {}, {}, {}
    stack, on = [], set()
    counter = 0
    for root in adj:
        if root in index:
            continue
        work = [(root, iter(adj[root]))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on.add(root)
        while work:
            v, it = work[-1]
            nxt = next(it, None)
            if nxt is not None:
                if nxt not in index:
                    index[nxt] = low[nxt] = counter
                    counter += 1
                    stack.append(nxt)
                    on.add(nxt)
                    work.append((nxt, iter(adj[nxt])))
                elif nxt in on:
                    low[v] = min(low[v], index[nxt])
                continue
            work.pop()
            if work:
                low[work[-1][0]] = min(low[work[-1][0]], low[v])
            if low[v] == index[v]:
                while True:
                    x = stack.pop()
                    on.discard(x)
                    comp[x] = v
                    if x == v:
                        break
    return comp


def discounting_cycle(edges) -> tuple | None:
    """(entry, cycle, exit) edge lists for a cycle on an s-t walk with some discount < 1."""
    live = useful_edges(edges, _S, _T)
    comp = _sccs(live)
    for e in sorted(live, key=_key):
        u, v, _, d, _ = e
        if d < 1 and comp[u] == comp[v]:
            inside = [f for f in live if comp[f[0]] == comp[u] and comp[f[1]] == comp[u]]
            back = bfs_path(inside, v, u)
            return bfs_path(live, _S, u), [e] + back, bfs_path(live, u, _T)
    return None


def mincost_global_discount(m: Cra, b: int):
    g = global_discount_graph(m, b)
    live = useful_edges(g.edges, g.source, g.target)
    if not live:
        return Empty("no word has a defined output")
    # a zero discount anywhere on an s-t walk, or a zero-cost path, attains 0
    zero_cost = bfs_path([e for e in live if e[2] == 0], g.source, g.target)
    if zero_cost is not None:
        return Finite(Fraction(0), _word(zero_cost))
    for e in sorted(live, key=_key):
        if e[3] == 0:
            path = bfs_path(live, g.source, e[0]) + [e] + bfs_path(live, e[1], g.target)
            return Finite(Fraction(0), _word(path))
    lasso = discounting_cycle(live)
    if lasso is not None:
        entry, cyc, exit_ = (_word(p) for p in lasso)
        return Unbounded(Fraction(0), (entry, cyc, exit_), "repeating a discounting cycle drives the value to 0")
    # every cycle on an s-t walk keeps the discount: simple paths suffice
    n = len(g.vertices)
    max_cost = (n - 1) * max(e[2] for e in live)
    tables, parents = discount_table(DiscountGraph(live), n - 1, max_cost)
    last = tables[n - 1]
    best = None
    for (v, k), d in sorted(last.items(), key=lambda kv: kv[0][1]):
        if v != g.target:
            continue
        val = d * k
        if best is None or val < best[0]:
            best = (val, k)
    val, k = best
    return Finite(val, _word(_reconstruct(parents, n - 1, (g.target, k))))
