"""Min-cost solvers: min over all words of a machine's output."""

from __future__ import annotations

from fractions import Fraction

from ..core.checks import check_copyless
from ..core.expr import Expr, PairConst, Reg, Subst, affine_form
from ..core.ext import INF
from ..core.grammar import GrammarKind
from ..core.machines import Cra, WeightedAutomaton
from ..errors import GrammarMismatch, NotCopyless, UnsupportedConstants
from ..transforms.inc import copyless_plus_to_inc, inc_to_single_valued_wa
from ..transforms.semiring import cra_to_wa
from .graphs import bfs_path, labels, shortest_path
from .gsp import DEFAULT_EPSILON, CostGraph, GspResult, generalized_shortest_path
from .outcome import Empty, Finite, Unbounded

_S, _T = ("source",), ("target",)


def _v(x) -> tuple:
    return ("v", x)


def wa_graph(wa: WeightedAutomaton) -> list[tuple]:
    """Edges (u, v, weight, label) of a min-plus WA with a super source and sink."""
    edges = [(_S, _v(p), w, None) for p, w in wa.initial_weights.items()]
    edges += [(_v(p), _v(q), w, a) for p, a, w, q in wa.transitions]
    edges += [(_v(p), _T, w, None) for p, w in wa.final_weights.items()]
    return edges


def _graph_outcome(edges: list[tuple]):
    res = shortest_path(edges, _S, _T)
    if res.status == "finite":
        return Finite(res.dist, labels(res.path))
    if res.status == "negative-cycle":
        lasso = (labels(res.cycle_entry), labels(res.cycle), labels(res.cycle_exit))
        return Unbounded(None, lasso, "negative cycle")
    # only paths through +inf weights (or none at all)
    path = bfs_path(edges, _S, _T)
    if path is None:
        return Empty("no word has a defined output")
    return Finite(INF, labels(path))


def mincost_inc(m: Cra):
    """Shortest path on the single-valued WA of a CRA(+c)."""
    if m.grammar is not GrammarKind.PlusC:
        raise GrammarMismatch(f"expected plus-c, got {m.grammar.keyword}")
    return _graph_outcome(wa_graph(inc_to_single_valued_wa(m.prune())))


def mincost_copyless_plus(m: Cra):
    if m.grammar not in (GrammarKind.Plus, GrammarKind.PlusC):
        raise GrammarMismatch(f"expected a plus machine, got {m.grammar.keyword}")
    report = check_copyless(m)
    if not report:
        raise NotCopyless(f"register reuse: {report.violations[:3]}")
    return mincost_inc(copyless_plus_to_inc(m))


def mincost_minplus(m: Cra):
    """Shortest path over the WA of a linear min/+c machine (+inf edges ignored)."""
    if m.grammar is not GrammarKind.MinPlusC:
        raise GrammarMismatch(f"expected min-plus, got {m.grammar.keyword}")
    return _graph_outcome(wa_graph(cra_to_wa(m.prune())))


# discounted models: generalized shortest path


def _gsp_outcome(res: GspResult, reverse: bool):
    def word(path):
        w = labels((u, v, c, lab) for u, v, c, _, lab in path)
        return tuple(reversed(w)) if reverse else w

    if res.status == "unreachable":
        return Empty("no word has a defined output")
    if res.status == "attained":
        return Finite(res.value, word(res.path))
    entry, cyc, exit_ = (word(p) for p in res.lasso)
    lasso = (exit_, cyc, entry) if reverse else (entry, cyc, exit_)
    return Unbounded(res.value, lasso, "infimum approached by repeating a discounting cycle")


def _scaled_parts(e: Expr, where: str) -> tuple[str | None, Fraction, Fraction]:
    """``d * x + c`` as (x, c, d); constants give (None, c, 1)."""
    coeffs, c = affine_form(e)
    if len(coeffs) > 1:
        raise UnsupportedConstants(f"{where}: more than one register")
    if c < 0:
        raise UnsupportedConstants(f"{where}: negative constant {c}")
    if not coeffs:
        return None, c, Fraction(1)
    (x, d), = coeffs.items()
    if not (0 < d <= 1):
        raise UnsupportedConstants(f"{where}: factor {d} outside (0, 1]")
    return x, c, d


def past_discount_graph(m: Cra) -> CostGraph:
    """Reversed graph: paths from s read the word right to left.

    Vertex (q, x) stands for "register x at state q", (q, "~") for a reset
    source; s enters through the output, t is reached at the initial state.
    """
    if m.grammar not in (GrammarKind.PastDiscount, GrammarKind.IncScale, GrammarKind.PlusC):
        raise GrammarMismatch(f"expected a scaled machine, got {m.grammar.keyword}")
    m = m.prune()
    g = CostGraph(_S, _T)
    r = "~"
    for x in m.registers:
        v0 = m.init_values[x]
        if v0 < 0:
            raise UnsupportedConstants(f"negative initial value {v0} for {x}")
        g.add((m.initial, x), _T, v0, 1)
    g.add((m.initial, r), _T, 0, 1)
    for (q, a), upd in m.rho.items():
        p = m.delta[(q, a)]
        g.add((p, r), (q, r), 0, 1, a)
        for x, e in upd.items():
            y, c, d = _scaled_parts(e, f"update of {x} on ({q}, {a})")
            g.add((p, x), (q, y if y is not None else r), c, d, a)
    for q, e in m.mu.items():
        y, c, d = _scaled_parts(e, f"output at {q}")
        g.add(_S, (q, y if y is not None else r), c, d)
    return g


def mincost_past_discount(m: Cra, epsilon=DEFAULT_EPSILON):
    return _gsp_outcome(generalized_shortest_path(past_discount_graph(m), epsilon), reverse=True)


def _future_parts(e: Expr, where: str) -> tuple[str | None, Fraction, Fraction]:
    """Normalize nested ``x[c1, d1][c2, d2]`` to (x, c, d) with one bracket."""
    if isinstance(e, Reg):
        return e.name, Fraction(0), Fraction(1)
    if isinstance(e, PairConst):
        return None, e.c, e.d
    if isinstance(e, Subst) and isinstance(e.inner, PairConst):
        x, c1, d1 = _future_parts(e.outer, where)
        return x, c1 + d1 * e.inner.c, d1 * e.inner.d
    raise UnsupportedConstants(f"{where}: not of the form x[c, d]")


def _check_future(c, d, where: str, weight: bool = True):
    if c < 0:
        raise UnsupportedConstants(f"{where}: negative cost {c}")
    if weight and not (0 < d <= 1):
        raise UnsupportedConstants(f"{where}: discount {d} outside (0, 1]")


def future_discount_graph(m: Cra) -> CostGraph:
    """Forward graph over (q, x) and (q, "~") (the empty register)."""
    if m.grammar is not GrammarKind.FutureDiscount:
        raise GrammarMismatch(f"expected future-discount, got {m.grammar.keyword}")
    m = m.prune()
    g = CostGraph(_S, _T)
    eps = "~"
    for x in m.registers:
        c0, d0 = m.init_values[x]
        _check_future(c0, d0, f"initial value of {x}")
        g.add(_S, (m.initial, x), c0, d0)
    g.add(_S, (m.initial, eps), 0, 1)
    for (q, a), upd in m.rho.items():
        p = m.delta[(q, a)]
        g.add((q, eps), (p, eps), 0, 1, a)
        for x, e in upd.items():
            where = f"update of {x} on ({q}, {a})"
            y, c, d = _future_parts(e, where)
            _check_future(c, d, where)
            g.add((q, y if y is not None else eps), (p, x), c, d, a)
    for q, e in m.mu.items():
        where = f"output at {q}"
        y, c, d = _future_parts(e, where)
        # the discount of the last bracket scales nothing
        _check_future(c, d, where, weight=False)
        g.add((q, y if y is not None else eps), _T, c, 1)
    return g


def mincost_future_discount(m: Cra, epsilon=DEFAULT_EPSILON):
    return _gsp_outcome(generalized_shortest_path(future_discount_graph(m), epsilon), reverse=False)
