"""Exact evaluators for CRAs (optionally with look-ahead) and weighted automata."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .core.expr import Const, Expr, Min, PairConst, PairIncr, PairSum, Plus, Reg, Scale, Subst
from .core.ext import add, mul, render
from .core.grammar import GrammarKind
from .core.machines import Cra, LookaheadDfa, Semiring, WeightedAutomaton, as_word
from .errors import PathExplosion, UnknownSymbol


class _Undefined:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self) -> str:
        return "Undefined"

    def __bool__(self) -> bool:
        return False


UNDEFINED = _Undefined()


def is_undefined(v) -> bool:
    return v is UNDEFINED


@dataclass(frozen=True)
class Configuration:
    state: str
    valuation: dict


def pair_semiring(g: GrammarKind) -> Semiring:
    return Semiring.MinPlus if g is GrammarKind.PairMinPlus else Semiring.PlusTimes


def eval_expr(e: Expr, nu: Mapping[str, object], g: GrammarKind):
    if g.is_pair:
        return _eval_pair(e, nu, g, pair_semiring(g))
    return _eval_scalar(e, nu)


def _eval_scalar(e: Expr, nu):
    if isinstance(e, Const):
        return e.value
    if isinstance(e, Reg):
        return nu[e.name]
    if isinstance(e, Plus):
        return add(_eval_scalar(e.left, nu), _eval_scalar(e.right, nu))
    if isinstance(e, Min):
        return min(_eval_scalar(a, nu) for a in e.args)
    if isinstance(e, Scale):
        return mul(e.factor, _eval_scalar(e.arg, nu))
    raise TypeError(f"pair expression in scalar context: {e!r}")


def _eval_pair(e: Expr, nu, g: GrammarKind, s: Semiring):
    if isinstance(e, Reg):
        return nu[e.name]
    if isinstance(e, PairConst):
        return (e.c, e.d)
    if isinstance(e, PairSum):
        c1, d1 = _eval_pair(e.left, nu, g, s)
        c2, _ = _eval_pair(e.right, nu, g, s)
        return (s.plus(c1, c2), d1)
    if isinstance(e, PairIncr):
        c, d = _eval_pair(e.arg, nu, g, s)
        if isinstance(e.by, tuple):
            # global discount: c-component tracks (sum of costs) * (product of discounts)
            ic, idd = e.by
            return (idd * c + d * idd * ic, d * idd)
        return (s.times(c, e.by), s.times(d, e.by))
    if isinstance(e, Subst):
        c1, d1 = _eval_pair(e.outer, nu, g, s)
        c2, d2 = _eval_pair(e.inner, nu, g, s)
        return (s.plus(c1, s.times(d1, c2)), s.times(d1, d2))
    raise TypeError(f"scalar expression in pair context: {e!r}")


def apply_update(m: Cra, q: str, a: str, nu: Mapping[str, object]) -> dict:
    """Parallel register update for one transition."""
    upd = m.rho[(q, a)]
    return {x: eval_expr(upd[x], nu, m.grammar) for x in m.registers}


def run_cra(m: Cra, w) -> list[Configuration]:
    """All configurations visited on ``w``, starting with the initial one."""
    word = as_word(w, m.alphabet)
    syms = set(m.alphabet)
    q = m.initial
    nu = dict(m.init_values)
    out = [Configuration(q, nu)]
    for a in word:
        if a not in syms:
            raise UnknownSymbol(f"symbol {a!r} is not in the alphabet")
        nu = apply_update(m, q, a, nu)
        q = m.delta[(q, a)]
        out.append(Configuration(q, nu))
    return out


def output_of(m: Cra, conf: Configuration):
    e = m.mu.get(conf.state)
    if e is None:
        return UNDEFINED
    v = eval_expr(e, conf.valuation, m.grammar)
    return v[0] if m.grammar.is_pair else v


def eval_cra(m: Cra, w, trace: bool = False):
    """Output of ``m`` on ``w`` (UNDEFINED where mu is undefined).

    With ``trace=True`` returns ``(value, configurations)``.
    """
    confs = run_cra(m, w)
    v = output_of(m, confs[-1])
    return (v, confs) if trace else v


def format_trace(m: Cra, confs: list[Configuration]) -> str:
    lines = []
    for conf in confs:
        parts = []
        for x in m.registers:
            v = conf.valuation[x]
            if isinstance(v, tuple):
                parts.append(f"{x}=({render(v[0])},{render(v[1])})")
            else:
                parts.append(f"{x}={render(v)}")
        lines.append(f"{conf.state} | " + " ".join(parts))
    return "\n".join(lines)


def lookahead_labels(a: LookaheadDfa, w) -> tuple:
    """Label position j with the DFA state after reading w[k-1] ... w[j]."""
    word = as_word(w, a.alphabet)
    syms = set(a.alphabet)
    r = a.initial
    labels = []
    for sym in reversed(word):
        if sym not in syms:
            raise UnknownSymbol(f"symbol {sym!r} is not in the alphabet")
        r = a.delta[(r, sym)]
        labels.append(r)
    return tuple(reversed(labels))


def eval_cra_rla(m: Cra, a: LookaheadDfa, w):
    return eval_cra(m, lookahead_labels(a, w))


def _accepting_paths(wa: WeightedAutomaton, w, path_cap: int):
    word = as_word(w, wa.alphabet)
    syms = set(wa.alphabet)
    for s in word:
        if s not in syms:
            raise UnknownSymbol(f"symbol {s!r} is not in the alphabet")
    edges = wa.out_edges()
    found = 0
    stack = [(p, 0, (lam,)) for p, lam in sorted(wa.initial_weights.items(), reverse=True)]
    while stack:
        p, i, weights = stack.pop()
        if i == len(word):
            if p in wa.final_weights:
                found += 1
                if found > path_cap:
                    raise PathExplosion(f"more than {path_cap} accepting paths")
                yield weights + (wa.final_weights[p],)
            continue
        for c, q in reversed(edges.get((p, word[i]), [])):
            stack.append((q, i + 1, weights + (c,)))


def eval_wa(wa: WeightedAutomaton, w, path_cap: int = 100_000):
    s = wa.semiring
    out = UNDEFINED
    for weights in _accepting_paths(wa, w, path_cap):
        v = s.prod(weights)
        out = v if out is UNDEFINED else s.plus(out, v)
    return out


def count_accepting_paths(wa: WeightedAutomaton, w, path_cap: int = 100_000) -> int:
    return sum(1 for _ in _accepting_paths(wa, w, path_cap))
