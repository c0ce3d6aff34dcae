"""Weighted automata to CRAs (subset construction) and back."""

from __future__ import annotations

from ..core.expr import Const, Expr, Min, Plus, Reg, Scale, affine_form, minplus_form
from ..core.grammar import GrammarKind
from ..core.machines import Cra, Semiring, WeightedAutomaton
from ..errors import NotLinearForm


def _subset_state(ps) -> str:
    return "{" + ",".join(ps) + "}"


def _reg(p: str) -> str:
    return "x." + p


def _sum_expr(s: Semiring, terms: list[tuple[str | None, object]]) -> Expr:
    """Semiring sum of reg (x) weight terms; reg None means a bare constant."""
    parts: list[Expr] = []
    for r, w in terms:
        if s is Semiring.MinPlus:
            if r is None:
                parts.append(Const(w))
            else:
                parts.append(Reg(r) if w == 0 else Plus(Reg(r), Const(w)))
        else:
            if r is None:
                parts.append(Const(w))
            else:
                parts.append(Reg(r) if w == 1 else Scale(w, Reg(r)))
    if not parts:
        return Const(s.zero)
    if len(parts) == 1:
        return parts[0]
    if s is Semiring.MinPlus:
        return Min(tuple(parts))
    out = parts[0]
    for e in parts[1:]:
        out = Plus(out, e)
    return out


def wa_to_cra(wa: WeightedAutomaton) -> Cra:
    """Determinize by the subset construction; register x.p holds the best weight to p.

    Only subsets reachable from the initial one are built; initial weights
    become initial register values.
    """
    s = wa.semiring
    grammar = GrammarKind.MinPlusC if s is Semiring.MinPlus else GrammarKind.AffineLinear
    index = {p: i for i, p in enumerate(wa.states)}
    edges = wa.out_edges()

    def key(ps):
        return tuple(sorted(ps, key=index.__getitem__))

    start = key(wa.initial_weights)
    order = [start]
    seen = {start}
    delta, rho, mu = {}, {}, {}
    for S in order:
        name = _subset_state(S)
        for a in wa.alphabet:
            incoming: dict[str, list] = {}
            for p in S:
                for w, p2 in edges.get((p, a), []):
                    incoming.setdefault(p2, []).append((_reg(p), w))
            T = key(incoming)
            if T not in seen:
                seen.add(T)
                order.append(T)
            delta[(name, a)] = _subset_state(T)
            upd = {}
            for p2 in wa.states:
                if p2 in incoming:
                    upd[_reg(p2)] = _sum_expr(s, incoming[p2])
                else:
                    upd[_reg(p2)] = Const(s.zero)
            rho[(name, a)] = upd
        finals = [(_reg(p), wa.final_weights[p]) for p in S if p in wa.final_weights]
        if finals:
            mu[name] = _sum_expr(s, finals)
    init = {_reg(p): wa.initial_weights.get(p, s.zero) for p in wa.states}
    return Cra(
        alphabet=wa.alphabet,
        states=tuple(_subset_state(S) for S in order),
        initial=_subset_state(start),
        registers=tuple(_reg(p) for p in wa.states),
        delta=delta,
        rho=rho,
        mu=mu,
        grammar=grammar,
        init_values=init,
    )


def _linear_parts(e: Expr, s: Semiring):
    if s is Semiring.MinPlus:
        return minplus_form(e)
    coeffs, const = affine_form(e)
    return coeffs, const


def cra_to_wa(m: Cra) -> WeightedAutomaton:
    """WA over Q x X + Q whose path sums reproduce each register value.

    Min/+c machines give min-plus WAs; affine machines give plus-times WAs.
    State ``q`` carries the unit path used for constant offsets.
    """
    if m.grammar is GrammarKind.MinPlusC:
        s = Semiring.MinPlus
    elif m.grammar.affine:
        s = Semiring.PlusTimes
    else:
        raise NotLinearForm(f"grammar {m.grammar.keyword} has no linear form")
    states = [q for q in m.states] + [f"{q}/{x}" for q in m.states for x in m.registers]
    init = {m.initial: s.one}
    for x in m.registers:
        init[f"{m.initial}/{x}"] = m.init_values[x]
    trans = []
    for q in m.states:
        for a in m.alphabet:
            p = m.delta[(q, a)]
            trans.append((q, a, s.one, p))
            for x, e in m.rho[(q, a)].items():
                coeffs, const = _linear_parts(e, s)
                for y, w in coeffs.items():
                    trans.append((f"{q}/{y}", a, w, f"{p}/{x}"))
                trans.append((q, a, const, f"{p}/{x}"))
    final = {}
    for q, e in m.mu.items():
        coeffs, const = _linear_parts(e, s)
        for y, w in coeffs.items():
            final[f"{q}/{y}"] = w
        final[q] = const
    return WeightedAutomaton(m.alphabet, tuple(states), init, final, trans, s)

