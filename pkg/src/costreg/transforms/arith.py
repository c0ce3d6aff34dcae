"""Sum and difference of additive CRAs."""

from __future__ import annotations

from ..core.expr import Const, Expr, Plus, Reg, Scale, affine_form
from ..core.grammar import GrammarKind
from ..core.machines import Cra
from ..errors import AlphabetMismatch, GrammarMismatch

_ADDITIVE = (
    GrammarKind.PlusC,
    GrammarKind.Plus,
    GrammarKind.IncScale,
    GrammarKind.PastDiscount,
    GrammarKind.AffineLinear,
)


def _inc_parts(e: Expr) -> tuple[str | None, object]:
    coeffs, const = affine_form(e)
    if not coeffs:
        return None, const
    (r, k), = coeffs.items()
    assert k == 1
    return r, const


def _inc_expr(reg: str | None, const) -> Expr:
    if reg is None:
        return Const(const)
    return Reg(reg) if const == 0 else Plus(Reg(reg), Const(const))


def _neg_rename(e: Expr, prefix: str) -> Expr:
    """-e with every register renamed ``prefix + name`` (the renamed registers hold negated values)."""
    if isinstance(e, Reg):
        return Reg(prefix + e.name)
    if isinstance(e, Const):
        return Const(-e.value)
    if isinstance(e, Plus):
        return Plus(_neg_rename(e.left, prefix), _neg_rename(e.right, prefix))
    if isinstance(e, Scale):
        return Scale(e.factor, _neg_rename(e.arg, prefix))
    raise GrammarMismatch(f"cannot negate {type(e).__name__}")


def _rename(e: Expr, prefix: str) -> Expr:
    if isinstance(e, Reg):
        return Reg(prefix + e.name)
    if isinstance(e, Plus):
        return Plus(_rename(e.left, prefix), _rename(e.right, prefix))
    if isinstance(e, Scale):
        return Scale(e.factor, _rename(e.arg, prefix))
    return e


def _check(m1: Cra, m2: Cra):
    if tuple(m1.alphabet) != tuple(m2.alphabet) and set(m1.alphabet) != set(m2.alphabet):
        raise AlphabetMismatch("machines have different alphabets")
    for m in (m1, m2):
        if m.grammar not in _ADDITIVE:
            raise GrammarMismatch(f"grammar {m.grammar.keyword} is not additive")


def _pname(q1: str, q2: str) -> str:
    return f"<{q1},{q2}>"


def _product_states(m1: Cra, m2: Cra):
    start = (m1.initial, m2.initial)
    order = [start]
    seen = {start}
    for q1, q2 in order:
        for a in m1.alphabet:
            nxt = (m1.delta[(q1, a)], m2.delta[(q2, a)])
            if nxt not in seen:
                seen.add(nxt)
                order.append(nxt)
    return order


def _combine(m1: Cra, m2: Cra, sign: int) -> Cra:
    _check(m1, m2)
    pairs = _product_states(m1, m2)
    if m1.grammar is GrammarKind.PlusC and m2.grammar is GrammarKind.PlusC:
        return _combine_inc(m1, m2, sign, pairs)
    return _combine_union(m1, m2, sign, pairs)


def _combine_union(m1: Cra, m2: Cra, sign: int, pairs) -> Cra:
    # disjoint registers; right-hand registers hold negated values for differences
    side = {m1.grammar, m2.grammar}
    grammar = GrammarKind.Plus if side <= {GrammarKind.Plus, GrammarKind.PlusC} else GrammarKind.AffineLinear
    regs = tuple("l." + x for x in m1.registers) + tuple("r." + y for y in m2.registers)
    tr2 = (lambda e: _rename(e, "r.")) if sign > 0 else (lambda e: _neg_rename(e, "r."))
    init = {"l." + x: v for x, v in m1.init_values.items()}
    init.update({"r." + y: (v if sign > 0 else -v) for y, v in m2.init_values.items()})
    delta, rho, mu = {}, {}, {}
    for q1, q2 in pairs:
        p = _pname(q1, q2)
        for a in m1.alphabet:
            delta[(p, a)] = _pname(m1.delta[(q1, a)], m2.delta[(q2, a)])
            upd = {"l." + x: _rename(e, "l.") for x, e in m1.rho[(q1, a)].items()}
            upd.update({"r." + y: tr2(e) for y, e in m2.rho[(q2, a)].items()})
            rho[(p, a)] = upd
        if q1 in m1.mu and q2 in m2.mu:
            mu[p] = Plus(_rename(m1.mu[q1], "l."), tr2(m2.mu[q2]))
    return Cra(
        alphabet=m1.alphabet,
        states=tuple(_pname(*qq) for qq in pairs),
        initial=_pname(*pairs[0]),
        registers=regs,
        delta=delta,
        rho=rho,
        mu=mu,
        grammar=grammar,
        init_values=init,
    )


def _combine_inc(m1: Cra, m2: Cra, sign: int, pairs) -> Cra:
    # registers x~y hold v1(x) + sign * v2(y); singletons l.x hold v1(x), r.y hold sign * v2(y)
    X, Y = m1.registers, m2.registers
    pair_regs = [f"l.{x}~r.{y}" for x in X for y in Y]
    regs = tuple(pair_regs) + tuple("l." + x for x in X) + tuple("r." + y for y in Y)
    init = {}
    for x in X:
        init["l." + x] = m1.init_values[x]
        for y in Y:
            init[f"l.{x}~r.{y}"] = m1.init_values[x] + sign * m2.init_values[y]
    for y in Y:
        init["r." + y] = sign * m2.init_values[y]

    def both(r1, c1, r2, c2) -> Expr:
        c = c1 + sign * c2
        if r1 is not None and r2 is not None:
            return _inc_expr(f"l.{r1}~r.{r2}", c)
        if r1 is not None:
            return _inc_expr("l." + r1, c)
        if r2 is not None:
            return _inc_expr("r." + r2, c)
        return Const(c)

    delta, rho, mu = {}, {}, {}
    for q1, q2 in pairs:
        p = _pname(q1, q2)
        for a in m1.alphabet:
            delta[(p, a)] = _pname(m1.delta[(q1, a)], m2.delta[(q2, a)])
            u1 = {x: _inc_parts(e) for x, e in m1.rho[(q1, a)].items()}
            u2 = {y: _inc_parts(e) for y, e in m2.rho[(q2, a)].items()}
            upd = {}
            for x in X:
                r1, c1 = u1[x]
                upd["l." + x] = _inc_expr(None if r1 is None else "l." + r1, c1)
                for y in Y:
                    r2, c2 = u2[y]
                    upd[f"l.{x}~r.{y}"] = both(r1, c1, r2, c2)
            for y in Y:
                r2, c2 = u2[y]
                upd["r." + y] = _inc_expr(None if r2 is None else "r." + r2, sign * c2)
            rho[(p, a)] = upd
        if q1 in m1.mu and q2 in m2.mu:
            r1, c1 = _inc_parts(m1.mu[q1])
            r2, c2 = _inc_parts(m2.mu[q2])
            mu[p] = both(r1, c1, r2, c2)
    return Cra(
        alphabet=m1.alphabet,
        states=tuple(_pname(*qq) for qq in pairs),
        initial=_pname(*pairs[0]),
        registers=regs,
        delta=delta,
        rho=rho,
        mu=mu,
        grammar=GrammarKind.PlusC,
        init_values=init,
    )


def sum_cra(m1: Cra, m2: Cra) -> Cra:
    """Machine computing m1(w) + m2(w) (undefined if either side is)."""
    return _combine(m1, m2, 1)


def diff_cra(m1: Cra, m2: Cra) -> Cra:
    """Machine computing m1(w) - m2(w) (undefined if either side is)."""
    return _combine(m1, m2, -1)
