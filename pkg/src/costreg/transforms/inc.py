"""Increment-only machines: subset registers, single-valued WAs, the M_k family."""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from ..core.checks import check_copyless
from ..core.expr import Const, Expr, Plus, Reg, affine_form
from ..core.grammar import GrammarKind
from ..core.machines import Cra, Semiring, WeightedAutomaton
from ..errors import GrammarMismatch, NotCopyless


def subset_name(subset) -> str:
    return "x{" + "|".join(subset) + "}"


def all_subsets(items) -> list[tuple[str, ...]]:
    items = tuple(items)
    return [c for k in range(len(items) + 1) for c in combinations(items, k)]


def _inc(reg: str | None, const) -> Expr:
    if reg is None:
        return Const(const)
    return Reg(reg) if const == 0 else Plus(Reg(reg), Const(const))


def copyless_plus_to_inc(m: Cra) -> Cra:
    """Copyless CRA(+) to CRA(+c) with one register per subset of registers.

    Register ``x{S}`` holds the sum of the original registers in S; the
    empty-set register is pinned to 0.
    """
    if m.grammar not in (GrammarKind.Plus, GrammarKind.PlusC):
        raise GrammarMismatch(f"expected a plus machine, got {m.grammar.keyword}")
    report = check_copyless(m)
    if not report:
        raise NotCopyless(f"register reuse: {report.violations[:3]}")
    order = {x: i for i, x in enumerate(m.registers)}
    subsets = all_subsets(m.registers)

    def target(expr_sum: list[Expr]) -> Expr:
        regs: set[str] = set()
        const = Fraction(0)
        for e in expr_sum:
            coeffs, c = affine_form(e)
            regs.update(coeffs)
            const += c
        key = tuple(sorted(regs, key=order.__getitem__))
        if not key:
            return Const(const)
        return _inc(subset_name(key), const)

    rho = {}
    for (q, a), upd in m.rho.items():
        new = {}
        for S in subsets:
            if not S:
                new[subset_name(S)] = Const(Fraction(0))
            else:
                new[subset_name(S)] = target([upd[x] for x in S])
        rho[(q, a)] = new
    mu = {q: target([e]) for q, e in m.mu.items()}
    init = {subset_name(S): sum((m.init_values[x] for x in S), Fraction(0)) for S in subsets}
    return m.replace(
        registers=tuple(subset_name(S) for S in subsets),
        rho=rho,
        mu=mu,
        grammar=GrammarKind.PlusC,
        init_values=init,
    ).prune()


def wa_state(q: str, x: str | None) -> str:
    return f"{q}/{'~' if x is None else x}"


def _inc_parts(e: Expr):
    coeffs, const = affine_form(e)
    if not coeffs:
        return None, const
    (r, k), = coeffs.items()
    if k != 1:
        raise GrammarMismatch("not an increment expression")
    return r, const


def inc_to_single_valued_wa(m: Cra) -> WeightedAutomaton:
    """Single-valued min-plus WA over Q x (X + {reset}) equivalent to a CRA(+c)."""
    if m.grammar is not GrammarKind.PlusC:
        raise GrammarMismatch(f"expected plus-c, got {m.grammar.keyword}")
    cols: list[str | None] = list(m.registers) + [None]
    states = tuple(wa_state(q, x) for q in m.states for x in cols)
    init = {wa_state(m.initial, x): m.init_values[x] for x in m.registers}
    init[wa_state(m.initial, None)] = Fraction(0)
    trans = []
    for q in m.states:
        for a in m.alphabet:
            p = m.delta[(q, a)]
            for x, e in m.rho[(q, a)].items():
                y, c = _inc_parts(e)
                trans.append((wa_state(q, y), a, c, wa_state(p, x)))
            trans.append((wa_state(q, None), a, Fraction(0), wa_state(p, None)))
    final = {}
    for q, e in m.mu.items():
        y, c = _inc_parts(e)
        final[wa_state(q, y)] = c
    return WeightedAutomaton(m.alphabet, states, init, final, trans, Semiring.MinPlus)


def gen_modk_cra(k: int) -> Cra:
    """Unary machine M_k computing ((n mod k) + 1) * n on words of length n."""
    if k < 1:
        raise ValueError("k must be at least 1")
    states = tuple(f"q{i}" for i in range(k))
    regs = tuple(f"v{i}" for i in range(1, k + 1))
    delta, rho, mu = {}, {}, {}
    for i, q in enumerate(states):
        delta[(q, "1")] = states[(i + 1) % k]
        rho[(q, "1")] = {f"v{j}": Plus(Reg(f"v{j}"), Const(Fraction(j))) for j in range(1, k + 1)}
        mu[q] = Reg(f"v{i + 1}")
    return Cra(("1",), states, states[0], regs, delta, rho, mu, GrammarKind.PlusC)
