"""Brute-force ground truth and seeded instance generators."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterator, Sequence

from .core.checks import check_copyless
from .core.expr import Const, Expr, Min, PairConst, PairIncr, PairSum, Plus, Reg, Scale, Subst
from .core.expr import registers as expr_registers
from .core.grammar import GrammarKind
from .core.machines import Cra, Semiring, WeightedAutomaton
from .mincost.outcome import Empty
from .semantics import eval_cra, is_undefined

# -- brute force ---------------------------------------------------------------


def words(alphabet: Sequence[str], maxlen: int) -> Iterator[tuple]:
    """All words of length <= maxlen, shortest first, lexicographic within a length."""
    for n in range(maxlen + 1):
        yield from product(alphabet, repeat=n)


def brute_mincost(m: Cra, model: str | None = None, maxlen: int = 6):
    """(value, witness) minimizing eval over |w| <= maxlen, or Empty.

    ``model`` only labels the query: every cost model is evaluated by the
    machine's own grammar semantics.  Ties go to the first word in
    breadth-first lexicographic order.
    """
    best = None
    for w in words(m.alphabet, maxlen):
        v = eval_cra(m, w)
        if is_undefined(v):
            continue
        if best is None or v < best[0]:
            best = (v, w)
    return Empty("no word up to the bound has a defined output") if best is None else best


@dataclass(frozen=True)
class Agree:
    maxlen: int

    def describe(self) -> str:
        return f"agree up to length {self.maxlen}"


@dataclass(frozen=True)
class Differ:
    word: tuple
    left: object
    right: object

    def describe(self) -> str:
        return f"differ on {''.join(self.word) or 'ε'}: {self.left} vs {self.right}"


def same_value(a, b) -> bool:
    if is_undefined(a) or is_undefined(b):
        return is_undefined(a) and is_undefined(b)
    return a == b


def brute_equiv(m1: Cra, m2: Cra, model: str | None = None, maxlen: int = 6, eval1=None, eval2=None):
    """Compare two machines on every word up to ``maxlen``.

    ``eval1``/``eval2`` override evaluation (e.g. for look-ahead machines).
    """
    e1 = eval1 or (lambda w: eval_cra(m1, w))
    e2 = eval2 or (lambda w: eval_cra(m2, w))
    for w in words(m1.alphabet, maxlen):
        a, b = e1(w), e2(w)
        if not same_value(a, b):
            return Differ(w, a, b)
    return Agree(maxlen)


# -- 3-SAT ---------------------------------------------------------------------


@dataclass(frozen=True)
class Formula3Sat:
    """Clauses are triples of (variable index in 1..n, polarity)."""

    n: int
    clauses: tuple[tuple[tuple[int, bool], ...], ...]

    def __post_init__(self):
        for cl in self.clauses:
            if len(cl) != 3:
                raise ValueError("every clause needs exactly 3 literals")
            for v, _ in cl:
                if not 1 <= v <= self.n:
                    raise ValueError(f"variable {v} outside 1..{self.n}")

    def unsatisfied(self, assignment: Sequence[bool]) -> int:
        return sum(not any(assignment[v - 1] == pol for v, pol in cl) for cl in self.clauses)

    def satisfiable(self) -> bool:
        return any(self.unsatisfied(bits) == 0 for bits in product((False, True), repeat=self.n))


def random_formula(n: int, k: int, seed: int) -> Formula3Sat:
    rng = random.Random(seed)
    clauses = tuple(
        tuple((rng.randint(1, n), rng.random() < 0.5) for _ in range(3)) for _ in range(k)
    )
    return Formula3Sat(n, clauses)


def gen_sat3(f: Formula3Sat) -> Cra:
    """Copyless CRA(+) whose min-cost is the least number of unsatisfied clauses.

    q0 sets every clause register to 1; q_i reads the value of v_i and clears
    the registers of clauses it satisfies; q_{n+1} sums the registers into x1;
    q_{n+2} outputs x1.
    """
    k = len(f.clauses)
    regs = tuple(f"x{j}" for j in range(1, k + 1))
    states = tuple(f"q{i}" for i in range(f.n + 3))
    alphabet = ("0", "1")
    delta, rho = {}, {}
    for a in alphabet:
        delta[("q0", a)] = "q1"
        rho[("q0", a)] = {x: Const(Fraction(1)) for x in regs}
        for i in range(1, f.n + 1):
            delta[(f"q{i}", a)] = f"q{i + 1}"
            value = a == "1"
            rho[(f"q{i}", a)] = {
                regs[j]: Const(Fraction(0))
                for j, cl in enumerate(f.clauses)
                if any(v == i and pol == value for v, pol in cl)
            }
        last = f"q{f.n + 1}"
        delta[(last, a)] = f"q{f.n + 2}"
        if regs:
            total: Expr = Reg(regs[0])
            for x in regs[1:]:
                total = Plus(total, Reg(x))
            rho[(last, a)] = {regs[0]: total, **{x: Const(Fraction(0)) for x in regs[1:]}}
        delta[(f"q{f.n + 2}", a)] = f"q{f.n + 2}"
    mu = {f"q{f.n + 2}": Reg(regs[0]) if regs else Const(Fraction(0))}
    return Cra(alphabet, states, "q0", regs, delta, rho, mu, GrammarKind.Plus)


# -- random machines -----------------------------------------------------------

_DISCOUNTS = (Fraction(1), Fraction(1, 2), Fraction(9, 10))


def _backbone(rng: random.Random, states: Sequence[str], alphabet: Sequence[str]) -> dict:
    """Total transition function in which every state is reachable from states[0]."""
    delta = {}
    slots = [(q, a) for q in states for a in alphabet]
    # spanning tree: each state i > 0 gets an incoming edge from some earlier state
    free = {q: list(alphabet) for q in states}
    for i, q in enumerate(states[1:], start=1):
        options = [p for p in states[:i] if free[p]]
        if not options:
            break
        p = rng.choice(options)
        a = free[p].pop(rng.randrange(len(free[p])))
        delta[(p, a)] = q
    for key in slots:
        delta.setdefault(key, rng.choice(states))
    return delta


def _const(rng, lo, hi) -> Fraction:
    return Fraction(rng.randint(lo, hi))


def _sum(parts: list[Expr]) -> Expr:
    out = parts[0]
    for e in parts[1:]:
        out = Plus(out, e)
    return out


def _scalar_expr(rng, g: GrammarKind, pool: list[str], lo, hi, copyless: bool) -> Expr:
    """Random right-hand side drawing registers from ``pool`` (consumed when copyless)."""

    def take() -> str | None:
        if not pool:
            return None
        x = rng.choice(pool)
        if copyless:
            pool.remove(x)
        return x

    def inc_term() -> Expr:
        x = take() if rng.random() < 0.85 else None
        c = _const(rng, lo, hi)
        if x is None:
            return Const(c)
        return Reg(x) if c == 0 and rng.random() < 0.5 else Plus(Reg(x), Const(c))

    if g is GrammarKind.PlusC:
        return inc_term()
    if g is GrammarKind.Plus:
        n = rng.randint(0, 2)
        regs = [x for x in (take() for _ in range(n)) if x is not None]
        parts: list[Expr] = [Reg(x) for x in regs]
        if not parts or rng.random() < 0.6:
            parts.append(Const(_const(rng, lo, hi)))
        return _sum(parts)
    if g is GrammarKind.MinPlusC:
        if rng.random() < 0.35:
            args = tuple(inc_term() for _ in range(2))
            return Min(args)
        return inc_term()
    if g in (GrammarKind.IncScale, GrammarKind.PastDiscount):
        x = take()
        if x is None:
            return Const(abs(_const(rng, lo, hi)))
        if rng.random() < 0.5:
            d = rng.choice(_DISCOUNTS[1:])
            c = abs(_const(rng, lo, hi))
            return Plus(Scale(d, Reg(x)), Const(c)) if c else Scale(d, Reg(x))
        return Plus(Reg(x), Const(abs(_const(rng, lo, hi))))
    if g is GrammarKind.AffineLinear:
        n = rng.randint(0, 2)
        regs = [x for x in (take() for _ in range(n)) if x is not None]
        parts = [Scale(Fraction(rng.choice((-1, 1, 2))), Reg(x)) for x in regs]
        parts.append(Const(_const(rng, lo, hi)))
        return _sum(parts)
    raise ValueError(f"no scalar generator for {g.keyword}")


def _pair_expr(rng, g: GrammarKind, pool: list[str], lo, hi) -> Expr:
    """Copyless pair expression for the pair grammars."""

    def take() -> str | None:
        if not pool:
            return None
        x = rng.choice(pool)
        pool.remove(x)
        return x

    def lit() -> Expr:
        if g is GrammarKind.GlobalDiscount:
            return PairConst(Fraction(0), Fraction(1))
        if g is GrammarKind.FutureDiscount:
            return PairConst(abs(_const(rng, lo, hi)), rng.choice(_DISCOUNTS))
        return PairConst(_const(rng, lo, hi), _const(rng, 0, max(hi, 1)))

    x = take() if rng.random() < 0.8 else None
    base: Expr = Reg(x) if x is not None else lit()
    if g is GrammarKind.GlobalDiscount:
        for _ in range(rng.randint(0, 1)):
            base = PairIncr(base, (Fraction(rng.randint(0, max(hi, 0))), rng.choice(_DISCOUNTS)))
        return base
    if g is GrammarKind.FutureDiscount:
        if rng.random() < 0.7:
            base = Subst(base, lit())
        return base
    r = rng.random()
    if r < 0.3:
        y = take()
        if y is not None:
            return (PairSum if rng.random() < 0.5 else Subst)(base, Reg(y))
    if r < 0.6:
        return PairIncr(base, _const(rng, lo, hi) if g is GrammarKind.PairMinPlus else _const(rng, 0, max(hi, 1)))
    return base


def random_cra(
    grammar: GrammarKind,
    states: int = 3,
    registers: int = 2,
    const_range: tuple[int, int] = (0, 3),
    seed: int = 0,
    copyless: bool = False,
    alphabet: Sequence[str] = ("a", "b"),
    output_rate: float = 0.8,
) -> Cra:
    """Seeded random machine; every state is reachable and updates fit ``grammar``.

    Pair grammars are always generated copyless.
    """
    rng = random.Random(seed)
    lo, hi = const_range
    qs = tuple(f"q{i}" for i in range(max(states, 1)))
    regs = tuple(f"x{i}" for i in range(1, registers + 1))
    delta = _backbone(rng, qs, alphabet)
    pair = grammar.is_pair
    rho = {}
    for q in qs:
        for a in alphabet:
            pool = list(regs)
            upd = {}
            for x in regs:
                if rng.random() < 0.2:
                    continue  # keep x := x, still consuming x when copyless
                if pair:
                    upd[x] = _pair_expr(rng, grammar, pool, lo, hi)
                else:
                    upd[x] = _scalar_expr(rng, grammar, pool, lo, hi, copyless)
            # copyless: registers left implicit (x := x) must not have been consumed elsewhere
            if copyless or pair:
                used = set()
                for e in upd.values():
                    used.update(expr_registers(e))
                for x in regs:
                    if x not in upd and x in used:
                        upd[x] = _pair_lit(grammar) if pair else Const(Fraction(0))
            rho[(q, a)] = upd
    mu = {}
    for q in qs:
        if rng.random() < output_rate:
            pool = list(regs)
            mu[q] = (_pair_expr(rng, grammar, pool, lo, hi) if pair
                     else _scalar_expr(rng, grammar, pool, lo, hi, copyless))
    init = {}
    if grammar is GrammarKind.MinPlusC:
        init = {x: _const(rng, lo, hi) for x in regs}
    m = Cra(tuple(alphabet), qs, qs[0], regs, delta, rho, mu, grammar, init)
    if (copyless or pair) and not check_copyless(m):
        raise AssertionError("generator produced a copyful machine")
    return m


def _pair_lit(g: GrammarKind) -> Expr:
    if g is GrammarKind.PairMinPlus:
        return PairConst(Fraction(0), Fraction(0))
    return PairConst(Fraction(0), Fraction(1))


def random_global_discount(states: int = 3, registers: int = 2, b: int = 3, seed: int = 0) -> Cra:
    return random_cra(GrammarKind.GlobalDiscount, states, registers, (0, b), seed)


def random_wa(
    states: int = 3,
    semiring: Semiring = Semiring.MinPlus,
    weight_range: tuple[int, int] = (0, 3),
    seed: int = 0,
    alphabet: Sequence[str] = ("a", "b"),
    density: float = 0.4,
) -> WeightedAutomaton:
    rng = random.Random(seed)
    lo, hi = weight_range
    ps = tuple(f"p{i}" for i in range(states))
    trans = []
    for p in ps:
        for a in alphabet:
            for q in ps:
                if rng.random() < density:
                    trans.append((p, a, _const(rng, lo, hi), q))
    init = {p: _const(rng, lo, hi) for p in ps if rng.random() < 0.5} or {ps[0]: Fraction(0)}
    final = {p: _const(rng, lo, hi) for p in ps if rng.random() < 0.5}
    return WeightedAutomaton(tuple(alphabet), ps, init, final, trans, semiring)


def random_graph(n: int, m: int, seed: int, discounts: Sequence = (Fraction(1),), max_cost: int = 9,
                 dag: bool = False) -> list[tuple]:
    """Random edges (u, v, cost, weight) over vertices 0..n-1; 0 is the source, n-1 the target."""
    rng = random.Random(seed)
    edges = []
    for _ in range(m):
        u, v = rng.randrange(n - 1), rng.randrange(1, n)
        if dag and u >= v:
            u, v = min(u, v - 1), v
            if u >= v:
                continue
        if u == v:
            continue
        edges.append((u, v, Fraction(rng.randint(0, max_cost)), rng.choice(list(discounts))))
    return edges
