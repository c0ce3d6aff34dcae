"""Pair-register machines: elementary updates and the translation to linear CRAs.

A pair register x = (x.c, x.d) stands for the term (x.d (x) ?) (+) x.c.  The
translation keeps, for every subset S of registers, d_S = (x)_{x in S} x.d
and x.cd_S = x.c (x) d_S (x not in S).  Every pair update then becomes a
linear update over these registers.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence, Union

from ..core.checks import check_copyless
from ..core.expr import (
    Expr,
    PairConst,
    PairIncr,
    PairSum,
    Reg,
    Subst,
    affine_expr,
    minplus_expr,
    registers as expr_registers,
)
from ..core.grammar import GrammarKind
from ..core.machines import Cra, Semiring
from ..errors import GrammarMismatch, NotCopyless, NotDecomposable
from ..semantics import eval_expr, pair_semiring
from .inc import all_subsets

# -- elementary updates -----------------------------------------------------


@dataclass(frozen=True)
class Nop:
    pass


@dataclass(frozen=True)
class Swap:
    x: str
    y: str


@dataclass(frozen=True)
class Reset:
    x: str
    value: tuple


@dataclass(frozen=True)
class Incr:
    """x := x (+) by  (the pair increment)."""

    x: str
    by: object


@dataclass(frozen=True)
class PairAdd:
    """<x, y> := <x (x) y, unit>."""

    x: str
    y: str


@dataclass(frozen=True)
class PairSubst:
    """<x, y> := <x[y], unit>."""

    x: str
    y: str


ElementaryUpdate = Union[Nop, Swap, Reset, Incr, PairAdd, PairSubst]


def unit_pair(g: GrammarKind) -> tuple:
    s = pair_semiring(g)
    return (s.zero, s.one)


def as_parallel(op: ElementaryUpdate, g: GrammarKind) -> dict[str, Expr]:
    unit = PairConst(*unit_pair(g))
    if isinstance(op, Nop):
        return {}
    if isinstance(op, Swap):
        return {op.x: Reg(op.y), op.y: Reg(op.x)}
    if isinstance(op, Reset):
        return {op.x: PairConst(*op.value)}
    if isinstance(op, Incr):
        return {op.x: PairIncr(Reg(op.x), op.by)}
    if isinstance(op, PairAdd):
        return {op.x: PairSum(Reg(op.x), Reg(op.y)), op.y: unit}
    if isinstance(op, PairSubst):
        return {op.x: Subst(Reg(op.x), Reg(op.y)), op.y: unit}
    raise TypeError(f"not an elementary update: {op!r}")


def apply_parallel(update: Mapping[str, Expr], nu: Mapping[str, tuple], g: GrammarKind) -> dict:
    out = dict(nu)
    for x, e in update.items():
        out[x] = eval_expr(e, nu, g)
    return out


def run_elementary(ops: Sequence[ElementaryUpdate], nu: Mapping[str, tuple], g: GrammarKind) -> dict:
    cur = dict(nu)
    for op in ops:
        cur = apply_parallel(as_parallel(op, g), cur, g)
    return cur


def elementary_decompose(
    update: Mapping[str, Expr], g: GrammarKind, registers: Sequence[str] | None = None
) -> list[ElementaryUpdate]:
    """Sequence a parallel copyless pair update into elementary steps.

    Greedy: every right-hand side is evaluated in place in one of its own
    registers, constants go to scratch registers (unused or already freed
    ones), homes are then permuted into place with swaps and constant
    targets are reset last.
    """
    regs = list(registers) if registers is not None else list(update)
    full = {x: update.get(x, Reg(x)) for x in regs}
    uses: dict[str, int] = {}
    for e in full.values():
        for r in expr_registers(e):
            uses[r] = uses.get(r, 0) + 1
    if any(n > 1 for n in uses.values()):
        raise NotCopyless("update reads a register twice")
    pool = [r for r in regs if r not in uses]
    ops: list[ElementaryUpdate] = []

    def const_value(e: Expr) -> tuple:
        return eval_expr(e, {}, g)

    def ev(e: Expr) -> str:
        if not expr_registers(e):
            if not pool:
                raise NotDecomposable("no free register to hold a constant subterm")
            s = pool.pop(0)
            ops.append(Reset(s, const_value(e)))
            return s
        if isinstance(e, Reg):
            return e.name
        if isinstance(e, PairSum):
            hl, hr = ev(e.left), ev(e.right)
            ops.append(PairAdd(hl, hr))
            pool.append(hr)
            return hl
        if isinstance(e, PairIncr):
            h = ev(e.arg)
            ops.append(Incr(h, e.by))
            return h
        if isinstance(e, Subst):
            ho, hi = ev(e.outer), ev(e.inner)
            ops.append(PairSubst(ho, hi))
            pool.append(hi)
            return ho
        raise NotDecomposable(f"unsupported term {type(e).__name__}")

    homes: dict[str, str] = {}
    consts: dict[str, tuple] = {}
    for x in regs:
        e = full[x]
        if expr_registers(e):
            homes[x] = ev(e)
        else:
            consts[x] = const_value(e)
    # permute computed values into their target registers
    held = {h: t for t, h in homes.items()}  # register -> target whose value it holds
    where = dict(homes)  # target -> register holding its value
    for t in regs:
        if t not in where or where[t] == t:
            continue
        src = where[t]
        other = held.get(t)
        ops.append(Swap(t, src))
        held[t] = t
        where[t] = t
        if other is not None:
            held[src] = other
            where[other] = src
        else:
            held.pop(src, None)
    for t in regs:
        if t in consts:
            ops.append(Reset(t, consts[t]))
    return ops or [Nop()]


# -- symbolic linearization -------------------------------------------------

# C-terms are keyed by ("d", T) for the constant part times d_T, or
# ("xd", x, T) for x.c times d_T; D is a monomial (k, S) meaning k (x) d_S.


class _Linearizer:
    def __init__(self, regs: Sequence[str], g: GrammarKind):
        self.regs = tuple(regs)
        self.g = g
        self.s: Semiring = pair_semiring(g)
        self.order = {x: i for i, x in enumerate(self.regs)}

    # names
    def _set_text(self, T) -> str:
        return "{" + "|".join(sorted(T, key=self.order.__getitem__)) + "}"

    def d_name(self, T) -> str:
        return "d" + self._set_text(T)

    def xd_name(self, x: str, T) -> str:
        return f"{x}.cd" + self._set_text(T)

    def ref(self, key) -> str | None:
        if key[0] == "d":
            T = key[1]
            if not T:
                return None
            if len(T) == 1:
                (x,) = T
                return f"{x}.d"
            return self.d_name(T)
        _, x, T = key
        return f"{x}.c" if not T else self.xd_name(x, T)

    def census(self) -> list[str]:
        names = []
        for x in self.regs:
            names += [f"{x}.c", f"{x}.d"]
        for S in all_subsets(self.regs):
            names.append(self.d_name(S))
            names += [self.xd_name(x, S) for x in self.regs if x not in S]
        return names

    # symbolic evaluation
    def _merge(self, a: dict, b: dict) -> dict:
        out = dict(a)
        for k, v in b.items():
            out[k] = self.s.plus(out[k], v) if k in out else v
        return {k: v for k, v in out.items() if v != self.s.zero}

    def _scale(self, C: dict, k, U=frozenset()) -> dict:
        out = {}
        for key, v in C.items():
            if key[0] == "d":
                T = key[1]
                if T & U:
                    raise NotCopyless("register used twice in a product")
                nk = ("d", T | U)
            else:
                _, x, T = key
                if x in U or T & U:
                    raise NotCopyless("register used twice in a product")
                nk = ("xd", x, T | U)
            w = self.s.times(v, k)
            if w == self.s.zero:
                continue
            out[nk] = self.s.plus(out[nk], w) if nk in out else w
        return out

    def sym(self, e: Expr):
        s = self.s
        if isinstance(e, Reg):
            return {("xd", e.name, frozenset()): s.one}, (s.one, frozenset({e.name}))
        if isinstance(e, PairConst):
            C = {} if e.c == s.zero else {("d", frozenset()): e.c}
            return C, (e.d, frozenset())
        if isinstance(e, PairSum):
            C1, D1 = self.sym(e.left)
            C2, _ = self.sym(e.right)
            return self._merge(C1, C2), D1
        if isinstance(e, PairIncr):
            C, (k, S) = self.sym(e.arg)
            if isinstance(e.by, tuple):
                ic, idd = e.by
                base = self._scale(C, idd)
                extra = {("d", S): s.times(s.times(ic, idd), k)}
                extra = {kk: v for kk, v in extra.items() if v != s.zero}
                return self._merge(base, extra), (s.times(k, idd), S)
            return self._scale(C, e.by), (s.times(k, e.by), S)
        if isinstance(e, Subst):
            C1, (k1, S1) = self.sym(e.outer)
            C2, (k2, S2) = self.sym(e.inner)
            if S1 & S2:
                raise NotCopyless("register used twice in a substitution")
            return self._merge(C1, self._scale(C2, k1, S1)), (s.times(k1, k2), S1 | S2)
        raise GrammarMismatch(f"not a pair expression: {type(e).__name__}")

    # linear forms: (coeffs: reg -> weight, const)
    def form_of_c(self, C: dict):
        s = self.s
        coeffs: dict[str, object] = {}
        const = s.zero
        for key, v in C.items():
            r = self.ref(key)
            if r is None:
                const = s.plus(const, v)
            else:
                coeffs[r] = s.plus(coeffs[r], v) if r in coeffs else v
        return coeffs, const

    def form_of_d(self, k, S):
        r = self.ref(("d", S))
        if r is None or k == self.s.zero:
            return {}, k
        return {r: k}, self.s.zero

    def linearize(self, update: Mapping[str, Expr]) -> dict[str, tuple]:
        """Linear forms for every translated register after a parallel update."""
        s = self.s
        full = {x: update.get(x, Reg(x)) for x in self.regs}
        syms = {x: self.sym(e) for x, e in full.items()}
        out: dict[str, tuple] = {}
        for x in self.regs:
            C, (k, S) = syms[x]
            out[f"{x}.c"] = self.form_of_c(C)
            out[f"{x}.d"] = self.form_of_d(k, S)
        for T in all_subsets(self.regs):
            k_T, U = s.one, frozenset()
            for y in T:
                _, (k, S) = syms[y]
                if U & S:
                    raise NotCopyless("register used twice across an update")
                k_T, U = s.times(k_T, k), U | S
            out[self.d_name(T)] = self.form_of_d(k_T, U)
            for x in self.regs:
                if x in T:
                    continue
                C, _ = syms[x]
                out[self.xd_name(x, T)] = self.form_of_c(self._scale(C, k_T, U))
        return out

    def output_form(self, e: Expr):
        C, _ = self.sym(e)
        return self.form_of_c(C)

    # composition
    def identity(self) -> dict[str, tuple]:
        return {r: ({r: self.s.one}, self.s.zero) for r in self.census()}

    def subst_form(self, form, env: Mapping[str, tuple]):
        s = self.s
        coeffs, const = form
        out: dict[str, object] = {}
        acc = const
        for r, k in coeffs.items():
            c2, k2 = env[r]
            acc = s.plus(acc, s.times(k2, k))
            for r2, v in c2.items():
                w = s.times(v, k)
                out[r2] = s.plus(out[r2], w) if r2 in out else w
        return {r: v for r, v in out.items() if v != s.zero}, acc

    def compose(self, first: Mapping[str, tuple], then: Mapping[str, tuple]) -> dict[str, tuple]:
        return {r: self.subst_form(f, first) for r, f in then.items()}

    def to_expr(self, form) -> Expr:
        coeffs, const = form
        coeffs = {r: v for r, v in coeffs.items() if v != self.s.zero}
        order = [r for r in self.census() if r in coeffs]
        if self.s is Semiring.MinPlus:
            return minplus_expr(coeffs, const, order)
        return affine_expr(coeffs, const, order)

    def init_values(self, nu: Mapping[str, tuple]) -> dict[str, object]:
        s = self.s
        out = {}
        for x in self.regs:
            out[f"{x}.c"], out[f"{x}.d"] = nu[x]
        for T in all_subsets(self.regs):
            dT = s.prod(nu[y][1] for y in T)
            out[self.d_name(T)] = dT
            for x in self.regs:
                if x not in T:
                    out[self.xd_name(x, T)] = s.times(nu[x][0], dT)
        return out


def translated_grammar(g: GrammarKind) -> GrammarKind:
    return GrammarKind.MinPlusC if g is GrammarKind.PairMinPlus else GrammarKind.AffineLinear


def pair_cra_to_linear_cra(m: Cra, via: str = "elementary") -> Cra:
    """Copyful linear CRA equivalent to a copyless pair-register CRA.

    ``via="elementary"`` sequences each update into elementary steps and
    composes their translations; ``via="direct"`` linearizes the parallel
    update in one go.  Both give the same register values; updates with no
    free register for a constant subterm are linearized directly.
    """
    if not m.grammar.is_pair:
        raise GrammarMismatch(f"expected a pair grammar, got {m.grammar.keyword}")
    report = check_copyless(m)
    if not report:
        raise NotCopyless(f"register reuse: {report.violations[:3]}")
    lin = _Linearizer(m.registers, m.grammar)
    rho = {}
    for (q, a), upd in m.rho.items():
        if via == "direct":
            forms = lin.linearize(upd)
        elif via == "elementary":
            try:
                ops = elementary_decompose(upd, m.grammar, m.registers)
            except NotDecomposable:
                # no scratch register for a constant subterm: same result in one step
                forms = lin.linearize(upd)
            else:
                forms = lin.identity()
                for op in ops:
                    forms = lin.compose(forms, lin.linearize(as_parallel(op, m.grammar)))
        else:
            raise ValueError(f"unknown translation mode {via!r}")
        rho[(q, a)] = {r: lin.to_expr(f) for r, f in forms.items()}
    mu = {q: lin.to_expr(lin.output_form(e)) for q, e in m.mu.items()}
    return Cra(
        alphabet=m.alphabet,
        states=m.states,
        initial=m.initial,
        registers=tuple(lin.census()),
        delta=dict(m.delta),
        rho=rho,
        mu=mu,
        grammar=translated_grammar(m.grammar),
        init_values=lin.init_values(m.init_values),
    )


def expected_translation(m: Cra, nu: Mapping[str, tuple]) -> dict[str, object]:
    """Values the translated registers must hold for pair valuation ``nu``."""
    return _Linearizer(m.registers, m.grammar).init_values(nu)


def census_size(k: int) -> int:
    """2k + sum over subsets S of (1 + |X minus S|)."""
    from math import comb

    return 2 * k + sum(comb(k, j) * (1 + k - j) for j in range(k + 1))
