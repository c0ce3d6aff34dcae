"""Machine types: cost register automata, weighted automata, look-ahead DFAs."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Callable, Mapping, Sequence

from ..errors import ValidationError
from .expr import Expr, Reg, registers
from .ext import INF, ExtRational, add, ext, mul
from .grammar import GrammarKind, validate_grammar

Word = tuple


def as_word(w, alphabet: Sequence[str] | None = None) -> Word:
    """Normalize a word given as tuple/list of symbols or as a string.

    Strings are split per character when every symbol is a single
    character, otherwise on whitespace.
    """
    if isinstance(w, str):
        if alphabet is None or all(len(s) == 1 for s in alphabet):
            return tuple(w)
        return tuple(w.split())
    return tuple(w)


def word_text(w: Word) -> str:
    if all(len(s) == 1 for s in w):
        return "".join(w)
    return " ".join(w)


def _coerce_value(v, pair: bool):
    if pair:
        c, d = v
        return (ext(c), ext(d))
    return ext(v)


@dataclass(eq=False)
class Cra:
    """Deterministic, complete cost register automaton.

    ``rho[(q, a)]`` maps each register to its update expression; registers
    missing from the map keep their value (``x := x``).
    """

    alphabet: tuple[str, ...]
    states: tuple[str, ...]
    initial: str
    registers: tuple[str, ...]
    delta: dict[tuple[str, str], str]
    rho: dict[tuple[str, str], dict[str, Expr]]
    mu: dict[str, Expr]
    grammar: GrammarKind
    init_values: dict[str, object] = field(default_factory=dict)

    def __post_init__(self):
        self.alphabet = tuple(self.alphabet)
        self.states = tuple(self.states)
        self.registers = tuple(self.registers)
        if len(set(self.registers)) != len(self.registers):
            raise ValidationError("duplicate register names")
        if self.initial not in self.states:
            raise ValidationError(f"initial state {self.initial!r} is not declared")
        regs = set(self.registers)
        ident = self.grammar.identity
        values = {x: ident for x in self.registers}
        for x, v in self.init_values.items():
            if x not in regs:
                raise ValidationError(f"initial value for undeclared register {x!r}")
            values[x] = _coerce_value(v, self.grammar.is_pair)
        self.init_values = values
        rho: dict[tuple[str, str], dict[str, Expr]] = {}
        for q in self.states:
            for a in self.alphabet:
                if (q, a) not in self.delta:
                    raise ValidationError(f"missing transition from {q!r} on {a!r}")
                if self.delta[(q, a)] not in self.states:
                    raise ValidationError(f"transition to undeclared state {self.delta[(q, a)]!r}")
                upd = dict(self.rho.get((q, a), {}))
                for x in upd:
                    if x not in regs:
                        raise ValidationError(f"update of undeclared register {x!r} on ({q}, {a})")
                for x in self.registers:
                    upd.setdefault(x, Reg(x))
                rho[(q, a)] = {x: upd[x] for x in self.registers}
        self.rho = rho
        for q in self.mu:
            if q not in self.states:
                raise ValidationError(f"output for undeclared state {q!r}")
        for where, e in self._all_exprs():
            for r in registers(e):
                if r not in regs:
                    raise ValidationError(f"{where}: undeclared register {r!r}")
            chk = validate_grammar(e, self.grammar)
            if not chk:
                raise ValidationError(f"{where}: {chk.diagnostic}")

    def _all_exprs(self):
        for (q, a), upd in self.rho.items():
            for x, e in upd.items():
                yield f"update of {x} on ({q}, {a})", e
        for q, e in self.mu.items():
            yield f"output at {q}", e

    def update(self, q: str, a: str) -> dict[str, Expr]:
        return self.rho[(q, a)]

    def step(self, q: str, a: str) -> str:
        return self.delta[(q, a)]

    def replace(self, **changes) -> "Cra":
        fields = dict(
            alphabet=self.alphabet,
            states=self.states,
            initial=self.initial,
            registers=self.registers,
            delta=self.delta,
            rho=self.rho,
            mu=self.mu,
            grammar=self.grammar,
            init_values=self.init_values,
        )
        fields.update(changes)
        return Cra(**fields)

    def reachable_states(self) -> list[str]:
        seen = [self.initial]
        known = {self.initial}
        for q in seen:
            for a in self.alphabet:
                p = self.delta[(q, a)]
                if p not in known:
                    known.add(p)
                    seen.append(p)
        return seen

    def prune(self) -> "Cra":
        """Drop states unreachable from the initial state."""
        keep = self.reachable_states()
        if len(keep) == len(self.states):
            return self
        ks = set(keep)
        return self.replace(
            states=tuple(q for q in self.states if q in ks),
            delta={k: v for k, v in self.delta.items() if k[0] in ks},
            rho={k: v for k, v in self.rho.items() if k[0] in ks},
            mu={q: e for q, e in self.mu.items() if q in ks},
        )


class Semiring(Enum):
    MinPlus = "min-plus"
    PlusTimes = "plus-times"

    @property
    def zero(self) -> ExtRational:
        return INF if self is Semiring.MinPlus else Fraction(0)

    @property
    def one(self) -> ExtRational:
        return Fraction(0) if self is Semiring.MinPlus else Fraction(1)

    def plus(self, a: ExtRational, b: ExtRational) -> ExtRational:
        return min(a, b) if self is Semiring.MinPlus else a + b

    def times(self, a: ExtRational, b: ExtRational) -> ExtRational:
        if self is Semiring.MinPlus:
            return add(a, b)
        return mul(a, b)

    def sum(self, values) -> ExtRational:
        out = self.zero
        for v in values:
            out = self.plus(out, v)
        return out

    def prod(self, values) -> ExtRational:
        out = self.one
        for v in values:
            out = self.times(out, v)
        return out


@dataclass(eq=False)
class WeightedAutomaton:
    alphabet: tuple[str, ...]
    states: tuple[str, ...]
    initial_weights: dict[str, ExtRational]
    final_weights: dict[str, ExtRational]
    transitions: list[tuple[str, str, ExtRational, str]]
    semiring: Semiring = Semiring.MinPlus

    def __post_init__(self):
        self.alphabet = tuple(self.alphabet)
        self.states = tuple(self.states)
        known = set(self.states)
        syms = set(self.alphabet)
        self.initial_weights = {p: ext(v) for p, v in self.initial_weights.items()}
        self.final_weights = {p: ext(v) for p, v in self.final_weights.items()}
        for p in list(self.initial_weights) + list(self.final_weights):
            if p not in known:
                raise ValidationError(f"weight on undeclared state {p!r}")
        trans = []
        for p, a, w, q in self.transitions:
            if p not in known or q not in known:
                raise ValidationError(f"transition between undeclared states {p!r}, {q!r}")
            if a not in syms:
                raise ValidationError(f"transition on unknown symbol {a!r}")
            trans.append((p, a, ext(w), q))
        self.transitions = trans

    def out_edges(self) -> dict[tuple[str, str], list[tuple[ExtRational, str]]]:
        table: dict[tuple[str, str], list] = {}
        for p, a, w, q in self.transitions:
            table.setdefault((p, a), []).append((w, q))
        return table


@dataclass(eq=False)
class LookaheadDfa:
    """Total DFA over the input alphabet; its states label input positions."""

    alphabet: tuple[str, ...]
    states: tuple[str, ...]
    initial: str
    delta: dict[tuple[str, str], str]

    def __post_init__(self):
        self.alphabet = tuple(self.alphabet)
        self.states = tuple(self.states)
        if self.initial not in self.states:
            raise ValidationError("look-ahead initial state is not declared")
        for r in self.states:
            for a in self.alphabet:
                if self.delta.get((r, a)) not in self.states:
                    raise ValidationError(f"look-ahead transition from {r!r} on {a!r} missing")


def map_updates(m: Cra, fn: Callable[[Expr], Expr]) -> Cra:
    """Apply ``fn`` to every update and output expression."""
    return m.replace(
        rho={k: {x: fn(e) for x, e in upd.items()} for k, upd in m.rho.items()},
        mu={q: fn(e) for q, e in m.mu.items()},
    )


def with_init(m: Cra, values: Mapping[str, object]) -> Cra:
    merged = dict(m.init_values)
    merged.update(values)
    return m.replace(init_values=merged)
