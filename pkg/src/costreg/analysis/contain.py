"""Containment (M1 <= M2 everywhere) and range membership (M(w) = k for some w)."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from ..core.checks import check_copyless
from ..core.expr import Const
from ..core.grammar import GrammarKind
from ..core.machines import Cra, word_text
from ..errors import GrammarMismatch, NotCopyless
from ..mincost.outcome import Empty, Unbounded
from ..mincost.solvers import mincost_inc
from ..semantics import eval_cra, is_undefined
from ..transforms.arith import diff_cra
from ..transforms.inc import copyless_plus_to_inc, inc_to_single_valued_wa


@dataclass(frozen=True)
class Holds:
    def describe(self) -> str:
        return "holds"


@dataclass(frozen=True)
class Violation:
    """``word`` has M2(w) - M1(w) = gap < 0.

    ``lasso`` is set when the difference is unbounded below: pumping its
    cycle makes the gap arbitrarily negative.
    """

    word: tuple
    gap: Fraction
    lasso: tuple | None = None

    @property
    def unbounded(self) -> bool:
        return self.lasso is not None

    def describe(self) -> str:
        tail = " (unbounded below)" if self.unbounded else ""
        return f"violated on {word_text(self.word) or 'ε'} (gap {self.gap}){tail}"


def _as_inc(m: Cra) -> Cra:
    if m.grammar is GrammarKind.PlusC:
        return m
    if m.grammar is GrammarKind.Plus:
        report = check_copyless(m)
        if not report:
            raise NotCopyless(f"register reuse: {report.violations[:3]}")
        return copyless_plus_to_inc(m)
    raise GrammarMismatch(f"expected a plus machine, got {m.grammar.keyword}")


def contains(m1: Cra, m2: Cra):
    """Decide M1(w) <= M2(w) for every w where both are defined."""
    diff = _as_inc(diff_cra(_as_inc(m2), _as_inc(m1)))
    out = mincost_inc(diff)
    if isinstance(out, Empty):
        return Holds()
    if isinstance(out, Unbounded):
        # some unrolling of the negative cycle is already a finite witness
        k = 0
        while True:
            w = out.unroll(k)
            gap = eval_cra(diff, w)
            if not is_undefined(gap) and gap < 0:
                return Violation(w, gap, out.lasso)
            k += 1
    if out.value >= 0:
        return Holds()
    return Violation(out.witness, out.value)


@dataclass(frozen=True)
class Yes:
    word: tuple

    def describe(self) -> str:
        return f"yes witness={word_text(self.word) or 'ε'}"


@dataclass(frozen=True)
class No:
    def describe(self) -> str:
        return "no"


@dataclass(frozen=True)
class Inconclusive:
    window: int
    maxlen: int | None

    def describe(self) -> str:
        return f"inconclusive (window {self.window}, length {self.maxlen})"


def _constant(value, like: Cra) -> Cra:
    return Cra(like.alphabet, ("q0",), "q0", (), {("q0", a): "q0" for a in like.alphabet}, {},
               {"q0": Const(Fraction(value))}, GrammarKind.PlusC)


def in_range(m: Cra, k, window: int = 64, maxlen: int | None = None):
    """Search for a word with M(w) = k over (vertex, accumulated value) pairs.

    Runs on the single-valued WA of M - k, so a word hits k iff its unique
    accepting path sums to 0.  When all transition weights share a sign,
    partial sums too far past 0 in that direction can never return, so pruning
    them keeps the search complete; otherwise values outside
    [-window, window] are dropped and a miss is inconclusive.
    """
    inc = _as_inc(diff_cra(_as_inc(m), _constant(k, m)))
    wa = inc_to_single_valued_wa(inc.prune())
    steps = [w for _, _, w, _ in wa.transitions]
    nonneg = all(w >= 0 for w in steps)
    nonpos = all(w <= 0 for w in steps)
    finals = list(wa.final_weights.values()) or [Fraction(0)]
    lo, hi = -max(finals), -min(finals)
    adj: dict = {}
    for p, a, w, q in sorted(wa.transitions, key=lambda t: (t[1], t[3])):
        adj.setdefault(p, []).append((a, w, q))
    pruned = False

    def keep(acc) -> bool:
        nonlocal pruned
        if nonneg and acc > hi or nonpos and acc < lo:
            return False
        if not (nonneg or nonpos) and abs(acc) > window:
            pruned = True
            return False
        return True

    parent: dict = {}
    todo = deque()
    for p, w in sorted(wa.initial_weights.items()):
        node = (p, Fraction(w))
        if keep(node[1]) and node not in parent:
            parent[node] = None
            todo.append((node, 0))
    cut = False
    while todo:
        node, depth = todo.popleft()
        p, acc = node
        if p in wa.final_weights and acc + wa.final_weights[p] == 0:
            word = []
            x = node
            while parent[x] is not None:
                x, a = parent[x]
                word.append(a)
            word = tuple(reversed(word))
            if eval_cra(m, word) != Fraction(k) or is_undefined(eval_cra(m, word)):
                raise RuntimeError(f"internal error: range witness {word!r} does not evaluate to {k}")
            return Yes(word)
        if maxlen is not None and depth >= maxlen:
            cut = True
            continue
        for a, w, q in adj.get(p, ()):
            nxt = (q, acc + w)
            if nxt not in parent and keep(nxt[1]):
                parent[nxt] = (node, a)
                todo.append((nxt, depth + 1))
    if pruned or cut:
        return Inconclusive(window, maxlen)
    return No()
