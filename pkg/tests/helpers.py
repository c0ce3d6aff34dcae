"""Reference implementations and shared utilities for the tests."""

from __future__ import annotations

from fractions import Fraction

from costreg.core.expr import rename
from costreg.core.machines import Cra
from costreg.oracle import same_value, words

INF = float("inf")


def blocks(w: str) -> list[str]:
    return w.split("e")


def f1(w: str) -> int:
    """Length after deleting the b's that follow the last e (all b's if there is no e)."""
    cut = w.rfind("e")
    return cut + 1 + w[cut + 1:].count("a")


def f2(w: str):
    """min of the a- and b-counts of the last two e-separated blocks."""
    bs = blocks(w)
    vals = [bs[-1].count("a"), bs[-1].count("b")]
    if len(bs) >= 2:
        vals += [bs[-2].count("a"), bs[-2].count("b")]
    return min(vals)


def f3(w: str):
    """min over split points j of a's in blocks 1..j plus b's in blocks j+1..n.

    With no e the single block counts its a's.
    """
    bs = blocks(w)
    if len(bs) == 1:
        return bs[0].count("a")
    return min(
        sum(b.count("a") for b in bs[:j]) + sum(b.count("b") for b in bs[j:])
        for j in range(1, len(bs))
    )


def f4(w: str) -> Fraction:
    """10 per a before the first b, then 5% off per e after it."""
    cut = w.find("b")
    if cut < 0:
        return Fraction(10 * w.count("a"))
    return 10 * w[:cut].count("a") * Fraction(19, 20) ** w[cut:].count("e")


def all_words(alphabet, maxlen):
    for w in words(alphabet, maxlen):
        yield "".join(w)


def agree(m1, eval1, eval2, maxlen: int) -> tuple | None:
    """First word (shortest, lexicographic) on which the two evaluators differ."""
    for w in words(m1.alphabet, maxlen):
        a, b = eval1(w), eval2(w)
        if not same_value(a, b):
            return (w, a, b)
    return None


def rename_registers(m: Cra, suffix: str = "'") -> Cra:
    names = {x: x + suffix for x in m.registers}
    return Cra(
        m.alphabet, m.states, m.initial, tuple(names[x] for x in m.registers), m.delta,
        {k: {names[x]: rename(e, names) for x, e in u.items()} for k, u in m.rho.items()},
        {q: rename(e, names) for q, e in m.mu.items()},
        m.grammar, {names[x]: v for x, v in m.init_values.items()},
    )
