"""Results of min-cost queries."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..core.ext import ExtRational, render
from ..core.machines import word_text


@dataclass(frozen=True)
class Finite:
    """Attained minimum; ``witness`` evaluates exactly to ``value``."""

    value: ExtRational
    witness: tuple = ()

    def describe(self) -> str:
        return f"{render(self.value)} witness={word_text(self.witness) or 'ε'}"


@dataclass(frozen=True)
class Unbounded:
    """The infimum is not attained.

    ``infimum`` is None when values diverge to -infinity, otherwise the
    limit value (e.g. 0 for discount cycles).  ``lasso`` gives
    (prefix, cycle, suffix) words: prefix + cycle^k + suffix approach the
    infimum as k grows.
    """

    infimum: ExtRational | None = None
    lasso: tuple | None = None
    note: str = ""

    def unroll(self, k: int) -> tuple:
        if self.lasso is None:
            raise ValueError("no lasso recorded")
        pre, cyc, suf = self.lasso
        return tuple(pre) + tuple(cyc) * k + tuple(suf)

    def describe(self) -> str:
        inf = "-inf" if self.infimum is None else render(self.infimum)
        return f"unbounded infimum={inf}"


@dataclass(frozen=True)
class Empty:
    """No word has a defined output."""

    note: str = field(default="")

    def describe(self) -> str:
        return "empty"


SolveOutcome = (Finite, Unbounded, Empty)
