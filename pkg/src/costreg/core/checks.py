"""Structural checks on machines."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from ..errors import NotLinearForm
from .expr import affine_form, registers
from .machines import Cra


@dataclass(frozen=True)
class CopylessReport:
    ok: bool
    violations: list[tuple] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok


def check_copyless(m: Cra) -> CopylessReport:
    """Each register used at most once per transition and per output.

    Violations are ``(state, symbol, register, count)``; output violations
    carry ``None`` as the symbol.
    """
    bad: list[tuple] = []
    for (q, a), upd in m.rho.items():
        uses: Counter = Counter()
        for e in upd.values():
            uses.update(registers(e))
        bad.extend((q, a, r, n) for r, n in sorted(uses.items()) if n > 1)
    for q, e in m.mu.items():
        uses = Counter(registers(e))
        bad.extend((q, None, r, n) for r, n in sorted(uses.items()) if n > 1)
    return CopylessReport(not bad, bad)


def check_linear(m: Cra) -> bool:
    """True iff every update and output normalizes to c0 + sum(ci * xi)."""
    if m.grammar.is_pair:
        return False
    try:
        for upd in m.rho.values():
            for e in upd.values():
                affine_form(e)
        for e in m.mu.values():
            affine_form(e)
    except NotLinearForm:
        return False
    return True
