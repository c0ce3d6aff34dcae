"""Cost grammars: legal expression shapes and constant ranges."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .expr import (
    Const,
    Expr,
    Min,
    PairConst,
    PairIncr,
    PairSum,
    Plus,
    Reg,
    Scale,
    Subst,
    format_expr,
    registers,
)
from .ext import INF


class GrammarKind(Enum):
    PlusC = "plus-c"
    Plus = "plus"
    MinPlusC = "min-plus"
    IncScale = "inc-scale"
    PairMinPlus = "pairs"
    PastDiscount = "past-discount"
    FutureDiscount = "future-discount"
    GlobalDiscount = "global-discount"
    AffineLinear = "affine"
    PairPlusTimes = "pairs-plus-times"

    @property
    def keyword(self) -> str:
        return self.value

    @classmethod
    def from_keyword(cls, word: str) -> "GrammarKind":
        for g in cls:
            if g.value == word:
                return g
        raise ValueError(f"unknown model keyword {word!r}")

    @property
    def is_pair(self) -> bool:
        return self in _PAIR_KINDS

    @property
    def identity(self):
        """Default initial register value."""
        if self is GrammarKind.PairMinPlus:
            return (INF, Fraction(0))
        if self.is_pair:
            return (Fraction(0), Fraction(1))
        return Fraction(0)

    @property
    def affine(self) -> bool:
        """Scalar kinds whose terms are affine in the registers."""
        return self in (
            GrammarKind.PlusC,
            GrammarKind.Plus,
            GrammarKind.IncScale,
            GrammarKind.PastDiscount,
            GrammarKind.AffineLinear,
        )


_PAIR_KINDS = frozenset(
    {
        GrammarKind.PairMinPlus,
        GrammarKind.PairPlusTimes,
        GrammarKind.FutureDiscount,
        GrammarKind.GlobalDiscount,
    }
)


@dataclass(frozen=True)
class GrammarCheck:
    ok: bool
    diagnostic: str | None = None

    def __bool__(self) -> bool:
        return self.ok


class _Reject(Exception):
    pass


def _fail(e: Expr, why: str):
    raise _Reject(f"{why}: {format_expr(e)}")


def _finite(e: Expr, v):
    if v == INF:
        _fail(e, "infinite constant not allowed")


def _has_reg(e: Expr) -> bool:
    return bool(registers(e))


def _check_scalar(e: Expr, g: GrammarKind) -> None:
    if isinstance(e, Reg):
        return
    if isinstance(e, Const):
        if g is not GrammarKind.MinPlusC:
            _finite(e, e.value)
        return
    if isinstance(e, Plus):
        if g in (GrammarKind.Plus, GrammarKind.AffineLinear):
            _check_scalar(e.left, g)
            _check_scalar(e.right, g)
            return
        if _has_reg(e.left) and _has_reg(e.right):
            _fail(e, "binary + over two registers")
        _check_scalar(e.left, g)
        _check_scalar(e.right, g)
        if g is GrammarKind.MinPlusC:
            # the register side may be a min, the other must be register-free
            return
        return
    if isinstance(e, Min):
        if g is not GrammarKind.MinPlusC:
            _fail(e, "min not allowed in this grammar")
        for a in e.args:
            _check_scalar(a, g)
        return
    if isinstance(e, Scale):
        if g not in (GrammarKind.IncScale, GrammarKind.PastDiscount, GrammarKind.AffineLinear):
            _fail(e, "scaling not allowed in this grammar")
        _finite(e, e.factor)
        _check_scalar(e.arg, g)
        return
    _fail(e, "pair operator in a scalar grammar")


def _check_pair(e: Expr, g: GrammarKind) -> None:
    if isinstance(e, Reg):
        return
    if isinstance(e, PairConst):
        if g is GrammarKind.GlobalDiscount:
            if (e.c, e.d) != (0, 1):
                _fail(e, "global-discount literals must be (0, 1)")
            return
        if g is not GrammarKind.PairMinPlus:
            _finite(e, e.c)
            _finite(e, e.d)
        return
    if g is GrammarKind.GlobalDiscount:
        if isinstance(e, PairIncr) and isinstance(e.by, tuple):
            c, d = e.by
            _finite(e, c)
            if c < 0:
                _fail(e, "global-discount costs must be nonnegative")
            if not (0 <= d <= 1):
                _fail(e, "global-discount factors must lie in [0, 1]")
            _check_pair(e.arg, g)
            return
        _fail(e, "only (0, 1), registers and incr(e, (c, d)) allowed")
    if g is GrammarKind.FutureDiscount:
        if isinstance(e, Subst) and isinstance(e.inner, PairConst):
            _finite(e, e.inner.c)
            _finite(e, e.inner.d)
            _check_pair(e.outer, g)
            return
        _fail(e, "only (c, d), registers and e[c, d] allowed")
    if isinstance(e, PairSum):
        _check_pair(e.left, g)
        _check_pair(e.right, g)
        return
    if isinstance(e, PairIncr):
        if isinstance(e.by, tuple):
            _fail(e, "increment must be a scalar constant")
        if g is GrammarKind.PairPlusTimes:
            _finite(e, e.by)
        _check_pair(e.arg, g)
        return
    if isinstance(e, Subst):
        _check_pair(e.outer, g)
        _check_pair(e.inner, g)
        return
    _fail(e, "scalar operator in a pair grammar")


def validate_grammar(e: Expr, g: GrammarKind) -> GrammarCheck:
    try:
        if g.is_pair:
            _check_pair(e, g)
        else:
            _check_scalar(e, g)
    except _Reject as exc:
        return GrammarCheck(False, str(exc))
    return GrammarCheck(True)
