"""Expression trees over registers and constants."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Mapping, Union

from ..errors import NotLinearForm
from .ext import INF, ExtRational, add, mul, render


@dataclass(frozen=True)
class Const:
    value: ExtRational


@dataclass(frozen=True)
class Reg:
    name: str


@dataclass(frozen=True)
class Plus:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Min:
    args: tuple["Expr", ...]

    def __post_init__(self):
        if len(self.args) < 2:
            raise ValueError("min needs at least two arguments")


@dataclass(frozen=True)
class Scale:
    factor: ExtRational
    arg: "Expr"


@dataclass(frozen=True)
class PairConst:
    c: ExtRational
    d: ExtRational


@dataclass(frozen=True)
class PairSum:
    """``left ⊗̄ right``: combine c-components, keep the left d-component."""

    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class PairIncr:
    """``arg ⊕̄ by``; ``by`` is a scalar d, or a (c, d) tuple for global discounts."""

    arg: "Expr"
    by: Union[ExtRational, tuple]


@dataclass(frozen=True)
class Subst:
    """``outer[inner]``: plug ``inner`` into the parameter of ``outer``."""

    outer: "Expr"
    inner: "Expr"


Expr = Union[Const, Reg, Plus, Min, Scale, PairConst, PairSum, PairIncr, Subst]


def children(e: Expr) -> tuple:
    if isinstance(e, (Plus, PairSum)):
        return (e.left, e.right)
    if isinstance(e, Min):
        return e.args
    if isinstance(e, (Scale, PairIncr)):
        return (e.arg,)
    if isinstance(e, Subst):
        return (e.outer, e.inner)
    return ()


def walk(e: Expr) -> Iterator[Expr]:
    yield e
    for child in children(e):
        yield from walk(child)


def registers(e: Expr) -> list[str]:
    """Register occurrences in left-to-right order, with multiplicity."""
    return [n.name for n in walk(e) if isinstance(n, Reg)]


def register_counts(e: Expr) -> Counter:
    return Counter(registers(e))


def substitute(e: Expr, mapping: Mapping[str, Expr]) -> Expr:
    """Replace every register occurrence by ``mapping[name]`` (if present)."""
    if isinstance(e, Reg):
        return mapping.get(e.name, e)
    if isinstance(e, Plus):
        return Plus(substitute(e.left, mapping), substitute(e.right, mapping))
    if isinstance(e, Min):
        return Min(tuple(substitute(a, mapping) for a in e.args))
    if isinstance(e, Scale):
        return Scale(e.factor, substitute(e.arg, mapping))
    if isinstance(e, PairSum):
        return PairSum(substitute(e.left, mapping), substitute(e.right, mapping))
    if isinstance(e, PairIncr):
        return PairIncr(substitute(e.arg, mapping), e.by)
    if isinstance(e, Subst):
        return Subst(substitute(e.outer, mapping), substitute(e.inner, mapping))
    return e


def rename(e: Expr, names: Mapping[str, str]) -> Expr:
    return substitute(e, {old: Reg(new) for old, new in names.items()})


# -- normal forms -----------------------------------------------------------


def affine_form(e: Expr) -> tuple[dict[str, Fraction], Fraction]:
    """Normalize to ``const + sum(coef * reg)``.

    Raises NotLinearForm for min, pair operators, or infinite constants.
    """
    if isinstance(e, Const):
        if e.value == INF:
            raise NotLinearForm("infinite constant in affine expression")
        return {}, Fraction(e.value)
    if isinstance(e, Reg):
        return {e.name: Fraction(1)}, Fraction(0)
    if isinstance(e, Plus):
        c1, k1 = affine_form(e.left)
        c2, k2 = affine_form(e.right)
        out = dict(c1)
        for r, v in c2.items():
            out[r] = out.get(r, 0) + v
        return {r: v for r, v in out.items() if v != 0}, k1 + k2
    if isinstance(e, Scale):
        if e.factor == INF:
            raise NotLinearForm("infinite scale factor")
        c, k = affine_form(e.arg)
        f = Fraction(e.factor)
        return {r: f * v for r, v in c.items() if f * v != 0}, f * k
    raise NotLinearForm(f"{type(e).__name__} is not affine")


def affine_expr(coeffs: Mapping[str, Fraction], const: Fraction, order=None) -> Expr:
    """Build a readable expression for an affine form."""
    names = list(order) if order is not None else sorted(coeffs)
    terms: list[Expr] = []
    for r in names:
        v = coeffs.get(r, 0)
        if v == 0:
            continue
        terms.append(Reg(r) if v == 1 else Scale(Fraction(v), Reg(r)))
    if const != 0 or not terms:
        terms.append(Const(Fraction(const)))
    out = terms[0]
    for t in terms[1:]:
        out = Plus(out, t)
    return out


def minplus_form(e: Expr) -> tuple[dict[str, ExtRational], ExtRational]:
    """Normalize a min/+c expression to ``min(min_r(r + off_r), const)``.

    Offsets of INF are dropped; ``const`` is INF when there is no constant
    alternative.
    """
    if isinstance(e, Const):
        return {}, e.value
    if isinstance(e, Reg):
        return {e.name: Fraction(0)}, INF
    if isinstance(e, Plus):
        left, right = e.left, e.right
        if isinstance(left, Const) and not isinstance(right, Const):
            left, right = right, left
        if not isinstance(right, Const):
            raise NotLinearForm("+ between two non-constant terms")
        offs, k = minplus_form(left)
        c = right.value
        shifted = {r: add(v, c) for r, v in offs.items()}
        return {r: v for r, v in shifted.items() if v != INF}, add(k, c)
    if isinstance(e, Min):
        offs: dict[str, ExtRational] = {}
        k: ExtRational = INF
        for a in e.args:
            o, c = minplus_form(a)
            for r, v in o.items():
                offs[r] = min(offs.get(r, INF), v)
            k = min(k, c)
        return offs, k
    raise NotLinearForm(f"{type(e).__name__} is not a min/+c term")


def minplus_expr(offsets: Mapping[str, ExtRational], const: ExtRational, order=None) -> Expr:
    names = list(order) if order is not None else sorted(offsets)
    terms: list[Expr] = []
    for r in names:
        if r not in offsets or offsets[r] == INF:
            continue
        v = offsets[r]
        terms.append(Reg(r) if v == 0 else Plus(Reg(r), Const(v)))
    if const != INF or not terms:
        terms.append(Const(const))
    if len(terms) == 1:
        return terms[0]
    return Min(tuple(terms))


def fold_constants(e: Expr) -> Expr:
    """Collapse register-free scalar subtrees into a single Const."""
    if isinstance(e, Plus):
        l, r = fold_constants(e.left), fold_constants(e.right)
        if isinstance(l, Const) and isinstance(r, Const):
            return Const(add(l.value, r.value))
        return Plus(l, r)
    if isinstance(e, Scale):
        a = fold_constants(e.arg)
        if isinstance(a, Const):
            return Const(mul(e.factor, a.value))
        return Scale(e.factor, a)
    if isinstance(e, Min):
        args = tuple(fold_constants(a) for a in e.args)
        if all(isinstance(a, Const) for a in args):
            return Const(min(a.value for a in args))
        return Min(args)
    return e


# -- printing ---------------------------------------------------------------


def format_expr(e: Expr, bracket_subst: bool = False) -> str:
    """Render in the textual machine syntax (see costreg.cli.fmt)."""
    if isinstance(e, Const):
        return render(e.value)
    if isinstance(e, Reg):
        return e.name
    if isinstance(e, Plus):
        left = format_expr(e.left, bracket_subst)
        right = format_expr(e.right, bracket_subst)
        return f"{left} + {right}"
    if isinstance(e, Min):
        return "min(" + ", ".join(format_expr(a, bracket_subst) for a in e.args) + ")"
    if isinstance(e, Scale):
        inner = format_expr(e.arg, bracket_subst)
        if isinstance(e.arg, Plus):
            inner = f"({inner})"
        return f"{render(e.factor)} * {inner}"
    if isinstance(e, PairConst):
        return f"({render(e.c)}, {render(e.d)})"
    if isinstance(e, PairSum):
        return f"pairsum({format_expr(e.left, bracket_subst)}, {format_expr(e.right, bracket_subst)})"
    if isinstance(e, PairIncr):
        if isinstance(e.by, tuple):
            by = f"({render(e.by[0])}, {render(e.by[1])})"
        else:
            by = render(e.by)
        return f"incr({format_expr(e.arg, bracket_subst)}, {by})"
    if isinstance(e, Subst):
        if bracket_subst and isinstance(e.inner, PairConst):
            outer = format_expr(e.outer, bracket_subst)
            if not isinstance(e.outer, (Reg, Subst)):
                outer = f"({outer})"
            return f"{outer}[{render(e.inner.c)}, {render(e.inner.d)}]"
        return f"subst({format_expr(e.outer, bracket_subst)}, {format_expr(e.inner, bracket_subst)})"
    raise TypeError(f"not an expression: {e!r}")
