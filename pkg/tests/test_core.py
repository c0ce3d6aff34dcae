from __future__ import annotations

from fractions import Fraction

import pytest

from costreg.core.checks import check_copyless, check_linear
from costreg.core.expr import Const, Min, Plus, Reg, Scale, affine_form, fold_constants, registers, substitute
from costreg.core.ext import INF, add, ext, is_inf, mul, parse_ext, render
from costreg.core.grammar import GrammarKind as G
from costreg.core.grammar import validate_grammar
from costreg.core.linalg import RowBasis, rref
from costreg.core.machines import Cra
from costreg.errors import ValidationError
from costreg import fixtures as F


def test_ext_arithmetic_absorbs_infinity():
    assert add(ext(1), INF) == INF
    assert is_inf(add(INF, ext(-3)))
    assert mul(ext(2), ext(Fraction(1, 2))) == 1
    assert parse_ext("inf") == INF
    assert parse_ext("3/4") == Fraction(3, 4)
    assert render(Fraction(3, 4)) == "3/4"
    assert render(INF) == "inf"


def test_registers_and_substitute():
    e = Plus(Reg("x"), Min((Reg("y"), Const(Fraction(2)))))
    assert registers(e) == ["x", "y"]
    s = substitute(e, {"x": Const(Fraction(1))})
    assert registers(s) == ["y"]


def test_affine_form_collects_coefficients():
    e = Plus(Scale(Fraction(3), Reg("x")), Plus(Reg("x"), Const(Fraction(5))))
    coeffs, c = affine_form(e)
    assert coeffs == {"x": 4} and c == 5


def test_fold_constants():
    assert fold_constants(Plus(Const(Fraction(1)), Const(Fraction(2)))) == Const(Fraction(3))


@pytest.mark.parametrize(
    "expr, grammar, ok",
    [
        (Plus(Reg("x"), Const(Fraction(1))), G.PlusC, True),
        (Plus(Reg("x"), Reg("y")), G.PlusC, False),
        (Plus(Reg("x"), Reg("y")), G.Plus, True),
        (Min((Reg("x"), Reg("y"))), G.Plus, False),
        (Scale(Fraction(2), Reg("x")), G.IncScale, True),
    ],
)
def test_validate_grammar(expr, grammar, ok):
    assert bool(validate_grammar(expr, grammar)) is ok


def test_copyless_and_linear_checks():
    assert check_copyless(F.subset_plus())
    assert not check_copyless(F.m1())  # y feeds both x and y on e
    assert check_linear(F.m1())


def test_cra_completes_updates_with_identity():
    m = F.m1()
    assert m.rho[("q0", "b")]["x"] == Reg("x")


def test_cra_rejects_missing_transition():
    with pytest.raises(ValidationError, match="missing transition"):
        Cra(("a", "b"), ("q",), "q", ("x",), {("q", "a"): "q"}, {}, {}, G.PlusC)


def test_cra_rejects_undeclared_register():
    with pytest.raises(ValidationError, match="undeclared register"):
        Cra(("a",), ("q",), "q", ("x",), {("q", "a"): "q"}, {}, {"q": Reg("y")}, G.PlusC)


def test_cra_rejects_grammar_violation():
    with pytest.raises(ValidationError):
        Cra(("a",), ("q",), "q", ("x", "y"), {("q", "a"): "q"},
            {("q", "a"): {"x": Plus(Reg("x"), Reg("y"))}}, {}, G.PlusC)


def test_prune_drops_unreachable_states():
    m = Cra(("a",), ("p", "q"), "p", (), {("p", "a"): "p", ("q", "a"): "p"}, {}, {}, G.PlusC)
    assert m.prune().states == ("p",)


def test_row_basis_and_rref():
    b = RowBasis(2)
    assert b.insert([Fraction(1), Fraction(2)])
    assert not b.insert([Fraction(2), Fraction(4)])
    assert b.insert([Fraction(0), Fraction(1)])
    assert rref([[2, 4], [1, 3]]) == [[1, 0], [0, 1]]
