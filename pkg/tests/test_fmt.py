from __future__ import annotations

from fractions import Fraction

import pytest

from helpers import all_words

from costreg import eval_cra, eval_wa
from costreg import fixtures as F
from costreg.cli.fmt import load_machine, parse_expr, parse_machine, print_machine
from costreg.core.expr import Const, Min, Plus, Reg, Scale
from costreg.core.machines import Cra, LookaheadDfa, WeightedAutomaton
from costreg.errors import ParseError, ValidationError
from costreg.transforms import inc_to_single_valued_wa

FIXTURES = [F.m1, F.m2, F.m3, F.m4, F.subset_plus, F.m1_pairs, F.closest_bs, F.closest_bs_plus_times]


@pytest.mark.parametrize("make", FIXTURES, ids=lambda f: f.__name__)
def test_cra_round_trip(make):
    m = make()
    text = print_machine(m)
    again = parse_machine(text)
    assert isinstance(again, Cra)
    assert print_machine(again) == text
    for w in all_words(m.alphabet, 4):
        assert eval_cra(again, w) == eval_cra(m, w)


def test_wa_round_trip():
    wa = inc_to_single_valued_wa(F.m1())
    text = print_machine(wa)
    again = parse_machine(text)
    assert isinstance(again, WeightedAutomaton)
    for w in all_words(wa.alphabet, 4):
        assert eval_wa(again, w) == eval_wa(wa, w)


def test_dfa_round_trip():
    _, dfa = F.m1_rla_fixed()
    again = parse_machine(print_machine(dfa))
    assert isinstance(again, LookaheadDfa)
    assert again.delta == dfa.delta


def test_parse_expr():
    assert parse_expr("x + 1") == Plus(Reg("x"), Const(Fraction(1)))
    assert parse_expr("min(x, y)") == Min((Reg("x"), Reg("y")))
    assert parse_expr("19/20 * x") == Scale(Fraction(19, 20), Reg("x"))


def test_comments_and_blank_lines_are_ignored():
    text = "# a comment\n\n" + F.M1_TEXT
    assert print_machine(parse_machine(text)) == print_machine(F.m1())


def test_empty_file():
    with pytest.raises(ParseError, match="expected header"):
        parse_machine("")


@pytest.mark.parametrize(
    "bad, error, match",
    [
        (F.M1_TEXT.replace("model plus-c", "model nonsense"), ParseError, "2:6: unknown model"),
        (F.M1_TEXT.replace("x := x + 1 ;", "x := x + ;"), ParseError, "expected an expression"),
        (F.M1_TEXT.replace("trans q0 b q0 : y := y + 1\n", ""), ValidationError, "missing transition"),
    ],
)
def test_malformed_machines_raise(bad, error, match):
    with pytest.raises(error, match=match):
        parse_machine(bad)


def test_load_machine(tmp_path):
    p = tmp_path / "m1.cra"
    p.write_text(F.M1_TEXT)
    assert eval_cra(load_machine(str(p)), "abeab") == 4
