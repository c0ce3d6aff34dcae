from __future__ import annotations

from fractions import Fraction

import pytest

from helpers import all_words

from costreg import eval_cra
from costreg import fixtures as F
from costreg.cli.fmt import parse_machine
from costreg.core.grammar import GrammarKind as G
from costreg.errors import GrammarMismatch, IncrementOutOfRange, InvalidEdge, UnsupportedConstants
from costreg.mincost import (
    CostGraph,
    Empty,
    Finite,
    Unbounded,
    discount_table,
    generalized_shortest_path,
    global_discount_graph,
    mincost_copyless_plus,
    mincost_future_discount,
    mincost_global_discount,
    mincost_inc,
    mincost_minplus,
    mincost_past_discount,
    path_cost,
)
from costreg.oracle import brute_mincost, random_cra, random_global_discount


def _cra(body: str, model: str, alphabet: str = "a", registers: str = "x"):
    head = f"cra\nmodel {model}\nalphabet {' '.join(alphabet)}\nregisters {registers}\ninit q0\n"
    return parse_machine(head + body)


# -- generalized shortest path -------------------------------------------------------


def test_gsp_discount_applies_to_what_follows():
    g = CostGraph("s", "t")
    g.add("s", "u", 1, Fraction(1, 2))
    g.add("u", "t", 4, 1)
    g.add("s", "t", 4, 1)
    res = generalized_shortest_path(g)
    assert res.status == "attained" and res.value == 3
    assert path_cost(res.path) == 3


def test_gsp_infimum_through_a_shrinking_cycle():
    g = CostGraph("s", "t")
    g.add("s", "u", 0, 1)
    g.add("u", "u", 0, Fraction(1, 2))
    g.add("u", "t", 8, 1)
    res = generalized_shortest_path(g)
    assert res.status == "infimum" and res.value == 0
    assert res.lasso is not None


def test_gsp_unreachable():
    g = CostGraph("s", "t")
    g.add("s", "u", 1, 1)
    assert generalized_shortest_path(g).status == "unreachable"


@pytest.mark.parametrize("cost, weight", [(-1, 1), (1, 0), (1, 2)])
def test_gsp_rejects_bad_edges(cost, weight):
    g = CostGraph("s", "t")
    g.add("s", "t", cost, weight)
    with pytest.raises(InvalidEdge):
        generalized_shortest_path(g)


# -- increment machines --------------------------------------------------------------


def test_m1_minimum_is_zero_on_empty_word():
    out = mincost_inc(F.m1())
    assert out == Finite(Fraction(0), ())


def test_negative_loop_is_unbounded():
    m = _cra("output q0 = x\ntrans q0 a q0 : x := x + -1\n", "plus-c")
    out = mincost_inc(m)
    assert isinstance(out, Unbounded) and out.infimum is None
    assert eval_cra(m, out.unroll(5)) < eval_cra(m, out.unroll(2))


def test_no_output_is_empty():
    m = _cra("trans q0 a q0\n", "plus-c")
    assert isinstance(mincost_inc(m), Empty)


def test_mincost_inc_needs_plus_c():
    with pytest.raises(GrammarMismatch):
        mincost_inc(F.m2())


@pytest.mark.parametrize("seed", range(25))
def test_mincost_inc_witness_is_sound(seed):
    m = random_cra(G.PlusC, 3, 2, (-1, 3), seed)
    out = mincost_inc(m)
    if isinstance(out, Finite):
        assert eval_cra(m, out.witness) == out.value
        brute = brute_mincost(m, maxlen=5)
        assert not isinstance(brute, tuple) or brute[0] >= out.value


def test_copyless_plus_through_subsets():
    out = mincost_copyless_plus(F.subset_plus())
    assert isinstance(out, Finite)
    assert eval_cra(F.subset_plus(), out.witness) == out.value


# -- min-plus ------------------------------------------------------------------------


@pytest.mark.parametrize("make", [F.m2, F.m3])
def test_minplus_fixtures(make):
    m = make()
    out = mincost_minplus(m)
    assert isinstance(out, Finite) and out.value == 0
    assert eval_cra(m, out.witness) == 0


# -- discounting ---------------------------------------------------------------------


def test_past_discount_on_m4():
    out = mincost_past_discount(F.m4())
    assert out == Finite(Fraction(0), ())


def test_past_discount_infimum_not_attained():
    body = """output q3 = x
trans q0 a q1 : x := x + 10
trans q0 b q4
trans q0 e q4
trans q1 b q3
trans q1 a q4
trans q1 e q4
trans q3 e q3 : x := 19/20 * x
trans q3 a q3
trans q3 b q3
trans q4 a q4
trans q4 b q4
trans q4 e q4
"""
    m = _cra(body, "inc-scale", alphabet="abe")
    out = mincost_past_discount(m)
    assert isinstance(out, Unbounded) and out.infimum == 0
    assert 0 < eval_cra(m, out.unroll(20)) < eval_cra(m, out.unroll(1))


def test_past_discount_rejects_negative_constants():
    m = _cra("output q0 = x\ntrans q0 a q0 : x := x + -1\n", "plus-c")
    with pytest.raises(UnsupportedConstants):
        mincost_past_discount(m)


def test_future_discount_two_steps():
    body = """output q2 = x
trans q0 a q1 : x := x[3, 1/2]
trans q1 a q2 : x := x[4, 1/2]
trans q2 a q2
"""
    out = mincost_future_discount(_cra(body, "future-discount"))
    assert out == Finite(Fraction(5), ("a", "a"))


_GD = """output q1 = x
trans q0 a q1 : x := incr(x, (2, 1/2))
trans q1 a q2
trans q2 a q2
"""


def test_global_discount_single_edge():
    out = mincost_global_discount(_cra(_GD, "global-discount"), 3)
    assert out == Finite(Fraction(1), ("a",))


def test_global_discount_increment_bound():
    with pytest.raises(IncrementOutOfRange):
        mincost_global_discount(_cra(_GD, "global-discount"), 1)


@pytest.mark.parametrize("seed", range(10))
def test_discount_table_is_monotone(seed):
    m = random_global_discount(3, 2, 3, seed)
    g = global_discount_graph(m, 3)
    tables, _ = discount_table(g, 4, 12)
    for prev, cur in zip(tables, tables[1:]):
        for cell, val in prev.items():
            assert cur[cell] <= val


@pytest.mark.parametrize("seed", range(20))
def test_global_discount_matches_oracle(seed):
    m = random_global_discount(1 + seed % 3, 1 + seed % 2, 3, seed)
    out = mincost_global_discount(m, 3)
    if isinstance(out, Finite):
        assert eval_cra(m, out.witness) == out.value
        assert brute_mincost(m, maxlen=6)[0] == out.value
    elif isinstance(out, Unbounded):
        assert out.infimum == 0
