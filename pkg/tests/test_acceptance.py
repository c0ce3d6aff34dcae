"""The eleven acceptance criteria, one test each, plus a PASS/FAIL line per criterion.

Run directly (``python3 tests/test_acceptance.py``) or through pytest; the
per-criterion lines are printed in pytest's terminal summary.
"""

from __future__ import annotations

import sys
import time
from fractions import Fraction
from pathlib import Path

import networkx as nx
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from helpers import f1, f2, f3, f4, rename_registers  # noqa: E402

from costreg import count_accepting_paths, eval_cra, eval_cra_rla, eval_wa  # noqa: E402
from costreg import fixtures as F  # noqa: E402
from costreg.analysis import Counterexample, Equivalent, Holds, Violation, contains, equiv_affine, karr_bound  # noqa: E402
from costreg.core.expr import Const, Plus, affine_expr, affine_form  # noqa: E402
from costreg.core.grammar import GrammarKind as G  # noqa: E402
from costreg.core.machines import Semiring  # noqa: E402
from costreg.mincost import (  # noqa: E402
    CostGraph,
    Finite,
    Unbounded,
    generalized_shortest_path,
    global_discount_graph,
    mincost_copyless_plus,
    mincost_global_discount,
    mincost_inc,
)
from costreg.mincost.gsp import path_cost  # noqa: E402
from costreg.oracle import (  # noqa: E402
    brute_mincost,
    gen_sat3,
    random_cra,
    random_formula,
    random_global_discount,
    random_graph,
    random_wa,
    same_value,
    words,
)
from costreg.transforms import (  # noqa: E402
    copyless_plus_to_inc,
    cra_to_wa,
    diff_cra,
    gen_modk_cra,
    inc_to_single_valued_wa,
    pair_cra_to_linear_cra,
    sum_cra,
    wa_to_cra,
)
from costreg.transforms.pairs import census_size  # noqa: E402

RESULTS: dict[int, tuple[bool, str]] = {}

TITLES = {
    1: "figure fixtures M1-M4 vs direct f1-f4",
    2: "transform soundness on random machines",
    3: "single-valued WA outputs",
    4: "min-cost (+c) vs oracle",
    5: "negative cycles and containment",
    6: "global-discount table algorithm",
    7: "generalized shortest path",
    8: "affine equivalence",
    9: "3-SAT reduction",
    10: "inc-scale equivalence pipeline",
    11: "regular look-ahead machine for M1",
}


def record(n: int, ok: bool, detail: str) -> bool:
    RESULTS[n] = (ok, detail)
    return ok


def summary_lines() -> list[str]:
    out = []
    for n in sorted(TITLES):
        if n not in RESULTS:
            continue
        ok, detail = RESULTS[n]
        out.append(f"criterion {n:2d} {'PASS' if ok else 'FAIL'}  {TITLES[n]}: {detail}")
    return out


# -- 1 ---------------------------------------------------------------------------


def check_1() -> bool:
    start = time.perf_counter()
    cases = [("M1", F.m1(), f1), ("M2", F.m2(), f2), ("M3", F.m3(), f3), ("M4", F.m4(), f4)]
    bad = []
    for name, m, ref in cases:
        for w in words(m.alphabet, 6):
            s = "".join(w)
            if eval_cra(m, w) != ref(s):
                bad.append(f"{name} on {s or 'ε'}: machine {eval_cra(m, w)} vs f {ref(s)}")
                break
    took = time.perf_counter() - start
    ok = not bad and took < 5
    detail = f"{took:.2f}s; " + ("all agree" if not bad else "; ".join(bad))
    return record(1, ok, detail)


# -- 2 ---------------------------------------------------------------------------

L2 = 5
N2 = 200


def _sound(m_src, src_eval, dst_eval, alphabet) -> tuple | None:
    for w in words(alphabet, L2):
        a, b = src_eval(w), dst_eval(w)
        if not same_value(a, b):
            return w, a, b
    return None


def _shape(seed: int) -> tuple[int, int]:
    return 1 + seed % 4, 1 + (seed // 4) % 3


def check_2() -> bool:
    start = time.perf_counter()
    fails = []
    counts = {}

    def cra_pair(m, t):
        return _sound(m, lambda w: eval_cra(m, w), lambda w: eval_cra(t, w), m.alphabet)

    for seed in range(N2):
        q, k = _shape(seed)
        rng = (-2, 3)
        grammars = (G.PlusC, G.Plus)
        m1 = random_cra(grammars[seed % 2], q, k, rng, seed, copyless=True)
        m2 = random_cra(grammars[(seed // 2) % 2], 1 + (seed + 1) % 4, k, rng, seed + 1000, copyless=True)
        jobs = {
            "sum_cra": (lambda: sum_cra(m1, m2),
                        lambda t: _sound(None, lambda w: _add(eval_cra(m1, w), eval_cra(m2, w)),
                                         lambda w: eval_cra(t, w), m1.alphabet)),
            "diff_cra": (lambda: diff_cra(m1, m2),
                         lambda t: _sound(None, lambda w: _sub(eval_cra(m1, w), eval_cra(m2, w)),
                                          lambda w: eval_cra(t, w), m1.alphabet)),
        }
        plus = random_cra(G.Plus, q, k, rng, seed, copyless=True)
        jobs["copyless_plus_to_inc"] = (lambda: copyless_plus_to_inc(plus), lambda t: cra_pair(plus, t))
        inc = random_cra(G.PlusC, q, k, rng, seed)
        jobs["inc_to_single_valued_wa"] = (
            lambda: inc_to_single_valued_wa(inc),
            lambda t: _sound(None, lambda w: eval_cra(inc, w), lambda w: eval_wa(t, w), inc.alphabet),
        )
        wa = random_wa(q, Semiring.MinPlus if seed % 2 else Semiring.PlusTimes, (0, 3), seed)
        jobs["wa_to_cra"] = (
            lambda: wa_to_cra(wa),
            lambda t: _sound(None, lambda w: eval_wa(wa, w), lambda w: eval_cra(t, w), wa.alphabet),
        )
        lin = random_cra(G.MinPlusC if seed % 2 else G.AffineLinear, q, k, rng, seed)
        jobs["cra_to_wa"] = (
            lambda: cra_to_wa(lin),
            lambda t: _sound(None, lambda w: eval_cra(lin, w), lambda w: eval_wa(t, w), lin.alphabet),
        )
        pm = random_cra(G.PairPlusTimes if seed % 2 else G.PairMinPlus, q, k, rng, seed)
        jobs["pair_cra_to_linear_cra"] = (lambda: pair_cra_to_linear_cra(pm), lambda t: cra_pair(pm, t))
        for name, (build, check) in jobs.items():
            counts[name] = counts.get(name, 0) + 1
            bad = check(build())
            if bad is not None:
                fails.append(f"{name} seed {seed} word {''.join(bad[0]) or 'ε'}: {bad[1]} vs {bad[2]}")
    took = time.perf_counter() - start
    ok = not fails and took < 120 and all(c >= 200 for c in counts.values())
    detail = f"{len(counts)} transforms x {N2} machines, {took:.1f}s" + ("" if not fails else "; " + fails[0])
    return record(2, ok, detail)


def _add(a, b):
    from costreg.semantics import UNDEFINED, is_undefined

    if is_undefined(a) or is_undefined(b):
        return UNDEFINED
    return a + b


def _sub(a, b):
    from costreg.semantics import UNDEFINED, is_undefined

    if is_undefined(a) or is_undefined(b):
        return UNDEFINED
    return a - b


# -- 3 ---------------------------------------------------------------------------


def check_3() -> bool:
    fixtures = {
        "M1": F.m1(),
        "M1 look-ahead machine": F.m1_rla()[0],
        "a-counter": F.counter("a"),
        "length": F.counter("ab"),
        "M_3 family": gen_modk_cra(3),
        "subset translation": copyless_plus_to_inc(F.subset_plus()),
        "3-SAT (x1 or x1 or x1)": copyless_plus_to_inc(gen_sat3(random_formula(1, 1, 0))),
        "diff M1 - M1": diff_cra(F.m1(), F.m1()),
    }
    worst = 0
    for name, m in fixtures.items():
        wa = inc_to_single_valued_wa(m)
        for w in words(m.alphabet, 6):
            worst = max(worst, count_accepting_paths(wa, w))
    return record(3, worst <= 1, f"{len(fixtures)} fixtures, max accepting paths {worst}")


# -- 4 ---------------------------------------------------------------------------


def check_4() -> bool:
    compared = mismatches = 0
    first = ""
    for seed in range(100):
        m = random_cra(G.PlusC, 1 + seed % 4, 1 + seed % 3, (0, 4), seed)
        got = mincost_inc(m)
        b5, b6 = brute_mincost(m, "plus-c", 5), brute_mincost(m, "plus-c", 6)
        if not isinstance(b6, tuple):
            continue
        if len(b6[1]) < 6 and isinstance(b5, tuple) and b5[0] == b6[0]:
            compared += 1
            good = isinstance(got, Finite) and got.value == b6[0] and eval_cra(m, got.witness) == got.value
            if not good:
                mismatches += 1
                first = first or f"seed {seed}: solver {got}, oracle {b6}"
    return record(4, mismatches == 0 and compared > 0,
                  f"{compared} stable instances compared, {mismatches} mismatches {first}".strip())


# -- 5 ---------------------------------------------------------------------------

NEG_LOOP = """\
cra
model plus-c
alphabet a b
registers x
init q0
output q0 = x
trans q0 a q0 : x := x + -1
trans q0 b q0 : x := x + 2
"""


def check_5() -> bool:
    from costreg.cli.fmt import parse_machine

    m = parse_machine(NEG_LOOP)
    out = mincost_inc(m)
    unbounded = isinstance(out, Unbounded) and out.infimum is None
    pumped = unbounded and eval_cra(m, out.unroll(10)) < eval_cra(m, out.unroll(1))
    ca, ln = F.counter("a"), F.counter("ab")
    same = contains(ln, ln)
    le = contains(ca, ln)
    gt = contains(ln, ca)
    ok = (
        unbounded and pumped and isinstance(same, Holds) and isinstance(le, Holds)
        and isinstance(gt, Violation) and gt.word == ("b",)
        and eval_cra(ln, gt.word) > eval_cra(ca, gt.word)
    )
    return record(5, ok, f"loop -> {type(out).__name__}; contains(|w|_a, |w|) -> {type(le).__name__}; "
                  f"contains(|w|, |w|_a) -> {type(gt).__name__} {''.join(getattr(gt, 'word', ()))}")


# -- 6 ---------------------------------------------------------------------------


def _has_discounting_cycle(m, b) -> bool:
    """Independent check: some simple cycle on an s-t walk has a discount < 1."""
    g = global_discount_graph(m, b)
    dg = nx.MultiDiGraph()
    for u, v, c, d, lab in g.edges:
        dg.add_edge(u, v, d=d)
    if g.target not in dg or g.source not in dg:
        return False
    fwd = nx.descendants(dg, g.source) | {g.source}
    bwd = nx.ancestors(dg, g.target) | {g.target}
    live = dg.subgraph(fwd & bwd)
    for comp in nx.strongly_connected_components(live):
        sub = live.subgraph(comp)
        if any(data["d"] < 1 for _, _, data in sub.edges(data=True)):
            return True
    return False


def check_6() -> bool:
    attained = limits = 0
    bad = []
    for seed in range(50):
        m = random_global_discount(1 + seed % 4, 1 + seed % 2, 3, seed)
        out = mincost_global_discount(m, 3)
        brute = brute_mincost(m, "global-discount", 6)
        cycle = _has_discounting_cycle(m, 3)
        if isinstance(out, Finite):
            attained += 1
            if not isinstance(brute, tuple) or brute[0] != out.value or eval_cra(m, out.witness) != out.value:
                bad.append(f"seed {seed}: {out} vs oracle {brute}")
            if cycle and out.value != 0:
                bad.append(f"seed {seed}: finite nonzero despite a discounting cycle")
        elif isinstance(out, Unbounded):
            limits += 1
            if out.infimum != 0 or not cycle:
                bad.append(f"seed {seed}: infimum {out.infimum}, cycle {cycle}")
            # linear cost growth against geometric discount: eventually decreasing toward 0
            v1, v2, v4 = (eval_cra(m, out.unroll(k)) for k in (1, 200, 400))
            if not (0 <= v4 < v2 and v4 < v1):
                bad.append(f"seed {seed}: lasso values {v1}, {v2}, {v4}")
        else:
            if isinstance(brute, tuple):
                bad.append(f"seed {seed}: solver empty, oracle {brute}")
    ok = not bad and attained > 0 and limits > 0
    return record(6, ok, f"{attained} attained, {limits} limit-0 infima" + ("" if not bad else "; " + bad[0]))


# -- 7 ---------------------------------------------------------------------------


def _brute_paths(edges, s, t, maxlen: int):
    best = None
    out: dict = {}
    for e in edges:
        out.setdefault(e[0], []).append(e)
    stack = [(s, [])]
    while stack:
        v, path = stack.pop()
        if v == t:
            c = path_cost(path)
            best = c if best is None or c < best else best
            continue
        if len(path) >= maxlen:
            continue
        for e in out.get(v, ()):
            stack.append((e[1], path + [e]))
    return best


def check_7() -> bool:
    bad = []
    for seed in range(50):
        n = 6 + seed % 5
        raw = random_graph(n, 3 * n, seed)
        g = CostGraph(0, n - 1)
        for u, v, c, w in raw:
            if u != n - 1:
                g.add(u, v, c, w, f"{u}>{v}")
        res = generalized_shortest_path(g)
        dg = nx.DiGraph()
        for u, v, c, w, _ in g.edges:
            if not dg.has_edge(u, v) or dg[u][v]["weight"] > c:
                dg.add_edge(u, v, weight=c)
        try:
            ref = nx.bellman_ford_path_length(dg, 0, n - 1)
        except (nx.NetworkXNoPath, nx.NodeNotFound):
            ref = None
        got = res.value if res.status == "attained" else None
        if got != ref:
            bad.append(f"unit weights seed {seed}: {got} vs {ref}")
    for seed in range(50):
        n = 5 + seed % 4
        raw = random_graph(n, 3 * n, seed, discounts=(Fraction(1), Fraction(1, 2), Fraction(9, 10)), dag=True)
        g = CostGraph(0, n - 1)
        for u, v, c, w in raw:
            if u != n - 1:
                g.add(u, v, c, w)
        res = generalized_shortest_path(g)
        ref = _brute_paths(g.edges, 0, n - 1, 12)
        got = res.value if res.status == "attained" else None
        if got != ref or (res.path is not None and path_cost(res.path) != got):
            bad.append(f"dag seed {seed}: {got} vs {ref}")
    return record(7, not bad, "50 unit-weight graphs vs networkx Bellman-Ford, 50 discounted DAGs vs path "
                  "enumeration; exact" + ("" if not bad else "; " + bad[0]))


# -- 8 ---------------------------------------------------------------------------

_AFFINE = (G.PlusC, G.Plus, G.AffineLinear, G.IncScale)


def _perturb_output(m, delta=1):
    q = next(q for q in m.reachable_states() if q in m.mu)
    coeffs, c = affine_form(m.mu[q])
    mu = dict(m.mu)
    mu[q] = affine_expr(coeffs, c + delta, m.registers) if m.grammar is not G.PlusC or not coeffs else (
        Plus(m.mu[q], Const(Fraction(delta))))
    return m.replace(mu=mu)


def _perturb_update(m, seed):
    """Shift one update constant; returns None when that leaves the function unchanged up to length 5."""
    key = sorted(m.rho)[seed % len(m.rho)]
    x = m.registers[seed % len(m.registers)]
    upd = dict(m.rho[key])
    upd[x] = Plus(upd[x], Const(Fraction(1))) if m.grammar is not G.PlusC else _shift_inc(upd[x])
    rho = dict(m.rho)
    rho[key] = upd
    return m.replace(rho=rho)


def _shift_inc(e):
    coeffs, c = affine_form(e)
    if not coeffs:
        return Const(c + 1)
    (r, _), = coeffs.items()
    from costreg.core.expr import Reg

    return Plus(Reg(r), Const(c + 1))


def check_8() -> bool:
    proved = refuted = 0
    bad = []
    seed = 0
    while proved < 50 or refuted < 50:
        g = _AFFINE[seed % len(_AFFINE)]
        m = random_cra(g, 1 + seed % 4, 1 + seed % 3, (-2, 3), seed, copyless=(g is G.Plus))
        seed += 1
        if not any(q in m.mu for q in m.reachable_states()):
            continue
        if proved < 50:
            alt = rename_registers(m) if seed % 2 else sum_cra(m, F.constant(0, "".join(m.alphabet)))
            res = equiv_affine(m, alt)
            if not isinstance(res, Equivalent):
                bad.append(f"seed {seed}: rewrite not proved ({res})")
            elif res.rounds > karr_bound(m, alt):
                bad.append(f"seed {seed}: {res.rounds} rounds > bound")
            proved += 1
        if refuted < 50:
            if seed % 2:
                p = _perturb_output(m)
            else:
                p = _perturb_update(m, seed)
                if all(same_value(eval_cra(m, w), eval_cra(p, w)) for w in words(m.alphabet, 5)):
                    p = _perturb_output(m)
            res = equiv_affine(m, p)
            if not isinstance(res, Counterexample):
                bad.append(f"seed {seed}: perturbation not refuted")
            else:
                if same_value(eval_cra(m, res.word), eval_cra(p, res.word)):
                    bad.append(f"seed {seed}: counterexample does not separate")
                if res.rounds > karr_bound(m, p):
                    bad.append(f"seed {seed}: {res.rounds} rounds > bound")
            refuted += 1
    return record(8, not bad, f"{proved} rewrites proved, {refuted} perturbations refuted with verified words"
                  + ("" if not bad else "; " + bad[0]))


# -- 9 ---------------------------------------------------------------------------


def check_9() -> bool:
    sat = unsat = 0
    bad = []
    seed = 0
    while sat < 30 or unsat < 30:
        n = 1 + seed % 8
        k = 2 + seed % 9
        f = random_formula(n, k, seed)
        seed += 1
        s = f.satisfiable()
        if (s and sat >= 30) or (not s and unsat >= 30):
            continue
        out = mincost_copyless_plus(gen_sat3(f))
        zero = isinstance(out, Finite) and out.value == 0
        if zero != s:
            bad.append(f"formula {f}: {out}")
        if s:
            sat += 1
        else:
            unsat += 1
    return record(9, not bad, f"{sat} satisfiable, {unsat} unsatisfiable formulas (n <= 8, <= 10 clauses) classified"
                  + ("" if not bad else "; " + bad[0]))


# -- 10 --------------------------------------------------------------------------


def check_10() -> bool:
    base = F.closest_bs_plus_times()
    split = F.closest_bs_plus_times(split=True)
    perturbed = F.closest_bs_plus_times(incr=3)
    t, ts, tp = (pair_cra_to_linear_cra(m) for m in (base, split, perturbed))
    same = equiv_affine(t, ts)
    diff = equiv_affine(t, tp)
    k = len(base.registers)
    census_ok = len(t.registers) == census_size(k) == 2 * k + sum(
        1 + k - len(S) for S in _subsets(base.registers))
    diff_ok = isinstance(diff, Counterexample) and not same_value(
        eval_cra(base, diff.word), eval_cra(perturbed, diff.word))
    ok = isinstance(same, Equivalent) and diff_ok and census_ok
    return record(10, ok, f"split: {type(same).__name__}; perturbed: {type(diff).__name__} "
                  f"{''.join(getattr(diff, 'word', ()))}; registers {len(t.registers)} = census {census_size(k)}")


def _subsets(items):
    from itertools import combinations

    return [c for r in range(len(items) + 1) for c in combinations(items, r)]


# -- 11 --------------------------------------------------------------------------


def check_11() -> bool:
    cra, dfa = F.m1_rla()
    m1 = F.m1()
    for w in words(m1.alphabet, 6):
        a, b = eval_cra(m1, w), eval_cra_rla(cra, dfa, w)
        if a != b:
            return record(11, False, f"figure's labeling DFA disagrees on {''.join(w)}: M1 {a}, look-ahead {b}")
    return record(11, True, "agrees on all words up to length 6")


# -- pytest entry points -------------------------------------------------------------

_GAP_1 = "M2 as drawn keeps the min over every completed block, the prose f2 only the last two"
_GAP_11 = "the figure's labeling DFA cannot see an e after a b-run"


@pytest.mark.xfail(strict=True, reason=_GAP_1)
def test_criterion_01_figure_fixtures():
    assert check_1(), RESULTS[1][1]


def test_criterion_02_transform_soundness():
    assert check_2(), RESULTS[2][1]


def test_criterion_03_single_valued():
    assert check_3(), RESULTS[3][1]


def test_criterion_04_mincost_vs_oracle():
    assert check_4(), RESULTS[4][1]


def test_criterion_05_negative_cycles():
    assert check_5(), RESULTS[5][1]


def test_criterion_06_global_discount():
    assert check_6(), RESULTS[6][1]


def test_criterion_07_generalized_shortest_path():
    assert check_7(), RESULTS[7][1]


def test_criterion_08_equivalence():
    assert check_8(), RESULTS[8][1]


def test_criterion_09_sat_reduction():
    assert check_9(), RESULTS[9][1]


def test_criterion_10_inc_scale_pipeline():
    assert check_10(), RESULTS[10][1]


@pytest.mark.xfail(strict=True, reason=_GAP_11)
def test_criterion_11_lookahead():
    assert check_11(), RESULTS[11][1]


if __name__ == "__main__":
    for n in sorted(TITLES):
        globals()[f"check_{n}"]()
    print("\n".join(summary_lines()))
