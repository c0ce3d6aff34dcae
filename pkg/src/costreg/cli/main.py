"""Command-line front end.

Exit codes: 0 success / property holds, 1 refuted with a witness,
2 inconclusive, 3 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from ..analysis import Counterexample, Holds, Inconclusive, Violation, Yes, contains, equiv_affine, in_range
from ..core.checks import check_copyless, check_linear
from ..core.expr import PairIncr, walk
from ..core.ext import parse_ext, render
from ..core.grammar import GrammarKind
from ..core.machines import Cra, LookaheadDfa, WeightedAutomaton, as_word, word_text
from ..errors import CraError
from ..mincost import (
    Empty,
    Finite,
    Unbounded,
    mincost_copyless_plus,
    mincost_future_discount,
    mincost_global_discount,
    mincost_inc,
    mincost_minplus,
    mincost_past_discount,
)
from ..oracle import Agree, Formula3Sat, brute_equiv, brute_mincost, gen_sat3, random_cra, random_formula
from ..semantics import eval_cra, eval_cra_rla, eval_wa, format_trace, is_undefined
from ..transforms import (
    copyless_plus_to_inc,
    cra_to_wa,
    diff_cra,
    gen_modk_cra,
    inc_to_single_valued_wa,
    pair_cra_to_linear_cra,
    sum_cra,
    wa_to_cra,
)
from .fmt import load_machine, print_machine

EXIT_OK, EXIT_REFUTED, EXIT_INCONCLUSIVE, EXIT_USAGE = 0, 1, 2, 3

MODELS = ("auto", "plus-c", "plus", "min-plus", "past-discount", "future-discount", "global-discount", "brute")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


class Report:
    def __init__(self, command: str):
        self.command = command
        self.outcome = ""
        self.value = None
        self.witness = None
        self.text = ""
        self.diagnostics: list[str] = []

    def json(self) -> str:
        out = {"command": self.command, "outcome": self.outcome, "diagnostics": self.diagnostics}
        if self.value is not None:
            out["value"] = self.value
        if self.witness is not None:
            out["witness"] = self.witness
        return json.dumps(out)


def _maxlen_default() -> int:
    return int(os.environ.get("CRA_ORACLE_MAXLEN", "6"))


def _load_cra(path: str) -> Cra:
    m = load_machine(path)
    if not isinstance(m, Cra):
        raise UsageError(f"{path}: expected a cra file")
    return m


def _value(v) -> str:
    return "undefined" if is_undefined(v) else render(v)


def _word(w) -> str:
    return word_text(w) or "ε"


# -- commands ------------------------------------------------------------------


def cmd_eval(args, rep: Report) -> int:
    m = load_machine(args.machine)
    if isinstance(m, WeightedAutomaton):
        w = as_word(args.word, m.alphabet)
        v = eval_wa(m, w)
    elif args.lookahead:
        dfa = load_machine(args.lookahead)
        if not isinstance(dfa, LookaheadDfa):
            raise UsageError(f"{args.lookahead}: expected a dfa file")
        w = as_word(args.word, dfa.alphabet)
        v = eval_cra_rla(m, dfa, w)
    else:
        w = as_word(args.word, m.alphabet)
        if args.trace:
            v, confs = eval_cra(m, w, trace=True)
            rep.diagnostics.append(format_trace(m, confs))
        else:
            v = eval_cra(m, w)
    rep.outcome = "undefined" if is_undefined(v) else "value"
    rep.value = _value(v)
    rep.text = rep.value
    if args.trace and rep.diagnostics:
        rep.text = rep.diagnostics[-1] + "\n" + rep.text
    return EXIT_OK


def _solve(m: Cra, model: str, args):
    g = m.grammar
    if model == "auto":
        if g is GrammarKind.PlusC:
            model = "plus-c"
        elif g is GrammarKind.Plus:
            model = "plus"
        elif g is GrammarKind.MinPlusC:
            model = "min-plus"
        elif g in (GrammarKind.IncScale, GrammarKind.PastDiscount):
            model = "past-discount"
        elif g is GrammarKind.FutureDiscount:
            model = "future-discount"
        elif g is GrammarKind.GlobalDiscount:
            model = "global-discount"
        elif g is GrammarKind.PairMinPlus:
            return _solve(pair_cra_to_linear_cra(m), "min-plus", args)
        else:
            raise UsageError(f"no min-cost solver for grammar {g.keyword}; try --model brute")
    eps = parse_ext(args.epsilon)
    if model == "plus-c":
        return mincost_inc(m)
    if model == "plus":
        return mincost_copyless_plus(m)
    if model == "min-plus":
        return mincost_minplus(m)
    if model == "past-discount":
        return mincost_past_discount(m, eps)
    if model == "future-discount":
        return mincost_future_discount(m, eps)
    if model == "global-discount":
        return mincost_global_discount(m, args.bound if args.bound is not None else _max_increment(m))
    res = brute_mincost(m, model, args.maxlen)
    if isinstance(res, Empty):
        return res
    return Finite(res[0], res[1])


def _max_increment(m: Cra) -> int:
    best = 0
    exprs = [e for upd in m.rho.values() for e in upd.values()] + list(m.mu.values())
    for e in exprs:
        for sub in walk(e):
            if isinstance(sub, PairIncr) and isinstance(sub.by, tuple):
                best = max(best, int(sub.by[0]))
    return best


def cmd_mincost(args, rep: Report) -> int:
    m = _load_cra(args.machine)
    out = _solve(m, args.model, args)
    if isinstance(out, Finite):
        rep.outcome = "finite"
        rep.value = render(out.value)
        rep.witness = word_text(out.witness)
    elif isinstance(out, Unbounded):
        rep.outcome = "unbounded"
        rep.value = "-inf" if out.infimum is None else render(out.infimum)
        if out.lasso:
            pre, cyc, suf = (word_text(p) for p in out.lasso)
            rep.diagnostics.append(f"lasso prefix={pre or 'ε'} cycle={cyc or 'ε'} suffix={suf or 'ε'}")
        if out.note:
            rep.diagnostics.append(out.note)
    else:
        rep.outcome = "empty"
    rep.text = out.describe()
    return EXIT_OK


def _as_affine(m: Cra) -> Cra:
    if m.grammar.is_pair:
        if m.grammar is GrammarKind.PairMinPlus:
            raise UsageError("equivalence over min-plus pair machines is not supported")
        return pair_cra_to_linear_cra(m)
    return m


def cmd_equiv(args, rep: Report) -> int:
    m1, m2 = _load_cra(args.left), _load_cra(args.right)
    minplus = [m for m in (m1, m2) if m.grammar in (GrammarKind.MinPlusC, GrammarKind.PairMinPlus)]
    if minplus:
        if any(not check_copyless(m) for m in minplus):
            raise UsageError(
                "equivalence of copyful min-plus machines is undecidable; "
                "no decision procedure is offered"
            )
        res = brute_equiv(m1, m2, maxlen=args.maxlen)
        rep.diagnostics.append("copyless min-plus: bounded check only (semi-decision)")
        if isinstance(res, Agree):
            rep.outcome = "agree-up-to-bound"
            rep.text = res.describe()
            return EXIT_INCONCLUSIVE
        rep.outcome, rep.witness = "counterexample", word_text(res.word)
        rep.text = res.describe()
        return EXIT_REFUTED
    res = equiv_affine(_as_affine(m1), _as_affine(m2))
    if isinstance(res, Counterexample):
        rep.outcome, rep.witness = "counterexample", word_text(res.word)
        rep.value = f"{_value(res.left)} vs {_value(res.right)}"
        rep.text = f"counterexample {_word(res.word)}: {rep.value}"
        return EXIT_REFUTED
    rep.outcome = "equivalent"
    rep.text = "equivalent"
    return EXIT_OK


def cmd_contains(args, rep: Report) -> int:
    res = contains(_load_cra(args.left), _load_cra(args.right))
    if isinstance(res, Holds):
        rep.outcome, rep.text = "holds", "holds"
        return EXIT_OK
    assert isinstance(res, Violation)
    rep.outcome = "violation"
    rep.witness = word_text(res.word)
    rep.value = render(res.gap)
    if res.unbounded:
        rep.diagnostics.append("difference is unbounded below")
    rep.text = f"violation {_word(res.word)} gap={rep.value}"
    return EXIT_REFUTED


def cmd_range(args, rep: Report) -> int:
    m = _load_cra(args.machine)
    res = in_range(m, parse_ext(args.k), window=args.window, maxlen=args.maxlen)
    if isinstance(res, Yes):
        rep.outcome, rep.witness = "yes", word_text(res.word)
        rep.text = f"yes witness={_word(res.word)}"
        return EXIT_OK
    if isinstance(res, Inconclusive):
        rep.outcome, rep.text = "inconclusive", res.describe()
        return EXIT_INCONCLUSIVE
    rep.outcome, rep.text = "no", "no"
    return EXIT_REFUTED


def cmd_convert(args, rep: Report) -> int:
    m = load_machine(args.machine)
    to = args.to
    if to == "cra":
        if not isinstance(m, WeightedAutomaton):
            raise UsageError("--to cra expects a wa file")
        out = wa_to_cra(m)
    elif not isinstance(m, Cra):
        raise UsageError(f"--to {to} expects a cra file")
    elif to == "inc":
        out = copyless_plus_to_inc(m)
    elif to == "wa":
        out = inc_to_single_valued_wa(m) if m.grammar is GrammarKind.PlusC else cra_to_wa(m)
    elif to == "linear":
        out = pair_cra_to_linear_cra(m)
    elif to in ("sum", "diff"):
        if not args.other:
            raise UsageError(f"--to {to} needs --with FILE")
        other = _load_cra(args.other)
        out = sum_cra(m, other) if to == "sum" else diff_cra(m, other)
    else:
        raise UsageError(f"unknown target {to!r}")
    rep.outcome = "machine"
    rep.text = print_machine(out).rstrip("\n")
    rep.value = rep.text
    return EXIT_OK


def cmd_check(args, rep: Report) -> int:
    m = load_machine(args.machine)
    rep.outcome = "valid"
    lines = [f"kind {type(m).__name__}"]
    if isinstance(m, Cra):
        lines += [
            f"model {m.grammar.keyword}",
            f"states {len(m.states)} registers {len(m.registers)}",
            f"copyless {'yes' if check_copyless(m) else 'no'}",
            f"linear {'yes' if check_linear(m) else 'no'}",
            f"reachable {len(m.reachable_states())}",
        ]
    elif isinstance(m, WeightedAutomaton):
        lines += [f"semiring {m.semiring.value}", f"states {len(m.states)} transitions {len(m.transitions)}"]
    else:
        lines += [f"states {len(m.states)}"]
    rep.diagnostics += lines
    rep.text = "\n".join(lines)
    return EXIT_OK


def cmd_oracle(args, rep: Report) -> int:
    m = _load_cra(args.machine)
    if args.against:
        res = brute_equiv(m, _load_cra(args.against), maxlen=args.maxlen)
        if isinstance(res, Agree):
            rep.outcome, rep.text = "agree", res.describe()
            return EXIT_OK
        rep.outcome, rep.witness = "differ", word_text(res.word)
        rep.text = res.describe()
        return EXIT_REFUTED
    res = brute_mincost(m, None, args.maxlen)
    if isinstance(res, Empty):
        rep.outcome, rep.text = "empty", "empty"
        return EXIT_OK
    v, w = res
    rep.outcome, rep.value, rep.witness = "finite", render(v), word_text(w)
    rep.text = f"{rep.value} witness={_word(w)}"
    return EXIT_OK


def cmd_gen(args, rep: Report) -> int:
    if args.kind == "modk":
        m = gen_modk_cra(args.k)
    elif args.kind == "sat3":
        if args.clauses_text:
            clauses = []
            for cl in args.clauses_text.split(","):
                lits = [int(t) for t in cl.split()]
                clauses.append(tuple((abs(v), v > 0) for v in lits))
            f = Formula3Sat(args.vars, tuple(clauses))
        else:
            f = random_formula(args.vars, args.clauses, args.seed)
        m = gen_sat3(f)
        if f.n <= 20:
            rep.diagnostics.append(f"satisfiable {'yes' if f.satisfiable() else 'no'}")
    elif args.kind == "random":
        g = GrammarKind.from_keyword(args.model)
        m = random_cra(g, args.states, args.registers, (args.lo, args.hi), args.seed, args.copyless)
    else:
        from .. import fixtures

        fn = getattr(fixtures, args.kind, None)
        if fn is None or not callable(fn):
            raise UsageError(f"unknown fixture {args.kind!r}")
        m = fn()
        if isinstance(m, tuple):
            m = m[0]
    rep.outcome = "machine"
    rep.text = print_machine(m).rstrip("\n")
    rep.value = rep.text
    return EXIT_OK


# -- parser ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="print one JSON object")
    p = _Parser(prog="costreg", description="Cost register automata toolkit", parents=[common])
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    e = sub.add_parser("eval", parents=[common], help="evaluate a machine on a word")
    e.add_argument("machine")
    e.add_argument("word", nargs="?", default="")
    e.add_argument("--lookahead", metavar="DFA", help="labeling DFA for a look-ahead machine")
    e.add_argument("--trace", action="store_true")
    e.set_defaults(fn=cmd_eval)

    mc = sub.add_parser("mincost", parents=[common], help="min over all words")
    mc.add_argument("machine")
    mc.add_argument("--model", choices=MODELS, default="auto")
    mc.add_argument("--epsilon", default="1/1000000000")
    mc.add_argument("--bound", type=int, default=None, help="largest increment (global discount)")
    mc.add_argument("--maxlen", type=int, default=_maxlen_default())
    mc.set_defaults(fn=cmd_mincost)

    eq = sub.add_parser("equiv", parents=[common], help="decide equivalence")
    eq.add_argument("left")
    eq.add_argument("right")
    eq.add_argument("--maxlen", type=int, default=_maxlen_default())
    eq.set_defaults(fn=cmd_equiv)

    co = sub.add_parser("contains", parents=[common], help="decide left <= right on every word")
    co.add_argument("left")
    co.add_argument("right")
    co.set_defaults(fn=cmd_contains)

    rg = sub.add_parser("range", parents=[common], help="is some output equal to k")
    rg.add_argument("machine")
    rg.add_argument("k")
    rg.add_argument("--window", type=int, default=64)
    rg.add_argument("--maxlen", type=int, default=None)
    rg.set_defaults(fn=cmd_range)

    cv = sub.add_parser("convert", parents=[common], help="apply a construction")
    cv.add_argument("machine")
    cv.add_argument("--to", required=True, choices=("inc", "wa", "cra", "linear", "sum", "diff"))
    cv.add_argument("--with", dest="other", metavar="FILE")
    cv.set_defaults(fn=cmd_convert)

    ck = sub.add_parser("check", parents=[common], help="validate and summarize a file")
    ck.add_argument("machine")
    ck.set_defaults(fn=cmd_check)

    orc = sub.add_parser("oracle", parents=[common], help="brute force over short words")
    orc.add_argument("machine")
    orc.add_argument("--against", metavar="FILE")
    orc.add_argument("--maxlen", type=int, default=_maxlen_default())
    orc.set_defaults(fn=cmd_oracle)

    gn = sub.add_parser("gen", parents=[common], help="print a generated or fixture machine")
    gn.add_argument("kind", help="modk, sat3, random, or a fixture name (m1, m2, m3, m4, ...)")
    gn.add_argument("--k", type=int, default=2)
    gn.add_argument("--vars", type=int, default=3)
    gn.add_argument("--clauses", type=int, default=4)
    gn.add_argument("--clause-list", dest="clauses_text", help='e.g. "1 2 -3, -1 2 3"')
    gn.add_argument("--model", default="plus-c")
    gn.add_argument("--states", type=int, default=3)
    gn.add_argument("--registers", type=int, default=2)
    gn.add_argument("--lo", type=int, default=0)
    gn.add_argument("--hi", type=int, default=3)
    gn.add_argument("--copyless", action="store_true")
    gn.add_argument("--seed", type=int, default=0)
    gn.set_defaults(fn=cmd_gen)
    return p


def run_command(argv: list[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    argv = list(sys.argv[1:] if argv is None else argv)
    want_json = "--json" in argv
    rep = Report(argv[0] if argv else "")
    try:
        args = build_parser().parse_args(argv)
        if not getattr(args, "command", None):
            raise UsageError("missing command")
        rep.command = args.command
        code = args.fn(args, rep)
    except UsageError as exc:
        code = EXIT_USAGE
        rep.outcome = "error"
        rep.diagnostics.append(f"usage: {exc}")
    except (CraError, OSError, ValueError) as exc:
        code = EXIT_USAGE
        rep.outcome = "error"
        rep.diagnostics.append(f"{type(exc).__name__}: {exc}")
    if want_json:
        print(rep.json(), file=stdout)
    elif code == EXIT_USAGE:
        for d in rep.diagnostics:
            print(d, file=stderr)
    else:
        print(rep.text, file=stdout)
    return code


def main() -> None:
    sys.exit(run_command())


if __name__ == "__main__":
    main()
