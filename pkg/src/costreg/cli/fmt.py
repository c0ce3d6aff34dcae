"""Line-oriented text format for machines.

::

    cra
    model min-plus
    alphabet a b e
    registers x y z
    init q0
    initval x = inf
    output q0 = x
    trans q0 a q0 : y := y + 1
    trans q0 e q0 : x := min(x, y, z) ; y := 0 ; z := 0

Weighted automata start with ``wa`` and use ``semiring``, ``initw``,
``finalw`` and ``trans p a w q`` lines.  Look-ahead DFAs start with
``dfa`` and use ``init`` and ``trans r a r'`` lines.
"""

from __future__ import annotations

import re

from ..core.expr import (
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
)
from ..core.ext import INF, parse_ext, render
from ..core.grammar import GrammarKind
from ..core.machines import Cra, LookaheadDfa, Semiring, WeightedAutomaton
from ..errors import ParseError

_TOKEN_RE = re.compile(
    r"\s*(?:"
    r"(?P<num>\d+/\d+|\d*\.\d+|\d+\.?\d*)"
    r"|(?P<ident>[A-Za-z_][A-Za-z0-9_.{}|<>~/']*)"
    r"|(?P<op>:=|[-+*(),\[\]])"
    r")"
)

_KEYWORDS = {"min", "pairsum", "incr", "subst"}


class _Tokens:
    def __init__(self, text: str, line: int, col0: int):
        self.items: list[tuple[str, str, int]] = []
        self.line = line
        pos = 0
        text = text.rstrip()
        while pos < len(text):
            m = _TOKEN_RE.match(text, pos)
            if not m or m.end() == pos:
                raise ParseError(f"unexpected character {text[pos]!r}", line, col0 + pos + 1)
            kind = m.lastgroup
            if kind is None:
                break
            self.items.append((kind, m.group(kind), col0 + m.start(kind) + 1))
            pos = m.end()
        self.i = 0

    def peek(self, k: int = 0):
        j = self.i + k
        return self.items[j] if j < len(self.items) else ("eof", "", 0)

    def next(self):
        tok = self.peek()
        self.i += 1
        return tok

    def col(self) -> int:
        tok = self.peek()
        return tok[2] if tok[0] != "eof" else (self.items[-1][2] + 1 if self.items else 1)

    def expect(self, value: str):
        kind, val, col = self.next()
        if val != value or kind == "eof":
            raise ParseError(f"expected {value!r}, found {val or 'end of line'!r}", self.line, col or self.col())

    def at(self, value: str) -> bool:
        kind, val, _ = self.peek()
        return kind == "op" and val == value


def _number(toks: _Tokens):
    neg = False
    if toks.at("-"):
        toks.next()
        neg = True
    kind, val, col = toks.next()
    if kind == "num":
        v = parse_ext(val)
    elif kind == "ident" and val == "inf":
        if neg:
            raise ParseError("-inf is not representable", toks.line, col)
        v = INF
    else:
        raise ParseError(f"expected a number, found {val or 'end of line'!r}", toks.line, col or toks.col())
    return -v if neg else v


def _is_number_start(toks: _Tokens) -> bool:
    kind, val, _ = toks.peek()
    if kind == "num" or (kind == "ident" and val == "inf"):
        return True
    if kind == "op" and val == "-":
        k2, v2, _ = toks.peek(1)
        return k2 == "num"
    return False


def _expr(toks: _Tokens) -> Expr:
    e = _term(toks)
    while True:
        if toks.at("+"):
            toks.next()
            e = Plus(e, _term(toks))
        elif toks.at("-"):
            toks.next()
            kind, val, col = toks.peek()
            if kind != "num":
                raise ParseError("only constants can be subtracted", toks.line, col or toks.col())
            e = Plus(e, Const(-_number(toks)))
        else:
            return e


def _term(toks: _Tokens) -> Expr:
    if _is_number_start(toks):
        v = _number(toks)
        if toks.at("*"):
            toks.next()
            return Scale(v, _term(toks))
        return _postfix(toks, Const(v))
    return _postfix(toks, _atom(toks))


def _postfix(toks: _Tokens, e: Expr) -> Expr:
    while toks.at("["):
        toks.next()
        c = _number(toks)
        toks.expect(",")
        d = _number(toks)
        toks.expect("]")
        e = Subst(e, PairConst(c, d))
    return e


def _pair_or_group(toks: _Tokens) -> Expr:
    col = toks.col()
    toks.expect("(")
    first = _expr(toks)
    if toks.at(","):
        toks.next()
        second = _expr(toks)
        toks.expect(")")
        if not (isinstance(first, Const) and isinstance(second, Const)):
            raise ParseError("pair literal components must be constants", toks.line, col)
        return PairConst(first.value, second.value)
    toks.expect(")")
    return first


def _atom(toks: _Tokens) -> Expr:
    kind, val, col = toks.peek()
    if kind == "op" and val == "(":
        return _pair_or_group(toks)
    if kind != "ident":
        raise ParseError(f"expected an expression, found {val or 'end of line'!r}", toks.line, col or toks.col())
    toks.next()
    if val in _KEYWORDS:
        toks.expect("(")
        if val == "min":
            args = [_expr(toks)]
            while toks.at(","):
                toks.next()
                args.append(_expr(toks))
            toks.expect(")")
            if len(args) < 2:
                raise ParseError("min needs at least two arguments", toks.line, col)
            return Min(tuple(args))
        left = _expr(toks)
        toks.expect(",")
        right = _expr(toks)
        toks.expect(")")
        if val == "pairsum":
            return PairSum(left, right)
        if val == "subst":
            return Subst(left, right)
        if isinstance(right, PairConst):
            return PairIncr(left, (right.c, right.d))
        if isinstance(right, Const):
            return PairIncr(left, right.value)
        raise ParseError("incr takes a constant or a pair constant", toks.line, col)
    return Reg(val)


def parse_expr(text: str, line: int = 0, col0: int = 0) -> Expr:
    toks = _Tokens(text, line, col0)
    e = _expr(toks)
    kind, val, col = toks.peek()
    if kind != "eof":
        raise ParseError(f"unexpected {val!r} after expression", line, col)
    return e


def _parse_value(text: str, line: int, col0: int):
    e = parse_expr(text, line, col0)
    if isinstance(e, Const):
        return e.value
    if isinstance(e, PairConst):
        return (e.c, e.d)
    raise ParseError("initial value must be a constant or pair constant", line, col0 + 1)


def _strip_comment(raw: str) -> str:
    i = raw.find("#")
    return raw if i < 0 else raw[:i]


def _lines(text: str):
    for no, raw in enumerate(text.splitlines(), start=1):
        body = _strip_comment(raw)
        if body.strip():
            yield no, body


def parse_machine(text: str):
    """Parse a ``cra``, ``wa`` or ``dfa`` description."""
    lines = list(_lines(text))
    if not lines:
        raise ParseError("expected header (cra, wa or dfa)", 1, 1)
    no, head = lines[0]
    kind = head.strip()
    if kind == "cra":
        return _parse_cra(lines[1:])
    if kind == "wa":
        return _parse_wa(lines[1:])
    if kind == "dfa":
        return _parse_dfa(lines[1:])
    raise ParseError(f"expected header (cra, wa or dfa), found {kind!r}", no, 1)


def _split_key(body: str) -> tuple[str, str, int]:
    stripped = body.lstrip()
    lead = len(body) - len(stripped)
    key, _, rest = stripped.partition(" ")
    return key, rest, lead + len(key) + 1


def _assignment(body: str, line: int, col0: int) -> tuple[str, str, int]:
    name, eq, rest = body.partition("=")
    if not eq:
        raise ParseError("expected '='", line, col0 + len(body) + 1)
    return name.strip(), rest, col0 + len(name) + 1


def _add_state(states: list[str], q: str):
    if q not in states:
        states.append(q)


def _parse_cra(lines) -> Cra:
    model = None
    alphabet: list[str] | None = None
    regs: list[str] = []
    states: list[str] = []
    initial = None
    initvals: dict = {}
    mu: dict[str, Expr] = {}
    delta: dict = {}
    rho: dict = {}
    for no, body in lines:
        key, rest, col = _split_key(body)
        if key == "model":
            try:
                model = GrammarKind.from_keyword(rest.strip())
            except ValueError as exc:
                raise ParseError(str(exc), no, col) from None
        elif key == "alphabet":
            alphabet = rest.split()
        elif key == "registers":
            regs = rest.split()
        elif key == "states":
            for q in rest.split():
                _add_state(states, q)
        elif key == "init":
            initial = rest.strip()
            _add_state(states, initial)
        elif key == "initval":
            name, val, vcol = _assignment(rest, no, col)
            initvals[name] = _parse_value(val, no, vcol)
        elif key == "output":
            q, expr, ecol = _assignment(rest, no, col)
            mu[q] = parse_expr(expr, no, ecol)
            _add_state(states, q)
        elif key == "trans":
            head, colon, upd = rest.partition(":")
            parts = head.split()
            if len(parts) != 3:
                raise ParseError("expected 'trans <state> <symbol> <state>'", no, col)
            q, a, p = parts
            if (q, a) in delta:
                raise ParseError(f"duplicate transition from {q} on {a}", no, col)
            _add_state(states, q)
            _add_state(states, p)
            delta[(q, a)] = p
            assigns: dict[str, Expr] = {}
            offset = col + len(head) + 1
            for piece in upd.split(";") if colon else []:
                if not piece.strip():
                    offset += len(piece) + 1
                    continue
                name, sep, expr = piece.partition(":=")
                if not sep:
                    raise ParseError("expected ':='", no, offset)
                name = name.strip()
                if name in assigns:
                    raise ParseError(f"register {name} assigned twice", no, offset)
                assigns[name] = parse_expr(expr, no, offset + len(piece.split(":=")[0]) + 2)
                offset += len(piece) + 1
            rho[(q, a)] = assigns
        else:
            raise ParseError(f"unknown directive {key!r}", no, 1)
    if model is None:
        raise ParseError("missing 'model' line", 1, 1)
    if alphabet is None:
        raise ParseError("missing 'alphabet' line", 1, 1)
    if initial is None:
        raise ParseError("missing 'init' line", 1, 1)
    return Cra(
        alphabet=tuple(alphabet),
        states=tuple(states),
        initial=initial,
        registers=tuple(regs),
        delta=delta,
        rho=rho,
        mu=mu,
        grammar=model,
        init_values=initvals,
    )


def _parse_wa(lines) -> WeightedAutomaton:
    semiring = Semiring.MinPlus
    alphabet: list[str] | None = None
    states: list[str] = []
    initw: dict = {}
    finalw: dict = {}
    trans = []
    for no, body in lines:
        key, rest, col = _split_key(body)
        if key == "semiring":
            try:
                semiring = Semiring(rest.strip())
            except ValueError:
                raise ParseError(f"unknown semiring {rest.strip()!r}", no, col) from None
        elif key == "alphabet":
            alphabet = rest.split()
        elif key == "states":
            for q in rest.split():
                _add_state(states, q)
        elif key in ("initw", "finalw"):
            q, val, vcol = _assignment(rest, no, col)
            v = _parse_value(val, no, vcol)
            (initw if key == "initw" else finalw)[q] = v
            _add_state(states, q)
        elif key == "trans":
            parts = rest.split()
            if len(parts) != 4:
                raise ParseError("expected 'trans <state> <symbol> <weight> <state>'", no, col)
            p, a, w, q = parts
            try:
                wv = parse_ext(w)
            except ValueError:
                raise ParseError(f"bad weight {w!r}", no, col) from None
            _add_state(states, p)
            _add_state(states, q)
            trans.append((p, a, wv, q))
        else:
            raise ParseError(f"unknown directive {key!r}", no, 1)
    if alphabet is None:
        raise ParseError("missing 'alphabet' line", 1, 1)
    return WeightedAutomaton(tuple(alphabet), tuple(states), initw, finalw, trans, semiring)


def _parse_dfa(lines) -> LookaheadDfa:
    alphabet: list[str] | None = None
    states: list[str] = []
    initial = None
    delta = {}
    for no, body in lines:
        key, rest, col = _split_key(body)
        if key == "alphabet":
            alphabet = rest.split()
        elif key == "states":
            for q in rest.split():
                _add_state(states, q)
        elif key == "init":
            initial = rest.strip()
            _add_state(states, initial)
        elif key == "trans":
            parts = rest.split()
            if len(parts) != 3:
                raise ParseError("expected 'trans <state> <symbol> <state>'", no, col)
            r, a, s = parts
            _add_state(states, r)
            _add_state(states, s)
            delta[(r, a)] = s
        else:
            raise ParseError(f"unknown directive {key!r}", no, 1)
    if alphabet is None or initial is None:
        raise ParseError("look-ahead DFA needs 'alphabet' and 'init' lines", 1, 1)
    return LookaheadDfa(tuple(alphabet), tuple(states), initial, delta)


def _value_text(v) -> str:
    if isinstance(v, tuple):
        return f"({render(v[0])}, {render(v[1])})"
    return render(v)


def print_machine(m) -> str:
    if isinstance(m, Cra):
        return _print_cra(m)
    if isinstance(m, WeightedAutomaton):
        return _print_wa(m)
    if isinstance(m, LookaheadDfa):
        return _print_dfa(m)
    raise TypeError(f"cannot print {type(m).__name__}")


def _print_cra(m: Cra) -> str:
    brackets = m.grammar is GrammarKind.FutureDiscount
    out = ["cra", f"model {m.grammar.keyword}", "alphabet " + " ".join(m.alphabet)]
    if m.registers:
        out.append("registers " + " ".join(m.registers))
    out.append(f"init {m.initial}")
    out.append("states " + " ".join(m.states))
    ident = m.grammar.identity
    for x in m.registers:
        v = m.init_values[x]
        if v != ident:
            out.append(f"initval {x} = {_value_text(v)}")
    for q in m.states:
        if q in m.mu:
            out.append(f"output {q} = {format_expr(m.mu[q], brackets)}")
    for q in m.states:
        for a in m.alphabet:
            upd = m.rho[(q, a)]
            parts = [
                f"{x} := {format_expr(e, brackets)}"
                for x, e in upd.items()
                if not (isinstance(e, Reg) and e.name == x)
            ]
            line = f"trans {q} {a} {m.delta[(q, a)]}"
            if parts:
                line += " : " + " ; ".join(parts)
            out.append(line)
    return "\n".join(out) + "\n"


def _print_wa(wa: WeightedAutomaton) -> str:
    out = ["wa", f"semiring {wa.semiring.value}", "alphabet " + " ".join(wa.alphabet)]
    out.append("states " + " ".join(wa.states))
    for p, v in wa.initial_weights.items():
        out.append(f"initw {p} = {render(v)}")
    for p, v in wa.final_weights.items():
        out.append(f"finalw {p} = {render(v)}")
    for p, a, w, q in wa.transitions:
        out.append(f"trans {p} {a} {render(w)} {q}")
    return "\n".join(out) + "\n"


def _print_dfa(d: LookaheadDfa) -> str:
    out = ["dfa", "alphabet " + " ".join(d.alphabet), f"init {d.initial}"]
    out.append("states " + " ".join(d.states))
    for r in d.states:
        for a in d.alphabet:
            out.append(f"trans {r} {a} {d.delta[(r, a)]}")
    return "\n".join(out) + "\n"


def load_machine(path: str):
    with open(path, encoding="utf-8") as fh:
        return parse_machine(fh.read())


