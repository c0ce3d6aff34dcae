"""Equivalence of affine CRAs by backward propagation of affine equations.

At every reachable product state where both outputs are defined, the
functional mu1 - mu2 must vanish.  Pulling functionals back through the
updates collects, per product state, a basis of equations that must hold
on every valuation reachable there; the machines agree iff each basis
vector at the initial state vanishes on the initial valuation.  Every
basis vector is an actual pulled-back functional, so it carries the word
suffix that produced it, which is the counterexample when it fails.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from ..core.expr import affine_form
from ..core.grammar import GrammarKind
from ..core.linalg import RowBasis
from ..core.machines import Cra, word_text
from ..errors import AlphabetMismatch, NotLinearForm
from ..semantics import eval_cra, is_undefined


@dataclass(frozen=True)
class Equivalent:
    rounds: int = 0

    def describe(self) -> str:
        return "equivalent"


@dataclass(frozen=True)
class Counterexample:
    word: tuple
    left: object = None
    right: object = None
    rounds: int = 0

    def describe(self) -> str:
        return f"differ on {word_text(self.word) or 'ε'}: {self.left} vs {self.right}"


def _forms(m: Cra, tag: str):
    """Affine forms of every update and output, with registers tagged."""
    if m.grammar.is_pair or m.grammar is GrammarKind.MinPlusC:
        raise NotLinearForm(f"grammar {m.grammar.keyword} is not affine")
    try:
        rho = {}
        for key, upd in m.rho.items():
            rho[key] = {}
            for x, e in upd.items():
                coeffs, c = affine_form(e)
                rho[key][(tag, x)] = ({(tag, y): k for y, k in coeffs.items()}, c)
        mu = {}
        for q, e in m.mu.items():
            coeffs, c = affine_form(e)
            mu[q] = ({(tag, y): k for y, k in coeffs.items()}, c)
    except (NotLinearForm, TypeError) as exc:
        raise NotLinearForm(f"machine is not affine: {exc}") from exc
    return rho, mu


def _product(m1: Cra, m2: Cra):
    start = (m1.initial, m2.initial)
    parent = {start: None}
    order = [start]
    for p in order:
        for a in m1.alphabet:
            q = (m1.delta[(p[0], a)], m2.delta[(p[1], a)])
            if q not in parent:
                parent[q] = (p, a)
                order.append(q)
    return order, parent


def _word_to(parent, p) -> tuple:
    out = []
    while parent[p] is not None:
        p, a = parent[p]
        out.append(a)
    return tuple(reversed(out))


def karr_bound(m1: Cra, m2: Cra) -> int:
    return len(m1.states) * len(m2.states) * (len(m1.registers) + len(m2.registers) + 1)


def equiv_affine(m1: Cra, m2: Cra) -> Equivalent | Counterexample:
    if set(m1.alphabet) != set(m2.alphabet):
        raise AlphabetMismatch("machines have different alphabets")
    rho1, mu1 = _forms(m1, "1")
    rho2, mu2 = _forms(m2, "2")
    order, parent = _product(m1, m2)
    # output domains must coincide before comparing values
    for p in order:
        if (p[0] in mu1) != (p[1] in mu2):
            w = _word_to(parent, p)
            return _verified(m1, m2, w, 0)
    variables = [("1", x) for x in m1.registers] + [("2", x) for x in m2.registers]
    index = {v: i for i, v in enumerate(variables)}
    dim = len(variables) + 1

    def vec(coeffs, const) -> list[Fraction]:
        v = [Fraction(0)] * dim
        for x, k in coeffs.items():
            v[index[x]] += k
        v[-1] += const
        return v

    preds: dict = {p: [] for p in order}
    for p in order:
        for a in m1.alphabet:
            q = (m1.delta[(p[0], a)], m2.delta[(p[1], a)])
            update = {**rho1[(p[0], a)], **rho2[(p[1], a)]}
            preds[q].append((p, a, update))

    def pull(v: list[Fraction], update) -> list[Fraction]:
        out = [Fraction(0)] * dim
        out[-1] = v[-1]
        for x, i in index.items():
            k = v[i]
            if k == 0:
                continue
            coeffs, c = update[x]
            out[-1] += k * c
            for y, ky in coeffs.items():
                out[index[y]] += k * ky
        return out

    bases = {p: RowBasis(dim) for p in order}
    todo: deque = deque()
    for p in order:
        if p[0] in mu1:
            c1, k1 = mu1[p[0]]
            c2, k2 = mu2[p[1]]
            seed = [a - b for a, b in zip(vec(c1, k1), vec(c2, k2))]
            if bases[p].insert(seed):
                todo.append((p, seed, ()))
    init = {("1", x): v for x, v in m1.init_values.items()}
    init.update({("2", x): v for x, v in m2.init_values.items()})
    point = [Fraction(init[v]) for v in variables] + [Fraction(1)]
    rounds = 0
    while todo:
        p, v, suffix = todo.popleft()
        rounds += 1
        if p == order[0] and sum(a * b for a, b in zip(v, point)) != 0:
            return _verified(m1, m2, suffix, rounds)
        for src, a, update in preds[p]:
            u = pull(v, update)
            if bases[src].insert(u):
                todo.append((src, u, (a,) + suffix))
    return Equivalent(rounds)


def _verified(m1: Cra, m2: Cra, w: tuple, rounds: int) -> Counterexample:
    v1, v2 = eval_cra(m1, w), eval_cra(m2, w)
    same = (is_undefined(v1) and is_undefined(v2)) or (
        not is_undefined(v1) and not is_undefined(v2) and v1 == v2
    )
    if same:
        raise RuntimeError(f"internal error: counterexample {w!r} does not separate the machines")
    return Counterexample(w, v1, v2, rounds)
