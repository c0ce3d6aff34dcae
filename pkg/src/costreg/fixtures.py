"""Hand-transcribed example machines used by tests, docs and the CLI."""

from __future__ import annotations

from .cli.fmt import parse_machine
from .core.machines import Cra, LookaheadDfa

M1_TEXT = """\
cra
model plus-c
alphabet a b e
registers x y
init q0
output q0 = x
trans q0 a q0 : x := x + 1 ; y := y + 1
trans q0 b q0 : y := y + 1
trans q0 e q0 : x := y + 1 ; y := y + 1
"""

M2_TEXT = """\
cra
model min-plus
alphabet a b e
registers x y z
init q0
initval x = inf
output q0 = x
trans q0 a q0 : y := y + 1
trans q0 b q0 : z := z + 1
trans q0 e q0 : x := min(x, y, z) ; y := 0 ; z := 0
"""

M3_TEXT = """\
cra
model min-plus
alphabet a b e
registers x y
init q0
output q0 = x
output q1 = y
trans q0 a q0 : x := x + 1
trans q0 b q0
trans q0 e q1 : y := x
trans q1 a q1 : x := x + 1
trans q1 b q1 : y := y + 1
trans q1 e q1 : y := min(x, y)
"""

M4_TEXT = """\
cra
model inc-scale
alphabet a b e
registers x
init q0
output q0 = x
output q1 = x
trans q0 a q0 : x := x + 10
trans q0 e q0
trans q0 b q1
trans q1 e q1 : x := 19/20 * x
trans q1 a q1
trans q1 b q1
"""

# CRA over the look-ahead labels, and the labeling DFA, as drawn in the figure
M1_RLA_TEXT = """\
cra
model plus-c
alphabet r0 r1 r2 r3
registers x
init q0
output q0 = x
trans q0 r0 q0
trans q0 r1 q0 : x := x + 1
trans q0 r2 q0
trans q0 r3 q0 : x := x + 1
"""

M1_LABELS_TEXT = """\
dfa
alphabet a b e
init r0
states r0 r1 r2 r3
trans r0 a r1
trans r0 e r1
trans r0 b r2
trans r1 a r1
trans r1 e r1
trans r1 b r3
trans r2 b r2
trans r2 a r1
trans r2 e r1
trans r3 b r3
trans r3 a r1
trans r3 e r1
"""

# Corrected look-ahead: labels remember whether an e occurs at or after the position.
# r1: a, no e later; r2: b, no e later; r3: b, e later; r4: a or e, e at/after it.
M1_RLA_FIXED_TEXT = """\
cra
model plus-c
alphabet r0 r1 r2 r3 r4
registers x
init q0
output q0 = x
trans q0 r0 q0
trans q0 r1 q0 : x := x + 1
trans q0 r2 q0
trans q0 r3 q0 : x := x + 1
trans q0 r4 q0 : x := x + 1
"""

M1_LABELS_FIXED_TEXT = """\
dfa
alphabet a b e
init r0
states r0 r1 r2 r3 r4
trans r0 a r1
trans r0 b r2
trans r0 e r4
trans r1 a r1
trans r1 b r2
trans r1 e r4
trans r2 a r1
trans r2 b r2
trans r2 e r4
trans r3 a r4
trans r3 b r3
trans r3 e r4
trans r4 a r4
trans r4 b r3
trans r4 e r4
"""

# Copyless CRA(+) from the subset-register translation figure, left side.
SUBSET_PLUS_TEXT = """\
cra
model plus
alphabet a b e
registers x y z
init q0
output q0 = x + y + z
trans q0 a q0 : y := y + 1
trans q0 b q0 : z := z + 1
trans q0 e q0 : x := x + y + z ; y := 0 ; z := 0
"""

# f1 over pairs; the figure's mu(q0) = x always yields c = inf, so the output
# plugs 0 into the parameter instead (see decisions ledger).
M1_PAIRS_TEXT = """\
cra
model pairs
alphabet a b e
registers x y
init q0
output q0 = x[0, 0]
trans q0 a q0 : x := incr(x, 1)
trans q0 b q0 : y := incr(y, 1)
trans q0 e q0 : x := incr(subst(x, y), 1) ; y := (inf, 0)
"""

# a's between the closest pair of b's; resets use (0, inf) so that y.c counts a's.
CLOSEST_BS_TEXT = """\
cra
model pairs
alphabet a b
registers x y
init q0
initval y = (0, inf)
output q0 = (inf, inf)
output q1 = (inf, inf)
output q2 = x
trans q0 a q0
trans q0 b q1
trans q1 a q1 : y := incr(y, 1)
trans q1 b q2 : x := y ; y := (0, inf)
trans q2 a q2 : y := incr(y, 1)
trans q2 b q2 : x := pairsum(x, y) ; y := (0, inf)
"""

# Same function as drawn, with the (inf, 0) resets of the figure.
CLOSEST_BS_LITERAL_TEXT = CLOSEST_BS_TEXT.replace("(0, inf)", "(inf, 0)")


def _closest_bs_plus_times(incr: str, split: bool) -> str:
    lines = [
        "cra",
        "model pairs-plus-times",
        "alphabet a b",
        "registers x y",
        "init q0",
        "initval y = (1, 0)",
        "output q0 = (0, 0)",
        "output q1 = (0, 0)",
        "output q2 = x",
        "trans q0 a q0",
        "trans q0 b q1",
        f"trans q1 a q1 : y := incr(y, {incr})",
        "trans q1 b q2 : x := y ; y := (1, 0)",
    ]
    if split:
        lines += [
            "output q3 = x",
            f"trans q2 a q3 : y := incr(y, {incr})",
            "trans q2 b q2 : x := pairsum(x, y) ; y := (1, 0)",
            f"trans q3 a q2 : y := incr(y, {incr})",
            "trans q3 b q3 : x := pairsum(x, y) ; y := (1, 0)",
        ]
    else:
        lines += [
            f"trans q2 a q2 : y := incr(y, {incr})",
            "trans q2 b q2 : x := pairsum(x, y) ; y := (1, 0)",
        ]
    return "\n".join(lines) + "\n"


def m1() -> Cra:
    return parse_machine(M1_TEXT)


def m2() -> Cra:
    return parse_machine(M2_TEXT)


def m3() -> Cra:
    return parse_machine(M3_TEXT)


def m4() -> Cra:
    return parse_machine(M4_TEXT)


def m1_rla() -> tuple[Cra, LookaheadDfa]:
    return parse_machine(M1_RLA_TEXT), parse_machine(M1_LABELS_TEXT)


def m1_rla_fixed() -> tuple[Cra, LookaheadDfa]:
    return parse_machine(M1_RLA_FIXED_TEXT), parse_machine(M1_LABELS_FIXED_TEXT)


def subset_plus() -> Cra:
    return parse_machine(SUBSET_PLUS_TEXT)


def m1_pairs() -> Cra:
    return parse_machine(M1_PAIRS_TEXT)


def closest_bs() -> Cra:
    return parse_machine(CLOSEST_BS_TEXT)


def closest_bs_literal() -> Cra:
    return parse_machine(CLOSEST_BS_LITERAL_TEXT)


def closest_bs_plus_times(incr: int = 2, split: bool = False) -> Cra:
    """Closest-pair machine over (Q, +, *): output sums incr**(a-count) per b-gap."""
    return parse_machine(_closest_bs_plus_times(str(incr), split))


def counter(symbols: str, alphabet: str = "ab", step: int = 1) -> Cra:
    """Single-register PlusC machine adding ``step`` for each symbol in ``symbols``."""
    lines = ["cra", "model plus-c", "alphabet " + " ".join(alphabet), "registers x", "init q0", "output q0 = x"]
    for a in alphabet:
        if a in symbols:
            lines.append(f"trans q0 {a} q0 : x := x + {step}")
        else:
            lines.append(f"trans q0 {a} q0")
    return parse_machine("\n".join(lines) + "\n")


def constant(value: int, alphabet: str = "ab") -> Cra:
    lines = ["cra", "model plus-c", "alphabet " + " ".join(alphabet), "init q0", f"output q0 = {value}"]
    lines += [f"trans q0 {a} q0" for a in alphabet]
    return parse_machine("\n".join(lines) + "\n")
