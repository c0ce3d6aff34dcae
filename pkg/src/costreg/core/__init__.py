from .checks import CopylessReport, check_copyless, check_linear
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
    affine_form,
    format_expr,
    minplus_form,
    registers,
    substitute,
)
from .ext import INF, ExtRational, ext, parse_ext, render
from .grammar import GrammarCheck, GrammarKind, validate_grammar
from .machines import Cra, LookaheadDfa, Semiring, WeightedAutomaton, as_word, word_text

__all__ = [
    "CopylessReport", "check_copyless", "check_linear",
    "Const", "Expr", "Min", "PairConst", "PairIncr", "PairSum", "Plus", "Reg", "Scale", "Subst",
    "affine_form", "format_expr", "minplus_form", "registers", "substitute",
    "INF", "ExtRational", "ext", "parse_ext", "render",
    "GrammarCheck", "GrammarKind", "validate_grammar",
    "Cra", "LookaheadDfa", "Semiring", "WeightedAutomaton", "as_word", "word_text",
]
