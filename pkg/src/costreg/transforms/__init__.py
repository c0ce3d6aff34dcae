from .arith import diff_cra, sum_cra
from .inc import copyless_plus_to_inc, gen_modk_cra, inc_to_single_valued_wa
from .pairs import (
    ElementaryUpdate,
    Incr,
    Nop,
    PairAdd,
    PairSubst,
    Reset,
    Swap,
    elementary_decompose,
    pair_cra_to_linear_cra,
)
from .semiring import cra_to_wa, wa_to_cra

__all__ = [
    "diff_cra", "sum_cra",
    "copyless_plus_to_inc", "gen_modk_cra", "inc_to_single_valued_wa",
    "ElementaryUpdate", "Incr", "Nop", "PairAdd", "PairSubst", "Reset", "Swap",
    "elementary_decompose", "pair_cra_to_linear_cra",
    "cra_to_wa", "wa_to_cra",
]
