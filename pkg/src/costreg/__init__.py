"""Cost register automata, weighted automata and their decision procedures."""

from .core import *  # noqa: F401,F403
from .core import __all__ as _core_all
from .semantics import UNDEFINED, count_accepting_paths, eval_cra, eval_cra_rla, eval_wa

__all__ = list(_core_all) + ["UNDEFINED", "count_accepting_paths", "eval_cra", "eval_cra_rla", "eval_wa"]
