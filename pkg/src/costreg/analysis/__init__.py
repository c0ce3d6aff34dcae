from .contain import Holds, Inconclusive, No, Violation, Yes, contains, in_range
from .equiv import Counterexample, Equivalent, equiv_affine, karr_bound

__all__ = [
    "Holds", "Inconclusive", "No", "Violation", "Yes", "contains", "in_range",
    "Counterexample", "Equivalent", "equiv_affine", "karr_bound",
]
