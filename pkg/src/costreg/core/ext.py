"""Exact rationals extended with +infinity.

Finite values are plain :class:`fractions.Fraction`; +infinity is the
float ``math.inf``.  Every helper here keeps results exact: a finite
result is always a ``Fraction``.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Union

INF = math.inf

ExtRational = Union[Fraction, float]

_NUM_RE = re.compile(r"^[+-]?(\d+(/\d+)?|\d*\.\d+|\d+\.\d*)$")


def ext(value) -> ExtRational:
    """Coerce ``value`` (int, Fraction, str, inf) to an ExtRational."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not cost values")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        if value == INF:
            return INF
        if math.isnan(value) or math.isinf(value):
            raise ValueError(f"unsupported cost value {value!r}")
        return Fraction(value)
    if isinstance(value, str):
        return parse_ext(value)
    raise TypeError(f"cannot interpret {value!r} as a cost value")


def parse_ext(text: str) -> ExtRational:
    s = text.strip()
    if s in ("inf", "+inf", "∞"):
        return INF
    if not _NUM_RE.match(s):
        raise ValueError(f"not a rational literal: {text!r}")
    return Fraction(s)


def is_inf(x: ExtRational) -> bool:
    return x == INF


def add(a: ExtRational, b: ExtRational) -> ExtRational:
    if a == INF or b == INF:
        return INF
    return a + b


def mul(a: ExtRational, b: ExtRational) -> ExtRational:
    # 0 * inf never arises in the supported cost models
    if a == INF or b == INF:
        if a == 0 or b == 0:
            raise ArithmeticError("0 * inf is undefined")
        if a < 0 or b < 0:
            raise ArithmeticError("negative * inf is not representable")
        return INF
    return a * b


def neg(a: ExtRational) -> Fraction:
    if a == INF:
        raise ArithmeticError("-inf is not representable")
    return -a


def render(x: ExtRational) -> str:
    """Canonical text form: ``p/q``, ``p`` when q == 1, ``inf``."""
    if x == INF:
        return "inf"
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"
