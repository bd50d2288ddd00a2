"""Exact rationals extended by a minus-infinity sentinel."""

from __future__ import annotations

import math
from fractions import Fraction
from functools import total_ordering


@total_ordering
class MinusInfinity:
    """Below every rational; absorbs addition; refuses to be rounded."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "-inf"

    __str__ = __repr__

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("minus-infinity")

    def __lt__(self, other):
        return other is not self

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __sub__(self, other):
        if other is self:
            raise ArithmeticError("-inf - -inf is undefined")
        return self

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)) and other > 0:
            return self
        raise ArithmeticError("-inf may only be divided by a positive number")

    def __ceil__(self):
        raise ArithmeticError("ceiling of minus infinity")

    def __floor__(self):
        raise ArithmeticError("floor of minus infinity")

    def __int__(self):
        raise ArithmeticError("minus infinity is not an integer")


NEG_INF = MinusInfinity()


def is_neg_inf(x) -> bool:
    return x is NEG_INF


def xmax(values):
    """max() over an iterable that may hold NEG_INF or be empty."""
    best = NEG_INF
    for v in values:
        if best is NEG_INF or (v is not NEG_INF and v > best):
            best = v
    return best


def ceil_div(a, c: int) -> int:
    """Exact ceiling of a / c for a rational a and a positive integer c."""
    if a is NEG_INF:
        raise ArithmeticError("ceiling of minus infinity")
    if c <= 0:
        raise ValueError("divisor must be positive")
    return math.ceil(Fraction(a) / c)


def to_json(x):
    """Deterministic JSON encoding: ints stay ints, fractions become 'a/b'."""
    if x is NEG_INF:
        return "-inf"
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, float) and math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return x


def from_json(x):
    if x == "-inf":
        return NEG_INF
    if isinstance(x, str) and "/" in x:
        return Fraction(x)
    return x
