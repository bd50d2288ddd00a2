"""Exponent-vector monomials and graded monomial orders.

Internally a monomial is a tuple of non-negative ints.  Orders are exposed as
sort keys (a larger key is a larger monomial) so that the Gröbner code can
call ``max(terms, key=...)`` without wrapping anything.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import total_ordering

DEFAULT_DEGREE_CAP = 40


def mono_degree(e) -> int:
    return sum(e)


def mono_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def mono_div(a, b):
    """a / b, assuming b divides a."""
    return tuple(x - y for x, y in zip(a, b))


def mono_divides(a, b) -> bool:
    """True iff a | b."""
    return all(x <= y for x, y in zip(a, b))


def mono_lcm(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


def mono_coprime(a, b) -> bool:
    return all(x == 0 or y == 0 for x, y in zip(a, b))


def monomials_of_degree(n: int, d: int):
    """All exponent vectors of length n and total degree d, lex-descending."""
    if d < 0:
        return []
    if n == 0:
        return [()] if d == 0 else []
    if n == 1:
        return [(d,)]
    out = []
    for first in range(d, -1, -1):
        for rest in monomials_of_degree(n - 1, d - first):
            out.append((first,) + rest)
    return out


def _revlex_part(e):
    return tuple(-x for x in reversed(e))


@dataclass(frozen=True)
class MonomialOrder:
    """Graded reverse lexicographic order, optionally weighted and blocked.

    ``weights`` gives each variable's degree (all 1 for a standard graded
    ring).  With ``blocks`` set, e.g. ``(2, 3)``, monomials are compared by
    weighted degree, then by degrevlex on the first block, then on the next;
    the first block is then eliminated.
    """

    nvars: int
    weights: tuple = None
    blocks: tuple = None
    name: str = field(default="degrevlex", compare=False)

    def __post_init__(self):
        if self.weights is None:
            object.__setattr__(self, "weights", (1,) * self.nvars)
        if len(self.weights) != self.nvars or any(w <= 0 for w in self.weights):
            raise ValueError("weights must be positive, one per variable")
        if self.blocks is not None and sum(self.blocks) != self.nvars:
            raise ValueError("blocks must partition the variables")

    def degree(self, e) -> int:
        return sum(w * x for w, x in zip(self.weights, e))

    def key(self, e):
        if self.blocks is None:
            return (self.degree(e), _revlex_part(e))
        parts = [self.degree(e)]
        start = 0
        for size in self.blocks:
            chunk = e[start:start + size]
            parts.append((sum(chunk), _revlex_part(chunk)))
            start += size
        return tuple(parts)


def degrevlex(nvars: int) -> MonomialOrder:
    return MonomialOrder(nvars)


def elimination_order(n_elim: int, n_keep: int, weights=None) -> MonomialOrder:
    return MonomialOrder(n_elim + n_keep, weights, (n_elim, n_keep), name="elimination")


def monomial_compare(a, b, order: MonomialOrder | None = None) -> int:
    """Return -1, 0 or 1 as a <, =, > b."""
    ea = a.exponents if isinstance(a, Monomial) else tuple(a)
    eb = b.exponents if isinstance(b, Monomial) else tuple(b)
    if len(ea) != len(eb):
        raise ValueError(f"exponent lengths differ: {len(ea)} vs {len(eb)}")
    if order is None:
        order = degrevlex(len(ea))
    elif order.nvars != len(ea):
        raise ValueError("order and monomials have different numbers of variables")
    ka, kb = order.key(ea), order.key(eb)
    return (ka > kb) - (ka < kb)


@total_ordering
@dataclass(frozen=True)
class Monomial:
    """A monomial in degrevlex order, with its degree cached."""

    exponents: tuple
    degree: int = field(init=False, compare=False)

    def __post_init__(self):
        exps = tuple(int(x) for x in self.exponents)
        if any(x < 0 for x in exps):
            raise ValueError("exponents must be non-negative")
        object.__setattr__(self, "exponents", exps)
        object.__setattr__(self, "degree", sum(exps))

    def __lt__(self, other):
        return monomial_compare(self, other) < 0

    def __mul__(self, other):
        if len(self.exponents) != len(other.exponents):
            raise ValueError("exponent lengths differ")
        return Monomial(mono_mul(self.exponents, other.exponents))

    def divides(self, other) -> bool:
        if len(self.exponents) != len(other.exponents):
            raise ValueError("exponent lengths differ")
        return mono_divides(self.exponents, other.exponents)

    def lcm(self, other) -> Monomial:
        return Monomial(mono_lcm(self.exponents, other.exponents))

    def __truediv__(self, other) -> Monomial:
        if not other.divides(self):
            raise ValueError("monomial does not divide")
        return Monomial(mono_div(self.exponents, other.exponents))
