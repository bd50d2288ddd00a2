"""The eight-ring test corpus and helpers to build rings from strings."""

from __future__ import annotations

from .field import DEFAULT_PRIME
from .polynomial import PolyRing
from .rings import RingPresentation
from .spec_format import parse_polynomial

# (name, variables, ideal generators); every ring is singular, so K has an
# infinite resolution over each of them
CORPUS = (
    ("hyp3", ("x",), ("x^3",)),
    ("hyp4", ("x",), ("x^4",)),
    ("xy-x2", ("x", "y"), ("x^2",)),
    ("xy-x3", ("x", "y"), ("x^3",)),
    ("xy-x2-xy", ("x", "y"), ("x^2", "x*y")),
    ("xy-x2-y3", ("x", "y"), ("x^2", "y^3")),
    ("quadric-cone", ("x", "y", "z"), ("x^2 + y*z",)),
    ("xy-xy", ("x", "y"), ("x*y",)),
)


def make_ring(names, ideal=(), p: int = DEFAULT_PRIME) -> RingPresentation:
    """RingPresentation from variable names and generator strings."""
    poly = PolyRing(names, p)
    return RingPresentation(names, [parse_polynomial(f, poly) for f in ideal], p)


def corpus_rings(p: int = DEFAULT_PRIME):
    return [(name, make_ring(names, ideal, p)) for name, names, ideal in CORPUS]
