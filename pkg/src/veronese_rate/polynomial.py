"""Sparse polynomials over F_p and vectors in shifted free modules.

A :class:`Polynomial` wraps a dict ``{exponent tuple: coefficient}``.  A
:class:`FreeVector` wraps ``{(position, exponent tuple): coefficient}`` and
lives in a :class:`GradedFreeModule`, i.e. a direct sum of copies of
``S(-shift)``.  The Gröbner engine works on the raw dicts; these classes are
the public, immutable face of the same data.
"""

from __future__ import annotations

from .field import DEFAULT_PRIME, FieldElement, check_prime
from .monomial import DEFAULT_DEGREE_CAP, MonomialOrder, mono_mul


class PolyRing:
    """The polynomial ring F_p[x_1..x_n] with its monomial order."""

    def __init__(self, names, p: int = DEFAULT_PRIME, order: MonomialOrder | None = None,
                 degree_cap: int = DEFAULT_DEGREE_CAP):
        self.names = tuple(names)
        if len(set(self.names)) != len(self.names):
            raise ValueError("variable names must be distinct")
        self.p = check_prime(p)
        self.nvars = len(self.names)
        self.order = order if order is not None else MonomialOrder(self.nvars)
        if self.order.nvars != self.nvars:
            raise ValueError("order does not match the number of variables")
        self.degree_cap = degree_cap

    def _key(self):
        return (self.names, self.p, self.order)

    def __eq__(self, other):
        return isinstance(other, PolyRing) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"PolyRing(F_{self.p}[{', '.join(self.names)}])"

    def zero(self) -> Polynomial:
        return Polynomial(self, {})

    def one(self) -> Polynomial:
        return Polynomial(self, {(0,) * self.nvars: 1})

    def const(self, c: int) -> Polynomial:
        return Polynomial(self, {(0,) * self.nvars: c})

    def var(self, i) -> Polynomial:
        if isinstance(i, str):
            i = self.names.index(i)
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {tuple(e): 1})

    def gens(self):
        return [self.var(i) for i in range(self.nvars)]

    def monomial(self, exps, coeff: int = 1) -> Polynomial:
        return Polynomial(self, {tuple(exps): coeff})

    def degree_of(self, exps) -> int:
        return self.order.degree(exps)

    def check_degree(self, exps):
        if sum(exps) > self.degree_cap:
            raise OverflowError(f"monomial degree {sum(exps)} exceeds the cap {self.degree_cap}")


def _clean(d: dict, p: int) -> dict:
    out = {}
    for k, c in d.items():
        c %= p
        if c:
            out[k] = c
    return out


def format_monomial(exps, names) -> str:
    parts = []
    for name, e in zip(names, exps):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_terms(items, names, p: int) -> str:
    """Render (coefficient, exponents) pairs, printing c > p/2 as -(p - c)."""
    if not items:
        return "0"
    out = []
    for i, (c, e) in enumerate(items):
        neg = c > p // 2
        mag = p - c if neg else c
        mono = format_monomial(e, names)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if i == 0:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)


class Polynomial:
    """Immutable sparse polynomial; terms are kept in descending order."""

    __slots__ = ("ring", "_d", "_terms")

    def __init__(self, ring: PolyRing, d: dict):
        self.ring = ring
        self._d = _clean(d, ring.p)
        self._terms = None

    @property
    def coeffs(self) -> dict:
        return dict(self._d)

    @property
    def terms(self):
        """Tuple of ``(coefficient, exponents)``, strictly descending."""
        if self._terms is None:
            key = self.ring.order.key
            self._terms = tuple((self._d[e], e) for e in sorted(self._d, key=key, reverse=True))
        return self._terms

    def is_zero(self) -> bool:
        return not self._d

    def __bool__(self):
        return bool(self._d)

    def lt(self):
        if not self._d:
            raise ValueError("zero polynomial has no leading term")
        return self.terms[0]

    def lm(self):
        return self.lt()[1]

    def lc(self) -> int:
        return self.lt()[0]

    def degrees(self) -> set:
        return {self.ring.degree_of(e) for e in self._d}

    @property
    def degree(self) -> int:
        if not self._d:
            return -1
        return max(self.degrees())

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def _check(self, other):
        if other.ring != self.ring:
            raise ValueError("polynomials over different rings")

    def __add__(self, other):
        if isinstance(other, int):
            other = self.ring.const(other)
        self._check(other)
        d = dict(self._d)
        for e, c in other._d.items():
            d[e] = d.get(e, 0) + c
        return Polynomial(self.ring, d)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ring, {e: -c for e, c in self._d.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = self.ring.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> Polynomial:
        c = int(c) % self.ring.p
        return Polynomial(self.ring, {e: v * c for e, v in self._d.items()})

    def __mul__(self, other):
        if isinstance(other, (int, FieldElement)):
            return self.scale(other)
        self._check(other)
        p = self.ring.p
        d = {}
        for e1, c1 in self._d.items():
            for e2, c2 in other._d.items():
                e = mono_mul(e1, e2)
                d[e] = (d.get(e, 0) + c1 * c2) % p
        for e in d:
            self.ring.check_degree(e)
        return Polynomial(self.ring, d)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = self.ring.one()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ring.const(other)
        return isinstance(other, Polynomial) and other.ring == self.ring and other._d == self._d

    def __hash__(self):
        return hash((self.ring, frozenset(self._d.items())))

    def __str__(self):
        return format_terms(self.terms, self.ring.names, self.ring.p)

    def __repr__(self):
        return f"Polynomial({self})"


def poly_arith(op: str, f: Polynomial, g) -> Polynomial:
    """Dispatch ``add``, ``multiply`` or ``scale``."""
    if op == "add":
        return f + g
    if op == "multiply":
        return f * g
    if op == "scale":
        return f.scale(g)
    raise ValueError(f"unknown operation {op!r}")


def is_standard_graded_presentation(gens):
    """Check that every ideal generator is homogeneous of degree >= 2.

    Returns ``(ok, diagnostic)``; the diagnostic names the first offender.
    """
    for i, f in enumerate(gens):
        if f.is_zero():
            continue
        if not f.is_homogeneous():
            return False, f"generator {i} ({f}) is not homogeneous"
        if f.degree < 2:
            return False, f"generator {i} ({f}) has degree {f.degree} < 2"
    return True, None


class GradedFreeModule:
    """Direct sum of S(-shift) over a polynomial ring."""

    def __init__(self, ring: PolyRing, shifts):
        self.ring = ring
        self.shifts = tuple(int(s) for s in shifts)

    @property
    def rank(self) -> int:
        return len(self.shifts)

    def __eq__(self, other):
        return (isinstance(other, GradedFreeModule) and other.ring == self.ring
                and other.shifts == self.shifts)

    def __hash__(self):
        return hash((self.ring, self.shifts))

    def __repr__(self):
        return f"GradedFreeModule(rank={self.rank}, shifts={self.shifts})"

    def order_key(self, pos, exps):
        """Term-over-position key: shifted degree, degrevlex, then lower index first."""
        o = self.ring.order
        return (o.degree(exps) + self.shifts[pos], o.key(exps), -pos)

    def basis_vector(self, pos) -> FreeVector:
        return FreeVector(self, {(pos, (0,) * self.ring.nvars): 1})

    def vector(self, polys) -> FreeVector:
        """Build a vector from one polynomial per position."""
        if len(polys) != self.rank:
            raise ValueError("wrong number of components")
        d = {}
        for pos, f in enumerate(polys):
            if isinstance(f, int):
                f = self.ring.const(f)
            for e, c in f.coeffs.items():
                d[(pos, e)] = c
        return FreeVector(self, d)

    def zero(self) -> FreeVector:
        return FreeVector(self, {})


class FreeVector:
    """Immutable element of a GradedFreeModule."""

    __slots__ = ("module", "_d")

    def __init__(self, module: GradedFreeModule, d: dict):
        self.module = module
        self._d = _clean(d, module.ring.p)

    @property
    def coeffs(self) -> dict:
        return dict(self._d)

    def is_zero(self) -> bool:
        return not self._d

    def __bool__(self):
        return bool(self._d)

    def internal_degrees(self) -> set:
        o, sh = self.module.ring.order, self.module.shifts
        return {o.degree(e) + sh[pos] for pos, e in self._d}

    @property
    def degree(self) -> int:
        ds = self.internal_degrees()
        if len(ds) > 1:
            raise ValueError("vector is not homogeneous")
        return ds.pop() if ds else -1

    def is_homogeneous(self) -> bool:
        return len(self.internal_degrees()) <= 1

    def component(self, pos) -> Polynomial:
        return Polynomial(self.module.ring, {e: c for (q, e), c in self._d.items() if q == pos})

    def components(self):
        return [self.component(i) for i in range(self.module.rank)]

    def lt(self):
        if not self._d:
            raise ValueError("zero vector has no leading term")
        key = self.module.order_key
        pos, e = max(self._d, key=lambda t: key(*t))
        return self._d[(pos, e)], pos, e

    def __add__(self, other):
        if other.module != self.module:
            raise ValueError("vectors in different modules")
        d = dict(self._d)
        for k, c in other._d.items():
            d[k] = d.get(k, 0) + c
        return FreeVector(self.module, d)

    def __neg__(self):
        return FreeVector(self.module, {k: -c for k, c in self._d.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, f):
        if isinstance(f, int):
            return FreeVector(self.module, {k: c * f for k, c in self._d.items()})
        d = {}
        p = self.module.ring.p
        for e1, c1 in f.coeffs.items():
            for (pos, e2), c2 in self._d.items():
                k = (pos, mono_mul(e1, e2))
                d[k] = (d.get(k, 0) + c1 * c2) % p
        return FreeVector(self.module, d)

    def __eq__(self, other):
        return isinstance(other, FreeVector) and other.module == self.module and other._d == self._d

    def __hash__(self):
        return hash((self.module, frozenset(self._d.items())))

    def __str__(self):
        return "(" + ", ".join(str(c) for c in self.components()) + ")"

    def __repr__(self):
        return f"FreeVector{self}"
