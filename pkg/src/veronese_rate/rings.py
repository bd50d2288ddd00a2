"""Standard graded quotient rings R = S/I and their graded pieces.

A :class:`RingPresentation` owns the reduced Gröbner basis of I and derives
everything the linear-algebra resolver needs from it: the standard monomial
basis of each R_a and the matrices of multiplication by a variable
R_a -> R_{a+1}.
"""

from __future__ import annotations

from functools import cached_property

import numpy as np

from .extended import NEG_INF
from .field import DEFAULT_PRIME
from .groebner import Submodule, as_vectors, basis_polys, ideal_groebner, ideal_module, minimal_generators
from .monomial import DEFAULT_DEGREE_CAP, mono_divides, monomials_of_degree
from .polynomial import Polynomial, PolyRing, is_standard_graded_presentation
from .regbound import monomial_krull_dim, monomial_regularity


class RingPresentation:
    """R = F_p[names] / (ideal), standard graded.

    ``ideal`` holds Polynomials (any ring with the same variable names) and
    must consist of homogeneous forms of degree >= 2.  ``reg_hint`` lets a
    caller supply a sharper bound on reg_S(R) than the one read off in(I).
    """

    def __init__(self, names, ideal=(), p: int = DEFAULT_PRIME, degree_cap: int = DEFAULT_DEGREE_CAP,
                 reg_hint=None):
        self.poly_ring = PolyRing(names, p, degree_cap=degree_cap)
        self.names = self.poly_ring.names
        self.p = p
        self.nvars = len(self.names)
        self.ideal = tuple(f for f in (self._adopt(g) for g in ideal) if not f.is_zero())
        ok, diag = is_standard_graded_presentation(self.ideal)
        if not ok:
            raise ValueError(f"not a standard graded presentation: {diag}")
        self._reg_hint = reg_hint
        self._tables = {}
        self._mult = {}
        self._bases = {}

    def _adopt(self, f) -> Polynomial:
        if f.ring.names != self.names:
            raise ValueError(f"{f} is not over the variables {self.names}")
        return Polynomial(self.poly_ring, f.coeffs)

    # ------------------------------------------------------------ identity
    @cached_property
    def gb(self):
        if not self.ideal:
            return None
        gb = ideal_groebner(self.ideal, self.poly_ring, self.poly_ring.degree_cap)
        if gb.truncated:
            raise ValueError("Gröbner basis of the ideal did not finish below the degree cap")
        return gb

    @cached_property
    def gb_polys(self):
        return tuple(basis_polys(self.gb)) if self.gb is not None else ()

    @cached_property
    def leading_monomials(self):
        return tuple(e for _, e in self.gb.leading_terms()) if self.gb is not None else ()

    def _key(self):
        return (self.names, self.p, tuple(str(f) for f in self.gb_polys))

    def __eq__(self, other):
        return isinstance(other, RingPresentation) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        gens = ", ".join(str(f) for f in self.ideal) or "0"
        return f"RingPresentation(F_{self.p}[{', '.join(self.names)}]/({gens}))"

    @property
    def is_polynomial_ring(self) -> bool:
        return not self.ideal

    @cached_property
    def cover(self) -> RingPresentation:
        """The polynomial ring S with the same variables."""
        if self.is_polynomial_ring:
            return self
        return RingPresentation(self.names, (), self.p, self.poly_ring.degree_cap)

    @cached_property
    def minimal_ideal_generators(self):
        if not self.ideal:
            return ()
        module = ideal_module(self.poly_ring)
        mins = minimal_generators(Submodule(module, as_vectors(self.ideal, module)))
        return tuple(Polynomial(self.poly_ring, {e: c for (_, e), c in v.coeffs.items()})
                     for v in mins.generators)

    @cached_property
    def m_I(self):
        """Largest degree of a minimal generator of I (NEG_INF when I = 0)."""
        degs = [f.degree for f in self.minimal_ideal_generators]
        return max(degs) if degs else NEG_INF

    @cached_property
    def reg_bound(self) -> int:
        """Upper bound on reg_S(R), exact for monomial ideals."""
        r = monomial_regularity(self.leading_monomials, self.nvars, self.p)
        if self._reg_hint is not None:
            r = min(r, self._reg_hint)
        return r

    @cached_property
    def krull_dim(self) -> int:
        return monomial_krull_dim(self.leading_monomials, self.nvars)

    # ------------------------------------------------------- graded pieces
    def is_standard(self, e) -> bool:
        return not any(mono_divides(g, e) for g in self.leading_monomials)

    def basis(self, a: int):
        """Standard monomials of degree a, lex-descending."""
        if a < 0:
            return ()
        b = self._bases.get(a)
        if b is None:
            if a == 0 or not self.leading_monomials:
                b = tuple(monomials_of_degree(self.nvars, a))
            else:
                # standard monomials are closed under division
                prev = self.basis(a - 1)
                cand = set()
                for e in prev:
                    for k in range(self.nvars):
                        f = list(e)
                        f[k] += 1
                        cand.add(tuple(f))
                b = tuple(sorted((e for e in cand if self.is_standard(e)), reverse=True))
            self._bases[a] = b
        return b

    def basis_index(self, a: int) -> dict:
        return {e: i for i, e in enumerate(self.basis(a))}

    def hilbert(self, a: int) -> int:
        return len(self.basis(a))

    def _table(self, a: int):
        """Normal forms of every monomial of degree a as rows over basis(a)."""
        t = self._tables.get(a)
        if t is not None:
            return t
        p = self.p
        monos = monomials_of_degree(self.nvars, a)
        std = self.basis_index(a)
        # ascending order: every reduction step only refers to smaller monomials
        key = self.poly_ring.order.key
        monos.sort(key=key)
        index = {e: i for i, e in enumerate(monos)}
        rows = np.zeros((len(monos), len(std)), dtype=np.int64)
        elts = self.gb._elts if self.gb is not None else []
        for i, e in enumerate(monos):
            j = std.get(e)
            if j is not None:
                rows[i, j] = 1
                continue
            g = next(g for g in elts if mono_divides(g.lexp, e))
            q = tuple(x - y for x, y in zip(e, g.lexp))
            acc = np.zeros(len(std), dtype=np.int64)
            for (_, t), c in g.d.items():
                if t == g.lexp:
                    continue
                m = tuple(x + y for x, y in zip(t, q))
                acc = (acc + (p - c) * rows[index[m]]) % p
            rows[i] = acc
        t = (index, rows)
        self._tables[a] = t
        return t

    def normal_form(self, e) -> np.ndarray:
        """Coordinates of the monomial e in basis(deg e)."""
        index, rows = self._table(sum(e))
        return rows[index[tuple(e)]]

    def mult(self, k: int, a: int) -> np.ndarray:
        """Matrix of x_k: R_a -> R_{a+1} (rows indexed by basis(a))."""
        key = (k, a)
        m = self._mult.get(key)
        if m is None:
            src = self.basis(a)
            if not src:
                m = np.zeros((0, self.hilbert(a + 1)))
            elif self.is_polynomial_ring:
                tgt = self.basis_index(a + 1)
                m = np.zeros((len(src), len(tgt)))
                for i, e in enumerate(src):
                    f = list(e)
                    f[k] += 1
                    m[i, tgt[tuple(f)]] = 1.0
            else:
                index, rows = self._table(a + 1)
                idx = []
                for e in src:
                    f = list(e)
                    f[k] += 1
                    idx.append(index[tuple(f)])
                m = rows[idx].astype(np.float64)
            self._mult[key] = m
        return m

    def lift_table(self, a: int):
        """For b in basis(a), a >= 1: (variable k, index of b / x_k in basis(a-1)).

        k is the first variable dividing b, so b / x_k is again standard.
        """
        prev = self.basis_index(a - 1)
        ks, parents = [], []
        for e in self.basis(a):
            k = next(i for i, x in enumerate(e) if x)
            f = list(e)
            f[k] -= 1
            ks.append(k)
            parents.append(prev[tuple(f)])
        return np.asarray(ks, dtype=np.int64), np.asarray(parents, dtype=np.int64)

    def polynomial(self, coords, a: int) -> Polynomial:
        """The element of R_a with the given coordinates, as a polynomial in S."""
        d = {e: int(c) for e, c in zip(self.basis(a), coords) if int(c)}
        return Polynomial(self.poly_ring, d)

    def reduce(self, f: Polynomial) -> Polynomial:
        """Normal form of a homogeneous polynomial modulo I."""
        if f.is_zero():
            return f
        out = {}
        p = self.p
        for e, c in f.coeffs.items():
            a = sum(e)
            for b, v in zip(self.basis(a), self.normal_form(e)):
                if v:
                    out[b] = (out.get(b, 0) + c * int(v)) % p
        return Polynomial(self.poly_ring, out)
