"""Graded modules over a RingPresentation.

Two faces of the same object:

* :class:`ModulePresentation` is the symbolic description, a cokernel of
  homogeneous relations in a shifted free module, possibly twisted.
* :class:`GradedModule` is what the resolver consumes: the dimension of each
  graded piece M_j, the matrices of multiplication by each variable, and
  proven bounds on generator degrees, Castelnuovo-Mumford regularity over
  the polynomial cover, and Krull dimension.
"""

from __future__ import annotations

from functools import cached_property

import numpy as np

from .extended import NEG_INF
from .groebner import (Submodule, augment, buchberger, ideal_module, minimal_generators,
                       normal_form, standard_terms, syzygy_module)
from .linalg import matmul_mod
from .polynomial import FreeVector, GradedFreeModule, Polynomial
from .regbound import module_regularity, veronese_regularity
from .rings import RingPresentation


class GradedModule:
    """Finitely generated graded module seen degree by degree.

    Subclasses provide ``dim(j)``, ``action(k, j)`` (matrix of x_k from M_j
    to M_{j+1}, rows indexed by a basis of M_j), ``low`` (lowest nonzero
    degree, None for the zero module), ``gen_bound`` (t_0 <= gen_bound),
    ``reg_bound`` (reg over the polynomial cover) and ``dim_bound``.
    """

    ring: RingPresentation

    def dim(self, j: int) -> int:
        raise NotImplementedError

    def action(self, k: int, j: int) -> np.ndarray:
        raise NotImplementedError

    @property
    def is_zero(self) -> bool:
        return self.low is None

    def hilbert(self, upto: int):
        return [self.dim(j) for j in range(0, upto + 1)]

    def veronese_reg_bound(self, c: int, d: int):
        """Bound on reg of M^(c,d) over the cover of R^(c)."""
        return veronese_regularity(self.reg_bound, self.dim_bound, c, d)

    def over_cover(self) -> GradedModule:
        """The same module regarded over the polynomial cover of its ring."""
        return CoverView(self)


class CoverView(GradedModule):
    def __init__(self, base: GradedModule):
        self.base = base
        self.ring = base.ring.cover
        self.low = base.low
        self.gen_bound = base.gen_bound
        self.reg_bound = base.reg_bound
        self.dim_bound = base.dim_bound

    def dim(self, j):
        return self.base.dim(j)

    def action(self, k, j):
        return self.base.action(k, j)


class PresentedModule(GradedModule):
    """Oracle computed from the Gröbner basis of relations + I * free module."""

    def __init__(self, pres: ModulePresentation):
        self.pres = pres
        self.ring = pres.ring
        S = self.ring.poly_ring
        self.free = GradedFreeModule(S, pres.degrees)
        rels = [FreeVector(self.free, v.coeffs) for v in pres.relations]
        sub = augment(Submodule(self.free, rels), self.ring.gb_polys)
        cap = max([S.degree_cap] + [v.degree for v in sub.generators])
        self.gb = buchberger(sub, cap)
        if self.gb.truncated:
            raise ValueError("module Gröbner basis did not finish below the degree cap")
        lts = self.gb.leading_terms()
        comps = []
        live = []
        for pos, s in enumerate(self.free.shifts):
            gens = [e for q, e in lts if q == pos]
            comps.append((s, gens))
            if not any(sum(e) == 0 for e in gens):
                live.append(s)
        self.reg_bound, self.dim_bound = module_regularity(comps, S.nvars, S.p)
        self.low = min(live) if live else None
        self.gen_bound = max(live) if live else NEG_INF
        self._bases = {}
        self._act = {}

    def basis(self, j):
        b = self._bases.get(j)
        if b is None:
            b = standard_terms(self.gb, j) if self.low is not None else []
            self._bases[j] = b
        return b

    def dim(self, j):
        return len(self.basis(j))

    def coords(self, v: FreeVector, j: int) -> np.ndarray:
        """Coordinates of the class of v (internal degree j) in basis(j)."""
        r = normal_form(FreeVector(self.free, v.coeffs), self.gb)
        idx = {t: i for i, t in enumerate(self.basis(j))}
        out = np.zeros(len(idx))
        for t, c in r.coeffs.items():
            out[idx[t]] = c
        return out

    def element(self, coords, j: int) -> FreeVector:
        d = {t: int(c) for t, c in zip(self.basis(j), coords) if int(c)}
        return FreeVector(self.free, d)

    def action(self, k, j):
        m = self._act.get((k, j))
        if m is None:
            src = self.basis(j)
            tgt = {t: i for i, t in enumerate(self.basis(j + 1))}
            m = np.zeros((len(src), len(tgt)))
            for i, (pos, e) in enumerate(src):
                f = list(e)
                f[k] += 1
                r = normal_form(FreeVector(self.free, {(pos, tuple(f)): 1}), self.gb)
                for t, c in r.coeffs.items():
                    m[i, tgt[t]] = c
            self._act[(k, j)] = m
        return m


class PowerIdealModule(GradedModule):
    """m^s(s) read straight off the ring's graded pieces: (m^s(s))_j = R_{j+s}."""

    def __init__(self, ring: RingPresentation, s: int):
        if s < 1:
            raise ValueError("s must be at least 1")
        self.ring = ring
        self.s = s
        nonzero = ring.hilbert(s) > 0
        self.low = 0 if nonzero else None
        self.gen_bound = 0 if nonzero else NEG_INF
        # 0 -> m^s -> R -> R/m^s -> 0 with reg(R/m^s) <= s - 1
        self.reg_bound = max(ring.reg_bound - s, 0) if nonzero else NEG_INF
        self.dim_bound = ring.krull_dim if nonzero else -1

    def dim(self, j):
        return self.ring.hilbert(j + self.s) if j >= 0 else 0

    def veronese_reg_bound(self, c, d):
        # with d + s = qc + k the piece is R^(c,k) truncated at q and shifted by q,
        # and reg(N_{>=q}) <= max(reg N, q)
        general = super().veronese_reg_bound(c, d)
        q, k = divmod(d + self.s, c)
        ring_piece = veronese_regularity(self.ring.reg_bound, self.ring.krull_dim, c, k)
        if general is NEG_INF or ring_piece is NEG_INF:
            return general
        return min(general, max(ring_piece - q, 0))

    def action(self, k, j):
        if j < 0:
            return np.zeros((0, self.dim(j + 1)))
        return self.ring.mult(k, j + self.s)


class VeronesePiece(GradedModule):
    """M^(c,d) = sum_i M_{ic+d} over a presentation K[y]/J of R^(c).

    ``reps[k]`` is the exponent vector (degree c in the x-variables) that y_k
    stands for; y_k acts as the corresponding product of x-actions.
    """

    def __init__(self, base: GradedModule, target: RingPresentation, reps, c: int, d: int):
        if not 0 <= d < c:
            raise ValueError("d must satisfy 0 <= d <= c - 1")
        self.base = base
        self.ring = target
        self.reps = tuple(tuple(r) for r in reps)
        self.c, self.d = c, d
        self.reg_bound = base.veronese_reg_bound(c, d)
        self.dim_bound = base.dim_bound
        if base.low is None or self.reg_bound is NEG_INF:
            self.low = None
            self.gen_bound = NEG_INF
        else:
            self.low = -((d - base.low) // c)
            self.gen_bound = max(self.low, self.reg_bound)
        self._act = {}

    def dim(self, i):
        return self.base.dim(i * self.c + self.d)

    def action(self, k, i):
        m = self._act.get((k, i))
        if m is None:
            p = self.ring.p
            deg = i * self.c + self.d
            m = None
            for var, mult in enumerate(self.reps[k]):
                for _ in range(mult):
                    a = self.base.action(var, deg)
                    m = a if m is None else matmul_mod(m, a, p)
                    deg += 1
            self._act[(k, i)] = m
        return m


class ModulePresentation:
    """coker(relations) over R, generators in degrees ``shifts``, then twisted.

    The module is M(twist) where M = F / <relations> and F = sum R(-shift):
    generator e_k sits in degree shift_k - twist.  ``kind`` records how the
    module was built so the fastest oracle can be chosen.
    """

    def __init__(self, ring: RingPresentation, shifts, relations=(), twist: int = 0,
                 kind: str = "coker", params=None):
        self.ring = ring
        self.shifts = tuple(int(s) for s in shifts)
        self.free = GradedFreeModule(ring.poly_ring, self.shifts)
        self.relations = tuple(v for v in relations if not v.is_zero())
        for v in self.relations:
            if v.module != self.free:
                raise ValueError("relation lives in a different free module")
            if not v.is_homogeneous():
                raise ValueError(f"relation {v} is not homogeneous")
        self.twist = int(twist)
        self.kind = kind
        self.params = dict(params or {})

    @property
    def degrees(self):
        return tuple(s - self.twist for s in self.shifts)

    def __repr__(self):
        return (f"ModulePresentation({self.kind}, shifts={self.shifts}, "
                f"relations={len(self.relations)}, twist={self.twist})")

    @cached_property
    def presented(self) -> PresentedModule:
        return PresentedModule(self)

    def graded(self, route: str = "auto") -> GradedModule:
        if route == "auto" and self.kind == "power":
            return PowerIdealModule(self.ring, self.params["s"])
        if route not in ("auto", "presentation"):
            raise ValueError(f"unknown route {route!r}")
        return self.presented


def residue_field_module(ring: RingPresentation) -> ModulePresentation:
    """K = R/m: one generator in degree 0, one relation per variable."""
    free = GradedFreeModule(ring.poly_ring, (0,))
    rels = [FreeVector(free, {(0, v.lm()): 1}) for v in ring.poly_ring.gens()]
    return ModulePresentation(ring, (0,), rels, 0, kind="residue")


def free_module(ring: RingPresentation, j: int = 0) -> ModulePresentation:
    """R(-j)."""
    return ModulePresentation(ring, (j,), (), 0, kind="free", params={"j": j})


def power_ideal_module(ring: RingPresentation, s: int, degree_cap=None) -> ModulePresentation:
    """m^s(s): generators the degree-s standard monomials, all in degree 0.

    Relations are the minimal syzygies over R among those monomials; they
    live in degrees <= reg_S(m^s) + 1 <= max(rho, s) + 1, which is the
    default cap.
    """
    if s < 1:
        raise ValueError("s must be at least 1")
    S = ring.poly_ring
    monos = ring.basis(s)
    shifts = (s,) * len(monos)
    if not monos:
        return ModulePresentation(ring, (), (), s, kind="power", params={"s": s})
    cap = degree_cap if degree_cap is not None else max(ring.reg_bound, s) + 1
    rank1 = ideal_module(S)
    gens = [FreeVector(rank1, {(0, e): 1}) for e in monos]
    syz = syzygy_module(gens, ring.gb_polys, degree_cap=cap)
    mins = minimal_generators(syz, ring.gb)
    free = GradedFreeModule(S, shifts)
    rels = []
    for v in mins.generators:
        comps = {}
        for (pos, e), c in v.coeffs.items():
            comps[(pos, e)] = c
        # entries modulo I so the relations are tidy
        red = {}
        for pos in range(len(monos)):
            f = Polynomial(S, {e: c for (q, e), c in comps.items() if q == pos})
            for e, c in ring.reduce(f).coeffs.items():
                red[(pos, e)] = c
        if red:
            rels.append(FreeVector(free, red))
    return ModulePresentation(ring, shifts, rels, s, kind="power", params={"s": s})


def as_graded_module(M) -> GradedModule:
    if isinstance(M, ModulePresentation):
        return M.graded()
    if isinstance(M, GradedModule):
        return M
    raise TypeError("expected a ModulePresentation or GradedModule")
