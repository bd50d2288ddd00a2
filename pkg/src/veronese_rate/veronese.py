"""Veronese subrings R^(c), Veronese pieces M^(c,d), and the shift transform.

R^(c) is presented as K[y_0..y_{m-1}]/J where y_k stands for the k-th
standard monomial of degree c (lex-descending, so y0 = x^c).  J comes from
eliminating the x-variables from (y_k - rep_k) + I.  A piece M^(c,d) is
handed to the resolver as a degree-by-degree oracle in which y_k acts as
the product of the x-actions spelled out by rep_k.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .extended import NEG_INF
from .groebner import eliminate
from .linalg import left_kernel
from .modules import ModulePresentation, VeronesePiece, as_graded_module
from .monomial import mono_mul, monomials_of_degree
from .polynomial import FreeVector, GradedFreeModule, Polynomial, PolyRing
from .regbound import veronese_regularity
from .rings import RingPresentation


class ShiftTransform(NamedTuple):
    k: int
    i: int


def veronese_shift_transform(j: int, c: int, d: int) -> ShiftTransform:
    """R(-j)^(c,d) = R^(c,k)(-i) with i = ceil((j - d)/c) and k = ic + d - j."""
    if c < 1:
        raise ValueError("c must be at least 1")
    if not 0 <= d <= c - 1:
        raise ValueError(f"d = {d} outside [0, {c - 1}]")
    i = -((d - j) // c)
    return ShiftTransform(i * c + d - j, i)


@dataclass
class VeroneseMap:
    source: RingPresentation
    c: int
    target: RingPresentation
    reps: tuple
    degree_cap: int
    truncated: bool
    verified_upto: int

    @property
    def nvars(self) -> int:
        return len(self.reps)

    @property
    def ideal(self):
        return self.target.ideal

    def assignment(self):
        """Pairs (y-name, x-monomial string)."""
        x = self.source.poly_ring
        return [(y, str(x.monomial(e))) for y, e in zip(self.target.names, self.reps)]

    def piece(self, M, d: int) -> VeronesePiece:
        return VeronesePiece(as_graded_module(M), self.target, self.reps, self.c, d)


def _y_names(source_names, m):
    base = "y"
    while any(f"{base}{k}" in source_names for k in range(m)):
        base += "y"
    return [f"{base}{k}" for k in range(m)]


def ring_regularity_bound(R: RingPresentation, c: int) -> int:
    """reg of R^(c) over its polynomial cover, via local cohomology."""
    return veronese_regularity(R.reg_bound, R.krull_dim, c, 0)


def veronese_ring(R: RingPresentation, c: int, degree_cap: int | None = None,
                  verify_upto: int = 4) -> VeroneseMap:
    """Presentation K[y]/J of R^(c).

    Minimal generators of J sit in y-degree <= reg(R^(c)) + 1, so eliminating
    up to weighted degree c * (that bound) is complete; ``truncated`` is set
    only when a smaller ``degree_cap`` was forced.
    """
    if c < 1:
        raise ValueError("c must be at least 1")
    reps = tuple(R.basis(c))
    m = len(reps)
    ynames = _y_names(R.names, m)
    reg_t = ring_regularity_bound(R, c)
    need = max(2, reg_t + 1) if reg_t is not NEG_INF else 2
    cap = degree_cap if degree_cap is not None else c * need
    if m == 0:
        target = RingPresentation([], (), R.p)
        return VeroneseMap(R, c, target, reps, cap, False, 0)
    big = PolyRing(list(R.names) + ynames, R.p, degree_cap=max(R.poly_ring.degree_cap, cap))
    n = R.nvars
    gens = []
    for k, e in enumerate(reps):
        y = [0] * (n + m)
        y[n + k] = 1
        gens.append(Polynomial(big, {tuple(y): 1, tuple(e) + (0,) * m: R.p - 1}))
    for f in R.gb_polys:
        gens.append(Polynomial(big, {tuple(e) + (0,) * m: v for e, v in f.coeffs.items()}))
    weights = (1,) * n + (c,) * m
    res = eliminate(gens, ynames, cap, weights=weights)
    truncated = res.truncated and cap < c * need
    J = [Polynomial(PolyRing(ynames, R.p), f.coeffs) for f in res.generators]
    target = RingPresentation(ynames, J, R.p, reg_hint=reg_t if reg_t is not NEG_INF else None)
    vm = VeroneseMap(R, c, target, reps, cap, truncated, 0)
    for i in range(verify_upto + 1):
        if target.hilbert(i) != R.hilbert(i * c):
            raise ArithmeticError(f"Hilbert identity fails at degree {i} for c = {c}")
    vm.verified_upto = verify_upto
    return vm


def defining_ideal_piece(vm: VeroneseMap, a: int) -> np.ndarray:
    """J_a computed directly as the kernel of K[y]_a -> R_{ac} (rows over y-monomials).

    Independent of elimination; used to cross-check the presentation.
    """
    R = vm.source
    monos = monomials_of_degree(vm.nvars, a)
    rows = []
    for e in monos:
        x = (0,) * R.nvars
        for k, mult in enumerate(e):
            for _ in range(mult):
                x = mono_mul(x, vm.reps[k])
        rows.append(R.normal_form(x))
    if not rows:
        return np.zeros((0, 0))
    mat = np.asarray(rows, dtype=np.float64)
    return left_kernel(mat, R.p)


def y_monomials(vm: VeroneseMap, a: int):
    return monomials_of_degree(vm.nvars, a)


def veronese_module(M, vm: VeroneseMap, d: int, degree_cap: int | None = None) -> ModulePresentation:
    """Presentation of M^(c,d) over K[y]/J.

    Generators are a graded Nakayama basis and relations the minimal first
    syzygies, both read off the first step of the linear resolver, which
    works directly on the graded pieces M_{ic+d}.
    """
    from .resolution import resolve_minimal

    piece = vm.piece(M, d)
    T = vm.target
    if piece.is_zero:
        return ModulePresentation(T, (), (), 0, kind="veronese-piece",
                                  params={"c": vm.c, "d": d, "truncated": False})
    sl, B = resolve_minimal(piece, 1, degree_cap, keep_maps=True)
    shifts = tuple(sl.shifts[0])
    free = GradedFreeModule(T.poly_ring, shifts)
    rels = []
    for row in sl.differentials[1]:
        d_ = {}
        for pos, f in enumerate(row):
            for e, v in f.coeffs.items():
                d_[(pos, e)] = v
        rels.append(FreeVector(free, d_))
    pres = ModulePresentation(T, shifts, rels, 0, kind="veronese-piece",
                              params={"c": vm.c, "d": d, "truncated": B.any_truncated})
    pres.generator_images = sl.augmentation
    return pres


def restrict_module_to_veronese(M, vm: VeroneseMap, degree_cap: int | None = None):
    """The c pieces M^(c,0), ..., M^(c,c-1) as presentations over R^(c)."""
    return [veronese_module(M, vm, d, degree_cap) for d in range(vm.c)]


def restrict_resolution_to_veronese(shifts, c: int, d: int):
    """Transport the generator degrees of a free complex through (-)^(c,d).

    ``shifts`` is a ResolutionSlice or a list (per homological index) of
    generator degrees.  Returns, per index, the sorted list of (k, i) with
    R(-j)^(c,d) = R^(c,k)(-i).
    """
    if hasattr(shifts, "shifts"):
        shifts = shifts.shifts
    return [sorted(veronese_shift_transform(j, c, d) for j in col) for col in shifts]
