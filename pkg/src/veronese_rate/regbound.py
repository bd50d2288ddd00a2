"""Regularity of monomial quotients and the degree certificate for resolutions.

The resolver needs a proven upper bound on the generator degrees of each
syzygy module.  Over the polynomial cover S, with rho >= reg_S(R) and
r >= reg_S(M), the short exact sequences 0 -> Z_i -> F_{i-1} -> Z_{i-1} -> 0
give

    reg_S(Z_1) <= max(t_0 + rho, r + 1)
    reg_S(Z_i) <= max(t_{i-1} + rho, reg_S(Z_{i-1}) + 1)

and t_i <= reg_S(Z_i).  Upper bounds for rho and r come from initial
ideals (Betti numbers only grow under degeneration) whose regularity is
computed exactly with Hochster's formula on upper Koszul simplicial
complexes.
"""

from __future__ import annotations

from itertools import combinations

import numpy as np

from .extended import NEG_INF
from .linalg import rank
from .monomial import mono_divides, mono_lcm

MAX_LATTICE = 20000


def minimalize_monomials(gens):
    gens = sorted(set(tuple(g) for g in gens), key=sum)
    out = []
    for g in gens:
        if not any(mono_divides(h, g) for h in out):
            out.append(g)
    return out


def _in_ideal(e, gens) -> bool:
    return any(mono_divides(g, e) for g in gens)


def _lcm_lattice(gens):
    lattice = set(gens)
    frontier = set(gens)
    while frontier:
        new = set()
        for a in frontier:
            for g in gens:
                l = mono_lcm(a, g)
                if l not in lattice:
                    new.add(l)
        lattice |= new
        frontier = new
        if len(lattice) > MAX_LATTICE:
            return None
    return lattice


def _reduced_homology_dims(faces_by_dim, p):
    """Reduced Betti numbers {k: dim H~_k} of a complex given as vertex tuples."""
    top = max(faces_by_dim)
    index = {k: {f: i for i, f in enumerate(faces_by_dim.get(k, []))} for k in range(-1, top + 1)}
    ranks = {}
    for k in range(0, top + 1):
        rows = faces_by_dim.get(k, [])
        cols = index.get(k - 1, {})
        if not rows or not cols:
            ranks[k] = 0
            continue
        mat = np.zeros((len(rows), len(cols)), dtype=np.int64)
        for i, f in enumerate(rows):
            for s in range(len(f)):
                face = f[:s] + f[s + 1:]
                mat[i, cols[face]] = 1 if s % 2 == 0 else p - 1
        ranks[k] = rank(mat, p)
    out = {}
    for k in range(-1, top + 1):
        n = len(faces_by_dim.get(k, []))
        h = n - ranks.get(k, 0) - ranks.get(k + 1, 0)
        if h:
            out[k] = h
    return out


def monomial_regularity(gens, nvars: int, p: int = 32003):
    """reg(S/J) for the monomial ideal J generated by exponent vectors.

    Returns NEG_INF when J is the unit ideal (S/J = 0).  Falls back to the
    Taylor bound deg(lcm) - 1 when the lcm lattice is too large.
    """
    gens = minimalize_monomials(gens)
    if not gens:
        return 0
    if any(sum(g) == 0 for g in gens):
        return NEG_INF
    lattice = _lcm_lattice(gens)
    if lattice is None:
        top = gens[0]
        for g in gens[1:]:
            top = mono_lcm(top, g)
        return max(0, sum(top) - 1)
    best = 0
    for b in lattice:
        support = [i for i in range(nvars) if b[i] > 0]
        faces = {}
        for size in range(0, len(support) + 1):
            for F in combinations(support, size):
                e = list(b)
                for i in F:
                    e[i] -= 1
                if _in_ideal(e, gens):
                    faces.setdefault(size - 1, []).append(F)
        if -1 not in faces:
            continue
        for k in _reduced_homology_dims(faces, p):
            best = max(best, sum(b) - k - 2)
    return best


def monomial_krull_dim(gens, nvars: int) -> int:
    """dim S/J: the largest set of variables supporting no generator."""
    gens = minimalize_monomials(gens)
    if any(sum(g) == 0 for g in gens):
        return -1
    supports = [frozenset(i for i, x in enumerate(g) if x) for g in gens]
    for size in range(nvars, -1, -1):
        for U in combinations(range(nvars), size):
            U = frozenset(U)
            if not any(s <= U for s in supports):
                return size
    return 0


def module_regularity(components, nvars: int, p: int = 32003):
    """reg and dim of a direct sum of (S/J_e)(-s_e).

    ``components`` is a list of ``(shift, monomial generators of J_e)``.
    Returns ``(reg, dim)``; reg is NEG_INF and dim -1 for the zero module.
    """
    reg, dim = NEG_INF, -1
    for shift, gens in components:
        r = monomial_regularity(gens, nvars, p)
        if r is NEG_INF:
            continue
        reg = shift + r if reg is NEG_INF else max(reg, shift + r)
        dim = max(dim, monomial_krull_dim(gens, nvars))
    return reg, dim


def veronese_regularity(reg_m, dim_m: int, c: int, d: int):
    """Bound reg of M^(c,d) over a polynomial cover of R^(c) from reg_S(M).

    Local cohomology commutes with taking Veronese pieces, so
    end H^i(M^(c,d)) <= floor((reg_S(M) - i - d) / c).
    """
    if reg_m is NEG_INF or dim_m < 0:
        return NEG_INF
    return max((reg_m - i - d) // c + i for i in range(0, dim_m + 1))


def syzygy_degree_bound(prev_bound, t_prev, rho):
    """Next certificate value: max(t_{i-1} + rho, reg(Z_{i-1}) + 1)."""
    cands = [prev_bound + 1]
    if t_prev is not NEG_INF:
        cands.append(t_prev + rho)
    return max(cands)
