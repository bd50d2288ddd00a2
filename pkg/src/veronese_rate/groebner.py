"""Gröbner bases of graded submodules of shifted free modules over F_p[x].

Rings are the rank-one case.  Module terms are ``(position, exponents)``
pairs compared term-over-position: shifted degree first, then degrevlex,
then the lower position index wins.  Pairs are processed by the normal
strategy (lowest degree first), so a run stopped at ``degree_cap`` is exact
in every degree up to the cap; anything left over sets ``truncated``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .field import inverse
from .linalg import SparseEchelon
from .monomial import (elimination_order, mono_coprime, mono_div, mono_divides,
                       mono_lcm, mono_mul, monomials_of_degree)
from .polynomial import FreeVector, GradedFreeModule, Polynomial, PolyRing


class _Elt:
    __slots__ = ("d", "lpos", "lexp", "lc", "deg")

    def __init__(self, d, key, degree):
        self.d = d
        self.lpos, self.lexp = max(d, key=lambda t: key(*t))
        self.lc = d[(self.lpos, self.lexp)]
        self.deg = degree(self.lpos, self.lexp)


class _Ctx:
    """Order, grading and field data shared by one computation."""

    def __init__(self, module: GradedFreeModule, key=None):
        self.module = module
        self.ring = module.ring
        self.p = module.ring.p
        self.shifts = module.shifts
        self.key = key or module.order_key
        order = module.ring.order
        self.degree = lambda pos, e: order.degree(e) + self.shifts[pos]

    def elt(self, d):
        return _Elt(d, self.key, self.degree)

    def monic(self, d):
        e = _Elt(d, self.key, self.degree)
        if e.lc == 1:
            return e
        inv = inverse(e.lc, self.p)
        return _Elt({t: c * inv % self.p for t, c in d.items()}, self.key, self.degree)


def _find_divisor(index, pos, e):
    for g in index.get(pos, ()):
        if mono_divides(g.lexp, e):
            return g
    return None


def _reduce(d, index, ctx, full=True, record=None):
    """Remainder of d on division by the elements in ``index``.

    ``record`` (a list) receives ``(elt, multiplier_exponents, coefficient)``
    for each division step.
    """
    f = dict(d)
    rem = {}
    key = ctx.key
    p = ctx.p
    while f:
        t = max(f, key=lambda s: key(*s))
        c = f[t]
        g = _find_divisor(index, t[0], t[1])
        if g is None:
            rem[t] = f.pop(t)
            if not full:
                rem.update(f)
                return rem
            continue
        q = mono_div(t[1], g.lexp)
        coef = c * inverse(g.lc, p) % p
        for (pos, e), gc in g.d.items():
            k = (pos, mono_mul(e, q))
            v = (f.get(k, 0) - coef * gc) % p
            if v:
                f[k] = v
            else:
                f.pop(k, None)
        if record is not None:
            record.append((g, q, coef))
    return rem


def _index(elts):
    idx = {}
    for g in elts:
        idx.setdefault(g.lpos, []).append(g)
    return idx


def _spoly(f, g, ctx):
    lcm = mono_lcm(f.lexp, g.lexp)
    qf, qg = mono_div(lcm, f.lexp), mono_div(lcm, g.lexp)
    p = ctx.p
    cf, cg = inverse(f.lc, p), inverse(g.lc, p)
    d = {}
    for (pos, e), c in f.d.items():
        k = (pos, mono_mul(e, qf))
        d[k] = (d.get(k, 0) + c * cf) % p
    for (pos, e), c in g.d.items():
        k = (pos, mono_mul(e, qg))
        d[k] = (d.get(k, 0) - c * cg) % p
    return {k: v for k, v in d.items() if v}, qf, qg, cf, cg


def _pair_degree(f, g, ctx):
    return ctx.degree(f.lpos, mono_lcm(f.lexp, g.lexp))


def _update_pairs(G, pairs, t, ctx, rank_one):
    """Gebauer-Möller update after appending G[t]."""
    h = G[t]
    cand = []
    for i in range(t):
        g = G[i]
        if g is None or g.lpos != h.lpos:
            continue
        cand.append((i, mono_lcm(g.lexp, h.lexp), rank_one and mono_coprime(g.lexp, h.lexp)))
    # drop candidates whose lcm is a proper multiple of another candidate's lcm
    kept = []
    for i, lcm, cop in cand:
        if any(l2 != lcm and mono_divides(l2, lcm) for _, l2, _ in cand):
            continue
        kept.append((i, lcm, cop))
    by_lcm = {}
    for i, lcm, cop in kept:
        by_lcm.setdefault(lcm, []).append((i, cop))
    new = []
    for lcm, group in by_lcm.items():
        if any(cop for _, cop in group):
            continue
        new.append((min(i for i, _ in group), t))
    survivors = []
    for i, j in pairs:
        gi, gj = G[i], G[j]
        lij = mono_lcm(gi.lexp, gj.lexp)
        if (gi.lpos == h.lpos and mono_divides(h.lexp, lij)
                and lij != mono_lcm(gi.lexp, h.lexp) and lij != mono_lcm(gj.lexp, h.lexp)):
            continue
        survivors.append((i, j))
    return survivors + new


def _buchberger(dicts, ctx, degree_cap, rank_one=False):
    """Core loop.  Returns (list of monic _Elt, truncated flag)."""
    inputs = sorted((ctx.elt(d) for d in dicts if d), key=lambda e: e.deg)
    G = []
    pairs = []
    truncated = False
    pos_in = 0
    while True:
        degs = [_pair_degree(G[i], G[j], ctx) for i, j in pairs]
        next_deg = min(degs) if degs else None
        if pos_in < len(inputs):
            d_in = inputs[pos_in].deg
            next_deg = d_in if next_deg is None else min(next_deg, d_in)
        if next_deg is None:
            break
        if next_deg > degree_cap:
            truncated = True
            break
        todo = []
        rest = []
        for (i, j), dg in zip(pairs, degs):
            (todo if dg == next_deg else rest).append((i, j))
        pairs = rest
        polys = [_spoly(G[i], G[j], ctx)[0] for i, j in sorted(todo)]
        while pos_in < len(inputs) and inputs[pos_in].deg == next_deg:
            polys.append(inputs[pos_in].d)
            pos_in += 1
        for d in polys:
            live = [g for g in G if g is not None]
            r = _reduce(d, _index(live), ctx)
            if not r:
                continue
            G.append(ctx.monic(r))
            pairs = _update_pairs(G, pairs, len(G) - 1, ctx, rank_one)
    return [g for g in G if g is not None], truncated


def _interreduce(G, ctx):
    """Minimal, tail-reduced, monic basis in ascending leading-term order."""
    G = sorted(G, key=lambda g: ctx.key(g.lpos, g.lexp))
    minimal = []
    for g in G:
        if any(h.lpos == g.lpos and mono_divides(h.lexp, g.lexp) for h in minimal):
            continue
        minimal.append(g)
    out = []
    for g in minimal:
        others = _index([h for h in minimal if h is not g])
        lead = (g.lpos, g.lexp)
        tail = {t: c for t, c in g.d.items() if t != lead}
        r = _reduce(tail, others, ctx) if tail else {}
        r[lead] = g.lc
        out.append(ctx.monic(r))
    return out


@dataclass
class Submodule:
    """Submodule of a GradedFreeModule given by homogeneous generators."""

    module: GradedFreeModule
    generators: list
    truncated: bool = False

    def __post_init__(self):
        self.generators = [g for g in self.generators if not g.is_zero()]
        for g in self.generators:
            if g.module != self.module:
                raise ValueError("generator lies in a different module")
            if not g.is_homogeneous():
                raise ValueError(f"generator {g} is not homogeneous")

    def __len__(self):
        return len(self.generators)


@dataclass
class GroebnerBasis:
    module: GradedFreeModule
    generators: list
    truncated: bool = False
    degree_cap: int | None = None
    _elts: list = field(default=None, repr=False)

    def __len__(self):
        return len(self.generators)

    def leading_terms(self):
        """(position, exponents) of each generator's leading term."""
        return [(g.lpos, g.lexp) for g in self._elts]

    def normal_form(self, v):
        return normal_form(v, self)


def _ctx_for(module, key=None):
    return _Ctx(module, key)


def _from_elts(module, elts, truncated, cap):
    gens = [FreeVector(module, g.d) for g in elts]
    return GroebnerBasis(module, gens, truncated, cap, elts)


def buchberger(gens, degree_cap: int, rank_one: bool | None = None) -> GroebnerBasis:
    """Reduced Gröbner basis of a Submodule, exact up to ``degree_cap``."""
    if not isinstance(gens, Submodule):
        raise TypeError("buchberger expects a Submodule")
    module = gens.module
    if gens.generators:
        top = max(g.degree for g in gens.generators)
        if degree_cap < top:
            raise ValueError(f"degree_cap {degree_cap} below the top generator degree {top}")
    ctx = _ctx_for(module)
    if rank_one is None:
        rank_one = module.rank == 1
    elts, trunc = _buchberger([g.coeffs for g in gens.generators], ctx, degree_cap, rank_one)
    elts = _interreduce(elts, ctx)
    return _from_elts(module, elts, trunc, degree_cap)


def normal_form(v: FreeVector, gb: GroebnerBasis) -> FreeVector:
    if v.module != gb.module:
        raise ValueError("vector and basis live in different modules (order mismatch)")
    ctx = _ctx_for(gb.module)
    return FreeVector(gb.module, _reduce(v.coeffs, _index(gb._elts), ctx))


def reduce_poly(f: Polynomial, gb: GroebnerBasis) -> Polynomial:
    """Normal form of a polynomial against an ideal basis (rank one)."""
    ctx = _ctx_for(gb.module)
    d = {(0, e): c for e, c in f.coeffs.items()}
    r = _reduce(d, _index(gb._elts), ctx)
    return Polynomial(f.ring, {e: c for (_, e), c in r.items()})


def ideal_module(ring: PolyRing) -> GradedFreeModule:
    return GradedFreeModule(ring, (0,))


def as_vectors(polys, module: GradedFreeModule | None = None):
    polys = list(polys)
    if module is None:
        if not polys:
            raise ValueError("cannot infer the ring of an empty generator list")
        module = ideal_module(polys[0].ring)
    return [FreeVector(module, {(0, e): c for e, c in f.coeffs.items()}) for f in polys]


def ideal_groebner(polys, ring: PolyRing, degree_cap: int) -> GroebnerBasis:
    module = ideal_module(ring)
    polys = [f for f in polys if not f.is_zero()]
    cap = max([degree_cap] + [f.degree for f in polys])
    return buchberger(Submodule(module, as_vectors(polys, module)), cap)


def basis_polys(gb: GroebnerBasis):
    ring = gb.module.ring
    return [Polynomial(ring, {e: c for (_, e), c in g.coeffs.items()}) for g in gb.generators]


def augment(sub: Submodule, ideal_polys) -> Submodule:
    """Adjoin f*e_k for every ideal generator f and free basis element e_k."""
    module = sub.module
    extra = []
    for k in range(module.rank):
        for f in ideal_polys:
            if not f.is_zero():
                extra.append(FreeVector(module, {(k, e): c for e, c in f.coeffs.items()}))
    return Submodule(module, list(sub.generators) + extra)


# ----------------------------------------------------------------- syzygies

def syzygy_basis(gb: GroebnerBasis, degree_cap: int) -> Submodule:
    """Schreyer syzygies of the basis elements, up to ``degree_cap``.

    The result lives in a free module with one basis element per basis
    generator, shifted by that generator's degree.
    """
    ctx = _ctx_for(gb.module)
    elts = gb._elts
    target = GradedFreeModule(gb.module.ring, [g.deg for g in elts])
    pos_of = {id(g): i for i, g in enumerate(elts)}
    idx = _index(elts)
    p = ctx.p
    syz = []
    truncated = gb.truncated
    for i in range(len(elts)):
        for j in range(i + 1, len(elts)):
            f, g = elts[i], elts[j]
            if f.lpos != g.lpos:
                continue
            if _pair_degree(f, g, ctx) > degree_cap:
                truncated = True
                continue
            s, qf, qg, cf, cg = _spoly(f, g, ctx)
            record = []
            rem = _reduce(s, idx, ctx, record=record)
            if rem:
                # basis incomplete; the pair carries no syzygy
                truncated = True
                continue
            d = {}
            d[(i, qf)] = (d.get((i, qf), 0) + cf) % p
            d[(j, qg)] = (d.get((j, qg), 0) - cg) % p
            for h, q, coef in record:
                k = (pos_of[id(h)], q)
                d[k] = (d.get(k, 0) - coef) % p
            d = {k: v for k, v in d.items() if v}
            if d:
                syz.append(FreeVector(target, d))
    return Submodule(target, syz, truncated)


def apply_map(vec: FreeVector, images):
    """Image of vec under e_k -> images[k] (FreeVectors or Polynomials)."""
    out = None
    for pos, f in enumerate(vec.components()):
        if f.is_zero():
            continue
        img = images[pos]
        term = f * img if isinstance(img, Polynomial) else img.__rmul__(f)
        out = term if out is None else out + term
    if out is None:
        first = images[0]
        return first.module.zero() if isinstance(first, FreeVector) else first.ring.zero()
    return out


def syzygy_module(gens, ideal_polys=(), degree_cap: int = 20) -> Submodule:
    """Syzygies of arbitrary homogeneous vectors, over S or over S/I.

    Uses the lifting encoding: each v_i becomes (v_i, eps_i) in F + S^r and the
    ideal contributes (f e_k, 0); in a position-over-term order favouring F,
    basis elements with vanishing F-part are exactly the syzygies.  Over
    S/I these are S-syzygies of the augmented set projected onto the eps
    coordinates.
    """
    gens = list(gens)
    if not gens:
        raise ValueError("need at least one generator")
    module = gens[0].module
    ring = module.ring
    rk = module.rank
    degs = [g.degree for g in gens]
    ext = GradedFreeModule(ring, list(module.shifts) + degs)
    order = ring.order

    def key(pos, e):
        return (1 if pos < rk else 0, order.degree(e) + ext.shifts[pos], order.key(e), -pos)

    ctx = _Ctx(ext, key)
    dicts = []
    zero = (0,) * ring.nvars
    for i, g in enumerate(gens):
        d = dict(g.coeffs)
        d[(rk + i, zero)] = 1
        dicts.append(d)
    for k in range(rk):
        for f in ideal_polys:
            if not f.is_zero():
                dicts.append({(k, e): c for e, c in f.coeffs.items()})
    elts, trunc = _buchberger(dicts, ctx, degree_cap)
    target = GradedFreeModule(ring, degs)
    syz = []
    for g in elts:
        if g.lpos >= rk:
            syz.append(FreeVector(target, {(pos - rk, e): c for (pos, e), c in g.d.items()}))
    return Submodule(target, syz, trunc)


# ------------------------------------------------------- graded linear algebra

def _piece_vectors(vec_dict, mult_exps_list, reducer):
    for q in mult_exps_list:
        d = {(pos, mono_mul(e, q)): c for (pos, e), c in vec_dict.items()}
        yield reducer(d)


def minimal_generators(gens: Submodule, ideal_gb: GroebnerBasis | None = None) -> Submodule:
    """Subset of generators minimal by graded Nakayama.

    Degree by degree, a generator is kept iff it is not in the K-span of
    (lower generators) * (monomials) plus the generators already kept, all
    taken modulo the ideal when ``ideal_gb`` is given.
    """
    module = gens.module
    ring = module.ring
    ctx = _ctx_for(module)
    if ideal_gb is not None and len(ideal_gb):
        iring = ideal_gb.module
        ictx = _ctx_for(iring)
        iidx = _index(ideal_gb._elts)

        def reducer(d):
            out = {}
            for k in range(module.rank):
                comp = {(0, e): c for (pos, e), c in d.items() if pos == k}
                if comp:
                    for (_, e), c in _reduce(comp, iidx, ictx).items():
                        out[(k, e)] = c
            return out
    else:
        def reducer(d):
            return d

    by_deg = {}
    for g in gens.generators:
        by_deg.setdefault(g.degree, []).append(g)
    kept = []
    for deg in sorted(by_deg):
        ech = SparseEchelon(ring.p, column_key=lambda t: ctx.key(*t))
        for h in kept:
            hd = h.degree
            mults = monomials_of_degree(ring.nvars, deg - hd) if ring.order.weights == (1,) * ring.nvars \
                else [m for m in _weighted_monomials(ring, deg - hd)]
            for w in _piece_vectors(h.coeffs, mults, reducer):
                ech.add(w)
        for g in by_deg[deg]:
            if ech.add(reducer(g.coeffs)):
                kept.append(g)
    return Submodule(module, kept, gens.truncated)


def _weighted_monomials(ring: PolyRing, d: int):
    out = []
    w = ring.order.weights

    def rec(i, left, acc):
        if i == ring.nvars:
            if left == 0:
                out.append(tuple(acc))
            return
        for k in range(left // w[i], -1, -1):
            rec(i + 1, left - k * w[i], acc + [k])
    rec(0, d, [])
    return out


def k_basis(ring: PolyRing, quotient: Submodule, degree: int, ideal_polys=()):
    """Standard (position, exponents) pairs of the given internal degree.

    These are the terms outside the leading-term module of the basis of
    ``quotient`` augmented by ideal * (free basis); their number is the
    Hilbert function of F / (quotient + I F) at ``degree``.
    """
    sub = augment(quotient, ideal_polys)
    cap = max([degree] + [g.degree for g in sub.generators])
    gb = buchberger(sub, cap)
    return standard_terms(gb, degree)


def standard_terms(gb: GroebnerBasis, degree: int):
    module = gb.module
    ring = module.ring
    lts = gb.leading_terms()
    out = []
    for pos, s in enumerate(module.shifts):
        for e in monomials_of_degree(ring.nvars, degree - s) if ring.order.weights == (1,) * ring.nvars \
                else _weighted_monomials(ring, degree - s):
            if not any(lp == pos and mono_divides(le, e) for lp, le in lts):
                out.append((pos, e))
    key = module.order_key
    out.sort(key=lambda t: key(*t), reverse=True)
    return out


# --------------------------------------------------------------- elimination

@dataclass
class EliminationResult:
    generators: list
    truncated: bool
    basis: list


def infer_weights(polys, elim_idx, keep_idx, nvars):
    """Weights making the generators homogeneous: discarded variables weigh 1."""
    w = [None] * nvars
    for i in elim_idx:
        w[i] = 1
    changed = True
    while changed:
        changed = False
        for f in polys:
            known = None
            for e in f.coeffs:
                if all(x == 0 or w[i] is not None for i, x in enumerate(e)):
                    known = sum(x * w[i] for i, x in enumerate(e) if x)
                    break
            if known is None:
                continue
            for e in f.coeffs:
                unknown = [i for i, x in enumerate(e) if x and w[i] is None]
                if len(unknown) == 1 and e[unknown[0]] == 1:
                    rest = sum(x * w[i] for i, x in enumerate(e) if x and i != unknown[0])
                    if known - rest > 0:
                        w[unknown[0]] = known - rest
                        changed = True
    w = [1 if x is None else x for x in w]
    for f in polys:
        if len({sum(x * w[i] for i, x in enumerate(e)) for e in f.coeffs}) > 1:
            raise ValueError(f"generator {f} is not homogeneous for any inferred grading")
    return tuple(w)


def eliminate(ideal_gens, keep, degree_cap: int, weights=None) -> EliminationResult:
    """Generators of the ideal intersected with the subring on ``keep``.

    ``keep`` names variables of the generators' ring.  The computation runs
    in an elimination order (discarded variables first, weighted degree
    compatible) and returns the minimal generators of the elimination ideal
    up to ``degree_cap``, as polynomials in the kept variables (with their
    standard grading).
    """
    ideal_gens = [f for f in ideal_gens if not f.is_zero()]
    if not ideal_gens:
        return EliminationResult([], False, [])
    src = ideal_gens[0].ring
    keep = [src.names.index(v) if isinstance(v, str) else v for v in keep]
    elim = [i for i in range(src.nvars) if i not in keep]
    perm = elim + keep
    if weights is None:
        weights = infer_weights(ideal_gens, elim, keep, src.nvars)
    pw = tuple(weights[i] for i in perm)
    order = elimination_order(len(elim), len(keep), pw)
    ering = PolyRing([src.names[i] for i in perm], src.p, order, src.degree_cap)

    def move(f):
        return Polynomial(ering, {tuple(e[i] for i in perm): c for e, c in f.coeffs.items()})

    module = ideal_module(ering)
    sub = Submodule(module, as_vectors([move(f) for f in ideal_gens], module))
    ctx = _ctx_for(module)
    elts, trunc = _buchberger([g.coeffs for g in sub.generators], ctx, degree_cap, rank_one=True)
    elts = _interreduce(elts, ctx)
    ne = len(elim)
    kring = PolyRing([src.names[i] for i in keep], src.p)
    kept = []
    for g in elts:
        if all(not any(e[:ne]) for (_, e) in g.d):
            kept.append(Polynomial(kring, {e[ne:]: c for (_, e), c in g.d.items()}))
    if kept:
        kmod = ideal_module(kring)
        kctx = _ctx_for(kmod)
        kelts = _interreduce([kctx.elt({(0, e): c for e, c in f.coeffs.items()}) for f in kept], kctx)
        basis = [Polynomial(kring, {e: c for (_, e), c in g.d.items()}) for g in kelts]
        mins = minimal_generators(Submodule(kmod, as_vectors(basis, kmod)))
        gens = [Polynomial(kring, {e: c for (_, e), c in v.coeffs.items()}) for v in mins.generators]
    else:
        gens, basis = [], []
    return EliminationResult(gens, trunc, basis)
