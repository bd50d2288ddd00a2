"""Independent oracles used by the tests (sympy and closed forms only)."""

from itertools import combinations
from math import comb

from sympy import GF, Poly, groebner, symbols
from sympy.polys.matrices import DomainMatrix


def rank_gf(rows, p):
    if not rows or not rows[0]:
        return 0
    return DomainMatrix([[GF(p)(int(v)) for v in r] for r in rows], (len(rows), len(rows[0])), GF(p)).rank()


def ci_betti(nvars, degrees, N, D):
    """Graded Betti numbers of K over a complete intersection.

    Poincare series (1 + t u)^n / prod_k (1 - t^2 u^{d_k}), expanded to
    homological degree N and internal degree D.
    """
    series = {(0, 0): 1}
    for d in degrees:
        new = {}
        for (i, j), c in series.items():
            a = 0
            while i + 2 * a <= N and j + d * a <= D:
                key = (i + 2 * a, j + d * a)
                new[key] = new.get(key, 0) + c
                a += 1
        series = new
    out = {}
    for (i, j), c in series.items():
        for k in range(nvars + 1):
            if i + k <= N and j + k <= D:
                key = (i + k, j + k)
                out[key] = out.get(key, 0) + c * comb(nvars, k)
    return out


def sympy_gb(names, polys, p):
    """Reduced degrevlex Groebner basis over F_p as sets of {exps: coeff}."""
    gens = symbols(" ".join(names) + " _dummy")[: len(names)]
    G = groebner([Poly(f, *gens, modulus=p) for f in polys], *gens, order="grevlex", modulus=p)
    out = []
    for g in G.exprs:
        P = Poly(g, *gens, modulus=p)
        lc = int(P.LC(order="grevlex")) % p
        inv = pow(lc, -1, p)
        out.append({tuple(m): (int(c) * inv) % p for m, c in zip(P.monoms(), P.coeffs())})
    return out, gens


def hilbert_from_leading(leading, nvars, a):
    """Number of degree-a monomials outside the monomial ideal."""
    from veronese_rate.monomial import monomials_of_degree
    return sum(1 for e in monomials_of_degree(nvars, a)
               if not any(all(x >= y for x, y in zip(e, m)) for m in leading))


def koszul_betti(module, nvars, N, jmax, p):
    """beta^S_{ij}(M) = dim H_i(x; M)_j from the module's graded pieces."""
    subsets = {i: list(combinations(range(nvars), i)) for i in range(nvars + 2)}

    def diff(i, j):
        # (wedge^i tensor M_{j-i}) -> (wedge^{i-1} tensor M_{j-i+1})
        src_m, tgt_m = module.dim(j - i), module.dim(j - i + 1)
        src = [(s, b) for s in subsets[i] for b in range(src_m)]
        tpos = {s: k for k, s in enumerate(subsets[i - 1])}
        rows = []
        for s, b in src:
            row = [0] * (len(subsets[i - 1]) * tgt_m)
            for pos, k in enumerate(s):
                sign = 1 if pos % 2 == 0 else p - 1
                act = module.action(k, j - i)
                t = tpos[s[:pos] + s[pos + 1:]]
                for c in range(tgt_m):
                    v = int(act[b, c])
                    if v:
                        row[t * tgt_m + c] = (row[t * tgt_m + c] + sign * v) % p
            rows.append(row)
        return rows, len(src)

    out = {}
    for i in range(min(N, nvars) + 1):
        for j in range(i, jmax + 1):
            dim_c = len(subsets[i]) * module.dim(j - i)
            if dim_c == 0:
                continue
            r_out = rank_gf(diff(i, j)[0], p) if i >= 1 else 0
            r_in = rank_gf(diff(i + 1, j)[0], p) if i + 1 <= nvars and module.dim(j - i - 1) else 0
            h = dim_c - r_out - r_in
            if h:
                out[(i, j)] = h
    return out
