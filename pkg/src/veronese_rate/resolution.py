"""Minimal graded free resolutions, Betti tables, and the invariants t_i, reg, rate, rat.

Two independent engines produce the same Betti table:

``linear`` (default)
    Works one graded piece at a time.  For column i and degree j it forms
    the matrix of (F_i)_j -> (F_{i-1})_j, takes the kernel of the previous
    differential, and adds as new generators a complement of the image of
    the lower-degree generators.  Dimensions of kernels follow from
    exactness and an Euler count, so the last column never needs a kernel.
    A regularity certificate (see :mod:`regbound`) says when a column can
    have no generators beyond the degrees already scanned.

``groebner``
    Alternates lifting syzygies over R (augmented-module Gröbner bases) and
    graded Nakayama minimalisation.  Slower; kept as a cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .extended import NEG_INF, xmax
from .groebner import Submodule, minimal_generators, syzygy_module
from .linalg import complement_rows, left_kernel, matmul_mod, rank
from .modules import GradedModule, ModulePresentation, as_graded_module, residue_field_module
from .polynomial import FreeVector, GradedFreeModule
from .regbound import syzygy_degree_bound
from .rings import RingPresentation

DEFAULT_N = 6


class ResolutionError(RuntimeError):
    """Internal consistency check failed (should never happen)."""


@dataclass
class BettiTable:
    """β_{i,j} for 0 <= i <= N, exact for j <= D.

    ``truncated[i]`` is True when column i may have generators of degree
    above D, so its t-value is only a lower bound.
    """

    entries: dict
    N: int
    D: int
    truncated: tuple

    def column(self, i):
        return {j: c for (a, j), c in self.entries.items() if a == i}

    def betti(self, i) -> int:
        return sum(self.column(i).values())

    def t(self, i):
        col = self.column(i)
        return max(col) if col else NEG_INF

    @property
    def any_truncated(self) -> bool:
        return any(self.truncated)

    def truncated_columns(self):
        return [i for i, f in enumerate(self.truncated) if f]

    def shifted(self, a: int) -> BettiTable:
        """Table of M(-a): every internal degree moves up by a."""
        entries = {(i, j + a): c for (i, j), c in self.entries.items()}
        return BettiTable(entries, self.N, self.D + a, self.truncated)

    def text(self) -> str:
        return betti_text(self)

    def raw(self) -> str:
        return "\n".join(f"{i} {j} {c}" for (i, j), c in sorted(self.entries.items()))

    def to_dict(self) -> dict:
        from .extended import to_json
        return {
            "betti": [[i, j, c] for (i, j), c in sorted(self.entries.items())],
            "t": [to_json(x) for x in t_values(self)],
            "reg_trunc": to_json(regularity_truncated(self)),
            "rate_trunc": to_json(rate_truncated(self)) if self.N >= 1 else None,
            "truncated_columns": self.truncated_columns(),
            "cutoffs": {"N": self.N, "D": self.D},
        }


@dataclass
class ResolutionSlice:
    """Generator degrees and differentials of the computed part of F.

    ``differentials[i]`` (i >= 1) is a list with one entry per generator of
    F_i: a list of Polynomials, one per generator of F_{i-1}.
    ``augmentation`` lists, per generator of F_0, its image in M as a
    coordinate vector over the module's graded piece.
    """

    ring: RingPresentation
    shifts: list
    differentials: list
    augmentation: list = field(default_factory=list)

    def matrix(self, i):
        return self.differentials[i]

    def free_module(self, i) -> GradedFreeModule:
        return GradedFreeModule(self.ring.poly_ring, self.shifts[i])


# ----------------------------------------------------------------- helpers

class _Free:
    """(F_i)_j with F_i = sum R(-deg g), basis ordered generator-major."""

    def __init__(self, ring: RingPresentation):
        self.ring = ring
        self.degs = []

    def add(self, deg, count):
        self.degs.extend([deg] * count)

    def groups(self):
        out = []
        for d in self.degs:
            if out and out[-1][0] == d:
                out[-1][1] += 1
            else:
                out.append([d, 1])
        return out

    def dim(self, j):
        h = self.ring.hilbert
        return sum(c * h(j - d) for d, c in self.groups())

    def mult(self, rows, k, j):
        """rows @ (x_k : (F)_j -> (F)_{j+1})."""
        h = self.ring.hilbert
        p = self.ring.p
        r = rows.shape[0]
        out = np.zeros((r, self.dim(j + 1)))
        a = b = 0
        for d, c in self.groups():
            n0, n1 = h(j - d), h(j + 1 - d)
            if n0 and n1 and r:
                block = rows[:, a:a + c * n0].reshape(r * c, n0)
                prod = matmul_mod(block, self.ring.mult(k, j - d), p)
                out[:, b:b + c * n1] = prod.reshape(r, c * n1)
            a += c * n0
            b += c * n1
        return out


class _ModTarget:
    def __init__(self, M: GradedModule):
        self.M = M

    def dim(self, j):
        return self.M.dim(j)

    def mult(self, rows, k, j):
        a = self.M.action(k, j)
        if rows.shape[0] == 0 or a.shape[0] == 0:
            return np.zeros((rows.shape[0], self.M.dim(j + 1)))
        return matmul_mod(rows, a, self.M.ring.p)


class _Column:
    """Generators of F_i and the matrices (F_i)_j -> target_j."""

    def __init__(self, ring, target):
        self.ring = ring
        self.free = _Free(ring)
        self.target = target
        self.mats = {}
        self.new = {}

    def _extend(self, j):
        """Rows of (F_i)_j coming from generators of degree < j."""
        ring = self.ring
        tdim = self.target.dim(j)
        prev = self.matrix(j - 1)
        groups = [(d, c) for d, c in self.free.groups() if d < j]
        n = sum(c * ring.hilbert(j - d) for d, c in groups)
        out = np.zeros((n, tdim))
        if n == 0:
            return out
        src, var = [], []
        a_prev = 0
        for d, c in groups:
            a = j - d
            n_prev = ring.hilbert(a - 1)
            n_cur = ring.hilbert(a)
            if n_cur:
                ks, parents = ring.lift_table(a)
                for g in range(c):
                    src.append(a_prev + g * n_prev + parents)
                    var.append(ks)
            a_prev += c * n_prev
        src = np.concatenate(src)
        var = np.concatenate(var)
        for k in np.unique(var):
            sel = np.flatnonzero(var == k)
            out[sel] = self.target.mult(prev[src[sel]], int(k), j - 1)
        return out

    def matrix(self, j):
        m = self.mats.get(j)
        if m is not None:
            return m
        if not any(d <= j for d in self.free.degs):
            m = np.zeros((0, self.target.dim(j)))
        else:
            m = self._extend(j)
            if j in self.new:
                m = np.vstack([m, self.new[j]])
        self.mats[j] = m
        return m

    def forget_below(self, j):
        for k in [k for k in self.mats if k < j]:
            del self.mats[k]


def _euler_kernel_dim(columns, M, i, j):
    """dim ker((F_{i-1})_j -> (F_{i-2})_j) from exactness of the computed part."""
    total = 0
    for k in range(i):
        total += (-1) ** (i - 1 - k) * columns[k].free.dim(j)
    total += (-1) ** i * M.dim(j)
    return total


def default_degree_cutoff(N: int, top_generator_degree) -> int:
    top = 0 if top_generator_degree is NEG_INF else top_generator_degree
    return 3 * N + top


def _resolve_linear(M: GradedModule, N: int, D: int, keep_maps: bool):
    ring = M.ring
    p = ring.p
    entries = {}
    flags = []
    columns = []
    rho = ring.reg_bound
    prev_bound = None
    truncated_before = False
    stop = False
    for i in range(N + 1):
        if stop:
            flags.append(truncated_before)
            continue
        target = _ModTarget(M) if i == 0 else columns[i - 1].free
        target_col = columns[i - 1] if i else None
        col = _Column(ring, target if i else _ModTarget(M))
        columns.append(col)
        if i == 0:
            if M.low is None:
                flags.append(False)
                stop = True
                continue
            lo = M.low
            bound = M.gen_bound
        else:
            lower = columns[i - 1].free.degs
            if not lower:
                flags.append(truncated_before)
                stop = True
                continue
            lo = min(lower) + 1
            if truncated_before:
                bound = None
            else:
                t_prev = max(lower)
                if i == 1:
                    bound = max(t_prev + rho, M.reg_bound + 1)
                else:
                    bound = syzygy_degree_bound(prev_bound, t_prev, rho)
        hi = D if bound is None else min(D, bound)
        col_trunc = truncated_before or bound is None or bound > D
        for j in range(lo, hi + 1):
            im = col.matrix(j) if col.free.degs else np.zeros((0, target.dim(j)))
            if i == 0:
                zdim = M.dim(j)
            else:
                zdim = _euler_kernel_dim(columns, M, i, j)
            rk = rank(im, p) if im.shape[0] else 0
            count = zdim - rk
            if count < 0:
                raise ResolutionError(f"negative generator count at ({i}, {j})")
            if count == 0:
                continue
            entries[(i, j)] = count
            need_vectors = i < N or j < hi or keep_maps
            if need_vectors:
                if i == 0:
                    z = np.eye(zdim)
                else:
                    z = left_kernel(target_col.matrix(j), p)
                    if z.shape[0] != zdim:
                        raise ResolutionError(f"kernel dimension mismatch at ({i}, {j})")
                new = complement_rows(im, z, p)
                if new.shape[0] != count:
                    raise ResolutionError(f"complement dimension mismatch at ({i}, {j})")
                col.new[j] = new
                col.mats.pop(j, None)
            col.free.add(j, count)
        flags.append(col_trunc)
        truncated_before = col_trunc
        if i >= 1:
            prev_bound = bound if bound is not None else prev_bound
            if not keep_maps and i >= 2:
                columns[i - 2].mats.clear()
        else:
            prev_bound = None
    table = BettiTable(entries, N, D, tuple(flags))
    slice_ = _slice_from_columns(ring, columns, N) if keep_maps else None
    return slice_, table


def _slice_from_columns(ring, columns, N):
    shifts = [list(c.free.degs) for c in columns]
    while len(shifts) < N + 1:
        shifts.append([])
    diffs = [None]
    augmentation = []
    for i, col in enumerate(columns):
        gens = []
        for j in sorted(col.new):
            for row in col.new[j]:
                gens.append((j, row))
        if i == 0:
            augmentation = [(j, row.astype(np.int64).tolist()) for j, row in gens]
            continue
        lower = columns[i - 1].free.degs
        mat = []
        for j, row in gens:
            entries = []
            a = 0
            for d in lower:
                n = ring.hilbert(j - d)
                entries.append(ring.polynomial(row[a:a + n], j - d) if n else ring.poly_ring.zero())
                a += n
            mat.append(entries)
        diffs.append(mat)
    while len(diffs) < N + 1:
        diffs.append([])
    return ResolutionSlice(ring, shifts, diffs, augmentation)


def _resolve_groebner(pres: ModulePresentation, N: int, D: int):
    """Minimal resolution by lifting syzygies over R.  Requires minimal generators."""
    ring = pres.ring
    S = ring.poly_ring
    for v in pres.relations:
        if any(sum(e) == 0 for (_, e) in v.coeffs):
            raise ValueError("the Gröbner route needs a presentation with minimal generators")
    gb_I = ring.gb
    entries = {}
    flags = []
    degs0 = list(pres.degrees)
    shifts = [sorted(degs0)]
    for d in degs0:
        entries[(0, d)] = entries.get((0, d), 0) + 1
    flags.append(False)
    free = GradedFreeModule(S, pres.degrees)
    current = Submodule(free, [FreeVector(free, v.coeffs) for v in pres.relations])
    diffs = [None]
    truncated = False
    for i in range(1, N + 1):
        mins = minimal_generators(current, gb_I)
        gens = [g for g in mins.generators if g.degree <= D]
        truncated = truncated or current.truncated or len(gens) < len(mins.generators)
        for g in gens:
            entries[(i, g.degree)] = entries.get((i, g.degree), 0) + 1
        flags.append(truncated)
        shifts.append([g.degree for g in gens])
        diffs.append([[ring.reduce(c) for c in g.components()] for g in gens])
        if not gens:
            flags.extend([truncated] * (N - i))
            shifts.extend([[]] * (N - i))
            diffs.extend([[]] * (N - i))
            break
        if i == N:
            break
        current = syzygy_module(gens, ring.gb_polys, degree_cap=D)
    table = BettiTable(entries, N, D, tuple(flags))
    return ResolutionSlice(ring, shifts, diffs), table


def resolve_minimal(M, N: int = DEFAULT_N, D: int | None = None, method: str = "linear",
                    keep_maps: bool = False):
    """Minimal free resolution of M up to homological degree N and internal degree D.

    Returns ``(ResolutionSlice or None, BettiTable)``; the slice is built
    when ``keep_maps`` is set or for the Gröbner route.
    """
    if N < 0:
        raise ValueError("N must be non-negative")
    if method == "groebner":
        if not isinstance(M, ModulePresentation):
            raise TypeError("the Gröbner route needs a ModulePresentation")
        if D is None:
            D = default_degree_cutoff(N, max(M.degrees, default=0))
        return _resolve_groebner(M, N, D)
    if method != "linear":
        raise ValueError(f"unknown method {method!r}")
    G = as_graded_module(M)
    if D is None:
        D = default_degree_cutoff(N, G.gen_bound)
    if G.low is not None and D < G.low:
        raise ValueError(f"degree cutoff {D} is below the lowest degree {G.low} of the module")
    return _resolve_linear(G, N, D, keep_maps)


# ------------------------------------------------------------- invariants

def t_values(B: BettiTable):
    return [B.t(i) for i in range(B.N + 1)]


def regularity_truncated(B: BettiTable):
    """max_i t_i - i over the window (NEG_INF for the zero module)."""
    return xmax(t - i for i, t in enumerate(t_values(B)) if t is not NEG_INF)


def rate_truncated(B: BettiTable):
    """max_{1<=i<=N} t_i / i as a Fraction, or NEG_INF."""
    if B.N < 1:
        raise ValueError("rate needs N >= 1")
    return xmax(Fraction(t, i) for i, t in enumerate(t_values(B)) if i >= 1 and t is not NEG_INF)


@dataclass
class RatResult:
    value: object
    N: int
    D: int
    lower_bound: bool
    betti: BettiTable


def rat_from_residue_table(B: BettiTable):
    """max_{2<=i<=N_B} (t_i(K) - 1)/(i - 1) from the Betti table of K."""
    vals = []
    for i in range(2, B.N + 1):
        t = B.t(i)
        if t is not NEG_INF:
            vals.append(Fraction(t - 1, i - 1))
    return xmax(vals)


def rat_of_ring(R: RingPresentation, N: int = DEFAULT_N, D: int | None = None) -> RatResult:
    """Backelin rate over the window: resolve K to N + 1 and take max (t_i - 1)/(i - 1)."""
    if N < 1:
        raise ValueError("rat needs N >= 1")
    K = residue_field_module(R)
    if D is None:
        D = default_degree_cutoff(N + 1, 0)
    _, B = resolve_minimal(K, N + 1, D)
    return RatResult(rat_from_residue_table(B), N, D, B.any_truncated, B)


def betti_text(B: BettiTable) -> str:
    """Conventional Betti diagram: row j - i, column i, '.' for zero, then totals."""
    cols = list(range(B.N + 1))
    rows = sorted({j - i for (i, j) in B.entries})
    head = ["", *[str(i) for i in cols]]
    grid = []
    for r in rows:
        line = [f"{r}:"]
        for i in cols:
            c = B.entries.get((i, i + r), 0)
            line.append(str(c) if c else ".")
        grid.append(line)
    total = ["total:", *[str(B.betti(i)) for i in cols]]
    table = [head] + grid + [total]
    w0 = max(len(r[0]) for r in table)
    widths = [max(len(r[k]) for r in table) for k in range(1, len(cols) + 1)]
    out = []
    for r in table:
        cells = [r[0].rjust(w0)] + [r[k + 1].rjust(widths[k]) for k in range(len(cols))]
        out.append(" ".join(cells).rstrip())
    flags = B.truncated_columns()
    out.append(f"cutoffs: N={B.N} D={B.D}")
    out.append("truncated columns: " + (", ".join(map(str, flags)) if flags else "none"))
    return "\n".join(out)
