"""Linear algebra over F_p.

Dense routines work on numpy arrays holding residues in ``[0, p)``.  Matrix
products run in float64 (exact while every partial sum stays below 2^53);
large primes are handled by splitting the right operand into 16-bit halves.
Row reduction is blocked: pivots are found on a narrow panel and the
trailing columns are updated with one matrix product per panel.
"""

from __future__ import annotations

import numpy as np

from .field import inverse

_EXACT = float(2**53)
PANEL = 96


def as_residues(a, p: int) -> np.ndarray:
    return np.mod(np.asarray(a, dtype=np.int64), p)


def _inner_chunk(p: int) -> int:
    return max(1, int(_EXACT // float(p - 1) ** 2) - 1)


def matmul_mod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """(a @ b) mod p for residue matrices; returns float64 residues."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape[1] == 0:
        return np.zeros((a.shape[0], b.shape[1]))
    if float(p - 1) ** 2 * min(a.shape[1], 64) >= _EXACT:
        lo = np.fmod(b, 65536.0)
        hi = (b - lo) / 65536.0
        return np.fmod(np.fmod(matmul_mod(a, hi, p) * 65536.0, p) + matmul_mod(a, lo, p), p)
    chunk = _inner_chunk(p)
    k = a.shape[1]
    if k <= chunk:
        return np.fmod(a @ b, p)
    out = np.zeros((a.shape[0], b.shape[1]))
    for s in range(0, k, chunk):
        out = np.fmod(out + np.fmod(a[:, s:s + chunk] @ b[s:s + chunk], p), p)
    return out


def _panel_pivots(panel: np.ndarray, p: int):
    """Greedy pivot (row, col) pairs of a narrow residue panel."""
    a = np.array(panel, dtype=np.int64)
    h, w = a.shape
    order = np.arange(h)
    prow, pcol = [], []
    r = 0
    for c in range(w):
        if r >= h:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        k = r + nz[0]
        if k != r:
            a[[r, k]] = a[[k, r]]
            order[[r, k]] = order[[k, r]]
        a[r] = (a[r] * inverse(int(a[r, c]), p)) % p
        below = np.flatnonzero(a[r + 1:, c]) + r + 1
        if below.size:
            a[below] = (a[below] - np.outer(a[below, c], a[r])) % p
        prow.append(int(order[r]))
        pcol.append(c)
        r += 1
    return prow, pcol


def inverse_mod(q: np.ndarray, p: int) -> np.ndarray:
    k = q.shape[0]
    a = np.concatenate([as_residues(q, p), np.eye(k, dtype=np.int64)], axis=1)
    for c in range(k):
        nz = np.flatnonzero(a[c:, c])
        if nz.size == 0:
            raise ZeroDivisionError("singular matrix")
        r = c + nz[0]
        if r != c:
            a[[c, r]] = a[[r, c]]
        a[c] = (a[c] * inverse(int(a[c, c]), p)) % p
        col = a[:, c].copy()
        col[c] = 0
        nzr = np.flatnonzero(col)
        if nzr.size:
            a[nzr] = (a[nzr] - np.outer(col[nzr], a[c])) % p
    return a[:, k:]


def rref(a, p: int, reduced: bool = True):
    """Row echelon form of a residue matrix.

    Returns ``(rows, pivots)``: the nonzero rows (float64 residues, each with
    a 1 in its pivot column) ordered by pivot column, and the list of pivot
    columns.  With ``reduced`` the pivot columns are cleared above the
    pivots as well.  Rows are never moved; finished pivot rows are tracked
    by index.
    """
    a = np.array(a, dtype=np.float64)
    m, n = a.shape
    pivots = []
    done = np.zeros(0, dtype=np.int64)
    active = np.arange(m)
    for cb in range(0, n, PANEL):
        if active.size == 0:
            break
        ce = min(n, cb + PANEL)
        prow, pcol = _panel_pivots(a[active, cb:ce], p)
        if not prow:
            continue
        prow = np.asarray(prow)
        rows = active[prow]
        pcol = np.asarray(pcol) + cb
        qinv = inverse_mod(a[np.ix_(rows, pcol)], p).astype(np.float64)
        piv = matmul_mod(qinv, a[rows, cb:], p)
        a[rows, cb:] = piv
        active = np.delete(active, prow)
        targets = [active, done] if reduced else [active]
        for group in targets:
            if group.size == 0:
                continue
            coef = a[np.ix_(group, pcol)]
            hit = group[np.any(coef != 0, axis=1)]
            if hit.size:
                upd = matmul_mod(a[np.ix_(hit, pcol)], piv, p)
                a[hit, cb:] = np.fmod(a[hit, cb:] - upd + p, p)
        done = np.concatenate([done, rows])
        pivots.extend(int(c) for c in pcol)
    return a[done], pivots


def rank(a, p: int) -> int:
    a = np.asarray(a)
    if a.size == 0:
        return 0
    # fewer columns means fewer panels
    if a.shape[1] > a.shape[0]:
        a = a.T
    return len(rref(a, p, reduced=False)[1])


def left_kernel(a, p: int) -> np.ndarray:
    """Basis (as rows) of {v : v @ a = 0}."""
    a = np.asarray(a, dtype=np.float64)
    m, n = a.shape
    if n == 0 or m == 0:
        return np.eye(m)
    rows, piv = rref(a.T, p)
    free = np.setdiff1d(np.arange(m), piv)
    ker = np.zeros((free.size, m))
    ker[np.arange(free.size), free] = 1.0
    if piv:
        ker[:, piv] = np.fmod(p - rows[:, free].T, p)
    return ker


def complement_rows(span, candidates, p: int) -> np.ndarray:
    """Rows spanning span(candidates) modulo span(span), in reduced form."""
    candidates = np.asarray(candidates, dtype=np.float64)
    if candidates.shape[0] == 0:
        return candidates
    span = np.asarray(span, dtype=np.float64)
    if span.shape[0]:
        basis, piv = rref(span, p)
        if piv:
            coef = candidates[:, piv]
            candidates = np.fmod(candidates - matmul_mod(coef, basis, p) + p, p)
    keep = np.any(candidates != 0, axis=1)
    if not keep.any():
        return candidates[:0]
    rows, _ = rref(candidates[keep], p)
    return rows


class SparseEchelon:
    """Incremental echelon basis of sparse vectors (dicts column -> value).

    ``column_key`` orders columns; the pivot of a vector is its largest
    column.  Used for small graded-piece computations on dict data.
    """

    def __init__(self, p: int, column_key=None):
        self.p = p
        self.key = column_key or (lambda c: c)
        self.rows = {}

    def __len__(self):
        return len(self.rows)

    def reduce(self, vec: dict) -> dict:
        p = self.p
        v = {c: x % p for c, x in vec.items() if x % p}
        while v:
            piv = max(v, key=self.key)
            row = self.rows.get(piv)
            if row is None:
                return v
            f = v[piv]
            for c, x in row.items():
                y = (v.get(c, 0) - f * x) % p
                if y:
                    v[c] = y
                else:
                    v.pop(c, None)
        return v

    def add(self, vec: dict) -> bool:
        """Insert vec; return True when it was independent."""
        v = self.reduce(vec)
        if not v:
            return False
        piv = max(v, key=self.key)
        inv = inverse(v[piv], self.p)
        self.rows[piv] = {c: x * inv % self.p for c, x in v.items()}
        return True

    def contains(self, vec: dict) -> bool:
        return not self.reduce(vec)
