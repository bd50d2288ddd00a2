"""Right-hand sides of the rate inequalities and a checker that evaluates them.

Every left-hand side is a supremum over all homological degrees; the checker
computes it over the window i <= N (and internal degrees <= D).  Each
inequality is local in the homological degree (the bound at n only uses
invariants up to n) so the windowed statement is itself a valid necessary
condition.  Truncation can only lower a computed value, which is what the
verdict logic relies on.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .extended import NEG_INF, ceil_div, to_json, xmax
from .modules import (ModulePresentation, PowerIdealModule, free_module, power_ideal_module,
                      residue_field_module)
from .resolution import (BettiTable, rat_from_residue_table, rate_truncated, regularity_truncated,
                         resolve_minimal, t_values)
from .rings import RingPresentation
from .veronese import veronese_ring, veronese_shift_transform

INF = math.inf
INEQUALITIES = ("mainthm", "mainthm-power", "maxi", "versyz", "backelin", "aramova", "reg-zero",
                "ratineq")
DEFAULT_CHECK_N = 4

EXIT_OK = 0
EXIT_VIOLATION = 2
EXIT_INCONCLUSIVE = 3


# ------------------------------------------------------------ closed forms

def compositions(n: int):
    """Compositions of n into positive parts (all of them, in a fixed order)."""
    if n == 0:
        yield ()
        return
    for first in range(1, n + 1):
        for rest in compositions(n - first):
            yield (first,) + rest


def complex_degree_bound(t_matrix, n: int):
    """max_{0<=i<=n} t_{n-i}(L_i), with minus-infinity neutral.

    ``t_matrix[i]`` is the t-value sequence of the i-th module of the complex;
    missing entries count as minus-infinity.
    """
    vals = []
    for i in range(n + 1):
        if i < len(t_matrix) and n - i < len(t_matrix[i]):
            vals.append(t_matrix[i][n - i])
    return xmax(vals)


def versyz_rhs(n: int, c: int, t) -> int:
    """max over compositions alpha of n of sum_j ceil(t_{alpha_j}(m(1)) / c).

    Zero parts contribute ceil(0/c) = 0, so positive compositions suffice.
    """
    if c < 1:
        raise ValueError("c must be at least 1")
    if not t or t[0] != 0:
        raise ValueError("m(1) must be generated in degree zero: t[0] = 0 required")
    if n == 0:
        return 0
    if len(t) <= n:
        raise ValueError(f"need t-values up to {n}")
    best = None
    for alpha in compositions(n):
        total = 0
        for a in alpha:
            if t[a] is NEG_INF:
                raise ArithmeticError(f"t_{a}(m(1)) is minus infinity; its ceiling is undefined")
            total += ceil_div(t[a], c)
        best = total if best is None else max(best, total)
    return best


def mainthm_rhs(rate_M, rat_R, t0, c: int):
    """ceil(max{rate_R(M), rat(R)} / c) + max{0, ceil(t_0(M) / c)}."""
    top = xmax([rate_M, rat_R])
    if top is NEG_INF:
        raise ArithmeticError("both rates are minus infinity")
    return ceil_div(top, c) + max(0, ceil_div(t0, c))


def backelin_rhs(rat_R, c: int) -> int:
    return ceil_div(rat_R, c)


def aramova_rhs(rate_M, c: int) -> int:
    """max{ceil(rate_R(M) / c), 1}; a minus-infinity rate leaves 1."""
    if rate_M is NEG_INF:
        return 1
    return max(ceil_div(rate_M, c), 1)


def surjection_rate_rhs(rate_S_M, rate_S_R, t0):
    """max{rate_S(M), rate_S(R)} + max{0, t_0^S(M)}."""
    top = xmax([rate_S_M, rate_S_R])
    if top is NEG_INF:
        return NEG_INF
    return top + max(0, t0)


# ----------------------------------------------------------------- reports

@dataclass
class BoundReport:
    inequality: str
    params: dict
    lhs: object
    rhs: object
    verdict: str
    slack: object
    cutoffs: dict
    flags: list = field(default_factory=list)

    def to_dict(self) -> dict:
        def enc(x):
            if isinstance(x, (list, tuple)):
                return [enc(v) for v in x]
            return to_json(x)
        return {
            "inequality": self.inequality,
            "params": dict(sorted(self.params.items())),
            "lhs": enc(self.lhs),
            "rhs": enc(self.rhs),
            "verdict": self.verdict,
            "slack": enc(self.slack),
            "cutoffs": self.cutoffs,
            "flags": sorted(self.flags),
        }

    def text(self) -> str:
        d = self.to_dict()
        params = " ".join(f"{k}={v}" for k, v in d["params"].items())
        flags = ",".join(d["flags"]) or "-"
        cut = " ".join(f"{k}={v}" for k, v in d["cutoffs"].items())
        return (f"{self.inequality} [{params}] lhs={_fmt(d['lhs'])} rhs={_fmt(d['rhs'])} "
                f"verdict={self.verdict} slack={_fmt(d['slack'])} cutoffs[{cut}] flags={flags}")


def _fmt(x):
    if isinstance(x, list):
        return "(" + ",".join(_fmt(v) for v in x) + ")"
    return str(x)


def _sub(a, b):
    if a is NEG_INF:
        return NEG_INF
    if b is NEG_INF:
        return INF
    return a - b


def verdict(lhs, rhs, lhs_truncated: bool, rhs_truncated: bool):
    """(verdict, slack) for a scalar comparison lhs <= rhs.

    Truncated columns can only make the computed lhs smaller, so lhs > rhs is
    a genuine violation unless the rhs itself came from truncated data.
    """
    if lhs is NEG_INF:
        return ("inconclusive" if lhs_truncated else "satisfied"), INF
    exceeds = rhs is NEG_INF or lhs > rhs
    slack = _sub(rhs, lhs)
    if exceeds:
        return ("inconclusive" if rhs_truncated else "violated"), slack
    return ("inconclusive" if lhs_truncated else "satisfied"), slack


def sequence_verdict(lhs, rhs, lhs_truncated: bool, rhs_truncated: bool):
    """Pointwise comparison; the slack is the smallest pointwise slack."""
    order = {"violated": 2, "inconclusive": 1, "satisfied": 0}
    worst, slack = "satisfied", INF
    for a, b in zip(lhs, rhs):
        v, s = verdict(a, b, lhs_truncated, rhs_truncated)
        if order[v] > order[worst]:
            worst = v
        if s is NEG_INF or (slack is not NEG_INF and s < slack):
            slack = s
    return worst, slack


def _offset(rhs, k):
    if not k:
        return rhs
    if isinstance(rhs, list):
        return [_offset(x, k) for x in rhs]
    return rhs if rhs is NEG_INF else rhs - k


# ----------------------------------------------------------------- checker

def module_key(M: ModulePresentation):
    rels = tuple(str(v) for v in M.relations)
    return (M.kind, tuple(sorted((k, v) for k, v in M.params.items() if k != "truncated")),
            M.shifts, M.twist, rels)


def canonical_piece(M: ModulePresentation, c: int, d: int):
    """(k, q, shift) with M^(c,d) = ((R^(c,k))_{>=q}(q))(-shift), or None.

    Free modules R(-j) go through the shift transform; for m^s(s) write
    d + s = qc + k, so the piece is sum_{i>=0} R_{(i+q)c+k}.
    """
    if M.twist == 0 and not M.relations and len(M.shifts) == 1:
        k, i = veronese_shift_transform(M.shifts[0], c, d)
        return k, 0, i
    if M.kind == "power":
        q, k = divmod(d + M.params["s"], c)
        return k, q, 0
    return None


class Checker:
    """Evaluates inequalities, caching Veronese maps and Betti tables."""

    def __init__(self, N: int = DEFAULT_CHECK_N, D: int | None = None):
        self.N = N
        self.D = D
        self._vm = {}
        self._tables = {}

    def vmap(self, R: RingPresentation, c: int):
        key = (R, c)
        if key not in self._vm:
            self._vm[key] = veronese_ring(R, c)
        return self._vm[key]

    def _table(self, key, build, N):
        k = key + (N, self.D)
        if k not in self._tables:
            _, B = resolve_minimal(build(), N, self.D)
            self._tables[k] = B
        return self._tables[k]

    def over_ring(self, R, M, N=None) -> BettiTable:
        N = self.N if N is None else N
        return self._table(("R", R, module_key(M)), lambda: M, N)

    def over_cover(self, R, M, N=None) -> BettiTable:
        N = self.N if N is None else N
        return self._table(("S", R, module_key(M)), lambda: M.graded().over_cover(), N)

    def piece(self, R, M, c, d, N=None) -> BettiTable:
        """Betti table of M^(c,d) over R^(c).

        Pieces of free modules and of powers of m are all of the form
        (R^(c,k))_{>=q} up to a shift, so they share one cached table.
        """
        N = self.N if N is None else N
        vm = self.vmap(R, c)
        canon = canonical_piece(M, c, d)
        if canon is None:
            return self._table(("V", R, module_key(M), c, d), lambda: vm.piece(M, d), N)
        k, q, shift = canon
        if q == 0:
            build = lambda: vm.piece(free_module(R, 0), k)  # noqa: E731
        else:
            build = lambda: vm.piece(PowerIdealModule(R, q * c + k), 0)  # noqa: E731
        B = self._table(("P", R, c, k, q), build, N)
        return B.shifted(shift) if shift else B

    def pieces(self, R, M, c, N=None):
        return [self.piece(R, M, c, d, N) for d in range(c)]

    def residue_table(self, R, N):
        """Betti table of K over R up to N + 1 (for rat)."""
        return self.over_ring(R, residue_field_module(R), N + 1)

    def rat(self, R, N=None):
        N = self.N if N is None else N
        B = self.residue_table(R, N)
        return rat_from_residue_table(B), B.any_truncated

    def veronese_rat(self, R, c, N=None):
        N = self.N if N is None else N
        vm = self.vmap(R, c)
        K = residue_field_module(R)
        B = self._table(("V", R, module_key(K), c, 0), lambda: vm.piece(K, 0), N + 1)
        return rat_from_residue_table(B), B.any_truncated

    def m1_t(self, R, N=None):
        N = self.N if N is None else N
        B = self.over_ring(R, power_ideal_module(R, 1), N)
        return t_values(B), B.any_truncated

    # -------------------------------------------------------------- checks
    def check(self, inequality: str, R: RingPresentation, M: ModulePresentation | None = None,
              c: int = 1, s: int = 1, d: int = 0, N: int | None = None, rhs_offset: int = 0) -> BoundReport:
        N = self.N if N is None else N
        if inequality not in INEQUALITIES:
            raise ValueError(f"unknown inequality {inequality!r}; expected one of {', '.join(INEQUALITIES)}")
        if c < 1:
            raise ValueError("c must be at least 1")
        if M is not None and M.ring != R:
            raise ValueError("module lives over a different ring")
        fn = getattr(self, "_" + inequality.replace("-", "_"))
        params, lhs, rhs, lt, rt, flags, seq = fn(R, M, c, s, d, N)
        if rhs_offset:
            rhs = _offset(rhs, rhs_offset)
            flags = flags + ["rhs-injected"]
        if "vacuous" in flags:
            v, slack = "satisfied", INF
        elif "rhs-undefined" in flags:
            v, slack = "inconclusive", NEG_INF
        elif seq:
            v, slack = sequence_verdict(lhs, rhs, lt, rt)
        else:
            v, slack = verdict(lhs, rhs, lt, rt)
        if lt:
            flags.append("lhs-truncated")
        if rt:
            flags.append("rhs-truncated")
        cut = {"N": N, "D": self.D if self.D is not None else "auto"}
        return BoundReport(inequality, params, lhs, rhs, v, slack, cut, flags)

    def _need(self, M):
        if M is None:
            raise ValueError("this inequality needs a module")
        return M

    def _rate_over_veronese(self, R, M, c, N):
        tables = self.pieces(R, M, c, N)
        return xmax(rate_truncated(B) for B in tables), any(B.any_truncated for B in tables)

    def _mainthm(self, R, M, c, s, d, N):
        M = self._need(M)
        lhs, lt = self._rate_over_veronese(R, M, c, N)
        B = self.over_ring(R, M, N)
        rate_M = rate_truncated(B)
        rat, rat_t = self.rat(R, N)
        t0 = B.t(0)
        flags = []
        if t0 is NEG_INF:
            return {"c": c, "module": M.kind}, lhs, NEG_INF, lt, False, flags, False
        rhs = mainthm_rhs(rate_M, rat, t0, c)
        return {"c": c, "module": M.kind}, lhs, rhs, lt, B.any_truncated or rat_t, flags, False

    def _mainthm_power(self, R, M, c, s, d, N):
        P = power_ideal_module(R, s)
        lhs, lt = self._rate_over_veronese(R, P, c, N)
        rat, rat_t = self.rat(R, N)
        return {"c": c, "s": s}, lhs, backelin_rhs(rat, c), lt, rat_t, [], False

    def _maxi(self, R, M, c, s, d, N):
        B = self.over_ring(R, power_ideal_module(R, s), N)
        lhs = t_values(B)
        rhs, rt = self.m1_t(R, N)
        return {"s": s}, lhs, rhs, B.any_truncated, rt, [], True

    def _versyz(self, R, M, c, s, d, N):
        B = self.piece(R, free_module(R, 0), c, d, N)
        lhs = t_values(B)
        t, rt = self.m1_t(R, N)
        try:
            rhs = [versyz_rhs(n, c, t) for n in range(N + 1)]
        except ArithmeticError:
            return {"c": c, "d": d}, lhs, [], B.any_truncated, rt, ["rhs-undefined"], True
        return {"c": c, "d": d}, lhs, rhs, B.any_truncated, rt, [], True

    def _backelin(self, R, M, c, s, d, N):
        lhs, lt = self.veronese_rat(R, c, N)
        rat, rat_t = self.rat(R, N)
        return {"c": c}, lhs, backelin_rhs(rat, c), lt, rat_t, [], False

    def _aramova(self, R, M, c, s, d, N):
        M = self._need(M)
        params = {"c": c, "module": M.kind}
        rat, rat_t = self.rat(R, N)
        B = self.over_ring(R, M, N)
        G = M.graded()
        flags = []
        if G.low != 0 or B.t(0) != 0:
            flags.append("vacuous")
            flags.append("not-generated-in-degree-zero")
        elif rat is not NEG_INF and c < rat:
            flags.append("vacuous")
        lhs, lt = self._rate_over_veronese(R, M, c, N)
        rhs = aramova_rhs(rate_truncated(B), c)
        return params, lhs, rhs, lt, B.any_truncated or rat_t, flags, False

    def _reg_zero(self, R, M, c, s, d, N):
        rat, rat_t = self.rat(R, N)
        B = self.piece(R, free_module(R, 0), c, d, N)
        flags = []
        if rat is not NEG_INF and c < rat:
            flags.append("vacuous")
        return {"c": c, "d": d}, regularity_truncated(B), 0, B.any_truncated, rat_t, flags, False

    def _ratineq(self, R, M, c, s, d, N):
        M = self._need(M)
        B = self.over_ring(R, M, N)
        BS = self.over_cover(R, M, N)
        BR = self.over_cover(R, free_module(R, 0), N)
        t0 = BS.t(0)
        if t0 is NEG_INF:
            rhs = NEG_INF
        else:
            rhs = surjection_rate_rhs(rate_truncated(BS), rate_truncated(BR), t0)
        return ({"module": M.kind}, rate_truncated(B), rhs, B.any_truncated,
                BS.any_truncated or BR.any_truncated, [], False)


_DEFAULT = None


def check(inequality, R, M=None, c=1, s=1, d=0, N=DEFAULT_CHECK_N, D=None, rhs_offset=0,
          checker: Checker | None = None) -> BoundReport:
    """One-shot check; pass a shared ``checker`` to reuse cached resolutions."""
    checker = checker or Checker(N, D)
    return checker.check(inequality, R, M, c=c, s=s, d=d, N=N, rhs_offset=rhs_offset)


@dataclass
class CorpusCase:
    name: str
    ring: RingPresentation
    module: ModulePresentation | None
    checks: list
    inject: int = 0


def summarize(reports, strict: bool = False) -> dict:
    counts = {"satisfied": 0, "violated": 0, "inconclusive": 0}
    truncated = 0
    for r in reports:
        counts[r.verdict] += 1
        if "lhs-truncated" in r.flags or "rhs-truncated" in r.flags:
            truncated += 1
    if counts["violated"]:
        code = EXIT_VIOLATION
    elif strict and (counts["inconclusive"] or truncated):
        code = EXIT_INCONCLUSIVE
    else:
        code = EXIT_OK
    return {**counts, "truncated": truncated, "total": len(reports), "exit_code": code}


def corpus_run(cases, strict: bool = False, rhs_offset: int = 0, checker: Checker | None = None,
               N: int = DEFAULT_CHECK_N, D=None):
    """Run every case's checks in order.  Returns ``(reports, summary)``."""
    checker = checker or Checker(N, D)
    reports = []
    for case in cases:
        for name, params in case.checks:
            params = dict(params)
            n = params.pop("N", None)
            r = checker.check(name, case.ring, case.module, N=n, rhs_offset=rhs_offset + case.inject,
                              **params)
            r.params = {"case": case.name, **r.params}
            reports.append(r)
    return reports, summarize(reports, strict)
