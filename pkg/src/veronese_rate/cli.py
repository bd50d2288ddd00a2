"""Command-line entry point: ``veronese-rate COMMAND [flags]``.

Exit codes: 0 success, 2 violation, 3 inconclusive or truncated under
``--strict``, 64 bad usage, 65 malformed input, 66 unreadable input.
"""

from __future__ import annotations

import argparse
import json
import sys

from .bounds import (DEFAULT_CHECK_N, EXIT_INCONCLUSIVE, EXIT_OK, INEQUALITIES, Checker, CorpusCase,
                     corpus_run)
from .extended import to_json
from .resolution import (DEFAULT_N, betti_text, rat_of_ring, rate_truncated, resolve_minimal,
                         t_values)
from .spec_format import ParseError, parse_corpus, parse_session
from .veronese import veronese_module, veronese_ring

EXIT_USAGE = 64
EXIT_DATAERR = 65
EXIT_NOINPUT = 66


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--input", metavar="PATH", help="session file ('-' for stdin)")
    common.add_argument("--char", type=int, metavar="P", help="override the characteristic")
    common.add_argument("--cutoff-n", type=int, metavar="N", help="homological cutoff")
    common.add_argument("--cutoff-d", type=int, metavar="D", help="internal degree cutoff")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--strict", action="store_true",
                        help="exit 3 when anything is inconclusive or truncated")
    common.add_argument("--raw", action="store_true", help="print Betti numbers as (i, j, count)")
    common.add_argument("--inject-rhs-offset", type=int, default=0, metavar="K",
                        help="subtract K from every right-hand side (harness self-test)")

    p = _Parser(prog="veronese-rate", description="Betti tables, rates and Veronese bounds over F_p.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("resolve", parents=[common], help="Betti diagram of the session module")
    sub.add_parser("rate", parents=[common], help="truncated rate of the session module")
    sub.add_parser("rat", parents=[common], help="truncated Backelin rate of the ring")
    v = sub.add_parser("veronese-ring", parents=[common], help="presentation of R^(c)")
    v.add_argument("--c", type=int, required=True)
    v = sub.add_parser("veronese-module", parents=[common], help="presentation of M^(c,d)")
    v.add_argument("--c", type=int, required=True)
    v.add_argument("--d", type=int, required=True)
    v = sub.add_parser("check", parents=[common], help="evaluate one inequality")
    v.add_argument("--ineq", required=True, choices=INEQUALITIES)
    v.add_argument("--c", type=int, default=1)
    v.add_argument("--s", type=int, default=1)
    v.add_argument("--d", type=int, default=0)
    v = sub.add_parser("corpus", parents=[common], help="run every check in a corpus file")
    v.add_argument("--file", required=True, metavar="PATH")
    return p


def _read(path):
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise FileNotFoundError(f"cannot read {path}: {exc.strerror}") from None


def _session(args):
    if not args.input:
        raise UsageError("--input is required for this command")
    spec, _ = parse_session(_read(args.input))
    if args.char is not None:
        spec.char = args.char
    return spec


def _cutoffs(args, spec, default_n):
    N = args.cutoff_n if args.cutoff_n is not None else spec.cutoffs.get("N", default_n)
    D = args.cutoff_d if args.cutoff_d is not None else spec.cutoffs.get("D")
    if N < 0 or (D is not None and D < 0):
        raise UsageError("cutoffs must be non-negative")
    return N, D


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def _table_out(args, B, extra=None):
    if args.format == "json":
        return _dump({**B.to_dict(), **(extra or {})})
    body = B.raw() if args.raw else betti_text(B)
    if extra:
        body += "\n" + "\n".join(f"{k}: {v}" for k, v in extra.items())
    return body


def _strict_code(args, truncated: bool) -> int:
    return EXIT_INCONCLUSIVE if args.strict and truncated else EXIT_OK


def cmd_resolve(args, out):
    spec = _session(args)
    R = spec.ring()
    M = spec.module(R)
    N, D = _cutoffs(args, spec, DEFAULT_N)
    _, B = resolve_minimal(M, N, D)
    out(_table_out(args, B))
    return _strict_code(args, B.any_truncated)


def cmd_rate(args, out):
    spec = _session(args)
    R = spec.ring()
    M = spec.module(R)
    N, D = _cutoffs(args, spec, DEFAULT_N)
    if N < 1:
        raise UsageError("rate needs --cutoff-n >= 1")
    _, B = resolve_minimal(M, N, D)
    rate = rate_truncated(B)
    if args.format == "json":
        out(_dump({"rate_trunc": to_json(rate), "t": [to_json(t) for t in t_values(B)],
                   "cutoffs": {"N": N, "D": B.D}, "truncated_columns": B.truncated_columns()}))
    else:
        out(str(rate))
    return _strict_code(args, B.any_truncated)


def cmd_rat(args, out):
    spec = _session(args)
    R = spec.ring()
    N, D = _cutoffs(args, spec, DEFAULT_N)
    if N < 1:
        raise UsageError("rat needs --cutoff-n >= 1")
    res = rat_of_ring(R, N, D)
    if args.format == "json":
        out(_dump({"rat_trunc": to_json(res.value), "t": [to_json(t) for t in t_values(res.betti)],
                   "cutoffs": {"N": N, "D": res.D}, "lower_bound": res.lower_bound}))
    else:
        out(str(res.value))
    return _strict_code(args, res.lower_bound)


def _check_c(c):
    if c < 1:
        raise UsageError("--c must be at least 1")


def cmd_veronese_ring(args, out):
    _check_c(args.c)
    spec = _session(args)
    R = spec.ring()
    vm = veronese_ring(R, args.c)
    T = vm.target
    gens = [str(f) for f in T.minimal_ideal_generators]
    if args.format == "json":
        out(_dump({"c": args.c, "variables": len(T.names), "assignment": vm.assignment(),
                   "ideal": gens, "degrees": [f.degree for f in T.minimal_ideal_generators],
                   "elimination_cap": vm.degree_cap, "truncated": vm.truncated,
                   "hilbert_verified_upto": vm.verified_upto}))
    else:
        lines = [f"variables: {len(T.names)}"]
        lines += [f"  {y} -> {x}" for y, x in vm.assignment()]
        lines.append(f"ideal: {len(gens)} generators")
        lines += [f"  {g}" for g in gens]
        lines.append(f"hilbert identity verified up to degree {vm.verified_upto}")
        if vm.truncated:
            lines.append("truncated: elimination stopped at the degree cap")
        out("\n".join(lines))
    return _strict_code(args, vm.truncated)


def cmd_veronese_module(args, out):
    _check_c(args.c)
    if not 0 <= args.d < args.c:
        raise UsageError("--d must lie in [0, c - 1]")
    spec = _session(args)
    R = spec.ring()
    M = spec.module(R)
    if M.ring != R:
        raise UsageError("the session module must live over the session ring")
    vm = veronese_ring(R, args.c)
    P = veronese_module(M, vm, args.d, spec.cutoffs.get("G"))
    rels = [str(v) for v in P.relations]
    trunc = bool(P.params.get("truncated"))
    if args.format == "json":
        out(_dump({"c": args.c, "d": args.d, "ring_variables": list(vm.target.names),
                   "generator_degrees": list(P.shifts), "relations": rels, "truncated": trunc}))
    else:
        lines = [f"ring: {len(vm.target.names)} variables ({', '.join(vm.target.names)})",
                 f"generators: {len(P.shifts)} in degrees {list(P.shifts)}",
                 f"relations: {len(rels)}"]
        lines += [f"  {r}" for r in rels]
        out("\n".join(lines))
    return _strict_code(args, trunc)


def cmd_check(args, out):
    _check_c(args.c)
    spec = _session(args)
    R = spec.ring()
    M = spec.module(R)
    if M.ring != R:
        M = None
    N, D = _cutoffs(args, spec, DEFAULT_CHECK_N)
    checker = Checker(N, D)
    case = CorpusCase("input", R, M, [(args.ineq, {"c": args.c, "s": args.s, "d": args.d})])
    reports, summary = corpus_run([case], args.strict, args.inject_rhs_offset, checker)
    r = reports[0]
    r.params.pop("case")
    out(_dump(r.to_dict()) if args.format == "json" else r.text())
    return summary["exit_code"]


def cmd_corpus(args, out):
    blocks = parse_corpus(_read(args.file))
    cases = []
    for b in blocks:
        if args.char is not None:
            b.spec.char = args.char
        R = b.spec.ring()
        M = b.spec.module(R)
        cases.append(CorpusCase(b.name, R, M if M.ring == R else None, b.checks, b.inject))
    N = args.cutoff_n if args.cutoff_n is not None else DEFAULT_CHECK_N
    checker = Checker(N, args.cutoff_d)
    reports, summary = corpus_run(cases, args.strict, args.inject_rhs_offset, checker, N, args.cutoff_d)
    if args.format == "json":
        out(_dump({"reports": [r.to_dict() for r in reports], "summary": summary}))
    else:
        lines = [r.text() for r in reports]
        lines.append("summary: " + " ".join(f"{k}={v}" for k, v in summary.items()))
        out("\n".join(lines))
    return summary["exit_code"]


COMMANDS = {
    "resolve": cmd_resolve,
    "rate": cmd_rate,
    "rat": cmd_rat,
    "veronese-ring": cmd_veronese_ring,
    "veronese-module": cmd_veronese_module,
    "check": cmd_check,
    "corpus": cmd_corpus,
}


def run_command(argv, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr

    def out(text):
        stdout.write(text + "\n")

    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return COMMANDS[args.command](args, out)
    except UsageError as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except ParseError as exc:
        stderr.write(f"parse error: {exc}\n")
        return EXIT_DATAERR
    except ValueError as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except FileNotFoundError as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_NOINPUT
    except SystemExit as exc:
        # --help
        return int(exc.code or 0)


def main():
    sys.exit(run_command(sys.argv[1:]))


if __name__ == "__main__":
    main()
