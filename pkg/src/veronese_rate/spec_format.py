"""Text formats: polynomial expressions, ring/module session files, corpus files.

Polynomial grammar (whitespace is ignored)::

    expr  := sign? term (('+' | '-') term)*
    term  := coeff? ('*'? var ('^' nat)?)*
    coeff := nat
    var   := a declared variable name

Session files are flat ``key = value`` lines; ``#`` starts a comment.
Reserved keys: ``char``, ``vars``, ``ideal``, ``module.kind``, ``module.s``,
``module.c``, ``module.d``, ``module.matrix``, ``module.shifts``, ``twist``,
``cutoffs.N``, ``cutoffs.D``, ``cutoffs.G``.  Corpus files are session
blocks separated by lines of ``---`` and may add ``name``, ``check``
(repeatable) and ``inject``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace

from .field import DEFAULT_PRIME, check_prime
from .polynomial import FreeVector, GradedFreeModule, Polynomial, PolyRing

MODULE_KINDS = ("residue-field", "max-ideal-power", "coker", "veronese-piece")
_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


class ParseError(ValueError):
    """Malformed input; ``offset`` is a byte offset into the source text."""

    def __init__(self, message: str, offset: int = 0, source: str = ""):
        self.message = message
        self.offset = offset
        self.source = source
        super().__init__(f"{message} at offset {offset}")


class _Lexer:
    def __init__(self, text: str):
        self.text = text
        self.i = 0

    def skip(self):
        while self.i < len(self.text) and self.text[self.i].isspace():
            self.i += 1

    def peek(self):
        self.skip()
        return self.text[self.i] if self.i < len(self.text) else ""

    def offset(self) -> int:
        return len(self.text[:self.i].encode("utf-8"))

    def fail(self, msg):
        raise ParseError(msg, self.offset(), self.text)

    def nat(self) -> int:
        self.skip()
        j = self.i
        while j < len(self.text) and self.text[j].isdigit():
            j += 1
        if j == self.i:
            self.fail("expected a natural number")
        v = int(self.text[self.i:j])
        self.i = j
        return v

    def ident(self) -> str:
        self.skip()
        m = _IDENT.match(self.text, self.i)
        if not m:
            self.fail("expected a variable")
        self.i = m.end()
        return m.group()


def parse_polynomial(text: str, ring: PolyRing) -> Polynomial:
    """Parse ``text`` into a Polynomial of ``ring``; coefficients reduce mod p."""
    lx = _Lexer(text)
    if not lx.peek():
        lx.fail("empty expression")
    index = {n: k for k, n in enumerate(ring.names)}
    p = ring.p
    terms = {}
    sign = 1
    if lx.peek() in "+-":
        sign = -1 if lx.peek() == "-" else 1
        lx.i += 1
    while True:
        coeff, exps = _term(lx, index, ring.nvars)
        exps = tuple(exps)
        terms[exps] = (terms.get(exps, 0) + sign * coeff) % p
        ch = lx.peek()
        if not ch:
            break
        if ch not in "+-":
            lx.fail(f"unexpected character {ch!r}")
        sign = -1 if ch == "-" else 1
        lx.i += 1
    return Polynomial(ring, terms)


def _term(lx: _Lexer, index, n):
    coeff = None
    exps = [0] * n
    if lx.peek().isdigit():
        coeff = lx.nat()
    seen_factor = coeff is not None
    while True:
        ch = lx.peek()
        if ch == "*":
            lx.i += 1
            if not (lx.peek().isalpha() or lx.peek() == "_"):
                lx.fail("expected a variable after '*'")
        elif not (ch.isalpha() or ch == "_"):
            break
        start = lx.offset()
        lx.skip()
        name = lx.ident()
        if name not in index:
            raise ParseError(f"unknown variable {name!r}", start, lx.text)
        e = 1
        if lx.peek() == "^":
            lx.i += 1
            if not lx.peek().isdigit():
                lx.fail("malformed exponent")
            e = lx.nat()
        exps[index[name]] += e
        seen_factor = True
    if not seen_factor:
        lx.fail("expected a term")
    return (1 if coeff is None else coeff), exps


# ------------------------------------------------------------ session files

@dataclass
class SessionSpec:
    char: int = DEFAULT_PRIME
    vars: tuple = ()
    ideal: tuple = ()
    module_kind: str = "residue-field"
    module_s: int | None = None
    module_c: int | None = None
    module_d: int | None = None
    module_matrix: tuple = ()
    module_shifts: tuple = ()
    twist: int = 0
    cutoffs: dict = field(default_factory=dict)

    def serialize(self) -> str:
        lines = [f"char = {self.char}", f"vars = {', '.join(self.vars)}"]
        for f in self.ideal:
            lines.append(f"ideal = {f}")
        lines.append(f"module.kind = {self.module_kind}")
        for key, val in (("module.s", self.module_s), ("module.c", self.module_c),
                         ("module.d", self.module_d)):
            if val is not None:
                lines.append(f"{key} = {val}")
        if self.module_matrix:
            lines.append("module.matrix = " + "; ".join(", ".join(r) for r in self.module_matrix))
        if self.module_shifts:
            lines.append("module.shifts = " + ", ".join(str(s) for s in self.module_shifts))
        if self.twist:
            lines.append(f"twist = {self.twist}")
        for k in ("N", "D", "G"):
            if k in self.cutoffs:
                lines.append(f"cutoffs.{k} = {self.cutoffs[k]}")
        return "\n".join(lines) + "\n"

    def ring(self):
        from .rings import RingPresentation
        poly = PolyRing(self.vars, self.char)
        gens = [parse_polynomial(f, poly) for f in self.ideal]
        return RingPresentation(self.vars, gens, self.char)

    def module(self, ring):
        """The module as a ModulePresentation over ``ring``.

        For ``veronese-piece`` the result lives over the presentation of
        R^(c); the VeroneseMap is attached as ``veronese_map``.
        """
        from .modules import ModulePresentation, power_ideal_module, residue_field_module
        kind = self.module_kind
        if kind == "residue-field":
            m = residue_field_module(ring)
        elif kind == "max-ideal-power":
            m = power_ideal_module(ring, self.module_s)
        elif kind == "coker":
            m = _coker(ring, self.module_matrix, self.module_shifts)
        else:
            from .modules import free_module
            from .veronese import veronese_module, veronese_ring
            vm = veronese_ring(ring, self.module_c)
            m = veronese_module(free_module(ring), vm, self.module_d, self.cutoffs.get("G"))
            m.veronese_map = vm
        if self.twist:
            m = ModulePresentation(m.ring, m.shifts, m.relations, m.twist + self.twist, "twisted",
                                   {**m.params, "base": m.kind})
        return m


def _coker(ring, matrix, shifts):
    from .modules import ModulePresentation
    S = ring.poly_ring
    shifts = tuple(shifts) if shifts else (0,) * len(matrix)
    if matrix and len(matrix) != len(shifts):
        raise ParseError("module.shifts must give one shift per matrix row", 0)
    free = GradedFreeModule(S, shifts)
    ncols = len(matrix[0]) if matrix else 0
    if any(len(r) != ncols for r in matrix):
        raise ParseError("module.matrix rows have different lengths", 0)
    rels = []
    for col in range(ncols):
        d = {}
        for row in range(len(matrix)):
            f = parse_polynomial(matrix[row][col], S)
            for e, c in f.coeffs.items():
                d[(row, e)] = c
        v = FreeVector(free, d)
        if not v.is_homogeneous():
            raise ParseError(f"matrix column {col} is not homogeneous for the given shifts", 0)
        rels.append(v)
    return ModulePresentation(ring, shifts, rels, 0, kind="coker")


def _int(key, val, offset):
    try:
        return int(val)
    except ValueError:
        raise ParseError(f"{key} must be an integer", offset) from None


def parse_session(text: str, extra_keys=()) -> tuple:
    """Parse a session block.  Returns ``(SessionSpec, extras)``.

    ``extras`` maps each key in ``extra_keys`` to the list of its values.
    """
    spec = SessionSpec()
    extras = {k: [] for k in extra_keys}
    seen = set()
    pos = 0
    for line in text.splitlines(keepends=True):
        offset = pos
        pos += len(line.encode("utf-8"))
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        if "=" not in body:
            raise ParseError("expected 'key = value'", offset, text)
        key, val = (s.strip() for s in body.split("=", 1))
        voff = offset + len(line.encode("utf-8")[:line.index("=") + 1])
        if key in extras:
            extras[key].append(val)
            continue
        if key != "ideal" and key in seen:
            raise ParseError(f"duplicate key {key!r}", offset, text)
        seen.add(key)
        if key == "char":
            spec.char = _int(key, val, voff)
            try:
                check_prime(spec.char)
            except ValueError as exc:
                raise ParseError(str(exc), voff, text) from None
        elif key == "vars":
            names = tuple(v.strip() for v in val.split(",") if v.strip())
            for n in names:
                if not _IDENT.fullmatch(n):
                    raise ParseError(f"bad variable name {n!r}", voff, text)
            spec.vars = names
        elif key == "ideal":
            spec.ideal += tuple(f.strip() for f in val.split(",") if f.strip())
        elif key == "module.kind":
            if val not in MODULE_KINDS:
                raise ParseError(f"unknown module kind {val!r}", voff, text)
            spec.module_kind = val
        elif key in ("module.s", "module.c", "module.d"):
            setattr(spec, key.replace(".", "_"), _int(key, val, voff))
        elif key == "module.matrix":
            rows = [r for r in val.split(";")]
            spec.module_matrix = tuple(tuple(e.strip() for e in r.split(",")) for r in rows)
        elif key == "module.shifts":
            spec.module_shifts = tuple(_int(key, s.strip(), voff) for s in val.split(",") if s.strip())
        elif key == "twist":
            spec.twist = _int(key, val, voff)
        elif key.startswith("cutoffs.") and key[8:] in ("N", "D", "G"):
            spec.cutoffs[key[8:]] = _int(key, val, voff)
        else:
            raise ParseError(f"unknown key {key!r}", offset, text)
    validate(spec, text)
    return spec, extras


def validate(spec: SessionSpec, text: str = ""):
    """Parse every expression and check homogeneity; raise ParseError otherwise."""
    if not spec.vars and spec.ideal:
        raise ParseError("ideal given without vars", 0, text)
    poly = PolyRing(spec.vars, spec.char)
    for f in spec.ideal:
        try:
            g = parse_polynomial(f, poly)
        except ParseError as exc:
            raise ParseError(f"in ideal generator {f!r}: {exc.message}", _locate(text, f) + exc.offset,
                             text) from None
        if not g.is_homogeneous():
            raise ParseError(f"ideal generator {f!r} is not homogeneous", _locate(text, f), text)
        if not g.is_zero() and g.degree < 2:
            raise ParseError(f"ideal generator {f!r} has degree below 2", _locate(text, f), text)
    kind = spec.module_kind
    if kind == "max-ideal-power" and (spec.module_s is None or spec.module_s < 1):
        raise ParseError("max-ideal-power needs module.s >= 1", 0, text)
    if kind == "veronese-piece":
        if spec.module_c is None or spec.module_c < 1:
            raise ParseError("veronese-piece needs module.c >= 1", 0, text)
        d = spec.module_d if spec.module_d is not None else 0
        if not 0 <= d < spec.module_c:
            raise ParseError("module.d must lie in [0, c - 1]", 0, text)
        spec.module_d = d
    if kind == "coker":
        for row in spec.module_matrix:
            for e in row:
                try:
                    parse_polynomial(e, poly)
                except ParseError as exc:
                    raise ParseError(f"in matrix entry {e!r}: {exc.message}", _locate(text, e) + exc.offset,
                                     text) from None


def _locate(text: str, frag: str) -> int:
    i = text.find(frag) if text else -1
    return len(text[:i].encode("utf-8")) if i >= 0 else 0


# ------------------------------------------------------------- corpus files

@dataclass
class CorpusBlock:
    name: str
    spec: SessionSpec
    checks: list
    inject: int = 0


def parse_check(text: str):
    """'mainthm c=2 s=1' -> ('mainthm', {'c': 2, 's': 1})."""
    parts = text.split()
    if not parts:
        raise ParseError("empty check", 0, text)
    params = {}
    for item in parts[1:]:
        if "=" not in item:
            raise ParseError(f"bad check parameter {item!r}", text.find(item), text)
        k, v = item.split("=", 1)
        try:
            params[k] = int(v)
        except ValueError:
            raise ParseError(f"check parameter {k} must be an integer", text.find(item), text) from None
    return parts[0], params


def parse_corpus(text: str):
    blocks = []
    chunks = re.split(r"(?m)^---\s*$", text)
    offset = 0
    for n, chunk in enumerate(chunks):
        if not chunk.strip():
            offset += len(chunk.encode("utf-8")) + 4
            continue
        try:
            spec, extras = parse_session(chunk, extra_keys=("name", "check", "inject"))
        except ParseError as exc:
            raise ParseError(exc.message, offset + exc.offset, text) from None
        name = extras["name"][0] if extras["name"] else f"case{n}"
        checks = [parse_check(c) for c in extras["check"]]
        inject = int(extras["inject"][0]) if extras["inject"] else 0
        blocks.append(CorpusBlock(name, spec, checks, inject))
        offset += len(chunk.encode("utf-8")) + 4
    return blocks


def with_cutoffs(spec: SessionSpec, **kw) -> SessionSpec:
    cut = dict(spec.cutoffs)
    cut.update({k: v for k, v in kw.items() if v is not None})
    return replace(spec, cutoffs=cut)
