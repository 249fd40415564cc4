"""Text grammar for polynomials and germ-description files.

Polynomials use ``^`` (or ``**``) for powers; ``*`` is optional between
factors, so ``2x y^2`` and ``2*x*y^2`` are the same.  Division is allowed by
nonzero constants only.

A germ file is a sequence of ``;``-terminated statements::

    # a 4 -> 3 map followed by a 3 -> 2 map
    vars x y u v;
    map F : 4 -> 3 = [(x^2+y^2)*(1+u), (x^2+y^2)*v, u^2+v^2];
    vars r s t;
    map G : 3 -> 2 = [r, s];
    stratum of G : closure [r] minus [r, s] rank 1;
    flag assert-locally-open;

Each ``vars`` statement sets the variables for the maps that follow it.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .poly import QQ, Polynomial

__all__ = [
    "GermSyntaxError",
    "GermArityError",
    "UnknownVariableError",
    "parse_polynomial",
    "format_polynomial",
    "GermFile",
    "StratumSpec",
    "parse_germ_file",
    "format_germ_file",
]


class GermSyntaxError(ValueError):
    """Malformed input; carries 1-based line and column."""

    def __init__(self, message, line=None, col=None):
        where = f" at line {line}, column {col}" if line is not None else ""
        super().__init__(f"{message}{where}")
        self.line = line
        self.col = col


class GermArityError(GermSyntaxError):
    """Declared dimensions disagree with the given components or variables."""


class UnknownVariableError(GermSyntaxError):
    """A polynomial mentions a variable that is not declared."""


_TOKEN = re.compile(
    r"""
    (?P<ws>[ \t\r\n]+)
  | (?P<comment>\#[^\n]*)
  | (?P<num>\d+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<arrow>->)
  | (?P<pow>\*\*|\^)
  | (?P<op>[-+*/()\[\],;:=])
    """,
    re.VERBOSE,
)


@dataclass
class Token:
    kind: str
    text: str
    line: int
    col: int


def tokenize(text):
    tokens = []
    pos = 0
    line, line_start = 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise GermSyntaxError(
                f"unexpected character {text[pos]!r}", line, pos - line_start + 1
            )
        kind = m.lastgroup
        chunk = m.group()
        if kind not in ("ws", "comment"):
            tokens.append(Token(kind, chunk, line, pos - line_start + 1))
        for i, ch in enumerate(chunk):
            if ch == "\n":
                line += 1
                line_start = pos + i + 1
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


class _Parser:
    def __init__(self, text):
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def tok(self):
        return self.tokens[self.i]

    def advance(self):
        t = self.tokens[self.i]
        self.i += 1
        return t

    def error(self, message, tok=None, cls=GermSyntaxError):
        tok = tok or self.tok
        return cls(message, tok.line, tok.col)

    def expect(self, text, kind=None):
        t = self.tok
        if (kind and t.kind != kind) or (text is not None and t.text != text):
            want = text if text is not None else kind
            got = t.text or "end of input"
            raise self.error(f"expected {want!r}, got {got!r}")
        return self.advance()

    def accept(self, text):
        if self.tok.text == text and self.tok.kind != "eof":
            return self.advance()
        return None

    # polynomial expressions ---------------------------------------------------

    def expr(self, ring):
        sign = 1
        if self.tok.text in "+-" and self.tok.kind == "op":
            sign = -1 if self.advance().text == "-" else 1
        value = self.term(ring)
        if sign < 0:
            value = -value
        while self.tok.kind == "op" and self.tok.text in "+-":
            op = self.advance().text
            rhs = self.term(ring)
            value = value + rhs if op == "+" else value - rhs
        return value

    def _starts_atom(self):
        t = self.tok
        return t.kind in ("num", "ident") or (t.kind == "op" and t.text == "(")

    def term(self, ring):
        value = self.factor(ring)
        while True:
            t = self.tok
            if t.kind == "op" and t.text == "*":
                self.advance()
                value = value * self.factor(ring)
            elif t.kind == "op" and t.text == "/":
                self.advance()
                at = self.tok
                den = self.factor(ring)
                if not den.is_constant() or not den:
                    raise self.error("division only by nonzero constants", at)
                value = value.scale(1 / den.constant_term)
            elif self._starts_atom():
                value = value * self.factor(ring)
            else:
                return value

    def factor(self, ring):
        if self.tok.kind == "op" and self.tok.text in "+-":
            op = self.advance().text
            inner = self.factor(ring)
            return -inner if op == "-" else inner
        base = self.atom(ring)
        if self.tok.kind == "pow":
            self.advance()
            t = self.expect(None, "num")
            base = base ** int(t.text)
        return base

    def atom(self, ring):
        t = self.tok
        if t.kind == "num":
            self.advance()
            return ring.const(int(t.text))
        if t.kind == "ident":
            self.advance()
            if t.text not in ring.names:
                raise UnknownVariableError(f"unknown variable {t.text!r}", t.line, t.col)
            return ring.gen(t.text)
        if t.kind == "op" and t.text == "(":
            self.advance()
            value = self.expr(ring)
            self.expect(")")
            return value
        got = t.text or "end of input"
        raise self.error(f"expected a polynomial, got {got!r}")

    def poly_list(self, ring):
        self.expect("[")
        items = []
        if self.accept("]"):
            return items
        while True:
            items.append(self.expr(ring))
            if self.accept("]"):
                return items
            self.expect(",")


def parse_polynomial(text, ring):
    """Parse one polynomial in ``ring``."""
    p = _Parser(text)
    value = p.expr(ring)
    if p.tok.kind != "eof":
        raise p.error(f"unexpected {p.tok.text!r} after polynomial")
    return value


def _format_coeff(c):
    c = QQ(c)
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def format_polynomial(p):
    """Canonical text form; ``parse_polynomial`` inverts it exactly."""
    if not p:
        return "0"
    names = p.ring.names
    parts = []
    for e, c in p.terms:
        mono = "*".join(
            n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k
        )
        neg = c < 0
        a = -c if neg else c
        if not mono:
            body = _format_coeff(a)
        elif a == 1:
            body = mono
        else:
            body = f"{_format_coeff(a)}*{mono}"
        if not parts:
            parts.append(f"-{body}" if neg else body)
        else:
            parts.append(f"- {body}" if neg else f"+ {body}")
    return " ".join(parts)


# -- germ files ----------------------------------------------------------------

@dataclass
class StratumSpec:
    """A user-given stratum: V(closure) minus the union of V(frontier_i)."""

    map_name: str
    closure: list
    frontiers: list
    rank: int


@dataclass
class GermFile:
    var_blocks: list = field(default_factory=list)
    maps: dict = field(default_factory=dict)
    strata: dict = field(default_factory=dict)
    flags: set = field(default_factory=set)
    statements: list = field(default_factory=list)

    def map(self, name):
        try:
            return self.maps[name]
        except KeyError:
            raise KeyError(f"no map named {name!r}; have {sorted(self.maps)}") from None


def parse_germ_file(text):
    """Parse a germ-description file into a :class:`GermFile`."""
    from .germ import MapGerm
    from .poly import Ring

    p = _Parser(text)
    out = GermFile()
    ring = None
    while p.tok.kind != "eof":
        t = p.tok
        if t.kind != "ident":
            raise p.error(f"expected a statement keyword, got {t.text!r}")
        if t.text == "vars":
            p.advance()
            names = []
            while p.tok.kind == "ident":
                names.append(p.advance().text)
            p.expect(";")
            if not names:
                raise p.error("empty variable declaration", t, GermArityError)
            if len(set(names)) != len(names):
                raise p.error("duplicate variable names", t)
            ring = Ring(names)
            out.var_blocks.append(tuple(names))
            out.statements.append(("vars", tuple(names)))
        elif t.text == "map":
            p.advance()
            name = p.expect(None, "ident").text
            p.expect(":")
            src = int(p.expect(None, "num").text)
            p.expect("->", "arrow")
            tgt = int(p.expect(None, "num").text)
            p.expect("=")
            if ring is None:
                raise p.error("map declared before any 'vars' statement", t)
            if name in out.maps:
                raise p.error(f"map {name!r} defined twice", t)
            if src != ring.nvars:
                raise p.error(
                    f"map {name} declares source dimension {src} but {ring.nvars} variables are in scope",
                    t,
                    GermArityError,
                )
            comps = p.poly_list(ring)
            p.expect(";")
            if len(comps) != tgt or not comps:
                raise p.error(
                    f"map {name} declares target dimension {tgt} but has {len(comps)} components",
                    t,
                    GermArityError,
                )
            try:
                out.maps[name] = MapGerm(comps, label=name)
            except ValueError as exc:
                raise p.error(str(exc), t, GermArityError) from None
            out.statements.append(("map", name))
        elif t.text == "stratum":
            p.advance()
            p.expect("of")
            name = p.expect(None, "ident").text
            if name not in out.maps:
                raise p.error(f"stratum refers to unknown map {name!r}", t)
            p.expect(":")
            mring = out.maps[name].source_ring
            p.expect("closure")
            closure = p.poly_list(mring)
            frontiers = []
            while p.accept("minus"):
                frontiers.append(p.poly_list(mring))
            p.expect("rank")
            rank = int(p.expect(None, "num").text)
            p.expect(";")
            spec = StratumSpec(name, closure, frontiers, rank)
            out.strata.setdefault(name, []).append(spec)
            out.statements.append(("stratum", spec))
        elif t.text == "flag":
            p.advance()
            words = [p.expect(None, "ident").text]
            while p.tok.kind == "op" and p.tok.text == "-":
                p.advance()
                words.append(p.expect(None, "ident").text)
            p.expect(";")
            flag = "-".join(words)
            out.flags.add(flag)
            out.statements.append(("flag", flag))
        else:
            raise p.error(f"unknown statement {t.text!r}")
    return out


def format_germ_file(gf):
    """Render a :class:`GermFile` back to the grammar (parse inverts it)."""
    lines = []
    for kind, item in gf.statements:
        if kind == "vars":
            lines.append("vars " + " ".join(item) + ";")
        elif kind == "map":
            m = gf.maps[item]
            comps = ", ".join(format_polynomial(c) for c in m.components)
            lines.append(f"map {item} : {m.source_dim} -> {m.target_dim} = [{comps}];")
        elif kind == "stratum":
            closure = ", ".join(format_polynomial(c) for c in item.closure)
            text = f"stratum of {item.map_name} : closure [{closure}]"
            for fr in item.frontiers:
                text += " minus [" + ", ".join(format_polynomial(c) for c in fr) + "]"
            lines.append(text + f" rank {item.rank};")
        elif kind == "flag":
            lines.append(f"flag {item};")
    return "\n".join(lines) + "\n"
