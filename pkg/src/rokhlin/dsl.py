"""Surface-description language: AST, parser and printer.

A surface is written as::

    surface { genus: inf, ends: omega(pt@np)@np }

The end-space sub-language has six constructors (``none``, ``pt``, ``sum``,
``omega``, ``cantor``, ``cantor_of``) plus the ``n * expr`` shorthand for an
n-fold sum.  Atoms default to planar; ``@np`` marks them nonplanar.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Union

__all__ = [
    "EndFlag", "PLANAR", "NONPLANAR", "Empty", "Pt", "Sum", "Omega", "Cantor",
    "CantorOf", "EMPTY", "Expr", "SurfaceDesc", "GENUS_INF",
    "SurfaceSyntaxError", "InvariantError", "parse_surface", "parse_ends",
    "render_surface", "render_expr", "validate_expr", "has_nonplanar",
    "is_countable", "children", "MAX_NESTING", "MAX_REPEAT",
]

MAX_NESTING = 200
MAX_REPEAT = 256
GENUS_INF = math.inf


class EndFlag(enum.Enum):
    PLANAR = "p"
    NONPLANAR = "np"

    def __str__(self):
        return self.value


PLANAR = EndFlag.PLANAR
NONPLANAR = EndFlag.NONPLANAR


@dataclass(frozen=True)
class Empty:
    pass


@dataclass(frozen=True)
class Pt:
    flag: EndFlag = PLANAR


@dataclass(frozen=True)
class Sum:
    children: tuple


@dataclass(frozen=True)
class Omega:
    members: tuple
    flag: EndFlag = PLANAR


@dataclass(frozen=True)
class Cantor:
    flag: EndFlag = PLANAR


@dataclass(frozen=True)
class CantorOf:
    inner: "Expr"


Expr = Union[Empty, Pt, Sum, Omega, Cantor, CantorOf]
EMPTY = Empty()


@dataclass(frozen=True)
class SurfaceDesc:
    """Genus (0, a positive int, or ``GENUS_INF``) plus an end space."""

    genus: float
    ends: Expr

    @property
    def genus_text(self) -> str:
        return "inf" if self.genus == GENUS_INF else str(int(self.genus))


class SurfaceSyntaxError(ValueError):
    def __init__(self, message, line, col, expected=()):
        self.line = line
        self.col = col
        self.expected = tuple(expected)
        detail = f" (expected {', '.join(self.expected)})" if self.expected else ""
        super().__init__(f"{line}:{col}: {message}{detail}")


class InvariantError(ValueError):
    def __init__(self, path, rule):
        self.path = tuple(path)
        self.rule = rule
        where = "/".join(map(str, self.path)) or "<root>"
        super().__init__(f"invariant violated at {where}: {rule}")


def children(e) -> tuple:
    if isinstance(e, Sum):
        return e.children
    if isinstance(e, Omega):
        return e.members
    if isinstance(e, CantorOf):
        return (e.inner,)
    return ()


@lru_cache(maxsize=None)
def has_nonplanar(e) -> bool:
    """True when some end of ``e`` is nonplanar."""
    if isinstance(e, (Pt, Omega, Cantor)) and e.flag is NONPLANAR:
        return True
    return any(has_nonplanar(c) for c in children(e))


@lru_cache(maxsize=None)
def is_countable(e) -> bool:
    if isinstance(e, (Cantor, CantorOf)):
        return False
    return all(is_countable(c) for c in children(e))


# ---------------------------------------------------------------- validation

def validate_expr(e, path=()):
    if isinstance(e, (Empty, Pt, Cantor)):
        return
    if isinstance(e, Sum):
        if len(e.children) < 2:
            raise InvariantError(path, "sum needs at least two summands")
        for i, c in enumerate(e.children):
            if isinstance(c, Empty):
                raise InvariantError(path + (i,), "sum summand is empty")
            validate_expr(c, path + (i,))
        return
    if isinstance(e, Omega):
        if not e.members:
            raise InvariantError(path, "omega needs at least one member")
        if len(set(e.members)) != len(e.members):
            raise InvariantError(path, "omega members must be distinct")
        for i, m in enumerate(e.members):
            if isinstance(m, Empty):
                raise InvariantError(path + (i,), "omega member is empty")
            validate_expr(m, path + (i,))
        # copies of every member accumulate at the limit, and the nonplanar
        # ends form a closed set
        if e.flag is PLANAR and any(has_nonplanar(m) for m in e.members):
            raise InvariantError(path, "limit of nonplanar ends must be @np")
        return
    if isinstance(e, CantorOf):
        if isinstance(e.inner, Empty):
            raise InvariantError(path + (0,), "cantor_of needs a nonempty argument")
        validate_expr(e.inner, path + (0,))
        return
    raise InvariantError(path, f"unknown node {type(e).__name__}")


def validate_surface(s: SurfaceDesc):
    g = s.genus
    if not (g == GENUS_INF or (isinstance(g, int) and g >= 0)):
        raise InvariantError((), "genus must be a nonnegative integer or inf")
    validate_expr(s.ends, ("ends",))
    np_ends = has_nonplanar(s.ends)
    if g == GENUS_INF and not np_ends:
        raise InvariantError(("ends",), "infinite genus needs a nonplanar end")
    if g != GENUS_INF and np_ends:
        raise InvariantError(("ends",), "nonplanar end under finite genus")


# ------------------------------------------------------------------- lexing

_PUNCT = set("{}:,()*")
_KEYWORDS = {"surface", "genus", "ends", "none", "pt", "omega", "cantor",
             "cantor_of", "sum", "inf"}


@dataclass
class _Tok:
    kind: str   # "kw", "int", "punct", "flag", "eof"
    value: str
    line: int
    col: int


def _tokenize(text: str) -> list:
    toks = []
    i, line, col = 0, 1, 1
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            i, line, col = i + 1, line + 1, 1
            continue
        if ch.isspace():
            i, col = i + 1, col + 1
            continue
        start_col = col
        if ch in _PUNCT:
            toks.append(_Tok("punct", ch, line, start_col))
            i, col = i + 1, col + 1
            continue
        if ch.isdigit() and ch.isascii():
            j = i
            while j < n and text[j].isdigit() and text[j].isascii():
                j += 1
            if j - i > 12:
                raise SurfaceSyntaxError("integer literal too long", line, start_col)
            toks.append(_Tok("int", text[i:j], line, start_col))
            col += j - i
            i = j
            continue
        if ch == "@":
            j = i + 1
            while j < n and (text[j].isalpha() and text[j].isascii()):
                j += 1
            word = text[i + 1:j]
            if word not in ("np", "p"):
                raise SurfaceSyntaxError(f"unknown flag '@{word}'", line, start_col,
                                         ("@np", "@p"))
            toks.append(_Tok("flag", word, line, start_col))
            col += j - i
            i = j
            continue
        if (ch.isalpha() or ch == "_") and ch.isascii():
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_") and text[j].isascii():
                j += 1
            word = text[i:j]
            if word not in _KEYWORDS:
                raise SurfaceSyntaxError(f"unknown word '{word}'", line, start_col)
            toks.append(_Tok("kw", word, line, start_col))
            col += j - i
            i = j
            continue
        raise SurfaceSyntaxError(f"unexpected character {ch!r}", line, start_col)
    toks.append(_Tok("eof", "", line, col))
    return toks


class _Parser:
    def __init__(self, text):
        self.toks = _tokenize(text)
        self.pos = 0
        self.depth = 0

    @property
    def tok(self):
        return self.toks[self.pos]

    def fail(self, expected, message=None):
        t = self.tok
        got = t.value if t.kind != "eof" else "end of input"
        raise SurfaceSyntaxError(message or f"unexpected {got!r}", t.line, t.col, expected)

    def accept(self, kind, value=None):
        t = self.tok
        if t.kind == kind and (value is None or t.value == value):
            self.pos += 1
            return t
        return None

    def expect(self, kind, value):
        t = self.accept(kind, value)
        if t is None:
            self.fail((repr(value),))
        return t

    def surface(self) -> SurfaceDesc:
        self.expect("kw", "surface")
        self.expect("punct", "{")
        self.expect("kw", "genus")
        self.expect("punct", ":")
        genus = self.genus()
        self.expect("punct", ",")
        self.expect("kw", "ends")
        self.expect("punct", ":")
        ends = self.ends()
        self.expect("punct", "}")
        self.end()
        return SurfaceDesc(genus, ends)

    def end(self):
        if self.tok.kind != "eof":
            self.fail(("end of input",))

    def genus(self):
        if self.accept("kw", "inf"):
            return GENUS_INF
        t = self.accept("int")
        if t is None:
            self.fail(("INTEGER", "'inf'"))
        return int(t.value)

    def ends(self):
        if self.accept("kw", "none"):
            return EMPTY
        return self.expr()

    def flag(self):
        t = self.accept("flag")
        if t is None:
            return PLANAR
        return NONPLANAR if t.value == "np" else PLANAR

    def expr(self):
        self.depth += 1
        if self.depth > MAX_NESTING:
            self.fail((), "expression nested too deeply")
        try:
            return self._expr()
        finally:
            self.depth -= 1

    def _expr(self):
        t = self.tok
        if self.accept("kw", "pt"):
            return Pt(self.flag())
        if self.accept("kw", "cantor"):
            return Cantor(self.flag())
        if self.accept("kw", "cantor_of"):
            self.expect("punct", "(")
            inner = self.expr()
            self.expect("punct", ")")
            return CantorOf(inner)
        if self.accept("kw", "omega"):
            self.expect("punct", "(")
            members = [self.expr()]
            while self.accept("punct", ","):
                members.append(self.expr())
            self.expect("punct", ")")
            return Omega(tuple(members), self.flag())
        if self.accept("kw", "sum"):
            self.expect("punct", "(")
            parts = [self.expr()]
            self.expect("punct", ",")
            parts.append(self.expr())
            while self.accept("punct", ","):
                parts.append(self.expr())
            self.expect("punct", ")")
            return Sum(tuple(parts))
        if t.kind == "int":
            self.pos += 1
            count = int(t.value)
            if not 1 <= count <= MAX_REPEAT:
                raise SurfaceSyntaxError(f"repeat count must lie in 1..{MAX_REPEAT}",
                                         t.line, t.col)
            self.expect("punct", "*")
            body = self.expr()
            return body if count == 1 else Sum((body,) * count)
        self.fail(("'pt'", "'omega'", "'cantor'", "'cantor_of'", "'sum'", "INTEGER"))


def _coerce_text(text) -> str:
    if isinstance(text, (bytes, bytearray)):
        try:
            return bytes(text).decode("utf-8")
        except UnicodeDecodeError as exc:
            raise SurfaceSyntaxError("input is not valid UTF-8", 1, exc.start + 1) from None
    return text


def parse_surface(text) -> SurfaceDesc:
    s = _Parser(_coerce_text(text)).surface()
    validate_surface(s)
    return s


def parse_ends(text):
    """Parse a bare end-space expression (``none`` allowed)."""
    p = _Parser(_coerce_text(text))
    e = p.ends()
    p.end()
    validate_expr(e)
    return e


# ------------------------------------------------------------------ printing

def _suffix(flag):
    return "@np" if flag is NONPLANAR else ""


def render_expr(e) -> str:
    if isinstance(e, Empty):
        return "none"
    if isinstance(e, Pt):
        return "pt" + _suffix(e.flag)
    if isinstance(e, Cantor):
        return "cantor" + _suffix(e.flag)
    if isinstance(e, CantorOf):
        return f"cantor_of({render_expr(e.inner)})"
    if isinstance(e, Omega):
        return "omega(" + ", ".join(render_expr(m) for m in e.members) + ")" + _suffix(e.flag)
    if isinstance(e, Sum):
        first = e.children[0]
        if len(e.children) <= MAX_REPEAT and all(c == first for c in e.children):
            body = render_expr(first)
            return f"{len(e.children)} * {body}"
        return "sum(" + ", ".join(render_expr(c) for c in e.children) + ")"
    raise TypeError(f"not an end-space expression: {e!r}")


def render_surface(s: SurfaceDesc) -> str:
    return f"surface {{ genus: {s.genus_text}, ends: {render_expr(s.ends)} }}"
