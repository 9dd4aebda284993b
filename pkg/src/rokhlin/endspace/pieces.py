"""Canonical clopen pieces of an expression.

A piece is a path of steps from the root:

``sum:i``          the i-th child of a Sum
``block:j:i``      member i inside the j-th block of an Omega sequence
``tail:j``         an Omega with its first j blocks removed (keeps the limit)
``half:w``         the dyadic cylinder ``w`` of a Cantor or cantor_of base
``attached:w``     the copy of the inner expression hung at tree node ``w``

The empty path is the whole space.
"""
from __future__ import annotations

from ..dsl import Cantor, CantorOf, Omega, Sum

ROOT: tuple = ()


class PieceError(ValueError):
    pass


def _word(w: str) -> str:
    if any(ch not in "01" for ch in w):
        raise PieceError(f"not a binary word: {w!r}")
    return w


def parse_piece(text: str) -> tuple:
    if not text:
        return ROOT
    steps = []
    for part in text.split("/"):
        name, _, rest = part.partition(":")
        args = rest.split(":") if rest else []
        try:
            if name == "sum" and len(args) == 1:
                steps.append(("sum", int(args[0])))
            elif name == "block" and len(args) == 2:
                steps.append(("block", int(args[0]), int(args[1])))
            elif name == "tail" and len(args) == 1:
                steps.append(("tail", int(args[0])))
            elif name in ("half", "attached") and len(args) <= 1:
                steps.append((name, _word(args[0] if args else "")))
            else:
                raise PieceError(f"bad step {part!r}")
        except ValueError as exc:
            raise PieceError(f"bad step {part!r}") from exc
        if any(isinstance(a, int) and a < 0 for a in steps[-1][1:]):
            raise PieceError(f"negative index in {part!r}")
    return tuple(steps)


def format_piece(piece) -> str:
    return "/".join(":".join(str(a) for a in step) for step in piece)


def canonical(piece) -> tuple:
    """Merge tail/half prefixes into the following step and drop identity steps."""
    out: list = []
    for step in piece:
        prev = out[-1] if out else None
        kind = step[0]
        if prev is not None and prev[0] == "tail" and kind in ("tail", "block"):
            out.pop()
            step = (kind, prev[1] + step[1], *step[2:])
        elif prev is not None and prev[0] == "half" and kind in ("half", "attached"):
            out.pop()
            step = (kind, prev[1] + step[1])
        if step in (("tail", 0), ("half", "")):
            continue
        out.append(step)
    return tuple(out)


def concat(a, b) -> tuple:
    return canonical(tuple(a) + tuple(b))


def resolve(e, piece):
    """The sub-expression that a piece is a copy of."""
    for step in piece:
        kind = step[0]
        if kind == "sum" and isinstance(e, Sum) and step[1] < len(e.children):
            e = e.children[step[1]]
        elif kind == "block" and isinstance(e, Omega) and step[2] < len(e.members):
            e = e.members[step[2]]
        elif kind == "tail" and isinstance(e, Omega):
            pass
        elif kind == "half" and isinstance(e, (Cantor, CantorOf)):
            pass
        elif kind == "attached" and isinstance(e, CantorOf):
            e = e.inner
        else:
            raise PieceError(f"step {format_piece((step,))} does not apply here")
    return e


def cost(piece) -> int:
    """Search cost: one per step plus block/tail offsets and word lengths."""
    total = 0
    for step in piece:
        total += 1
        if step[0] in ("block", "tail"):
            total += step[1]
        elif step[0] in ("half", "attached"):
            total += len(step[1])
    return total


def _steps_disjoint(s, t) -> bool | None:
    """True/False for disjoint/overlapping steps at one node; None when equal."""
    if s == t:
        return None
    ks, kt = s[0], t[0]
    if ks == kt == "sum" or ks == kt == "block":
        return True
    if {ks, kt} == {"block", "tail"}:
        b, tl = (s, t) if ks == "block" else (t, s)
        return b[1] < tl[1]
    if ks == kt == "tail":
        return False
    if ks == kt == "half":
        return not (s[1].startswith(t[1]) or t[1].startswith(s[1]))
    if {ks, kt} == {"attached", "half"}:
        a, h = (s, t) if ks == "attached" else (t, s)
        return not a[1].startswith(h[1])
    if ks == kt == "attached":
        return True
    raise PieceError(f"steps {s} and {t} address different node kinds")


def disjoint(p, q) -> bool:
    p, q = canonical(p), canonical(q)
    for s, t in zip(p, q):
        d = _steps_disjoint(s, t)
        if d is None:
            continue
        return d
    return False


def contains(outer, inner) -> bool:
    """Whether piece ``inner`` lies inside piece ``outer``."""
    outer, inner = canonical(outer), canonical(inner)
    if len(outer) > len(inner):
        return False
    for i, (s, t) in enumerate(zip(outer, inner)):
        if s == t:
            continue
        last = i == len(outer) - 1
        if not last:
            return False
        if s[0] == "tail" and t[0] in ("tail", "block"):
            return t[1] >= s[1]
        if s[0] == "half" and t[0] in ("half", "attached"):
            return t[1].startswith(s[1])
        return False
    return True
