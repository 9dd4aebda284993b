"""Mutation battery for JEP certificates."""
import dataclasses

from rokhlin.dsl import PLANAR, Pt, Sum
from rokhlin.jepcheck import SymbolicMap


def _extra(c):
    k = c.push
    return ((("block", k + 7, 0),), (("block", k + 8, 0),))


def _with_pair(m, pair):
    return SymbolicMap(m.ends, tuple(m.pairs) + (pair,))


def jep_mutants(c) -> list:
    """Single-field corruptions of a certificate, minus any that equal the original."""
    r = dataclasses.replace
    x = _extra(c)
    flip = lambda ps: tuple((b, a) for a, b in ps)  # noqa: E731
    cands = [
        r(c, level="group"),
        r(c, level=""),
        r(c, push=c.push + 1),
        r(c, push=c.push - 1),
        r(c, region=()) if c.region else r(c, region=(("tail", 1),)),
        r(c, region=(("tail", c.push + 1),)),
        r(c, region=c.region + (("block", 0, 0),)),
        r(c, ends=Sum((c.ends, Pt(PLANAR)))),
        r(c, ends=Pt(PLANAR)),
        r(c, m1=_with_pair(c.m1, x)),
        r(c, m2=_with_pair(c.m2, x)),
        r(c, m1=c.m2) if c.m1 != c.m2 else r(c, m1=_with_pair(c.m1, (x[0], x[0]))),
        r(c, g_pairs=c.g_pairs + (x,)),
        r(c, g_pairs=c.g_pairs[1:]) if c.g_pairs else r(c, g_pairs=((x[0], x[0]),)),
        r(c, g_pairs=flip(c.g_pairs)) if c.g_pairs else r(c, g_pairs=(x, flip((x,))[0])),
        r(c, g_cert=r(c.g_cert, source=Sum((c.g_cert.source, Pt(PLANAR))))),
        r(c, g_cert=r(c.g_cert, target=Sum((c.g_cert.target, Pt(PLANAR))))),
        r(c, g_cert=r(c.g_cert, pieces=c.g_cert.pieces[:-1])) if c.g_cert.pieces
        else r(c, g_cert=r(c.g_cert, pieces=(None,))),
        r(c, conjugate=c.conjugate + (x,)),
        r(c, conjugate=tuple(c.m2.pairs)) if c.m2.pairs and c.conjugate
        else r(c, conjugate=flip((x,))),
        r(c, conjugate=flip(c.conjugate)) if c.conjugate else r(c, conjugate=((x[0], x[0]),)),
        r(c, h=c.h[:-1]) if c.h else r(c, h=(x,)),
        r(c, h=c.h + (x,)),
        r(c, h=c.h + c.h[:1]) if c.h else r(c, h=((x[0], x[0]),)),
        r(c, h=tuple(reversed(c.h)) + (x,)),
        r(c, h=tuple(c.m1.pairs)) if c.conjugate else r(c, h=c.h + flip((x,))),
        None,
    ]
    out = []
    for m in cands:
        if m != c and m not in out:
            out.append(m)
    return out
