"""Rewriting to a canonical normal form.

Rules, applied one at a time at the leftmost innermost redex:

R1  flatten a Sum inside a Sum, unwrap a one-child Sum
R2  sort Sum children and Omega members by ``sort_key``
R3  replace a Sum member of an Omega by its components, drop duplicates
R4  drop an Omega member whose points already accumulate at another member
R5  drop a Sum child absorbed by another child (its class accumulates there)
R6  as R5 for two copies of the same Cantor-like germ
R7  collapse an Omega or cantor_of whose top point has the class of a member
R8  drop duplicate or absorbed components inside a cantor_of
"""
from __future__ import annotations

from dataclasses import dataclass

from ..dsl import Cantor, CantorOf, Omega, Sum, children
from .sorts import sort_key, top_key

DEFAULT_STEP_BOUND = 10_000


class RewriteDepthExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class NormalForm:
    expr: object
    trace: tuple    # ((rule, path), ...)

    @property
    def rules(self) -> list:
        return [r for r, _ in self.trace]


def _absorbed(x, others) -> bool:
    kx = top_key(x)
    return any(kx in top_key(y).reach for y in others)


def _first_absorbed(items) -> int | None:
    for i, x in enumerate(items):
        rest = items[:i] + items[i + 1:]
        if _absorbed(x, rest):
            return i
    return None


def _components(e) -> tuple:
    return e.children if isinstance(e, Sum) else (e,)


def _rebuild(e, kids):
    if isinstance(e, Sum):
        return Sum(tuple(kids))
    if isinstance(e, Omega):
        return Omega(tuple(kids), e.flag)
    if isinstance(e, CantorOf):
        return CantorOf(kids[0])
    return e


def _dedupe(items) -> tuple:
    return tuple(dict.fromkeys(items))


def _local(e):
    """One rewrite at the root of ``e`` (children already irreducible)."""
    if isinstance(e, Sum):
        kids = e.children
        if len(kids) == 1:
            return kids[0], "R1"
        if any(isinstance(c, Sum) for c in kids):
            flat = tuple(x for c in kids for x in _components(c))
            return Sum(flat), "R1"
        i = _first_absorbed(kids)
        if i is not None:
            rest = kids[:i] + kids[i + 1:]
            same = kids[i] in rest and isinstance(kids[i], (Cantor, CantorOf))
            return (rest[0] if len(rest) == 1 else Sum(rest)), ("R6" if same else "R5")
        ordered = tuple(sorted(kids, key=sort_key))
        if ordered != kids:
            return Sum(ordered), "R2"
        return None
    if isinstance(e, Omega):
        ms = e.members
        if any(isinstance(m, Sum) for m in ms) or len(_dedupe(ms)) != len(ms):
            return Omega(_dedupe(x for m in ms for x in _components(m)), e.flag), "R3"
        i = _first_absorbed(ms)
        if i is not None:
            return Omega(ms[:i] + ms[i + 1:], e.flag), "R4"
        k = top_key(e)
        for m in ms:
            if top_key(m) is k:
                return m, "R7"
        ordered = tuple(sorted(ms, key=sort_key))
        if ordered != ms:
            return Omega(ordered, e.flag), "R2"
        return None
    if isinstance(e, CantorOf):
        comps = _components(e.inner)
        kept = _dedupe(comps)
        i = _first_absorbed(kept)
        if i is not None:
            kept = kept[:i] + kept[i + 1:]
        if kept != comps:
            return CantorOf(kept[0] if len(kept) == 1 else Sum(kept)), "R8"
        k = top_key(e)
        for c in comps:
            if top_key(c) is k:
                return c, "R7"
        return None
    return None


def _step(e, path=()):
    kids = children(e)
    for i, c in enumerate(kids):
        hit = _step(c, path + (i,))
        if hit is not None:
            new_c, rule, where = hit
            return _rebuild(e, kids[:i] + (new_c,) + kids[i + 1:]), rule, where
    hit = _local(e)
    if hit is None:
        return None
    return hit[0], hit[1], path


def normalize_steps(e, bound: int = DEFAULT_STEP_BOUND):
    """Yield (rule, path, expression after the rewrite) for every step."""
    for _ in range(bound):
        hit = _step(e)
        if hit is None:
            return
        e, rule, where = hit
        yield rule, where, e
    if _step(e) is not None:
        raise RewriteDepthExceeded(f"more than {bound} rewrite steps")


_CACHE: dict = {}


def normalize(e, bound: int = DEFAULT_STEP_BOUND) -> NormalForm:
    key = (e, bound)
    hit = _CACHE.get(key)
    if hit is not None:
        return hit
    trace, cur = [], e
    for rule, where, cur in normalize_steps(e, bound):
        trace.append((rule, where))
    nf = NormalForm(cur, tuple(trace))
    _CACHE[key] = nf
    return nf
