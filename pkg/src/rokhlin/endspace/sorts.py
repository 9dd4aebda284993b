"""Point sorts of an end-space expression and their local homeomorphism classes.

Every expression is a finite union of "germs" (the clopen neighbourhood types
of single points).  Each syntactic occurrence that produces points is a
*sort*: an isolated atom, an omega limit, the points of a Cantor set, the base
Cantor set of a ``cantor_of``.  For a sort we record its flag, the sorts whose
points accumulate at it, and how many points realize it.

Two points have the same germ exactly when their flags agree and the same
classes accumulate at them.  The accumulation graph is a DAG plus self-loops
(only Cantor-like sorts accumulate at themselves), so classes are computed
bottom-up; a sort is merged into a self-accumulating successor whenever their
accumulation sets coincide (e.g. the limit of a sequence of Cantor sets is a
Cantor point).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from ..dsl import (NONPLANAR, PLANAR, Cantor, CantorOf, Empty, EndFlag, Omega,
                   Pt, Sum, children, has_nonplanar, render_expr)
from ..ordinals import CONTINUUM, OMEGA, card_add, card_mul

ISOLATED = "IsolatedAtom"
LIMIT = "OmegaLimit"
CANTOR_POINT = "CantorPoint"
BASE_POINT = "CantorOfBasePoint"
INSIDE = "InsideAttachedCopy"


@dataclass(frozen=True)
class EndLocator:
    """Path of child indices to a node, plus the kind of point found there.

    For ``InsideAttachedCopy`` the path stops at the ``cantor_of`` node and
    ``inner`` locates the point inside the attached expression.
    """

    path: tuple
    kind: str
    inner: "EndLocator | None" = None

    def __str__(self):
        p = ".".join(map(str, self.path)) or "root"
        s = f"{self.kind}@{p}"
        return f"{s}[{self.inner}]" if self.inner is not None else s

    def to_json(self):
        out = {"path": list(self.path), "kind": self.kind}
        if self.inner is not None:
            out["inner"] = self.inner.to_json()
        return out

    def flat_path(self) -> tuple:
        """Child indices through the expression tree (``cantor_of`` child is 0)."""
        if self.inner is None:
            return self.path
        return self.path + (0,) + self.inner.flat_path()


@dataclass(frozen=True)
class ClassKey:
    """Local homeomorphism class of a point.

    ``perfect`` marks classes that accumulate at themselves; ``below`` holds
    the other classes accumulating at the point.
    """

    flag: EndFlag
    perfect: bool
    below: frozenset

    @property
    def reach(self) -> frozenset:
        return self.below | {self} if self.perfect else self.below


_INTERN: dict = {}


def _key(flag, perfect, below):
    k = ClassKey(flag, perfect, frozenset(below))
    return _INTERN.setdefault(k, k)


@dataclass
class Sort:
    flag: EndFlag
    succ: set
    mult: object
    locator: EndLocator
    node: object        # the expression whose whole is this point's stable neighbourhood
    self_loop: bool = False
    key: ClassKey | None = None


@dataclass
class Analysis:
    expr: object
    sorts: list
    counts: dict = field(default_factory=dict)   # ClassKey -> cardinality

    def sort_at(self, locator: EndLocator) -> Sort:
        for s in self.sorts:
            if s.locator == locator:
                return s
        raise KeyError(f"no end type at {locator}")

    def top_sort(self) -> Sort:
        """The sort whose stable neighbourhood is the whole expression."""
        for s in self.sorts:
            if s.locator.path == () and s.locator.kind != INSIDE:
                return s
        raise ValueError("expression is not a single germ")

    @property
    def classes(self) -> frozenset:
        return frozenset(self.counts)

    def invariant(self) -> tuple:
        return tuple(sorted(((germ_text(k), _card_sort(c)) for k, c in self.counts.items())))


def _card_sort(c):
    return c if isinstance(c, int) else repr(c)


def _collect(e, path, wrap, factor, sorts) -> list:
    if isinstance(e, Empty):
        return []
    if isinstance(e, Pt):
        sorts.append(Sort(e.flag, set(), factor, wrap(EndLocator(path, ISOLATED)), e))
        return [len(sorts) - 1]
    if isinstance(e, Sum):
        ids = []
        for i, c in enumerate(e.children):
            ids += _collect(c, path + (i,), wrap, factor, sorts)
        return ids
    if isinstance(e, Omega):
        ids = []
        inner_factor = card_mul(factor, OMEGA)
        for i, m in enumerate(e.members):
            ids += _collect(m, path + (i,), wrap, inner_factor, sorts)
        sorts.append(Sort(e.flag, set(ids), factor, wrap(EndLocator(path, LIMIT)), e))
        return ids + [len(sorts) - 1]
    if isinstance(e, Cantor):
        idx = len(sorts)
        sorts.append(Sort(e.flag, {idx}, card_mul(factor, CONTINUUM),
                          wrap(EndLocator(path, CANTOR_POINT)), e, self_loop=True))
        return [idx]
    if isinstance(e, CantorOf):
        def inner_wrap(loc, _path=path):
            return wrap(EndLocator(_path, INSIDE, loc))
        ids = _collect(e.inner, (), inner_wrap, card_mul(factor, OMEGA), sorts)
        idx = len(sorts)
        flag = NONPLANAR if has_nonplanar(e.inner) else PLANAR
        sorts.append(Sort(flag, set(ids) | {idx}, card_mul(factor, CONTINUUM),
                          wrap(EndLocator(path, BASE_POINT)), e, self_loop=True))
        return ids + [idx]
    raise TypeError(f"not an end-space expression: {e!r}")


def _assign_keys(sorts):
    def visit(i):
        s = sorts[i]
        if s.key is not None:
            return s.key
        others = [u for u in s.succ if u != i]
        below = {visit(u) for u in others}
        chosen = None
        for u in others:
            ku = sorts[u].key
            if ku.perfect and ku.flag is s.flag and below == ku.below | {ku}:
                chosen = ku
                break
        if chosen is None:
            chosen = _key(s.flag, s.self_loop, below)
        s.key = chosen
        return chosen

    for i in range(len(sorts)):
        visit(i)


@lru_cache(maxsize=4096)
def analyze(e) -> Analysis:
    sorts: list = []
    _collect(e, (), lambda loc: loc, 1, sorts)
    _assign_keys(sorts)
    counts: dict = {}
    for s in sorts:
        counts[s.key] = card_add(counts.get(s.key, 0), s.mult)
    return Analysis(e, sorts, counts)


def top_key(germ) -> ClassKey:
    return analyze(germ).top_sort().key


def maximal_keys(keys) -> list:
    """Classes of ``keys`` not accumulating at another class of ``keys``."""
    keys = list(keys)
    return [k for k in keys if not any(k2 is not k and k in k2.reach for k2 in keys)]


@lru_cache(maxsize=None)
def scattered_rank(k: ClassKey):
    """Cantor-Bendixson rank of a class, or None for points of the perfect kernel."""
    if k.perfect:
        return None
    rank = 0
    for b in k.below:
        r = scattered_rank(b)
        if r is None:
            return None
        rank = max(rank, r + 1)
    return rank


@lru_cache(maxsize=None)
def canonical_germ(k: ClassKey):
    """The normal-form expression of a small clopen neighbourhood of a ``k`` point."""
    tops = sorted((canonical_germ(b) for b in maximal_keys(k.below)), key=sort_key)
    if not k.perfect:
        if not tops:
            return Pt(k.flag)
        return Omega(tuple(tops), k.flag)
    if not tops:
        return Cantor(k.flag)
    inner = tops[0] if len(tops) == 1 else Sum(tuple(tops))
    built = CantorOf(inner)
    if (NONPLANAR if has_nonplanar(inner) else PLANAR) is not k.flag:
        raise ValueError(f"class {k} has no cantor_of representative")
    return built


def germ_text(k: ClassKey) -> str:
    return render_expr(canonical_germ(k))


_TAGS = {Empty: 0, Pt: 1, Cantor: 2, Omega: 3, CantorOf: 4, Sum: 5}


@lru_cache(maxsize=None)
def sort_key(e) -> tuple:
    """Fixed total order: constructor tag, then arity, then flag, then children."""
    kids = children(e)
    flag = getattr(e, "flag", PLANAR)
    return (_TAGS[type(e)], len(kids), 0 if flag is PLANAR else 1,
            tuple(sort_key(c) for c in kids))
