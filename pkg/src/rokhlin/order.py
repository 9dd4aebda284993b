"""The preorder on end types by clopen embedding, maximal ends and self-similarity."""
from __future__ import annotations

from dataclasses import dataclass

from .dsl import Empty, Sum, render_expr
from .endspace.embed import Decision, Tri, clopen_embeds
from .endspace.rewrite import normalize
from .endspace.sorts import EndLocator, analyze, top_key
from .ordinals import CONTINUUM, card_add, card_json

SINGLETON = "Singleton"
PAIR = "Pair"
CANTOR_SET = "CantorSet"
OTHER = "Other"


class UndecidedOrder(RuntimeError):
    def __init__(self, y, x, decision):
        self.pair = (y, x)
        self.decision = decision
        super().__init__(f"cannot decide {y} <= {x}: {decision.reason}")


@dataclass(frozen=True)
class EndType:
    locator: EndLocator
    stable: object          # homeomorphism type of small clopen neighbourhoods
    multiplicity: object

    def to_json(self):
        return {"locator": str(self.locator), "stable_nbhd": render_expr(self.stable),
                "multiplicity": card_json(self.multiplicity)}


def end_types(e) -> list:
    if isinstance(e, Empty):
        raise ValueError("the empty end space has no end types")
    out = []
    for s in analyze(e).sorts:
        out.append(EndType(s.locator, s.node, s.mult))
    return out


def stable_nbhd(e, locator: EndLocator):
    for t in end_types(e):
        if t.locator == locator:
            return t.stable
    raise KeyError(f"no end type at {locator}")


def leq(y: EndLocator, x: EndLocator, e, depth: int = 6) -> Decision:
    """y <= x: a neighbourhood of y clopen-embeds in every neighbourhood of x."""
    return clopen_embeds(stable_nbhd(e, y), stable_nbhd(e, x), depth)


@dataclass(frozen=True)
class MaximalClass:
    kind: str
    locators: tuple         # every maximal end, or one per type when uncountable
    representatives: tuple  # stable neighbourhoods of the maximal types
    count: object           # number of maximal ends

    def to_json(self):
        return {"kind": self.kind, "count": card_json(self.count),
                "locators": [str(x) for x in self.locators],
                "types": [render_expr(r) for r in self.representatives]}


def _leq_types(a, b, depth, cache) -> bool:
    key = (a, b)
    if key not in cache:
        d = clopen_embeds(a, b, depth)
        if d.unknown:
            raise UndecidedOrder(render_expr(a), render_expr(b), d)
        cache[key] = d
    return cache[key].yes


def maximal_set(e, depth: int = 6) -> MaximalClass:
    types = end_types(e)
    groups: dict = {}
    for t in types:
        nf = normalize(t.stable).expr
        g = groups.setdefault(nf, [[], 0])
        g[0].append(t.locator)
        g[1] = card_add(g[1], t.multiplicity)
    reps = list(groups)
    cache: dict = {}
    maximal = [m for m in reps
               if all(_leq_types(o, m, depth, cache) for o in reps
                      if _leq_types(m, o, depth, cache))]
    # equivalent maximal types share a class of points
    classes: list = []
    for m in maximal:
        for cl in classes:
            if _leq_types(m, cl[0], depth, cache) and _leq_types(cl[0], m, depth, cache):
                cl.append(m)
                break
        else:
            classes.append([m])
    total = 0
    for m in maximal:
        total = card_add(total, groups[m][1])
    if isinstance(total, int):
        locs = tuple(x for m in maximal for x in groups[m][0])
    else:
        locs = tuple(groups[m][0][0] for m in maximal)
    if total == 1:
        kind = SINGLETON
    elif total == 2:
        kind = PAIR
    elif len(classes) == 1 and total is CONTINUUM and top_key(maximal[0]).perfect:
        kind = CANTOR_SET
    else:
        kind = OTHER
    return MaximalClass(kind, locs, tuple(maximal), total)


@dataclass(frozen=True, eq=False)
class SelfSimilarity:
    decision: Decision
    case: str
    partition: tuple = ()   # witnessing clopen partition (as normal-form components)

    @property
    def value(self) -> Tri:
        return self.decision.value

    def to_json(self):
        out = {"self_similar": self.decision.value.value, "case": self.case}
        if self.decision.cert is not None:
            out["certificate"] = self.decision.cert.to_json()
        if self.partition:
            out["partition"] = [render_expr(p) for p in self.partition]
        out["axiom_flags"] = list(self.decision.axioms)
        return out


def is_self_similar(e, depth: int = 6, maximal: MaximalClass | None = None) -> SelfSimilarity:
    if isinstance(e, Empty):
        raise ValueError("the empty end space is not considered")
    try:
        m = maximal or maximal_set(e, depth)
    except UndecidedOrder as exc:
        return SelfSimilarity(exc.decision, "undecided")
    if m.kind in (SINGLETON, CANTOR_SET):
        d = clopen_embeds(e, m.representatives[0], depth)
        if d.no:
            return SelfSimilarity(d, m.kind, _components(e))
        return SelfSimilarity(d, m.kind)
    parts = _components(e)
    d = Decision(Tri.FALSE, "No", "separating partition",
                 {"partition": [render_expr(p) for p in parts]})
    return SelfSimilarity(d, m.kind, parts)


def _components(e) -> tuple:
    n = normalize(e).expr
    return n.children if isinstance(n, Sum) else (n,)

