"""Rokhlin and comeager verdicts with reason codes."""
from __future__ import annotations

from dataclasses import dataclass, field

from .dsl import GENUS_INF, PLANAR, Empty, Pt, SurfaceDesc, Sum, render_surface
from .endspace.embed import Tri
from .endspace.rewrite import normalize
from .order import (CANTOR_SET, OTHER, PAIR, SINGLETON, MaximalClass, UndecidedOrder,
                    is_self_similar, maximal_set)

SPHERE = "Sphere"
UNIQUE_MAX_SELF_SIMILAR = "UniqueMaxSelfSimilar"
COMPACT_NONTRIVIAL = "CompactNontrivial"
FINITE_POSITIVE_GENUS = "FinitePositiveGenus"
FINITE_PLANAR = "FinitePlanarNondisplaceable"
DOUBLY_POINTED = "DoublyPointed"
CANTOR_MAXIMAL = "CantorMaximalSet"
NOT_SELF_SIMILAR = "NotSelfSimilar"
MULTI_MAXIMAL = "MultiMaximal"
UNDECIDABLE = "Undecidable"

TRUE_REASONS = frozenset({SPHERE, UNIQUE_MAX_SELF_SIMILAR})
FALSE_REASONS = frozenset({COMPACT_NONTRIVIAL, FINITE_POSITIVE_GENUS, FINITE_PLANAR,
                           DOUBLY_POINTED, CANTOR_MAXIMAL, NOT_SELF_SIMILAR, MULTI_MAXIMAL})

TRIVIAL_MCG_NOTE = "trivial group recognised only for the sphere and the plane"


@dataclass(frozen=True, eq=False)
class Verdict:
    surface: SurfaceDesc
    rokhlin: Tri
    reason: str
    trivial_mcg: bool
    maximal: MaximalClass | None = None
    self_similar: Tri | None = None
    evidence: dict = field(default_factory=dict)
    axioms: tuple = ()

    @property
    def comeager(self) -> bool:
        return self.trivial_mcg

    def to_json(self):
        rok = {Tri.TRUE: True, Tri.FALSE: False, Tri.UNKNOWN: "undecidable"}[self.rokhlin]
        out = {"surface": render_surface(self.surface), "rokhlin": rok,
               "reason": self.reason, "comeager": self.comeager,
               "trivial_mcg": self.trivial_mcg,
               "maximal": self.maximal.to_json() if self.maximal else None,
               "self_similar": self.self_similar.value if self.self_similar else None}
        if self.evidence:
            out["evidence"] = self.evidence
        return out


def trivial_mcg(s: SurfaceDesc) -> bool:
    if s.genus != 0:
        return False
    return isinstance(s.ends, Empty) or s.ends == Pt(PLANAR)


def comeager_verdict(s: SurfaceDesc) -> bool:
    return trivial_mcg(s)


def _finite_end_count(e):
    """Number of ends when there are finitely many, else None."""
    n = normalize(e).expr
    parts = n.children if isinstance(n, Sum) else (n,)
    if all(isinstance(p, Pt) for p in parts):
        return len(parts)
    return None


def classify(s: SurfaceDesc, depth: int = 6) -> Verdict:
    triv = trivial_mcg(s)
    ev = {"trivial_mcg_scope": TRIVIAL_MCG_NOTE}
    if isinstance(s.ends, Empty):
        if s.genus == 0:
            return Verdict(s, Tri.TRUE, SPHERE, triv, evidence=ev)
        return Verdict(s, Tri.FALSE, COMPACT_NONTRIVIAL, triv, evidence=ev)
    if s.genus not in (0, GENUS_INF):
        return Verdict(s, Tri.FALSE, FINITE_POSITIVE_GENUS, triv, evidence=ev)

    try:
        m = maximal_set(s.ends, depth)
    except UndecidedOrder as exc:
        ev["undecided"] = str(exc)
        return Verdict(s, Tri.UNKNOWN, UNDECIDABLE, triv, evidence=ev,
                       axioms=exc.decision.axioms)
    ss = is_self_similar(s.ends, depth, m)
    ev["self_similarity"] = ss.to_json()
    axioms = ss.decision.axioms

    def out(value, reason):
        return Verdict(s, value, reason, triv, m, ss.value, ev, axioms)

    n = _finite_end_count(s.ends) if s.genus == 0 else None
    if n is not None and n >= 2:
        # finitely many planar ends: the plane is the only one-ended case
        ev["finite_ends"] = n
        return out(Tri.FALSE, FINITE_PLANAR if n >= 3 else MULTI_MAXIMAL)
    if m.kind == SINGLETON:
        if ss.value is Tri.UNKNOWN:
            return out(Tri.UNKNOWN, UNDECIDABLE)
        if ss.value is Tri.TRUE:
            return out(Tri.TRUE, UNIQUE_MAX_SELF_SIMILAR)
        return out(Tri.FALSE, NOT_SELF_SIMILAR)
    if m.kind == PAIR:
        return out(Tri.FALSE, DOUBLY_POINTED)
    if m.kind == CANTOR_SET:
        return out(Tri.FALSE, CANTOR_MAXIMAL)
    assert m.kind == OTHER
    return out(Tri.FALSE, MULTI_MAXIMAL)
