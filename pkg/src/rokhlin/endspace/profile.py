"""Cantor-Bendixson derivative and the decorated rank profile."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from ..dsl import (EMPTY, NONPLANAR, PLANAR, Cantor, CantorOf, Empty, Omega, Pt, Sum,
                   has_nonplanar, render_expr)
from ..ordinals import OMEGA, Ordinal, card_add, card_json, card_mul
from .sorts import analyze, germ_text, scattered_rank

KERNEL_NONE = "None"
KERNEL_PLANAR = "PlanarCantorLike"
KERNEL_NONPLANAR = "NonPlanarCantorLike"
KERNEL_MIXED = "Mixed"


def _dedupe(items):
    seen, out = set(), []
    for x in items:
        if x not in seen:
            seen.add(x)
            out.append(x)
    return tuple(out)


@lru_cache(maxsize=None)
def cb_derivative(e):
    """The subspace of non-isolated points, as an expression."""
    if isinstance(e, (Empty, Pt)):
        return EMPTY
    if isinstance(e, Cantor):
        return e
    if isinstance(e, Sum):
        parts = [d for d in map(cb_derivative, e.children) if not isinstance(d, Empty)]
        if not parts:
            return EMPTY
        return parts[0] if len(parts) == 1 else Sum(tuple(parts))
    if isinstance(e, Omega):
        parts = _dedupe(d for d in map(cb_derivative, e.members) if not isinstance(d, Empty))
        return Omega(parts, e.flag) if parts else Pt(e.flag)
    if isinstance(e, CantorOf):
        d = cb_derivative(e.inner)
        if isinstance(d, Empty):
            return Cantor(NONPLANAR if has_nonplanar(e.inner) else PLANAR)
        return CantorOf(d)
    raise TypeError(f"not an end-space expression: {e!r}")


@lru_cache(maxsize=None)
def isolated_counts(e) -> tuple:
    """(planar, nonplanar) numbers of isolated points of ``e``."""
    if isinstance(e, (Empty, Cantor)):
        return (0, 0)
    if isinstance(e, Pt):
        return (0, 1) if e.flag is NONPLANAR else (1, 0)
    if isinstance(e, Sum):
        p = q = 0
        for c in e.children:
            a, b = isolated_counts(c)
            p, q = card_add(p, a), card_add(q, b)
        return (p, q)
    if isinstance(e, Omega):
        p = q = 0
        for m in e.members:
            a, b = isolated_counts(m)
            p, q = card_add(p, a), card_add(q, b)
        return (card_mul(p, OMEGA), card_mul(q, OMEGA))
    if isinstance(e, CantorOf):
        a, b = isolated_counts(e.inner)
        return (card_mul(a, OMEGA), card_mul(b, OMEGA))
    raise TypeError(f"not an end-space expression: {e!r}")


@dataclass(frozen=True)
class Level:
    ordinal: Ordinal
    planar: object
    nonplanar: object
    decoration: tuple       # ((germ text, count), ...) of the points of this rank

    def to_json(self):
        return {"rank": str(self.ordinal), "planar": card_json(self.planar),
                "nonplanar": card_json(self.nonplanar),
                "types": [[t, card_json(c)] for t, c in self.decoration]}


@dataclass(frozen=True)
class CBProfile:
    levels: tuple
    kernel: str
    kernel_expr: object = None

    @property
    def countable(self) -> bool:
        return self.kernel == KERNEL_NONE

    def order_type(self):
        """omega^r * d + 1 for a countable space of rank r and degree d (d if finite)."""
        if not self.countable:
            return None
        if not self.levels:
            return Ordinal(0)
        top = self.levels[-1]
        degree = card_add(top.planar, top.nonplanar)
        if int(top.ordinal) == 0:
            return Ordinal(degree)
        return Ordinal.omega_power(int(top.ordinal), degree) + 1

    def to_json(self):
        out = {"levels": [lv.to_json() for lv in self.levels], "kernel": self.kernel}
        if self.kernel_expr is not None:
            out["kernel_expr"] = render_expr(self.kernel_expr)
        return out


def _decorations(e) -> dict:
    by_rank: dict = {}
    for k, c in analyze(e).counts.items():
        r = scattered_rank(k)
        if r is None:
            continue
        by_rank.setdefault(r, []).append((germ_text(k), c))
    return {r: tuple(sorted(v, key=lambda t: t[0])) for r, v in by_rank.items()}


@lru_cache(maxsize=None)
def cb_profile(e) -> CBProfile:
    """Iterate the derivative, recording isolated points by flag at each rank."""
    from .rewrite import normalize

    decorations = _decorations(e)
    levels = []
    cur, rank = e, 0
    while not isinstance(cur, Empty):
        p, q = isolated_counts(cur)
        if p == 0 and q == 0:
            break
        levels.append(Level(Ordinal(rank), p, q, decorations.get(rank, ())))
        cur, rank = cb_derivative(cur), rank + 1
    if isinstance(cur, Empty):
        return CBProfile(tuple(levels), KERNEL_NONE)
    kernel = normalize(cur).expr
    if kernel == Cantor():
        kind = KERNEL_PLANAR
    elif kernel == Cantor(NONPLANAR):
        kind = KERNEL_NONPLANAR
    else:
        kind = KERNEL_MIXED
    return CBProfile(tuple(levels), kind, kernel)
