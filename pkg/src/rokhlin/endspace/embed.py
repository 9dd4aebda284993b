"""Homeomorphism tests and clopen-embedding search with checkable certificates."""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product

from ..dsl import (EMPTY, NONPLANAR, Cantor, CantorOf, Empty, Omega, Sum, children,
                   has_nonplanar, is_countable, render_expr)
from ..ordinals import card_json, card_le
from .pieces import (PieceError, canonical, concat, cost, disjoint, format_piece, parse_piece,
                     resolve)
from .profile import cb_profile
from .rewrite import normalize
from .sorts import analyze, germ_text, scattered_rank, top_key

AX_CANTOR_OF = "cantor-of-invariance"
AX_COUNTABLE = "countable-profile-completeness"


class Tri(enum.Enum):
    TRUE = "true"
    FALSE = "false"
    UNKNOWN = "unknown"


@dataclass(frozen=True, eq=False)
class Decision:
    value: Tri
    label: str
    reason: str = ""
    evidence: dict = field(default_factory=dict)
    axioms: tuple = ()
    cert: object = None

    @property
    def yes(self) -> bool:
        return self.value is Tri.TRUE

    @property
    def no(self) -> bool:
        return self.value is Tri.FALSE

    @property
    def unknown(self) -> bool:
        return self.value is Tri.UNKNOWN

    def to_json(self):
        out = {"verdict": self.label}
        if self.reason:
            out["reason"] = self.reason
        if self.evidence:
            out["evidence"] = self.evidence
        if self.cert is not None:
            out["certificate"] = self.cert.to_json()
        out["axiom_flags"] = list(self.axioms)
        return out


def _has_cantor_of(e) -> bool:
    return isinstance(e, CantorOf) or any(_has_cantor_of(c) for c in children(e))


def _axioms(*exprs, extra=()):
    out = list(extra)
    if any(_has_cantor_of(e) for e in exprs):
        out.append(AX_CANTOR_OF)
    return tuple(sorted(set(out)))


def _profile_gap(pa, pb):
    """Name and detail of the first CB invariant separating two profiles."""
    if len(pa.levels) != len(pb.levels):
        return "cb-rank", (len(pa.levels), len(pb.levels))
    for la, lb in zip(pa.levels, pb.levels):
        if (la.planar, la.nonplanar) != (lb.planar, lb.nonplanar):
            return "flag-count", (la.to_json(), lb.to_json())
    if pa.kernel != pb.kernel:
        return "kernel", (pa.kernel, pb.kernel)
    for la, lb in zip(pa.levels, pb.levels):
        if la.decoration != lb.decoration:
            return "decorated-profile", (la.to_json(), lb.to_json())
    return None


@lru_cache(maxsize=65536)
def homeo_eq(a, b) -> Decision:
    na, nb = normalize(a).expr, normalize(b).expr
    if na == nb:
        return Decision(Tri.TRUE, "Equal", "normal-form",
                        {"method": "normal-form", "normal_form": render_expr(na)},
                        _axioms(a, b))
    pa, pb = cb_profile(na), cb_profile(nb)
    gap = _profile_gap(pa, pb)
    ka, kb = pa.kernel_expr, pb.kernel_expr
    # a perfect space is its own kernel; recursing there would not terminate
    if gap is None and ka is not None and kb is not None and \
            (normalize(ka).expr, normalize(kb).expr) != (na, nb):
        sub = homeo_eq(ka, kb)
        if sub.no:
            gap = "kernel", (render_expr(pa.kernel_expr), render_expr(pb.kernel_expr))
    if gap is None:
        ia, ib = analyze(na).invariant(), analyze(nb).invariant()
        if ia != ib:
            gap = "class-count", ([list(x) for x in ia], [list(x) for x in ib])
    if gap is not None:
        name, (left, right) = gap
        return Decision(Tri.FALSE, "NotEqual", name,
                        {"invariant": name, "left": left, "right": right}, _axioms(a, b))
    if is_countable(na) and is_countable(nb):
        return Decision(Tri.TRUE, "Equal", "countable-profile",
                        {"method": "countable-profile", "profile": pa.to_json()},
                        _axioms(a, b, extra=(AX_COUNTABLE,)))
    return Decision(Tri.UNKNOWN, "Unknown", "no separating invariant", {}, _axioms(a, b))


# ------------------------------------------------------------------ certificates

@dataclass(frozen=True)
class CertPiece:
    source: object      # germ of the embedded space
    piece: tuple        # canonical descriptor in the target space
    target: object      # resolve(target space, piece)
    method: str         # how source and target were shown homeomorphic

    def to_json(self):
        return {"source": render_expr(self.source), "piece": format_piece(self.piece),
                "target": render_expr(self.target), "method": self.method}


@dataclass(frozen=True)
class EmbedCert:
    source: object
    target: object
    pieces: tuple

    def to_json(self):
        return {"source": render_expr(self.source), "target": render_expr(self.target),
                "pieces": [p.to_json() for p in self.pieces]}

    @classmethod
    def from_json(cls, obj):
        from ..dsl import parse_ends
        pieces = tuple(CertPiece(parse_ends(p["source"]), parse_piece(p["piece"]),
                                 parse_ends(p["target"]), p["method"]) for p in obj["pieces"])
        return cls(parse_ends(obj["source"]), parse_ends(obj["target"]), pieces)


def _sum_of(parts):
    parts = tuple(parts)
    if not parts:
        return EMPTY
    return parts[0] if len(parts) == 1 else Sum(parts)


def _flag_of(e):
    """Flag of the top point of a germ."""
    k = top_key(normalize(e).expr)
    return k.flag


def check_embed_cert(cert, a, b) -> bool:
    """Recompute every claim of a certificate; any mismatch rejects it."""
    try:
        if not isinstance(cert, EmbedCert) or cert.source != a or cert.target != b:
            return False
        for i, p in enumerate(cert.pieces):
            if p.piece != canonical(p.piece):
                return False
            if resolve(b, p.piece) != p.target:
                return False
            d = homeo_eq(p.source, p.target)
            if not d.yes or d.reason != p.method:
                return False
            if isinstance(p.source, Sum) or isinstance(p.source, Empty):
                return False
            if _flag_of(p.source) is not _flag_of(p.target):
                return False
            for q in cert.pieces[:i]:
                if not disjoint(p.piece, q.piece):
                    return False
        whole = _sum_of(p.source for p in cert.pieces)
        if isinstance(a, Empty) or isinstance(whole, Empty):
            return isinstance(a, Empty) and isinstance(whole, Empty)
        return homeo_eq(whole, a).yes
    except (PieceError, ValueError, TypeError, AttributeError):
        return False


# ------------------------------------------------------------------ search

def _words(max_len):
    for n in range(1, max_len + 1):
        for bits in product("01", repeat=n):
            yield "".join(bits)


@lru_cache(maxsize=4096)
def _walk(e, budget: int, max_word: int) -> tuple:
    """All (piece, sub-expression) pairs of ``e`` with cost <= budget."""
    out = [((), e)]
    if budget <= 0:
        return tuple(out)
    if isinstance(e, Sum):
        for i, c in enumerate(e.children):
            out += [((("sum", i),) + p, x) for p, x in _walk(c, budget - 1, max_word)]
    elif isinstance(e, Omega):
        for j in range(budget):
            for i, m in enumerate(e.members):
                step = ("block", j, i)
                out += [((step,) + p, x) for p, x in _walk(m, budget - 1 - j, max_word)]
        for j in range(1, budget):
            out.append(((("tail", j),), e))
    elif isinstance(e, (Cantor, CantorOf)):
        for w in _words(min(max_word, budget - 1)):
            out.append(((("half", w),), e))
        if isinstance(e, CantorOf):
            for w in [""] + list(_words(min(max_word, budget - 1))):
                rest = budget - 1 - len(w)
                step = ("attached", w)
                out += [(canonical((step,) + p), x) for p, x in _walk(e.inner, rest, max_word)]
    return tuple(out)


def _germs(e) -> tuple:
    n = normalize(e).expr
    if isinstance(n, Empty):
        return ()
    return n.children if isinstance(n, Sum) else (n,)


def _obstruction(germs, b):
    """A counting reason why the germs cannot sit disjointly inside ``b``, or None."""
    counts = analyze(normalize(b).expr).counts if not isinstance(b, Empty) else {}
    need: dict = {}
    for g in germs:
        k = top_key(g)
        need[k] = need.get(k, 0) + 1
    for k, n in sorted(need.items(), key=lambda kv: germ_text(kv[0])):
        if card_le(n, counts.get(k, 0)):
            continue
        a_np = any(has_nonplanar(g) for g in germs)
        if a_np and not any(c.flag is NONPLANAR for c in counts):
            return "np-absent", k, n
        ranks_b = [scattered_rank(c) for c in counts]
        a_iso = any(scattered_rank(c) == 0 for g in germs for c in analyze(g).counts)
        if a_iso and 0 not in ranks_b:
            return "no-isolated-points", k, n
        rk = scattered_rank(k)
        fin_b = [r for r in ranks_b if r is not None]
        if rk is not None and all(r < rk for r in fin_b) and all(r is not None for r in ranks_b):
            return "rank", k, n
        if counts.get(k, 0) == 0:
            return "class-absent", k, n
        return "count", k, n
    return None


def _matches(x, g) -> Decision | None:
    d = homeo_eq(x, g)
    return d if d.yes else None


def _assign(germs, cands, chosen, idx):
    if idx == len(germs):
        return list(chosen)
    for piece, x, d in cands[idx]:
        if all(disjoint(piece, q) for q, *_ in chosen):
            chosen.append((piece, x, d))
            found = _assign(germs, cands, chosen, idx + 1)
            if found is not None:
                return found
            chosen.pop()
    return None


def _search(germs, space, budget, depth):
    """Disjoint pieces of ``space`` (pairs (piece, expr)) matching the germs."""
    cands = []
    for g in germs:
        row = []
        for piece, x in space:
            d = _matches(x, g)
            if d is not None:
                row.append((piece, x, d))
        row.sort(key=lambda t: (cost(t[0]), format_piece(t[0])))
        cands.append(row)
    order = sorted(range(len(germs)), key=lambda i: (len(cands[i]), i))
    found = _assign([germs[i] for i in order], [cands[i] for i in order], [], 0)
    if found is None:
        return None
    out = [None] * len(germs)
    for slot, hit in zip(order, found):
        out[slot] = hit
    return out


def clopen_embeds(a, b, depth: int = 6) -> Decision:
    """Does ``b`` contain a clopen copy of ``a``?  Yes/No/Unknown with evidence."""
    germs = _germs(a)
    if not germs:
        return Decision(Tri.TRUE, "Yes", "empty", {}, (), EmbedCert(a, b, ()))
    obs = _obstruction(germs, b)
    if obs is not None:
        reason, k, n = obs
        return Decision(Tri.FALSE, "No", reason,
                        {"invariant": reason, "type": germ_text(k), "needed": card_json(n)},
                        _axioms(a, b))
    budget = depth + len(germs) - 1
    found = _search(germs, _walk(b, budget, depth), budget, depth)
    if found is None:
        return Decision(Tri.UNKNOWN, "Unknown", "search budget exhausted",
                        {"budget": budget}, _axioms(a, b))
    pieces = tuple(CertPiece(g, p, x, d.reason) for g, (p, x, d) in zip(germs, found))
    axioms = {ax for _, _, d in found for ax in d.axioms} | set(_axioms(a, b))
    return Decision(Tri.TRUE, "Yes", "embedding", {"pieces": len(pieces)},
                    tuple(sorted(axioms)), EmbedCert(a, b, pieces))


def compose_certs(c1: EmbedCert, c2: EmbedCert, depth: int = 6) -> EmbedCert | None:
    """An embedding a -> c from a -> b and b -> c.

    A piece of ``b`` inside a component that ``c2`` copies verbatim is moved by
    prefixing that copy's descriptor.  Otherwise the piece is searched for
    inside the regions that ``c2`` occupies in ``c``.
    """
    b, c = c1.target, c2.target
    comps = b.children if isinstance(b, Sum) else (b,)
    verbatim = len(comps) == len(c2.pieces) and all(
        p.source == comp and p.target == comp for p, comp in zip(c2.pieces, comps))
    out = []
    for p in c1.pieces:
        moved = None
        if verbatim:
            if isinstance(b, Sum) and p.piece and p.piece[0][0] == "sum":
                q = c2.pieces[p.piece[0][1]]
                moved = concat(q.piece, p.piece[1:])
            elif not isinstance(b, Sum):
                moved = concat(c2.pieces[0].piece, p.piece)
        if moved is not None:
            out.append(CertPiece(p.source, moved, resolve(c, moved), p.method))
            continue
        out.append(None)
    missing = [i for i, x in enumerate(out) if x is None]
    if missing:
        taken = [x.piece for x in out if x is not None]
        space = []
        for q in c2.pieces:
            for rel, x in _walk(q.target, depth, depth):
                piece = concat(q.piece, rel)
                if all(disjoint(piece, t) for t in taken):
                    space.append((piece, x))
        germs = [c1.pieces[i].source for i in missing]
        found = _search(germs, space, depth, depth)
        if found is None:
            return None
        for i, (piece, x, d) in zip(missing, found):
            out[i] = CertPiece(c1.pieces[i].source, piece, x, d.reason)
    return EmbedCert(c1.source, c, tuple(out))
