"""Constructive witnesses: dense-element support schedules and end-swap schedules.

Dense schedule: entry n carries a piece type and a generator word, chosen by the
Cantor pairing of n - 1, supported in the n-th shell of a descending chain of
neighbourhoods of the maximal end.  End punctures or other end chunks of a
piece are taken from fresh blocks of the maximal end's Omega, so regions never
meet.

Swap schedule: the two maximal ends of a doubly pointed space have Omega (or
point) neighbourhoods V and W; V_n, W_n are their tails and the rows record the
back-and-forth maps f_n, g_n between the blocks.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations_with_replacement
from math import isqrt

from .classify import classify, trivial_mcg
from .dsl import EMPTY, Omega, Pt, Sum, SurfaceDesc, render_expr, render_surface
from .endspace.embed import (CertPiece, EmbedCert, Tri, _walk, check_embed_cert,
                             clopen_embeds, homeo_eq)
from .endspace.pieces import concat, disjoint, format_piece, resolve
from .endspace.rewrite import normalize
from .endspace.sorts import analyze, canonical_germ, sort_key, top_key
from .order import PAIR, maximal_set


class NotRokhlin(ValueError):
    pass


class TrivialGroup(ValueError):
    pass


class NotDoublyPointed(ValueError):
    pass


class EmbedSearchFailed(RuntimeError):
    def __init__(self, stage, detail=""):
        self.stage = stage
        super().__init__(f"embedding search failed at stage {stage}" + (f": {detail}" if detail else ""))


# ------------------------------------------------------------------ pairing

def pair(i: int, j: int) -> int:
    return (i + j) * (i + j + 1) // 2 + j


def unpair(n: int) -> tuple:
    w = (isqrt(8 * n + 1) - 1) // 2
    j = n - w * (w + 1) // 2
    return w - j, j


def word_at(j: int, k: int) -> tuple:
    """The j-th word (0 = empty) in shortlex order over letters 1..k."""
    if k < 1:
        if j == 0:
            return ()
        raise ValueError("no letters")
    length, block = 0, 1
    while j >= block:
        j -= block
        length += 1
        block *= k
    letters = []
    for _ in range(length):
        j, r = divmod(j, k)
        letters.append(r + 1)
    return tuple(reversed(letters))


def words_up_to(k: int, length: int) -> int:
    return sum(k ** l for l in range(length + 1))


def format_word(w) -> str:
    return " ".join(f"t{x}" for x in w) or "ε"


# ------------------------------------------------------------------ dense schedule

@dataclass(frozen=True)
class PieceType:
    genus: int
    chunk: tuple        # end germs attached to the piece

    @property
    def alphabet(self) -> int:
        return (2 * self.genus + 2 if self.genus else 0) + len(self.chunk)

    def to_json(self):
        return {"genus": self.genus, "boundary": 1,
                "chunk": [render_expr(g) for g in self.chunk], "alphabet": self.alphabet}


@dataclass(frozen=True)
class DenseEntry:
    n: int
    piece: PieceType
    word: tuple
    type_index: int
    word_index: int
    region: tuple       # end pieces (descriptors in the normal form) carried by the entry

    def to_json(self):
        return {"n": self.n, "shell": self.n, "piece": self.piece.to_json(),
                "word": format_word(self.word), "pair": [self.type_index, self.word_index],
                "end_pieces": [format_piece(p) for p in self.region]}


@dataclass(frozen=True)
class DenseSchedule:
    surface: SurfaceDesc
    ends: object            # normal form that region descriptors refer to
    catalog: str            # "loch-ness", "planar" or "genus-and-chunks"
    entries: tuple

    def to_json(self):
        return {"surface": render_surface(self.surface), "ends": render_expr(self.ends),
                "piece_catalog": self.catalog,
                "pairing": "n-1 = (i+j)(i+j+1)/2 + j; i = piece type, j = shortlex word",
                "entries": [e.to_json() for e in self.entries]}


_CHUNKS: dict = {}


def nth_chunk(germs: tuple, idx: int) -> tuple:
    """The idx-th nonempty multiset of germs, by size, skipping homeomorphic repeats."""
    state = _CHUNKS.setdefault(germs, {"list": [], "seen": set(), "size": 0})
    while len(state["list"]) <= idx:
        state["size"] += 1
        for combo in combinations_with_replacement(germs, state["size"]):
            nf = normalize(combo[0] if len(combo) == 1 else Sum(combo)).expr
            if nf not in state["seen"]:
                state["seen"].add(nf)
                state["list"].append(tuple(combo))
    return state["list"][idx]


def _accumulating_germs(mu_germ) -> tuple:
    top = top_key(mu_germ)
    keys = [k for k in analyze(mu_germ).counts if k is not top]
    return tuple(sorted({canonical_germ(k) for k in keys}, key=sort_key))


def _piece_type(genus, accum, i) -> PieceType:
    if not accum:
        return PieceType(i + 1, ())
    if genus == 0:
        return PieceType(0, nth_chunk(accum, i))
    g, c = unpair(i + 1)
    return PieceType(g, () if c == 0 else nth_chunk(accum, c - 1))


def _dense_setup(s: SurfaceDesc):
    if trivial_mcg(s):
        raise TrivialGroup(f"{render_surface(s)} has trivial mapping class group")
    v = classify(s)
    if v.rokhlin is not Tri.TRUE:
        raise NotRokhlin(f"{render_surface(s)}: {v.reason}")
    nf = normalize(s.ends).expr
    accum = _accumulating_germs(nf)
    if not accum:
        cat = "loch-ness"
    elif s.genus == 0:
        cat = "planar"
    else:
        cat = "genus-and-chunks"
    return nf, accum, cat


@lru_cache(maxsize=None)
def _slot(nf, germ, depth):
    """Member index and relative piece of a block copy of ``germ`` inside each block."""
    for i, m in enumerate(nf.members):
        for rel, x in sorted(_walk(m, depth, depth), key=lambda t: (len(t[0]), format_piece(t[0]))):
            if homeo_eq(x, germ).yes:
                return i, rel
    raise EmbedSearchFailed(0, f"no block holds {render_expr(germ)}")


def piece_type_at(s: SurfaceDesc, i: int) -> PieceType:
    _, accum, _ = _dense_setup(s)
    return _piece_type(s.genus, accum, i)


def dense_element_schedule(s: SurfaceDesc, count: int, depth: int = 6) -> DenseSchedule:
    if count < 1:
        raise ValueError("count must be at least 1")
    nf, accum, cat = _dense_setup(s)
    entries, cursor = [], 0
    for n in range(1, count + 1):
        i, j = unpair(n - 1)
        pt = _piece_type(s.genus, accum, i)
        region = []
        for g in pt.chunk:
            m, rel = _slot(nf, g, depth)
            region.append(concat((("block", cursor, m),), rel))
            cursor += 1
        entries.append(DenseEntry(n, pt, word_at(j, pt.alphabet), i, j, tuple(region)))
    return DenseSchedule(s, nf, cat, tuple(entries))


def coverage_bound(s: SurfaceDesc, max_type: int, max_len: int) -> int:
    """Largest 0-based index needed to meet every type <= max_type with words <= max_len."""
    _, accum, _ = _dense_setup(s)
    best = 0
    for i in range(max_type + 1):
        k = _piece_type(s.genus, accum, i).alphabet
        best = max(best, pair(i, words_up_to(k, max_len) - 1))
    return best


def loch_ness_bound(max_genus: int, max_len: int) -> int:
    """bound(G, L) = pair(G - 1, W - 1) with W words of length <= L over 2G + 2 letters."""
    return pair(max_genus - 1, words_up_to(2 * max_genus + 2, max_len) - 1)


def verify_dense_schedule(sched: DenseSchedule, depth: int = 6) -> bool:
    try:
        nf, accum, _ = _dense_setup(sched.surface)
        if nf != sched.ends:
            return False
        seen = []
        for idx, e in enumerate(sched.entries):
            if e.n != idx + 1 or (e.type_index, e.word_index) != unpair(e.n - 1):
                return False
            if e.piece != _piece_type(sched.surface.genus, accum, e.type_index):
                return False
            if e.word != word_at(e.word_index, e.piece.alphabet):
                return False
            if len(e.region) != len(e.piece.chunk):
                return False
            for p, g in zip(e.region, e.piece.chunk):
                if not p or p[0][0] != "block":
                    return False        # would contain the maximal end
                if not homeo_eq(resolve(nf, p), g).yes:
                    return False
                if any(not disjoint(p, q) for q in seen):
                    return False
                seen.append(p)
        return True
    except (ValueError, KeyError, RuntimeError):
        return False


# ------------------------------------------------------------------ swap schedule

@dataclass(frozen=True)
class SwapMap:
    pairs: tuple        # ((domain piece, image piece), ...) relative to the side germs
    cert: EmbedCert

    def to_json(self):
        return {"pairs": [[format_piece(a), format_piece(b)] for a, b in self.pairs],
                "certificate": self.cert.to_json()}


@dataclass(frozen=True)
class SwapRow:
    n: int
    v_prime: tuple      # pieces of V (relative to V's germ)
    w_prime: tuple
    f: SwapMap
    g: SwapMap

    def to_json(self):
        return {"n": self.n, "V_prime": [format_piece(p) for p in self.v_prime],
                "W_prime": [format_piece(p) for p in self.w_prime],
                "f": self.f.to_json(), "g": self.g.to_json()}


@dataclass(frozen=True)
class SwapSchedule:
    surface: SurfaceDesc
    ends: object        # normal form sum(V, W)
    depth: int
    rows: tuple
    realized_at: int | None = None   # stage at which the swap is complete, if finite

    @property
    def v_germ(self):
        return self.ends.children[0]

    @property
    def w_germ(self):
        return self.ends.children[1]

    def to_json(self):
        return {"surface": render_surface(self.surface), "ends": render_expr(self.ends),
                "maximal_pair": ["sum:0", "sum:1"], "depth": self.depth,
                "realized_at": self.realized_at, "rows": [r.to_json() for r in self.rows]}


def _sum_of(parts):
    parts = tuple(parts)
    if not parts:
        return EMPTY
    return parts[0] if len(parts) == 1 else Sum(parts)


def _map(pairs, source_germ, target_germ) -> SwapMap:
    srcs = [resolve(source_germ, a) for a, _ in pairs]
    pieces = tuple(CertPiece(x, b, resolve(target_germ, b), homeo_eq(x, resolve(target_germ, b)).reason)
                   for x, (_, b) in zip(srcs, pairs))
    return SwapMap(tuple(pairs), EmbedCert(_sum_of(srcs), target_germ, pieces))


def _atom(j, i):
    return (("block", j, i),)


def end_swap_schedule(s: SurfaceDesc, depth: int = 6) -> SwapSchedule:
    if depth < 1:
        raise ValueError("depth must be at least 1")
    m = maximal_set(s.ends, depth)
    if m.kind != PAIR:
        raise NotDoublyPointed(f"maximal set is {m.kind}")
    nf = normalize(s.ends).expr
    if not (isinstance(nf, Sum) and len(nf.children) == 2 and nf.children[0] == nf.children[1]):
        raise EmbedSearchFailed(0, "the two maximal ends have different neighbourhood types")
    v = w = nf.children[0]
    if isinstance(v, Pt):
        empty = SwapMap((), EmbedCert(EMPTY, v, ()))
        rows = tuple(SwapRow(n, (), (), empty, empty) for n in range(1, depth + 1))
        return SwapSchedule(s, nf, depth, rows, realized_at=1)
    if not isinstance(v, Omega):
        raise EmbedSearchFailed(0, f"unsupported maximal neighbourhood {render_expr(v)}")
    members = range(len(v.members))
    used_v, used_w = set(), set()
    rows = []

    def first_free(used, lo, i):
        j = lo
        while (j, i) in used:
            j += 1
        return j

    for n in range(1, depth + 1):
        shell = n - 1
        a = [(shell, i) for i in members if (shell, i) not in used_v]
        dom_f = _sum_of(v.members[i] for _, i in a)
        if a and not clopen_embeds(dom_f, w, depth).yes:
            raise EmbedSearchFailed(n, "f")
        f_pairs = []
        for (j, i) in a:
            t = first_free(used_w, shell, i)
            used_v.add((j, i))
            used_w.add((t, i))
            f_pairs.append((_atom(j, i), _atom(t, i)))
        r = [(shell, i) for i in members if (shell, i) not in used_w]
        dom_g = _sum_of(w.members[i] for _, i in r)
        if r and not clopen_embeds(dom_g, v, depth).yes:
            raise EmbedSearchFailed(n, "g")
        g_pairs = []
        for (j, i) in r:
            t = first_free(used_v, n, i)
            used_w.add((j, i))
            used_v.add((t, i))
            g_pairs.append((_atom(j, i), _atom(t, i)))
        f = _map(f_pairs, v, w)
        g = _map(g_pairs, w, v)
        v_prime = tuple(p for p, _ in f_pairs) + tuple(q for _, q in g_pairs)
        w_prime = tuple(q for _, q in f_pairs) + tuple(p for p, _ in g_pairs)
        rows.append(SwapRow(n, v_prime, w_prime, f, g))
    return SwapSchedule(s, nf, depth, tuple(rows))


def _block_j(piece):
    return piece[0][1]


def verify_swap_schedule(sched: SwapSchedule) -> bool:
    """Recheck every stagewise identity of the back-and-forth construction."""
    try:
        nf = normalize(sched.surface.ends).expr
        if nf != sched.ends or len(sched.rows) != sched.depth:
            return False
        v, w = sched.v_germ, sched.w_germ
        if isinstance(v, Pt):
            return sched.realized_at == 1 and all(
                not r.v_prime and not r.w_prime and not r.f.pairs and not r.g.pairs
                and check_embed_cert(r.f.cert, EMPTY, v) and check_embed_cert(r.g.cert, EMPTY, w)
                for r in sched.rows)
        members = range(len(v.members))
        done_v: list = []
        done_w: list = []
        for idx, r in enumerate(sched.rows):
            n = idx + 1
            if r.n != n:
                return False
            shell = n - 1
            diff_v = [_atom(shell, i) for i in members]
            diff_w = [_atom(shell, i) for i in members]
            f_dom = [a for a, _ in r.f.pairs]
            f_img = [b for _, b in r.f.pairs]
            g_dom = [a for a, _ in r.g.pairs]
            g_img = [b for _, b in r.g.pairs]
            # f_n: (V_n \ V_{n+1}) minus earlier V' into W_n minus earlier W'
            if sorted(f_dom) != sorted(p for p in diff_v if p not in done_v):
                return False
            if any(_block_j(b) < shell or b in done_w for b in f_img):
                return False
            # g_n: (W_n \ W_{n+1}) minus earlier W' and im f_n into V_{n+1} minus earlier V'
            if sorted(g_dom) != sorted(p for p in diff_w if p not in done_w and p not in f_img):
                return False
            if any(_block_j(b) < n or b in done_v for b in g_img):
                return False
            if tuple(f_dom + g_img) != r.v_prime or tuple(f_img + g_dom) != r.w_prime:
                return False
            for side, germ, new, done in ((v, v, r.v_prime, done_v), (w, w, r.w_prime, done_w)):
                for k, p in enumerate(new):
                    resolve(germ, p)
                    if any(not disjoint(p, q) for q in list(done) + list(new[:k])):
                        return False
            for mp, src, dst in ((r.f, v, w), (r.g, w, v)):
                srcs = _sum_of(resolve(src, a) for a, _ in mp.pairs)
                if not check_embed_cert(mp.cert, srcs, dst):
                    return False
                if tuple(p.piece for p in mp.cert.pieces) != tuple(b for _, b in mp.pairs):
                    return False
            done_v += list(r.v_prime)
            done_w += list(r.w_prime)
            # partition identity: V \ V_{n+1} is covered by V'_1..V'_n, rest lies in V_{n+1}
            for done in (done_v, done_w):
                covered = {p for p in done}
                if any(_atom(j, i) not in covered for j in range(n) for i in members):
                    return False
        return True
    except (ValueError, KeyError, RuntimeError, IndexError, TypeError):
        return False
