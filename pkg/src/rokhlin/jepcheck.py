"""Joint-embedding certificates at the level of end permutations.

A symbolic map permutes finitely many clopen pieces lying in finitely many
blocks of the maximal end's Omega (its support avoids a tail).  Given two maps
``m1`` and ``m2`` we push the support of ``m2`` into the tail ``B`` past both
supports with a block shift ``g`` and take ``h = m1 * (g m2 g^-1)``, which lies
in the first basic set and in the conjugate of the second.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations

from .dsl import EMPTY, Omega, Pt, Sum, render_expr
from .endspace.embed import CertPiece, EmbedCert, check_embed_cert, clopen_embeds, homeo_eq
from .endspace.pieces import canonical, disjoint, format_piece, resolve
from .endspace.rewrite import normalize
from .order import SINGLETON, is_self_similar, maximal_set

LEVEL = "end-permutation-quotient"


class JepError(ValueError):
    pass


class TypeMismatch(JepError):
    def __init__(self, pair):
        self.pair = pair
        super().__init__(f"pieces {format_piece(pair[0])} and {format_piece(pair[1])} are not homeomorphic")


class NotCompactlySupported(JepError):
    def __init__(self, piece):
        self.piece = piece
        super().__init__(f"piece '{format_piece(piece)}' meets every neighbourhood of the maximal end")


class NotGated(JepError):
    pass


class EmbedSearchFailed(RuntimeError):
    pass


@dataclass(frozen=True)
class SymbolicMap:
    ends: object        # normal-form germ of the maximal end
    pairs: tuple        # ((source piece, image piece), ...)

    @property
    def extent(self) -> int:
        """Number of leading blocks that contain the support."""
        return max((p[0][1] + 1 for pair in self.pairs for p in pair), default=0)

    @property
    def is_identity(self) -> bool:
        return all(a == b for a, b in self.pairs)

    def apply(self, piece):
        """Image of a piece: moved if it is a source, fixed if disjoint from all sources."""
        for a, b in self.pairs:
            if a == piece:
                return b
        if all(disjoint(piece, a) for a, _ in self.pairs):
            return piece
        return None

    def to_json(self):
        return {"ends": render_expr(self.ends),
                "pairs": [[format_piece(a), format_piece(b)] for a, b in self.pairs]}


def _gate(e):
    nf = normalize(e).expr
    if not isinstance(nf, (Omega, Pt)):
        raise NotGated(f"{render_expr(e)} has no unique maximal end with a tail basis")
    m = maximal_set(nf)
    if m.kind != SINGLETON or not is_self_similar(nf, maximal=m).decision.yes:
        raise NotGated(f"{render_expr(e)} is not self-similar with a unique maximal end")
    return nf


def make_symbolic_map(e, pairs) -> SymbolicMap:
    nf = _gate(e)
    pairs = tuple((canonical(a), canonical(b)) for a, b in pairs)
    for pair in pairs:
        for p in pair:
            if not p or p[0][0] != "block":
                raise NotCompactlySupported(p)
            resolve(nf, p)
        if not homeo_eq(resolve(nf, pair[0]), resolve(nf, pair[1])).yes:
            raise TypeMismatch(pair)
    srcs = [a for a, _ in pairs]
    dsts = [b for _, b in pairs]
    if len(set(srcs)) != len(srcs) or set(srcs) != set(dsts):
        raise JepError("pairs must permute a fixed set of pieces")
    for i, a in enumerate(srcs):
        for b in srcs[:i]:
            if not disjoint(a, b):
                raise JepError(f"pieces {format_piece(a)} and {format_piece(b)} overlap")
    return SymbolicMap(nf, pairs)


def _shift(piece, k):
    (kind, j, i), rest = piece[0], piece[1:]
    return ((kind, j + k, i),) + rest


@dataclass(frozen=True)
class JepCertificate:
    ends: object
    m1: SymbolicMap
    m2: SymbolicMap
    push: int           # B is the tail past the first ``push`` blocks
    region: tuple       # descriptor of B
    g_pairs: tuple      # block moves realising g on the support region
    g_cert: EmbedCert
    conjugate: tuple    # pairs of g m2 g^-1
    h: tuple            # pairs of h = m1 * (g m2 g^-1)
    level: str = LEVEL

    def to_json(self):
        fmt = lambda ps: [[format_piece(a), format_piece(b)] for a, b in ps]  # noqa: E731
        return {"ends": render_expr(self.ends), "m1": self.m1.to_json(), "m2": self.m2.to_json(),
                "B": format_piece(self.region) or "<whole>", "push": self.push,
                "g": {"pairs": fmt(self.g_pairs), "certificate": self.g_cert.to_json()},
                "conjugate": fmt(self.conjugate), "h": fmt(self.h), "level": self.level,
                "commutation": "supports of m1 and g m2 g^-1 are disjoint"}


def _g_cert(nf, k, g_pairs):
    srcs = tuple(resolve(nf, a) for a, _ in g_pairs)
    source = EMPTY if not srcs else srcs[0] if len(srcs) == 1 else Sum(srcs)
    pieces = tuple(CertPiece(x, b, resolve(nf, b), homeo_eq(x, resolve(nf, b)).reason)
                   for x, (_, b) in zip(srcs, g_pairs))
    return EmbedCert(source, nf, pieces)


def _region_pieces(nf, k):
    if isinstance(nf, Pt):
        return ()
    return tuple(((("block", j, i),)) for j in range(k) for i in range(len(nf.members)))


def joint_realize(e, m1: SymbolicMap, m2: SymbolicMap, depth: int = 6) -> JepCertificate:
    nf = _gate(e)
    if m1.ends != nf or m2.ends != nf:
        raise JepError("maps live on a different end space")
    if m2.is_identity:
        k = m1.extent
        g_pairs = ()
    else:
        k = max(m1.extent, m2.extent)
        g_pairs = tuple((p, _shift(p, k)) for p in _region_pieces(nf, k))
    region = (("tail", k),) if k else ()
    cert = _g_cert(nf, k, g_pairs)
    if g_pairs:
        d = clopen_embeds(cert.source, nf, depth)
        if not d.yes:
            raise EmbedSearchFailed(f"support region does not embed into B: {d.reason}")
    conj = tuple((_shift(a, k), _shift(b, k)) for a, b in m2.pairs) if g_pairs else ()
    h = tuple(m1.pairs) + tuple(conj)
    return JepCertificate(nf, m1, m2, k, region, g_pairs, cert, conj, h)


def _product(first, second, pieces):
    out = {}
    for p in pieces:
        q = first.apply(p)
        if q is None:
            return None
        r = second.apply(q)
        if r is None:
            return None
        out[p] = r
    return out


def verify_certificate(c, e, m1, m2) -> bool:
    try:
        nf = _gate(e)
        if not isinstance(c, JepCertificate) or c.level != LEVEL:
            return False
        if c.ends != nf or c.m1 != m1 or c.m2 != m2 or m1.ends != nf or m2.ends != nf:
            return False
        # both maps are valid symbolic maps
        if make_symbolic_map(nf, m1.pairs) != m1 or make_symbolic_map(nf, m2.pairs) != m2:
            return False
        k = c.push
        if k < m1.extent or (not m2.is_identity and k < m2.extent):
            return False
        if c.region != ((("tail", k),) if k else ()):
            return False
        if isinstance(nf, Pt) and (k or c.g_pairs or m1.pairs or m2.pairs):
            return False
        # g moves the first k blocks into B, member by member
        if m2.is_identity:
            if c.g_pairs:
                return False
        elif c.g_pairs != tuple((p, _shift(p, k)) for p in _region_pieces(nf, k)):
            return False
        for a, b in c.g_pairs:
            if not b or b[0][0] != "block" or b[0][1] < k:
                return False
        if c.g_cert != _g_cert(nf, k, c.g_pairs):
            return False
        if not check_embed_cert(c.g_cert, c.g_cert.source, nf):
            return False
        expect = tuple((_shift(a, k), _shift(b, k)) for a, b in m2.pairs) if c.g_pairs else ()
        if c.conjugate != expect:
            return False
        # supports disjoint: m1 stays outside B, the conjugate inside it
        for a, _ in m1.pairs:
            for b, _ in c.conjugate:
                if not disjoint(a, b):
                    return False
        if c.h != tuple(m1.pairs) + tuple(c.conjugate):
            return False
        h = SymbolicMap(nf, c.h)
        conj = SymbolicMap(nf, c.conjugate)
        pieces = [a for a, _ in c.h]
        hmap = dict(c.h)
        if len(hmap) != len(c.h):
            return False
        one = _product(m1, conj, pieces)
        two = _product(conj, m1, pieces)
        if one is None or two is None or one != two or one != hmap:
            return False
        # h agrees with m1 on its pieces and with the conjugate on the moved ones
        return all(h.apply(a) == b for a, b in list(m1.pairs) + list(c.conjugate))
    except (JepError, ValueError, KeyError, TypeError, IndexError, AttributeError):
        return False


def depth_family(e, depth: int = 3) -> list:
    """Every symbolic map permuting the first ``depth`` blocks of the same member."""
    nf = _gate(e)
    if isinstance(nf, Pt):
        return [make_symbolic_map(nf, ())]
    maps = []
    for i in range(len(nf.members)):
        blocks = [(("block", j, i),) for j in range(depth)]
        for perm in permutations(range(depth)):
            pairs = tuple((blocks[a], blocks[b]) for a, b in enumerate(perm))
            m = make_symbolic_map(nf, pairs)
            if m not in maps:
                maps.append(m)
    return maps
