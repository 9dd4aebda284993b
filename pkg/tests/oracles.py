"""Independent oracles built on explicit truncated point models.

A model keeps ``m`` blocks of every Omega and Cantor words of length ``L``.
Blocks of one Omega are identical copies, so "a point of X in the last block"
stands in for "points of X arbitrarily close to the limit".  Quantities that
grow when ``m`` grows are infinite.
"""
from rokhlin.dsl import Cantor, CantorOf, Omega, Pt, Sum
from rokhlin.ordinals import OMEGA


def points(e, m=3, L=3, prefix=()):
    """Addresses and flags of the model's points."""
    if isinstance(e, Pt):
        return {prefix: e.flag}
    if isinstance(e, Sum):
        out = {}
        for i, c in enumerate(e.children):
            out.update(points(c, m, L, prefix + (("s", i),)))
        return out
    if isinstance(e, Omega):
        out = {prefix + (("lim",),): e.flag}
        for j in range(m):
            for i, c in enumerate(e.members):
                out.update(points(c, m, L, prefix + (("b", j, i),)))
        return out
    if isinstance(e, Cantor):
        return {prefix + (("c", w),): e.flag for w in _leaves(L)}
    if isinstance(e, CantorOf):
        from rokhlin.dsl import NONPLANAR, PLANAR, has_nonplanar
        flag = NONPLANAR if has_nonplanar(e.inner) else PLANAR
        out = {prefix + (("c", w),): flag for w in _leaves(L)}
        for w in _nodes(L):
            out.update(points(e.inner, m, L, prefix + (("a", w),)))
        return out
    return {}


def _leaves(L):
    return [format(i, f"0{L}b") for i in range(2 ** L)]


def _nodes(L):
    return [""] + [format(i, f"0{n}b") for n in range(1, L) for i in range(2 ** n)]


def derived(X, m):
    """Non-isolated points of X (countable models only)."""
    out = {}
    for p, f in X.items():
        if p and p[-1] == ("lim",):
            base = p[:-1]
            near = base + (("b", m - 1),)
            if any(q[:len(base)] == base and len(q) > len(base) and q[len(base)][:2] == near[-1]
                   for q in X):
                out[p] = f
    return out


def profile(e, ms=(2, 3)):
    """Per-rank (planar, nonplanar) counts; a count that grows with m is OMEGA."""
    runs = []
    for m in ms:
        X = points(e, m, 1)
        levels = []
        while X:
            D = derived(X, m)
            iso = [f for p, f in X.items() if p not in D]
            levels.append((sum(1 for f in iso if f.value == "p"),
                           sum(1 for f in iso if f.value == "np")))
            X = D
        runs.append(levels)
    a, b = runs
    assert len(a) == len(b)
    return [tuple(x if x == y else OMEGA for x, y in zip(la, lb)) for la, lb in zip(a, b)]


def point_types(e, m=3):
    """Type of each point: flag plus the set of types accumulating at it."""
    X = points(e, m, 1)
    types = {}

    def tp(p):
        if p in types:
            return types[p]
        if p and p[-1] == ("lim",):
            base = p[:-1]
            k = len(base)
            acc = frozenset(tp(q) for q in X
                            if q[:k] == base and len(q) > k and q[k][0] == "b" and q[k][1] == m - 1)
            t = (X[p].value, acc)
        else:
            t = (X[p].value, frozenset())
        types[p] = t
        return t

    for p in X:
        tp(p)
    return types


def decorated_invariant(e):
    """Count of points per type; counts growing with the model size become OMEGA."""
    counts = []
    for m in (3, 4):
        c = {}
        # types are computed in a model with m blocks but only depend on block shape
        for p, t in point_types(e, m).items():
            c[t] = c.get(t, 0) + 1
        counts.append(c)
    a, b = counts
    assert set(a) == set(b)
    return frozenset((t, a[t] if a[t] == b[t] else "omega") for t in a)


def piece_points(e, piece, m=6, L=6, prefix=()):
    """Point addresses of a piece in the model (sets, for disjointness checks)."""
    if not piece:
        return set(points(e, m, L, prefix))
    step, rest = piece[0], piece[1:]
    kind = step[0]
    if kind == "sum":
        return piece_points(e.children[step[1]], rest, m, L, prefix + (("s", step[1]),))
    if kind == "block":
        j, i = step[1], step[2]
        return piece_points(e.members[i], rest, m, L, prefix + (("b", j, i),))
    if kind == "tail":
        allp = set(points(e, m, L, prefix))
        k = len(prefix)
        return {p for p in allp if p[k] == ("lim",) or p[k][1] >= step[1]}
    if kind == "half":
        w = step[1]
        allp = set(points(e, m, L, prefix))
        k = len(prefix)
        return {p for p in allp if p[k][1].startswith(w)}
    if kind == "attached":
        w = step[1]
        return piece_points(e.inner, rest, m, L, prefix + (("a", w),))
    raise ValueError(step)
