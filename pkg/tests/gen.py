"""Seeded random generators for expressions and surfaces."""
import random

from rokhlin.dsl import (GENUS_INF, NONPLANAR, PLANAR, Cantor, CantorOf, Omega, Pt, Sum,
                         SurfaceDesc, has_nonplanar)


def _flag(rng, allow_np):
    return NONPLANAR if allow_np and rng.random() < 0.4 else PLANAR


def gen_expr(rng: random.Random, depth=3, countable=False, allow_np=True):
    kinds = ["pt", "sum", "omega"] if countable else ["pt", "sum", "omega", "cantor", "cantor_of"]
    if depth <= 1:
        kinds = ["pt"] if countable else ["pt", "cantor"]
    kind = rng.choice(kinds)
    if kind == "pt":
        return Pt(_flag(rng, allow_np))
    if kind == "cantor":
        return Cantor(_flag(rng, allow_np))
    if kind == "sum":
        n = rng.randint(2, 3)
        return Sum(tuple(gen_expr(rng, depth - 1, countable, allow_np) for _ in range(n)))
    if kind == "cantor_of":
        return CantorOf(gen_expr(rng, depth - 1, countable, allow_np))
    members = []
    for _ in range(rng.randint(1, 2)):
        m = gen_expr(rng, depth - 1, countable, allow_np)
        if m not in members:
            members.append(m)
    flag = NONPLANAR if any(has_nonplanar(m) for m in members) else _flag(rng, allow_np)
    return Omega(tuple(members), flag)


def gen_surface(rng: random.Random, depth=3):
    if rng.random() < 0.1:
        from rokhlin.dsl import EMPTY
        return SurfaceDesc(rng.choice([0, 1, 2]), EMPTY)
    e = gen_expr(rng, depth)
    if has_nonplanar(e):
        return SurfaceDesc(GENUS_INF, e)
    return SurfaceDesc(rng.choice([0, 0, 1, 3]), e)


def corpus(seed, n, **kw):
    rng = random.Random(seed)
    return [gen_expr(rng, **kw) for _ in range(n)]


def perturb(rng: random.Random, e):
    """A random expression homeomorphic to ``e`` built by structural moves."""
    if isinstance(e, Sum):
        kids = [perturb(rng, c) for c in e.children]
        rng.shuffle(kids)
        if len(kids) > 2 and rng.random() < 0.3:
            i = rng.randrange(len(kids) - 1)
            kids[i:i + 2] = [Sum((kids[i], kids[i + 1]))]
        return Sum(tuple(kids))
    if isinstance(e, Omega):
        members = list(e.members)
        if rng.random() < 0.3:
            i = rng.randrange(len(members))
            doubled = Sum((members[i], members[i]))
            if doubled not in members:
                members[i] = doubled
        rng.shuffle(members)
        out = Omega(tuple(members), e.flag)
        if rng.random() < 0.4:
            prefix = tuple(perturb(rng, rng.choice(e.members)) for _ in range(rng.randint(1, 2)))
            out = Sum(prefix + (out,))
        return out
    if isinstance(e, Cantor):
        return Sum((e, e)) if rng.random() < 0.3 else e
    if isinstance(e, CantorOf):
        out = CantorOf(perturb(rng, e.inner))
        return Sum((out, out)) if rng.random() < 0.3 else out
    return e
