"""The ten acceptance criteria, one test each; prints a PASS/FAIL line per criterion.

Run under pytest (lines appear in the terminal summary) or directly as a script.
"""
import itertools
import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from rokhlin import catalog  # noqa: E402
from rokhlin.classify import (CANTOR_MAXIMAL, COMPACT_NONTRIVIAL, DOUBLY_POINTED,  # noqa: E402
                              FINITE_PLANAR, FINITE_POSITIVE_GENUS, MULTI_MAXIMAL, SPHERE,
                              UNIQUE_MAX_SELF_SIMILAR, classify, comeager_verdict)
from rokhlin.dsl import (InvariantError, Sum, SurfaceSyntaxError, parse_surface,  # noqa: E402
                         render_surface)
from rokhlin.endspace import cb_profile, normalize, normalize_steps  # noqa: E402
from rokhlin.endspace.embed import check_embed_cert, compose_certs, homeo_eq  # noqa: E402
from rokhlin.endspace.pieces import disjoint  # noqa: E402
from rokhlin.jepcheck import depth_family, joint_realize, verify_certificate  # noqa: E402
from rokhlin.order import (CANTOR_SET, UndecidedOrder, end_types, is_self_similar,  # noqa: E402
                           leq, maximal_set)
from rokhlin.witness import (dense_element_schedule, end_swap_schedule,  # noqa: E402
                             loch_ness_bound, piece_type_at, unpair, verify_dense_schedule,
                             verify_swap_schedule, word_at, words_up_to)

from gen import corpus, gen_expr, gen_surface, perturb  # noqa: E402
from golden_cases import CASES, GOLDEN, run  # noqa: E402
from mutants import jep_mutants  # noqa: E402

RESULTS: dict = {}

TITLES = {
    1: "catalog exactness",
    2: "comeager exactness",
    3: "rewrite/oracle agreement",
    4: "homeomorphism soundness",
    5: "preorder laws",
    6: "self-similarity absorption",
    7: "JEP certificates",
    8: "swap schedules",
    9: "dense schedules",
    10: "parser robustness and golden stability",
}


def _record(n, fn):
    try:
        detail = fn()
    except Exception as exc:
        RESULTS[n] = (False, f"{type(exc).__name__}: {exc}"[:300])
        raise
    RESULTS[n] = (True, detail)


def summary_lines():
    out = []
    for n in sorted(TITLES):
        if n not in RESULTS:
            continue
        ok, detail = RESULTS[n]
        out.append(f"{'PASS' if ok else 'FAIL'} {n:>2} {TITLES[n]}: {detail}")
    return out


# ------------------------------------------------------------------ 1, 2

EXPECTED = {
    "sphere": (True, {SPHERE}),
    "plane": (True, {UNIQUE_MAX_SELF_SIMILAR}),
    "loch-ness": (True, {UNIQUE_MAX_SELF_SIMILAR}),
    "flute": (True, {UNIQUE_MAX_SELF_SIMILAR}),
    "nonplanar-flute": (True, {UNIQUE_MAX_SELF_SIMILAR}),
    "cantor-tree": (False, {CANTOR_MAXIMAL}),
    "blooming-cantor-tree": (False, {CANTOR_MAXIMAL}),
    "ladder": (False, {DOUBLY_POINTED}),
    "annulus": (False, {FINITE_PLANAR, MULTI_MAXIMAL}),
    "three-punctured-sphere": (False, {FINITE_PLANAR, MULTI_MAXIMAL}),
    "torus": (False, {COMPACT_NONTRIVIAL}),
    "genus-3-flute": (False, {COMPACT_NONTRIVIAL, FINITE_POSITIVE_GENUS}),
}


def criterion_1():
    for name, (rok, reasons) in EXPECTED.items():
        v = classify(catalog.get(name))
        assert v.to_json()["rokhlin"] is rok, (name, v.rokhlin)
        assert v.reason in reasons, (name, v.reason)
    return f"{len(EXPECTED)} entries exact"


def criterion_2():
    names = catalog.names()
    hits = {n for n in names if comeager_verdict(catalog.get(n))}
    assert hits == {"sphere", "plane"}, hits
    return f"true exactly on {sorted(hits)} of {len(names)}"


# ------------------------------------------------------------------ 3, 4

def criterion_3():
    es = corpus(2024, 250, depth=4, countable=True)
    steps = 0
    by_profile: dict = {}
    for e in es:
        p = cb_profile(e)
        for rule, path, nxt in normalize_steps(e):
            assert cb_profile(nxt) == p, (rule, path, e)
            steps += 1
        by_profile.setdefault(p, set()).add(normalize(e).expr)
    clash = [v for v in by_profile.values() if len(v) > 1]
    assert not clash, clash[:1]
    return f"{len(es)} expressions, {steps} steps, {len(by_profile)} profile classes"


def criterion_4():
    rng = random.Random(4)
    diff = iso = unknown = 0
    for _ in range(600):
        a, b = gen_expr(rng, 4), gen_expr(rng, 4)
        if cb_profile(a) != cb_profile(b):
            assert homeo_eq(a, b).label != "Equal", (a, b)
            diff += 1
        seed = gen_expr(rng, 4)
        x, y = perturb(rng, seed), perturb(rng, seed)
        d = homeo_eq(x, y)
        assert d.label != "NotEqual", (x, y, d.reason)
        iso += 1
        unknown += d.unknown
    return f"{diff} profile-distinct pairs, {iso} isomorphic pairs ({unknown} Unknown)"


# ------------------------------------------------------------------ 5, 6

def criterion_5():
    es = corpus(5, 100, depth=4)
    refl = trans = dom = undecided = 0
    for e in es:
        types = end_types(e)
        for t in types:
            d = leq(t.locator, t.locator, e)
            assert d.yes and check_embed_cert(d.cert, t.stable, t.stable), (e, t)
            refl += 1
        table = {}
        for y, x in itertools.product(types, repeat=2):
            d = leq(y.locator, x.locator, e)
            table[y.locator, x.locator] = d
        for y, x, z in itertools.product(types, repeat=3):
            d1, d2 = table[y.locator, x.locator], table[x.locator, z.locator]
            if not (d1.yes and d2.yes):
                undecided += d1.unknown or d2.unknown
                continue
            c = compose_certs(d1.cert, d2.cert)
            assert c is not None and check_embed_cert(c, y.stable, z.stable), (e, y, x, z)
            assert not table[y.locator, z.locator].no
            trans += 1
        try:
            m = maximal_set(e)
        except UndecidedOrder:
            undecided += 1
            continue
        maxlocs = set(m.locators)
        for t in types:
            assert any(table[t.locator, x].yes for x in maxlocs if (t.locator, x) in table), (e, t)
            dom += 1
    return f"{refl} reflexive, {trans} composed triples, {dom} dominated types, {undecided} undecided"


def criterion_6():
    checked = []
    for name in catalog.names():
        e = catalog.get(name).ends
        if type(e).__name__ == "Empty":
            continue
        m = maximal_set(e)
        if m.kind == CANTOR_SET and is_self_similar(e, maximal=m).decision.yes:
            assert homeo_eq(Sum((e, e)), e).label == "Equal", name
            checked.append(name)
    assert checked
    return f"Sum(E,E) = E for {checked}"


# ------------------------------------------------------------------ 7, 8, 9

def criterion_7():
    certs = mutants = 0
    for name in ("flute", "loch-ness"):
        e = catalog.get(name).ends
        fam = depth_family(e, 3)
        for m1, m2 in itertools.product(fam, repeat=2):
            c = joint_realize(e, m1, m2)
            assert verify_certificate(c, e, m1, m2), (name, m1, m2)
            ms = jep_mutants(c)
            assert len(ms) >= 20
            for m in ms:
                assert not verify_certificate(m, e, m1, m2), (name, m)
            certs += 1
            mutants += len(ms)
    return f"{certs} certificates verified, {mutants} mutants rejected"


def criterion_8():
    names = [n for n in catalog.names()
             if classify(catalog.get(n)).reason == DOUBLY_POINTED]
    assert len(names) >= 3, names
    for n in names:
        sched = end_swap_schedule(catalog.get(n), 6)
        assert len(sched.rows) == 6 and verify_swap_schedule(sched), n
    return f"depth-6 schedules verified for {names}"


def criterion_9():
    s = catalog.get("loch-ness")
    sched = dense_element_schedule(s, 25)
    assert verify_dense_schedule(sched)
    assert len({e.n for e in sched.entries}) == 25     # one shell per entry
    regions = [p for e in sched.entries for p in e.region]
    assert all(disjoint(p, q) for p, q in itertools.combinations(regions, 2))
    bound = loch_ness_bound(2, 2)
    want = {(g, word_at(j, 2 * g + 2)) for g in (1, 2) for j in range(words_up_to(2 * g + 2, 2))}
    hit = set()
    for n in range(1, bound + 2):
        i, j = unpair(n - 1)
        pt = piece_type_at(s, i)
        hit.add((pt.genus, word_at(j, pt.alphabet)))
    assert want <= hit
    return f"25 entries in disjoint shells; {len(want)} (genus, word) pairs hit by index {bound}"


# ------------------------------------------------------------------ 10

_NOISE = list("{}:,()*@ \n0123456789") + ["pt", "np", "omega(", "cantor", "cantor_of(", "sum(",
                                          "genus", "ends", "none", "inf", "ω", "\x00"]


def criterion_10():
    rng = random.Random(10)
    valid = [gen_surface(rng, rng.randint(1, 5)) for _ in range(1000)]
    for s in valid:
        assert parse_surface(render_surface(s)) == s, s
    rejected = 0
    for k in range(1000):
        chars = list(render_surface(valid[k]))
        for _ in range(rng.randint(1, 5)):
            i = rng.randrange(len(chars) + 1)
            r = rng.random()
            if r < 0.4 and chars:
                del chars[min(i, len(chars) - 1)]
            elif r < 0.85:
                chars.insert(i, rng.choice(_NOISE))
            else:
                chars = chars[:i]
        try:
            parse_surface("".join(chars))
        except (SurfaceSyntaxError, InvariantError):
            rejected += 1
    for name, args in CASES.items():
        first, second = run(args).stdout, run(args).stdout
        assert first == second == (GOLDEN / f"{name}.jsonl").read_text(), name
    return f"1000 round trips, 1000 fuzz cases ({rejected} rejected cleanly), {len(CASES)} golden files stable"


CRITERIA = {n: globals()[f"criterion_{n}"] for n in TITLES}


@pytest.mark.parametrize("n", sorted(CRITERIA), ids=[f"criterion_{n}" for n in sorted(CRITERIA)])
def test_criterion(n):
    _record(n, CRITERIA[n])


if __name__ == "__main__":
    for n in sorted(CRITERIA):
        try:
            _record(n, CRITERIA[n])
        except Exception:
            pass
    print("\n".join(summary_lines()))
    sys.exit(0 if all(ok for ok, _ in RESULTS.values()) else 1)
