import pytest

from rokhlin import catalog
from rokhlin.dsl import parse_ends
from rokhlin.jepcheck import (LEVEL, NotCompactlySupported, NotGated, TypeMismatch, depth_family,
                              joint_realize, make_symbolic_map, verify_certificate)

from mutants import jep_mutants

FLUTE = catalog.get("flute").ends
LOCH = catalog.get("loch-ness").ends


def b(j, i=0):
    return (("block", j, i),)


def swap(j, k):
    return make_symbolic_map(FLUTE, [(b(j), b(k)), (b(k), b(j))])


def test_make_map():
    m = swap(0, 1)
    assert m.extent == 2 and not m.is_identity
    with pytest.raises(NotCompactlySupported):
        make_symbolic_map(FLUTE, [(b(0), (("tail", 1),))])
    assert make_symbolic_map(LOCH, ()).is_identity


def test_type_mismatch():
    e = parse_ends("omega(omega(pt))")
    with pytest.raises(TypeMismatch):
        make_symbolic_map(e, [(b(0), b(0) + b(0)), (b(0) + b(0), b(0))])


@pytest.mark.parametrize("text", ["cantor", "sum(pt@np, pt@np)", "sum(omega(pt), cantor)"])
def test_gate(text):
    with pytest.raises(NotGated):
        make_symbolic_map(parse_ends(text), ())


def test_overlapping_supports():
    m1, m2 = swap(0, 1), swap(1, 2)
    c = joint_realize(FLUTE, m1, m2)
    assert c.push == 3 and c.region == (("tail", 3),)
    assert c.level == LEVEL
    assert verify_certificate(c, FLUTE, m1, m2)


def test_identity_m2():
    m1, ident = swap(0, 2), make_symbolic_map(FLUTE, ())
    c = joint_realize(FLUTE, m1, ident)
    assert c.g_pairs == () and c.h == m1.pairs
    assert verify_certificate(c, FLUTE, m1, ident)
    t = joint_realize(FLUTE, ident, ident)
    assert t.h == () and t.push == 0 and verify_certificate(t, FLUTE, ident, ident)


def test_families():
    assert len(depth_family(FLUTE)) == 6
    assert len(depth_family(LOCH)) == 1


@pytest.mark.parametrize("e", [FLUTE, LOCH], ids=["flute", "loch-ness"])
def test_mutants_rejected(e):
    fam = depth_family(e)
    for m1 in fam:
        for m2 in fam:
            c = joint_realize(e, m1, m2)
            assert verify_certificate(c, e, m1, m2)
            muts = jep_mutants(c)
            assert len(muts) >= 20
            for m in muts:
                assert not verify_certificate(m, e, m1, m2), m


def test_wrong_product_rejected():
    m1, m2 = swap(0, 1), swap(1, 2)
    c = joint_realize(FLUTE, m1, m2)
    assert not verify_certificate(c, FLUTE, m2, m1)
