"""Named surfaces used in examples and tests."""
from __future__ import annotations

from .dsl import parse_surface

# name -> (surface text, short description)
CATALOG = {
    "sphere": ("surface { genus: 0, ends: none }", "the 2-sphere"),
    "plane": ("surface { genus: 0, ends: pt }", "the plane"),
    "annulus": ("surface { genus: 0, ends: sum(pt, pt) }", "open annulus"),
    "three-punctured-sphere": ("surface { genus: 0, ends: 3 * pt }", "sphere minus three points"),
    "torus": ("surface { genus: 1, ends: none }", "closed torus"),
    "genus-3-flute": ("surface { genus: 3, ends: omega(pt) }", "flute with three handles"),
    "loch-ness": ("surface { genus: inf, ends: pt@np }", "one-ended infinite genus"),
    "flute": ("surface { genus: 0, ends: omega(pt) }", "plane minus a closed discrete set"),
    "nonplanar-flute": ("surface { genus: inf, ends: omega(pt@np)@np }",
                        "Loch Ness monsters accumulating at one nonplanar end"),
    "cantor-tree": ("surface { genus: 0, ends: cantor }", "sphere minus a Cantor set"),
    "blooming-cantor-tree": ("surface { genus: inf, ends: cantor@np }",
                             "Cantor tree with genus at every end"),
    "ladder": ("surface { genus: inf, ends: sum(pt@np, pt@np) }", "Jacob's ladder"),
    "double-flute": ("surface { genus: 0, ends: sum(omega(pt), omega(pt)) }",
                     "two punctured sequences with distinct limits"),
    "spotted-ladder": ("surface { genus: inf, ends: sum(omega(pt@np)@np, omega(pt@np)@np) }",
                       "two ends, each a limit of one-ended genus"),
    "spotted-cantor-tree": ("surface { genus: 0, ends: cantor_of(pt) }",
                            "Cantor tree with punctures accumulating on the Cantor set"),
    "spotted-plane": ("surface { genus: 0, ends: omega(pt) }",
                      "plane with punctures accumulating at infinity (same as flute)"),
    "spotted-loch-ness": ("surface { genus: inf, ends: omega(pt)@np }",
                          "Loch Ness monster with punctures accumulating at its end"),
    "omega-squared-flute": ("surface { genus: 0, ends: omega(omega(pt)) }",
                            "planar, end space of order type omega^2 + 1"),
}


def names() -> list:
    return list(CATALOG)


def get(name: str):
    try:
        text, _ = CATALOG[name]
    except KeyError:
        raise KeyError(f"unknown catalog entry {name!r}; known: {', '.join(CATALOG)}") from None
    return parse_surface(text)


def describe(name: str) -> str:
    return CATALOG[name][1]
