"""Ordinals below omega^omega in Cantor normal form, and point counts.

Counts of points live in N + {omega, continuum}; they are plain ``int`` or
one of the two sentinels below.
"""
from __future__ import annotations

from functools import total_ordering

__all__ = ["Ordinal", "OMEGA", "CONTINUUM", "card_add", "card_mul", "card_le",
           "card_str", "card_json"]


class _Infinite:
    __slots__ = ("name", "level")

    def __init__(self, name, level):
        self.name = name
        self.level = level

    def __repr__(self):
        return self.name

    def __reduce__(self):
        return (_sentinel, (self.name,))


def _sentinel(name):
    return OMEGA if name == "omega" else CONTINUUM


OMEGA = _Infinite("omega", 1)
CONTINUUM = _Infinite("continuum", 2)


def _level(c):
    return c.level if isinstance(c, _Infinite) else 0


def card_add(a, b):
    if isinstance(a, _Infinite) or isinstance(b, _Infinite):
        return a if _level(a) >= _level(b) else b
    return a + b


def card_mul(a, b):
    if a == 0 or b == 0:
        return 0
    if isinstance(a, _Infinite) or isinstance(b, _Infinite):
        return a if _level(a) >= _level(b) else b
    return a * b


def card_le(a, b) -> bool:
    la, lb = _level(a), _level(b)
    if la or lb:
        return la <= lb
    return a <= b


def card_str(c) -> str:
    return {OMEGA: "ω", CONTINUUM: "c"}.get(c, str(c)) if isinstance(c, _Infinite) else str(c)


def card_json(c):
    return c.name if isinstance(c, _Infinite) else c


@total_ordering
class Ordinal:
    """omega^e1*c1 + ... + omega^ek*ck with e1 > ... > ek >= 0, ci >= 1."""

    __slots__ = ("terms",)

    def __init__(self, terms=()):
        if isinstance(terms, int):
            terms = ((0, terms),) if terms else ()
        terms = tuple((int(e), int(c)) for e, c in terms if c)
        for (e1, _), (e2, _) in zip(terms, terms[1:]):
            if e1 <= e2:
                raise ValueError("exponents must strictly decrease")
        if any(e < 0 or c < 0 for e, c in terms):
            raise ValueError("negative exponent or coefficient")
        self.terms = terms

    @classmethod
    def omega_power(cls, exponent: int, coeff: int = 1) -> "Ordinal":
        return cls(((exponent, coeff),))

    def is_finite(self) -> bool:
        return not self.terms or self.terms[0][0] == 0

    def __add__(self, other):
        if isinstance(other, int):
            other = Ordinal(other)
        if not other.terms:
            return self
        lead = other.terms[0][0]
        kept = [t for t in self.terms if t[0] > lead]
        same = [c for e, c in self.terms if e == lead]
        head = [(lead, other.terms[0][1] + (same[0] if same else 0))]
        return Ordinal(tuple(kept) + tuple(head) + other.terms[1:])

    def __eq__(self, other):
        if isinstance(other, int):
            other = Ordinal(other)
        return isinstance(other, Ordinal) and self.terms == other.terms

    def __hash__(self):
        return hash(self.terms)

    def __lt__(self, other):
        if isinstance(other, int):
            other = Ordinal(other)
        return self.terms < other.terms

    def __int__(self):
        if not self.is_finite():
            raise ValueError(f"{self} is infinite")
        return self.terms[0][1] if self.terms else 0

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.terms:
            if e == 0:
                parts.append(str(c))
                continue
            base = "ω" if e == 1 else f"ω^{e}"
            parts.append(base if c == 1 else f"{base}·{c}")
        return " + ".join(parts)

    def __repr__(self):
        return f"Ordinal({self})"
