"""Free n-quandles as conjugates of generators in a free product of cyclic groups.

An element is ``s^g = g^-1 s g`` in ``Z_n * ... * Z_n`` with ``g`` a reduced
syllable word.  Because the centralizer of ``s`` is ``<s>``, stripping leading
``s``-syllables from ``g`` gives a unique normal form.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import ParseError


def reduce_syllables(word, n):
    """Freely reduce ``(gen, exp)`` syllables with exponents taken mod ``n``."""
    out = []
    for g, e in word:
        e %= n
        if e == 0:
            continue
        if out and out[-1][0] == g:
            e2 = (out[-1][1] + e) % n
            out.pop()
            if e2:
                out.append((g, e2))
        else:
            out.append((g, e))
    return tuple(out)


def invert_syllables(word, n):
    return tuple((g, (-e) % n) for g, e in reversed(word))


@dataclass(frozen=True)
class FreeNQuandleElement:
    n: int
    s: int
    g: tuple = ()

    def __post_init__(self):
        g = reduce_syllables(self.g, self.n)
        while g and g[0][0] == self.s:
            g = g[1:]
        object.__setattr__(self, "g", g)

    def __mul__(self, other):
        return fq_op(self, other)

    def __str__(self):
        return format_fq(self)


def fq_generator(n, s):
    return FreeNQuandleElement(n, s, ())


def _check(u, v):
    if u.n != v.n:
        raise ValueError(f"order mismatch: {u.n} vs {v.n}")


def fq_op(u, v):
    """``u * v = v^-1 u v``: conjugator becomes ``g h^-1 t h``."""
    _check(u, v)
    h = v.g
    conj = u.g + invert_syllables(h, u.n) + ((v.s, 1),) + h
    return FreeNQuandleElement(u.n, u.s, conj)


def fq_inverse_op(u, v):
    """``u *^-1 v = v u v^-1``: conjugator becomes ``g h^-1 t^-1 h``."""
    _check(u, v)
    h = v.g
    conj = u.g + invert_syllables(h, u.n) + ((v.s, u.n - 1),) + h
    return FreeNQuandleElement(u.n, u.s, conj)


def fq_equal(u, v):
    return u.n == v.n and u.s == v.s and u.g == v.g


_SYL = re.compile(r"\s*([A-Za-z_]\w*)\s*(?:\^\s*(-?\d+))?\s*")


def parse_fq(text, gens, n):
    """Parse ``"a:b^1*c^2"``: generator before the colon, conjugator syllables after."""
    if ":" not in text:
        raise ParseError(f"missing 'gen:' marker in {text!r}")
    head, tail = text.split(":", 1)
    head = head.strip()
    if head not in gens:
        raise ParseError(f"unknown generator {head!r}")
    syllables = []
    tail = tail.strip()
    if tail:
        for part in tail.split("*"):
            m = _SYL.fullmatch(part)
            if not m or m.group(1) not in gens:
                raise ParseError(f"bad syllable {part!r}")
            syllables.append((gens.index(m.group(1)), int(m.group(2) or 1)))
    return FreeNQuandleElement(n, gens.index(head), tuple(syllables))


def format_fq(u, gens=None):
    name = (lambda i: gens[i]) if gens else (lambda i: "abcdefghijklmnopqrstuvwxyz"[i])
    return name(u.s) + ":" + "*".join(f"{name(g)}^{e}" for g, e in u.g)
