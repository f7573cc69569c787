"""Quandle and group presentations and the left-associated word calculus.

A quandle word ``x0 *^e1 x1 *^e2 ... *^ek xk`` is a :class:`QWord` with
``base = x0`` and ``tail = ((x1, e1), ..., (xk, ek))``, every ``ei = +-1``.
Generators are referred to by index into the presentation's name list.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import ParseError


@dataclass(frozen=True, order=True)
class QWord:
    base: int
    tail: tuple = ()

    def __post_init__(self):
        tail = tuple((int(g), int(s)) for g, s in self.tail)
        if any(s not in (1, -1) for _, s in tail):
            raise ValueError("QWord signs must be +1 or -1")
        object.__setattr__(self, "tail", tail)

    def star(self, gen, sign=1, times=1):
        return QWord(self.base, self.tail + ((gen, sign),) * times)

    def __len__(self):
        return len(self.tail)

    def generators(self):
        return {self.base, *(g for g, _ in self.tail)}


def free_reduce(letters):
    """Cancel adjacent ``(g, s)(g, -s)`` pairs."""
    out = []
    for g, s in letters:
        if out and out[-1] == (g, -s):
            out.pop()
        else:
            out.append((g, s))
    return tuple(out)


def reduce(w):
    """Cancel adjacent inverse pairs in the tail; the base is never absorbed."""
    return QWord(w.base, free_reduce(w.tail))


@dataclass(frozen=True)
class GroupWord:
    """A reduced group word: ``(gen, exp)`` syllables, ``exp != 0``, adjacent gens distinct."""

    syllables: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "syllables", _merge(self.syllables))

    @classmethod
    def from_letters(cls, letters):
        return cls(tuple(letters))

    def letters(self):
        out = []
        for g, e in self.syllables:
            out.extend([(g, 1 if e > 0 else -1)] * abs(e))
        return out

    def inverse(self):
        return GroupWord(tuple((g, -e) for g, e in reversed(self.syllables)))

    def __mul__(self, other):
        return GroupWord(self.syllables + other.syllables)

    def exponent_sum(self):
        return sum(e for _, e in self.syllables)

    def length(self):
        return sum(abs(e) for _, e in self.syllables)

    def __len__(self):
        return len(self.syllables)


def _merge(syllables):
    out = []
    for g, e in syllables:
        g, e = int(g), int(e)
        if e == 0:
            continue
        if out and out[-1][0] == g:
            e += out.pop()[1]
            if e == 0:
                continue
        out.append((g, e))
    return tuple(out)


def translate_word(w):
    """Image of ``w`` in Env: ``g^-1 e_base g`` with ``g`` the product of tail letters."""
    g = GroupWord(tuple(w.tail))
    return g.inverse() * GroupWord(((w.base, 1),)) * g


_IDENT = r"[A-Za-z_][A-Za-z0-9_']*"
_OP = re.compile(r"\*\s*(?:\^\s*(-?\d+)|(-))?\s*(" + _IDENT + r")")


def _index(gens, name, text):
    try:
        return gens.index(name)
    except ValueError:
        raise ParseError(f"unknown generator {name!r} in {text!r}") from None


def parse_qword(text, gens):
    """Parse ``base (OP gen)*`` with ``OP`` one of ``*``, ``*-``, ``*^k``, ``*^-k``."""
    s = text.strip()
    m = re.match(_IDENT, s)
    if not m:
        raise ParseError(f"word must start with a generator: {text!r}")
    base = _index(gens, m.group(0), text)
    pos = m.end()
    tail = []
    while pos < len(s):
        while pos < len(s) and s[pos].isspace():
            pos += 1
        if pos == len(s):
            break
        m = _OP.match(s, pos)
        if not m:
            raise ParseError(f"cannot parse {s[pos:]!r} in {text!r}")
        gen = _index(gens, m.group(3), text)
        if m.group(1) is not None:
            k = int(m.group(1))
            tail.extend([(gen, 1 if k > 0 else -1)] * abs(k))
        else:
            tail.append((gen, -1 if m.group(2) else 1))
        pos = m.end()
    return QWord(base, tuple(tail))


def format_qword(w, gens):
    parts = [gens[w.base]]
    for g, s in w.tail:
        parts.append(("*" if s > 0 else "*-") + gens[g])
    return "".join(parts)


def format_group_word(w, gens):
    if not w.syllables:
        return "1"
    return " ".join(gens[g] if e == 1 else f"{gens[g]}^{e}" for g, e in w.syllables)


@dataclass(frozen=True)
class QuandlePresentation:
    generators: tuple
    relations: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        rels = tuple((u, v) for u, v in self.relations)
        n = len(self.generators)
        for u, v in rels:
            if not all(0 <= g < n for g in u.generators() | v.generators()):
                raise ValueError("relation uses a generator outside the presentation")
        object.__setattr__(self, "relations", rels)

    @property
    def rank(self):
        return len(self.generators)

    def word(self, text):
        return parse_qword(text, list(self.generators))

    def format(self, w):
        return format_qword(w, self.generators)

    def evaluate(self, w, target, images):
        """Value of ``w`` in a finite quandle under the generator assignment ``images``."""
        T, D = target.table, target.dual_table
        x = images[w.base]
        for g, s in w.tail:
            x = int(T[x, images[g]] if s > 0 else D[x, images[g]])
        return x

    def holds_in(self, target, images):
        return all(
            self.evaluate(u, target, images) == self.evaluate(v, target, images)
            for u, v in self.relations
        )

    def assignments_into(self, target):
        """Generator assignments satisfying every relation, lexicographic order."""
        n = self.rank
        by_depth = [[] for _ in range(n)]
        for u, v in self.relations:
            by_depth[max(u.generators() | v.generators())].append((u, v))
        T, D = target.table.tolist(), target.dual_table.tolist()

        def ev(w, img):
            x = img[w.base]
            for g, s in w.tail:
                x = T[x][img[g]] if s > 0 else D[x][img[g]]
            return x

        def rec(img):
            k = len(img)
            if k == n:
                yield tuple(img)
                return
            for v in range(target.size):
                img.append(v)
                if all(ev(a, img) == ev(b, img) for a, b in by_depth[k]):
                    yield from rec(img)
                img.pop()

        yield from rec([])

    def to_text(self):
        lines = ["gens " + " ".join(self.generators)]
        for u, v in self.relations:
            lines.append(f"rel {self.format(u)} = {self.format(v)}")
        return "\n".join(lines) + "\n"

    def __str__(self):
        rels = ", ".join(f"{self.format(u)}={self.format(v)}" for u, v in self.relations)
        return f"<{','.join(self.generators)} | {rels}>"


@dataclass(frozen=True)
class GroupPresentation:
    generators: tuple
    relators: tuple = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        object.__setattr__(self, "relators", tuple(self.relators))

    @property
    def rank(self):
        return len(self.generators)

    def assignments_into(self, G):
        """Generator images in a :class:`~quandlekit.groups.FiniteGroup` killing every relator."""
        n = self.rank
        by_depth = [[] for _ in range(n)]
        for r in self.relators:
            if r.syllables:
                by_depth[max(g for g, _ in r.syllables)].append(r)

        def ev(r, img):
            x = G.identity
            for g, e in r.syllables:
                x = G.m(x, G.power(img[g], e))
            return x

        def rec(img):
            k = len(img)
            if k == n:
                yield tuple(img)
                return
            for v in range(G.size):
                img.append(v)
                if all(ev(r, img) == G.identity for r in by_depth[k]):
                    yield from rec(img)
                img.pop()

        yield from rec([])

    def to_text(self):
        lines = ["gens " + " ".join(self.generators)]
        for r in self.relators:
            lines.append("relator " + format_group_word(r, self.generators))
        return "\n".join(lines) + "\n"

    def __str__(self):
        rels = ", ".join(format_group_word(r, self.generators) for r in self.relators)
        return f"<{','.join(self.generators)} | {rels}>"


def n_quandle_presentation(P, n):
    """Add ``x_i *^n x_j = x_i`` for every ordered pair of distinct generators."""
    if n < 2:
        raise ValueError("n must be at least 2")
    extra = []
    for i in range(P.rank):
        for j in range(P.rank):
            if i != j:
                extra.append((QWord(i, ((j, 1),) * n), QWord(i)))
    return QuandlePresentation(P.generators, P.relations + tuple(extra))


def env_presentation(P):
    """One generator ``e_x`` per quandle generator; relation ``u = v`` becomes ``[u][v]^-1``."""
    rels = tuple(translate_word(u) * translate_word(v).inverse() for u, v in P.relations)
    return GroupPresentation(tuple("e_" + g for g in P.generators), rels)


def env_n_presentation(P, n):
    """:func:`env_presentation` plus ``e_x^n`` for each generator."""
    E = env_presentation(P)
    powers = tuple(GroupWord(((i, n),)) for i in range(P.rank))
    return GroupPresentation(E.generators, E.relators + powers)


def _lines(text):
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            yield line


def parse_presentation(text):
    gens = None
    rels = []
    for line in _lines(text):
        key, _, rest = line.partition(" ")
        if key == "gens":
            if gens is not None:
                raise ParseError("duplicate 'gens' line")
            gens = rest.split()
            if len(set(gens)) != len(gens):
                raise ParseError("duplicate generator names")
        elif key == "rel":
            if gens is None:
                raise ParseError("'rel' before 'gens'")
            if rest.count("=") != 1:
                raise ParseError(f"relation needs exactly one '=': {line!r}")
            lhs, rhs = rest.split("=")
            rels.append((parse_qword(lhs, gens), parse_qword(rhs, gens)))
        else:
            raise ParseError(f"unknown line {line!r}")
    if gens is None:
        raise ParseError("missing 'gens' line")
    return QuandlePresentation(tuple(gens), tuple(rels))


_GSYL = re.compile(r"(" + _IDENT + r")(?:\^(-?\d+))?")


def parse_group_word(text, gens):
    syl = []
    for tok in text.split():
        if tok == "1":
            continue
        m = _GSYL.fullmatch(tok)
        if not m:
            raise ParseError(f"bad syllable {tok!r}")
        syl.append((_index(gens, m.group(1), text), int(m.group(2) or 1)))
    return GroupWord(tuple(syl))


def parse_group_presentation(text):
    gens = None
    rels = []
    for line in _lines(text):
        key, _, rest = line.partition(" ")
        if key == "gens":
            gens = rest.split()
        elif key == "relator":
            if gens is None:
                raise ParseError("'relator' before 'gens'")
            rels.append(parse_group_word(rest, gens))
        else:
            raise ParseError(f"unknown line {line!r}")
    if gens is None:
        raise ParseError("missing 'gens' line")
    return GroupPresentation(tuple(gens), tuple(rels))
