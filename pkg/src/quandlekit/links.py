"""Oriented link diagrams given as arcs and crossings.

A crossing records the over arc, the under arc entering it, the under arc
leaving it and a sign.  The under arc leaving equals the entering arc acted
on by the over arc: ``in *^sign over = out``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ArcCountMismatch, BrokenComponentCycle, MalformedCrossing, ParseError
from .presentations import (
    GroupWord,
    QuandlePresentation,
    QWord,
    env_presentation,
    n_quandle_presentation,
    _lines,
)


@dataclass(frozen=True)
class Crossing:
    over: int
    under_in: int
    under_out: int
    sign: int


@dataclass(frozen=True)
class LinkDiagram:
    arcs: tuple
    crossings: tuple = ()
    components: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "arcs", tuple(self.arcs))
        object.__setattr__(self, "crossings", tuple(self.crossings))
        comps = tuple(tuple(c) for c in self.components) or _infer_components(self)
        object.__setattr__(self, "components", comps)
        _check(self)

    def arc(self, name):
        return self.arcs.index(name)

    def crossing_entered_from(self, arc):
        for c in self.crossings:
            if c.under_in == arc:
                return c
        return None

    def to_text(self):
        out = [f"arc {a}" for a in self.arcs]
        for c in self.crossings:
            a = self.arcs
            out.append(f"crossing over={a[c.over]} in={a[c.under_in]} out={a[c.under_out]} sign={c.sign:+d}")
        for comp in self.components:
            out.append("component " + " ".join(self.arcs[i] for i in comp))
        return "\n".join(out) + "\n"


def _counts(D):
    n = len(D.arcs)
    ins, outs = [0] * n, [0] * n
    for c in D.crossings:
        ins[c.under_in] += 1
        outs[c.under_out] += 1
    return ins, outs


def _infer_components(D):
    ins, outs = _counts(D)
    if any(i != o or i > 1 for i, o in zip(ins, outs)):
        return ()  # _check reports the mismatch
    succ = {c.under_in: c.under_out for c in D.crossings}
    seen, comps = set(), []
    for start in range(len(D.arcs)):
        if start in seen:
            continue
        comp, a = [], start
        while a not in seen:
            seen.add(a)
            comp.append(a)
            a = succ.get(a, start)
        comps.append(tuple(comp))
    return tuple(comps)


def _check(D):
    n = len(D.arcs)
    if len(set(D.arcs)) != n:
        raise ParseError("duplicate arc names")
    for c in D.crossings:
        if c.sign not in (1, -1):
            raise MalformedCrossing(f"sign must be +1 or -1, got {c.sign}")
        if not all(0 <= x < n for x in (c.over, c.under_in, c.under_out)):
            raise MalformedCrossing(f"crossing {c} refers to an unknown arc")
    ins, outs = _counts(D)
    for a in range(n):
        if ins[a] > 1 or outs[a] > 1 or ins[a] != outs[a]:
            raise ArcCountMismatch(
                f"arc {D.arcs[a]!r} is entered {outs[a]} time(s) and left {ins[a]} time(s)"
            )
    flat = [a for comp in D.components for a in comp]
    if sorted(flat) != list(range(n)):
        raise BrokenComponentCycle("components do not partition the arcs")
    succ = {c.under_in: c.under_out for c in D.crossings}
    for comp in D.components:
        for k, a in enumerate(comp):
            nxt = comp[(k + 1) % len(comp)]
            if succ.get(a, a) != nxt:
                raise BrokenComponentCycle(
                    f"arc {D.arcs[a]!r} is not followed by {D.arcs[nxt]!r} in its component"
                )


def _kv(tokens, line):
    out = {}
    for tok in tokens:
        key, eq, val = tok.partition("=")
        if not eq:
            raise MalformedCrossing(f"expected key=value, got {tok!r} in {line!r}")
        out[key] = val
    if set(out) != {"over", "in", "out", "sign"}:
        raise MalformedCrossing(f"crossing needs over=, in=, out=, sign=: {line!r}")
    return out


def parse_link(text):
    """Parse ``arc``/``crossing``/``component`` lines into a checked diagram."""
    arcs, raw_crossings, raw_components = [], [], []
    for line in _lines(text):
        key, *rest = line.split()
        if key == "arc":
            if len(rest) != 1:
                raise ParseError(f"bad arc line {line!r}")
            arcs.append(rest[0])
        elif key == "crossing":
            raw_crossings.append((_kv(rest, line), line))
        elif key == "component":
            raw_components.append((rest, line))
        else:
            raise ParseError(f"unknown line {line!r}")

    def idx(name, line, err):
        try:
            return arcs.index(name)
        except ValueError:
            raise err(f"unknown arc {name!r} in {line!r}") from None

    crossings = []
    for kv, line in raw_crossings:
        try:
            sign = int(kv["sign"])
        except ValueError:
            raise MalformedCrossing(f"bad sign in {line!r}") from None
        crossings.append(Crossing(
            idx(kv["over"], line, MalformedCrossing),
            idx(kv["in"], line, MalformedCrossing),
            idx(kv["out"], line, MalformedCrossing),
            sign,
        ))
    comps = [tuple(idx(a, line, BrokenComponentCycle) for a in names) for names, line in raw_components]
    return LinkDiagram(tuple(arcs), tuple(crossings), tuple(comps))


def parse_pd(text):
    """Convert ``X a b c d`` lines to an arc diagram.

    Edges are listed counterclockwise from the incoming under edge ``a``.  The
    over strand runs ``b -> d`` when ``d`` follows ``b`` cyclically, and the
    crossing sign is ``+1`` exactly in that case.  Edges joined along over
    strands form the arcs; arcs are named ``x1, x2, ...`` by least edge.
    """
    rows = []
    for line in _lines(text):
        parts = line.replace("[", " ").replace("]", " ").replace(",", " ").split()
        if not parts or parts[0] != "X" or len(parts) != 5:
            raise MalformedCrossing(f"expected 'X a b c d', got {line!r}")
        try:
            rows.append(tuple(int(p) for p in parts[1:]))
        except ValueError:
            raise MalformedCrossing(f"non-integer edge in {line!r}") from None
    if not rows:
        raise ParseError("PD code has no crossings")
    edges = sorted({e for r in rows for e in r})
    if edges != list(range(1, len(edges) + 1)) or len(edges) != 2 * len(rows):
        raise ArcCountMismatch("PD edges must be 1..2k for k crossings")
    m = len(edges)
    parent = {e: e for e in edges}

    def find(e):
        while parent[e] != e:
            parent[e] = parent[parent[e]]
            e = parent[e]
        return e

    for _, b, _, d in rows:
        ra, rb = find(b), find(d)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    roots = sorted({find(e) for e in edges}, key=lambda r: min(e for e in edges if find(e) == r))
    arc_of = {e: roots.index(find(e)) for e in edges}
    crossings = []
    for a, b, c, d in rows:
        sign = 1 if d == b % m + 1 else -1
        crossings.append(Crossing(arc_of[b], arc_of[a], arc_of[c], sign))
    names = tuple(f"x{k + 1}" for k in range(len(roots)))
    return LinkDiagram(names, tuple(crossings))


def fundamental_quandle(D):
    rels = tuple(
        (QWord(c.under_in, ((c.over, c.sign),)), QWord(c.under_out)) for c in D.crossings
    )
    return QuandlePresentation(D.arcs, rels)


def fundamental_n_quandle(D, n):
    return n_quandle_presentation(fundamental_quandle(D), n)


def wirtinger_group(D):
    return env_presentation(fundamental_quandle(D))


@dataclass(frozen=True)
class Peripheral:
    meridian: int
    longitude: GroupWord


def peripheral_data(D):
    """Meridian (first arc) and exponent-sum-zero longitude for every component."""
    by_in = {c.under_in: c for c in D.crossings}
    out = []
    for comp in D.components:
        m = comp[0]
        syl = [(by_in[a].over, by_in[a].sign) for a in comp if a in by_in]
        word = GroupWord(tuple(syl))
        w = word.exponent_sum()
        out.append(Peripheral(m, word * GroupWord(((m, -w),))))
    return tuple(out)


def exponent_sum(w, n):
    return w.exponent_sum() % n


def is_in_E0(w, n):
    return exponent_sum(w, n) == 0
