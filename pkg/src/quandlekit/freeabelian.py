"""Free abelian quandles, their finite quotients ``X_N``, and the abelian
two-generator normal form.

An element ``(i; n_1, ..., n_r)`` stands for ``x_i`` acted on ``n_j`` times
by ``x_j``; bases are 1-based and ``n_i`` is always 0.  The product only
looks at the base of its right factor.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import gcd

import numpy as np

from .certificates import SeparationCertificate
from .core import FiniteQuandle, is_abelian, subquandle_closure, trivial_quandle
from .errors import CapExceeded, MembershipHolds, RankMismatch, UnsupportedRelationShape
from .presentations import QuandlePresentation, QWord

TABLE_CAP = 5000


@dataclass(frozen=True, order=True)
class FreeAbelianElement:
    base: int
    coords: tuple

    def __post_init__(self):
        coords = tuple(int(c) for c in self.coords)
        if not 1 <= self.base <= len(coords):
            raise ValueError(f"base {self.base} outside 1..{len(coords)}")
        if coords[self.base - 1] != 0:
            raise ValueError("coordinate at the base must be 0")
        object.__setattr__(self, "coords", coords)

    @property
    def rank(self):
        return len(self.coords)

    def __str__(self):
        return f"({self.base}; {', '.join(map(str, self.coords))})"


def generator(r, i):
    return FreeAbelianElement(i, (0,) * r)


def _shift(a, b, step):
    if a.rank != b.rank:
        raise RankMismatch(f"rank {a.rank} vs {b.rank}")
    j = b.base
    if j == a.base:
        return a
    c = list(a.coords)
    c[j - 1] += step
    return FreeAbelianElement(a.base, tuple(c))


def fab_op(a, b):
    return _shift(a, b, 1)


def fab_dual(a, b):
    return _shift(a, b, -1)


@dataclass(frozen=True)
class Member:
    pass


@dataclass(frozen=True)
class NonMember:
    """``case == "base"``: no generator has the base of ``x``.  ``case ==
    "coords"``: ``x`` differs on the free positions ``J`` from every tuple in
    ``avoided``."""

    case: str
    J: tuple = ()
    avoided: frozenset = frozenset()


def _check_rank(gens, x):
    for g in gens:
        if g.rank != x.rank:
            raise RankMismatch(f"rank {g.rank} vs {x.rank}")


def _free_positions(gens, r):
    B = {g.base for g in gens}
    return B, tuple(j for j in range(1, r + 1) if j not in B)


def fab_membership(gens, x):
    """Is ``x`` in the subquandle generated by ``gens``?"""
    gens = list(gens)
    _check_rank(gens, x)
    B, J = _free_positions(gens, x.rank)
    if x.base not in B:
        return NonMember("base")
    proj = lambda e: tuple(e.coords[j - 1] for j in J)  # noqa: E731
    avoided = frozenset(proj(g) for g in gens if g.base == x.base)
    if proj(x) in avoided:
        return Member()
    return NonMember("coords", J, avoided)


def box_closure(gens, bound):
    """Closure of ``gens`` under both operations inside ``|coords| <= bound``.

    The right factor is drawn from the closure itself, one representative per
    base (the product ignores everything else about the right factor).
    """
    gens = list(gens)
    seen = set(gens)
    todo = list(gens)
    reps = {}
    for g in gens:
        reps.setdefault(g.base, g)
    while todo:
        a = todo.pop()
        for b in list(reps.values()):
            for c in (fab_op(a, b), fab_dual(a, b)):
                if c not in seen and max(map(abs, c.coords)) <= bound:
                    seen.add(c)
                    todo.append(c)
                    reps.setdefault(c.base, c)
    return seen


def fab_membership_oracle(gens, x):
    bound = max(max(map(abs, e.coords)) for e in list(gens) + [x]) + 1
    return x in box_closure(gens, bound)


class XN:
    """The finite N-quandle of tuples mod ``N``, indexed by base then coordinates."""

    def __init__(self, r, N):
        if r < 1 or N < 2:
            raise ValueError("need r >= 1 and N >= 2")
        size = r * N ** (r - 1)
        if size > TABLE_CAP:
            raise CapExceeded(f"X_N has {size} elements, above cap {TABLE_CAP}")
        self.r, self.N = r, N
        self.elements = []
        for i in range(1, r + 1):
            for rest in itertools.product(range(N), repeat=r - 1):
                c = list(rest)
                c.insert(i - 1, 0)
                self.elements.append(FreeAbelianElement(i, tuple(c)))
        self._index = {e: k for k, e in enumerate(self.elements)}
        T = np.empty((size, size), dtype=np.int64)
        for a, ea in enumerate(self.elements):
            for b, eb in enumerate(self.elements):
                T[a, b] = self._index[self.reduce(fab_op(ea, eb))]
        self.quandle = FiniteQuandle(T)

    def reduce(self, e):
        return FreeAbelianElement(e.base, tuple(c % self.N for c in e.coords))

    def index(self, e):
        return self._index[self.reduce(e)]

    @property
    def size(self):
        return len(self.elements)


def build_X_N(r, N):
    return XN(r, N)


def _evaluate(q, images, e):
    """Image of ``e = x_i *^{n_1} x_1 ...`` under generator images in an abelian target."""
    x = images[e.base - 1]
    for j, n in enumerate(e.coords, start=1):
        x = q.power(x, images[j - 1], n) if n else x
    return x


def fab_separate(gens, x):
    """Certificate that ``x`` lies outside ``<gens>``, re-verified before return."""
    gens = list(gens)
    res = fab_membership(gens, x)
    if isinstance(res, Member):
        raise MembershipHolds(f"{x} lies in the subquandle")
    r = x.rank
    if res.case == "base":
        q = trivial_quandle(2)
        hom = tuple(1 if k == x.base else 0 for k in range(1, r + 1))
    else:
        N = 2
        while True:
            px = tuple(x.coords[j - 1] % N for j in res.J)
            if all(tuple(c % N for c in t) != px for t in res.avoided):
                break
            N += 1
        X = build_X_N(r, N)
        q = X.quandle
        hom = tuple(X.index(generator(r, k)) for k in range(1, r + 1))
    image = subquandle_closure(q, [_evaluate(q, hom, g) for g in gens])
    cert = SeparationCertificate(q, hom, _evaluate(q, hom, x), image)
    if not verify_fab_certificate(gens, x, cert):
        raise AssertionError("separation certificate failed re-verification")
    return cert


def verify_fab_certificate(gens, x, cert):
    """Target abelian (so any generator assignment extends), images recomputed,
    excluded image outside the generated image."""
    q = cert.target
    if len(cert.hom) != x.rank or not is_abelian(q):
        return False
    image = subquandle_closure(q, [_evaluate(q, cert.hom, g) for g in gens])
    ex = _evaluate(q, cert.hom, x)
    return ex == cert.excluded and image == cert.subquandle_image and ex not in image


@dataclass(frozen=True)
class AbelianNormalForm:
    """Either ``presentation`` (abelian variety implied) or an explicit finite ``quandle``.

    ``labels[k]`` is the :class:`FreeAbelianElement` for element ``k``.
    """

    presentation: QuandlePresentation = None
    quandle: FiniteQuandle = None
    labels: tuple = ()


def _orbit_exponent(u, v):
    """``x *^k y = x`` → (0, k); ``y *^k x = y`` → (1, k); anything else raises."""
    for a, b in ((u, v), (v, u)):
        if b.tail == () and a.base == b.base:
            gens = {g for g, _ in a.tail}
            signs = {s for _, s in a.tail}
            if not a.tail:
                return a.base, 0
            if gens == {1 - a.base} and len(signs) == 1:
                return a.base, len(a.tail) * signs.pop()
    raise UnsupportedRelationShape(f"relation is not of the form x*^k y = x: {u} = {v}")


def two_gen_abelian_normalize(relations):
    """Canonical form of an abelian quandle on ``x, y`` with orbit relations."""
    g = [0, 0]
    for u, v in relations:
        if (u.generators() | v.generators()) - {0, 1}:
            raise UnsupportedRelationShape("only generators x and y are allowed")
        side, k = _orbit_exponent(u, v)
        g[side] = gcd(g[side], abs(k))
    gx, gy = g
    if gx and gy:
        labels = [FreeAbelianElement(1, (0, n)) for n in range(gx)]
        labels += [FreeAbelianElement(2, (m, 0)) for m in range(gy)]
        index = {e: k for k, e in enumerate(labels)}

        def red(e):
            # x's y-coordinate lives mod gx, y's x-coordinate mod gy
            c = list(e.coords)
            c[2 - e.base] %= gx if e.base == 1 else gy
            return FreeAbelianElement(e.base, tuple(c))

        T = [[index[red(fab_op(a, b))] for b in labels] for a in labels]
        return AbelianNormalForm(quandle=FiniteQuandle(T), labels=tuple(labels))
    rels = []
    if gx:
        rels.append((QWord(0, ((1, 1),) * gx), QWord(0)))
    if gy:
        rels.append((QWord(1, ((0, 1),) * gy), QWord(1)))
    return AbelianNormalForm(presentation=QuandlePresentation(("x", "y"), tuple(rels)))
