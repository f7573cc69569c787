"""Finite groups as multiplication tables, and their automorphisms."""

from __future__ import annotations

import itertools

import numpy as np

from .errors import MalformedTable, NotAutomorphism, NotSubgroup


class FiniteGroup:
    """A finite group on ``0..N-1`` with ``mul[g, h] == g * h``.

    Associativity, identity and inverses are checked on construction.
    """

    __slots__ = ("mul", "identity", "inverse", "labels")

    def __init__(self, mul, identity=None, labels=None):
        M = np.array(mul, dtype=np.int64)
        if M.ndim != 2 or M.shape[0] != M.shape[1] or M.shape[0] == 0:
            raise MalformedTable(f"multiplication table must be square, got {M.shape}")
        n = M.shape[0]
        if np.any((M < 0) | (M >= n)):
            raise MalformedTable("multiplication entry out of range")
        idx = np.arange(n)
        if identity is None:
            hits = [e for e in range(n) if np.array_equal(M[e], idx) and np.array_equal(M[:, e], idx)]
            if not hits:
                raise MalformedTable("no identity element")
            identity = hits[0]
        if not (np.array_equal(M[identity], idx) and np.array_equal(M[:, identity], idx)):
            raise MalformedTable(f"{identity} is not an identity")
        if not np.array_equal(M[M[:, :, None], idx[None, None, :]], M[idx[:, None, None], M[None, :, :]]):
            raise MalformedTable("multiplication is not associative")
        inv = np.full(n, -1)
        for g in range(n):
            hs = np.flatnonzero(M[g] == identity)
            if len(hs) != 1 or M[hs[0], g] != identity:
                raise MalformedTable(f"element {g} has no two-sided inverse")
            inv[g] = hs[0]
        M.setflags(write=False)
        inv.setflags(write=False)
        self.mul = M
        self.identity = int(identity)
        self.inverse = inv
        self.labels = labels

    @property
    def size(self):
        return self.mul.shape[0]

    def __len__(self):
        return self.size

    def m(self, *gs):
        """Product of the arguments, left to right."""
        out = self.identity
        for g in gs:
            out = int(self.mul[out, g])
        return out

    def inv(self, g):
        return int(self.inverse[g])

    def power(self, g, k):
        if k < 0:
            g, k = self.inv(g), -k
        out = self.identity
        for _ in range(k):
            out = int(self.mul[out, g])
        return out

    def order_of(self, g):
        k, x = 1, g
        while x != self.identity:
            x = int(self.mul[x, g])
            k += 1
        return k

    def is_abelian(self):
        return bool(np.array_equal(self.mul, self.mul.T))

    def centralizer(self, x):
        return frozenset(g for g in range(self.size) if self.mul[g, x] == self.mul[x, g])

    def is_subgroup(self, H):
        H = set(H)
        return bool(H) and self.identity in H and all(self.m(a, self.inv(b)) in H for a in H for b in H)

    def subgroup_generated(self, gens):
        H = {self.identity}
        todo = [self.identity]
        gens = list(gens)
        while todo:
            a = todo.pop()
            for g in gens:
                b = self.m(a, g)
                if b not in H:
                    H.add(b)
                    todo.append(b)
        return frozenset(H)

    def right_cosets(self, H):
        """Right cosets ``Hg`` ordered by least element; each is a sorted tuple."""
        H = sorted(H)
        if not self.is_subgroup(H):
            raise NotSubgroup(f"{H} is not a subgroup")
        seen = set()
        out = []
        for g in range(self.size):
            if g in seen:
                continue
            coset = tuple(sorted(self.m(h, g) for h in H))
            seen.update(coset)
            out.append(coset)
        return out

    def __repr__(self):
        return f"FiniteGroup(size={self.size})"


class GroupAut:
    """An automorphism of a :class:`FiniteGroup` given by its image array."""

    __slots__ = ("group", "images")

    def __init__(self, group, images):
        images = tuple(int(i) for i in images)
        if sorted(images) != list(range(group.size)):
            raise NotAutomorphism(f"{images} is not a bijection")
        p = np.array(images)
        if not np.array_equal(p[group.mul], group.mul[p[:, None], p[None, :]]):
            raise NotAutomorphism(f"{images} is not multiplicative")
        self.group = group
        self.images = images

    def __call__(self, g):
        return self.images[g]

    def then(self, other):
        return GroupAut(self.group, [other.images[i] for i in self.images])

    def inverse(self):
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return GroupAut(self.group, inv)

    def power(self, k):
        out = identity_aut(self.group)
        base = self if k >= 0 else self.inverse()
        for _ in range(abs(k)):
            out = out.then(base)
        return out

    def order(self):
        k, a = 1, self
        while any(a.images[i] != i for i in range(len(a.images))):
            a = a.then(self)
            k += 1
        return k


def identity_aut(G):
    return GroupAut(G, range(G.size))


def inner_aut(G, x):
    """Conjugation ``g -> x^-1 g x``."""
    return GroupAut(G, [G.m(G.inv(x), g, x) for g in range(G.size)])


def inversion_aut(G):
    if not G.is_abelian():
        raise NotAutomorphism("inversion is an automorphism only of abelian groups")
    return GroupAut(G, [G.inv(g) for g in range(G.size)])


def cyclic_group(n):
    i = np.arange(n)
    return FiniteGroup((i[:, None] + i[None, :]) % n, identity=0)


def group_from_permutations(perms):
    """The table of a closed list of permutations; ``g * h`` applies ``g`` first."""
    perms = [tuple(p) for p in perms]
    index = {p: i for i, p in enumerate(perms)}
    if len(index) != len(perms):
        raise ValueError("duplicate permutations")
    try:
        mul = [[index[tuple(h[x] for x in g)] for h in perms] for g in perms]
    except KeyError:
        raise NotSubgroup("permutation list is not closed under composition") from None
    ident = index.get(tuple(range(len(perms[0]))))
    if ident is None:
        raise NotSubgroup("permutation list lacks the identity")
    return FiniteGroup(mul, identity=ident, labels=perms)


def symmetric_group(n):
    """S_n on permutations of ``0..n-1`` in lexicographic order (identity is 0)."""
    return group_from_permutations(list(itertools.permutations(range(n))))


def direct_product(G, H):
    n, m = G.size, H.size
    mul = [
        [G.m(a // m, b // m) * m + H.m(a % m, b % m) for b in range(n * m)]
        for a in range(n * m)
    ]
    return FiniteGroup(mul, identity=G.identity * m + H.identity)


def semidirect_power(G, alpha, m=None):
    """``G x| <t>`` with ``t`` of order ``m`` and ``t^-1 g t = alpha(g)``.

    Element ``g t^a`` is stored at index ``a * |G| + g``.  ``m`` defaults to
    the order of ``alpha`` and must be a multiple of it.
    """
    n = G.size
    m = alpha.order() if m is None else m
    if m % alpha.order():
        raise ValueError("m must be a multiple of the automorphism order")
    # t^a h t^-a = alpha^-a(h)
    back = [alpha.power(-a) for a in range(m)]
    mul = [
        [
            ((a + b) % m) * n + G.m(g, back[a](h))
            for b in range(m) for h in range(n)
        ]
        for a in range(m) for g in range(n)
    ]
    return FiniteGroup(mul, identity=G.identity)
