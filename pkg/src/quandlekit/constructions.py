"""Quandles built from finite groups and from other quandles.

Every constructor returns a validated :class:`~quandlekit.core.FiniteQuandle`.
"""

from __future__ import annotations

import numpy as np

from .core import FiniteQuandle, is_automorphism, symmetry
from .errors import (
    NotAutomorphism,
    NotCentralizing,
    NotCentralizingAutomorphism,
    NotSubgroup,
)
from .groups import GroupAut


def _aut(G, alpha):
    return alpha if isinstance(alpha, GroupAut) else GroupAut(G, alpha)


def conj(G):
    """Conjugation quandle ``x * y = y^-1 x y``."""
    n = G.size
    return FiniteQuandle([[G.m(G.inv(y), x, y) for y in range(n)] for x in range(n)])


def n_torsion(G, n):
    """Elements with ``x^n == 1``, ascending."""
    return [x for x in range(G.size) if G.power(x, n) == G.identity]


def conj_n(G, n):
    """Conjugation on ``{x | x^n = 1}``; element ``k`` is ``n_torsion(G, n)[k]``."""
    carrier = n_torsion(G, n)
    pos = {x: i for i, x in enumerate(carrier)}
    return FiniteQuandle([[pos[G.m(G.inv(y), x, y)] for y in carrier] for x in carrier])


def twisted_conj(G, alpha):
    """``x * y = alpha(y^-1 x) y``."""
    a = _aut(G, alpha)
    n = G.size
    return FiniteQuandle([[G.m(a(G.m(G.inv(y), x)), y) for y in range(n)] for x in range(n)])


def alexander(G, alpha):
    """Generalized Alexander quandle ``x * y = alpha(x y^-1) y``."""
    a = _aut(G, alpha)
    n = G.size
    return FiniteQuandle([[G.m(a(G.m(x, G.inv(y))), y) for y in range(n)] for x in range(n)])


def word_quandle(G, word, n=None):
    """``g * h = w(g, h)`` for ``word == "core"`` (``h g^-1 h``) or ``"conj_power"`` (``h^-n g h^n``)."""
    size = G.size
    if word == "core":
        f = lambda g, h: G.m(h, G.inv(g), h)  # noqa: E731
    elif word == "conj_power":
        if n is None:
            raise ValueError("conj_power needs an exponent n")
        f = lambda g, h: G.m(G.power(h, -n), g, G.power(h, n))  # noqa: E731
    else:
        raise ValueError(f"unknown word {word!r}; expected 'core' or 'conj_power'")
    return FiniteQuandle([[f(g, h) for h in range(size)] for g in range(size)])


def core_quandle(G):
    return word_quandle(G, "core")


def _check_blocks(G, blocks):
    checked = []
    for i, (H, x) in enumerate(blocks):
        H = frozenset(int(h) for h in H)
        if not G.is_subgroup(H):
            raise NotSubgroup(f"block {i}: {sorted(H)} is not a subgroup")
        if not H <= G.centralizer(x):
            raise NotCentralizing(i)
        checked.append((H, int(x)))
    return checked


def union_coset_quandle_labelled(G, blocks):
    """Disjoint union of ``(G/H_i, x_i)`` together with element labels.

    Element ``k`` of the result is the right coset ``H_i g`` with label
    ``(i, g)``, ``g`` the least element of the coset.  Blocks come in input
    order; cosets within a block are ordered by their least element.
    """
    blocks = _check_blocks(G, blocks)
    labels = []
    where = []
    for i, (H, _) in enumerate(blocks):
        lookup = {}
        for coset in G.right_cosets(H):
            for g in coset:
                lookup[g] = len(labels)
            labels.append((i, coset[0]))
        where.append(lookup)
    table = []
    for i, u in labels:
        xi_inv = G.inv(blocks[i][1])
        row = []
        for j, v in labels:
            prod = G.m(xi_inv, u, G.inv(v), blocks[j][1], v)
            row.append(where[i][prod])
        table.append(row)
    return FiniteQuandle(table), labels


def union_coset_quandle(G, blocks):
    """``H_i x * H_j y = H_i x_i^-1 x y^-1 x_j y`` on the disjoint union of coset spaces."""
    return union_coset_quandle_labelled(G, blocks)[0]


def coset_quandle(G, H, x0):
    """``Hx * Hy = H x0^-1 x y^-1 x0 y`` on right cosets of ``H``."""
    return union_coset_quandle(G, [(H, x0)])


def _commutes_with_inner(q, f):
    n = q.size
    return all(f[symmetry(q, x)[y]] == symmetry(q, x)[f[y]] for x in range(n) for y in range(n))


def is_centralizing_automorphism(q, f):
    """``f`` is an automorphism commuting with every right translation of ``q``."""
    return is_automorphism(q, f) and _commutes_with_inner(q, f)


def twisted_union(X1, f, X2, g):
    """``X1`` and ``X2`` glued so that ``X2`` acts on ``X1`` by ``f`` and ``X1`` on ``X2`` by ``g``.

    Elements of ``X2`` are shifted by ``|X1|``.
    """
    f, g = tuple(int(v) for v in f), tuple(int(v) for v in g)
    if not is_centralizing_automorphism(X1, f):
        raise NotCentralizingAutomorphism(1)
    if not is_centralizing_automorphism(X2, g):
        raise NotCentralizingAutomorphism(2)
    n1, n2 = X1.size, X2.size
    T = np.empty((n1 + n2, n1 + n2), dtype=np.int64)
    T[:n1, :n1] = X1.table
    T[n1:, n1:] = X2.table + n1
    T[:n1, n1:] = np.array(f)[:, None]
    T[n1:, :n1] = (np.array(g) + n1)[:, None]
    return FiniteQuandle(T)


def one_point_extension(F, lam):
    """``F`` plus a point ``p = |F|`` with ``x * p = lam(x)`` and ``p * z = p``."""
    lam = tuple(int(v) for v in lam)
    if len(lam) != F.size or not is_automorphism(F, lam):
        raise NotCentralizingAutomorphism("F", "map is not an automorphism")
    if not _commutes_with_inner(F, lam):
        raise NotCentralizingAutomorphism("F")
    n = F.size
    T = np.empty((n + 1, n + 1), dtype=np.int64)
    T[:n, :n] = F.table
    T[:n, n] = lam
    T[n, :] = n
    return FiniteQuandle(T)


def semidirect_embedding(G, alpha, m=None):
    """Images of ``x -> x t`` from ``twisted_conj(G, alpha)`` into ``conj(G x| Z_m)``."""
    a = _aut(G, alpha)
    m = a.order() if m is None else m
    if m < 1:
        raise NotAutomorphism("automorphism order must be positive")
    return tuple((1 % m) * G.size + x for x in range(G.size))
