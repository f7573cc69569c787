"""Finite fundamental n-quandles of links as unions of coset quandles.

For each component the peripheral subgroup ``<m_i, l_i>`` of ``Env_n`` is
enumerated; element ``H_i x`` of block ``i`` is a coset and
``H_i x * H_j y = H_i x y^-1 e_{m_j} y`` is read off the coset actions.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import (
    FiniteQuandle,
    find_violations,
    homogeneous_representation,
    is_n_quandle,
    isomorphic,
    symmetry,
)
from .errors import MalformedTable
from .links import fundamental_n_quandle, peripheral_data
from .presentations import GroupWord, env_n_presentation
from .toddcoxeter import CosetTable, Limits, OutOfResources, verify_closed


@dataclass
class RealizedNQuandle:
    quandle: FiniteQuandle
    n: int
    blocks: tuple  # blocks[k] = component of element k
    arc_elements: tuple  # arc_elements[a] = element for arc a
    stats: dict
    peripheral: tuple = field(repr=False, default=())
    enumerations: tuple = field(repr=False, default=())
    env: object = field(repr=False, default=None)


@dataclass
class Undecided:
    """Some enumeration ran out of resources; ``pending`` maps a label to its state."""

    pending: dict
    closed: dict
    stats: dict


def _schreier_words(result):
    """A word carrying coset 0 to each coset, from a BFS spanning tree."""
    inv = result.inverse_actions()
    words = [None] * result.index
    words[0] = ()
    todo = [0]
    i = 0
    while i < len(todo):
        c = todo[i]
        i += 1
        for g in range(len(result.actions)):
            for perm, e in ((result.actions[g], 1), (inv[g], -1)):
                d = perm[c]
                if words[d] is None:
                    words[d] = words[c] + ((g, e),)
                    todo.append(d)
    return words


def _apply(result, inv, c, letters):
    for g, e in letters:
        c = result.actions[g][c] if e > 0 else inv[g][c]
    return c


def _assemble(enums, meridians):
    offsets = np.cumsum([0] + [r.index for r in enums]).tolist()
    size = offsets[-1]
    invs = [r.inverse_actions() for r in enums]
    # the conjugate y^-1 e_{m_j} y for every element y
    conjugators = []
    for j, r in enumerate(enums):
        for w in _schreier_words(r):
            gw = GroupWord(w)
            conjugators.append((gw.inverse() * GroupWord(((meridians[j], 1),)) * gw).letters())
    T = np.empty((size, size), dtype=np.int64)
    blocks = []
    for i, r in enumerate(enums):
        for c in range(r.index):
            blocks.append(i)
            for k in range(size):
                T[offsets[i] + c, k] = offsets[i] + _apply(r, invs[i], c, conjugators[k])
    return FiniteQuandle(T), tuple(blocks), offsets


def _arc_elements(D, enums, offsets):
    """Arc ``a`` of component ``i`` is ``m_i`` acted on along the traversal."""
    by_in = {c.under_in: c for c in D.crossings}
    out = [None] * len(D.arcs)
    for i, comp in enumerate(D.components):
        r, inv = enums[i], enums[i].inverse_actions()
        c = 0
        for a in comp:
            out[a] = offsets[i] + c
            x = by_in.get(a)
            if x is not None:
                c = _apply(r, inv, c, ((x.over, x.sign),))
    return tuple(out)


def exponent_sum_image_order(G, n):
    """Order of the image of ``Env_n -> Z_n`` sending every generator to 1."""
    # every generator maps to 1, which generates Z_n
    return n if G.rank else 1


def realize_n_quandle(D, n, limits=None, with_env=True, resume=None):
    """Realize ``Q_n(D)``; returns :class:`RealizedNQuandle` or :class:`Undecided`.

    ``resume`` is a previous :class:`Undecided`; its pending tables continue.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    limits = limits or Limits()
    E = env_n_presentation(fundamental_n_quandle(D, n), n)
    periph = peripheral_data(D)
    jobs = {}
    for i, p in enumerate(periph):
        jobs[i] = [GroupWord(((p.meridian, 1),)), p.longitude]
    if with_env:
        jobs["env"] = []
    closed = dict(resume.closed) if resume else {}
    pending = {}
    for key, sub in jobs.items():
        if key in closed:
            continue
        if resume and key in resume.pending:
            table = resume.pending[key].state
        else:
            table = CosetTable(E, sub)
        res = table.run(limits)
        if isinstance(res, OutOfResources):
            pending[key] = res
        else:
            bad = verify_closed(E, sub, res)
            if bad:
                raise AssertionError(f"coset table failed replay: {bad[0]}")
            closed[key] = res
    steps = sum(r.steps for r in closed.values()) + sum(r.steps for r in pending.values())
    defined = sum(r.cosets_defined for r in closed.values()) + sum(
        r.state.defined for r in pending.values()
    )
    stats = {"cosets_defined": defined, "steps": steps}
    if "env" in closed:
        env_order = closed["env"].index
        stats["env_order"] = env_order
        stats["e0_order"] = env_order // exponent_sum_image_order(E, n)
    if any(isinstance(k, int) for k in pending):
        return Undecided(pending, closed, stats)
    enums = tuple(closed[i] for i in range(len(periph)))
    q, blocks, offsets = _assemble(enums, [p.meridian for p in periph])
    if not is_n_quandle(q, n):
        raise AssertionError("realized table is not an n-quandle")
    stats = {"order": q.size, **stats}
    if "env" in closed and q.size > closed["env"].index:
        raise AssertionError("realized quandle larger than its enveloping group")
    return RealizedNQuandle(
        q, n, blocks, _arc_elements(D, enums, offsets), stats,
        periph, enums, closed.get("env"),
    )


def natural_map_compatible(r, D):
    """Arc images respect every crossing, and the coset action of each
    crossing's outgoing arc is the conjugate of the incoming one by the over arc."""
    q = r.quandle
    el = r.arc_elements
    for c in D.crossings:
        if q.power(el[c.under_in], el[c.over], c.sign) != el[c.under_out]:
            return False
    for res in r.enumerations + ((r.env,) if r.env else ()):
        acts, inv = res.actions, res.inverse_actions()
        for c in D.crossings:
            lhs = acts[c.under_out]
            o, o_inv = (acts[c.over], inv[c.over]) if c.sign > 0 else (inv[c.over], acts[c.over])
            rhs = [o[acts[c.under_in][o_inv[k]]] for k in range(res.index)]
            if tuple(rhs) != lhs:
                return False
    return True


@dataclass
class HomogeneityReport:
    ok: bool
    witness: object = None
    detail: str = ""


def _word_to_perm(q, images, word):
    """Image of a group word under ``e_a -> S_{images[a]}`` as an image tuple."""
    perm = list(range(q.size))
    T = q.table
    D = q.dual_table
    for g, e in word.letters():
        col = T[:, images[g]] if e > 0 else D[:, images[g]]
        perm = [int(col[x]) for x in perm]
    return perm


def verify_homogeneous(obj):
    """Check stabilizers against meridian symmetries and the Inn-route rebuild."""
    q = obj.quandle if isinstance(obj, RealizedNQuandle) else obj
    if not isinstance(q, FiniteQuandle):
        try:
            viol = find_violations(np.asarray(q))
        except MalformedTable as exc:
            return HomogeneityReport(False, None, str(exc))
        if viol:
            return HomogeneityReport(False, viol[0], f"table violates {viol[0].axiom}")
        q = FiniteQuandle(q)
    if isinstance(obj, RealizedNQuandle):
        el = obj.arc_elements
        for i, p in enumerate(obj.peripheral):
            x = el[p.meridian]
            Sx = symmetry(q, x)
            for w in (GroupWord(((p.meridian, 1),)), p.longitude):
                g = _word_to_perm(q, el, w)
                if g[x] != x:
                    return HomogeneityReport(False, (i, x), "peripheral element moves its meridian")
                if any(g[Sx[y]] != Sx[g[y]] for y in range(q.size)):
                    return HomogeneityReport(False, (i, x), "peripheral element does not centralise S_m")
    rep = homogeneous_representation(q)
    for H, x in zip(rep.stabilizers, rep.representatives):
        Sx = symmetry(q, x)
        for h in H:
            g = rep.permutations[h]
            if any(g[Sx[y]] != Sx[g[y]] for y in range(q.size)):
                return HomogeneityReport(False, (x, h), "stabilizer does not centralise S_x")
    if isomorphic(rep.quandle, q) is None:
        return HomogeneityReport(False, None, "coset rebuild is not isomorphic")
    return HomogeneityReport(True)
