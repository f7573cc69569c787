"""Finite quandles as validated operation tables.

Elements of a quandle of size ``N`` are the integers ``0..N-1`` and the table
is row-major: ``table[a, b] == a * b``.  Every :class:`FiniteQuandle` has passed
the three axioms at construction time.
"""

from __future__ import annotations

import itertools
from collections import deque, namedtuple
from dataclasses import dataclass
from math import gcd

import numpy as np

from .errors import AxiomViolation, InnTooLarge, MalformedTable, NotAutomorphism

INN_CAP = 10**6

#: ``axiom`` is one of ``idempotency``, ``right-invertibility``, ``distributivity``.
#: Witness triples are ``(a, a, a*a)``, ``(a1, a2, b)`` with ``a1*b == a2*b``,
#: and ``(a, b, c)`` with ``(a*b)*c != (a*c)*(b*c)`` respectively.
Violation = namedtuple("Violation", "axiom witness")


class Permutation(tuple):
    """A bijection of ``0..N-1`` stored as its image tuple.

    Composition follows the right-action convention used throughout the
    package: ``p.then(q)`` maps ``x`` to ``q[p[x]]``.
    """

    def __new__(cls, images):
        images = tuple(int(i) for i in images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a permutation: {images}")
        return super().__new__(cls, images)

    @classmethod
    def _trusted(cls, images):
        return super().__new__(cls, images)

    @classmethod
    def identity(cls, n):
        return cls._trusted(tuple(range(n)))

    def then(self, other):
        return Permutation._trusted(tuple(other[i] for i in self))

    def inverse(self):
        inv = [0] * len(self)
        for i, j in enumerate(self):
            inv[j] = i
        return Permutation._trusted(tuple(inv))

    def is_identity(self):
        return all(i == j for i, j in enumerate(self))

    def cycles(self):
        seen = [False] * len(self)
        out = []
        for start in range(len(self)):
            if seen[start]:
                continue
            cyc = []
            x = start
            while not seen[x]:
                seen[x] = True
                cyc.append(x)
                x = self[x]
            out.append(tuple(cyc))
        return out

    def cycle_type(self):
        return tuple(sorted(len(c) for c in self.cycles()))

    def order(self):
        o = 1
        for c in self.cycles():
            o = o * len(c) // gcd(o, len(c))
        return o

    def __repr__(self):
        return "".join("(" + " ".join(map(str, c)) + ")" for c in self.cycles())


def _as_table(raw):
    try:
        arr = np.array(raw, dtype=np.int64)
    except (TypeError, ValueError) as exc:
        raise MalformedTable(f"table is not an integer array: {exc}") from None
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
        raise MalformedTable(f"table must be a non-empty square array, got shape {arr.shape}")
    n = arr.shape[0]
    bad = np.argwhere((arr < 0) | (arr >= n))
    if len(bad):
        a, b = bad[0]
        raise MalformedTable(f"entry table[{a}][{b}] = {arr[a, b]} is outside 0..{n - 1}")
    return arr


def find_violations(table):
    """Every failed axiom instance of a square table, in a fixed order."""
    T = _as_table(table)
    n = T.shape[0]
    out = []
    for a in range(n):
        if T[a, a] != a:
            out.append(Violation("idempotency", (a, a, int(T[a, a]))))
    for b in range(n):
        col = T[:, b]
        first = {}
        for a in range(n):
            v = int(col[a])
            if v in first:
                out.append(Violation("right-invertibility", (first[v], a, b)))
            else:
                first[v] = a
    lhs = T[T[:, :, None], np.arange(n)[None, None, :]]
    rhs = T[T[:, None, :], T[None, :, :]]
    for a, b, c in np.argwhere(lhs != rhs):
        out.append(Violation("distributivity", (int(a), int(b), int(c))))
    return out


def check_witness(table, violation):
    """True iff ``violation`` really is a failed instance of its axiom in ``table``."""
    T = np.asarray(table)
    axiom, (x, y, z) = violation
    if axiom == "idempotency":
        return x == y and T[x, x] != x and T[x, x] == z
    if axiom == "right-invertibility":
        return x != y and T[x, z] == T[y, z]
    if axiom == "distributivity":
        return T[T[x, y], z] != T[T[x, z], T[y, z]]
    return False


class FiniteQuandle:
    """A finite quandle given by its operation table.

    Construction validates the axioms and raises :class:`AxiomViolation`
    listing every failed instance.
    """

    __slots__ = ("table", "_dual", "_key")

    def __init__(self, table):
        T = _as_table(table)
        violations = find_violations(T)
        if violations:
            raise AxiomViolation(violations)
        T.setflags(write=False)
        self.table = T
        self._dual = None
        self._key = None

    @property
    def size(self):
        return self.table.shape[0]

    def __len__(self):
        return self.size

    @property
    def dual_table(self):
        """``dual_table[c, b]`` is the unique ``a`` with ``a * b == c``."""
        if self._dual is None:
            n = self.size
            D = np.empty_like(self.table)
            rows = np.arange(n)
            for b in range(n):
                D[self.table[:, b], b] = rows
            D.setflags(write=False)
            self._dual = D
        return self._dual

    def op(self, a, b):
        return int(self.table[a, b])

    def dual(self, a, b):
        return int(self.dual_table[a, b])

    def power(self, a, b, k):
        """``a *^k b`` for any integer ``k``."""
        T = self.table if k >= 0 else self.dual_table
        for _ in range(abs(k)):
            a = int(T[a, b])
        return a

    def symmetry(self, x):
        return symmetry(self, x)

    def tolist(self):
        return self.table.tolist()

    def __eq__(self, other):
        return isinstance(other, FiniteQuandle) and np.array_equal(self.table, other.table)

    def __hash__(self):
        if self._key is None:
            self._key = hash((self.size, self.table.tobytes()))
        return self._key

    def __repr__(self):
        return f"FiniteQuandle(size={self.size})"


def validate(raw):
    """Check a raw table and return it as a :class:`FiniteQuandle`."""
    return FiniteQuandle(raw)


def trivial_quandle(n):
    return FiniteQuandle(np.repeat(np.arange(n)[:, None], n, axis=1))


def dihedral_quandle(n):
    """``R_n``: ``i * j = 2j - i mod n``."""
    i = np.arange(n)
    return FiniteQuandle((2 * i[None, :] - i[:, None]) % n)


def symmetry(q, x):
    """The right translation ``S_x : y -> y * x`` (column ``x`` of the table)."""
    if not 0 <= x < q.size:
        raise IndexError(f"element {x} out of range for quandle of size {q.size}")
    return Permutation._trusted(tuple(int(v) for v in q.table[:, x]))


def components(q):
    """Orbits of Inn(q), as sorted tuples ordered by least element."""
    n = q.size
    T = q.table
    label = [-1] * n
    comps = []
    for start in range(n):
        if label[start] >= 0:
            continue
        label[start] = len(comps)
        orbit = [start]
        todo = deque([start])
        while todo:
            y = todo.popleft()
            for z in T[y]:
                z = int(z)
                if label[z] < 0:
                    label[z] = len(comps)
                    orbit.append(z)
                    todo.append(z)
        comps.append(tuple(sorted(orbit)))
    return comps


def is_n_quandle(q, n):
    return all(n % symmetry(q, x).order() == 0 for x in range(q.size))


def is_trivial(q):
    return bool(np.all(q.table == np.arange(q.size)[:, None]))


def is_abelian(q):
    """``(a*b)*c == (a*c)*b`` for all triples."""
    T = q.table
    lhs = T[T[:, :, None], np.arange(q.size)[None, None, :]]
    return bool(np.array_equal(lhs, lhs.transpose(0, 2, 1)))


def subquandle_closure(q, seed):
    """Smallest subset containing ``seed`` closed under ``*`` and its dual."""
    members = set(int(s) for s in seed)
    if not members:
        raise ValueError("seed must be nonempty")
    if not all(0 <= s < q.size for s in members):
        raise IndexError("seed element out of range")
    T, D = q.table, q.dual_table
    todo = list(members)
    while todo:
        a = todo.pop()
        for b in list(members):
            for c in (T[a, b], T[b, a], D[a, b], D[b, a]):
                c = int(c)
                if c not in members:
                    members.add(c)
                    todo.append(c)
    return frozenset(members)


def is_automorphism(q, images):
    images = tuple(int(i) for i in images)
    if sorted(images) != list(range(q.size)):
        return False
    p = np.array(images)
    return bool(np.array_equal(p[q.table], q.table[p[:, None], p[None, :]]))


@dataclass(frozen=True)
class FixedPoints:
    """Fixed points of an automorphism; empty sets are not subquandles here."""

    elements: frozenset

    @property
    def is_subquandle(self):
        return bool(self.elements)


def fix(q, alpha):
    if not is_automorphism(q, alpha):
        raise NotAutomorphism(f"{tuple(alpha)} is not an automorphism of {q}")
    return FixedPoints(frozenset(x for x in range(q.size) if alpha[x] == x))


@dataclass(frozen=True)
class QuandleHom:
    """A homomorphism. For a presented source ``images`` lists generator images."""

    source: object
    target: FiniteQuandle
    images: tuple

    def __call__(self, x):
        return self.images[x]

    def is_valid(self):
        if isinstance(self.source, FiniteQuandle):
            return is_hom(self.source, self.target, self.images)
        return self.source.holds_in(self.target, self.images)


def is_hom(src, tgt, images):
    if len(images) != src.size:
        return False
    p = np.asarray(images)
    if np.any((p < 0) | (p >= tgt.size)):
        return False
    return bool(np.array_equal(p[src.table], tgt.table[p[:, None], p[None, :]]))


def product(*quandles):
    """Direct product with componentwise operation; mixed-radix element order."""
    if not quandles:
        raise ValueError("product needs at least one factor")
    sizes = [q.size for q in quandles]
    tuples = list(itertools.product(*(range(s) for s in sizes)))
    index = {t: i for i, t in enumerate(tuples)}
    table = [
        [index[tuple(q.op(x, y) for q, x, y in zip(quandles, s, t))] for t in tuples]
        for s in tuples
    ]
    return FiniteQuandle(table)


def product_hom(source, homs):
    """The hom ``x -> (phi_1(x), ..., phi_k(x))`` into the product of the targets."""
    target = product(*(h.target for h in homs))
    sizes = [h.target.size for h in homs]
    strides = [int(np.prod(sizes[i + 1:])) for i in range(len(sizes))]
    images = tuple(
        sum(h.images[x] * s for h, s in zip(homs, strides)) for x in range(len(homs[0].images))
    )
    return QuandleHom(source, target, images)


class InnerGroup:
    """Inn(X) given by the right translations, with a capped closure."""

    def __init__(self, q):
        self.quandle = q
        self.generators = [(x, symmetry(q, x)) for x in range(q.size)]
        self._closure = None

    def closure(self, cap=INN_CAP):
        if self._closure is None:
            n = self.quandle.size
            gens = []
            for _, s in self.generators:
                if s not in gens and not s.is_identity():
                    gens.append(s)
            e = Permutation.identity(n)
            elements = [e]
            seen = {e}
            i = 0
            while i < len(elements):
                g = elements[i]
                i += 1
                for s in gens:
                    h = g.then(s)
                    if h not in seen:
                        if len(elements) >= cap:
                            raise InnTooLarge(f"Inn closure exceeds cap {cap}")
                        seen.add(h)
                        elements.append(h)
            self._closure = elements
        return self._closure

    def order(self, cap=INN_CAP):
        return len(self.closure(cap))


def inner_group(q):
    return InnerGroup(q)


def _hom_search(src_T, src_D, tgt_T, tgt_D, candidates, injective=False):
    """Depth-first search for maps compatible with ``*`` and its dual.

    Yields image tuples in lexicographic order.  ``candidates[a]`` is the
    ascending list of allowed images of ``a``.
    """
    n = len(src_T)
    allowed = [set(c) for c in candidates]

    def assign(img, used, a, v):
        todo = [(a, v)]
        assigned = [x for x in range(n) if img[x] >= 0]
        while todo:
            a, v = todo.pop()
            if img[a] >= 0:
                if img[a] != v:
                    return False
                continue
            if v not in allowed[a] or (injective and v in used):
                return False
            img[a] = v
            used.add(v)
            assigned.append(a)
            for b in assigned:
                ia, ib = img[a], img[b]
                for c, w in (
                    (src_T[a][b], tgt_T[ia][ib]),
                    (src_T[b][a], tgt_T[ib][ia]),
                    (src_D[a][b], tgt_D[ia][ib]),
                    (src_D[b][a], tgt_D[ib][ia]),
                ):
                    if img[c] < 0:
                        todo.append((c, w))
                    elif img[c] != w:
                        return False
        return True

    def rec(img, used):
        try:
            a = img.index(-1)
        except ValueError:
            yield tuple(img)
            return
        for v in candidates[a]:
            img2, used2 = list(img), set(used)
            if assign(img2, used2, a, v):
                yield from rec(img2, used2)

    yield from rec([-1] * n, set())


def enumerate_homs(src, tgt):
    """Every homomorphism from ``src`` into ``tgt``, each once, in lexicographic order.

    ``src`` is a :class:`FiniteQuandle` or a
    :class:`~quandlekit.presentations.QuandlePresentation`; for the latter a
    generator assignment is a hom iff every relation holds in ``tgt``.
    """
    if isinstance(src, FiniteQuandle):
        cands = [list(range(tgt.size))] * src.size
        for img in _hom_search(
            src.table.tolist(), src.dual_table.tolist(),
            tgt.table.tolist(), tgt.dual_table.tolist(), cands,
        ):
            yield QuandleHom(src, tgt, img)
        return
    for img in src.assignments_into(tgt):
        yield QuandleHom(src, tgt, img)


def count_homs(src, tgt):
    return sum(1 for _ in enumerate_homs(src, tgt))


def element_invariants(q):
    """Per-element isomorphism invariants: component size, column cycle type, row fixed count."""
    comp_size = {}
    for c in components(q):
        for x in c:
            comp_size[x] = len(c)
    T = q.table
    return [
        (comp_size[x], symmetry(q, x).cycle_type(), int(np.sum(T[x] == x)))
        for x in range(q.size)
    ]


def isomorphic(q1, q2):
    """The lexicographically least isomorphism ``q1 -> q2`` as an image tuple, or ``None``."""
    if q1.size != q2.size:
        return None
    inv1, inv2 = element_invariants(q1), element_invariants(q2)
    if sorted(inv1) != sorted(inv2):
        return None
    if sorted(len(c) for c in components(q1)) != sorted(len(c) for c in components(q2)):
        return None
    cands = [[y for y in range(q2.size) if inv2[y] == inv1[x]] for x in range(q1.size)]
    search = _hom_search(
        q1.table.tolist(), q1.dual_table.tolist(),
        q2.table.tolist(), q2.dual_table.tolist(), cands, injective=True,
    )
    return next(search, None)


def relabel(q, perm):
    """The quandle on the same carrier with element ``x`` renamed ``perm[x]``."""
    p = np.asarray(perm)
    inv = np.argsort(p)
    return FiniteQuandle(p[q.table[inv[:, None], inv[None, :]]])


@dataclass(frozen=True)
class HomogeneousRepresentation:
    """``q`` rebuilt as a disjoint union of coset quandles of Inn(q).

    ``iso[k]`` is the element of ``q`` corresponding to element ``k`` of
    ``quandle`` under the orbit map ``H_i g -> x_i . g``.
    """

    group: object
    permutations: tuple
    representatives: tuple
    stabilizers: tuple
    quandle: FiniteQuandle
    labels: tuple
    iso: tuple


def homogeneous_representation(q, cap=INN_CAP):
    from .constructions import union_coset_quandle_labelled
    from .groups import group_from_permutations

    perms = InnerGroup(q).closure(cap)
    G = group_from_permutations(perms)
    index = {p: i for i, p in enumerate(perms)}
    reps = tuple(c[0] for c in components(q))
    stabs = tuple(frozenset(i for i, p in enumerate(perms) if p[x] == x) for x in reps)
    blocks = [(H, index[symmetry(q, x)]) for H, x in zip(stabs, reps)]
    coset_q, labels = union_coset_quandle_labelled(G, blocks)
    iso = tuple(perms[g][reps[i]] for i, g in labels)
    return HomogeneousRepresentation(G, tuple(perms), reps, stabs, coset_q, tuple(labels), iso)
