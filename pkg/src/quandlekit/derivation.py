"""Staged equational closure for finitely presented quandles.

Terms are elements of the free quandle on the generators, kept in the normal
form ``(base, tail)``: ``tail`` a freely reduced word over generator letters
that does not start with a letter of ``base``.  Because this normal form
is exact for the free quandle, the quandle axioms hold on terms by
construction, and only the presentation's relations have to be propagated.

At level ``k`` the universe is every term with ``|tail| <= k``.  The engine
runs ground congruence closure for the two binary operations ``*`` and
``*^-1`` restricted to the universe, seeded by the relations.  Each level
terminates; raising the level eventually places any finite derivation inside
the universe.

Every merge is recorded in a proof forest, so a proven equation comes with a
derivation: an ordered list of relation and congruence steps that
:func:`check_derivation` replays without touching the engine.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .errors import CertificateError
from .presentations import QWord

DEFAULT_MAX_LEVEL = 6
DEFAULT_MAX_TERMS = 10**6
DEFAULT_MAX_STEPS = 10**7


@dataclass(frozen=True)
class Budget:
    max_level: int = DEFAULT_MAX_LEVEL
    max_terms: int = DEFAULT_MAX_TERMS
    max_steps: int = DEFAULT_MAX_STEPS


# Letters are ints: 2*g for g^+1 and 2*g+1 for g^-1, so inversion is ``l ^ 1``.

def _letters(tail):
    return tuple(2 * g + (0 if s > 0 else 1) for g, s in tail)


def _normal(base, letters):
    out = []
    for l in letters:
        if out and out[-1] == l ^ 1:
            out.pop()
        else:
            out.append(l)
    i = 0
    while i < len(out) and out[i] >> 1 == base:
        i += 1
    return (base, tuple(out[i:]))


def _inv(letters):
    return tuple(l ^ 1 for l in reversed(letters))


def term_of(w):
    """Normal form of a :class:`QWord`."""
    return _normal(w.base, _letters(w.tail))


def qword_of(term):
    base, tail = term
    return QWord(base, tuple((l >> 1, -1 if l & 1 else 1) for l in tail))


def term_op(a, b, sign):
    """Normal form of ``a *^sign b``."""
    bb, bt = b
    return _normal(a[0], a[1] + _inv(bt) + (2 * bb + (0 if sign > 0 else 1),) + bt)


def universe(rank, level):
    """All normal-form terms with tail length at most ``level``, in a fixed order."""
    out = []
    letters = list(range(2 * rank))
    for base in range(rank):
        words = [()]
        out.append((base, ()))
        for _ in range(level):
            nxt = []
            for w in words:
                for l in letters:
                    if not w and l >> 1 == base:
                        continue
                    if w and w[-1] == l ^ 1:
                        continue
                    nxt.append(w + (l,))
            out.extend((base, w) for w in nxt)
            words = nxt
    return out


def level_of(term):
    return len(term[1])


@dataclass
class Step:
    """One replayable closure step equating ``lhs`` and ``rhs``.

    ``by == "relation"``: ``index`` names the relation.  ``by == "congruence"``:
    ``lhs = left[0] *^sign left[1]`` and ``rhs = right[0] *^sign right[1]`` where
    the argument pairs are already known equal.
    """

    lhs: tuple
    rhs: tuple
    by: str
    index: int = -1
    sign: int = 1
    left: tuple = ()
    right: tuple = ()

    def to_json(self, P):
        fmt = lambda t: P.format(qword_of(t))  # noqa: E731
        out = {"lhs": fmt(self.lhs), "rhs": fmt(self.rhs), "by": self.by}
        if self.by == "relation":
            out["index"] = self.index
        else:
            out["op"] = "*" if self.sign > 0 else "*-"
            out["left"] = [fmt(t) for t in self.left]
            out["right"] = [fmt(t) for t in self.right]
        return out

    @classmethod
    def from_json(cls, d, P):
        parse = lambda s: term_of(P.word(s))  # noqa: E731
        if d["by"] == "relation":
            return cls(parse(d["lhs"]), parse(d["rhs"]), "relation", index=int(d["index"]))
        return cls(
            parse(d["lhs"]), parse(d["rhs"]), "congruence",
            sign=1 if d["op"] == "*" else -1,
            left=tuple(parse(s) for s in d["left"]),
            right=tuple(parse(s) for s in d["right"]),
        )


@dataclass
class Derivation:
    steps: list = field(default_factory=list)

    def to_json(self, P):
        return [s.to_json(P) for s in self.steps]

    @classmethod
    def from_json(cls, data, P):
        return cls([Step.from_json(d, P) for d in data])

    def __len__(self):
        return len(self.steps)


@dataclass
class Proven:
    level: int
    derivation: Derivation
    steps_used: int = 0


@dataclass
class Member:
    level: int
    witness: object
    derivation: Derivation
    steps_used: int = 0


@dataclass
class Exhausted:
    reason: str
    level: int
    steps_used: int


class _Closure:
    """Bounded ground congruence closure at one level."""

    def __init__(self, rank, level, relations):
        self.terms = universe(rank, level)
        self.index = {t: i for i, t in enumerate(self.terms)}
        n = len(self.terms)
        self.parent = list(range(n))
        self.size = [1] * n
        self.uses = [[] for _ in range(n)]
        self.pf = [None] * n  # proof forest: (neighbour, edge id)
        self.edges = []
        self.sig = {}
        self.apps = []
        self.pending = []
        self.relations = relations

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def build_apps(self):
        """Generator over pair computations; yields once per pair for step accounting."""
        index = self.index
        terms = self.terms
        for wi, w in enumerate(terms):
            for ui, u in enumerate(terms):
                for sign in (1, -1):
                    p = index.get(term_op(w, u, sign))
                    if p is not None:
                        aid = len(self.apps)
                        self.apps.append((sign, wi, ui, p))
                        self.uses[wi].append(aid)
                        if ui != wi:
                            self.uses[ui].append(aid)
                        self.sig[(sign, wi, ui)] = aid
                yield

    def seed(self):
        for k, (a, b) in enumerate(self.relations):
            self.pending.append((self.index[a], self.index[b], ("relation", k)))

    def _add_edge(self, a, b, reason):
        eid = len(self.edges)
        self.edges.append((a, b, reason))
        # reroot a's tree at a
        prev, x, via = None, a, None
        while x is not None:
            nxt = self.pf[x]
            self.pf[x] = (prev, via) if prev is not None else None
            if nxt is None:
                break
            prev, via, x = x, nxt[1], nxt[0]
        self.pf[a] = (b, eid)

    def process(self):
        """Yields once per unit of work until no merge is pending."""
        while self.pending:
            a, b, reason = self.pending.pop()
            ra, rb = self.find(a), self.find(b)
            yield
            if ra == rb:
                continue
            self._add_edge(a, b, reason)
            if self.size[ra] > self.size[rb]:
                ra, rb = rb, ra
            self.parent[ra] = rb
            self.size[rb] += self.size[ra]
            moved = self.uses[ra]
            self.uses[ra] = []
            for aid in moved:
                sign, w, u, p = self.apps[aid]
                key = (sign, self.find(w), self.find(u))
                other = self.sig.get(key)
                if other is None:
                    self.sig[key] = aid
                elif other != aid:
                    _, w2, u2, p2 = self.apps[other]
                    if self.find(p) != self.find(p2):
                        self.pending.append((p, p2, ("congruence", sign, w, u, w2, u2)))
                yield
            self.uses[rb].extend(moved)

    def _path(self, a, b):
        """Edge ids on the proof-forest path between ``a`` and ``b``."""
        anc = {}
        x, ea = a, []
        while True:
            anc[x] = len(ea)
            if self.pf[x] is None:
                break
            ea.append(self.pf[x][1])
            x = self.pf[x][0]
        y, eb = b, []
        while y not in anc:
            eb.append(self.pf[y][1])
            y = self.pf[y][0]
        return ea[: anc[y]] + eb

    def explain(self, a, b):
        needed = set()
        todo = [(a, b)]
        while todo:
            x, y = todo.pop()
            if x == y:
                continue
            for eid in self._path(x, y):
                if eid in needed:
                    continue
                needed.add(eid)
                reason = self.edges[eid][2]
                if reason[0] == "congruence":
                    _, _, w, u, w2, u2 = reason
                    todo.append((w, w2))
                    todo.append((u, u2))
        steps = []
        for eid in sorted(needed):
            a_, b_, reason = self.edges[eid]
            t = self.terms
            if reason[0] == "relation":
                steps.append(Step(t[a_], t[b_], "relation", index=reason[1]))
            else:
                _, sign, w, u, w2, u2 = reason
                steps.append(Step(t[a_], t[b_], "congruence", sign=sign,
                                  left=(t[w], t[u]), right=(t[w2], t[u2])))
        return Derivation(steps)


def _expr_json(expr, P):
    if expr[0] == "gen":
        return {"sub": expr[1]}
    _, sign, left, right = expr
    return {"op": "*" if sign > 0 else "*-", "left": _expr_json(left, P), "right": _expr_json(right, P)}


class Deriver:
    """Cooperative staged search for ``u = v`` or ``x in <Y>`` over a presentation.

    Call :meth:`run` with a step quantum; it returns ``None`` while the
    search is still going and a :class:`Proven`, :class:`Member` or
    :class:`Exhausted` once finished.
    """

    def __init__(self, P, *, equal=None, member=None, budget=None):
        if (equal is None) == (member is None):
            raise ValueError("give exactly one of equal=(u, v) or member=(Y, x)")
        self.P = P
        self.budget = budget or Budget()
        self.steps = 0
        self.result = None
        self.relations = [(term_of(a), term_of(b)) for a, b in P.relations]
        if equal is not None:
            self.mode = "equal"
            self.goal = tuple(term_of(w) for w in equal)
            needed = [level_of(t) for t in self.goal]
        else:
            self.mode = "member"
            Y, x = member
            self.subgens = [term_of(w) for w in Y]
            self.goal = term_of(x)
            needed = [level_of(t) for t in self.subgens] + [level_of(self.goal)]
        needed += [level_of(t) for r in self.relations for t in r]
        self.start_level = max(needed, default=0)
        self._gen = self._search()
        self._allow = 0

    def run(self, quantum=None):
        if self.result is not None:
            return self.result
        self._allow = float("inf") if quantum is None else self.steps + quantum
        try:
            next(self._gen)
        except StopIteration as stop:
            self.result = stop.value
        return self.result

    def _tick(self):
        self.steps += 1
        return self.steps >= self._allow or self.steps >= self.budget.max_steps

    def _immediate(self):
        if self.mode == "equal" and self.goal[0] == self.goal[1]:
            return Proven(level_of(self.goal[0]), Derivation(), self.steps)
        if self.mode == "member" and self.goal in self.subgens:
            return Member(level_of(self.goal), ("gen", self.subgens.index(self.goal)), Derivation(), self.steps)
        return None

    def _search(self):
        hit = self._immediate()
        if hit is not None:
            return hit
        level = self.start_level
        while level <= self.budget.max_level:
            cc = _Closure(self.P.rank, level, self.relations)
            if len(cc.terms) > self.budget.max_terms:
                return Exhausted("universe size", level, self.steps)
            for _ in cc.build_apps():
                if self._tick():
                    if self.steps >= self.budget.max_steps:
                        return Exhausted("steps", level, self.steps)
                    yield
            cc.seed()
            if self.mode == "equal":
                a, b = (cc.index[t] for t in self.goal)
            for _ in cc.process():
                if self._tick():
                    if self.steps >= self.budget.max_steps:
                        return Exhausted("steps", level, self.steps)
                    yield
                if self.mode == "equal" and cc.find(a) == cc.find(b):
                    break
            if self.mode == "equal":
                if cc.find(a) == cc.find(b):
                    return Proven(level, cc.explain(a, b), self.steps)
            else:
                hit = yield from self._membership(cc, level)
                if hit is not None:
                    return hit
            level += 1
        return Exhausted("level", level - 1, self.steps)

    def _membership(self, cc, level):
        goal = cc.index[self.goal]
        target = cc.find(goal)
        expr = {}
        todo = deque()
        for k, t in enumerate(self.subgens):
            i = cc.index[t]
            if i not in expr:
                expr[i] = ("gen", k)
                todo.append(i)
                if cc.find(i) == target:
                    return Member(level, expr[i], cc.explain(i, goal), self.steps)
        by_arg = {}
        for aid, (sign, w, u, p) in enumerate(cc.apps):
            by_arg.setdefault(w, []).append(aid)
            if u != w:
                by_arg.setdefault(u, []).append(aid)
        while todo:
            i = todo.popleft()
            for aid in by_arg.get(i, ()):
                sign, w, u, p = cc.apps[aid]
                if w in expr and u in expr and p not in expr:
                    expr[p] = ("op", sign, expr[w], expr[u])
                    if cc.find(p) == target:
                        return Member(level, expr[p], cc.explain(p, goal), self.steps)
                    todo.append(p)
                if self._tick():
                    if self.steps >= self.budget.max_steps:
                        return Exhausted("steps", level, self.steps)
                    yield
        return None

    def witness_json(self, witness):
        return _expr_json(witness, self.P)


def derive_equal(P, u, v, budget=None):
    """Search for a derivation of ``u = v``; :class:`Exhausted` is not a disproof."""
    return Deriver(P, equal=(u, v), budget=budget).run()


def derive_member(P, Y, x, budget=None):
    return Deriver(P, member=(Y, x), budget=budget).run()


# Independent replay.  Elements are represented by the freely reduced group
# word g^-1 s g in the free group, which determines the free-quandle element.

def _freely(letters):
    out = []
    for l in letters:
        if out and out[-1] == l ^ 1:
            out.pop()
        else:
            out.append(l)
    return tuple(out)


def _conjugate_word(term):
    base, tail = term
    return _freely(_inv(tail) + (2 * base,) + tail)


def _act(gw, gu, sign):
    return _freely(_inv(gu) + gw + gu) if sign > 0 else _freely(gu + gw + _inv(gu))


class _UF:
    def __init__(self):
        self.parent = {}

    def find(self, x):
        self.parent.setdefault(x, x)
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        self.parent[self.find(a)] = self.find(b)


def _replay(P, derivation):
    uf = _UF()
    rels = [(_conjugate_word(term_of(a)), _conjugate_word(term_of(b))) for a, b in P.relations]
    for k, st in enumerate(derivation.steps):
        a, b = _conjugate_word(st.lhs), _conjugate_word(st.rhs)
        if st.by == "relation":
            if not 0 <= st.index < len(rels) or {a, b} != set(rels[st.index]):
                raise CertificateError(f"step {k}: not relation {st.index}")
        elif st.by == "congruence":
            (w1, u1), (w2, u2) = st.left, st.right
            gw1, gu1, gw2, gu2 = map(_conjugate_word, (w1, u1, w2, u2))
            if uf.find(gw1) != uf.find(gw2) or uf.find(gu1) != uf.find(gu2):
                raise CertificateError(f"step {k}: congruence premises not established")
            if _act(gw1, gu1, st.sign) != a or _act(gw2, gu2, st.sign) != b:
                raise CertificateError(f"step {k}: congruence conclusion does not match")
        else:
            raise CertificateError(f"step {k}: unknown rule {st.by!r}")
        uf.union(a, b)
    return uf


def check_derivation(P, u, v, derivation):
    """Replay ``derivation`` and confirm it proves ``u = v``; raises on failure."""
    uf = _replay(P, derivation)
    a, b = _conjugate_word(term_of(u)), _conjugate_word(term_of(v))
    if uf.find(a) != uf.find(b):
        raise CertificateError("derivation does not connect the two words")
    return True


def evaluate_witness(Y, expr):
    """Conjugate word of a witness expression over the subquandle generators ``Y``."""
    if expr[0] == "gen":
        return _conjugate_word(term_of(Y[expr[1]]))
    _, sign, left, right = expr
    return _act(evaluate_witness(Y, left), evaluate_witness(Y, right), sign)


def check_membership(P, Y, x, witness, derivation):
    uf = _replay(P, derivation)
    if uf.find(evaluate_witness(Y, witness)) != uf.find(_conjugate_word(term_of(x))):
        raise CertificateError("witness does not equal the query element")
    return True
