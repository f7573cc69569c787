"""Felsch-style coset enumeration with resumable, checkpointable state.

Columns are ``2*g`` for generator ``g`` and ``2*g + 1`` for its inverse.
Coset 0 is the subgroup coset.  New cosets are defined at the first empty
entry in row-major order, so runs are reproducible; a closed table is
renumbered by breadth-first search from coset 0 before it is returned.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .presentations import GroupWord

DEFAULT_MAX_COSETS = 10**5
DEFAULT_MAX_STEPS = 10**7
CHECKPOINT_VERSION = 1


@dataclass(frozen=True)
class Limits:
    max_cosets: int = DEFAULT_MAX_COSETS
    max_steps: int = DEFAULT_MAX_STEPS


def _cols(word):
    return [2 * g + (0 if e > 0 else 1) for g, e in word.letters()]


def _cyclic_reduce(cols):
    cols = list(cols)
    while len(cols) >= 2 and cols[0] == cols[-1] ^ 1:
        cols = cols[1:-1]
    return cols


def _conjugates(relators, ncols):
    by_first = [[] for _ in range(ncols)]
    seen = set()
    for r in relators:
        inv = [c ^ 1 for c in reversed(r)]
        for w in (r, inv):
            for k in range(len(w)):
                rot = tuple(w[k:] + w[:k])
                if rot not in seen:
                    seen.add(rot)
                    by_first[rot[0]].append(rot)
    return by_first


class _Stop(Exception):
    def __init__(self, reason):
        self.reason = reason


class CosetTable:
    """Mutable enumeration state for ``[G : <sub>]``."""

    def __init__(self, G, sub=()):
        self.presentation = G
        self.sub = tuple(sub)
        self.ncols = 2 * G.rank
        self.relators = [r for r in (_cyclic_reduce(_cols(w)) for w in G.relators) if r]
        self.sub_cols = [_cols(w) for w in self.sub]
        self.rel_by_first = _conjugates(self.relators, self.ncols)
        self.rows = [[None] * self.ncols]
        self.parent = [0]
        self.deductions = []
        self.phase = "sub"
        self.sub_index = 0
        self.pointer = 0
        self.defined = 1
        self.live = 1
        self.max_live = 1
        self.steps = 0
        self._limits = Limits()
        self._progressed = False

    # --- basic table operations -------------------------------------------

    def rep(self, c):
        p = self.parent
        root = c
        while p[root] != root:
            root = p[root]
        while p[c] != root:
            p[c], c = root, p[c]
        return root

    def is_live(self, c):
        return self.parent[c] == c

    def _tick(self, k=1):
        # a run always completes one scan, so tiny quanta still make progress
        if self.steps >= self._limits.max_steps and self._progressed:
            raise _Stop("steps")
        self.steps += k
        self._progressed = True

    def _define(self, c, x):
        if self.live >= self._limits.max_cosets:
            raise _Stop("cosets")
        b = len(self.rows)
        self.rows.append([None] * self.ncols)
        self.parent.append(b)
        self.rows[c][x] = b
        self.rows[b][x ^ 1] = c
        self.defined += 1
        self.live += 1
        self.max_live = max(self.max_live, self.live)
        self.deductions.append((c, x))
        return b

    def _merge(self, k, l, queue):
        a, b = self.rep(k), self.rep(l)
        if a != b:
            lo, hi = min(a, b), max(a, b)
            self.parent[hi] = lo
            self.live -= 1
            queue.append(hi)

    def _coincidence(self, a, b):
        queue = []
        self._merge(a, b, queue)
        i = 0
        rows = self.rows
        while i < len(queue):
            g = queue[i]
            i += 1
            for x in range(self.ncols):
                d = rows[g][x]
                if d is None:
                    continue
                self.steps += 1
                rows[d][x ^ 1] = None
                mu, nu = self.rep(g), self.rep(d)
                if rows[mu][x] is not None:
                    self._merge(nu, rows[mu][x], queue)
                elif rows[nu][x ^ 1] is not None:
                    self._merge(mu, rows[nu][x ^ 1], queue)
                else:
                    rows[mu][x] = nu
                    rows[nu][x ^ 1] = mu
                    self.deductions.append((mu, x))

    def _scan(self, a, w, fill):
        rows = self.rows
        n = len(w)
        while True:
            f, i = a, 0
            while i < n and rows[f][w[i]] is not None:
                f = rows[f][w[i]]
                i += 1
            if i == n:
                if f != a:
                    self._coincidence(f, a)
                return
            b, j = a, n - 1
            while j >= i and rows[b][w[j] ^ 1] is not None:
                b = rows[b][w[j] ^ 1]
                j -= 1
            self._tick(n)
            if j < i:
                self._coincidence(f, b)
                return
            if j == i:
                rows[f][w[i]] = b
                rows[b][w[i] ^ 1] = f
                self.deductions.append((f, w[i]))
                return
            if not fill:
                return
            self._define(f, w[i])

    def _drain(self):
        while self.deductions:
            c, x, *done = self.deductions.pop()
            progress = [done[0] if done else 0]
            try:
                self._deduce(c, x, progress)
            except _Stop:
                # an interrupted scan changed nothing; resume at it
                self.deductions.append((c, x, progress[0]))
                raise

    def _deduce(self, c, x, progress):
        """Scan the relator conjugates through entry ``(c, x)``, from both ends.

        ``progress[0]`` counts the scans already done.
        """
        if not self.is_live(c) or self.rows[c][x] is None:
            return
        fwd, back = self.rel_by_first[x], self.rel_by_first[x ^ 1]
        while progress[0] < len(fwd) + len(back):
            k = progress[0]
            if k < len(fwd):
                start, w = c, fwd[k]
            else:
                start, w = self.rows[c][x] if self.is_live(c) else None, back[k - len(fwd)]
            if start is None or not self.is_live(start):
                if k >= len(fwd):
                    return
                progress[0] = len(fwd)
                continue
            self._scan(start, w, False)
            progress[0] += 1

    # --- driver -----------------------------------------------------------

    def run(self, limits=None):
        """Continue the enumeration; returns :class:`Closed` or :class:`OutOfResources`."""
        self._limits = limits or Limits()
        self._progressed = False
        try:
            self._drain()
            while self.phase == "sub":
                if self.sub_index == len(self.sub_cols):
                    self.phase = "main"
                    break
                self._scan(0, self.sub_cols[self.sub_index], True)
                self._drain()
                self.sub_index += 1
            while self.pointer < len(self.rows):
                c = self.pointer
                if self.is_live(c):
                    for x in range(self.ncols):
                        if self.is_live(c) and self.rows[c][x] is None:
                            self._define(c, x)
                            self._drain()
                self.pointer += 1
        except _Stop as stop:
            return OutOfResources(stop.reason, self)
        return self._closed()

    def _closed(self):
        # breadth-first renumbering from the subgroup coset
        order, seen = [0], {0: 0}
        i = 0
        while i < len(order):
            c = order[i]
            i += 1
            for x in range(self.ncols):
                d = self.rep(self.rows[c][x])
                if d not in seen:
                    seen[d] = len(order)
                    order.append(d)
        k = self.presentation.rank
        actions = tuple(tuple(seen[self.rep(self.rows[c][2 * g])] for c in order) for g in range(k))
        return Closed(len(order), actions, self.steps, self.defined, self.max_live)

    # --- checkpoints ------------------------------------------------------

    def to_json(self):
        G = self.presentation
        return json.dumps({
            "version": CHECKPOINT_VERSION,
            "generators": list(G.generators),
            "relators": [[list(s) for s in r.syllables] for r in G.relators],
            "subgroup": [[list(s) for s in w.syllables] for w in self.sub],
            "rows": self.rows,
            "parent": self.parent,
            "deductions": [list(d) for d in self.deductions],
            "phase": self.phase,
            "sub_index": self.sub_index,
            "pointer": self.pointer,
            "defined": self.defined,
            "live": self.live,
            "max_live": self.max_live,
            "steps": self.steps,
        }, separators=(",", ":"))

    @classmethod
    def from_json(cls, text):
        from .presentations import GroupPresentation

        d = json.loads(text)
        if d.get("version") != CHECKPOINT_VERSION:
            raise ValueError(f"unsupported checkpoint version {d.get('version')!r}")
        word = lambda s: GroupWord(tuple(tuple(x) for x in s))  # noqa: E731
        G = GroupPresentation(tuple(d["generators"]), tuple(word(r) for r in d["relators"]))
        t = cls(G, [word(w) for w in d["subgroup"]])
        t.rows = d["rows"]
        t.parent = d["parent"]
        t.deductions = [tuple(x) for x in d["deductions"]]
        for key in ("phase", "sub_index", "pointer", "defined", "live", "max_live", "steps"):
            setattr(t, key, d[key])
        return t


@dataclass
class Closed:
    index: int
    actions: tuple  # actions[g][c] = coset c . g
    steps: int = 0
    cosets_defined: int = 0
    max_live: int = 0

    def inverse_actions(self):
        out = []
        for perm in self.actions:
            inv = [0] * len(perm)
            for i, j in enumerate(perm):
                inv[j] = i
            out.append(tuple(inv))
        return tuple(out)

    def act(self, c, word):
        """Coset ``c`` acted on by a :class:`GroupWord`."""
        inv = self.inverse_actions()
        for g, e in word.letters():
            c = self.actions[g][c] if e > 0 else inv[g][c]
        return c


@dataclass
class OutOfResources:
    reason: str
    state: CosetTable = field(repr=False)

    @property
    def steps(self):
        return self.state.steps


def todd_coxeter(G, sub=(), limits=None):
    return CosetTable(G, sub).run(limits)


def verify_closed(G, sub, result):
    """Independent replay: generators act as permutations, every relator fixes
    every coset, every subgroup word fixes coset 0.  Returns a list of failures."""
    n = result.index
    bad = []
    for g, perm in enumerate(result.actions):
        if sorted(perm) != list(range(n)):
            bad.append(("not a permutation", g))
    if bad:
        return bad
    for r in G.relators:
        for c in range(n):
            if result.act(c, r) != c:
                bad.append(("relator", c, r))
                break
    for w in sub:
        if result.act(0, w) != 0:
            bad.append(("subgroup word", w))
    if n and len(_orbit(result)) != n:
        bad.append(("not transitive",))
    return bad


def _orbit(result):
    seen, todo = {0}, [0]
    while todo:
        c = todo.pop()
        for perm in result.actions + result.inverse_actions():
            if perm[c] not in seen:
                seen.add(perm[c])
                todo.append(perm[c])
    return seen
