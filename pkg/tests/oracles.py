"""Brute-force reference implementations used as test oracles.

Nothing here imports the evaluation code under test: words are evaluated
from raw tables, group relators from raw multiplication, free-product
elements by a letter-level stack reducer.
"""

from __future__ import annotations

import itertools


def axiom_failures(T):
    """All failed axiom instances of a raw square table, by plain loops."""
    n = len(T)
    out = []
    for a in range(n):
        if T[a][a] != a:
            out.append(("idempotency", a))
    for b in range(n):
        if sorted(T[a][b] for a in range(n)) != list(range(n)):
            out.append(("right-invertibility", b))
    for a, b, c in itertools.product(range(n), repeat=3):
        if T[T[a][b]][c] != T[T[a][c]][T[b][c]]:
            out.append(("distributivity", (a, b, c)))
    return out


def is_quandle_table(T):
    return not axiom_failures(T)


def dual_of(T):
    n = len(T)
    D = [[0] * n for _ in range(n)]
    for a in range(n):
        for b in range(n):
            D[T[a][b]][b] = a
    return D


def eval_qword(w, T, D, img):
    x = img[w.base]
    for g, s in w.tail:
        x = T[x][img[g]] if s > 0 else D[x][img[g]]
    return x


def quandle_hom_count(P, T):
    """Generator assignments into table ``T`` satisfying every relation of ``P``."""
    T = [list(map(int, r)) for r in T]
    D = dual_of(T)
    count = 0
    for img in itertools.product(range(len(T)), repeat=P.rank):
        if all(eval_qword(u, T, D, img) == eval_qword(v, T, D, img) for u, v in P.relations):
            count += 1
    return count


def group_eval(word, mul, inv, e, img):
    x = e
    for g, k in word.syllables:
        y = img[g] if k > 0 else inv[img[g]]
        for _ in range(abs(k)):
            x = mul[x][y]
    return x


def group_hom_count(G_pres, G):
    mul = G.mul.tolist()
    e = G.identity
    inv = [next(h for h in range(G.size) if mul[g][h] == e) for g in range(G.size)]
    count = 0
    for img in itertools.product(range(G.size), repeat=G_pres.rank):
        if all(group_eval(r, mul, inv, e, img) == e for r in G_pres.relators):
            count += 1
    return count


def conj_table(G):
    mul = G.mul.tolist()
    e = G.identity
    inv = [next(h for h in range(G.size) if mul[g][h] == e) for g in range(G.size)]
    return [[mul[mul[inv[y]][x]][y] for y in range(G.size)] for x in range(G.size)]


# --- free products of cyclic groups ----------------------------------------

def fp_reduce(letters, n):
    """Reduce a word of generator letters in ``Z_n * ... * Z_n``.

    Letters are generator indices, each meaning ``g^1``; a run of ``n`` equal
    letters vanishes.  A stack of ``[gen, count]`` runs does the job.
    """
    stack = []
    for g in letters:
        if stack and stack[-1][0] == g:
            stack[-1][1] += 1
            if stack[-1][1] == n:
                stack.pop()
        else:
            stack.append([g, 1])
    return tuple((g, c) for g, c in stack)


def fp_expand(syllables, n):
    out = []
    for g, e in syllables:
        out.extend([g] * (e % n))
    return out


def fp_inverse(letters, n):
    out = []
    for g in reversed(letters):
        out.extend([g] * (n - 1))
    return out


def fp_conjugate(s, syllables, n):
    """Reduced word of ``g^-1 s g``: the element determined by ``(s, g)``."""
    g = fp_expand(syllables, n)
    return fp_reduce(fp_inverse(g, n) + [s] + g, n)


def fp_op(a, b, n, sign=1):
    """``a * b = b^-1 a b`` (``sign=-1``: ``b a b^-1``) on reduced words."""
    la, lb = fp_expand(a, n), fp_expand(b, n)
    if sign > 0:
        return fp_reduce(fp_inverse(lb, n) + la + lb, n)
    return fp_reduce(lb + la + fp_inverse(lb, n), n)


# --- free abelian quandle ----------------------------------------------------

def fa_op(a, b, step=1):
    """``(i; n) * (j; m)``: bump coordinate ``j`` unless ``i == j``."""
    (i, n), (j, _) = a, b
    if i == j:
        return a
    n = list(n)
    n[j - 1] += step
    return (i, tuple(n))


def fa_closure_member(gens, x, bound):
    """Closure of ``gens`` under both operations, coordinates kept within ``bound``."""
    gens = [(g.base, g.coords) for g in gens]
    seen = set(gens)
    todo = list(gens)
    # fa_op reads only the base of its right factor
    bases = {}
    for g in gens:
        bases.setdefault(g[0], g)
    while todo:
        a = todo.pop()
        for b in bases.values():
            for s in (1, -1):
                c = fa_op(a, b, s)
                if c not in seen and all(abs(t) <= bound for t in c[1]):
                    seen.add(c)
                    todo.append(c)
    return (x.base, x.coords) in seen
