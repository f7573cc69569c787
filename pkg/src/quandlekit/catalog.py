"""Finite quandles up to isomorphism, generated once and cached on disk.

Tables are built column by column: column ``b`` is a permutation fixing
``b``, and self-distributivity says the column at ``sigma_c(b)`` must be
``sigma_c sigma_b sigma_c^-1``, which forces further columns as soon as two
are known.  Each class is stored by its canonical form, the lexicographically
least flattened table over all relabelings.
"""

from __future__ import annotations

import itertools
import json
import os
from pathlib import Path

import numpy as np

from .core import FiniteQuandle
from .errors import CapExceeded

CATALOG_VERSION = 1
DEFAULT_CAP = 6
EXPECTED_COUNTS = {1: 1, 2: 1, 3: 3, 4: 7, 5: 22, 6: 73}


def default_catalog_dir():
    env = os.environ.get("QK_CATALOG")
    if env:
        return Path(env)
    return Path.home() / ".cache" / "quandlekit" / "catalog"


def _labelled_tables(N):
    """Every quandle table on ``0..N-1`` (not up to isomorphism)."""
    fixing = [[p for p in itertools.permutations(range(N)) if p[k] == k] for k in range(N)]
    sigma = [None] * N

    def conj(c, b):
        sc, sb = sigma[c], sigma[b]
        inv = [0] * N
        for i, v in enumerate(sc):
            inv[v] = i
        return tuple(sc[sb[inv[x]]] for x in range(N))

    def assign(k, p, trail):
        todo = [(k, p)]
        while todo:
            k, p = todo.pop()
            if sigma[k] is not None:
                if sigma[k] != p:
                    return False
                continue
            sigma[k] = p
            trail.append(k)
            for b in range(N):
                if sigma[b] is None:
                    continue
                for c, bb in ((k, b), (b, k)):
                    d, q = sigma[c][bb], conj(c, bb)
                    if sigma[d] is None:
                        todo.append((d, q))
                    elif sigma[d] != q:
                        return False
        return True

    def rec():
        try:
            k = sigma.index(None)
        except ValueError:
            yield tuple(tuple(sigma[b][x] for b in range(N)) for x in range(N))
            return
        for p in fixing[k]:
            trail = []
            if assign(k, p, trail):
                yield from rec()
            for j in trail:
                sigma[j] = None

    yield from rec()


class _Relabeler:
    def __init__(self, N):
        P = np.array(list(itertools.permutations(range(N))), dtype=np.int64).reshape(-1, N)
        self.P = P
        self.inv = np.argsort(P, axis=1)

    def all_relabelings(self, T):
        """Row ``k``: flattened table with element ``x`` renamed ``P[k, x]``."""
        T = np.asarray(T)
        inv = self.inv
        R = T[inv[:, :, None], inv[:, None, :]]
        R = np.take_along_axis(self.P[:, None, :].repeat(T.shape[0], 1), R, axis=2)
        return R.reshape(len(self.P), -1)


def canonical_form(q):
    """Lexicographically least flattened table over all relabelings."""
    T = q.table if isinstance(q, FiniteQuandle) else np.asarray(q)
    R = _Relabeler(T.shape[0]).all_relabelings(T)
    order = np.lexsort(R.T[::-1])
    return tuple(int(v) for v in R[order[0]])


def enumerate_size(N):
    """Canonical flattened tables of all quandles of order ``N``, sorted."""
    if N == 0:
        return []
    rel = _Relabeler(N)
    seen = set()
    canon = []
    for T in _labelled_tables(N):
        key = np.asarray(T, dtype=np.int64).tobytes()
        if key in seen:
            continue
        R = rel.all_relabelings(T)
        seen.update(r.tobytes() for r in R)
        order = np.lexsort(R.T[::-1])
        canon.append(tuple(int(v) for v in R[order[0]]))
    return sorted(canon)


class Catalog:
    """On-disk catalog: ``qcat-N.json`` per size plus ``manifest.json``."""

    def __init__(self, directory=None, cap=DEFAULT_CAP):
        self.directory = Path(directory) if directory else default_catalog_dir()
        self.cap = cap
        self._mem = {}

    def _path(self, N):
        return self.directory / f"qcat-{N}.json"

    def tables(self, N):
        if N > self.cap:
            raise CapExceeded(f"size {N} exceeds catalog cap {self.cap}")
        if N in self._mem:
            return self._mem[N]
        path = self._path(N)
        flat = None
        if path.exists():
            try:
                data = json.loads(path.read_text())
                if data.get("version") == CATALOG_VERSION and data.get("size") == N:
                    flat = [tuple(t) for t in data["tables"]]
            except (OSError, ValueError):
                flat = None
        if flat is None:
            flat = enumerate_size(N)
            self._write(N, flat)
        self._mem[N] = [FiniteQuandle(np.array(t).reshape(N, N)) for t in flat]
        return self._mem[N]

    def _write(self, N, flat):
        try:
            self.directory.mkdir(parents=True, exist_ok=True)
            body = {"version": CATALOG_VERSION, "size": N, "tables": [list(t) for t in flat]}
            self._path(N).write_text(json.dumps(body, separators=(",", ":")))
            manifest = self.directory / "manifest.json"
            counts = {}
            if manifest.exists():
                try:
                    counts = json.loads(manifest.read_text()).get("counts", {})
                except ValueError:
                    counts = {}
            counts[str(N)] = len(flat)
            counts = dict(sorted(counts.items(), key=lambda kv: int(kv[0])))
            manifest.write_text(json.dumps({"version": CATALOG_VERSION, "counts": counts}, indent=1))
        except OSError:
            pass  # read-only location: keep the in-memory copy

    def stream(self, max_size=None):
        """Quandles in increasing size, loading each size lazily."""
        top = self.cap if max_size is None else max_size
        if top > self.cap:
            raise CapExceeded(f"size {top} exceeds catalog cap {self.cap}")
        for N in range(1, top + 1):
            yield from self.tables(N)


def enumerate_finite_quandles(max_size, directory=None, cap=DEFAULT_CAP):
    """``{size: [FiniteQuandle, ...]}`` for sizes ``1..max_size``, cached on disk."""
    if max_size > cap:
        raise CapExceeded(f"size {max_size} exceeds catalog cap {cap}")
    cat = Catalog(directory, cap)
    return {N: cat.tables(N) for N in range(1, max_size + 1)}
