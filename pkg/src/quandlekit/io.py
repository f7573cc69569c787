"""Reading and writing the on-disk formats.

Quandle tables: JSON ``{"size": N, "table": [[...], ...]}`` (a bare nested
list also works), or text: a line holding ``N`` and then ``N`` rows of
integers, ``#`` starting a comment.  Groups: ``{"size", "mul", "id"}``;
automorphisms: ``{"images": [...]}``.
"""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path

import numpy as np

from .core import FiniteQuandle
from .errors import ParseError
from .groups import FiniteGroup, GroupAut
from .links import parse_link, parse_pd
from .presentations import parse_presentation


def data_path(name):
    """Path of a bundled fixture such as ``"trefoil.link"``."""
    return Path(str(resources.files("quandlekit") / "data" / name))


def resolve(path):
    """``path`` itself if it exists, else the bundled fixture of that name."""
    p = Path(path)
    if p.exists():
        return p
    q = data_path(p.name)
    if q.exists():
        return q
    raise FileNotFoundError(path)


def read_table(path):
    """Raw integer table from either format, without validation."""
    text = resolve(path).read_text()
    stripped = text.lstrip()
    if stripped.startswith("{") or stripped.startswith("["):
        try:
            data = json.loads(text)
        except ValueError as exc:
            raise ParseError(f"bad JSON in {path}: {exc}") from None
        rows = data["table"] if isinstance(data, dict) else data
    else:
        rows = []
        for raw in text.splitlines():
            line = raw.split("#", 1)[0].strip()
            if line:
                try:
                    rows.append([int(t) for t in line.split()])
                except ValueError:
                    raise ParseError(f"non-integer entry in {line!r}") from None
        if rows and len(rows[0]) == 1 and len(rows) == rows[0][0] + 1:
            rows = rows[1:]
    if not rows or any(len(r) != len(rows) for r in rows):
        raise ParseError(f"{path}: table must be square and non-empty")
    return np.array(rows, dtype=np.int64)


def read_quandle(path):
    return FiniteQuandle(read_table(path))


def quandle_json(q):
    return {"size": q.size, "table": q.tolist()}


def write_quandle(q, path):
    Path(path).write_text(json.dumps(quandle_json(q)) + "\n")


def quandle_text(q):
    return f"{q.size}\n" + "\n".join(" ".join(str(v) for v in row) for row in q.tolist()) + "\n"


def read_group(path):
    d = json.loads(resolve(path).read_text())
    G = FiniteGroup(d["mul"], identity=d.get("id"))
    if "size" in d and d["size"] != G.size:
        raise ParseError(f"size {d['size']} does not match table of order {G.size}")
    return G


def group_json(G):
    return {"size": G.size, "mul": G.mul.tolist(), "id": G.identity}


def read_automorphism(path, G):
    return GroupAut(G, json.loads(resolve(path).read_text())["images"])


def read_link(path, pd=False):
    p = resolve(path)
    text = p.read_text()
    if pd or p.suffix == ".pd":
        return parse_pd(text)
    return parse_link(text)


def read_presentation(path):
    return parse_presentation(resolve(path).read_text())


def looks_like_link(path):
    p = resolve(path)
    if p.suffix in (".link", ".pd"):
        return True
    if p.suffix == ".pres":
        return False
    for raw in p.read_text().splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            return not line.startswith("gens")
    return False
