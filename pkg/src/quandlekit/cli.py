"""``qk``: command-line access to the library.

Exit codes: 0 decided or succeeded, 1 invalid input or a failed
re-verification, 2 resources exhausted or undecided.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass
from math import lcm

from . import io
from .catalog import DEFAULT_CAP, Catalog
from .core import (
    components,
    count_homs,
    dihedral_quandle,
    find_violations,
    inner_group,
    is_abelian,
    is_trivial,
    isomorphic,
    symmetry,
)
from .derivation import Budget
from .errors import InnTooLarge, QuandleError
from .freeabelian import FreeAbelianElement, Member as FabMember, fab_membership, fab_separate
from .links import fundamental_n_quandle, fundamental_quandle
from .presentations import env_n_presentation, env_presentation, n_quandle_presentation
from .race import (
    DEFAULT_QUANTUM,
    RaceConfig,
    Undecided as RaceUndecided,
    dumps,
    generalized_membership,
    verdict_to_json,
    word_problem,
)
from .realize import Undecided, realize_n_quandle
from .toddcoxeter import DEFAULT_MAX_COSETS, DEFAULT_MAX_STEPS, Limits

OK, INVALID, UNDECIDED = 0, 1, 2


@dataclass(frozen=True)
class Config:
    max_cosets: int = DEFAULT_MAX_COSETS
    max_steps: int = DEFAULT_MAX_STEPS
    catalog_cap: int = DEFAULT_CAP
    quantum: int = DEFAULT_QUANTUM
    catalog_dir: object = None
    json: bool = False

    def __post_init__(self):
        for name in ("max_cosets", "max_steps", "catalog_cap", "quantum"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")

    @property
    def limits(self):
        return Limits(self.max_cosets, self.max_steps)

    @property
    def race(self):
        return RaceConfig(self.quantum, self.max_steps, self.catalog_cap, self.catalog_dir, Budget())


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(INVALID, f"{self.prog}: error: {message}\n")


def _emit(cfg, obj, human=None):
    if cfg.json:
        print(dumps(obj))
    elif human is not None:
        print(human.rstrip("\n"))
    else:
        for k, v in obj.items():
            print(f"{k}: {v if not isinstance(v, (dict, list)) else json.dumps(v, sort_keys=True)}")


def _presentation(path, n=None, pd=False):
    if pd or io.looks_like_link(path):
        D = io.read_link(path, pd)
        return fundamental_quandle(D) if n is None else fundamental_n_quandle(D, n)
    P = io.read_presentation(path)
    return P if n is None else n_quandle_presentation(P, n)


def cmd_validate(args, cfg):
    T = io.read_table(args.table)
    viol = find_violations(T)
    out = {"valid": not viol, "size": int(T.shape[0])}
    if viol:
        out["violations"] = len(viol)
        out["first"] = {"axiom": viol[0].axiom, "witness": [int(v) for v in viol[0].witness]}
        if args.raw:
            out["all"] = [{"axiom": v.axiom, "witness": [int(t) for t in v.witness]} for v in viol]
    _emit(cfg, out)
    return OK if not viol else INVALID


def cmd_info(args, cfg):
    q = io.read_quandle(args.table)
    orders = [symmetry(q, x).order() for x in range(q.size)]
    out = {
        "size": q.size,
        "components": [len(c) for c in components(q)],
        "trivial": is_trivial(q),
        "abelian": is_abelian(q),
        "n": lcm(*orders),
    }
    try:
        out["inn_order"] = inner_group(q).order()
    except InnTooLarge:
        out["inn_order"] = None
    _emit(cfg, out)
    return OK


def cmd_fundq(args, cfg):
    P = _presentation(args.input, args.n, args.pd)
    if cfg.json:
        _emit(cfg, {
            "generators": list(P.generators),
            "relations": [[P.format(u), P.format(v)] for u, v in P.relations],
        })
    else:
        print(P.to_text(), end="")
    return OK


def cmd_env(args, cfg):
    P = _presentation(args.input, None, args.pd)
    G = env_presentation(P) if args.n is None else env_n_presentation(P, args.n)
    if cfg.json:
        from .presentations import format_group_word

        _emit(cfg, {
            "generators": list(G.generators),
            "relators": [format_group_word(r, G.generators) for r in G.relators],
        })
    else:
        print(G.to_text(), end="")
    return OK


def cmd_realize(args, cfg):
    D = io.read_link(args.input, args.pd)
    n = args.n or 2
    r = realize_n_quandle(D, n, cfg.limits)
    if isinstance(r, Undecided):
        out = {"undecided": sorted(str(k) for k in r.pending), **r.stats}
        _emit(cfg, out)
        return UNDECIDED
    out = dict(r.stats)
    if r.quandle.size >= 3:
        out[f"iso_r{r.quandle.size}"] = isomorphic(r.quandle, dihedral_quandle(r.quandle.size)) is not None
    if args.target:
        out["iso_target"] = isomorphic(r.quandle, io.read_quandle(args.target)) is not None
    if args.raw:
        print(io.quandle_text(r.quandle), end="")
        return OK
    _emit(cfg, out)
    return OK


def cmd_color(args, cfg):
    if not args.target:
        raise QuandleError("color needs --target FILE")
    P = _presentation(args.input, args.n, args.pd)
    _emit(cfg, {"homs": count_homs(P, io.read_quandle(args.target))})
    return OK


def _verdict_exit(v):
    return UNDECIDED if isinstance(v, RaceUndecided) else OK


def cmd_wp(args, cfg):
    P = _presentation(args.input, args.n, args.pd)
    u, v = P.word(args.u), P.word(args.v)
    verdict = word_problem(P, u, v, cfg.race)
    _emit(cfg, verdict_to_json(verdict, P))
    return _verdict_exit(verdict)


def _split_words(text):
    return [w.strip() for w in text.split(",") if w.strip()]


def cmd_member(args, cfg):
    P = _presentation(args.input, args.n, args.pd)
    Y = [P.word(w) for w in _split_words(args.sub or "")]
    if not Y:
        raise QuandleError("member needs --sub \"w1,w2,...\"")
    x = P.word(args.x)
    verdict = generalized_membership(P, Y, x, cfg.race)
    _emit(cfg, verdict_to_json(verdict, P, Y))
    return _verdict_exit(verdict)


_FAB = re.compile(r"\(\s*(\d+)\s*;([^)]*)\)")


def parse_fab(text):
    """All ``(i; n_1, ..., n_r)`` tuples in ``text``."""
    out = []
    for m in _FAB.finditer(text):
        coords = tuple(int(c) for c in m.group(2).split(","))
        out.append(FreeAbelianElement(int(m.group(1)), coords))
    return out


def cmd_fab(args, cfg):
    xs = parse_fab(args.x)
    gens = parse_fab(args.sub or "")
    if len(xs) != 1 or not gens:
        raise QuandleError("fab needs one element '(i; n1,...)' and --sub with generators")
    x = xs[0]
    res = fab_membership(gens, x)
    if isinstance(res, FabMember):
        _emit(cfg, {"member": True})
        return OK
    cert = fab_separate(gens, x)
    _emit(cfg, {"member": False, "case": res.case, "certificate": cert.to_json([f"x{k}" for k in range(1, x.rank + 1)])})
    return OK


def cmd_catalog(args, cfg):
    top = args.size if args.size is not None else cfg.catalog_cap
    cat = Catalog(cfg.catalog_dir, cfg.catalog_cap)
    counts = {str(N): len(cat.tables(N)) for N in range(1, top + 1)}
    _emit(cfg, {"directory": str(cat.directory), "counts": counts})
    return OK


def cmd_iso(args, cfg):
    a, b = io.read_quandle(args.first), io.read_quandle(args.second)
    phi = isomorphic(a, b)
    out = {"isomorphic": phi is not None}
    if phi is not None:
        out["map"] = list(phi)
    _emit(cfg, out)
    return OK


def build_parser():
    p = _Parser(prog="qk", description="Quandles, link invariants and their decision procedures.")
    common = _Parser(add_help=False)
    common.add_argument("--n", type=int)
    common.add_argument("--target")
    common.add_argument("--sub")
    common.add_argument("--max-cosets", type=int, default=DEFAULT_MAX_COSETS)
    common.add_argument("--max-steps", type=int, default=DEFAULT_MAX_STEPS)
    common.add_argument("--catalog")
    common.add_argument("--catalog-cap", type=int, default=DEFAULT_CAP)
    common.add_argument("--quantum", type=int, default=DEFAULT_QUANTUM)
    common.add_argument("--json", action="store_true")
    common.add_argument("--raw", action="store_true", help="validate: list every violation; realize: print the table as text")
    common.add_argument("--pd", action="store_true", help="read the link as PD code")
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    def add(name, fn, *positional, help=None):
        sp = sub.add_parser(name, parents=[common], help=help)
        for arg in positional:
            if isinstance(arg, tuple):
                sp.add_argument(arg[0], **arg[1])
            else:
                sp.add_argument(arg)
        sp.set_defaults(fn=fn)

    add("validate", cmd_validate, "table", help="check the quandle axioms")
    add("info", cmd_info, "table", help="basic invariants of a table")
    add("fundq", cmd_fundq, "input", help="fundamental (n-)quandle presentation")
    add("env", cmd_env, "input", help="enveloping group presentation")
    add("realize", cmd_realize, "input", help="finite fundamental n-quandle of a link")
    add("color", cmd_color, "input", help="count homs into --target")
    add("wp", cmd_wp, "input", "u", "v", help="decide u = v")
    add("member", cmd_member, "input", "x", help="decide x in <--sub>")
    add("fab", cmd_fab, "x", help="free abelian membership with certificate")
    add("catalog", cmd_catalog, ("size", {"type": int, "nargs": "?"}), help="build or load the catalog")
    add("iso", cmd_iso, "first", "second", help="isomorphism test")
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = Config(
            args.max_cosets, args.max_steps, args.catalog_cap, args.quantum,
            args.catalog, args.json,
        )
        return args.fn(args, cfg)
    except (QuandleError, ValueError, FileNotFoundError, KeyError) as exc:
        print(f"qk: error: {exc}", file=sys.stderr)
        return INVALID
    except AssertionError as exc:
        print(f"qk: verification failed: {exc}", file=sys.stderr)
        return INVALID


if __name__ == "__main__":
    sys.exit(main())
