"""Word problem and generalized membership as a race between two semi-procedures.

One side stages the congruence closure; the other streams catalog quandles
in increasing size and looks for a hom that separates.  They alternate in
fixed quanta, so whichever can finish eventually does.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .catalog import DEFAULT_CAP, Catalog
from .certificates import (
    SeparationCertificate,
    verify_distinct,
    verify_presentation_certificate,
)
from .core import subquandle_closure
from .derivation import (
    Budget,
    Deriver,
    Exhausted,
    Member as _Member,
    Proven,
    check_derivation,
    check_membership,
)

DEFAULT_QUANTUM = 10**4
DEFAULT_RACE_STEPS = 10**6


@dataclass(frozen=True)
class RaceConfig:
    quantum: int = DEFAULT_QUANTUM
    max_steps: int = DEFAULT_RACE_STEPS
    catalog_cap: int = DEFAULT_CAP
    catalog_dir: object = None
    budget: Budget = field(default_factory=Budget)


@dataclass
class Equal:
    derivation: object
    level: int
    steps: int


@dataclass
class Distinct:
    certificate: SeparationCertificate
    steps: int


@dataclass
class Member:
    witness: object
    derivation: object
    level: int
    steps: int


@dataclass
class NonMember:
    certificate: SeparationCertificate
    steps: int


@dataclass
class Undecided:
    steps: int
    reason: str


def _homs_search(P, catalog, test):
    """Per catalog quandle: ``(certificate or None, homs tried)``."""
    for q in catalog:
        tried = 0
        for img in P.assignments_into(q):
            tried += 1
            cert = test(q, img)
            if cert is not None:
                yield cert, tried
                return
        yield None, tried


def _race(P, deriver, search, config):
    steps = 0
    derive_done = search_done = False
    while steps < config.max_steps and not (derive_done and search_done):
        if not derive_done:
            before = deriver.steps
            out = deriver.run(config.quantum)
            steps += max(1, deriver.steps - before)
            if isinstance(out, Exhausted):
                derive_done = True
            elif out is not None:
                return out, steps
        if not search_done:
            try:
                cert, tried = next(search)
            except StopIteration:
                search_done = True
            else:
                steps += max(1, tried)
                if cert is not None:
                    return cert, steps
    return None, steps


def _config(config):
    return config or RaceConfig()


def _catalog(config):
    return Catalog(config.catalog_dir, config.catalog_cap).stream()


def word_problem(P, u, v, config=None):
    config = _config(config)
    deriver = Deriver(P, equal=(u, v), budget=config.budget)

    def test(q, img):
        a, b = P.evaluate(u, q, img), P.evaluate(v, q, img)
        if a != b:
            return SeparationCertificate(q, tuple(img), a, frozenset({b}))
        return None

    out, steps = _race(P, deriver, _homs_search(P, _catalog(config), test), config)
    if isinstance(out, Proven):
        if not check_derivation(P, u, v, out.derivation):
            raise AssertionError("derivation failed replay")
        return Equal(out.derivation, out.level, steps)
    if isinstance(out, SeparationCertificate):
        if not verify_distinct(P, out, u, v):
            raise AssertionError("certificate failed re-verification")
        return Distinct(out, steps)
    return Undecided(steps, "budget")


def generalized_membership(P, Y, x, config=None):
    config = _config(config)
    Y = list(Y)
    deriver = Deriver(P, member=(Y, x), budget=config.budget)

    def test(q, img):
        image = subquandle_closure(q, [P.evaluate(y, q, img) for y in Y])
        ex = P.evaluate(x, q, img)
        if ex not in image:
            return SeparationCertificate(q, tuple(img), ex, image)
        return None

    out, steps = _race(P, deriver, _homs_search(P, _catalog(config), test), config)
    if isinstance(out, _Member):
        if not check_membership(P, Y, x, out.witness, out.derivation):
            raise AssertionError("membership witness failed replay")
        return Member(out.witness, out.derivation, out.level, steps)
    if isinstance(out, SeparationCertificate):
        if not verify_presentation_certificate(P, out, Y, x):
            raise AssertionError("certificate failed re-verification")
        return NonMember(out, steps)
    return Undecided(steps, "budget")


def expr_to_text(expr, P, Y):
    """Render a membership witness over the listed subquandle generators."""
    if expr[0] == "gen":
        return "(" + P.format(Y[expr[1]]) + ")"
    _, sign, a, b = expr
    op = "*" if sign > 0 else "*-"
    return "(" + expr_to_text(a, P, Y) + op + expr_to_text(b, P, Y) + ")"


def verdict_to_json(verdict, P, Y=None):
    gens = list(P.generators)
    if isinstance(verdict, Equal):
        d = {"verdict": "equal", "level": verdict.level, "derivation": verdict.derivation.to_json(P)}
    elif isinstance(verdict, Distinct):
        d = {"verdict": "distinct", "certificate": verdict.certificate.to_json(gens)}
    elif isinstance(verdict, Member):
        d = {
            "verdict": "member",
            "level": verdict.level,
            "witness": expr_to_text(verdict.witness, P, Y),
            "derivation": verdict.derivation.to_json(P),
        }
    elif isinstance(verdict, NonMember):
        d = {"verdict": "nonmember", "certificate": verdict.certificate.to_json(gens)}
    else:
        d = {"verdict": "undecided", "reason": verdict.reason}
    d["steps"] = verdict.steps
    return d


def dumps(obj):
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))
