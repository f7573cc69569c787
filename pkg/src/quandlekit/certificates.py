"""Separation certificates: a finite quandle and a hom that tells elements apart."""

from __future__ import annotations

from dataclasses import dataclass

from .core import FiniteQuandle, subquandle_closure


@dataclass(frozen=True)
class SeparationCertificate:
    """``hom`` lists generator images in ``target``; ``excluded`` is the image of
    the separated element and lies outside ``subquandle_image``."""

    target: FiniteQuandle
    hom: tuple
    excluded: int
    subquandle_image: frozenset

    def to_json(self, generators=None):
        names = generators or [str(i) for i in range(len(self.hom))]
        return {
            "target": self.target.tolist(),
            "hom": {g: int(v) for g, v in zip(names, self.hom)},
            "excluded": int(self.excluded),
            "subquandle_image": sorted(int(v) for v in self.subquandle_image),
        }

    @classmethod
    def from_json(cls, d, generators=None):
        names = generators or sorted(d["hom"], key=int)
        return cls(
            FiniteQuandle(d["target"]),
            tuple(int(d["hom"][g]) for g in names),
            int(d["excluded"]),
            frozenset(int(v) for v in d["subquandle_image"]),
        )


def verify_presentation_certificate(P, cert, Y, x):
    """Re-check a certificate separating ``x`` from ``<Y>`` in the quandle ``P`` presents.

    Word-problem certificates use ``Y = [v]`` with ``x = u``.
    """
    q = cert.target
    if len(cert.hom) != P.rank or not all(0 <= v < q.size for v in cert.hom):
        return False
    if not P.holds_in(q, cert.hom):
        return False
    image = subquandle_closure(q, [P.evaluate(y, q, cert.hom) for y in Y])
    ex = P.evaluate(x, q, cert.hom)
    return ex == cert.excluded and image == cert.subquandle_image and ex not in image


def verify_distinct(P, cert, u, v):
    """``u`` and ``v`` have different images; the image set is ``{phi(v)}``."""
    q = cert.target
    if len(cert.hom) != P.rank or not P.holds_in(q, cert.hom):
        return False
    a, b = P.evaluate(u, q, cert.hom), P.evaluate(v, q, cert.hom)
    return a == cert.excluded and cert.subquandle_image == frozenset({b}) and a != b
