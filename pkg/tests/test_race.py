import json

from quandlekit import io
from quandlekit.certificates import SeparationCertificate, verify_distinct, verify_presentation_certificate
from quandlekit.core import dihedral_quandle, isomorphic
from quandlekit.derivation import Budget, check_derivation, check_membership
from quandlekit.presentations import parse_presentation
from quandlekit.race import (
    Distinct,
    Equal,
    Member,
    NonMember,
    RaceConfig,
    Undecided,
    dumps,
    generalized_membership,
    verdict_to_json,
    word_problem,
)

FREE2 = io.read_presentation("free2.pres")
GCD = io.read_presentation("gcd.pres")


def W(P, text):
    return P.word(text)


def test_distinct_example():
    u, v = W(FREE2, "x*y"), W(FREE2, "x")
    verdict = word_problem(FREE2, u, v)
    assert isinstance(verdict, Distinct)
    cert = verdict.certificate
    assert cert.target.size == 3 and verify_distinct(FREE2, cert, u, v)
    # R3 with x -> 0, y -> 1 is also a valid certificate
    R3 = SeparationCertificate(dihedral_quandle(3), (0, 1), 2, frozenset({0}))
    assert verify_distinct(FREE2, R3, u, v)


def test_equal_examples():
    for P in (FREE2, GCD):
        verdict = word_problem(P, W(P, "x*y*-y"), W(P, "x"))
        assert isinstance(verdict, Equal)
    u, v = W(GCD, "x*y"), W(GCD, "x")
    verdict = word_problem(GCD, u, v)
    assert isinstance(verdict, Equal) and check_derivation(GCD, u, v, verdict.derivation)


def test_membership_examples():
    verdict = generalized_membership(FREE2, [W(FREE2, "x")], W(FREE2, "x*y"))
    assert isinstance(verdict, NonMember)
    cert = verdict.certificate
    assert cert.excluded not in cert.subquandle_image
    assert verify_presentation_certificate(FREE2, cert, [W(FREE2, "x")], W(FREE2, "x*y"))

    Y = [W(FREE2, "x"), W(FREE2, "y")]
    verdict = generalized_membership(FREE2, Y, W(FREE2, "x*y"))
    assert isinstance(verdict, Member)
    assert check_membership(FREE2, Y, W(FREE2, "x*y"), verdict.witness, verdict.derivation)
    assert verdict_to_json(verdict, FREE2, Y)["witness"] == "((x)*(y))"

    Y = [W(FREE2, "x*y")]
    verdict = generalized_membership(FREE2, Y, W(FREE2, "x*y*y*-y"))
    assert isinstance(verdict, Member)


def test_trefoil_word_problem():
    T = parse_presentation("gens a b c\nrel a*b = c\nrel b*c = a\nrel c*a = b")
    assert isinstance(word_problem(T, W(T, "a*b*b"), W(T, "c*b")), Equal)
    verdict = word_problem(T, W(T, "a*b"), W(T, "a"))
    assert isinstance(verdict, Distinct)
    assert isomorphic(verdict.certificate.target, dihedral_quandle(3)) is not None


def test_undecided_on_tiny_budget():
    # no quandle up to size 1 separates, and ten steps do not suffice for a proof
    config = RaceConfig(quantum=5, max_steps=10, catalog_cap=1)
    verdict = word_problem(FREE2, W(FREE2, "x*y"), W(FREE2, "x"), config)
    assert isinstance(verdict, Undecided) and verdict.reason == "budget"
    assert verdict_to_json(verdict, FREE2) == {"verdict": "undecided", "reason": "budget", "steps": verdict.steps}


def test_both_procedures_exhausted():
    config = RaceConfig(catalog_cap=2, budget=Budget(max_level=1))
    verdict = word_problem(FREE2, W(FREE2, "x*y"), W(FREE2, "x"), config)
    assert isinstance(verdict, Undecided)


def test_certificate_json_round_trip():
    u, v = W(FREE2, "x*y"), W(FREE2, "x")
    verdict = word_problem(FREE2, u, v)
    blob = verdict_to_json(verdict, FREE2)
    text = dumps(blob)
    back = SeparationCertificate.from_json(json.loads(text)["certificate"], list(FREE2.generators))
    assert back == verdict.certificate
    assert verify_distinct(FREE2, back, u, v)
    assert text == dumps(verdict_to_json(word_problem(FREE2, u, v), FREE2))


def test_forged_certificates_rejected():
    u, v = W(FREE2, "x*y"), W(FREE2, "x")
    cert = word_problem(FREE2, u, v).certificate
    forged = SeparationCertificate(cert.target, cert.hom, cert.excluded, frozenset({cert.excluded}))
    assert not verify_distinct(FREE2, forged, u, v)
    # generator images that break a relation
    T = parse_presentation("gens a b c\nrel a*b = c\nrel b*c = a\nrel c*a = b")
    bad = SeparationCertificate(dihedral_quandle(3), (0, 1, 0), 2, frozenset({0}))
    assert not verify_distinct(T, bad, W(T, "a*b"), W(T, "a"))


def test_verdicts_json_is_stable():
    a = dumps(verdict_to_json(word_problem(GCD, W(GCD, "x*y"), W(GCD, "x")), GCD))
    b = dumps(verdict_to_json(word_problem(GCD, W(GCD, "x*y"), W(GCD, "x")), GCD))
    assert a == b and json.loads(a)["verdict"] == "equal"
