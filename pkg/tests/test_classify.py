"""Entropy classification: verdicts, witnesses, certificates, replay."""

import itertools
import json
import random

import pytest
from hypothesis import given, settings, strategies as st

from oracles import brute_betti_fp

from raag.classify import (CERT_COLLAPSE, CERT_COMPLEMENTARY, CERT_TOP,
                           CERT_WITNESS, POSITIVE, UNDETERMINED, ZERO,
                           Certificate, EmbeddingWitness, Verdict, classify,
                           replay_certificate, report, verify_witness)
from raag.errors import (MalformedComplexError, NotFlagError,
                         WitnessRejectedError)
from raag.fixtures import _polygon_disk, fixture
from raag.simplicial import (barycentric_subdivision, cone, flag_completion,
                             from_facets, induced_subcomplex)


def _annulus_and_disk():
    disk = _polygon_disk(6)
    annulus, _ = induced_subcomplex(disk, range(12))
    witness = EmbeddingWitness(supercomplex=disk, embedding=tuple(range(12)))
    return annulus, disk, witness


# -- verdicts on the standard menu --------------------------------------------------


@pytest.mark.parametrize("name,kwargs,outcome,kind", [
    ("cycle", dict(n=5), POSITIVE, CERT_TOP),
    ("discrete", dict(n=2), POSITIVE, CERT_TOP),
    ("octahedron", {}, POSITIVE, CERT_TOP),
    ("rp2_flag", {}, POSITIVE, CERT_TOP),
    ("moore_flag", dict(q=3), POSITIVE, CERT_TOP),
    ("simplex", dict(n=0), ZERO, CERT_COMPLEMENTARY),
    ("path", dict(n=4), ZERO, CERT_COMPLEMENTARY),
    ("simplex", dict(n=3), ZERO, CERT_COMPLEMENTARY),
    ("simplex", dict(n=2), ZERO, CERT_COLLAPSE),
    ("disk_flag", {}, ZERO, CERT_COLLAPSE),
    ("dunce_flag", {}, UNDETERMINED, None),
])
def test_verdicts(name, kwargs, outcome, kind):
    L = fixture(name, **kwargs)
    v = classify(L, budget=8)
    assert v.outcome == outcome
    assert v.d == L.dim and v.gdim == L.dim + 1
    if kind is None:
        assert v.certificate is None
    else:
        assert v.certificate.kind == kind
        ok, why = replay_certificate(L, v)
        assert ok, why


def test_higher_dimensional_contractible_is_zero():
    L = cone(fixture("octahedron"))
    v = classify(L)
    assert v.outcome == ZERO and v.certificate.kind == CERT_COMPLEMENTARY
    assert v.d == 3 and v.gdim == 4


def test_positive_detail_identifies_prime():
    v = classify(fixture("rp2_flag"))
    assert v.certificate.data["condition"] == "torsion_below_top"
    assert v.certificate.data["witness_prime"] == 2
    v = classify(fixture("moore_flag", q=3))
    assert v.certificate.data["witness_prime"] == 3
    v = classify(fixture("cycle", n=5))
    assert v.certificate.data["all_primes"] is True


def test_undetermined_notes_name_the_gap():
    v = classify(fixture("dunce_flag"), budget=2)
    assert v.outcome == UNDETERMINED
    assert "dimension-2 gap" in v.notes
    assert "no collapse of the complex itself" in v.notes


def test_classify_rejects_empty_and_non_flag():
    with pytest.raises(MalformedComplexError):
        classify(from_facets([]))
    with pytest.raises(NotFlagError) as exc:
        classify(fixture("rp2_6"))
    assert exc.value.witness == (0, 1, 3)


# -- embedding witnesses --------------------------------------------------------------


def test_verify_witness_accepts_tree_identity():
    p3 = fixture("path", n=3)
    ok, reason, seq = verify_witness(p3, EmbeddingWitness(p3, (0, 1, 2)))
    assert ok and seq is not None
    assert "collapses" in reason


def test_verify_witness_not_contractible():
    c4 = fixture("cycle", n=4)
    ok, reason, seq = verify_witness(c4, EmbeddingWitness(c4, (0, 1, 2, 3)))
    assert not ok and seq is None
    assert "not contractible" in reason


def test_verify_witness_structural_failures():
    p3 = fixture("path", n=3)
    ok, reason, _ = verify_witness(p3, EmbeddingWitness(p3, (0, 0, 1)))
    assert not ok and "injective" in reason
    ok, reason, _ = verify_witness(p3, EmbeddingWitness(p3, (0, 1)))
    assert not ok and "3 vertices" in reason
    edge = fixture("simplex", n=1)
    ok, reason, _ = verify_witness(fixture("discrete", n=2), EmbeddingWitness(edge, (0, 1)))
    assert not ok and "dimension" in reason
    # image of an edge missing in the supercomplex
    two_edges = from_facets([[0, 1], [2, 3]])
    ok, reason, _ = verify_witness(edge, EmbeddingWitness(two_edges, (0, 2)))
    assert not ok and "not a simplex" in reason


def test_annulus_needs_its_witness():
    annulus, disk, witness = _annulus_and_disk()
    assert classify(annulus, budget=8).outcome == UNDETERMINED
    v = classify(annulus, witness=witness, budget=8)
    assert v.outcome == ZERO and v.certificate.kind == CERT_WITNESS
    ok, why = replay_certificate(annulus, v)
    assert ok, why


def test_structurally_bad_witness_raises():
    annulus, disk, _ = _annulus_and_disk()
    bad = EmbeddingWitness(disk, tuple(range(1, 13)))  # duplicate-free but wrong simplices
    with pytest.raises(WitnessRejectedError):
        classify(annulus, witness=bad)


def test_unusable_witness_noted_and_ignored():
    annulus, _, _ = _annulus_and_disk()
    # structurally fine, but the supercomplex is the annulus itself: not contractible
    self_witness = EmbeddingWitness(annulus, tuple(range(12)))
    v = classify(annulus, witness=self_witness, budget=8)
    assert v.outcome == UNDETERMINED
    assert "witness unusable" in v.notes


# -- certificates: serialization and replay ---------------------------------------------


@pytest.mark.parametrize("name,kwargs", [
    ("cycle", dict(n=5)),           # TopCohomologyNonzero
    ("path", dict(n=4)),            # ComplementaryVanishing
    ("disk_flag", {}),              # CollapsibleSelf
])
def test_certificate_survives_serialization(name, kwargs):
    L = fixture(name, **kwargs)
    v = classify(L)
    back = Verdict.from_json(v.to_json())
    assert back == v
    ok, why = replay_certificate(L, back)
    assert ok, why


def test_witness_certificate_survives_serialization():
    annulus, _, witness = _annulus_and_disk()
    v = classify(annulus, witness=witness, budget=8)
    back = Verdict.from_json(v.to_json())
    assert back == v
    ok, why = replay_certificate(annulus, back)
    assert ok, why


def test_replay_rejects_mismatched_certificates():
    # a positivity certificate replayed against a complex with vanishing top cohomology
    v = classify(fixture("cycle", n=5))
    ok, why = replay_certificate(fixture("path", n=4), v)
    assert not ok
    # complementary vanishing replayed in dimension 2
    v = classify(fixture("path", n=4))
    ok, why = replay_certificate(fixture("disk_flag"), v)
    assert not ok and "dimension 2" in why
    # tampered collapse pairs
    v = classify(fixture("disk_flag"))
    data = json.loads(v.to_json())
    data["certificate"]["data"]["collapse"]["pairs"] = \
        data["certificate"]["data"]["collapse"]["pairs"][1:]
    tampered = Verdict.from_json_dict(data)
    ok, _ = replay_certificate(fixture("disk_flag"), tampered)
    assert not ok
    # unknown kind
    v = classify(fixture("path", n=4))
    odd = Verdict(v.outcome, v.d, v.gdim, Certificate("Imaginary", {}), v.homology)
    ok, why = replay_certificate(fixture("path", n=4), odd)
    assert not ok and "unknown" in why


def test_undetermined_has_nothing_to_replay():
    L = fixture("dunce_flag")
    v = classify(L, budget=2)
    ok, why = replay_certificate(L, v)
    assert not ok and "no certificate" in why


# -- invariance and soundness properties --------------------------------------------------


@pytest.mark.parametrize("name,kwargs", [
    ("cycle", dict(n=4)),
    ("path", dict(n=4)),
    ("simplex", dict(n=2)),
    ("octahedron", {}),
])
def test_outcome_invariant_under_subdivision(name, kwargs):
    L = fixture(name, **kwargs)
    sd = barycentric_subdivision(L).complex
    assert classify(L, budget=8).outcome == classify(sd, budget=8).outcome


def _random_flag_complex(seed):
    rng = random.Random(seed)
    n = rng.randint(2, 6)
    facets = [[v] for v in range(n)]
    for e in itertools.combinations(range(n), 2):
        if rng.random() < 0.55:
            facets.append(list(e))
    return flag_completion(from_facets(facets))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 7))
def test_classification_soundness_on_random_flag_complexes(seed):
    L = _random_flag_complex(seed)
    v = classify(L, budget=4)
    d = L.dim
    facets = [list(f) for f in L.facets]
    primes = [int(p) for p in v.certificate.data["checked_primes"]] \
        if v.certificate is not None and v.certificate.kind == CERT_TOP else [2, 3, 5, 7]
    oracle_positive = any(brute_betti_fp(facets, p, reduced=True)[d] > 0 for p in primes)
    if v.outcome == POSITIVE:
        assert oracle_positive
    else:
        assert not oracle_positive or d == 2
    if v.outcome == UNDETERMINED:
        assert d == 2
        assert not oracle_positive
    if v.certificate is not None:
        ok, why = replay_certificate(L, v)
        assert ok, why
    assert Verdict.from_json(v.to_json()) == v


# -- report text -----------------------------------------------------------------------


def test_report_mentions_prediction_and_certificate():
    L = fixture("cycle", n=5)
    text = report(L, classify(L))
    assert "verdict: PositiveEntropy" in text
    assert "degree 2 at every prime" in text
    assert "replay ok" in text

    L = fixture("rp2_flag")
    text = report(L, classify(L))
    assert "degree 3 at p = 2" in text

    L = fixture("dunce_flag")
    text = report(L, classify(L, budget=2))
    assert "verdict: Undetermined" in text
    assert "notes:" in text
