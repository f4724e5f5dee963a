"""Entropy classification of A_L from the defining flag complex.

For a d-dimensional flag complex L the minimal volume entropy of A_L is
positive when the top integral cohomology H^d(L, Z) is nonzero, and zero when
L embeds into a d-dimensional contractible complex.  Outside dimension 2 the
two conditions are complementary, so vanishing top cohomology already decides
the zero case.  In dimension 2 with H^2 = 0 the classifier needs a
contractibility certificate: either a user-supplied embedding into a
2-complex that collapses, or a collapse of L itself.  When neither is found
the honest verdict is Undetermined; collapsibility is only a sufficient test
for contractibility and its failure proves nothing.

Every verdict carries a machine-checkable certificate that replays from its
serialized form.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Dict, Optional, Tuple

from .collapse import CollapseSequence, collapse, replay_collapse
from .errors import MalformedComplexError, NotFlagError, WitnessRejectedError
from .homology import (HomologySummary, flag_reduced_summary, homology_summary,
                       top_cohomology_nonzero, with_primes)
from .linalg import prime_factors
from .simplicial import (SimplicialComplex, complex_from_json_dict,
                         complex_to_json_dict, is_flag)

POSITIVE = "PositiveEntropy"
ZERO = "ZeroEntropy"
UNDETERMINED = "Undetermined"

CERT_TOP = "TopCohomologyNonzero"
CERT_COMPLEMENTARY = "ComplementaryVanishing"
CERT_COLLAPSE = "CollapsibleSelf"
CERT_WITNESS = "EmbeddingWitness"


@dataclass(frozen=True)
class EmbeddingWitness:
    """Claim that L embeds in a contractible complex of the same dimension.

    embedding[v] is the image of vertex v of L in the supercomplex.
    """

    supercomplex: SimplicialComplex
    embedding: Tuple[int, ...]

    def to_json_dict(self) -> dict:
        return {
            "supercomplex": complex_to_json_dict(self.supercomplex),
            "embedding": list(self.embedding),
        }

    @staticmethod
    def from_json_dict(data: dict) -> "EmbeddingWitness":
        return EmbeddingWitness(
            supercomplex=complex_from_json_dict(data["supercomplex"]),
            embedding=tuple(data["embedding"]))


@dataclass(frozen=True)
class Certificate:
    """Typed certificate payload; data is JSON-ready."""

    kind: str
    data: Dict[str, object]

    def to_json_dict(self) -> dict:
        return {"kind": self.kind, "data": self.data}

    @staticmethod
    def from_json_dict(data: dict) -> "Certificate":
        return Certificate(kind=data["kind"], data=data["data"])


@dataclass(frozen=True)
class Verdict:
    outcome: str
    d: int
    gdim: int
    certificate: Optional[Certificate]
    homology: HomologySummary
    notes: str = ""

    def to_json_dict(self) -> dict:
        return {
            "outcome": self.outcome,
            "d": self.d,
            "gdim": self.gdim,
            "certificate": None if self.certificate is None else self.certificate.to_json_dict(),
            "homology": self.homology.to_json_dict(),
            "notes": self.notes,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2, sort_keys=True)

    @staticmethod
    def from_json_dict(data: dict) -> "Verdict":
        cert = data.get("certificate")
        return Verdict(
            outcome=data["outcome"], d=data["d"], gdim=data["gdim"],
            certificate=None if cert is None else Certificate.from_json_dict(cert),
            homology=HomologySummary.from_json_dict(data["homology"]),
            notes=data.get("notes", ""))

    @staticmethod
    def from_json(text: str) -> "Verdict":
        return Verdict.from_json_dict(json.loads(text))


def _witness_structural_error(L: SimplicialComplex, w: EmbeddingWitness) -> Optional[str]:
    """Reason the witness is not an equal-dimension simplicial embedding, or None."""
    emb = w.embedding
    if len(emb) != L.n_vertices:
        return (f"embedding lists {len(emb)} images for {L.n_vertices} vertices")
    if any(not isinstance(v, int) or v < 0 or v >= w.supercomplex.n_vertices for v in emb):
        return "embedding image out of range in the supercomplex"
    if len(set(emb)) != len(emb):
        return "embedding is not injective"
    for f in L.facets:
        img = tuple(sorted(emb[v] for v in f))
        if not w.supercomplex.has_face(img):
            return f"image {img} of simplex {f} is not a simplex of the supercomplex"
    if w.supercomplex.dim != L.dim:
        return (f"supercomplex has dimension {w.supercomplex.dim}, "
                f"embedding must not raise dimension {L.dim}")
    return None


def verify_witness(L: SimplicialComplex, w: EmbeddingWitness,
                   budget: int = 64) -> Tuple[bool, str, Optional[CollapseSequence]]:
    """Check an embedding witness; returns (ok, reason, collapse sequence).

    A structurally sound witness whose supercomplex merely fails to collapse
    within budget is reported as "contractibility unverified" unless the
    supercomplex has nonzero reduced homology, in which case it is genuinely
    not contractible.
    """
    err = _witness_structural_error(L, w)
    if err is not None:
        return False, err, None
    seq = collapse(w.supercomplex, budget=budget)
    if seq is None:
        h = homology_summary(w.supercomplex, reduced=True)
        for i in range(h.dim + 1):
            b, tor = h.group(i)
            if b or tor:
                return False, (f"supercomplex is not contractible: reduced H_{i} "
                               f"is nonzero"), None
        return False, "contractibility unverified: no collapse found within budget", None
    return True, f"supercomplex collapses to a vertex (seed {seq.seed})", seq


def classify(L: SimplicialComplex, witness: Optional[EmbeddingWitness] = None,
             budget: int = 64) -> Verdict:
    """Decide PositiveEntropy / ZeroEntropy / Undetermined for A_L.

    Requires a nonempty flag complex.  Order of attack: nonzero top reduced
    cohomology forces positive entropy; in any dimension other than 2 its
    vanishing forces zero entropy; in dimension 2 a verified witness or a
    collapse of L itself certifies zero, otherwise Undetermined.
    """
    if L.is_empty():
        raise MalformedComplexError(
            "cannot classify the empty complex: it presents the trivial group")
    flag, nonface = is_flag(L)
    if not flag:
        raise NotFlagError(
            f"defining complex must be flag; minimal non-face {nonface}",
            witness=nonface)
    d = L.dim
    summary = flag_reduced_summary(L)
    primes = sorted({2} | {p for degree in summary.torsion
                           for t in degree for p in prime_factors(t)})
    summary = with_primes(summary, primes)
    nonzero, detail = top_cohomology_nonzero(L, summary=summary)

    if nonzero:
        cert = Certificate(CERT_TOP, detail)
        return Verdict(POSITIVE, d, d + 1, cert, summary)
    if d != 2:
        cert = Certificate(CERT_COMPLEMENTARY, {"dimension": d, "top_check": detail})
        return Verdict(ZERO, d, d + 1, cert, summary)

    notes = []
    if witness is not None:
        err = _witness_structural_error(L, witness)
        if err is not None:
            raise WitnessRejectedError(f"embedding witness rejected: {err}")
        ok, reason, seq = verify_witness(L, witness, budget=budget)
        if ok:
            cert = Certificate(CERT_WITNESS, {
                "supercomplex": complex_to_json_dict(witness.supercomplex),
                "embedding": list(witness.embedding),
                "collapse": seq.to_json_dict(),
            })
            return Verdict(ZERO, d, d + 1, cert, summary)
        notes.append(f"witness unusable: {reason}")
    seq = collapse(L, budget=budget)
    if seq is not None:
        cert = Certificate(CERT_COLLAPSE, {"collapse": seq.to_json_dict()})
        return Verdict(ZERO, d, d + 1, cert, summary)
    notes.append(f"no collapse of the complex itself in {budget} restarts")
    notes.append("dimension-2 gap: top cohomology vanishes but contractible "
                 "embedding is unverified; positive and zero entropy are not "
                 "known to be complementary here")
    return Verdict(UNDETERMINED, d, d + 1, None, summary, notes="; ".join(notes))


def replay_certificate(L: SimplicialComplex, verdict: Verdict) -> Tuple[bool, str]:
    """Re-verify a verdict's certificate from scratch against L."""
    cert = verdict.certificate
    if cert is None:
        return False, "no certificate attached"
    if cert.kind == CERT_TOP:
        nonzero, detail = top_cohomology_nonzero(L, summary=flag_reduced_summary(L))
        if not nonzero:
            return False, "top cohomology recomputes to zero"
        return True, f"top cohomology nonzero reconfirmed ({detail['condition']})"
    if cert.kind == CERT_COMPLEMENTARY:
        if L.dim == 2:
            return False, "complementary vanishing does not apply in dimension 2"
        nonzero, _ = top_cohomology_nonzero(L, summary=flag_reduced_summary(L))
        if nonzero:
            return False, "top cohomology recomputes to nonzero"
        return True, "vanishing top cohomology reconfirmed in dimension != 2"
    if cert.kind == CERT_COLLAPSE:
        seq = CollapseSequence.from_json_dict(cert.data["collapse"])
        return replay_collapse(L, seq)
    if cert.kind == CERT_WITNESS:
        w = EmbeddingWitness(
            supercomplex=complex_from_json_dict(cert.data["supercomplex"]),
            embedding=tuple(cert.data["embedding"]))
        err = _witness_structural_error(L, w)
        if err is not None:
            return False, err
        seq = CollapseSequence.from_json_dict(cert.data["collapse"])
        return replay_collapse(w.supercomplex, seq)
    return False, f"unknown certificate kind {cert.kind!r}"


def _group_str(rank: int, torsion: Tuple[int, ...]) -> str:
    parts = []
    if rank == 1:
        parts.append("Z")
    elif rank > 1:
        parts.append(f"Z^{rank}")
    parts.extend(f"Z/{t}" for t in torsion)
    return " + ".join(parts) if parts else "0"


def report(L: SimplicialComplex, verdict: Verdict) -> str:
    """Human-readable account of a classification."""
    name = L.name or "L"
    lines = [
        f"complex {name}: dimension {verdict.d}, f-vector {L.f_vector()}",
        f"geometric dimension of the group: {verdict.gdim}",
    ]
    h = verdict.homology
    for i in range(h.dim + 1):
        row = f"  reduced H_{i} = {_group_str(*h.group(i))}"
        if h.primes():
            mods = ", ".join(f"b(F_{p})={h.betti_fp(p)[i]}" for p in h.primes())
            row += f"   [{mods}]"
        lines.append(row)
    lines.append(f"verdict: {verdict.outcome}")
    if verdict.certificate is not None:
        ok, why = replay_certificate(L, verdict)
        status = "ok" if ok else "FAILED"
        lines.append(f"certificate: {verdict.certificate.kind}; replay {status} ({why})")
    if verdict.outcome == POSITIVE:
        detail = verdict.certificate.data
        where = "every prime" if detail.get("all_primes") else f"p = {detail.get('witness_prime')}"
        lines.append(f"prediction: mod-p homology growth of finite covers is "
                     f"nonvanishing in degree {verdict.gdim} at {where}")
    if verdict.notes:
        lines.append(f"notes: {verdict.notes}")
    return "\n".join(lines)
