"""Integral and mod-p homology of chain complexes, plus the join assembly.

Betti numbers over Q and torsion coefficients come out of sparse Smith normal
forms; mod-p betti numbers come out of independent sparse rank computations,
so the universal-coefficient identity

    b_i(F_p) = b_i(Q) + #{t in torsion_i : p | t} + #{t in torsion_{i-1} : p | t}

is a genuine cross-check between two routes, not a tautology.  Reduced
homology is handled by augmenting the chain complex with the all-ones map
C_0 -> Z rather than by special-casing degree zero.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import CorruptComplexError
from .linalg import (SNFResult, SparseIntMatrix, invariant_factors, prime_factors,
                     rank_mod_p, smith_normal_form)
from .simplicial import SimplicialComplex, join_factors


class ChainComplexZ:
    """Bounded chain complex of free Z-modules with fixed ordered bases.

    dims[i] is the number of cells in degree i; boundary(i) maps degree i to
    degree i-1.  When augmented is set, boundary(0) is the all-ones
    augmentation row C_0 -> Z and homology read off this complex is reduced.
    """

    __slots__ = ("dims", "labels", "augmented", "_bnd", "_checked")

    def __init__(self, dims: Sequence[int], boundaries: Dict[int, SparseIntMatrix],
                 labels: Optional[Sequence[Sequence[object]]] = None,
                 augmented: bool = False):
        self.dims = tuple(dims)
        self.labels = tuple(tuple(l) for l in labels) if labels is not None else None
        self.augmented = augmented
        self._bnd = dict(boundaries)
        self._checked = False
        top = len(self.dims) - 1
        if augmented and self.dims:
            self._bnd[0] = SparseIntMatrix(
                1, self.dims[0], {(0, j): 1 for j in range(self.dims[0])})
        for i in range(1, top + 1):
            m = self._bnd.get(i)
            if m is None:
                raise CorruptComplexError(f"missing boundary in degree {i}")
            if m.rows != self.dims[i - 1] or m.cols != self.dims[i]:
                raise CorruptComplexError(
                    f"boundary {i} is {m.rows}x{m.cols}, expected {self.dims[i - 1]}x{self.dims[i]}")

    @property
    def top(self) -> int:
        return len(self.dims) - 1

    def boundary(self, i: int) -> SparseIntMatrix:
        """The map C_i -> C_{i-1}; zero matrices outside the support."""
        if i in self._bnd:
            return self._bnd[i]
        rows = self.dims[i - 1] if 1 <= i <= self.top + 1 and i - 1 <= self.top else 0
        cols = self.dims[i] if 0 <= i <= self.top else 0
        return SparseIntMatrix(rows, cols, {})

    def validate(self) -> None:
        """Check boundary-squared = 0 in every degree; raises on failure."""
        if self._checked:
            return
        lo = 0 if self.augmented else 1
        for i in range(lo, self.top):
            composite = self.boundary(i).matmul(self.boundary(i + 1))
            if not composite.is_zero():
                raise CorruptComplexError(f"boundary composition nonzero in degree {i + 1}")
        self._checked = True

    def __repr__(self):
        return f"<ChainComplexZ dims={self.dims} augmented={self.augmented}>"


def simplicial_chain_complex(x: SimplicialComplex, augmented: bool = False) -> ChainComplexZ:
    """Chain complex with the canonical ordered simplex bases.

    The boundary of a simplex is the alternating sum over vertex deletions in
    sorted order; the full 2-simplex has the single column (+1, -1, +1).
    """
    top = x.dim
    if top < 0:
        return ChainComplexZ((), {}, labels=(), augmented=augmented)
    dims = [len(x.faces(k)) for k in range(top + 1)]
    boundaries: Dict[int, SparseIntMatrix] = {}
    for k in range(1, top + 1):
        below = x.face_index(k - 1)
        entries: Dict[Tuple[int, int], int] = {}
        for j, s in enumerate(x.faces(k)):
            for drop in range(len(s)):
                fct = s[:drop] + s[drop + 1:]
                entries[(below[fct], j)] = (-1) ** drop
        boundaries[k] = SparseIntMatrix(dims[k - 1], dims[k], entries)
    labels = [x.faces(k) for k in range(top + 1)]
    return ChainComplexZ(dims, boundaries, labels=labels, augmented=augmented)


@dataclass(frozen=True)
class HomologySummary:
    """Integral homology plus an optional per-prime betti table.

    betti[i] and torsion[i] describe H_i (or reduced H_i when reduced is set)
    for i = 0..dim; torsion entries are invariant factors in divisibility
    order.  betti_mod_p stores (p, table) pairs for the primes requested.
    """

    reduced: bool
    betti: Tuple[int, ...]
    torsion: Tuple[Tuple[int, ...], ...]
    betti_mod_p: Tuple[Tuple[int, Tuple[int, ...]], ...] = ()

    @property
    def dim(self) -> int:
        return len(self.betti) - 1

    def betti_fp(self, p: int) -> Tuple[int, ...]:
        for q, table in self.betti_mod_p:
            if q == p:
                return table
        raise KeyError(f"no mod-{p} table on this summary")

    def primes(self) -> Tuple[int, ...]:
        return tuple(p for p, _ in self.betti_mod_p)

    def is_trivial(self) -> bool:
        """All stored groups vanish (useful only on reduced summaries)."""
        return all(b == 0 for b in self.betti) and all(not t for t in self.torsion)

    def group(self, i: int) -> Tuple[int, Tuple[int, ...]]:
        """(rank, torsion) of degree i, with empty groups outside 0..dim."""
        if 0 <= i < len(self.betti):
            return self.betti[i], self.torsion[i]
        return 0, ()

    def to_json_dict(self) -> dict:
        return {
            "reduced": self.reduced,
            "betti": list(self.betti),
            "torsion": [list(t) for t in self.torsion],
            "betti_mod_p": {str(p): list(t) for p, t in self.betti_mod_p},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)

    @staticmethod
    def from_json_dict(data: dict) -> "HomologySummary":
        return HomologySummary(
            reduced=bool(data["reduced"]),
            betti=tuple(data["betti"]),
            torsion=tuple(tuple(t) for t in data["torsion"]),
            betti_mod_p=tuple(sorted((int(p), tuple(t))
                                     for p, t in data.get("betti_mod_p", {}).items())))


def homology_Z(cc: ChainComplexZ) -> HomologySummary:
    """Betti numbers and torsion from Smith normal forms of the boundaries.

    Reduced when the complex is augmented.  Raises CorruptComplexError if any
    boundary composition is nonzero.
    """
    cc.validate()
    top = cc.top
    if top < 0:
        return HomologySummary(reduced=cc.augmented, betti=(), torsion=())
    snfs: Dict[int, SNFResult] = {}
    lo = 0 if cc.augmented else 1
    for i in range(lo, top + 1):
        snfs[i] = smith_normal_form(cc.boundary(i))
    betti = []
    torsion = []
    for i in range(top + 1):
        rank_in = snfs[i].rank if i in snfs else 0
        rank_out = snfs[i + 1].rank if i + 1 in snfs else 0
        betti.append(cc.dims[i] - rank_in - rank_out)
        tors = snfs[i + 1].nonunit() if i + 1 in snfs else ()
        torsion.append(tuple(invariant_factors(tors)) if tors else ())
    return HomologySummary(reduced=cc.augmented, betti=tuple(betti), torsion=tuple(torsion))


def betti_Fp(cc: ChainComplexZ, p: int) -> Tuple[int, ...]:
    """Betti numbers over F_p from sparse matrix ranks (reduced if augmented)."""
    cc.validate()
    top = cc.top
    if top < 0:
        return ()
    ranks: Dict[int, int] = {}
    lo = 0 if cc.augmented else 1
    for i in range(lo, top + 1):
        ranks[i] = rank_mod_p(cc.boundary(i), p)
    return tuple(cc.dims[i] - ranks.get(i, 0) - ranks.get(i + 1, 0) for i in range(top + 1))


def homology_summary(x: SimplicialComplex, primes: Sequence[int] = (),
                     reduced: bool = False) -> HomologySummary:
    """Full summary of a simplicial complex, one chain complex build."""
    cc = simplicial_chain_complex(x, augmented=reduced)
    base = homology_Z(cc)
    table = tuple((p, betti_Fp(cc, p)) for p in primes)
    return HomologySummary(reduced=reduced, betti=base.betti,
                           torsion=base.torsion, betti_mod_p=table)


def uct_betti_fp(betti: Sequence[int], torsion: Sequence[Sequence[int]], p: int) -> Tuple[int, ...]:
    """Mod-p betti numbers predicted from integral data (universal coefficients)."""
    out = []
    for i in range(len(betti)):
        here = sum(1 for t in torsion[i] if t % p == 0)
        below = sum(1 for t in torsion[i - 1] if t % p == 0) if i >= 1 else 0
        out.append(betti[i] + here + below)
    return tuple(out)


# -- join homology ------------------------------------------------------------


def _tensor(g1: Tuple[int, Tuple[int, ...]], g2: Tuple[int, Tuple[int, ...]]):
    r1, t1 = g1
    r2, t2 = g2
    torsion = list(t2) * r1 + list(t1) * r2
    for s in t1:
        for t in t2:
            g = _gcd(s, t)
            if g > 1:
                torsion.append(g)
    return r1 * r2, torsion


def _tor(g1: Tuple[int, Tuple[int, ...]], g2: Tuple[int, Tuple[int, ...]]):
    torsion = []
    for s in g1[1]:
        for t in g2[1]:
            g = _gcd(s, t)
            if g > 1:
                torsion.append(g)
    return 0, torsion


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def join_homology_kunneth(h1: HomologySummary, h2: HomologySummary,
                          primes: Sequence[int] = ()) -> HomologySummary:
    """Reduced homology of a join from reduced homology of the factors.

    The reduced chain complex of a join is the shifted tensor product of the
    factors' reduced complexes, so

      H~_k(A * B) = sum_{i+j=k-1} H~_i(A) (x) H~_j(B)
                    + sum_{i+j=k-2} Tor(H~_i(A), H~_j(B)).

    Both inputs must be reduced summaries of nonempty complexes; the output is
    a reduced summary in degrees 0..dim(A)+dim(B)+1 with torsion normalized to
    invariant factors, and mod-p tables derived by universal coefficients.
    """
    if not (h1.reduced and h2.reduced):
        raise ValueError("join assembly needs reduced summaries")
    d1, d2 = h1.dim, h2.dim
    if d1 < 0 or d2 < 0:
        raise ValueError("join assembly needs nonempty factors")
    top = d1 + d2 + 1
    betti = []
    torsion = []
    for k in range(top + 1):
        rank = 0
        tors: List[int] = []
        for i in range(0, k):
            j = k - 1 - i
            r, t = _tensor(h1.group(i), h2.group(j))
            rank += r
            tors.extend(t)
        for i in range(0, k - 1):
            j = k - 2 - i
            _, t = _tor(h1.group(i), h2.group(j))
            tors.extend(t)
        betti.append(rank)
        torsion.append(invariant_factors(tors) if tors else ())
    table = tuple((p, uct_betti_fp(betti, torsion, p)) for p in primes)
    return HomologySummary(reduced=True, betti=tuple(betti),
                           torsion=tuple(torsion), betti_mod_p=table)


def flag_reduced_summary(x: SimplicialComplex, primes: Sequence[int] = ()) -> HomologySummary:
    """Reduced summary of a flag complex, factoring joins first.

    A flag complex is the join of its induced pieces over the connected
    components of the complement of the 1-skeleton; computing the factors and
    assembling with the Kunneth routine keeps large joins cheap.  Caller is
    responsible for flagness; on an indecomposable complex this is just
    homology_summary(..., reduced=True).
    """
    factors = join_factors(x)
    if len(factors) == 1:
        return homology_summary(x, primes=primes, reduced=True)
    summaries = [homology_summary(f, reduced=True) for f in factors]
    out = summaries[0]
    for h in summaries[1:]:
        out = join_homology_kunneth(out, h)
    return HomologySummary(reduced=True, betti=out.betti, torsion=out.torsion,
                           betti_mod_p=tuple((p, uct_betti_fp(out.betti, out.torsion, p))
                                             for p in primes))


# -- top cohomology criterion --------------------------------------------------


def with_primes(h: HomologySummary, primes: Sequence[int]) -> HomologySummary:
    """Copy of a summary with mod-p tables derived by universal coefficients."""
    return HomologySummary(
        reduced=h.reduced, betti=h.betti, torsion=h.torsion,
        betti_mod_p=tuple((p, uct_betti_fp(h.betti, h.torsion, p)) for p in primes))


# Above this many cells the prime scan in top_cohomology_nonzero switches from
# independent matrix ranks to the universal-coefficient formula; the rank route
# on (say) a big join would dominate the whole classification.
_SCAN_CELL_LIMIT = 3000


def top_cohomology_nonzero(x: SimplicialComplex,
                           summary: Optional[HomologySummary] = None) -> Tuple[bool, dict]:
    """Whether reduced H^d(L, Z) is nonzero in the top dimension d = dim L.

    By universal coefficients H^d != 0 iff the top reduced betti number over Q
    is positive or H_{d-1} has torsion; in top degree this is also equivalent
    to b_d(L, F_p) > 0 for some prime p.  The returned detail dict records
    which condition fired and the finite prime scan that cross-checks the
    equivalence (2 plus every prime dividing a torsion coefficient); a scan
    mismatch would mean an engine bug and raises.

    A precomputed reduced summary may be passed in; on complexes small enough
    the scan recomputes mod-p ranks from the boundary matrices, otherwise it
    falls back to the universal-coefficient formula (detail key cross_check).
    """
    if x.is_empty():
        raise ValueError("empty complex has no top dimension")
    d = x.dim
    if summary is None:
        h = homology_summary(x, reduced=True)
    else:
        if not summary.reduced:
            raise ValueError("top cohomology check needs a reduced summary")
        h = summary
    betti_top = h.betti[d]
    torsion_below = h.torsion[d - 1] if d >= 1 else ()
    result = betti_top > 0 or bool(torsion_below)
    scan = {2}
    for t in torsion_below:
        scan.update(prime_factors(t))
    for t in h.torsion[d]:
        scan.update(prime_factors(t))
    checked = {}
    if sum(x.f_vector()) <= _SCAN_CELL_LIMIT:
        cross_check = "matrix_rank"
        cc = simplicial_chain_complex(x, augmented=True)
        for p in sorted(scan):
            checked[p] = betti_Fp(cc, p)[d]
    else:
        cross_check = "universal_coefficients"
        for p in sorted(scan):
            checked[p] = uct_betti_fp(h.betti, h.torsion, p)[d]
    if (any(v > 0 for v in checked.values())) != result:
        raise CorruptComplexError(
            f"universal-coefficient cross-check failed in top degree: {checked} vs {result}")
    if result:
        if betti_top > 0:
            condition, witness_prime, all_primes = "top_betti_positive", 2, True
        else:
            condition = "torsion_below_top"
            witness_prime = min(min(prime_factors(t)) for t in torsion_below)
            all_primes = False
    else:
        condition, witness_prime, all_primes = "vanishes", None, False
    detail = {
        "dimension": d,
        "betti_top": betti_top,
        "torsion_below_top": list(torsion_below),
        "condition": condition,
        "witness_prime": witness_prime,
        "all_primes": all_primes,
        "checked_primes": {str(p): v for p, v in sorted(checked.items())},
        "cross_check": cross_check,
    }
    return result, detail


def dump_boundaries(cc: ChainComplexZ) -> str:
    """Line-oriented dump of every boundary matrix, for eyeballing.

    Per degree: a header line "degree rows cols" followed by one "r c v" line
    per entry in row-major order, then a blank line.
    """
    lines = []
    lo = 0 if cc.augmented else 1
    for i in range(lo, cc.top + 1):
        m = cc.boundary(i)
        lines.append(f"{i} {m.rows} {m.cols}")
        for (r, c) in sorted(m.entries):
            lines.append(f"{r} {c} {m.entries[(r, c)]}")
        lines.append("")
    return "\n".join(lines)
