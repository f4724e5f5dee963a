"""Mod-p homology growth along chains of finite abelian covers.

For a chain of finite quotients of A_L the experiment records, per cover and
degree, the exact betti number over F_p and the exact ratio betti/index as a
rational.  The reference column is the reduced betti number of L one degree
down, which is the limit along exhausting residual chains.

Abelian quotients of a nonabelian A_L never form a residual chain, so except
for the exactly derivable families below the ratios are descriptive only and
every rendered report says so.  Derivable families (closed forms proved by
Euler characteristic / covers of tori / products):

  * dim L = 0 (free group): b_1 = index (n - 1) + 1;
  * L a full simplex (free abelian): every cover is a torus, b_i = C(n, i);
  * L a join of two discrete sets with the quotient spec split into disjoint
    coordinate blocks per side (product of free groups): betti numbers are the
    convolution of the two graph-cover rows (1, |Q_side| (a - 1) + 1).
"""

from __future__ import annotations

import csv
import io
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple

from .errors import CoverSpecError, NotFlagError
from .homology import betti_Fp, homology_summary
from .linalg import prime_factors
from .models import FiniteQuotientSpec, finite_cover
from .simplicial import SimplicialComplex, complement_components, is_flag

CAVEAT = ("abelian quotient kernels of a nonabelian group do not form a residual "
          "chain; ratios are descriptive unless an exact closed form is noted")


@dataclass(frozen=True)
class CoverResult:
    moduli_label: str
    index: int
    betti: Tuple[int, ...]
    expected: Optional[Tuple[int, ...]]

    def ratio(self, degree: int) -> Fraction:
        return Fraction(self.betti[degree], self.index)


@dataclass(frozen=True)
class GrowthSeries:
    """Results of one chain of covers at one prime."""

    complex_name: str
    prime: int
    dim: int
    reference: Tuple[int, ...]
    covers: Tuple[CoverResult, ...]
    derivable_family: Optional[str]

    def rows(self):
        for cov in self.covers:
            for degree, b in enumerate(cov.betti):
                r = cov.ratio(degree)
                yield {
                    "modulus_vector": cov.moduli_label,
                    "index": cov.index,
                    "degree": degree,
                    "betti": b,
                    "ratio_num": r.numerator,
                    "ratio_den": r.denominator,
                    "reference": self.reference[degree],
                }

    def to_csv(self) -> str:
        out = io.StringIO()
        writer = csv.DictWriter(out, fieldnames=[
            "modulus_vector", "index", "degree", "betti",
            "ratio_num", "ratio_den", "reference"])
        writer.writeheader()
        for row in self.rows():
            writer.writerow(row)
        return out.getvalue()

    def exact_match(self) -> Optional[bool]:
        """Whether every cover hit its closed form; None when not derivable."""
        if self.derivable_family is None:
            return None
        return all(c.expected == c.betti for c in self.covers)

    def render_report(self) -> str:
        name = self.complex_name or "L"
        lines = [
            f"homology growth of finite covers: {name}, coefficients F_{self.prime}",
            f"reference (reduced betti of the defining complex, one degree down): "
            f"{list(self.reference)}",
        ]
        header = f"{'moduli':>12} {'index':>7} " + " ".join(
            f"{'b_%d' % i:>8}" for i in range(self.dim + 2))
        lines.append(header)
        for cov in self.covers:
            cells = " ".join(f"{b:>8}" for b in cov.betti)
            lines.append(f"{cov.moduli_label:>12} {cov.index:>7} {cells}")
            ratios = " ".join(f"{str(cov.ratio(i)):>8}" for i in range(self.dim + 2))
            lines.append(f"{'ratio':>12} {'':>7} {ratios}")
        if self.derivable_family is not None:
            status = "EXACT" if self.exact_match() else "MISMATCH"
            lines.append(f"closed form ({self.derivable_family}): {status}")
        lines.append(f"caveat: {CAVEAT}")
        return "\n".join(lines)


def _is_prime(p: int) -> bool:
    return p >= 2 and prime_factors(p) == (p,)


def _derivable_family(L: SimplicialComplex, specs: Sequence[FiniteQuotientSpec]):
    """(family tag, expected betti per spec) or (None, [None]*len)."""
    n = L.n_vertices
    if L.dim == 0:
        expected = []
        for spec in specs:
            idx = spec.index
            expected.append((1, idx * (n - 1) + 1))
        return "free group, b_1 from Euler characteristic", expected
    if len(L.facets) == 1 and len(L.facets[0]) == n:
        row = tuple(math.comb(n, i) for i in range(n + 1))
        return "free abelian group, torus covers", [row for _ in specs]
    parts = complement_components(L)
    if L.dim == 1 and len(parts) == 2:
        a, b = (len(p) for p in parts)
        expected = []
        for spec in specs:
            blocks = _side_blocks(spec, parts)
            if blocks is None:
                return None, [None] * len(specs)
            qa, qb = blocks
            ma = qa * (a - 1) + 1
            mb = qb * (b - 1) + 1
            expected.append((1, ma + mb, ma * mb))
        return "product of two free groups, Kunneth", expected
    return None, [None] * len(specs)


def _side_blocks(spec: FiniteQuotientSpec, parts: Sequence[Sequence[int]]):
    """Deck orders of the two sides when the spec splits by coordinate blocks."""
    side_of = {}
    for s, part in enumerate(parts):
        for v in part:
            side_of[v] = s
    coord_side = [None] * len(spec.moduli)
    for v, img in enumerate(spec.images):
        for j, x in enumerate(img):
            if x % spec.moduli[j] == 0:
                continue
            if coord_side[j] is None:
                coord_side[j] = side_of[v]
            elif coord_side[j] != side_of[v]:
                return None  # sides share a coordinate: no product structure
    orders = []
    for s, part in enumerate(parts):
        sub = FiniteQuotientSpec(moduli=spec.moduli,
                                 images=tuple(spec.images[v] for v in part))
        orders.append(sub.index)
    return tuple(orders)


def _cover_task(args):
    facets, spec_moduli, spec_images, p = args
    from .simplicial import from_facets
    L = from_facets(facets)
    spec = FiniteQuotientSpec(moduli=spec_moduli, images=spec_images)
    cov = finite_cover(L, spec)
    return betti_Fp(cov.chain_complex(), p)


def growth_experiment(L: SimplicialComplex, specs: Sequence[FiniteQuotientSpec],
                      prime: int) -> GrowthSeries:
    """Betti numbers of the covers of the cube complex of L over F_prime.

    specs must be ordered by strictly increasing index.  The per-degree
    reference is the reduced betti number of L one degree down (zero in degree
    zero).  Worker processes are used when RAAG_THREADS > 1; results are
    deterministic either way.
    """
    flag, witness = is_flag(L)
    if not flag:
        raise NotFlagError(f"growth experiment needs a flag complex; minimal non-face {witness}",
                           witness=witness)
    if not _is_prime(prime):
        raise CoverSpecError(f"{prime} is not prime")
    if not specs:
        raise CoverSpecError("no covers requested")
    indices = [spec.index for spec in specs]
    if any(b <= a for a, b in zip(indices, indices[1:])):
        raise CoverSpecError(f"specs must have strictly increasing index, got {indices}")

    reduced = homology_summary(L, primes=(prime,), reduced=True).betti_fp(prime)
    reference = (0,) + tuple(reduced)  # degree i of the cover vs degree i-1 of L

    workers = int(os.environ.get("RAAG_THREADS", "1"))
    tasks = [(L.facets, spec.moduli, spec.images, prime) for spec in specs]
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            betti_rows = list(pool.map(_cover_task, tasks))
    else:
        betti_rows = [_cover_task(t) for t in tasks]

    family, expected = _derivable_family(L, specs)
    covers = tuple(
        CoverResult(moduli_label=spec.label(), index=spec.index,
                    betti=tuple(row), expected=exp)
        for spec, row, exp in zip(specs, betti_rows, expected))
    return GrowthSeries(complex_name=L.name, prime=prime, dim=L.dim,
                        reference=reference, covers=covers, derivable_family=family)
